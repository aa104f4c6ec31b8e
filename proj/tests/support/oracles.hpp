#pragma once

// Reference implementations used only by the tests. Each one is built from a
// representation that the library does not use, so agreement is evidence.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

namespace oracles {

using cd = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;

/// Composite trapezoid on [0, upper]; spectrally accurate for integrands that
/// decay doubly exponentially and are even in t.
inline double trapezoid(const std::function<double(double)>& f, double upper,
                        std::size_t panels) {
  const double h = upper / static_cast<double>(panels);
  double sum = 0.5 * (f(0.0) + f(upper));
  for (std::size_t i = 1; i < panels; ++i) sum += f(h * static_cast<double>(i));
  return sum * h;
}

/// Upper limit where x cosh(t) exceeds x + 60.
inline double cosh_cutoff(double x) { return std::acosh(1.0 + 60.0 / x); }

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt.
inline double bessel_k_integral(double nu, double x) {
  const double upper = cosh_cutoff(x) + 1.0;
  return std::exp(-x) * trapezoid(
                            [=](double t) {
                              return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t);
                            },
                            upper, 20000);
}

/// K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt.
inline double bessel_k_imag_integral(double nu, double x) {
  const double upper = cosh_cutoff(x) + 1.0;
  return std::exp(-x) * trapezoid(
                            [=](double t) {
                              return std::exp(-x * (std::cosh(t) - 1.0)) * std::cos(nu * t);
                            },
                            upper, 200000);
}

/// I_nu(x) = (1/pi) int_0^pi e^{x cos t} cos(nu t) dt
///          - (sin nu pi / pi) int_0^inf e^{-x cosh t - nu t} dt.
inline double bessel_i_integral(double nu, double x) {
  const std::size_t n = 20000;
  const double h = kPi / static_cast<double>(n);
  auto f = [=](double t) { return std::exp(x * std::cos(t)) * std::cos(nu * t); };
  // Simpson, since the first integrand is not periodic for non-integer nu.
  double s = f(0.0) + f(kPi);
  for (std::size_t i = 1; i < n; ++i) {
    s += (i % 2 ? 4.0 : 2.0) * f(h * static_cast<double>(i));
  }
  const double first = s * h / 3.0 / kPi;
  if (nu == std::floor(nu)) return first;
  const double upper = cosh_cutoff(x) + 1.0;
  const double second = trapezoid(
      [=](double t) { return std::exp(-x * std::cosh(t) - nu * t); }, upper, 20000);
  // The second integrand is not even; trapezoid is second order there, so
  // refine with Richardson on two step sizes.
  const double coarse = trapezoid(
      [=](double t) { return std::exp(-x * std::cosh(t) - nu * t); }, upper, 10000);
  const double refined = second + (second - coarse) / 3.0;
  return first - std::sin(nu * kPi) / kPi * refined;
}

/// Lanczos approximation (g = 7, 9 terms) for complex Gamma.
inline cd gamma_lanczos(cd z) {
  static constexpr std::array<double, 9> c{
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (z.real() < 0.5) {
    return kPi / (std::sin(kPi * z) * gamma_lanczos(1.0 - z));
  }
  z -= 1.0;
  cd x = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) x += c[i] / (z + static_cast<double>(i));
  const cd t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

/// arg Gamma(1 + i lambda) = -gamma_E lambda + sum_k [lambda/k - atan(lambda/k)],
/// with the tail beyond N summed asymptotically.
inline double coulomb_phase_series(double lambda) {
  constexpr double euler_gamma = 0.57721566490153286061;
  constexpr std::size_t n = 200000;
  double sum = 0.0;
  for (std::size_t k = n; k >= 1; --k) {
    const double kk = static_cast<double>(k);
    sum += lambda / kk - std::atan(lambda / kk);
  }
  const double nn = static_cast<double>(n);
  const double l3 = lambda * lambda * lambda;
  // sum_{k>N} lambda^3/(3 k^3) ~ lambda^3/(6 N^2) - lambda^3/(6 N^3)
  sum += l3 / (6.0 * nn * nn) - l3 / (6.0 * nn * nn * nn);
  double phase = -euler_gamma * lambda + sum;
  while (phase > kPi) phase -= 2.0 * kPi;
  while (phase <= -kPi) phase += 2.0 * kPi;
  return phase;
}

/// K_{i nu}(x) = -(pi / sinh(pi nu)) Im I_{i nu}(x) with the power series of
/// I_{i nu} and Lanczos Gamma. Usable for x up to a few units.
inline double bessel_k_imag_series(double nu, double x) {
  const cd order{0.0, nu};
  const cd prefactor = std::exp(order * std::log(0.5 * x)) / gamma_lanczos(1.0 + order);
  cd term = 1.0;
  cd sum = term;
  const double q = 0.25 * x * x;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (static_cast<double>(k) + order));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return -kPi / std::sinh(kPi * nu) * (prefactor * sum).imag();
}

/// All eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    }
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p];
          const double akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k];
          const double aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

/// Cone small-argument tower solved by hand: nu cot(theta) = T with
/// theta = nu ln(z/2) - gamma, so theta_k = k pi + arccot(T/nu).
inline double cone_tower_energy(double nu, double target, double gamma, int k,
                                double mass, double a) {
  const double c = 0.5 * kPi - std::atan(target / nu);
  const double theta = static_cast<double>(k) * kPi + c;
  const double z = 2.0 * std::exp((theta + gamma) / nu);
  return -z * z / (2.0 * mass * a * a);
}

/// int_0^inf K_nu(kappa r)^2 r dr for 0 < nu < 1.
inline double k_squared_norm(double nu, double kappa) {
  return kPi * nu / (2.0 * std::sin(kPi * nu)) / (kappa * kappa);
}

}  // namespace oracles
