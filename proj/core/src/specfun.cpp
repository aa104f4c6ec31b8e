#include "conical_ab/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conical_ab/errors.hpp"

namespace conical_ab::specfun {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// B_{2k} / (2k (2k - 1)) for k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,   1.0 / 1260.0,  -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

constexpr double kShiftThreshold = 15.0;

template <typename T>
T stirling_tail(T z) {
  const T inv = T(1.0) / z;
  const T inv2 = inv * inv;
  T term = inv;
  T sum = T(0.0);
  for (double c : kStirling) {
    sum += c * term;
    term *= inv2;
  }
  return sum;
}

// Scaled pair (K_mu, K_{mu+1}) * exp(x) for |mu| <= 1/2 and x >= 2 (Temme's
// CF2, Steed's algorithm).
struct ScaledPair {
  double k_mu;
  double k_mu1;
};

ScaledPair temme_cf2(double mu, double x) {
  constexpr int kMaxIter = 10000;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 1;
  for (; i <= kMaxIter; ++i) {
    a -= 2.0 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) {
    throw NumericalFailure("K_nu continued fraction did not converge at x = " +
                           std::to_string(x));
  }
  h *= a1;
  const double k_mu = std::sqrt(kPi / (2.0 * x)) / s;
  const double k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
  return {k_mu, k_mu1};
}

void require_fractional_order(double order) {
  if (!(order > 0.0 && order < 1.0)) {
    throw DomainError("K_nu is only provided for 0 < nu < 1, got nu = " +
                      std::to_string(order));
  }
}

void require_positive_x(double x) {
  if (!(x > 0.0)) {
    throw DomainError("argument must be positive, got x = " +
                      std::to_string(x));
  }
}

// K_{nu-1} and K_nu (nu in (0,1)) scaled by exp(x), for x > 2.
ScaledPair k_lower_pair_scaled(double nu, double x) {
  if (nu <= 0.5) {
    const auto p = temme_cf2(nu, x);  // K_nu, K_{nu+1}
    const double k_lower = p.k_mu1 - (2.0 * nu / x) * p.k_mu;
    return {k_lower, p.k_mu};
  }
  const auto p = temme_cf2(nu - 1.0, x);  // K_{nu-1}, K_nu
  return {p.k_mu, p.k_mu1};
}

double k_by_difference(double nu, double x) {
  return kPi / (2.0 * std::sin(kPi * nu)) *
         (bessel_i_signed(-nu, x) - bessel_i_signed(nu, x));
}

constexpr double kTailExponent = 50.0;
constexpr double kQuadratureTolerance = 1e-13;

// int_0^T exp(-x (cosh t - 1)) w(t) cos(nu t) dt, split into sub-intervals no
// longer than a quarter period so every panel sees a smooth integrand.
template <typename Weight>
double scaled_cosh_integral(double nu, double x, Weight weight) {
  const double upper = std::acosh(1.0 + kTailExponent / x);
  const double panel = std::min(1.0, 0.5 * kPi / std::max(nu, 1e-300));
  const auto panels = static_cast<int>(std::ceil(upper / panel));
  const double width = upper / panels;
  auto integrand = [&](double t) {
    return std::exp(-x * (std::cosh(t) - 1.0)) * weight(t) * std::cos(nu * t);
  };
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = p * width;
    const double hi = (p + 1 == panels) ? upper : lo + width;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, lo, hi, 12, kQuadratureTolerance);
  }
  return total;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("ln_gamma requires x > 0, got " + std::to_string(x));
  }
  double shift = 0.0;
  while (x < kShiftThreshold) {
    shift += std::log(x);
    x += 1.0;
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * kPi) +
         stirling_tail(x) - shift;
}

std::complex<double> ln_gamma(std::complex<double> z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("complex ln_gamma requires Re z > 0");
  }
  std::complex<double> shift{0.0, 0.0};
  while (z.real() < kShiftThreshold) {
    shift += std::log(z);
    z += 1.0;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) +
         stirling_tail(z) - shift;
}

SeriesResult bessel_i_series(double order, double x) {
  require_positive_x(x);
  if (!(order > -1.0)) {
    throw DomainError("I series requires order > -1, got " +
                      std::to_string(order));
  }
  if (x > 700.0) {
    throw NumericalFailure("I_nu series overflow guard: x = " +
                           std::to_string(x) + " > 700");
  }
  const double quarter_sq = 0.25 * x * x;
  double term = std::exp(order * std::log(0.5 * x) - ln_gamma(order + 1.0));
  double sum = term;
  std::size_t k = 0;
  constexpr std::size_t kMaxTerms = 5000;
  for (; k < kMaxTerms; ++k) {
    const double denom = (k + 1.0) * (order + k + 1.0);
    term *= quarter_sq / denom;
    if (term < 1e-17 * sum && denom > quarter_sq) break;
    sum += term;
  }
  if (k == kMaxTerms) {
    throw NumericalFailure("I_nu series did not converge");
  }
  return {sum, k + 1, term};
}

double bessel_i(double order, double x) {
  if (!(order >= 0.0)) {
    throw DomainError("bessel_i requires order >= 0; use bessel_i_signed");
  }
  return bessel_i_series(order, x).value;
}

double bessel_i_signed(double order, double x) {
  return bessel_i_series(order, x).value;
}

double bessel_k(double order, double x) {
  require_fractional_order(order);
  require_positive_x(x);
  if (x <= 2.0) return k_by_difference(order, x);
  return std::exp(-x) * k_lower_pair_scaled(order, x).k_mu1;
}

double bessel_k_log_derivative(double order, double x) {
  require_fractional_order(order);
  require_positive_x(x);
  double ratio = 0.0;  // K_{nu-1} / K_nu
  if (x <= 2.0) {
    ratio = k_by_difference(1.0 - order, x) / k_by_difference(order, x);
  } else {
    const auto p = k_lower_pair_scaled(order, x);
    ratio = p.k_mu / p.k_mu1;
  }
  return -order - x * ratio;
}

double bessel_k_asymptotic_small_x(double order, double x) {
  require_fractional_order(order);
  require_positive_x(x);
  const double singular =
      std::pow(x, -order) / (std::pow(2.0, -order) * std::exp(ln_gamma(1.0 - order)));
  const double regular =
      std::pow(x, order) / (std::pow(2.0, order) * std::exp(ln_gamma(1.0 + order)));
  return kPi / (2.0 * std::sin(kPi * order)) * (singular - regular);
}

double coulomb_phase(double lambda_mag) {
  if (!(lambda_mag >= 0.0)) {
    throw DomainError("Coulomb phase requires lambda >= 0");
  }
  if (lambda_mag == 0.0) return 0.0;
  const double raw = ln_gamma(std::complex<double>{1.0, lambda_mag}).imag();
  // Wrap into (-pi, pi].
  double wrapped = std::remainder(raw, 2.0 * kPi);
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

double bessel_k_imag(double order_mag, double x) {
  require_positive_x(x);
  if (!(order_mag >= 0.0)) throw DomainError("order magnitude must be >= 0");
  return std::exp(-x) *
         scaled_cosh_integral(order_mag, x, [](double) { return 1.0; });
}

double bessel_k_imag_derivative(double order_mag, double x) {
  require_positive_x(x);
  if (!(order_mag >= 0.0)) throw DomainError("order magnitude must be >= 0");
  return -std::exp(-x) * scaled_cosh_integral(order_mag, x, [](double t) {
    return std::cosh(t);
  });
}

double bessel_k_imag_small_x(double order_mag, double x, PhaseSign sign) {
  require_positive_x(x);
  if (!(order_mag > 0.0)) throw DomainError("order magnitude must be > 0");
  const double nu = order_mag;
  const double amplitude = std::sqrt(kPi / (nu * std::sinh(kPi * nu)));
  return -amplitude * std::sin(nu * std::log(0.5 * x) +
                               sign_value(sign) * coulomb_phase(nu));
}

}  // namespace conical_ab::specfun
