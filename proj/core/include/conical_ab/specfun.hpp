#pragma once

#include <complex>
#include <cstddef>

/// Special-function kernels used by the matching equations. The domains are
/// deliberately narrow: real orders in (0, 1) for K, purely imaginary orders
/// for K_{i nu}, and the line 1 +/- i lambda for the gamma function.
namespace conical_ab::specfun {

/// Order of a radial Bessel channel: lambda^2 >= 0 gives a real order |lambda|,
/// lambda^2 < 0 gives the purely imaginary order i|lambda|.
struct OrderSpec {
  enum class Kind { RealOrder, ImaginaryOrder };
  Kind kind;
  double magnitude;
};

/// Sign in front of the Coulomb phase inside the small-argument sine of
/// K_{i nu}: Minus reproduces sin[nu ln(x/2) - gamma_nu], which is the
/// behaviour of the exact function; Plus is the alternative sign that appears
/// in the cotangent matching equation.
enum class PhaseSign { Plus, Minus };

/// Default sign used everywhere unless a caller overrides it.
inline constexpr PhaseSign kDefaultPhaseSign = PhaseSign::Minus;

/// +1 for Plus, -1 for Minus.
constexpr double sign_value(PhaseSign sign) {
  return sign == PhaseSign::Plus ? 1.0 : -1.0;
}

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// ln Gamma(z) on the continuous branch for Re z > 0.
std::complex<double> ln_gamma(std::complex<double> z);

/// Power series for I_order(x), valid for order > -1.
struct SeriesResult {
  double value;
  std::size_t terms;
  double next_term;  // first omitted term
};

SeriesResult bessel_i_series(double order, double x);

/// I_order(x) for order >= 0, x > 0. Throws NumericalFailure for x > 700.
double bessel_i(double order, double x);

/// I_order(x) for any order > -1, used for the I_{-nu} half of K_nu.
double bessel_i_signed(double order, double x);

/// K_order(x) for order in (0, 1), x > 0. Uses pi/(2 sin pi nu) [I_{-nu} -
/// I_nu] for x <= 2 and Temme's continued fraction beyond.
double bessel_k(double order, double x);

/// x K'_order(x) / K_order(x) for order in (0, 1).
double bessel_k_log_derivative(double order, double x);

/// Two-term small-argument form of K_order(x).
double bessel_k_asymptotic_small_x(double order, double x);

/// Coulomb phase gamma_lambda = arg Gamma(1 + i lambda), principal value.
double coulomb_phase(double lambda_mag);

/// K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt by Gauss-Kronrod
/// quadrature; absolute error well below 1e-10.
double bessel_k_imag(double order_mag, double x);

/// d/dx K_{i nu}(x) by the same quadrature.
double bessel_k_imag_derivative(double order_mag, double x);

/// Small-argument form
///   -(pi / (nu sinh pi nu))^{1/2} sin[nu ln(x/2) -/+ gamma_nu].
/// Meaningful for x < 0.1 min(1, 1/nu); not enforced.
double bessel_k_imag_small_x(double order_mag, double x,
                             PhaseSign sign = kDefaultPhaseSign);

}  // namespace conical_ab::specfun
