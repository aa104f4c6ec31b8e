#include "conical_ab/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "bisection.hpp"
#include "conical_ab/errors.hpp"

namespace conical_ab::spectrum {

namespace {

constexpr double kPi = std::numbers::pi;

using specfun::OrderSpec;
using specfun::PhaseSign;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(what) + " must be positive, got " + fmt(v));
  }
}

// kappa a from E, and back.
double scaled_kappa(double energy, double mass, double a) {
  return a * std::sqrt(-2.0 * mass * energy);
}

double energy_from_scaled_kappa(double z, double mass, double a) {
  return -z * z / (2.0 * mass * a * a);
}

BoundState make_state(double energy, const Channel& ch, double mass, double a,
                      int branch, Source source) {
  const double kappa = std::sqrt(-2.0 * mass * energy);
  return BoundState{energy, kappa,  ch,   branch, source,
                    mass,   a,      kappa * a < kSmallArgumentValidity};
}

// Interior log-derivative z I_1(z)/I_0(z) of the force-free core.
double core_log_derivative(double z) {
  return z * specfun::bessel_i(1.0, z) / specfun::bessel_i(0.0, z);
}

void require_needs_extension(const Channel& ch) {
  const double nu = ch.order.magnitude;
  if (ch.sa_class != SelfAdjointClass::NeedsExtension || !(nu > 0.0 && nu < 1.0)) {
    throw UnsupportedChannel(
        "anti-cone matching needs 0 < |lambda| < 1 (lambda^2 = " +
        fmt(ch.lambda_sq) + ", class " + std::string(to_string(ch.sa_class)) + ")");
  }
}

void require_imaginary_order(const Channel& ch) {
  if (ch.sa_class != SelfAdjointClass::ImaginaryOrder) {
    throw UnsupportedChannel("cone matching needs lambda^2 < 0 (lambda^2 = " +
                             fmt(ch.lambda_sq) + ")");
  }
}

// Anti-cone residual as a function of z = kappa a.
double anticone_residual_z(double z, const Channel& ch, MatchingForm form) {
  const double nu = ch.order.magnitude;
  const double target = boundary_log_derivative_target(ch.alpha);
  switch (form) {
    case MatchingForm::SmallArgument: {
      // K ~ A z^{-nu} - B z^{nu}; u = (B/A) z^{2 nu}.
      const double log_a_over_b = 2.0 * nu * std::numbers::ln2 +
                                  specfun::ln_gamma(1.0 + nu) -
                                  specfun::ln_gamma(1.0 - nu);
      const double u = std::exp(2.0 * nu * std::log(z) - log_a_over_b);
      return -nu * (1.0 + u) / (1.0 - u) - target;
    }
    case MatchingForm::ExactExterior:
      return specfun::bessel_k_log_derivative(nu, z) - target;
    case MatchingForm::RegularizedCore:
      return specfun::bessel_k_log_derivative(nu, z) - target -
             core_log_derivative(z);
  }
  return 0.0;
}

// Phase theta(z) = nu ln(z/2) + s gamma of the small-argument sine.
double cone_phase(double z, double nu, PhaseSign sign) {
  return nu * std::log(0.5 * z) +
         specfun::sign_value(sign) * specfun::coulomb_phase(nu);
}

// ln z at which the phase equals theta.
double cone_log_z_at_phase(double theta, double nu, PhaseSign sign) {
  return (theta - specfun::sign_value(sign) * specfun::coulomb_phase(nu)) / nu +
         std::numbers::ln2;
}

double cone_residual_z(double z, const Channel& ch, PhaseSign sign,
                       MatchingForm form) {
  const double nu = ch.order.magnitude;
  const double target = boundary_log_derivative_target(ch.alpha);
  if (form == MatchingForm::SmallArgument) {
    const double theta = cone_phase(z, nu, sign);
    const double s = std::sin(theta);
    if (std::abs(s) < 1e-14) {
      throw PoleEncountered("cot pole: |lambda| ln(a kappa/2) +/- gamma = " +
                            fmt(theta) + " is a multiple of pi");
    }
    return nu * std::cos(theta) / s - target;
  }
  const double k = specfun::bessel_k_imag(nu, z);
  if (k == 0.0) throw PoleEncountered("K_{i nu}(kappa a) vanishes");
  const double log_derivative = z * specfun::bessel_k_imag_derivative(nu, z) / k;
  double residual = log_derivative - target;
  if (form == MatchingForm::RegularizedCore) residual -= core_log_derivative(z);
  return residual;
}

constexpr double kLogZTolerance = 1e-15;
constexpr double kResidualTolerance = 1e-10;

// Bisect residual(exp(s)) on [s_lo, s_hi] where residual(s_lo) > 0 > residual(s_hi).
template <typename R>
double root_in_log_z(R&& residual, double s_lo, double s_hi) {
  auto f = [&](double s) { return residual(std::exp(s)); };
  return detail::bisect(f, s_lo, s_hi, f(s_lo), kLogZTolerance);
}

// First + to - sign change of residual(exp(s)) scanning s upwards whose
// bisected root has a small residual (excludes poles).
template <typename R>
std::optional<double> scan_for_root(R&& residual, double s_lo, double s_hi,
                                    int samples) {
  const double step = (s_hi - s_lo) / samples;
  double prev_s = s_lo;
  double prev = residual(std::exp(prev_s));
  for (int i = 1; i <= samples; ++i) {
    const double s = s_lo + i * step;
    const double cur = residual(std::exp(s));
    if (std::isfinite(prev) && std::isfinite(cur) && prev > 0.0 && cur < 0.0) {
      const double root = root_in_log_z(residual, prev_s, s);
      if (std::abs(residual(std::exp(root))) < kResidualTolerance) return root;
    }
    prev_s = s;
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(SelfAdjointClass c) {
  switch (c) {
    case SelfAdjointClass::EssentiallySelfAdjoint:
      return "essentially_self_adjoint";
    case SelfAdjointClass::NeedsExtension:
      return "needs_extension";
    case SelfAdjointClass::ImaginaryOrder:
      return "imaginary_order";
  }
  return "unknown";
}

std::string_view to_string(Source s) {
  switch (s) {
    case Source::ClosedForm:
      return "closed_form";
    case Source::NumericRoot:
      return "numeric_root";
    case Source::OracleGrid:
      return "oracle_grid";
  }
  return "unknown";
}

std::string_view to_string(MatchingForm f) {
  switch (f) {
    case MatchingForm::SmallArgument:
      return "small_argument";
    case MatchingForm::ExactExterior:
      return "exact_exterior";
    case MatchingForm::RegularizedCore:
      return "regularized_core";
  }
  return "unknown";
}

geometry::SurfaceKind Channel::surface() const {
  return geometry::classify_surface(alpha);
}

Channel make_channel(int m, double phi, double alpha) {
  require_positive(alpha, "alpha");
  const double shifted = m + phi;
  const double lambda_sq =
      (4.0 * shifted * shifted - (1.0 - alpha * alpha)) / (4.0 * alpha * alpha);
  const double magnitude = std::sqrt(std::abs(lambda_sq));
  const auto kind = lambda_sq < 0.0 ? OrderSpec::Kind::ImaginaryOrder
                                    : OrderSpec::Kind::RealOrder;
  SelfAdjointClass sa = SelfAdjointClass::EssentiallySelfAdjoint;
  if (lambda_sq < 0.0) {
    sa = SelfAdjointClass::ImaginaryOrder;
  } else if (lambda_sq < 1.0) {
    sa = SelfAdjointClass::NeedsExtension;
  }
  return Channel{m, phi, alpha, lambda_sq, OrderSpec{kind, magnitude}, sa};
}

GeneralizedPotential generalized_potential(const Channel& ch) {
  return {ch.lambda_sq, (1.0 - ch.alpha) / ch.alpha};
}

double ring_energy(int m, double phi, double alpha, double mass, double radius) {
  require_positive(alpha, "alpha");
  require_positive(mass, "mass");
  require_positive(radius, "ring radius");
  const double shifted = m + phi;
  return (4.0 * shifted * shifted - (1.0 - alpha * alpha)) /
         (8.0 * mass * alpha * alpha * radius * radius);
}

std::vector<RingSpectrumEntry> ring_spectrum(int m_lo, int m_hi, double phi,
                                             double alpha, double mass,
                                             double radius) {
  if (m_lo > m_hi) throw DomainError("empty m range");
  std::vector<RingSpectrumEntry> out;
  out.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (int m = m_lo; m <= m_hi; ++m) {
    out.push_back({m, ring_energy(m, phi, alpha, mass, radius)});
  }
  return out;
}

std::optional<CharacteristicRoots> ring_characteristic_roots(double phi,
                                                             double script_e) {
  const double disc = phi * phi + script_e;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double plus = -phi + root;
  const double minus = -phi - root;
  auto is_integer = [](double v) { return v == std::nearbyint(v); };
  return CharacteristicRoots{plus, minus, is_integer(plus), is_integer(minus)};
}

double boundary_log_derivative_target(double alpha) {
  require_positive(alpha, "alpha");
  return (1.0 - alpha) / alpha;
}

bool anticone_reality_condition(double alpha) {
  return std::abs(1.0 - alpha) >= 1.0;
}

double anticone_matching_residual(double energy, const Channel& ch, double mass,
                                  double a, MatchingForm form) {
  require_needs_extension(ch);
  require_positive(mass, "mass");
  require_positive(a, "regularisation radius a");
  if (!(energy < 0.0)) throw DomainError("matching residual needs E < 0");
  return anticone_residual_z(scaled_kappa(energy, mass, a), ch, form);
}

BoundState anticone_bound_energy(const Channel& ch, double mass, double a,
                                 Mode mode, MatchingForm form) {
  if (!(ch.alpha > 1.0)) {
    throw UnsupportedChannel("anti-cone bound states need alpha > 1, got " +
                             fmt(ch.alpha));
  }
  if (ch.sa_class == SelfAdjointClass::EssentiallySelfAdjoint) {
    throw UnsupportedChannel("lambda^2 = " + fmt(ch.lambda_sq) +
                             " >= 1: h0 is essentially self-adjoint, no "
                             "extension bound state");
  }
  require_needs_extension(ch);
  require_positive(mass, "mass");
  require_positive(a, "regularisation radius a");
  const double nu = ch.order.magnitude;

  if (mode == Mode::ClosedForm) {
    if (!anticone_reality_condition(ch.alpha)) {
      throw NoBoundState("reality condition |1 - alpha| >= 1 violated: |1 - alpha| = " +
                         fmt(std::abs(1.0 - ch.alpha)));
    }
    const double al = ch.alpha;
    const double ratio = (1.0 - al + al * nu) / (1.0 - al - al * nu);
    if (!(ratio > 0.0)) {
      throw NoBoundState("closed-form base is not positive (ratio = " + fmt(ratio) + ")");
    }
    const double log_base = std::log(ratio) + specfun::ln_gamma(1.0 + nu) -
                            specfun::ln_gamma(1.0 - nu);
    const double energy = -2.0 / (mass * a * a) * std::exp(log_base / nu);
    return make_state(energy, ch, mass, a, 0, Source::ClosedForm);
  }

  auto residual = [&](double z) { return anticone_residual_z(z, ch, form); };
  const double s_lo = std::log(1e-12);
  const double s_hi = 0.5 * std::log(2.0 * kEnergyBracket);
  const auto root = scan_for_root(residual, s_lo, s_hi, 2000);
  if (!root) {
    throw NoBoundState("matching residual has no sign change for E in (-" +
                       fmt(kEnergyBracket) + "/(M a^2), 0)");
  }
  return make_state(energy_from_scaled_kappa(std::exp(*root), mass, a), ch, mass,
                    a, 0, Source::NumericRoot);
}

double cone_matching_residual(double energy, const Channel& ch, double mass,
                              double a, PhaseSign sign, MatchingForm form) {
  require_imaginary_order(ch);
  require_positive(mass, "mass");
  require_positive(a, "regularisation radius a");
  if (!(energy < 0.0)) throw DomainError("matching residual needs E < 0");
  return cone_residual_z(scaled_kappa(energy, mass, a), ch, sign, form);
}

ConeClosedFormAudit cone_closed_form_literal(const Channel& ch, double mass,
                                             double a) {
  require_positive(mass, "mass");
  require_positive(a, "regularisation radius a");
  using cd = std::complex<double>;
  const double al = ch.alpha;
  const double shifted = ch.shifted_m();
  const double radicand = shifted * shifted - (1.0 - al * al) / 4.0;
  const cd root = std::sqrt(cd{radicand, 0.0});
  const double gamma = specfun::coulomb_phase(ch.order.magnitude);
  const cd cot_arg = (1.0 - al) / (al * root) - gamma;
  const cd arccot = std::atan(1.0 / cot_arg);
  const cd energy = -2.0 / (mass * a * a) * std::exp(2.0 / (al * root) * arccot);
  const bool is_real = std::isfinite(energy.real()) &&
                       std::abs(energy.imag()) <= 1e-12 * std::abs(energy);
  return {radicand, energy, is_real};
}

BoundState cone_bound_energy(const Channel& ch, double mass, double a, int branch,
                             Mode mode, PhaseSign sign, MatchingForm form) {
  require_imaginary_order(ch);
  require_positive(mass, "mass");
  require_positive(a, "regularisation radius a");
  if (branch < 0) throw DomainError("branch index must be >= 0");

  if (mode == Mode::ClosedForm) {
    const auto audit = cone_closed_form_literal(ch, mass, a);
    if (!audit.is_real) {
      std::ostringstream os;
      os.precision(10);
      os << "literal cone closed form is not real: radicand (m+phi)^2 - "
            "(1-alpha^2)/4 = "
         << audit.radicand << ", E = " << audit.energy.real() << " + "
         << audit.energy.imag() << "i";
      throw NoBoundState(os.str());
    }
    return make_state(audit.energy.real(), ch, mass, a, branch, Source::ClosedForm);
  }

  const double nu = ch.order.magnitude;
  const double target = boundary_log_derivative_target(ch.alpha);
  // Roots of nu cot(theta) = target sit at theta = k pi + c, c in (0, pi).
  const double c = 0.5 * kPi - std::atan(target / nu);
  const double theta_window = cone_phase(kSmallArgumentValidity, nu, sign);
  const double k_top = std::ceil((theta_window - c) / kPi) - 1.0;
  const double k = k_top - branch;
  const double s_pole_lo = cone_log_z_at_phase(k * kPi, nu, sign);
  const double s_pole_hi = cone_log_z_at_phase((k + 1.0) * kPi, nu, sign);
  const double cell = s_pole_hi - s_pole_lo;

  auto residual = [&](double z) { return cone_residual_z(z, ch, sign, form); };
  double root = 0.0;
  if (form == MatchingForm::SmallArgument) {
    const double inset = 1e-9 * cell;
    root = root_in_log_z(residual, s_pole_lo + inset, s_pole_hi - inset);
  } else {
    // Exact forms: the poles move slightly; scan a widened cell and keep the
    // root closest to the small-argument one.
    const double guess = cone_log_z_at_phase(k * kPi + c, nu, sign);
    const double lo = s_pole_lo - 0.5 * cell;
    const int samples = 400;
    const double step = 2.0 * cell / samples;
    std::optional<double> best;
    double prev_s = lo;
    double prev = residual(std::exp(prev_s));
    for (int i = 1; i <= samples; ++i) {
      const double s = lo + i * step;
      const double cur = residual(std::exp(s));
      if (std::isfinite(prev) && std::isfinite(cur) && prev > 0.0 && cur < 0.0) {
        const double cand = root_in_log_z(residual, prev_s, s);
        if (std::abs(residual(std::exp(cand))) < 1e-6 &&
            (!best || std::abs(cand - guess) < std::abs(*best - guess))) {
          best = cand;
        }
      }
      prev_s = s;
      prev = cur;
    }
    if (!best) {
      throw NumericalFailure("no root of the exact cone residual near branch " +
                             std::to_string(branch));
    }
    root = *best;
  }
  const double z = std::exp(root);
  if (form == MatchingForm::SmallArgument &&
      std::abs(residual(z)) >= kResidualTolerance) {
    throw NumericalFailure("cone bisection converged onto a pole");
  }
  return make_state(energy_from_scaled_kappa(z, mass, a), ch, mass, a, branch,
                    Source::NumericRoot);
}

std::function<double(double)> bound_wavefunction_sampler(const BoundState& bs) {
  const double kappa = bs.kappa;
  const double nu = bs.channel.order.magnitude;
  if (!(kappa > 0.0)) throw DomainError("bound state needs kappa > 0");
  if (bs.channel.order.kind == OrderSpec::Kind::ImaginaryOrder) {
    return [kappa, nu](double r) {
      if (!(r > 0.0)) throw DomainError("wavefunction needs r > 0");
      return specfun::bessel_k_imag(nu, kappa * r);
    };
  }
  if (!(nu > 0.0 && nu < 1.0)) {
    throw DomainError("real-order bound states need 0 < |lambda| < 1");
  }
  return [kappa, nu](double r) {
    if (!(r > 0.0)) throw DomainError("wavefunction needs r > 0");
    return specfun::bessel_k(nu, kappa * r);
  };
}

}  // namespace conical_ab::spectrum
