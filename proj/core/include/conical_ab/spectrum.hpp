#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "conical_ab/geometry.hpp"
#include "conical_ab/specfun.hpp"

/// Angular channels, the ring spectrum and the bound states of the radial
/// operator h = h0 + ((1 - alpha)/alpha) delta(r)/r. Energies are in hbar = 1
/// units; bound states depend on (M, a) only through M a^2 E.
namespace conical_ab::spectrum {

enum class SelfAdjointClass { EssentiallySelfAdjoint, NeedsExtension, ImaginaryOrder };

std::string_view to_string(SelfAdjointClass c);

/// One angular sector m of the flux-threaded cone.
struct Channel {
  int m;
  double phi;
  double alpha;
  double lambda_sq;
  specfun::OrderSpec order;
  SelfAdjointClass sa_class;

  /// m + phi, the only combination the dynamics depends on.
  double shifted_m() const { return m + phi; }
  geometry::SurfaceKind surface() const;
};

/// lambda^2 = [4(m + phi)^2 - (1 - alpha^2)] / (4 alpha^2) and the derived
/// classification. Throws DomainError for alpha <= 0.
Channel make_channel(int m, double phi, double alpha);

/// Coefficients of V_g = lambda^2 / r^2 + ((1 - alpha)/alpha) delta(r)/r.
struct GeneralizedPotential {
  double inverse_square_coefficient;
  double delta_shell_coefficient;
};

GeneralizedPotential generalized_potential(const Channel& ch);

// ---------------------------------------------------------------------------
// Particle on a ring of radius R

/// E_m = [4(m + phi)^2 - (1 - alpha^2)] / (8 M alpha^2 R^2).
double ring_energy(int m, double phi, double alpha, double mass, double radius);

struct RingSpectrumEntry {
  int m;
  double energy;
};

/// Ring energies for m in [m_lo, m_hi].
std::vector<RingSpectrumEntry> ring_spectrum(int m_lo, int m_hi, double phi,
                                             double alpha, double mass,
                                             double radius);

/// Roots m = -phi +/- sqrt(phi^2 + script_e) of the ring characteristic
/// equation; only integer roots are admissible quantum numbers.
struct CharacteristicRoots {
  double plus;
  double minus;
  bool plus_is_integer;
  bool minus_is_integer;
};

/// std::nullopt when phi^2 + script_e < 0 (no real root).
std::optional<CharacteristicRoots> ring_characteristic_roots(double phi,
                                                             double script_e);

// ---------------------------------------------------------------------------
// Bound states

/// Zero-energy log-derivative r f'/f at the regularisation radius:
/// (1 - alpha)/alpha.
double boundary_log_derivative_target(double alpha);

enum class Mode { ClosedForm, NumericRoot };
enum class Source { ClosedForm, NumericRoot, OracleGrid };

std::string_view to_string(Source s);

/// How the exterior solution enters the matching condition.
///  - SmallArgument: two-term small-argument forms of K (the reference
///    algebra; its closed forms follow from this choice).
///  - ExactExterior: exact K_{|lambda|} / K_{i|lambda|} at r = a, target
///    (1 - alpha)/alpha.
///  - RegularizedCore: exact secular equation of the regularised problem in
///    which the core r < a is force-free; the interior contributes
///    z I_1(z)/I_0(z) to the target. This is what the grid oracle discretises.
enum class MatchingForm { SmallArgument, ExactExterior, RegularizedCore };

std::string_view to_string(MatchingForm f);

/// kappa a below which the small-argument forms are trusted.
inline constexpr double kSmallArgumentValidity = 0.1;

/// Bisection bracket: E in (-kEnergyBracket / (M a^2), 0).
inline constexpr double kEnergyBracket = 1e3;

struct BoundState {
  double energy;
  double kappa;
  Channel channel;
  int branch;
  Source source;
  double mass;
  double core_radius;
  /// kappa a < kSmallArgumentValidity.
  bool within_validity;

  /// Scale-free combination M a^2 E.
  double scaled_energy() const { return mass * core_radius * core_radius * energy; }
};

/// a f'(a)/f(a) - (1 - alpha)/alpha for f = K_{|lambda|}(kappa r), kappa =
/// sqrt(-2ME). Requires a NeedsExtension channel with 0 < |lambda| < 1 and
/// E < 0; otherwise UnsupportedChannel / DomainError.
double anticone_matching_residual(double energy, const Channel& ch, double mass,
                                  double a,
                                  MatchingForm form = MatchingForm::SmallArgument);

/// Anti-cone ground state of the channel. ClosedForm evaluates
///   E = -(2/(M a^2)) [((1 - alpha + alpha|l|)/(1 - alpha - alpha|l|))
///                     Gamma(1+|l|)/Gamma(1-|l|)]^{1/|l|}
/// and requires |1 - alpha| >= 1; NumericRoot bisects the matching residual.
/// Throws NoBoundState when the reality condition fails or no root exists.
BoundState anticone_bound_energy(const Channel& ch, double mass, double a,
                                 Mode mode,
                                 MatchingForm form = MatchingForm::SmallArgument);

/// True when |1 - alpha| >= 1.
bool anticone_reality_condition(double alpha);

/// |lambda| cot[|lambda| ln(a kappa / 2) +/- gamma_|lambda|] - (1 - alpha)/alpha
/// for an ImaginaryOrder channel (SmallArgument form; the exact forms use the
/// quadrature K_{i|lambda|}). Throws PoleEncountered on a pole.
double cone_matching_residual(double energy, const Channel& ch, double mass,
                              double a,
                              specfun::PhaseSign sign = specfun::kDefaultPhaseSign,
                              MatchingForm form = MatchingForm::SmallArgument);

/// Branch-th cone bound state. Branch 0 is the deepest root with kappa a <
/// kSmallArgumentValidity; branch n + 1 is the next root towards E = 0, and
/// E_{n+1}/E_n = exp(-2 pi/|lambda|) for the small-argument form.
///
/// ClosedForm evaluates the closed-form expression literally; in the
/// cone regime its radicand (m + phi)^2 - (1 - alpha^2)/4 is negative, so it
/// throws NoBoundState quoting the complex value (see cone_closed_form_literal).
BoundState cone_bound_energy(const Channel& ch, double mass, double a, int branch,
                             Mode mode,
                             specfun::PhaseSign sign = specfun::kDefaultPhaseSign,
                             MatchingForm form = MatchingForm::SmallArgument);

/// Literal evaluation of the cone closed form in complex arithmetic.
struct ConeClosedFormAudit {
  double radicand;  // (m + phi)^2 - (1 - alpha^2)/4
  std::complex<double> energy;
  bool is_real;
};

ConeClosedFormAudit cone_closed_form_literal(const Channel& ch, double mass,
                                             double a);

/// r -> K_{|lambda|}(kappa r) or K_{i|lambda|}(kappa r), unnormalised. The
/// returned callable throws DomainError for r <= 0.
std::function<double(double)> bound_wavefunction_sampler(const BoundState& bs);

}  // namespace conical_ab::spectrum
