#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "conical_ab/spectrum.hpp"

/// Finite-volume discretisation of the regularised radial problem
///
///   -(1/r)(r f')' + V(r) f + ((1 - alpha)/alpha) delta(r - a)/a f = 2 M E f
///
/// used as independent ground truth for the matching equations. The matrix is
/// symmetrised by the discrete analogue of the measure transform
/// u = r^{1/2} f, so its eigenvalues are energies E directly.
namespace conical_ab::oracle {

enum class Spacing { Uniform, LogUniform };

/// Where the inverse-square term acts.
///  - RegularCore: only for r > a; the core r < a is force-free, so the
///    zero-energy log-derivative at a+ is exactly the shell jump.
///  - ShellOnly: lambda^2/r^2 everywhere down to the innermost cell; for
///    lambda^2 < 0 the result depends on r_min (fall to centre).
enum class CoreModel { RegularCore, ShellOnly };

enum class ShellDiscretization { SingleNode, ThreeNode };

std::string_view to_string(Spacing s);
std::string_view to_string(CoreModel c);

/// Strictly increasing radial nodes with the shell radius on a node. The
/// innermost cell reaches down to r = 0 with zero flux (regular solution);
/// the wavefunction vanishes one spacing beyond the last node.
class RadialGrid {
 public:
  /// Throws ConfigurationError unless 0 < r_min < anchor < r_max and n >= 3.
  /// The spacing is adjusted slightly so that `anchor` is a node; r_max moves
  /// accordingly.
  RadialGrid(double r_min, double r_max, std::size_t n, Spacing spacing,
             double anchor);

  double r_min() const { return nodes_.front(); }
  double r_max() const { return nodes_.back(); }
  std::size_t size() const { return nodes_.size(); }
  Spacing spacing() const { return spacing_; }
  std::size_t anchor_index() const { return anchor_index_; }
  std::span<const double> nodes() const { return nodes_; }

  double face_below(std::size_t i) const;
  double face_above(std::size_t i) const;
  /// Ghost node where the Dirichlet condition is imposed.
  double outer_ghost() const;
  /// Cell measure int r dr over [face_below, face_above].
  double cell_measure(std::size_t i) const;
  double cell_width(std::size_t i) const { return face_above(i) - face_below(i); }

 private:
  std::vector<double> nodes_;
  Spacing spacing_;
  std::size_t anchor_index_;
};

/// Symmetric tridiagonal matrix together with its grid and the bookkeeping
/// needed to map eigenvectors back to f(r).
struct TridiagonalOperator {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size n - 1, same above and below
  std::vector<double> cell_measure;  // int r dr per cell
  std::vector<double> shell_spike;   // delta-shell potential per node, before 1/(2M);
                                     // sum_i spike_i * cell_width_i = ((1 - alpha)/alpha)/a
  RadialGrid grid;
  double mass;
};

struct BuildOptions {
  CoreModel core = CoreModel::RegularCore;
  ShellDiscretization shell = ShellDiscretization::SingleNode;
  /// Drop the delta shell entirely (variational comparisons).
  bool include_shell = true;
};

/// Discretised (1/2M) [h0 + shell]. Throws ConfigurationError if a is not
/// strictly inside the grid or does not coincide with its anchor node.
TridiagonalOperator build_hamiltonian(const spectrum::Channel& ch, double mass,
                                      double a, const RadialGrid& grid,
                                      const BuildOptions& options = {});

/// Number of eigenvalues strictly below sigma (Sturm sequence / LDL^T
/// inertia).
std::size_t eigenvalue_count_below(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal,
                                   double sigma);
std::size_t eigenvalue_count_below(const TridiagonalOperator& op, double sigma);

/// k-th smallest eigenvalue (k = 0 is the lowest) by Sturm bisection, to an
/// absolute tolerance abs_tol or until the bracket stops shrinking.
double eigenvalue(std::span<const double> diagonal,
                  std::span<const double> off_diagonal, std::size_t k,
                  double abs_tol = 0.0);

double lowest_eigenvalue(const TridiagonalOperator& op);

/// f(r_i) for the eigenvector belonging to `energy` (inverse iteration),
/// normalised to sum_i f_i^2 w_i = 1 and positive at the shell node.
std::vector<double> eigenfunction(const TridiagonalOperator& op, double energy);

/// r f'/f at r = a+ for the zero-energy solution that is regular at the
/// origin, integrated outwards (RK4 in ln r) and across the shell jump.
/// ShellOnly with lambda^2 < 0 has no regular solution: UnsupportedChannel.
double zero_energy_log_derivative(const spectrum::Channel& ch, double mass,
                                  double a,
                                  CoreModel core = CoreModel::RegularCore);

/// How grids are laid out for a bound state of scale kappa.
struct GridPolicy {
  std::size_t n = 20000;
  /// Defaults to LogUniform, which resolves the shell and the K tail alike.
  std::optional<Spacing> spacing;
  /// Innermost node as a fraction of a (LogUniform only).
  double r_min_over_a = 1e-2;
  /// r_max = r_max_kappa / kappa.
  double r_max_kappa = 25.0;
  BuildOptions build;
};

/// Matching-side settings for comparisons.
struct MatchingOptions {
  spectrum::MatchingForm form = spectrum::MatchingForm::SmallArgument;
  specfun::PhaseSign sign = specfun::kDefaultPhaseSign;
  int branch = 0;
};

Spacing default_spacing(const spectrum::Channel& ch);

RadialGrid make_grid(const spectrum::Channel& ch, double a, double kappa,
                     const GridPolicy& policy);

/// Matching-equation bound state (anti-cone ground state or cone branch).
spectrum::BoundState matching_bound_state(const spectrum::Channel& ch,
                                          double mass, double a,
                                          const MatchingOptions& matching);

/// Lowest grid eigenvalue as a BoundState (source OracleGrid). The grid is
/// sized from kappa_hint. Throws NoBoundState if the lowest eigenvalue is not
/// negative.
spectrum::BoundState grid_bound_state(const spectrum::Channel& ch, double mass,
                                      double a, double kappa_hint,
                                      const GridPolicy& policy);

struct ConvergenceRow {
  double a;
  std::size_t n;
  double matching_energy;
  double grid_energy;
  double scaled_matching;  // M a^2 E
  double scaled_grid;
  double relative_gap;     // (grid - matching) / |matching|
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// max_i |x_i / x_0 - 1| over the scaled energies.
  double matching_scaled_spread;
  double grid_scaled_spread;
};

/// Sweep over strictly decreasing a values at fixed grid policy.
ConvergenceReport convergence_study(const spectrum::Channel& ch, double mass,
                                    std::span<const double> a_values,
                                    const GridPolicy& policy,
                                    const MatchingOptions& matching = {});

/// Grid refinement at fixed a over the given node counts.
ConvergenceReport refinement_study(const spectrum::Channel& ch, double mass,
                                   double a, std::span<const std::size_t> n_values,
                                   const GridPolicy& policy,
                                   const MatchingOptions& matching = {});

}  // namespace conical_ab::oracle
