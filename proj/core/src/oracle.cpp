#include "conical_ab/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conical_ab/errors.hpp"

namespace conical_ab::oracle {

namespace {

using spectrum::BoundState;
using spectrum::Channel;

double relative_spread(const std::vector<double>& values) {
  double spread = 0.0;
  for (double v : values) {
    spread = std::max(spread, std::abs(v / values.front() - 1.0));
  }
  return spread;
}

// Symmetric tridiagonal solve (H - sigma) x = b without pivoting; zero pivots
// are nudged, which is what inverse iteration wants.
std::vector<double> shifted_solve(const TridiagonalOperator& op, double sigma,
                                  const std::vector<double>& rhs) {
  const std::size_t n = op.diagonal.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  double pivot = op.diagonal[0] - sigma;
  if (pivot == 0.0) pivot = tiny;
  c[0] = n > 1 ? op.off_diagonal[0] / pivot : 0.0;
  d[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = op.diagonal[i] - sigma - op.off_diagonal[i - 1] * c[i - 1];
    if (pivot == 0.0) pivot = tiny;
    c[i] = i + 1 < n ? op.off_diagonal[i] / pivot : 0.0;
    d[i] = (rhs[i] - op.off_diagonal[i - 1] * d[i - 1]) / pivot;
  }
  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace

std::string_view to_string(Spacing s) {
  return s == Spacing::Uniform ? "uniform" : "log_uniform";
}

std::string_view to_string(CoreModel c) {
  return c == CoreModel::RegularCore ? "regular_core" : "shell_only";
}

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t n, Spacing spacing,
                       double anchor)
    : spacing_(spacing) {
  if (n < 3) throw ConfigurationError("radial grid needs at least 3 nodes");
  if (!(r_min > 0.0 && r_min < anchor && anchor < r_max)) {
    throw ConfigurationError("radial grid needs 0 < r_min < a < r_max (r_min = " +
                             std::to_string(r_min) + ", a = " +
                             std::to_string(anchor) + ", r_max = " +
                             std::to_string(r_max) + ")");
  }
  const auto last = static_cast<double>(n - 1);
  nodes_.resize(n);
  if (spacing == Spacing::Uniform) {
    const double h0 = (r_max - r_min) / last;
    const double k = std::clamp(std::round((anchor - r_min) / h0), 1.0, last - 1.0);
    const double h = (anchor - r_min) / k;
    for (std::size_t i = 0; i < n; ++i) nodes_[i] = r_min + static_cast<double>(i) * h;
    anchor_index_ = static_cast<std::size_t>(k);
  } else {
    const double q0 = std::log(r_max / r_min) / last;
    const double k =
        std::clamp(std::round(std::log(anchor / r_min) / q0), 1.0, last - 1.0);
    const double q = std::log(anchor / r_min) / k;
    for (std::size_t i = 0; i < n; ++i) {
      nodes_[i] = r_min * std::exp(static_cast<double>(i) * q);
    }
    anchor_index_ = static_cast<std::size_t>(k);
  }
  nodes_[anchor_index_] = anchor;
}

double RadialGrid::face_below(std::size_t i) const {
  return i == 0 ? 0.0 : 0.5 * (nodes_[i - 1] + nodes_[i]);
}

double RadialGrid::outer_ghost() const {
  const std::size_t n = nodes_.size();
  if (spacing_ == Spacing::Uniform) return 2.0 * nodes_[n - 1] - nodes_[n - 2];
  return nodes_[n - 1] * nodes_[n - 1] / nodes_[n - 2];
}

double RadialGrid::face_above(std::size_t i) const {
  if (i + 1 < nodes_.size()) return 0.5 * (nodes_[i] + nodes_[i + 1]);
  return 0.5 * (nodes_[i] + outer_ghost());
}

double RadialGrid::cell_measure(std::size_t i) const {
  const double lo = face_below(i);
  const double hi = face_above(i);
  return 0.5 * (hi - lo) * (hi + lo);
}

TridiagonalOperator build_hamiltonian(const Channel& ch, double mass, double a,
                                      const RadialGrid& grid,
                                      const BuildOptions& options) {
  if (!(mass > 0.0)) throw DomainError("mass must be positive");
  const auto nodes = grid.nodes();
  const std::size_t n = grid.size();
  const std::size_t k = grid.anchor_index();
  if (!(a > nodes.front() && a < nodes.back()) ||
      std::abs(nodes[k] - a) > 1e-12 * a) {
    throw ConfigurationError("shell radius a = " + std::to_string(a) +
                             " is not the anchor node of the grid");
  }

  const double lambda_sq = ch.lambda_sq;
  const double coupling = (1.0 - ch.alpha) / ch.alpha;

  // Cell integrals int (...) r dr of the potential terms.
  std::vector<double> potential(n, 0.0);
  std::vector<double> shell(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double lo = grid.face_below(i);
    const double hi = grid.face_above(i);
    if (options.core == CoreModel::RegularCore) lo = std::max(lo, a);
    if (hi <= lo) continue;
    if (lo == 0.0) {
      potential[i] = lambda_sq * grid.cell_measure(i) / (nodes[0] * nodes[0]);
    } else {
      potential[i] = lambda_sq * std::log(hi / lo);
    }
  }
  if (options.include_shell) {
    if (options.shell == ShellDiscretization::SingleNode) {
      shell[k] = coupling;
    } else {
      shell[k - 1] = 0.25 * coupling;
      shell[k] = 0.5 * coupling;
      shell[k + 1] = 0.25 * coupling;
    }
  }

  TridiagonalOperator op{std::vector<double>(n), std::vector<double>(n - 1),
                         std::vector<double>(n), std::vector<double>(n),
                         grid, mass};
  for (std::size_t i = 0; i < n; ++i) op.cell_measure[i] = grid.cell_measure(i);

  const double scale = 1.0 / (2.0 * mass);
  double flux_below = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double next = i + 1 < n ? nodes[i + 1] : grid.outer_ghost();
    const double flux_above = grid.face_above(i) / (next - nodes[i]);
    const double w = op.cell_measure[i];
    op.diagonal[i] = scale * (flux_below + flux_above + potential[i] + shell[i]) / w;
    op.shell_spike[i] = shell[i] / (a * grid.cell_width(i));
    if (i + 1 < n) {
      op.off_diagonal[i] =
          -scale * flux_above / std::sqrt(w * grid.cell_measure(i + 1));
    }
    flux_below = flux_above;
  }
  return op;
}

std::size_t eigenvalue_count_below(std::span<const double> diagonal,
                                   std::span<const double> off_diagonal,
                                   double sigma) {
  double max_off_sq = 1.0;
  for (double e : off_diagonal) max_off_sq = std::max(max_off_sq, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_off_sq;
  std::size_t count = 0;
  double d = diagonal[0] - sigma;
  if (std::abs(d) < pivmin) d = -pivmin;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < diagonal.size(); ++i) {
    const double e = off_diagonal[i - 1];
    d = (diagonal[i] - sigma) - e * e / d;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
  }
  return count;
}

std::size_t eigenvalue_count_below(const TridiagonalOperator& op, double sigma) {
  return eigenvalue_count_below(op.diagonal, op.off_diagonal, sigma);
}

double eigenvalue(std::span<const double> diagonal,
                  std::span<const double> off_diagonal, std::size_t k,
                  double abs_tol) {
  const std::size_t n = diagonal.size();
  if (n == 0 || off_diagonal.size() + 1 != n) {
    throw ConfigurationError("tridiagonal matrix has inconsistent sizes");
  }
  if (k >= n) throw DomainError("eigenvalue index out of range");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double radius = (i > 0 ? std::abs(off_diagonal[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(off_diagonal[i]) : 0.0);
    lo = std::min(lo, diagonal[i] - radius);
    hi = std::max(hi, diagonal[i] + radius);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi || hi - lo <= abs_tol) break;
    if (eigenvalue_count_below(diagonal, off_diagonal, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lowest_eigenvalue(const TridiagonalOperator& op) {
  return eigenvalue(op.diagonal, op.off_diagonal, 0);
}

std::vector<double> eigenfunction(const TridiagonalOperator& op, double energy) {
  const std::size_t n = op.diagonal.size();
  const double sigma = energy - 1e-10 * std::max(std::abs(energy), 1e-300);
  std::vector<double> x(n, 1.0);
  for (int iter = 0; iter < 4; ++iter) {
    x = shifted_solve(op, sigma, x);
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  const double sign = x[op.grid.anchor_index()] < 0.0 ? -1.0 : 1.0;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = sign * x[i] / std::sqrt(op.cell_measure[i]);
  return f;
}

double zero_energy_log_derivative(const Channel& ch, double mass, double a,
                                  CoreModel core) {
  if (!(mass > 0.0) || !(a > 0.0)) throw DomainError("mass and a must be positive");
  double inner_lambda_sq = 0.0;
  double f = 1.0;
  double g = 0.0;  // r f'(r)
  if (core == CoreModel::ShellOnly) {
    if (ch.lambda_sq < 0.0) {
      throw UnsupportedChannel(
          "an attractive inverse-square term reaching the origin has no regular "
          "zero-energy solution");
    }
    inner_lambda_sq = ch.lambda_sq;
    g = std::sqrt(ch.lambda_sq) * f;  // f ~ r^{|lambda|}
  }
  // In s = ln r the equation reads f'' = lambda^2 f, g = df/ds. Integrate
  // from s0 = ln(1e-6 a) to ln a, renormalising to avoid overflow.
  const double s0 = std::log(1e-6 * a);
  const double s1 = std::log(a);
  constexpr int kSteps = 4000;
  const double h = (s1 - s0) / kSteps;
  auto rhs = [inner_lambda_sq](double ff, double gg, double& df, double& dg) {
    df = gg;
    dg = inner_lambda_sq * ff;
  };
  for (int step = 0; step < kSteps; ++step) {
    double k1f, k1g, k2f, k2g, k3f, k3g, k4f, k4g;
    rhs(f, g, k1f, k1g);
    rhs(f + 0.5 * h * k1f, g + 0.5 * h * k1g, k2f, k2g);
    rhs(f + 0.5 * h * k2f, g + 0.5 * h * k2g, k3f, k3g);
    rhs(f + h * k3f, g + h * k3g, k4f, k4g);
    f += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    const double norm = std::abs(f);
    f /= norm;
    g /= norm;
  }
  // Jump across the shell: [r f'] = ((1 - alpha)/alpha) f(a).
  g += (1.0 - ch.alpha) / ch.alpha * f;
  return g / f;
}

Spacing default_spacing(const Channel&) { return Spacing::LogUniform; }

RadialGrid make_grid(const Channel& ch, double a, double kappa,
                     const GridPolicy& policy) {
  if (!(kappa > 0.0)) throw DomainError("grid sizing needs kappa > 0");
  const Spacing spacing = policy.spacing.value_or(default_spacing(ch));
  const double r_max = std::max(policy.r_max_kappa / kappa, 10.0 * a);
  const double r_min = spacing == Spacing::LogUniform
                           ? policy.r_min_over_a * a
                           : r_max / (2.0 * static_cast<double>(policy.n));
  return RadialGrid(r_min, r_max, policy.n, spacing, a);
}

BoundState matching_bound_state(const Channel& ch, double mass, double a,
                                const MatchingOptions& matching) {
  if (ch.lambda_sq < 0.0) {
    return spectrum::cone_bound_energy(ch, mass, a, matching.branch,
                                       spectrum::Mode::NumericRoot, matching.sign,
                                       matching.form);
  }
  return spectrum::anticone_bound_energy(ch, mass, a, spectrum::Mode::NumericRoot,
                                         matching.form);
}

BoundState grid_bound_state(const Channel& ch, double mass, double a,
                            double kappa_hint, const GridPolicy& policy) {
  const auto grid = make_grid(ch, a, kappa_hint, policy);
  const auto op = build_hamiltonian(ch, mass, a, grid, policy.build);
  const double energy = lowest_eigenvalue(op);
  if (!(energy < 0.0)) {
    throw NoBoundState("grid operator has no negative eigenvalue (lowest = " +
                       std::to_string(energy) + ")");
  }
  const double kappa = std::sqrt(-2.0 * mass * energy);
  return BoundState{energy, kappa, ch,   0, spectrum::Source::OracleGrid,
                    mass,   a,     kappa * a < spectrum::kSmallArgumentValidity};
}

namespace {

ConvergenceRow make_row(double a, std::size_t n, double mass,
                        const BoundState& matched, const BoundState& grid) {
  const double s = mass * a * a;
  return ConvergenceRow{a,
                        n,
                        matched.energy,
                        grid.energy,
                        s * matched.energy,
                        s * grid.energy,
                        (grid.energy - matched.energy) / std::abs(matched.energy)};
}

ConvergenceReport summarise(std::vector<ConvergenceRow> rows) {
  std::vector<double> matched;
  std::vector<double> grid;
  for (const auto& r : rows) {
    matched.push_back(r.scaled_matching);
    grid.push_back(r.scaled_grid);
  }
  return ConvergenceReport{std::move(rows), relative_spread(matched),
                           relative_spread(grid)};
}

}  // namespace

ConvergenceReport convergence_study(const Channel& ch, double mass,
                                    std::span<const double> a_values,
                                    const GridPolicy& policy,
                                    const MatchingOptions& matching) {
  if (a_values.empty()) throw DomainError("convergence study needs a values");
  for (std::size_t i = 1; i < a_values.size(); ++i) {
    if (!(a_values[i] < a_values[i - 1])) {
      throw DomainError("a values must be strictly decreasing");
    }
  }
  std::vector<ConvergenceRow> rows;
  for (double a : a_values) {
    const auto matched = matching_bound_state(ch, mass, a, matching);
    const auto grid = grid_bound_state(ch, mass, a, matched.kappa, policy);
    rows.push_back(make_row(a, policy.n, mass, matched, grid));
  }
  return summarise(std::move(rows));
}

ConvergenceReport refinement_study(const Channel& ch, double mass, double a,
                                   std::span<const std::size_t> n_values,
                                   const GridPolicy& policy,
                                   const MatchingOptions& matching) {
  const auto matched = matching_bound_state(ch, mass, a, matching);
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : n_values) {
    GridPolicy refined = policy;
    refined.n = n;
    const auto grid = grid_bound_state(ch, mass, a, matched.kappa, refined);
    rows.push_back(make_row(a, n, mass, matched, grid));
  }
  return summarise(std::move(rows));
}

}  // namespace conical_ab::oracle
