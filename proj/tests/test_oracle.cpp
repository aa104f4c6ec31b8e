#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "conical_ab/errors.hpp"
#include "conical_ab/oracle.hpp"
#include "conical_ab/specfun.hpp"
#include "oracles.hpp"

namespace orc = conical_ab::oracle;
namespace sp = conical_ab::spectrum;

namespace {

double rel(double got, double want) { return std::abs(got / want - 1.0); }

// Exact energies of the force-free-core model (Bessel I inside, K outside),
// M = a = 1, frozen from a 30-digit solve.
constexpr double kCoreAntiCone20 = -0.0012612000374581265;
constexpr double kCoreCone06 = -7.191234559013332e-4;

orc::RadialGrid log_grid(double a, std::size_t n = 4000) {
  return orc::RadialGrid(1e-2 * a, 500.0 * a, n, orc::Spacing::LogUniform, a);
}

}  // namespace

TEST(RadialGrid, Invariants) {
  for (auto spacing : {orc::Spacing::Uniform, orc::Spacing::LogUniform}) {
    const orc::RadialGrid grid(0.01, 50.0, 1001, spacing, 1.3);
    const auto nodes = grid.nodes();
    ASSERT_EQ(nodes.size(), 1001u);
    EXPECT_TRUE(std::is_sorted(nodes.begin(), nodes.end()));
    EXPECT_TRUE(std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end());
    EXPECT_EQ(nodes[grid.anchor_index()], 1.3);
    EXPECT_EQ(grid.face_below(0), 0.0);
    EXPECT_GT(grid.outer_ghost(), grid.r_max());
    double measure = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) measure += grid.cell_measure(i);
    const double outer = grid.face_above(grid.size() - 1);
    EXPECT_NEAR(measure, 0.5 * outer * outer, 1e-10 * outer * outer);
  }
}

TEST(RadialGrid, RejectsBadConfiguration) {
  EXPECT_THROW(orc::RadialGrid(0.0, 10.0, 100, orc::Spacing::Uniform, 1.0), conical_ab::ConfigurationError);
  EXPECT_THROW(orc::RadialGrid(0.1, 10.0, 2, orc::Spacing::Uniform, 1.0), conical_ab::ConfigurationError);
  EXPECT_THROW(orc::RadialGrid(0.1, 10.0, 100, orc::Spacing::Uniform, 20.0), conical_ab::ConfigurationError);
  EXPECT_THROW(orc::RadialGrid(2.0, 10.0, 100, orc::Spacing::LogUniform, 1.0), conical_ab::ConfigurationError);
}

TEST(Hamiltonian, RequiresShellOnAnchor) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const auto grid = log_grid(1.0);
  EXPECT_THROW(orc::build_hamiltonian(ch, 1.0, 1.1, grid), conical_ab::ConfigurationError);
  EXPECT_THROW(orc::build_hamiltonian(ch, 1.0, 1000.0, grid), conical_ab::ConfigurationError);
  EXPECT_NO_THROW(orc::build_hamiltonian(ch, 1.0, 1.0, grid));
}

TEST(Hamiltonian, ShellWeight) {
  for (double alpha : {0.5, 2.0, 3.0}) {
    for (auto shell : {orc::ShellDiscretization::SingleNode, orc::ShellDiscretization::ThreeNode}) {
      const double a = 0.7;
      const auto grid = log_grid(a);
      orc::BuildOptions options;
      options.shell = shell;
      const auto op = orc::build_hamiltonian(sp::make_channel(0, 0.0, alpha), 1.0, a, grid, options);
      double sum = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) sum += op.shell_spike[i] * grid.cell_width(i);
      EXPECT_NEAR(sum, (1.0 - alpha) / alpha / a, 1e-12);
    }
  }
}

TEST(Hamiltonian, FlatSpectrumIsNonNegative) {
  const auto ch = sp::make_channel(0, 0.0, 1.0);
  for (auto spacing : {orc::Spacing::Uniform, orc::Spacing::LogUniform}) {
    const orc::RadialGrid grid(0.01, 100.0, 3000, spacing, 1.0);
    const auto op = orc::build_hamiltonian(ch, 1.0, 1.0, grid);
    EXPECT_GE(orc::lowest_eigenvalue(op), 0.0);
    EXPECT_EQ(orc::eigenvalue_count_below(op, 0.0), 0u);
  }
}

TEST(Sturm, DiagonalMatrix) {
  const std::vector<double> d{1.0, 2.0, 3.0};
  const std::vector<double> e{0.0, 0.0};
  EXPECT_DOUBLE_EQ(orc::eigenvalue(d, e, 0), 1.0);
  EXPECT_DOUBLE_EQ(orc::eigenvalue(d, e, 2), 3.0);
  EXPECT_EQ(orc::eigenvalue_count_below(d, e, 2.5), 2u);
}

TEST(Sturm, MatchesDenseJacobiOnRandomMatrices) {
  std::mt19937 rng(20261015);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> d(5);
    std::vector<double> e(4);
    for (auto& v : d) v = dist(rng);
    for (auto& v : e) v = dist(rng);
    std::vector<std::vector<double>> dense(5, std::vector<double>(5, 0.0));
    for (std::size_t i = 0; i < 5; ++i) dense[i][i] = d[i];
    for (std::size_t i = 0; i < 4; ++i) dense[i][i + 1] = dense[i + 1][i] = e[i];
    auto ev = oracles::jacobi_eigenvalues(dense);
    std::sort(ev.begin(), ev.end());
    for (std::size_t k = 0; k < 5; ++k) {
      EXPECT_NEAR(orc::eigenvalue(d, e, k), ev[k], 1e-12);
    }
    for (double sigma = -8.0; sigma <= 8.0; sigma += 0.37) {
      const auto direct = static_cast<std::size_t>(
          std::count_if(ev.begin(), ev.end(), [sigma](double v) { return v < sigma; }));
      EXPECT_EQ(orc::eigenvalue_count_below(d, e, sigma), direct);
    }
  }
}

TEST(Hamiltonian, FluxIsSymmetric) {
  // Undoing the measure transform must give the same face flux from both sides.
  const double mass = 1.7;
  const auto grid = log_grid(1.0, 50);
  const auto op = orc::build_hamiltonian(sp::make_channel(1, 0.3, 2.0), mass, 1.0, grid);
  ASSERT_EQ(op.off_diagonal.size() + 1, op.diagonal.size());
  const auto nodes = grid.nodes();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double flux = -2.0 * mass * op.off_diagonal[i] *
                        std::sqrt(op.cell_measure[i] * op.cell_measure[i + 1]);
    EXPECT_NEAR(flux, grid.face_above(i) / (nodes[i + 1] - nodes[i]), 1e-12 * flux);
    EXPECT_EQ(grid.face_above(i), grid.face_below(i + 1));
  }
}

TEST(GridEigen, AntiConeGolden) {
  // Uniform grid, r_max = 200, n = 2e4.
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const orc::RadialGrid grid(200.0 / 40000.0, 200.0, 20000, orc::Spacing::Uniform, 1.0);
  const double e = orc::lowest_eigenvalue(orc::build_hamiltonian(ch, 1.0, 1.0, grid));
  EXPECT_LT(e, 0.0);
  EXPECT_LT(rel(e, kCoreAntiCone20), 1e-3);
  EXPECT_LT(rel(e, -0.0012611178744919016), 1e-9);
}

TEST(GridEigen, SecondOrderConvergence) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  std::vector<double> energies;
  for (std::size_t n : {2000u, 4000u, 8000u}) {
    const orc::RadialGrid grid(1e-2, 500.0, n, orc::Spacing::LogUniform, 1.0);
    energies.push_back(orc::lowest_eigenvalue(orc::build_hamiltonian(ch, 1.0, 1.0, grid)));
  }
  const double ratio = (energies[1] - energies[0]) / (energies[2] - energies[1]);
  EXPECT_NEAR(ratio, 4.0, 0.5);
}

TEST(GridEigen, MatchesForceFreeCoreModel) {
  orc::GridPolicy policy;
  const auto anti = sp::make_channel(0, 0.0, 2.0);
  const auto a = orc::grid_bound_state(anti, 1.0, 1.0, 0.05, policy);
  EXPECT_LT(rel(a.energy, kCoreAntiCone20), 1e-5);
  EXPECT_EQ(a.source, sp::Source::OracleGrid);
  const auto cone = sp::make_channel(0, 0.0, 0.6);
  const auto c = orc::grid_bound_state(cone, 1.0, 1.0, 0.038, policy);
  EXPECT_LT(rel(c.energy, kCoreCone06), 1e-5);
}

TEST(GridEigen, EigenfunctionFollowsBesselTail) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  orc::GridPolicy policy;
  const auto bs = orc::grid_bound_state(ch, 1.0, 1.0, 0.05, policy);
  const auto grid = orc::make_grid(ch, 1.0, bs.kappa, policy);
  const auto op = orc::build_hamiltonian(ch, 1.0, 1.0, grid);
  const auto f = orc::eigenfunction(op, bs.energy);
  double norm = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) norm += f[i] * f[i] * op.cell_measure[i];
  EXPECT_NEAR(norm, 1.0, 1e-10);
  const std::size_t k = grid.anchor_index();
  EXPECT_GT(f[k], 0.0);
  const double nu = ch.order.magnitude;
  const auto nodes = grid.nodes();
  for (std::size_t i = k; i < f.size() * 3 / 4; i += 997) {
    const double want = conical_ab::specfun::bessel_k(nu, bs.kappa * nodes[i]) /
                        conical_ab::specfun::bessel_k(nu, bs.kappa);
    EXPECT_NEAR(f[i] / f[k], want, 1e-3 * std::max(want, 1e-3)) << nodes[i];
  }
}

TEST(GridEigen, ThreeNodeShellConvergesToSingleNode) {
  // The smeared shell differs at first order in the spacing.
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  std::vector<double> gaps;
  for (std::size_t n : {10000u, 20000u}) {
    orc::GridPolicy single;
    single.n = n;
    orc::GridPolicy smeared = single;
    smeared.build.shell = orc::ShellDiscretization::ThreeNode;
    const double e1 = orc::grid_bound_state(ch, 1.0, 1.0, 0.05, single).energy;
    const double e3 = orc::grid_bound_state(ch, 1.0, 1.0, 0.05, smeared).energy;
    gaps.push_back(rel(e3, e1));
  }
  EXPECT_LT(gaps[1], 5e-3);
  EXPECT_NEAR(gaps[0] / gaps[1], 2.0, 0.2);
}

TEST(GridEigen, AttractiveShellLowersGroundState) {
  for (double alpha : {1.5, 2.0, 3.0, 5.0}) {
    for (int m = 0; m <= 2; ++m) {
      const auto ch = sp::make_channel(m, 0.2, alpha);
      const auto grid = log_grid(1.0, 3000);
      orc::BuildOptions with;
      orc::BuildOptions without;
      without.include_shell = false;
      EXPECT_LE(orc::lowest_eigenvalue(orc::build_hamiltonian(ch, 1.0, 1.0, grid, with)),
                orc::lowest_eigenvalue(orc::build_hamiltonian(ch, 1.0, 1.0, grid, without)));
    }
  }
}

TEST(GridEigen, RepulsiveShellBindsNothing) {
  for (double alpha : {0.3, 0.6, 0.9}) {
    for (int m = -3; m <= 3; ++m) {
      for (double phi : {0.0, 0.25, 0.5}) {
        const auto ch = sp::make_channel(m, phi, alpha);
        if (ch.lambda_sq < 0.0) continue;
        for (auto core : {orc::CoreModel::RegularCore, orc::CoreModel::ShellOnly}) {
          orc::BuildOptions options;
          options.core = core;
          const auto op = orc::build_hamiltonian(ch, 1.0, 1.0, log_grid(1.0, 2000), options);
          EXPECT_EQ(orc::eigenvalue_count_below(op, 0.0), 0u) << alpha << " " << m << " " << phi;
        }
      }
    }
  }
}

TEST(GridEigen, ConeTowerGrowsAsInnerRadiusShrinks) {
  const auto ch = sp::make_channel(0, 0.0, 0.6);
  orc::BuildOptions options;
  options.core = orc::CoreModel::ShellOnly;
  std::vector<std::size_t> counts;
  for (double r_min : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const orc::RadialGrid grid(r_min, 1e4, 6000, orc::Spacing::LogUniform, 1.0);
    counts.push_back(orc::eigenvalue_count_below(orc::build_hamiltonian(ch, 1.0, 1.0, grid, options), 0.0));
  }
  EXPECT_TRUE(std::is_sorted(counts.begin(), counts.end()));
  EXPECT_GT(counts.back(), counts.front());
  // nu/pi states per unit of ln r.
  const double per_decade = (2.0 / 3.0) / oracles::kPi * std::log(100.0);
  EXPECT_NEAR(static_cast<double>(counts.back() - counts.front()) / 3.0, per_decade, 1.0);
}

TEST(ZeroEnergy, LogDerivative) {
  EXPECT_NEAR(orc::zero_energy_log_derivative(sp::make_channel(0, 0.0, 1.0), 1.0, 1e-3), 0.0, 1e-12);
  EXPECT_NEAR(orc::zero_energy_log_derivative(sp::make_channel(0, 0.0, 2.0), 1.0, 1e-3), -0.5, 1e-6);
  EXPECT_NEAR(orc::zero_energy_log_derivative(sp::make_channel(0, 0.0, 0.5), 1.0, 1e-3), 1.0, 1e-6);
}

TEST(ZeroEnergy, ShellOnlyAddsRegularExponent) {
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  const double nu = ch.order.magnitude;
  EXPECT_NEAR(orc::zero_energy_log_derivative(ch, 1.0, 1e-3, orc::CoreModel::ShellOnly), nu - 0.5, 1e-8);
  EXPECT_THROW(orc::zero_energy_log_derivative(sp::make_channel(0, 0.0, 0.6), 1.0, 1e-3,
                                               orc::CoreModel::ShellOnly),
               conical_ab::UnsupportedChannel);
}

TEST(ShellOnly, NoBoundStateWhenShellIsWeak) {
  // With the inverse-square term reaching the origin the shell must beat 2 nu.
  const auto ch = sp::make_channel(0, 0.0, 2.0);
  orc::GridPolicy policy;
  policy.build.core = orc::CoreModel::ShellOnly;
  EXPECT_THROW(orc::grid_bound_state(ch, 1.0, 1.0, 0.05, policy), conical_ab::NoBoundState);
}

TEST(Convergence, ScaleInvariantProducts) {
  const std::vector<double> a_values{1.0, 0.5, 0.25};
  orc::GridPolicy policy;
  for (const auto& ch : {sp::make_channel(0, 0.0, 2.0), sp::make_channel(0, 0.0, 0.6)}) {
    const auto report = orc::convergence_study(ch, 1.0, a_values, policy);
    ASSERT_EQ(report.rows.size(), 3u);
    EXPECT_LT(report.matching_scaled_spread, 1e-10);
    EXPECT_LT(report.grid_scaled_spread, 1e-8);
  }
}

TEST(Convergence, RejectsUnsortedRadii) {
  const std::vector<double> a_values{0.5, 1.0};
  EXPECT_THROW(orc::convergence_study(sp::make_channel(0, 0.0, 2.0), 1.0, a_values, {}),
               conical_ab::DomainError);
}

TEST(Convergence, RefinementApproachesCoreModelMonotonically) {
  const auto ch = sp::make_channel(0, 0.25, 2.0);
  const std::vector<std::size_t> n_values{2000, 4000, 8000, 16000};
  orc::MatchingOptions matching;
  matching.form = sp::MatchingForm::RegularizedCore;
  const auto report = orc::refinement_study(ch, 1.0, 1.0, n_values, {}, matching);
  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    EXPECT_LT(std::abs(report.rows[i].relative_gap), std::abs(report.rows[i - 1].relative_gap));
  }
  EXPECT_LT(std::abs(report.rows.back().relative_gap), 1e-5);
}
