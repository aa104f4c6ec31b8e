#pragma once

#include <string_view>

/// Conical line element ds^2 = dr^2 + alpha^2 r^2 dtheta^2, its curvatures and
/// the Aharonov-Bohm flux-tube data. Distributional terms (the delta at the
/// apex) are carried as named coefficients and never evaluated pointwise.
namespace conical_ab::geometry {

enum class SurfaceKind { Cone, Plane, AntiCone };

std::string_view to_string(SurfaceKind kind);

/// Cone parameter alpha and particle mass M (hbar = c = 1).
struct SurfaceConfig {
  double alpha;
  double mass;
};

/// Validating constructor; throws DomainError unless alpha > 0 and mass > 0.
SurfaceConfig make_surface(double alpha, double mass);

/// Cone iff alpha < 1, Plane iff alpha == 1 (exact), AntiCone iff alpha > 1.
SurfaceKind classify_surface(double alpha);

/// Mean curvature sqrt|1 - alpha^2| / (2 alpha r). Throws DomainError for
/// r <= 0.
double mean_curvature(const SurfaceConfig& surface, double r);

/// Coefficient of delta(r)/r in the Gaussian curvature: (1 - alpha)/alpha.
double gaussian_curvature_coefficient(double alpha);

/// Coefficient of the flat two-dimensional delta in R^{12}_{12}:
/// 2 pi (1 - alpha)/alpha.
double curvature_distribution_coefficient(double alpha);

struct CurvatureReport {
  double gaussian_delta_coefficient;    // of delta(r)/r
  double mean_curvature_coefficient;    // of 1/r
  double distributional_scalar_coefficient;  // of delta_2(r)
};

CurvatureReport curvature_report(double alpha);

/// Geometric potential -(H^2 - K)/(2M) split into its 1/r^2 and delta(r)/r
/// parts, with the 1/(2M) prefactor included.
struct GeometricPotential {
  double inverse_square_coefficient;
  double delta_shell_coefficient;
};

GeometricPotential geometric_potential(const SurfaceConfig& surface);

/// Flux parameter phi = Phi/Phi_0 with Phi_0 = 2 pi / Q; the charge never
/// appears on its own. The electric potential is identically zero.
struct AbFieldConfig {
  double phi;
};

/// |Q A| at radius r: phi / (alpha r).
double vector_potential_magnitude(const AbFieldConfig& field, double alpha,
                                  double r);

/// Coefficient of delta(r)/r in Q B: -phi/alpha.
double field_delta_coefficient(const AbFieldConfig& field, double alpha);

}  // namespace conical_ab::geometry
