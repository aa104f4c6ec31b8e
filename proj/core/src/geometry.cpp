#include "conical_ab/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "conical_ab/errors.hpp"

namespace conical_ab::geometry {

namespace {

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw DomainError("cone parameter alpha must be positive, got " +
                      std::to_string(alpha));
  }
}

}  // namespace

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Cone:
      return "cone";
    case SurfaceKind::Plane:
      return "plane";
    case SurfaceKind::AntiCone:
      return "anti-cone";
  }
  return "unknown";
}

SurfaceConfig make_surface(double alpha, double mass) {
  require_positive_alpha(alpha);
  if (!(mass > 0.0)) {
    throw DomainError("mass must be positive, got " + std::to_string(mass));
  }
  return SurfaceConfig{alpha, mass};
}

SurfaceKind classify_surface(double alpha) {
  require_positive_alpha(alpha);
  if (alpha < 1.0) return SurfaceKind::Cone;
  if (alpha == 1.0) return SurfaceKind::Plane;
  return SurfaceKind::AntiCone;
}

double mean_curvature(const SurfaceConfig& surface, double r) {
  require_positive_alpha(surface.alpha);
  if (!(r > 0.0)) {
    throw DomainError("mean curvature requires r > 0, got " +
                      std::to_string(r));
  }
  const double a = surface.alpha;
  return std::sqrt(std::abs(1.0 - a * a)) / (2.0 * a * r);
}

double gaussian_curvature_coefficient(double alpha) {
  require_positive_alpha(alpha);
  return (1.0 - alpha) / alpha;
}

double curvature_distribution_coefficient(double alpha) {
  return 2.0 * std::numbers::pi * gaussian_curvature_coefficient(alpha);
}

CurvatureReport curvature_report(double alpha) {
  require_positive_alpha(alpha);
  return CurvatureReport{
      gaussian_curvature_coefficient(alpha),
      std::sqrt(std::abs(1.0 - alpha * alpha)) / (2.0 * alpha),
      curvature_distribution_coefficient(alpha),
  };
}

GeometricPotential geometric_potential(const SurfaceConfig& surface) {
  const double a = surface.alpha;
  const double m = surface.mass;
  if (!(m > 0.0)) throw DomainError("mass must be positive");
  switch (classify_surface(a)) {
    case SurfaceKind::Plane:
      return {0.0, 0.0};
    case SurfaceKind::Cone:
      return {-(1.0 - a * a) / (8.0 * m * a * a),
              (1.0 - a) / (2.0 * m * a)};
    case SurfaceKind::AntiCone:
      // The saddle-like surface flips the sign of the 1/r^2 term.
      return {+(1.0 - a * a) / (8.0 * m * a * a),
              (1.0 - a) / (2.0 * m * a)};
  }
  return {0.0, 0.0};
}

double vector_potential_magnitude(const AbFieldConfig& field, double alpha,
                                  double r) {
  require_positive_alpha(alpha);
  if (!(r > 0.0)) throw DomainError("vector potential requires r > 0");
  return std::abs(field.phi) / (alpha * r);
}

double field_delta_coefficient(const AbFieldConfig& field, double alpha) {
  require_positive_alpha(alpha);
  return -field.phi / alpha;
}

}  // namespace conical_ab::geometry
