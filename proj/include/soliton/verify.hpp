#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soliton/integrator.hpp"
#include "soliton/profile.hpp"
#include "soliton/profile_solution.hpp"
#include "soliton/signs.hpp"
#include "soliton/spaces.hpp"

namespace soliton {

struct ResidualReport {
  double max_abs = 0;
  double rms = 0;
  std::size_t sample_count = 0;
  std::optional<double> grid_spacing;
  std::vector<double> location_of_max;
  std::size_t skipped = 0;  ///< grid points excluded near singular sets

  /// "key=value" lines: max_abs, rms, n, h_grid (when set), argmax, skipped.
  std::string serialize() const;
  static ResidualReport parse(const std::string& text);
};

/// f'' from fourth-order central differences of the dense f' against the
/// system's right-hand side, at Chebyshev points inside every node interval.
ResidualReport ode_residual(const ProfileSolution& solution, const SecondOrderSystem& system,
                            std::size_t samples = 1000);
ResidualReport ode_residual(const ProfileSolution& solution, const SignPair& signs, const CurvatureProfile& profile,
                            std::size_t samples = 1000);

/// eps~ (f'/W)' - 1/W + f' h / W with W = sqrt(eps'(eps + eps~ f'^2)); zero
/// exactly for solutions of the reduced equation.
ResidualReport h_perturbed_residual(const ProfileSolution& solution, const SignPair& signs,
                                    const CurvatureProfile& profile, std::size_t samples = 1000);

enum class ChartKind {
  EuclideanPlane,  ///< metric dx^2 + dy^2
  BoostPlane,      ///< metric dx^2 - dy^2
  Line,            ///< metric dx^2, y unused
};

struct GridChart {
  ChartKind kind = ChartKind::EuclideanPlane;
  int epsilon = 1;  ///< sign of dt^2
  /// true when (x, y) lies within `band` of the chart's singular set.
  std::function<bool(double, double, double)> near_singular;

  static GridChart euclidean(int epsilon = 1);  ///< singular set: the rotation axis at the origin
  static GridChart boost(int epsilon = 1);      ///< singular set: the light cone |x| = |y|
  static GridChart line(int epsilon = 1);
};

struct GridSpec {
  double x_begin = 0, x_end = 1;
  double y_begin = 0, y_end = 1;
  double spacing = 1e-2;
};

/// div(grad u / W) - 1/W by second-order central differences over interior
/// grid points, skipping a 3*spacing band around singular sets.
ResidualReport pde_residual_grid(const GridChart& chart, const std::function<double(double, double)>& u,
                                 const GridSpec& grid, unsigned threads = 1);

/// <nu, H> of the revolution surface (s cos t, s sin t, f(s)) in R^3 with
/// metric dx^2 + dy^2 + eps dz^2, from its first and second fundamental forms.
double revolution_mean_curvature(double s, double fprime, double fsecond, int epsilon);
/// Same, reading f', f'' analytically from the dense output. `space` must be
/// euclidean:n=2 or minkowski:n=2.
double revolution_mean_curvature(const ProfileSolution& solution, const SpaceDescriptor& space, int epsilon, double s);

/// eps/W for a graph with slope f' over a Riemannian base: the value a soliton's
/// <nu, H> must take.
double soliton_mean_curvature(int epsilon, double fprime);

/// eps * div(grad u / W) for a radial u on the plane, by central differences of
/// s f'(s)/W; a second route to <nu, H> that holds for any radial graph.
double radial_divergence_curvature(const std::function<double(double)>& fprime, int epsilon, double s,
                                   double step = 1e-4);

}  // namespace soliton
