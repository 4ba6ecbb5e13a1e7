#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "soliton/profile.hpp"
#include "soliton/profile_solution.hpp"
#include "soliton/signs.hpp"

namespace soliton {

enum class SpaceFamily {
  EuclideanRotational,
  MinkowskiRotational,
  DeSitterRotational,
  HyperbolicRotational,
  BoostOmega1,
  BoostOmega2,
};

/// How a 3-dimensional case sits in a flat model space, if it does.
enum class EmbeddingKind { None, RevolutionEuclidean, RevolutionMinkowski, BoostQuadrant };

/// Quotient data before normalization: pi = tau with |grad tau|^2 != +-1.
struct RawQuotientData {
  Interval raw_domain;
  std::function<double(double)> gradnorm2;
  std::function<double(double)> gradnorm2_derivative;
  std::function<double(double)> divergence;  ///< div(grad tau)
  /// raw tau at normalized abscissa s (sinh / cosh); used only for anchoring.
  std::function<double(double)> tau_of_s;
};

struct SpaceDescriptor {
  std::string name;
  SpaceFamily family;
  int dim_n = 2;
  int epsilon_tilde = 1;
  int default_epsilon = 1;  ///< canonical vertical sign for this space
  CurvatureProfile profile;
  std::string h_formula;
  std::optional<RawQuotientData> raw;
  EmbeddingKind embedding = EmbeddingKind::None;

  const Interval& quotient_interval() const { return profile.domain(); }
  SignPair signs(int epsilon) const { return {epsilon, epsilon_tilde}; }
  SignPair default_signs() const { return signs(default_epsilon); }
};

SpaceDescriptor euclidean_rotational(int n);
SpaceDescriptor minkowski_rotational(int n);
SpaceDescriptor desitter_rotational(int n);
SpaceDescriptor hyperbolic_rotational(int n);
SpaceDescriptor boost_omega1();
SpaceDescriptor boost_omega2();

/// Built-in spaces: the four rotational families for n = 2, 3 and both boost quadrants.
std::vector<SpaceDescriptor> catalog();

/// Resolves ids such as "euclidean:n=3", "desitter:n=2", "boost:omega2".
SpaceDescriptor lookup_space(std::string_view id);

/// div(grad tau) before normalization: -n tau on de Sitter, n tau on hyperbolic space.
double fiber_mean_curvature_raw(const SpaceDescriptor& space, double tau);

// ---------------------------------------------------------------------------
// Lifts to total spaces

struct LiftDescriptor {
  enum class Kind { ProductExtend, HopfH13, GenericHarmonic };
  Kind kind = Kind::ProductExtend;
  std::vector<int> extra_factor_signs;  ///< ProductExtend: metric signs of the extra factor P
  int fiber_dimension = 0;              ///< GenericHarmonic
  bool harmonic = false;                ///< GenericHarmonic: H_fib == 0
  /// GenericHarmonic: projection from total-space coordinates to base coordinates.
  std::function<std::vector<double>(std::span<const double>)> projection;

  static LiftDescriptor product(std::vector<int> extra_signs) {
    LiftDescriptor d;
    d.extra_factor_signs = std::move(extra_signs);
    return d;
  }
  static LiftDescriptor hopf() {
    LiftDescriptor d;
    d.kind = Kind::HopfH13;
    return d;
  }
};

/// Function on the base manifold, in chart coordinates.
using BaseFunction = std::function<double(std::span<const double>)>;

/// Evaluable u on the total space. Point layout: ProductExtend takes the P
/// coordinates followed by the base coordinates; HopfH13 takes
/// (Re z1, Im z1, Re z2, Im z2); GenericHarmonic whatever its projection reads.
class LiftedFunction {
 public:
  LiftedFunction(std::size_t total_dim, std::function<double(std::span<const double>)> eval)
      : total_dim_(total_dim), eval_(std::move(eval)) {}

  std::size_t total_dimension() const { return total_dim_; }
  double operator()(std::span<const double> point) const;

 private:
  std::size_t total_dim_;
  std::function<double(std::span<const double>)> eval_;
};

/// The Hopf-type map H^3_1 -> H^2 in the Weierstrass model,
/// pi(z1, z2) = (2 z1 conj(z2), |z1|^2 + |z2|^2) as a point of R^3.
Eigen::Vector3d hopf_projection(std::complex<double> z1, std::complex<double> z2);

/// `base` is a function on a `base_dim`-dimensional chart.
LiftedFunction lift(const LiftDescriptor& descriptor, BaseFunction base, std::size_t base_dim);
/// One-dimensional base given by a profile solution; for HopfH13 the profile
/// is read in the normalized hyperbolic radial coordinate.
LiftedFunction lift(const LiftDescriptor& descriptor, const ProfileSolution& base);

}  // namespace soliton
