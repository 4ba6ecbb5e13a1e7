#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soliton/jet.hpp"
#include "soliton/profile_ode.hpp"
#include "soliton/profile_solution.hpp"
#include "soliton/spaces.hpp"

namespace soliton {

enum class AssemblyRule { QuadrantGlue, TwoBranch, SingleGraph, Lifted };

std::string to_string(AssemblyRule rule);

/// Quadrants of the Minkowski plane bounded by the light cone, in cyclic order:
/// 0: x > |y|, 1: y > |x|, 2: x < -|y|, 3: y < -|x|.
using QuadrantMask = std::array<bool, 4>;
inline constexpr QuadrantMask all_quadrants{true, true, true, true};

/// Parses "1234", "12", "234", ... (quadrant numbers 1..4).
QuadrantMask parse_quadrants(const std::string& text);

/// One exact coefficient relation between the two quadrant jets.
struct RelationCheck {
  std::size_t order = 0;
  std::string rule;
  Rational lhs;
  Rational rhs;
  bool pass = false;
};

/// Directional derivative of the glued u at a cone point, from both sides.
struct DerivativeCheck {
  int order = 0;
  double inside = 0;   ///< from the x^2 > y^2 side
  double outside = 0;  ///< from the y^2 > x^2 side
  double difference = 0;
  bool pass = false;
};

struct SmoothnessReport {
  std::size_t order = 0;
  std::vector<RelationCheck> exact;
  std::vector<DerivativeCheck> cross_cone;

  bool exact_pass() const;
  bool numeric_pass() const;
  bool pass() const { return exact_pass() && numeric_pass(); }
  /// One line per relation, "order rule lhs rhs PASS|FAIL".
  std::string table() const;
};

/// One graph of a catenoid. Near the neck the branch is kept in the inverse
/// form alpha(y); beyond `s_switch` it is an ordinary profile f(s).
struct CatenoidBranch {
  std::string name;         ///< "upper" (y > y0) or "lower"
  ProfileSolution inverse;  ///< alpha(y) between the neck and the switch, nodes increasing in y
  ProfileSolution graph;    ///< f(s) from s_switch away from the neck
  double s_switch = 0;
  int slope_sign = 1;       ///< sign of f' next to the neck
  int side = 1;             ///< +1 when the branch lies in s > s_neck

  double f(double s) const;
  double fprime(double s) const;
  /// End of the graph away from the neck.
  double s_far() const { return side > 0 ? graph.s_end() : graph.s_begin(); }
};

struct NeckData {
  double y0 = 0;
  double s_neck = 0;
  double alpha_second = 0;  ///< alpha''(y0) = eps h(s_neck)
};

struct SurfacePiece {
  std::string region;
  std::optional<ProfileSolution> solution;
  std::optional<TaylorJet> jet;
  std::string chart;
};

struct SolitonSurface {
  AssemblyRule rule = AssemblyRule::SingleGraph;
  std::string space;
  int epsilon = 1;
  EmbeddingKind embedding = EmbeddingKind::None;
  std::vector<SurfacePiece> pieces;
  std::optional<SmoothnessReport> smoothness;

  // Two-branch data.
  std::optional<NeckData> neck;
  std::vector<CatenoidBranch> branches;

  // Quadrant data.
  QuadrantMask quadrants{};
  double cone_value = 0;

  /// Height over the plane chart: radial graphs use |(x, y)|; boost gluing
  /// uses the quadrant rule. Throws OutOfDomain outside the assembled region.
  double height(double x, double y) const;
  bool covers(double x, double y) const;
  /// Bounding radius (revolution) or half-width (quadrants) of the data.
  double extent() const;
};

SmoothnessReport certify_boost_jets(const TaylorJet& jet1, const TaylorJet& jet2);

struct GlueOptions {
  QuadrantMask quadrants = all_quadrants;
  double fd_spacing = 1e-3;
  double fd_tolerance = 1e-6;
  int fd_max_order = 4;
};

/// u = f1(sqrt(x^2 - y^2)) on quadrants 0 and 2, a on the cone, and
/// f2(sqrt(y^2 - x^2)) on quadrants 1 and 3. Throws GlueMismatch when an exact
/// relation between the jets fails.
SolitonSurface glue_boost(const TaylorJet& jet1, const TaylorJet& jet2, const ProfileSolution& sol1,
                          const ProfileSolution& sol2, const GlueOptions& options = {});

/// Builds both quadrant solutions (order `jet_order`, f(0) = a) out to `s_end`
/// and glues them.
SolitonSurface glue_boost(double a = 0, std::size_t jet_order = 12, double s_end = 3.0,
                          const GlueOptions& options = {}, const IntegrationSettings& settings = {});

struct CatenoidOptions {
  double y0 = 0;
  /// The inverse form hands off to f(s) once |alpha'| reaches this value.
  double switch_slope = 0.5;
  double y_span = 1e3;
  /// Tighter than the profile defaults: the graphs start next to a vertical tangent.
  IntegrationSettings settings{.abs_tol = 1e-12, .rel_tol = 1e-12};
};

/// Two-ended soliton through the neck fiber s = s_neck. Both branches lie on
/// the side given by the sign of alpha''(y0) = eps h(s_neck) and reach at most
/// `extent` away from the neck; integration events may stop them earlier.
SolitonSurface make_catenoid(const SpaceDescriptor& space, int epsilon, double s_neck, double extent,
                             const CatenoidOptions& options = {});

/// t with alpha(t) = s on a piece where alpha is strictly monotone, by
/// bracketing on the nodes and Newton polishing to 1e-12.
double invert_monotone(const ProfileSolution& alpha, double s);

SolitonSurface single_graph(const SpaceDescriptor& space, int epsilon, ProfileSolution solution);

enum class MeshFormat { OBJ, CSV };

MeshFormat parse_mesh_format(const std::string& text);

struct MeshResolution {
  std::size_t angular = 64;
  std::size_t radial = 64;
};

/// OBJ ("v x y z" / "f i j k") or CSV ("s,f,fprime" for profiles, "x,y,u" for
/// planar assemblies) with 12 significant digits.
std::string export_mesh(const SolitonSurface& surface, MeshFormat format, const MeshResolution& resolution = {});

/// Node rows "s,f,fprime" of a profile.
std::string export_profile_csv(const ProfileSolution& solution);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Parses a header line plus numeric rows; throws InvalidArgument on malformed input.
CsvTable parse_csv(const std::string& text);

/// Rebuilds a profile from "s,f,fprime" rows using the reduced equation of (signs, profile).
ProfileSolution profile_from_csv(const CsvTable& table, const SignPair& signs, const CurvatureProfile& profile);

}  // namespace soliton
