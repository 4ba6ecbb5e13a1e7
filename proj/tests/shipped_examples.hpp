#pragma once
// The example solutions every oracle is exercised on.

#include <string>
#include <vector>

#include "soliton/profile_ode.hpp"
#include "soliton/spaces.hpp"

namespace soliton::testing {

struct ShippedExample {
  std::string label;
  SpaceDescriptor space;
  int epsilon;
  ProfileSolution solution;

  SignPair signs() const { return space.signs(epsilon); }
};

inline ProfileSolution from_pole(const SpaceDescriptor& space, int eps, double s_end) {
  return integrate(SolitonProblem::singular(space.signs(eps), space.profile), s_end);
}

inline std::vector<ShippedExample> shipped_examples() {
  std::vector<ShippedExample> out;
  for (int n : {2, 3}) {
    const auto e = euclidean_rotational(n);
    out.push_back({e.name, e, 1, from_pole(e, 1, 5.0)});
    const auto m = minkowski_rotational(n);
    out.push_back({m.name, m, -1, from_pole(m, -1, 8.0)});
  }
  const auto ds = desitter_rotational(2);
  out.push_back({ds.name, ds, 1, integrate_range({ds.signs(1), ds.profile, 0.0, 0.0, 0.0, false}, -20.0, 20.0)});
  const auto hy = hyperbolic_rotational(2);
  out.push_back({hy.name, hy, 1, from_pole(hy, 1, 20.0)});
  for (const auto& b : {boost_omega1(), boost_omega2()}) out.push_back({b.name, b, 1, from_pole(b, 1, 10.0)});
  return out;
}

/// Same nodes with f' at node `index` shifted by `delta`.
inline ProfileSolution perturb_slope(const ShippedExample& ex, std::size_t index, double delta) {
  std::vector<StateNode> nodes = ex.solution.nodes();
  nodes.at(index).v += delta;
  const SignPair signs = ex.signs();
  return ProfileSolution::from_nodes(
      std::move(nodes), soliton_system(signs, ex.space.profile),
      [signs](double w) { return causal_character(signs, w); }, ex.solution.termination(), ex.solution.head());
}

/// A node near the middle of the range whose causal character survives a
/// slope shift of `delta` with margin (tails of near-lightlike solutions do not).
inline std::size_t interior_node(const ShippedExample& ex, double delta) {
  const auto& nodes = ex.solution.nodes();
  const SignPair signs = ex.signs();
  const double mid = 0.5 * (ex.solution.s_begin() + ex.solution.s_end());
  std::size_t best = nodes.size() / 2;
  double best_dist = 1e300;
  for (std::size_t i = 8; i + 8 < nodes.size(); ++i) {
    const double w = nodes[i].v + delta;
    if (std::abs(signs.epsilon + signs.epsilon_tilde * w * w) < 1e-2) continue;
    if (std::abs(nodes[i].t - mid) < best_dist) {
      best_dist = std::abs(nodes[i].t - mid);
      best = i;
    }
  }
  return best;
}

}  // namespace soliton::testing
