#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "soliton/integrator.hpp"
#include "soliton/jet.hpp"

namespace soliton {

enum class TerminationKind { ReachedEnd, DegeneracyEvent, BlowUpEvent, PoleEvent };

std::string to_string(TerminationKind kind);

struct Termination {
  TerminationKind kind = TerminationKind::ReachedEnd;
  double s = 0;  ///< abscissa where integration stopped
};

/// Dense solution of a scalar second-order equation: strictly increasing
/// nodes (s, f, f') with quintic Hermite pieces for f and f'. An optional exact
/// jet covers the gap between a singular center and the first node.
class ProfileSolution {
 public:
  ProfileSolution() = default;

  /// Builds the dense interpolant from nodes. `causal` maps f' at a node to
  /// its causal character; all nodes must agree.
  static ProfileSolution from_nodes(std::vector<StateNode> nodes, const SecondOrderSystem& system,
                                    const std::function<int(double)>& causal, Termination termination = {},
                                    std::optional<TaylorJet> head = std::nullopt);

  const std::vector<StateNode>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  double s_begin() const { return nodes_.front().t; }
  double s_end() const { return nodes_.back().t; }
  int causal_character() const { return causal_; }
  const Termination& termination() const { return termination_; }
  const std::optional<TaylorJet>& head() const { return head_; }

  /// Lowest abscissa where evaluation is defined (the jet center when present).
  double domain_begin() const;
  bool covers(double s) const { return s >= domain_begin() && s <= s_end(); }

  double f(double s) const { return evaluate(s, 0); }
  double fprime(double s) const { return evaluate(s, 1); }
  /// Analytic second derivative of the f' interpolant.
  double fsecond(double s) const { return evaluate(s, 2); }
  /// derivative of order 0..3 of f.
  double evaluate(double s, int deriv) const;

 private:
  std::size_t piece_index(double s) const;

  std::vector<StateNode> nodes_;
  std::vector<HermiteQuintic> f_pieces_;
  std::vector<HermiteQuintic> fp_pieces_;
  int causal_ = 0;
  Termination termination_;
  std::optional<TaylorJet> head_;
  std::vector<double> head_coeffs_;
  double head_center_ = 0;
};

}  // namespace soliton
