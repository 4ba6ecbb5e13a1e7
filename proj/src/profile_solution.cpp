#include "soliton/profile_solution.hpp"

#include <algorithm>
#include <sstream>

#include "soliton/error.hpp"

namespace soliton {

std::string to_string(TerminationKind kind) {
  switch (kind) {
    case TerminationKind::ReachedEnd: return "ReachedEnd";
    case TerminationKind::DegeneracyEvent: return "DegeneracyEvent";
    case TerminationKind::BlowUpEvent: return "BlowUpEvent";
    case TerminationKind::PoleEvent: return "PoleEvent";
  }
  return "Unknown";
}

ProfileSolution ProfileSolution::from_nodes(std::vector<StateNode> nodes, const SecondOrderSystem& system,
                                            const std::function<int(double)>& causal, Termination termination,
                                            std::optional<TaylorJet> head) {
  if (nodes.size() < 2) throw Error(ErrorKind::TooFewNodes, "a profile solution needs at least two nodes");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i + 1].t > nodes[i].t)) {
      std::ostringstream os;
      os << "abscissas must increase strictly (node " << i + 1 << ")";
      throw Error(ErrorKind::InvalidArgument, os.str());
    }
  ProfileSolution sol;
  sol.causal_ = causal(nodes.front().v);
  for (const auto& n : nodes)
    if (causal(n.v) != sol.causal_)
      throw Error(ErrorKind::InvalidArgument, "causal character changes along the solution");
  hermite_pieces(system, nodes, sol.f_pieces_, sol.fp_pieces_);
  sol.nodes_ = std::move(nodes);
  sol.termination_ = termination;
  if (head) {
    sol.head_center_ = to_double(head->center());
    for (std::size_t k = 0; k <= head->order(); ++k) sol.head_coeffs_.push_back(to_double(head->coefficient(k)));
  }
  sol.head_ = std::move(head);
  return sol;
}

double ProfileSolution::domain_begin() const {
  if (head_) return std::min(to_double(head_->center()), s_begin());
  return s_begin();
}

std::size_t ProfileSolution::piece_index(double s) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s, [](double v, const StateNode& n) { return v < n.t; });
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  return std::min(i, f_pieces_.size() - 1);
}

double ProfileSolution::evaluate(double s, int deriv) const {
  if (head_ && s < s_begin() && s >= head_center_) {
    const double t = s - head_center_;
    double acc = 0;
    for (std::size_t k = head_coeffs_.size(); k-- > static_cast<std::size_t>(deriv);) {
      double falling = 1;
      for (int d = 0; d < deriv; ++d) falling *= static_cast<double>(k - d);
      acc = acc * t + falling * head_coeffs_[k];
    }
    return acc;
  }
  if (s < s_begin() || s > s_end()) {
    std::ostringstream os;
    os.precision(17);
    os << "s=" << s << " outside solution range [" << domain_begin() << ", " << s_end() << "]";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  const std::size_t i = piece_index(s);
  if (deriv == 0) return f_pieces_[i](s, 0);
  return fp_pieces_[i](s, deriv - 1);
}

}  // namespace soliton
