#include "soliton/profile_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "soliton/error.hpp"

namespace soliton {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum EventTag : int { kDegeneracy = 1, kBlowUp = 2, kDomainEdge = 3, kStopReached = 4 };

// h(s), or NaN outside the evaluable set so the stepper rejects the step.
double guarded(const CurvatureProfile& profile, double s, bool derivative = false) {
  if (!profile.domain().contains_closed(s)) return kNaN;
  try {
    return derivative ? profile.derivative(s) : profile.value(s);
  } catch (const Error&) {
    return kNaN;
  }
}

Termination termination_for(const IntegrationOutcome& out, double fallback_s, TerminationKind fallback) {
  if (!out.event_tag) return {fallback, fallback_s};
  switch (*out.event_tag) {
    case kDegeneracy: return {TerminationKind::DegeneracyEvent, out.event_t};
    case kBlowUp: return {TerminationKind::BlowUpEvent, out.event_t};
    case kDomainEdge: return {TerminationKind::PoleEvent, out.event_t};
    default: return {TerminationKind::ReachedEnd, out.event_t};
  }
}

// adaptive Simpson on [a, b] with known endpoint/midpoint values
template <typename F>
double simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol) return left + right + delta / 15;
  return simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  if (a == b) return 0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

int causal_character(const SignPair& signs, double fprime) {
  const double q = signs.epsilon + signs.epsilon_tilde * fprime * fprime;
  return q > 0 ? 1 : (q < 0 ? -1 : 0);
}

FirstOrderField reduce_to_first_order(const SignPair& signs, const CurvatureProfile& profile) {
  return FirstOrderField{signs, profile};
}

SecondOrderSystem soliton_system(const SignPair& signs, const CurvatureProfile& profile) {
  SecondOrderSystem sys;
  sys.accel = [signs, profile](double s, double, double w) { return rhs(signs, guarded(profile, s), w); };
  sys.jerk = [signs, profile](double s, double, double w) {
    const double h = guarded(profile, s), dh = guarded(profile, s, true);
    const double a = signs.epsilon_tilde + signs.epsilon * w * w;
    const double b = 1.0 - w * h;
    const double wp = a * b;
    return 2.0 * signs.epsilon * w * wp * b + a * (-wp * h - w * dh);
  };
  return sys;
}

SecondOrderSystem branch_system(const SignPair& signs, const CurvatureProfile& profile) {
  SecondOrderSystem sys;
  sys.accel = [signs, profile](double, double alpha, double v) {
    return (signs.epsilon + signs.epsilon_tilde * v * v) * (guarded(profile, alpha) - v);
  };
  sys.jerk = [signs, profile](double, double alpha, double v) {
    const double h = guarded(profile, alpha), dh = guarded(profile, alpha, true);
    const double a = signs.epsilon + signs.epsilon_tilde * v * v;
    const double acc = a * (h - v);
    return 2.0 * signs.epsilon_tilde * v * acc * (h - v) + a * (dh * v - acc);
  };
  return sys;
}

SolitonProblem SolitonProblem::singular(const SignPair& signs, const CurvatureProfile& profile, double value) {
  const auto pole = profile.pole();
  if (!pole) throw Error(ErrorKind::InvalidArgument, "profile has no pole for a singular start");
  return SolitonProblem{signs, profile, to_double(pole->location), value, 0.0, true};
}

void SolitonProblem::validate(double margin) const {
  if (!profile.domain().contains_closed(s0)) throw Error(ErrorKind::InvalidArgument, "s0 outside the profile domain");
  if (singular_start) {
    const auto pole = profile.pole();
    if (!pole || to_double(pole->location) != s0)
      throw Error(ErrorKind::InvalidArgument, "singular start must sit on the pole of h");
    if (f1 != 0) throw Error(ErrorKind::InvalidArgument, "singular start forces f'(s0) = 0");
  } else if (!profile.domain().contains(s0)) {
    throw Error(ErrorKind::InvalidArgument, "regular start must be interior to the profile domain");
  }
  if (std::abs(signs.epsilon + signs.epsilon_tilde * f1 * f1) < margin) {
    std::ostringstream os;
    os << "eps + eps~ f1^2 vanishes at s0=" << s0;
    throw Error(ErrorKind::DegenerateStart, os.str());
  }
}

double handoff_offset(const TaylorJet& jet, double abs_tol, double scale) {
  double delta = 1e-2 * scale;
  const std::size_t m = jet.order();
  for (const std::size_t k : {m, m - 1}) {
    const double a = std::abs(to_double(jet.coefficient(k)));
    if (a > 0) delta = std::min(delta, std::pow(abs_tol / a, 1.0 / static_cast<double>(k)));
  }
  return delta;
}

ProfileSolution integrate(const SolitonProblem& problem, double s_end, const IntegrationSettings& settings) {
  problem.validate(settings.degeneracy_margin);
  const auto& profile = problem.profile;
  const SignPair signs = problem.signs;
  if (s_end == problem.s0) throw Error(ErrorKind::InvalidArgument, "empty integration range");
  const double dir = s_end > problem.s0 ? 1.0 : -1.0;
  const SecondOrderSystem sys = soliton_system(signs, profile);

  StateNode start{problem.s0, problem.f0, problem.f1};
  std::optional<TaylorJet> head;
  if (problem.singular_start) {
    if (dir < 0) throw Error(ErrorKind::InvalidArgument, "singular starts integrate forward from the pole");
    const auto pole = profile.pole();
    const auto local = profile.local_series(pole->location, settings.jet_order);
    if (!local) throw Error(ErrorKind::JetFailure, "no exact local data for h at the pole");
    try {
      head = taylor_jet(signs, *local, Rational(problem.f0), Rational(0), settings.jet_order);
    } catch (const Error& e) {
      throw Error(ErrorKind::JetFailure, e.what());
    }
    const double delta = handoff_offset(*head, settings.abs_tol, std::min(1.0, std::abs(s_end - problem.s0)));
    const double s = problem.s0 + delta;
    start = {s, head->evaluate<double>(s, 0), head->evaluate<double>(s, 1)};
  }

  double target = s_end;
  bool stops_at_pole = false;
  if (const auto pole = profile.pole()) {
    const double p = to_double(pole->location);
    if ((p - start.t) * dir > 0 && (s_end - p) * dir >= 0) {
      target = p - dir * settings.pole_margin * std::max(1.0, std::abs(p));
      stops_at_pole = true;
    }
  }
  if (!profile.domain().contains_closed(target)) {
    std::ostringstream os;
    os << "s_end=" << s_end << " outside the profile domain";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }

  std::vector<EventSpec> events;
  const double margin = settings.degeneracy_margin;
  events.push_back({kDegeneracy, [signs, margin](double, double, double w) {
                      return std::abs(signs.epsilon + signs.epsilon_tilde * w * w) - margin;
                    }});
  const bool protected_by_barrier = signs.has_barriers() && std::abs(problem.f1) < 1.0;
  if (!protected_by_barrier) {
    const double cap = settings.blowup_cap;
    events.push_back({kBlowUp, [cap](double, double, double w) { return cap - std::abs(w); }});
  }

  StepControl control;
  control.abs_tol = settings.abs_tol;
  control.rel_tol = settings.rel_tol;
  control.max_step = settings.max_step;
  IntegrationOutcome out = integrate_dopri5(sys, start, target, control, events, settings.event_resolution);
  if (dir < 0) std::reverse(out.nodes.begin(), out.nodes.end());
  const Termination term = termination_for(out, target, stops_at_pole ? TerminationKind::PoleEvent : TerminationKind::ReachedEnd);
  return ProfileSolution::from_nodes(
      std::move(out.nodes), sys, [signs](double w) { return causal_character(signs, w); }, term, std::move(head));
}

ProfileSolution integrate_range(const SolitonProblem& problem, double s_begin, double s_end,
                                const IntegrationSettings& settings) {
  if (!(s_begin < s_end)) throw Error(ErrorKind::InvalidArgument, "range must satisfy s_begin < s_end");
  if (problem.s0 < s_begin || problem.s0 > s_end) throw Error(ErrorKind::InvalidArgument, "s0 outside range");
  if (problem.s0 == s_begin) return integrate(problem, s_end, settings);
  if (problem.s0 == s_end) return integrate(problem, s_begin, settings);

  const ProfileSolution left = integrate(problem, s_begin, settings);
  const ProfileSolution right = integrate(problem, s_end, settings);
  std::vector<StateNode> nodes = left.nodes();
  nodes.insert(nodes.end(), right.nodes().begin() + 1, right.nodes().end());
  Termination term = right.termination();
  if (left.termination().kind != TerminationKind::ReachedEnd) term = left.termination();
  const SignPair signs = problem.signs;
  return ProfileSolution::from_nodes(std::move(nodes), soliton_system(signs, problem.profile),
                                     [signs](double w) { return causal_character(signs, w); }, term);
}

ProfileSolution branch_equation_integrate(const SignPair& signs, const CurvatureProfile& profile, double y0,
                                          double s_neck, double y_end, const IntegrationSettings& settings,
                                          std::optional<double> s_stop, std::optional<double> slope_stop) {
  if (!profile.domain().contains(s_neck)) throw Error(ErrorKind::InvalidArgument, "neck outside the profile domain");
  if (profile.value(s_neck) == 0) throw Error(ErrorKind::NeckDegenerate, "h vanishes at the neck");
  if (y_end == y0) throw Error(ErrorKind::InvalidArgument, "empty branch range");
  const double dir = y_end > y0 ? 1.0 : -1.0;
  const SecondOrderSystem sys = branch_system(signs, profile);

  std::vector<EventSpec> events;
  const double margin = settings.degeneracy_margin;
  events.push_back({kDegeneracy, [signs, margin](double, double, double v) {
                      return std::abs(signs.epsilon * v * v + signs.epsilon_tilde) - margin;
                    }});
  const double cap = settings.blowup_cap;
  events.push_back({kBlowUp, [cap](double, double, double v) { return cap - std::abs(v); }});
  const Interval dom = profile.domain();
  double edge_margin = settings.pole_margin;
  events.push_back({kDomainEdge, [dom, edge_margin](double, double a, double) {
                      return std::min(a - dom.lo, dom.hi - a) - edge_margin * std::max(1.0, std::abs(a));
                    }});
  if (s_stop) {
    const double stop = *s_stop;
    const double side = stop > s_neck ? 1.0 : -1.0;
    events.push_back({kStopReached, [stop, side](double, double a, double) { return (stop - a) * side; }});
  }
  if (slope_stop) {
    const double limit = *slope_stop;
    events.push_back({kStopReached, [limit](double, double, double v) { return limit - std::abs(v); }});
  }

  StepControl control;
  control.abs_tol = settings.abs_tol;
  control.rel_tol = settings.rel_tol;
  control.max_step = settings.max_step;
  IntegrationOutcome out = integrate_dopri5(sys, {y0, s_neck, 0.0}, y_end, control, events, settings.event_resolution);
  if (dir < 0) std::reverse(out.nodes.begin(), out.nodes.end());
  const Termination term = termination_for(out, y_end, TerminationKind::ReachedEnd);
  return ProfileSolution::from_nodes(
      std::move(out.nodes), sys,
      [signs](double v) {
        const double q = signs.epsilon * v * v + signs.epsilon_tilde;
        return q > 0 ? 1 : (q < 0 ? -1 : 0);
      },
      term);
}

Reparametrization::Reparametrization(int eps_tilde, std::function<double(double)> gradnorm2, double t_begin,
                                     double t_end, double v_begin, double abs_tol)
    : eps_tilde_(eps_tilde), gradnorm2_(std::move(gradnorm2)), abs_tol_(abs_tol) {
  if (!(t_end > t_begin)) throw Error(ErrorKind::InvalidArgument, "reparametrization interval is empty");
  constexpr int kScan = 1024;
  for (int i = 0; i <= kScan; ++i) integrand(t_begin + (t_end - t_begin) * i / kScan);  // lightlike scan
  constexpr int kKnots = 64;
  knots_.resize(kKnots + 1);
  cumulative_.resize(kKnots + 1);
  knots_[0] = t_begin;
  cumulative_[0] = v_begin;
  const auto f = [this](double t) { return integrand(t); };
  for (int i = 1; i <= kKnots; ++i) {
    knots_[i] = i == kKnots ? t_end : t_begin + (t_end - t_begin) * i / kKnots;
    cumulative_[i] = cumulative_[i - 1] + adaptive_simpson(f, knots_[i - 1], knots_[i], abs_tol_ / kKnots);
  }
}

double Reparametrization::integrand(double t) const {
  const double q = eps_tilde_ * gradnorm2_(t);
  if (!(q > 0)) {
    std::ostringstream os;
    os << "eps~ |grad pi|^2 = " << q << " at t=" << t;
    throw Error(ErrorKind::LightlikeGradient, os.str());
  }
  return 1.0 / std::sqrt(q);
}

double Reparametrization::operator()(double t) const {
  if (t < knots_.front() || t > knots_.back()) throw Error(ErrorKind::OutOfDomain, "t outside reparametrization interval");
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - knots_.begin()) - 1, knots_.size() - 2);
  const auto f = [this](double x) { return integrand(x); };
  return cumulative_[i] + adaptive_simpson(f, knots_[i], t, abs_tol_ / static_cast<double>(knots_.size()));
}

double Reparametrization::derivative(double t) const { return integrand(t); }

double Reparametrization::inverse(double s) const {
  double lo = knots_.front(), hi = knots_.back();
  if (s < cumulative_.front() || s > cumulative_.back()) throw Error(ErrorKind::OutOfDomain, "s outside reparametrized range");
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()) - 1, knots_.size() - 2);
  lo = knots_[i];
  hi = knots_[i + 1];
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double r = (*this)(t) - s;
    if (r > 0) hi = t; else lo = t;
    double next = t - r / derivative(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) return next;
    t = next;
  }
  return t;
}

Reparametrization normalize_projection(int eps_tilde, std::function<double(double)> gradnorm2, double t_begin,
                                       double t_end, double v_begin, double abs_tol) {
  return Reparametrization(eps_tilde, std::move(gradnorm2), t_begin, t_end, v_begin, abs_tol);
}

double normalized_fiber_curvature(int eps_tilde, double raw_divergence, double gradnorm2, double gradnorm2_derivative) {
  const double q = eps_tilde * gradnorm2;
  if (!(q > 0)) throw Error(ErrorKind::LightlikeGradient, "gradient is lightlike");
  return (raw_divergence - 0.5 * gradnorm2_derivative) / std::sqrt(q);
}

}  // namespace soliton
