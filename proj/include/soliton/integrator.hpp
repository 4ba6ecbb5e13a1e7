#pragma once

#include <array>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

namespace soliton {

/// Scalar second-order equation x'' = accel(t, x, v), v = x'. `jerk` is the
/// total derivative of accel along solutions; the dense interpolant needs it.
struct SecondOrderSystem {
  std::function<double(double, double, double)> accel;
  std::function<double(double, double, double)> jerk;
};

struct StateNode {
  double t = 0;
  double x = 0;
  double v = 0;
};

/// Quintic Hermite piece on [t0, t1] matching value and two derivatives at
/// both ends. Coefficients are stored in the unit variable u = (t - t0)/H.
class HermiteQuintic {
 public:
  HermiteQuintic() = default;
  HermiteQuintic(double t0, double t1, std::array<double, 3> left, std::array<double, 3> right);

  double t0() const { return t0_; }
  double t1() const { return t1_; }
  /// Derivative of order `deriv` (0..3) at t.
  double operator()(double t, int deriv = 0) const;

 private:
  double t0_ = 0, t1_ = 0, width_ = 0;
  std::array<double, 6> e_{};
};

struct StepControl {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0;  ///< 0 selects a step automatically
  std::size_t max_steps = 2'000'000;
};

/// Terminal event: fires when g(t, x, v) becomes <= 0 after being positive.
struct EventSpec {
  int tag = 0;
  std::function<double(double, double, double)> g;
};

struct IntegrationOutcome {
  std::vector<StateNode> nodes;  ///< in integration order (decreasing t when going backward)
  std::optional<int> event_tag;
  double event_t = 0;
};

/// Dormand-Prince 5(4) with PI step-size control, integrating from `start` to
/// `t_end` (either direction). Events are localized by bisection on the
/// Hermite interpolant to `event_resolution` in t; the last node then sits on
/// the event. Throws Error(StepSizeUnderflow) naming the last valid abscissa.
IntegrationOutcome integrate_dopri5(const SecondOrderSystem& sys, StateNode start, double t_end,
                                    const StepControl& control, const std::vector<EventSpec>& events = {},
                                    double event_resolution = 1e-12);

/// Hermite pieces for x and v between consecutive nodes (nodes strictly increasing in t).
void hermite_pieces(const SecondOrderSystem& sys, const std::vector<StateNode>& nodes,
                    std::vector<HermiteQuintic>& x_pieces, std::vector<HermiteQuintic>& v_pieces);

}  // namespace soliton
