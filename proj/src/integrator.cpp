#include "soliton/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "soliton/error.hpp"

namespace soliton {

HermiteQuintic::HermiteQuintic(double t0, double t1, std::array<double, 3> left, std::array<double, 3> right)
    : t0_(t0), t1_(t1), width_(t1 - t0) {
  const double h = width_;
  const double y0 = left[0], d0 = left[1] * h, s0 = left[2] * h * h;
  const double y1 = right[0], d1 = right[1] * h, s1 = right[2] * h * h;
  const double delta = y1 - y0 - d0 - 0.5 * s0;
  const double delta1 = d1 - d0 - s0;
  const double delta2 = s1 - s0;
  e_ = {y0,
        d0,
        0.5 * s0,
        10 * delta - 4 * delta1 + 0.5 * delta2,
        -15 * delta + 7 * delta1 - delta2,
        6 * delta - 3 * delta1 + 0.5 * delta2};
}

double HermiteQuintic::operator()(double t, int deriv) const {
  const double u = (t - t0_) / width_;
  double acc = 0;
  switch (deriv) {
    case 0:
      for (int k = 5; k >= 0; --k) acc = acc * u + e_[k];
      return acc;
    case 1:
      for (int k = 5; k >= 1; --k) acc = acc * u + k * e_[k];
      return acc / width_;
    case 2:
      for (int k = 5; k >= 2; --k) acc = acc * u + k * (k - 1) * e_[k];
      return acc / (width_ * width_);
    case 3:
      for (int k = 5; k >= 3; --k) acc = acc * u + k * (k - 1) * (k - 2) * e_[k];
      return acc / (width_ * width_ * width_);
    default:
      return 0.0;
  }
}

void hermite_pieces(const SecondOrderSystem& sys, const std::vector<StateNode>& nodes,
                    std::vector<HermiteQuintic>& x_pieces, std::vector<HermiteQuintic>& v_pieces) {
  x_pieces.clear();
  v_pieces.clear();
  if (nodes.size() < 2) return;
  x_pieces.reserve(nodes.size() - 1);
  v_pieces.reserve(nodes.size() - 1);
  std::vector<double> a(nodes.size()), j(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    a[i] = sys.accel(nodes[i].t, nodes[i].x, nodes[i].v);
    j[i] = sys.jerk(nodes[i].t, nodes[i].x, nodes[i].v);
  }
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto& l = nodes[i];
    const auto& r = nodes[i + 1];
    x_pieces.emplace_back(l.t, r.t, std::array{l.x, l.v, a[i]}, std::array{r.x, r.v, a[i + 1]});
    v_pieces.emplace_back(l.t, r.t, std::array{l.v, a[i], j[i]}, std::array{r.v, a[i + 1], j[i + 1]});
  }
}

namespace {

using State = std::array<double, 2>;

struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                          a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

State field(const SecondOrderSystem& sys, double t, const State& y) { return {y[1], sys.accel(t, y[0], y[1])}; }

bool finite(const State& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

double error_norm(const State& err, const State& y0, const State& y1, const StepControl& c) {
  double sum = 0;
  for (int i = 0; i < 2; ++i) {
    const double sc = c.abs_tol + c.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    sum += (err[i] / sc) * (err[i] / sc);
  }
  return std::sqrt(sum / 2);
}

double initial_step(const SecondOrderSystem& sys, double t, const State& y, const State& k1, double dir,
                    const StepControl& c, double span) {
  // Hairer-Norsett-Wanner starting step heuristic.
  double dnf = 0, dny = 0;
  for (int i = 0; i < 2; ++i) {
    const double sk = c.abs_tol + c.rel_tol * std::abs(y[i]);
    dnf += (k1[i] / sk) * (k1[i] / sk);
    dny += (y[i] / sk) * (y[i] / sk);
  }
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * std::sqrt(dny / dnf);
  h = std::min({h, c.max_step, span});
  State y1{y[0] + dir * h * k1[0], y[1] + dir * h * k1[1]};
  const State k2 = field(sys, t + dir * h, y1);
  double der2 = 0;
  for (int i = 0; i < 2; ++i) {
    const double sk = c.abs_tol + c.rel_tol * std::abs(y[i]);
    der2 += ((k2[i] - k1[i]) / sk) * ((k2[i] - k1[i]) / sk);
  }
  if (!std::isfinite(der2)) return std::max(1e-6, h * 1e-3);
  der2 = std::sqrt(der2) / h;
  const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 1.0 / 5);
  return std::min({100 * h, h1, c.max_step, span});
}

}  // namespace

IntegrationOutcome integrate_dopri5(const SecondOrderSystem& sys, StateNode start, double t_end,
                                    const StepControl& control, const std::vector<EventSpec>& events,
                                    double event_resolution) {
  using D = Dopri5;
  IntegrationOutcome out;
  out.nodes.push_back(start);
  const double span = std::abs(t_end - start.t);
  if (span == 0) return out;
  const double dir = t_end > start.t ? 1.0 : -1.0;

  double t = start.t;
  State y{start.x, start.v};
  State k1 = field(sys, t, y);
  double h = control.initial_step > 0 ? control.initial_step : initial_step(sys, t, y, k1, dir, control, span);
  double facold = 1e-4;
  constexpr double safe = 0.9, beta = 0.04, facc1 = 1.0 / 0.2, facc2 = 1.0 / 10.0;
  const double expo1 = 0.2 - beta * 0.75;
  bool last_rejected = false;

  std::vector<double> g_prev(events.size());
  for (std::size_t e = 0; e < events.size(); ++e) g_prev[e] = events[e].g(t, y[0], y[1]);

  for (std::size_t step = 0; step < control.max_steps; ++step) {
    const double remaining = std::abs(t_end - t);
    if (remaining <= 0) return out;
    h = std::min(h, control.max_step);
    bool final_step = false;
    if (h >= remaining * (1 - 1e-12)) {
      h = remaining;
      final_step = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os.precision(17);
      os << "step size underflow; last valid abscissa " << t;
      throw Error(ErrorKind::StepSizeUnderflow, os.str());
    }
    const double hs = dir * h;
    auto stage = [&](double ct, std::initializer_list<std::pair<double, const State*>> terms) {
      State yy = y;
      for (const auto& [a, k] : terms)
        for (int i = 0; i < 2; ++i) yy[i] += hs * a * (*k)[i];
      return field(sys, t + ct * hs, yy);
    };
    const State k2 = stage(D::c2, {{D::a21, &k1}});
    const State k3 = stage(D::c3, {{D::a31, &k1}, {D::a32, &k2}});
    const State k4 = stage(D::c4, {{D::a41, &k1}, {D::a42, &k2}, {D::a43, &k3}});
    const State k5 = stage(D::c5, {{D::a51, &k1}, {D::a52, &k2}, {D::a53, &k3}, {D::a54, &k4}});
    const State k6 = stage(1.0, {{D::a61, &k1}, {D::a62, &k2}, {D::a63, &k3}, {D::a64, &k4}, {D::a65, &k5}});
    State ynew = y;
    for (int i = 0; i < 2; ++i)
      ynew[i] += hs * (D::a71 * k1[i] + D::a73 * k3[i] + D::a74 * k4[i] + D::a75 * k5[i] + D::a76 * k6[i]);
    const double tnew = final_step ? t_end : t + hs;
    const State k7 = field(sys, tnew, ynew);
    State err{};
    for (int i = 0; i < 2; ++i)
      err[i] = hs * (D::e1 * k1[i] + D::e3 * k3[i] + D::e4 * k4[i] + D::e5 * k5[i] + D::e6 * k6[i] + D::e7 * k7[i]);

    double errn = error_norm(err, y, ynew, control);
    if (!std::isfinite(errn) || !finite(ynew) || !finite(k7)) {
      h *= 0.25;
      last_rejected = true;
      continue;
    }
    const double fac11 = std::pow(errn, expo1);
    if (errn <= 1.0) {
      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, facc2, facc1);
      double hnew = h / fac;
      if (last_rejected) hnew = std::min(hnew, h);
      facold = std::max(errn, 1e-4);
      last_rejected = false;

      const StateNode prev = out.nodes.back();
      const StateNode next{tnew, ynew[0], ynew[1]};
      // event scan
      std::optional<std::size_t> fired;
      for (std::size_t e = 0; e < events.size(); ++e) {
        const double g = events[e].g(next.t, next.x, next.v);
        if (g_prev[e] > 0 && !(g > 0)) {
          fired = e;
          break;
        }
        g_prev[e] = g;
      }
      if (fired) {
        const auto& ev = events[*fired];
        std::vector<StateNode> pair = dir > 0 ? std::vector{prev, next} : std::vector{next, prev};
        std::vector<HermiteQuintic> xp, vp;
        hermite_pieces(sys, pair, xp, vp);
        double lo = prev.t, hi = next.t;  // g(lo) > 0 >= g(hi)
        while (std::abs(hi - lo) > event_resolution) {
          const double mid = 0.5 * (lo + hi);
          if (ev.g(mid, xp[0](mid), vp[0](mid)) > 0)
            lo = mid;
          else
            hi = mid;
        }
        out.nodes.push_back({hi, xp[0](hi), vp[0](hi)});
        out.event_tag = ev.tag;
        out.event_t = hi;
        return out;
      }

      out.nodes.push_back(next);
      t = tnew;
      y = ynew;
      k1 = k7;
      h = hnew;
      if (final_step) return out;
    } else {
      h = h / std::min(facc1, fac11 / safe);
      last_rejected = true;
    }
  }
  throw Error(ErrorKind::StepSizeUnderflow, "maximum number of steps exceeded");
}

}  // namespace soliton
