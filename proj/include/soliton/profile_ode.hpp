#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "soliton/integrator.hpp"
#include "soliton/jet.hpp"
#include "soliton/profile.hpp"
#include "soliton/profile_solution.hpp"
#include "soliton/signs.hpp"

namespace soliton {

/// Right-hand side of the reduced soliton equation
/// f'' = (eps~ + eps f'^2)(1 - f' h).
inline double rhs(const SignPair& signs, double h_value, double fprime) {
  return (signs.epsilon_tilde + signs.epsilon * fprime * fprime) * (1.0 - fprime * h_value);
}

/// sign(eps + eps~ f'^2); 0 on the lightlike set.
int causal_character(const SignPair& signs, double fprime);

/// The first-order field for w = f'. When eps*eps~ = -1 the constants
/// w = +1 and w = -1 solve it exactly and act as barriers.
struct FirstOrderField {
  SignPair signs;
  CurvatureProfile profile;

  double operator()(double s, double w) const { return rhs(signs, profile(s), w); }
  bool has_barriers() const { return signs.has_barriers(); }
};

FirstOrderField reduce_to_first_order(const SignPair& signs, const CurvatureProfile& profile);

/// x = f, v = f' form of the reduced equation, with its jerk for dense output.
SecondOrderSystem soliton_system(const SignPair& signs, const CurvatureProfile& profile);

/// Inverse-branch equation for alpha = f^{-1}, obtained by substituting
/// f' = 1/alpha' into the reduced equation:
/// alpha'' = (eps + eps~ alpha'^2)(h(alpha) - alpha').
/// At a neck (alpha' = 0) this gives alpha'' = eps h.
SecondOrderSystem branch_system(const SignPair& signs, const CurvatureProfile& profile);

struct SolitonProblem {
  SignPair signs;
  CurvatureProfile profile;
  double s0 = 0;
  double f0 = 0;
  double f1 = 0;
  bool singular_start = false;

  /// Start at the pole of `profile` with f = value and f' = 0.
  static SolitonProblem singular(const SignPair& signs, const CurvatureProfile& profile, double value = 0);

  /// Throws InvalidArgument for ill-formed problems and DegenerateStart when
  /// eps + eps~ f1^2 is within `margin` of zero.
  void validate(double margin = 1e-8) const;
};

struct IntegrationSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t jet_order = 10;
  double blowup_cap = 1e6;
  double degeneracy_margin = 1e-8;
  double event_resolution = 1e-12;
  double max_step = 0.05;
  /// Stand-off from a pole of h when the pole lies ahead.
  double pole_margin = 1e-6;
};

/// Handoff offset from a singular center: largest delta with the truncation
/// term |a_m| delta^m below abs_tol, capped at 1e-2 * scale.
double handoff_offset(const TaylorJet& jet, double abs_tol, double scale);

/// Integrates from s0 to s_end (either direction). Singular starts are
/// handed off from the exact jet. Returns the solution up to the first event.
ProfileSolution integrate(const SolitonProblem& problem, double s_end, const IntegrationSettings& settings = {});

/// Integrates over [s_begin, s_end] containing s0, in both directions if needed.
ProfileSolution integrate_range(const SolitonProblem& problem, double s_begin, double s_end,
                                const IntegrationSettings& settings = {});

/// Solves the inverse-branch equation with alpha(y0) = s_neck, alpha'(y0) = 0
/// from y0 towards y_end. Stops early when alpha reaches `s_stop`, when
/// |alpha'| reaches `slope_stop`, when alpha leaves the profile domain, or when
/// alpha' exceeds the blow-up cap. Nodes increase in y.
ProfileSolution branch_equation_integrate(const SignPair& signs, const CurvatureProfile& profile, double y0,
                                          double s_neck, double y_end, const IntegrationSettings& settings = {},
                                          std::optional<double> s_stop = std::nullopt,
                                          std::optional<double> slope_stop = std::nullopt);

/// v(t) = v_begin + integral_{t_begin}^{t} dt / sqrt(eps~ |grad pi|^2(t)).
class Reparametrization {
 public:
  Reparametrization(int eps_tilde, std::function<double(double)> gradnorm2, double t_begin, double t_end,
                    double v_begin, double abs_tol);

  double operator()(double t) const;
  double derivative(double t) const;
  /// t with v(t) = s, by safeguarded Newton iteration.
  double inverse(double s) const;
  double t_begin() const { return knots_.front(); }
  double t_end() const { return knots_.back(); }

 private:
  double integrand(double t) const;

  int eps_tilde_;
  std::function<double(double)> gradnorm2_;
  double abs_tol_;
  std::vector<double> knots_;
  std::vector<double> cumulative_;
};

/// Throws LightlikeGradient when eps~ |grad pi|^2 <= 0 somewhere on [t_begin, t_end].
Reparametrization normalize_projection(int eps_tilde, std::function<double(double)> gradnorm2, double t_begin,
                                       double t_end, double v_begin = 0, double abs_tol = 1e-10);

/// Mean curvature of the fibers in the normalized abscissa, from the raw
/// divergence div(grad pi) and |grad pi|^2 with its derivative at t.
double normalized_fiber_curvature(int eps_tilde, double raw_divergence, double gradnorm2, double gradnorm2_derivative);

}  // namespace soliton
