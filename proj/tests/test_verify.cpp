#include <cmath>
#include <functional>

#include "doctest.h"
#include "shipped_examples.hpp"
#include "soliton/verify.hpp"

using namespace soliton;
using soliton::testing::ShippedExample;

namespace {

const std::vector<ShippedExample>& examples() {
  static const auto all = soliton::testing::shipped_examples();
  return all;
}

// Linear profile f = w s on [0, 1]; the zero acceleration keeps the
// interpolant exactly linear whatever equation is being checked.
ProfileSolution linear_profile(double w, const SignPair& signs) {
  std::vector<StateNode> nodes;
  for (int i = 0; i <= 20; ++i) nodes.push_back({0.05 * i + 0.5, w * (0.05 * i + 0.5), w});
  const SecondOrderSystem flat{[](double, double, double) { return 0.0; }, [](double, double, double) { return 0.0; }};
  return ProfileSolution::from_nodes(nodes, flat, [signs](double v) { return causal_character(signs, v); });
}

ProfileSolution bowl(double s_end = 5.0) {
  const auto e = euclidean_rotational(2);
  return integrate(SolitonProblem::singular(e.default_signs(), e.profile), s_end);
}

std::function<double(double, double)> radial(const ProfileSolution& sol) {
  return [sol](double x, double y) { return sol.f(std::hypot(x, y)); };
}

}  // namespace

TEST_CASE("ode_residual: shipped examples and exact barrier lines") {
  for (const auto& ex : examples()) {
    INFO(ex.label);
    const ResidualReport r = ode_residual(ex.solution, ex.signs(), ex.space.profile);
    CHECK(r.max_abs < 1e-8);
    CHECK(r.rms <= r.max_abs);
    CHECK(r.sample_count >= 1000);
  }
  // w = 1 solves the equation exactly when eps eps~ = -1, whatever h is
  const SignPair signs(1, -1);
  const auto h = CurvatureProfile::tanh_scaled(3);
  std::vector<StateNode> nodes;
  for (int i = 0; i <= 16; ++i) nodes.push_back({0.25 * i, 0.25 * i, 1.0});
  const ProfileSolution line = ProfileSolution::from_nodes(nodes, soliton_system(signs, h),
                                                           [&](double v) { return causal_character(signs, v); });
  CHECK(ode_residual(line, signs, h).max_abs < 1e-13);

  std::vector<StateNode> few(nodes.begin(), nodes.begin() + 7);
  const ProfileSolution short_line = ProfileSolution::from_nodes(few, soliton_system(signs, h),
                                                                 [&](double v) { return causal_character(signs, v); });
  CHECK_THROWS_AS(ode_residual(short_line, signs, h), Error);
}

TEST_CASE("ode_residual flags a corrupted node") {
  const ShippedExample& ex = examples().front();
  const ProfileSolution bad = soliton::testing::perturb_slope(ex, ex.solution.size() / 2, 1e-3);
  CHECK(ode_residual(bad, ex.signs(), ex.space.profile).max_abs > 1e-4);
}

TEST_CASE("h_perturbed_residual: closed forms") {
  // linear f with slope w: residual (w h - 1)/W
  const auto h = CurvatureProfile::rational_pole(1, 0, Interval::positive());
  for (const auto& [signs, w] : {std::pair{SignPair(1, -1), 0.5}, std::pair{SignPair(1, 1), 1.0},
                                 std::pair{SignPair(-1, 1), 0.3}}) {
    const ProfileSolution lin = linear_profile(w, signs);
    const ResidualReport r = h_perturbed_residual(lin, signs, h);
    double expect = 0;
    for (int i = 0; i <= 200; ++i) {
      const double s = 0.5 + i / 200.0;
      const double W = std::sqrt(std::abs(signs.epsilon + signs.epsilon_tilde * w * w));
      expect = std::max(expect, std::abs((w * h(s) - 1) / W));
    }
    CHECK(r.max_abs == doctest::Approx(expect).epsilon(1e-3));
  }
  // harmonic fibers: the one-variable unperturbed equation, -1/W for a line
  const ResidualReport flat = h_perturbed_residual(linear_profile(0.5, {1, 1}), {1, 1}, CurvatureProfile::constant(0));
  CHECK(flat.max_abs == doctest::Approx(1 / std::sqrt(1.25)).epsilon(1e-12));
  CHECK(flat.rms == doctest::Approx(1 / std::sqrt(1.25)).epsilon(1e-12));
  // lightlike slope
  try {
    h_perturbed_residual(linear_profile(1.0, {1, -1}), {1, -1}, h);
    FAIL("expected DegenerateW");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateW);
  }
}

TEST_CASE("ode and H-perturbed residuals agree on pass/fail") {
  // The H-perturbed form reacts to slope errors like W^-3, so near-lightlike
  // tails are cut where W drops below a floor tied to the gate.
  for (const auto& ex : examples()) {
    INFO(ex.label);
    for (const auto& [gate, w_floor] : {std::pair{1e-6, 1e-2}, std::pair{1e-8, 0.15}}) {
      const SignPair signs = ex.signs();
      double cut = ex.solution.s_end();
      for (const auto& n : ex.solution.nodes())
        if (std::sqrt(std::abs(signs.epsilon + signs.epsilon_tilde * n.v * n.v)) < w_floor) {
          cut = n.t;
          break;
        }
      const ProfileSolution sol = cut < ex.solution.s_end()
                                      ? integrate(SolitonProblem::singular(signs, ex.space.profile), cut)
                                      : ex.solution;
      const bool ode_ok = ode_residual(sol, signs, ex.space.profile).max_abs < gate;
      const bool h_ok = h_perturbed_residual(sol, signs, ex.space.profile).max_abs < gate;
      CHECK(ode_ok);
      CHECK(ode_ok == h_ok);
    }
  }
}

TEST_CASE("report serialization") {
  ResidualReport r;
  r.max_abs = 1.25e-9;
  r.rms = 3.0e-10;
  r.sample_count = 1234;
  r.grid_spacing = 0.005;
  r.location_of_max = {0.5, -1.75};
  r.skipped = 17;
  const std::string text = r.serialize();
  CHECK(text.find("max_abs=1.25e-09\n") != std::string::npos);
  CHECK(text.find("n=1234\n") != std::string::npos);
  CHECK(text.find("h_grid=0.005\n") != std::string::npos);
  const ResidualReport back = ResidualReport::parse(text);
  CHECK(back.max_abs == r.max_abs);
  CHECK(back.sample_count == r.sample_count);
  CHECK(back.location_of_max == r.location_of_max);
  CHECK(back.skipped == 17);
  CHECK(back.serialize() == text);
  CHECK_THROWS_AS(ResidualReport::parse("max_abs=oops\n"), Error);
}

TEST_CASE("pde_residual_grid: zero function and second-order convergence") {
  const ResidualReport zero = pde_residual_grid(GridChart::euclidean(), [](double, double) { return 0.0; },
                                                {0.2, 3.0, 0.2, 3.0, 1e-2});
  CHECK(zero.max_abs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(zero.rms == doctest::Approx(1.0).epsilon(1e-14));

  const ProfileSolution sol = bowl();
  const auto u = radial(sol);
  const ResidualReport coarse = pde_residual_grid(GridChart::euclidean(), u, {0.2, 3.0, 0.2, 3.0, 1e-2}, 4);
  const ResidualReport fine = pde_residual_grid(GridChart::euclidean(), u, {0.2, 3.0, 0.2, 3.0, 5e-3}, 4);
  REQUIRE(coarse.grid_spacing);
  CHECK(*coarse.grid_spacing == 1e-2);
  const double ratio = coarse.max_abs / fine.max_abs;
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
  CHECK(coarse.max_abs < 1e-5);

  // thread count does not change the report
  const ResidualReport serial = pde_residual_grid(GridChart::euclidean(), u, {0.2, 3.0, 0.2, 3.0, 1e-2}, 1);
  CHECK(serial.serialize() == coarse.serialize());

  // the axis band is skipped
  const ResidualReport around = pde_residual_grid(GridChart::euclidean(), u, {-1, 1, -1, 1, 2e-2});
  CHECK(around.skipped > 0);
  CHECK(around.max_abs < 1e-3);
}

TEST_CASE("pde_residual_grid: degenerate and mixed causal character") {
  try {
    pde_residual_grid(GridChart::boost(1), [](double, double y) { return y; }, {0.0, 1.0, 0.0, 1.0, 0.1});
    FAIL("expected DegenerateW");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateW);
  }
  // spacelike for |y| < 1, timelike beyond: eps + |grad u|^2 = 1 - y^2 in the boost chart
  CHECK_THROWS_AS(pde_residual_grid(GridChart::boost(1), [](double, double y) { return y * y / 2; },
                                    {0.0, 1.0, 0.0, 2.0, 0.05}),
                  Error);
}

TEST_CASE("fundamental-form mean curvature against eps/W") {
  for (const auto& ex : examples()) {
    if (ex.space.embedding != EmbeddingKind::RevolutionEuclidean &&
        ex.space.embedding != EmbeddingKind::RevolutionMinkowski)
      continue;
    INFO(ex.label);
    const double lo = ex.solution.s_begin(), hi = ex.solution.s_end();
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
      const double s = lo + (hi - lo) * (i + 0.5) / 100;
      const double geo = revolution_mean_curvature(ex.solution, ex.space, ex.epsilon, s);
      worst = std::max(worst, std::abs(geo - soliton_mean_curvature(ex.epsilon, ex.solution.fprime(s))));
    }
    CHECK(worst < 1e-6);
  }
  // a non-soliton: the paraboloid f = s^2, two independent routes to the same curvature
  for (int eps : {1, -1}) {
    for (double s : {0.1, 0.2, 0.3}) {
      if (eps < 0 && 4 * s * s >= 1) continue;
      const double geo = revolution_mean_curvature(s, 2 * s, 2.0, eps);
      const double div = radial_divergence_curvature([](double r) { return 2 * r; }, eps, s);
      CHECK(geo == doctest::Approx(div).epsilon(1e-7));
    }
  }
  // plane: flat
  CHECK(revolution_mean_curvature(1.0, 0.0, 0.0, 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(revolution_mean_curvature(bowl(), hyperbolic_rotational(2), 1, 1.0), Error);
  CHECK_THROWS_AS(revolution_mean_curvature(1.0, 1.0, 0.0, -1), Error);  // lightlike
}

TEST_CASE("detection power on every shipped example") {
  for (const auto& ex : examples()) {
    INFO(ex.label);
    const std::size_t k = soliton::testing::interior_node(ex, 1e-3);
    const ProfileSolution bad = soliton::testing::perturb_slope(ex, k, 1e-3);
    const double clean = ode_residual(ex.solution, ex.signs(), ex.space.profile).max_abs;
    const double dirty = ode_residual(bad, ex.signs(), ex.space.profile).max_abs;
    CHECK(dirty >= 10 * clean);
    CHECK(dirty > 1e-4);
    const double hclean = h_perturbed_residual(ex.solution, ex.signs(), ex.space.profile).max_abs;
    const double hdirty = h_perturbed_residual(bad, ex.signs(), ex.space.profile).max_abs;
    CHECK(hdirty >= 10 * hclean);
  }
}
