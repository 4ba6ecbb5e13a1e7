#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "soliton/assembly.hpp"
#include "soliton/verify.hpp"

using namespace soliton;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

std::size_t count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream is(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

const SolitonSurface& glued() {
  static const SolitonSurface s = glue_boost();
  return s;
}

ProfileSolution bowl(double s_end = 3.0) {
  const auto e = euclidean_rotational(2);
  return integrate(SolitonProblem::singular(e.default_signs(), e.profile), s_end);
}

}  // namespace

TEST_CASE("boost gluing: exact relations and cross-cone derivatives") {
  const SolitonSurface& u = glued();
  CHECK(u.rule == AssemblyRule::QuadrantGlue);
  REQUIRE(u.smoothness);
  const SmoothnessReport& rep = *u.smoothness;
  CHECK(rep.order == 12);
  CHECK(rep.exact_pass());
  CHECK(rep.numeric_pass());
  CHECK(rep.cross_cone.size() == 4);
  for (const auto& c : rep.exact) {
    CHECK(c.pass);
    CHECK(c.lhs == c.rhs);
  }
  REQUIRE(u.pieces.size() == 4);
  const TaylorJet& j1 = *u.pieces[0].jet;
  const TaylorJet& j2 = *u.pieces[1].jet;
  CHECK(j1.derivative_at_center(2) == Rational(1, 2));
  CHECK(j2.derivative_at_center(2) == Rational(-1, 2));
  for (std::size_t k = 1; k <= 12; k += 2) {
    CHECK(j1.coefficient(k) == 0);
    CHECK(j2.coefficient(k) == 0);
  }
  CHECK(rep.table().find("FAIL") == std::string::npos);
}

TEST_CASE("boost gluing: nonzero cone value and mismatched jets") {
  const SolitonSurface shifted = glue_boost(0.75, 12, 2.0);
  CHECK(shifted.cone_value == 0.75);
  CHECK(shifted.height(1.0, 1.0) == 0.75);
  CHECK(shifted.height(-2.0, 2.0) == 0.75);
  CHECK(shifted.smoothness->pass());

  const TaylorJet j1 = jet_at_pole({1, 1}, Rational(1), 12);
  const TaylorJet j2 = jet_at_pole({1, -1}, Rational(-1), 12, Rational(1, 2));
  const SmoothnessReport bad = certify_boost_jets(j1, j2);
  CHECK_FALSE(bad.exact_pass());
  const SolitonSurface& u = glued();
  CHECK(kind_of([&] { glue_boost(j1, j2, *u.pieces[0].solution, *u.pieces[1].solution); }) ==
        ErrorKind::GlueMismatch);
  // both jets must be centered on the cone
  const TaylorJet off(Rational(1), j2.series());
  CHECK(kind_of([&] { glue_boost(j1, off, *u.pieces[0].solution, *u.pieces[1].solution); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("boost gluing: quadrant symmetry and boost invariance") {
  const SolitonSurface& u = glued();
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> X(-2.0, 2.0), Th(-2.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double x = X(rng), y = X(rng);
    const double v = u.height(x, y);
    CHECK(u.height(-x, -y) == v);
    CHECK(u.height(-x, y) == v);
  }
  double worst = 0;
  int tested = 0;
  while (tested < 200) {
    const double x = X(rng), y = X(rng);
    if (std::abs(x * x - y * y) < 0.01) continue;
    const double th = Th(rng);
    const double bx = std::cosh(th) * x + std::sinh(th) * y, by = std::sinh(th) * x + std::cosh(th) * y;
    worst = std::max(worst, std::abs(u.height(bx, by) - u.height(x, y)));
    ++tested;
  }
  CHECK(worst < 1e-8);
  // continuity across the cone
  for (double t : {0.3, 1.0, 1.7}) {
    const double h = 1e-7;
    CHECK(std::abs(u.height(t + h, t) - u.height(t, t)) < 1e-6);
    CHECK(std::abs(u.height(t, t + h) - u.height(t, t)) < 1e-6);
  }
}

TEST_CASE("boost gluing: grid residual converges at second order") {
  const SolitonSurface& u = glued();
  const auto f = [&u](double x, double y) { return u.height(x, y); };
  const ResidualReport a = pde_residual_grid(GridChart::boost(1), f, {-2, 2, -2, 2, 1e-2}, 4);
  const ResidualReport b = pde_residual_grid(GridChart::boost(1), f, {-2, 2, -2, 2, 5e-3}, 4);
  CHECK(a.skipped > 0);
  const double ratio = a.max_abs / b.max_abs;
  CHECK(ratio > 3.2);
  CHECK(ratio < 4.8);
}

TEST_CASE("partial quadrant assemblies") {
  CHECK(parse_quadrants("1234") == all_quadrants);
  CHECK(parse_quadrants("21") == QuadrantMask{true, true, false, false});
  CHECK(kind_of([] { parse_quadrants("15"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_quadrants(""); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_quadrants("3"); }) == ErrorKind::InvalidArgument);

  GlueOptions two;
  two.quadrants = parse_quadrants("12");
  const SolitonSurface half = glue_boost(0, 12, 2.0, two);
  CHECK(half.covers(1.5, 0.2));
  CHECK(half.covers(0.2, 1.5));
  CHECK(half.covers(1.0, 1.0));
  CHECK_FALSE(half.covers(-1.5, 0.2));
  CHECK_FALSE(half.covers(0.2, -1.5));
  CHECK(kind_of([&] { half.height(-1.5, 0.2); }) == ErrorKind::OutOfDomain);

  GlueOptions three;
  three.quadrants = parse_quadrants("234");
  const SolitonSurface u3 = glue_boost(0, 12, 2.0, three);
  CHECK_FALSE(u3.covers(1.5, 0.0));
  CHECK(u3.covers(-1.5, 0.0));

  GlueOptions opposite;
  opposite.quadrants = parse_quadrants("13");
  CHECK(kind_of([&] { glue_boost(0, 12, 2.0, opposite); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("catenoid: Euclidean neck and branches") {
  const SolitonSurface cat = make_catenoid(euclidean_rotational(2), 1, 1.0, 4.0);
  CHECK(cat.rule == AssemblyRule::TwoBranch);
  REQUIRE(cat.neck);
  CHECK(std::abs(cat.neck->alpha_second - 1.0) < 1e-10);
  REQUIRE(cat.branches.size() == 2);
  const auto signs = euclidean_rotational(2).default_signs();
  const auto& h = euclidean_rotational(2).profile;
  for (const auto& b : cat.branches) {
    INFO(b.name);
    CHECK(ode_residual(b.graph, signs, h).max_abs < 1e-8);
    CHECK(ode_residual(b.inverse, branch_system(signs, h)).max_abs < 1e-8);
    CHECK(b.side == 1);
    CHECK(b.s_far() == doctest::Approx(5.0));
    // the two descriptions agree at the switch
    CHECK(std::abs(b.f(b.s_switch) - b.graph.f(b.s_switch)) < 1e-9);
    CHECK(std::abs(b.f(1.0) - cat.neck->y0) < 1e-9);
  }
  const auto& up = cat.branches[0];
  const auto& lo = cat.branches[1];
  CHECK(up.slope_sign == 1);
  CHECK(lo.slope_sign == -1);
  CHECK(up.fprime(1.01) > 0);
  CHECK(lo.fprime(1.01) < 0);
  CHECK(up.f(3.0) > lo.f(3.0));
}

TEST_CASE("catenoid: other spaces and failures") {
  const SolitonSurface e3 = make_catenoid(euclidean_rotational(3), 1, 2.0, 3.0);
  CHECK(std::abs(e3.neck->alpha_second - 1.0) < 1e-10);

  const SolitonSurface mk = make_catenoid(minkowski_rotational(2), -1, 1.0, 0.99);
  const auto signs = minkowski_rotational(2).signs(-1);
  for (const auto& b : mk.branches) {
    CHECK(b.graph.causal_character() == 1);
    CHECK(b.inverse.causal_character() != 0);
    CHECK(ode_residual(b.graph, signs, minkowski_rotational(2).profile).max_abs < 1e-8);
    CHECK(b.side == -1);
  }
  CHECK(mk.neck->alpha_second == doctest::Approx(-1.0));

  const auto ds = desitter_rotational(2);
  CHECK(kind_of([&] { make_catenoid(ds, 1, 0.0, 1.0); }) == ErrorKind::NeckDegenerate);
  CHECK(kind_of([&] { make_catenoid(euclidean_rotational(2), 1, -1.0, 1.0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("monotone inversion") {
  const auto e2 = euclidean_rotational(2);
  const ProfileSolution a = branch_equation_integrate(e2.default_signs(), e2.profile, 0.0, 1.0, 0.3);
  for (double y : {0.05, 0.1, 0.2, 0.29}) CHECK(std::abs(invert_monotone(a, a.f(y)) - y) < 1e-12);
  const ProfileSolution both = branch_equation_integrate(e2.default_signs(), e2.profile, -0.3, 1.0, 0.3);
  (void)both;
  // a profile with a turning point is not invertible as a whole
  const ProfileSolution turn = integrate_range({e2.default_signs(), e2.profile, 1.0, 0.0, 0.0, false}, 0.5, 2.0);
  CHECK(kind_of([&] { invert_monotone(turn, 0.01); }) == ErrorKind::InversionFailure);
}

TEST_CASE("mesh export: counts, formats and embeddings") {
  const auto e2 = euclidean_rotational(2);
  const SolitonSurface g = single_graph(e2, 1, bowl());
  const std::string obj = export_mesh(g, MeshFormat::OBJ, {4, 3});
  CHECK(count_prefix(obj, "v ") == 12);
  CHECK(count_prefix(obj, "f ") == 16);
  CHECK(obj.back() == '\n');
  CHECK(export_mesh(g, MeshFormat::OBJ, {4, 3}) == obj);

  const std::string csv = export_mesh(g, MeshFormat::CSV, {4, 10});
  CHECK(csv.rfind("s,f,fprime\n", 0) == 0);
  CHECK(count_prefix(csv, "") == 11);

  const std::string quad = export_mesh(glued(), MeshFormat::CSV, {21, 21});
  CHECK(quad.rfind("x,y,u\n", 0) == 0);
  CHECK(count_prefix(quad, "") == 21 * 21 + 1);
  const std::string qobj = export_mesh(glued(), MeshFormat::OBJ, {5, 5});
  CHECK(count_prefix(qobj, "v ") == 25);
  CHECK(count_prefix(qobj, "f ") == 32);

  const SolitonSurface cat = make_catenoid(e2, 1, 1.0, 2.0);
  const std::string cobj = export_mesh(cat, MeshFormat::OBJ, {8, 5});
  CHECK(count_prefix(cobj, "v ") == 2 * 8 * 5);
  CHECK(count_prefix(cobj, "f ") == 2 * 8 * 4 * 2);
  CHECK(kind_of([&] { export_mesh(cat, MeshFormat::CSV); }) == ErrorKind::InvalidArgument);

  const auto e3 = euclidean_rotational(3);
  const SolitonSurface abstract =
      single_graph(e3, 1, integrate(SolitonProblem::singular(e3.default_signs(), e3.profile), 2.0));
  CHECK(kind_of([&] { export_mesh(abstract, MeshFormat::OBJ); }) == ErrorKind::NoEmbedding);
  const auto ds = desitter_rotational(2);
  const SolitonSurface dsg =
      single_graph(ds, 1, integrate_range({ds.signs(1), ds.profile, 0, 0, 0, false}, -1, 1));
  CHECK(kind_of([&] { export_mesh(dsg, MeshFormat::OBJ); }) == ErrorKind::NoEmbedding);

  CHECK(parse_mesh_format("obj") == MeshFormat::OBJ);
  CHECK(parse_mesh_format("csv") == MeshFormat::CSV);
  CHECK(kind_of([] { parse_mesh_format("stl"); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("profile CSV round trip") {
  const auto e2 = euclidean_rotational(2);
  const ProfileSolution sol = bowl(5.0);
  const std::string text = export_profile_csv(sol);
  CHECK(text.rfind("s,f,fprime\n", 0) == 0);
  const CsvTable table = parse_csv(text);
  REQUIRE(table.rows.size() == sol.size());
  for (const auto& r : table.rows) {
    CHECK(std::abs(sol.f(r[0]) - r[1]) < 1e-10);
    CHECK(std::abs(sol.fprime(r[0]) - r[2]) < 1e-10);
  }
  const ProfileSolution back = profile_from_csv(table, e2.default_signs(), e2.profile);
  CHECK(ode_residual(back, e2.default_signs(), e2.profile).max_abs < 1e-6);
  CHECK(export_profile_csv(back) == text);

  CHECK(kind_of([] { parse_csv("s,f,fprime\n1,2\n"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { parse_csv("s,f,fprime\n1,x,3\n"); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { profile_from_csv(parse_csv("x,y,u\n1,2,3\n"), e2.default_signs(), e2.profile); }) ==
        ErrorKind::InvalidArgument);
}
