#include "soliton/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "soliton/error.hpp"

namespace soliton {

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);  // no "-0"
  return buf;
}

constexpr double kConeBand = 1e-14;

// Quadrant of (x, y); -1 on the light cone.
int quadrant_of(double x, double y) {
  const double q = x * x - y * y;
  if (std::abs(q) < kConeBand) return -1;
  if (q > 0) return x > 0 ? 0 : 2;
  return y > 0 ? 1 : 3;
}

bool contiguous(const QuadrantMask& mask) {
  const auto count = std::count(mask.begin(), mask.end(), true);
  if (count < 2) return false;
  if (count > 2) return true;
  for (int i = 0; i < 4; ++i)
    if (mask[i] && mask[(i + 1) % 4]) return true;
  return false;
}

// Finite-difference weights for derivatives 0..m at z from nodes x (Fornberg).
template <typename T>
std::vector<std::vector<T>> fd_weights(const std::vector<T>& x, const T& z, int m) {
  const std::size_t n = x.size();
  std::vector<std::vector<T>> c(m + 1, std::vector<T>(n, T(0)));
  T c1 = 1, c4 = x[0] - z;
  c[0][0] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    T c2 = 1;
    const T c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const T c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (T(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - T(k) * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

// Directional derivatives of the jet-glued u through the cone point (1, 1),
// along the transversal (1, -1)/sqrt(2), from both sides, in 50 digits.
std::vector<DerivativeCheck> cross_cone_checks(const TaylorJet& jet1, const TaylorJet& jet2, const Rational& a,
                                               const GlueOptions& options) {
  const auto u = [&](const Wide& x, const Wide& y) -> Wide {
    const Wide q = x * x - y * y;
    if (q == 0) return Wide(a);
    if (q > 0) return jet1.evaluate<Wide>(sqrt(q));
    return jet2.evaluate<Wide>(sqrt(-q));
  };
  const Wide r2 = sqrt(Wide(2));
  const auto along = [&](const Wide& t) { return u(Wide(1) + t / r2, Wide(1) - t / r2); };
  constexpr int kPoints = 9;
  const Wide h(options.fd_spacing);
  std::vector<Wide> right(kPoints), left(kPoints);
  for (int j = 0; j < kPoints; ++j) {
    right[j] = h * j;
    left[j] = -h * j;
  }
  const auto wr = fd_weights(right, Wide(0), options.fd_max_order);
  const auto wl = fd_weights(left, Wide(0), options.fd_max_order);
  std::vector<Wide> gr(kPoints), gl(kPoints);
  for (int j = 0; j < kPoints; ++j) {
    gr[j] = along(right[j]);
    gl[j] = along(left[j]);
  }
  std::vector<DerivativeCheck> out;
  for (int k = 1; k <= options.fd_max_order; ++k) {
    Wide dr = 0, dl = 0;
    for (int j = 0; j < kPoints; ++j) {
      dr += wr[k][j] * gr[j];
      dl += wl[k][j] * gl[j];
    }
    DerivativeCheck c;
    c.order = k;
    c.inside = dr.convert_to<double>();
    c.outside = dl.convert_to<double>();
    c.difference = abs(dr - dl).convert_to<double>();
    c.pass = c.difference <= options.fd_tolerance;
    out.push_back(c);
  }
  return out;
}

ProfileSolution sub_solution(const ProfileSolution& sol, std::size_t first, std::size_t last,
                             const SecondOrderSystem& sys) {
  std::vector<StateNode> nodes(sol.nodes().begin() + static_cast<std::ptrdiff_t>(first),
                               sol.nodes().begin() + static_cast<std::ptrdiff_t>(last) + 1);
  const int causal = sol.causal_character();
  return ProfileSolution::from_nodes(std::move(nodes), sys, [causal](double) { return causal; }, sol.termination());
}

}  // namespace

std::string to_string(AssemblyRule rule) {
  switch (rule) {
    case AssemblyRule::QuadrantGlue: return "QuadrantGlue";
    case AssemblyRule::TwoBranch: return "TwoBranch";
    case AssemblyRule::SingleGraph: return "SingleGraph";
    case AssemblyRule::Lifted: return "Lifted";
  }
  return "?";
}

QuadrantMask parse_quadrants(const std::string& text) {
  QuadrantMask mask{};
  for (char ch : text) {
    if (ch < '1' || ch > '4') throw Error(ErrorKind::InvalidArgument, "quadrants are numbered 1..4: " + text);
    mask[ch - '1'] = true;
  }
  if (std::count(mask.begin(), mask.end(), true) < 2)
    throw Error(ErrorKind::InvalidArgument, "gluing needs at least two quadrants: '" + text + "'");
  return mask;
}

bool SmoothnessReport::exact_pass() const {
  return std::all_of(exact.begin(), exact.end(), [](const RelationCheck& c) { return c.pass; });
}

bool SmoothnessReport::numeric_pass() const {
  return std::all_of(cross_cone.begin(), cross_cone.end(), [](const DerivativeCheck& c) { return c.pass; });
}

std::string SmoothnessReport::table() const {
  std::ostringstream os;
  os << "order relation lhs rhs result\n";
  for (const auto& c : exact)
    os << c.order << ' ' << c.rule << ' ' << c.lhs.str() << ' ' << c.rhs.str() << ' ' << (c.pass ? "PASS" : "FAIL")
       << '\n';
  for (const auto& c : cross_cone)
    os << "d" << c.order << " cross-cone " << fmt12(c.inside) << ' ' << fmt12(c.outside) << ' '
       << (c.pass ? "PASS" : "FAIL") << '\n';
  return os.str();
}

SmoothnessReport certify_boost_jets(const TaylorJet& jet1, const TaylorJet& jet2) {
  SmoothnessReport r;
  r.order = std::min(jet1.order(), jet2.order());
  for (std::size_t k = 0; k <= r.order; ++k) {
    const Rational& a1 = jet1.coefficient(k);
    const Rational& a2 = jet2.coefficient(k);
    const std::string ks = std::to_string(k);
    if (k % 2 == 1) {
      r.exact.push_back({k, "a" + ks + "(f1)=0", a1, Rational(0), a1 == 0});
      r.exact.push_back({k, "a" + ks + "(f2)=0", a2, Rational(0), a2 == 0});
    } else if (k % 4 == 0) {
      r.exact.push_back({k, "a" + ks + "(f1)=a" + ks + "(f2)", a1, a2, a1 == a2});
    } else {
      r.exact.push_back({k, "a" + ks + "(f1)=-a" + ks + "(f2)", a1, Rational(-a2), a1 == -a2});
    }
  }
  return r;
}

SolitonSurface glue_boost(const TaylorJet& jet1, const TaylorJet& jet2, const ProfileSolution& sol1,
                          const ProfileSolution& sol2, const GlueOptions& options) {
  if (jet1.center() != 0 || jet2.center() != 0)
    throw Error(ErrorKind::InvalidArgument, "quadrant jets must be centered on the cone (s = 0)");
  if (!contiguous(options.quadrants))
    throw Error(ErrorKind::InvalidArgument, "glue two, three or four adjacent quadrants");
  SmoothnessReport report = certify_boost_jets(jet1, jet2);
  if (!report.exact_pass()) {
    std::string failed;
    for (const auto& c : report.exact)
      if (!c.pass) failed += " " + c.rule;
    throw Error(ErrorKind::GlueMismatch, "exact relations fail:" + failed);
  }
  report.cross_cone = cross_cone_checks(jet1, jet2, jet1.coefficient(0), options);

  SolitonSurface s;
  s.rule = AssemblyRule::QuadrantGlue;
  s.space = "boost";
  s.epsilon = 1;
  s.embedding = EmbeddingKind::BoostQuadrant;
  s.quadrants = options.quadrants;
  s.cone_value = to_double(jet1.coefficient(0));
  static constexpr const char* names[] = {"omega1", "omega2", "omega3", "omega4"};
  for (int i = 0; i < 4; ++i) {
    if (!options.quadrants[i]) continue;
    const bool even = i % 2 == 0;
    s.pieces.push_back({names[i], even ? sol1 : sol2, even ? jet1 : jet2, even ? "sqrt(x^2-y^2)" : "sqrt(y^2-x^2)"});
  }
  s.smoothness = std::move(report);
  return s;
}

SolitonSurface glue_boost(double a, std::size_t jet_order, double s_end, const GlueOptions& options,
                          const IntegrationSettings& settings) {
  const SpaceDescriptor o1 = boost_omega1(), o2 = boost_omega2();
  const Rational value(a);
  const TaylorJet jet1 = jet_at_pole(o1.signs(1), Rational(1), jet_order, value);
  const TaylorJet jet2 = jet_at_pole(o2.signs(1), Rational(-1), jet_order, value);
  const ProfileSolution sol1 = integrate(SolitonProblem::singular(o1.signs(1), o1.profile, a), s_end, settings);
  const ProfileSolution sol2 = integrate(SolitonProblem::singular(o2.signs(1), o2.profile, a), s_end, settings);
  return glue_boost(jet1, jet2, sol1, sol2, options);
}

bool SolitonSurface::covers(double x, double y) const {
  switch (rule) {
    case AssemblyRule::SingleGraph: {
      const auto& sol = *pieces.front().solution;
      return sol.covers(std::hypot(x, y));
    }
    case AssemblyRule::QuadrantGlue: {
      const int q = quadrant_of(x, y);
      if (q >= 0) {
        if (!quadrants[q]) return false;
      } else if (x != 0 || y != 0) {
        // cone half-line between quadrants: needs one of its neighbours
        const int before = x > 0 ? (y > 0 ? 0 : 3) : (y > 0 ? 1 : 2);
        if (!quadrants[before] && !quadrants[(before + 1) % 4]) return false;
      }
      const double r = std::sqrt(std::abs(x * x - y * y));
      for (const auto& p : pieces)
        if (!p.solution->covers(r) && r > 0) return false;
      return true;
    }
    default: return false;
  }
}

double SolitonSurface::height(double x, double y) const {
  switch (rule) {
    case AssemblyRule::SingleGraph: return pieces.front().solution->f(std::hypot(x, y));
    case AssemblyRule::QuadrantGlue: {
      if (!covers(x, y)) throw Error(ErrorKind::OutOfDomain, "point outside the glued quadrants");
      const int q = quadrant_of(x, y);
      if (q < 0) return cone_value;
      const double r = std::sqrt(std::abs(x * x - y * y));
      const bool even = q % 2 == 0;
      for (const auto& p : pieces)
        if ((p.chart == "sqrt(x^2-y^2)") == even) return p.solution->f(r);
      throw Error(ErrorKind::OutOfDomain, "point outside the glued quadrants");
    }
    default: throw Error(ErrorKind::InvalidArgument, to_string(rule) + " surfaces are not single-valued graphs");
  }
}

double SolitonSurface::extent() const {
  switch (rule) {
    case AssemblyRule::SingleGraph: return pieces.front().solution->s_end();
    case AssemblyRule::QuadrantGlue: {
      double e = std::numeric_limits<double>::infinity();
      for (const auto& p : pieces) e = std::min(e, p.solution->s_end());
      return e;
    }
    case AssemblyRule::TwoBranch: {
      double e = std::numeric_limits<double>::infinity();
      for (const auto& b : branches) e = std::min(e, std::abs(b.s_far() - neck->s_neck));
      return e;
    }
    default: return 0;
  }
}

double invert_monotone(const ProfileSolution& alpha, double s) {
  const auto& n = alpha.nodes();
  const bool increasing = n.back().x > n.front().x;
  for (std::size_t i = 1; i < n.size(); ++i)
    if ((n[i].x - n[i - 1].x) * (increasing ? 1 : -1) <= 0)
      throw Error(ErrorKind::InversionFailure, "branch is not strictly monotone");
  const double lo_s = std::min(n.front().x, n.back().x), hi_s = std::max(n.front().x, n.back().x);
  if (s < lo_s || s > hi_s) throw Error(ErrorKind::OutOfDomain, "value outside the branch range");

  // bracket on the nodes
  std::size_t i = 0;
  while (i + 2 < n.size() && (increasing ? n[i + 1].x < s : n[i + 1].x > s)) ++i;
  double a = n[i].t, b = n[i + 1].t;
  const double ga = n[i].x - s, gb = n[i + 1].x - s;
  if (ga == 0) return a;
  if (gb == 0) return b;
  double t = a + (b - a) * ga / (ga - gb);
  for (int iter = 0; iter < 100; ++iter) {
    const double g = alpha.f(t) - s;
    if (std::abs(g) <= 1e-12 * std::max(1.0, std::abs(s))) return t;
    if ((g > 0) == (ga > 0))
      a = t;
    else
      b = t;
    const double d = alpha.fprime(t);
    double next = d != 0 ? t - g / d : 0.5 * (a + b);
    if (!(next > std::min(a, b) && next < std::max(a, b))) next = 0.5 * (a + b);
    if (std::abs(next - t) <= 1e-15 * std::max(1.0, std::abs(t))) return next;
    t = next;
  }
  throw Error(ErrorKind::InversionFailure, "inversion did not converge");
}

double CatenoidBranch::f(double s) const {
  if ((s - s_switch) * side >= 0) return graph.f(s);
  return invert_monotone(inverse, s);
}

double CatenoidBranch::fprime(double s) const {
  if ((s - s_switch) * side >= 0) return graph.fprime(s);
  return 1.0 / inverse.fprime(invert_monotone(inverse, s));
}

SolitonSurface make_catenoid(const SpaceDescriptor& space, int epsilon, double s_neck, double extent,
                             const CatenoidOptions& options) {
  const SignPair signs = space.signs(epsilon);
  const CurvatureProfile& h = space.profile;
  if (!h.domain().contains(s_neck)) throw Error(ErrorKind::InvalidArgument, "neck outside the quotient interval");
  if (h.value(s_neck) == 0) throw Error(ErrorKind::NeckDegenerate, "h vanishes at the neck");
  if (!(extent > 0)) throw Error(ErrorKind::InvalidArgument, "catenoid extent must be positive");

  SolitonSurface surface;
  surface.rule = AssemblyRule::TwoBranch;
  surface.space = space.name;
  surface.epsilon = epsilon;
  surface.embedding = space.embedding;
  const double curvature = signs.epsilon * h.value(s_neck);
  surface.neck = NeckData{options.y0, s_neck, curvature};
  const int side = curvature > 0 ? 1 : -1;
  const double s_target = s_neck + side * extent;

  // The neck is resolved more finely than the default step.
  IntegrationSettings near = options.settings;
  near.max_step = std::min(near.max_step, 0.01);
  const SecondOrderSystem inverse_sys = branch_system(signs, h);
  for (const double dir : {1.0, -1.0}) {
    const ProfileSolution alpha = branch_equation_integrate(signs, h, options.y0, s_neck, options.y0 + dir * options.y_span,
                                                            near, s_target, options.switch_slope);
    const auto& nodes = alpha.nodes();
    const std::size_t neck_index = dir > 0 ? 0 : nodes.size() - 1;
    const std::size_t far_index = dir > 0 ? nodes.size() - 1 : 0;
    if (std::abs(nodes[far_index].v) < options.switch_slope * (1 - 1e-9))
      throw Error(ErrorKind::InversionFailure, "branch stays steeper than the switch slope over its extent");
    const std::optional<std::size_t> sw = far_index;

    CatenoidBranch b;
    b.name = dir > 0 ? "upper" : "lower";
    b.side = side;
    const StateNode& node = nodes[*sw];
    b.slope_sign = node.v > 0 ? 1 : -1;  // f' = 1/alpha'
    b.inverse = dir > 0 ? sub_solution(alpha, neck_index, *sw, inverse_sys)
                        : sub_solution(alpha, *sw, neck_index, inverse_sys);
    b.s_switch = node.x;
    const SolitonProblem problem{signs, h, node.x, node.t, 1.0 / node.v, false};
    b.graph = integrate(problem, s_target, options.settings);
    surface.pieces.push_back({b.name, b.graph, std::nullopt, "revolution"});
    surface.branches.push_back(std::move(b));
  }
  return surface;
}

SolitonSurface single_graph(const SpaceDescriptor& space, int epsilon, ProfileSolution solution) {
  SolitonSurface s;
  s.rule = AssemblyRule::SingleGraph;
  s.space = space.name;
  s.epsilon = epsilon;
  s.embedding = space.embedding;
  s.pieces.push_back({"graph", std::move(solution), std::nullopt, "revolution"});
  return s;
}

MeshFormat parse_mesh_format(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (t == "obj") return MeshFormat::OBJ;
  if (t == "csv") return MeshFormat::CSV;
  throw Error(ErrorKind::InvalidArgument, "unknown format " + text);
}

namespace {

struct ObjWriter {
  std::ostringstream os;
  std::size_t vertices = 0;

  std::size_t vertex(double x, double y, double z) {
    os << "v " << fmt12(x) << ' ' << fmt12(y) << ' ' << fmt12(z) << '\n';
    return ++vertices;  // OBJ indices are 1-based
  }
  void face(std::size_t i, std::size_t j, std::size_t k) { os << "f " << i << ' ' << j << ' ' << k << '\n'; }
};

std::vector<double> radial_samples(double lo, double hi, std::size_t count) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "need at least 2 radial samples");
  std::vector<double> s(count);
  for (std::size_t j = 0; j < count; ++j)
    s[j] = j + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
  return s;
}

// Revolution surface of z = f(s); `flip` reverses the winding.
void revolution(ObjWriter& w, const std::function<double(double)>& f, const std::vector<double>& radii,
                std::size_t angular, bool flip) {
  if (angular < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 angular samples");
  const std::size_t base = w.vertices + 1;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double z = f(radii[j]);
    for (std::size_t i = 0; i < angular; ++i) {
      const double th = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(angular);
      w.vertex(radii[j] * std::cos(th), radii[j] * std::sin(th), z);
    }
  }
  const auto idx = [&](std::size_t i, std::size_t j) { return base + j * angular + i % angular; };
  for (std::size_t j = 0; j + 1 < radii.size(); ++j)
    for (std::size_t i = 0; i < angular; ++i) {
      // e_r x e_theta points up: (i,j) -> (i,j+1) -> (i+1,j+1)
      const std::size_t a = idx(i, j), b = idx(i, j + 1), c = idx(i + 1, j + 1), d = idx(i + 1, j);
      if (flip) {
        w.face(a, c, b);
        w.face(a, d, c);
      } else {
        w.face(a, b, c);
        w.face(a, c, d);
      }
    }
}

}  // namespace

std::string export_mesh(const SolitonSurface& surface, MeshFormat format, const MeshResolution& res) {
  if (surface.rule == AssemblyRule::Lifted) throw Error(ErrorKind::NoEmbedding, "lifted solitons have no chart");

  if (format == MeshFormat::CSV) {
    std::ostringstream os;
    if (surface.rule == AssemblyRule::SingleGraph) {
      const auto& sol = *surface.pieces.front().solution;
      os << "s,f,fprime\n";
      for (double s : radial_samples(sol.domain_begin(), sol.s_end(), res.radial))
        os << fmt12(s) << ',' << fmt12(sol.f(s)) << ',' << fmt12(sol.fprime(s)) << '\n';
      return os.str();
    }
    if (surface.rule == AssemblyRule::QuadrantGlue) {
      const double L = surface.extent();
      const auto xs = radial_samples(-L, L, res.angular), ys = radial_samples(-L, L, res.radial);
      os << "x,y,u\n";
      for (double y : ys)
        for (double x : xs)
          if (surface.covers(x, y)) os << fmt12(x) << ',' << fmt12(y) << ',' << fmt12(surface.height(x, y)) << '\n';
      return os.str();
    }
    throw Error(ErrorKind::InvalidArgument, "two-branch surfaces export one profile CSV per branch");
  }

  if (surface.embedding == EmbeddingKind::None) throw Error(ErrorKind::NoEmbedding, surface.space + " has no 3-dimensional chart");
  ObjWriter w;
  switch (surface.rule) {
    case AssemblyRule::SingleGraph: {
      const auto& sol = *surface.pieces.front().solution;
      revolution(w, [&](double s) { return sol.f(s); }, radial_samples(sol.domain_begin(), sol.s_end(), res.radial),
                 res.angular, false);
      break;
    }
    case AssemblyRule::TwoBranch:
      // The lower sheet is wound the other way so the normal is continuous over the neck.
      for (const auto& b : surface.branches)
        revolution(w, [&](double s) { return b.f(s); }, radial_samples(surface.neck->s_neck, b.s_far(), res.radial),
                   res.angular, b.name == "lower");
      break;
    case AssemblyRule::QuadrantGlue: {
      const double L = surface.extent();
      const auto xs = radial_samples(-L, L, res.angular), ys = radial_samples(-L, L, res.radial);
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
      for (std::size_t j = 0; j < ys.size(); ++j)
        for (std::size_t i = 0; i < xs.size(); ++i)
          if (surface.covers(xs[i], ys[j])) index[{i, j}] = w.vertex(xs[i], ys[j], surface.height(xs[i], ys[j]));
      const auto get = [&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
        auto it = index.find({i, j});
        return it == index.end() ? std::nullopt : std::optional(it->second);
      };
      for (std::size_t j = 0; j + 1 < ys.size(); ++j)
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
          const auto a = get(i, j), b = get(i + 1, j), c = get(i + 1, j + 1), d = get(i, j + 1);
          if (a && b && c) w.face(*a, *b, *c);  // counter-clockwise seen from above
          if (a && c && d) w.face(*a, *c, *d);
        }
      break;
    }
    default: break;
  }
  return w.os.str();
}

std::string export_profile_csv(const ProfileSolution& solution) {
  std::ostringstream os;
  os << "s,f,fprime\n";
  for (const auto& n : solution.nodes()) os << fmt12(n.t) << ',' << fmt12(n.x) << ',' << fmt12(n.v) << '\n';
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  const auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::istringstream ls(l);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    return cells;
  };
  if (!std::getline(is, line) || line.empty()) throw Error(ErrorKind::InvalidArgument, "CSV without header");
  t.header = split(line);
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size())
      throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(lineno) + " has the wrong column count");
    std::vector<double> row;
    for (const auto& c : cells) {
      std::size_t used = 0;
      double v = 0;
      try {
        v = std::stod(c, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != c.size() || c.empty())
        throw Error(ErrorKind::InvalidArgument, "CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

ProfileSolution profile_from_csv(const CsvTable& table, const SignPair& signs, const CurvatureProfile& profile) {
  if (table.header != std::vector<std::string>{"s", "f", "fprime"})
    throw Error(ErrorKind::InvalidArgument, "profile CSV header must be s,f,fprime");
  std::vector<StateNode> nodes;
  for (const auto& r : table.rows) nodes.push_back({r[0], r[1], r[2]});
  return ProfileSolution::from_nodes(std::move(nodes), soliton_system(signs, profile),
                                     [signs](double w) { return causal_character(signs, w); });
}

}  // namespace soliton
