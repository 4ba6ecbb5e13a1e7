// soliton_forge: solve, assemble, verify and export translating soliton profiles.
//
// Exit codes: 0 success, 2 configuration error, 3 integration event before the
// end of the requested range, 4 verification gate failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "soliton/assembly.hpp"
#include "soliton/config.hpp"
#include "soliton/error.hpp"
#include "soliton/profile_ode.hpp"
#include "soliton/spaces.hpp"
#include "soliton/verify.hpp"

using namespace soliton;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kEvent = 3, kGate = 4 };

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateStart:
    case ErrorKind::StepSizeUnderflow:
    case ErrorKind::JetFailure:
    case ErrorKind::DegenerateJet: return kEvent;
    case ErrorKind::TooFewNodes:
    case ErrorKind::GlueMismatch:
    case ErrorKind::DegenerateW:
    case ErrorKind::DegenerateMetric:
    case ErrorKind::InversionFailure: return kGate;
    default: return kConfig;
  }
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

double verification_gate() {
  const char* env = std::getenv("SOLITON_FORGE_TOL");
  if (!env || !*env) return 1e-6;
  char* end = nullptr;
  const double g = std::strtod(env, &end);
  if (*end != '\0' || !(g > 0)) throw Error(ErrorKind::ConfigError, "SOLITON_FORGE_TOL must be a positive number");
  return g;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flags are collected as strings and funneled through RunConfig::set so that
// config files and flags share one validator; flags are applied after the file.
class Flags {
 public:
  explicit Flags(CLI::App* app) : app_(app) { app_->add_option("--config", config_path_, "key=value config file"); }

  Flags& add(const std::string& flag, const std::string& key, const std::string& help) {
    options_.push_back({key, app_->add_option(flag, values_[flag], help), flag});
    return *this;
  }

  RunConfig resolve() {
    RunConfig cfg = config_path_.empty() ? RunConfig{} : load_config(config_path_);
    std::map<std::string, std::string> start;  // s0, f0, f1 given as flags
    bool singular = false;
    for (const auto& o : options_) {
      if (o.option->count() == 0) continue;
      const std::string& v = values_[o.flag];
      if (o.key == "s0" || o.key == "f0" || o.key == "f1") {
        start[o.key] = v;
      } else if (o.key == "singular") {
        singular = true;
        cfg.set("initial", "singular:" + v);
      } else {
        cfg.set(o.key, v);
      }
    }
    if (!start.empty()) {
      if (singular) throw Error(ErrorKind::ConfigError, "--singular conflicts with --s0/--f0/--f1");
      const auto pick = [&](const char* key, double fallback) {
        if (start.count(key)) return start[key];
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", fallback);
        return std::string(buf);
      };
      cfg.set("initial", pick("s0", cfg.s0) + "," + pick("f0", cfg.f0) + "," + pick("f1", cfg.f1));
    }
    return cfg;
  }

 private:
  struct Entry {
    std::string key;
    CLI::Option* option;
    std::string flag;
  };
  CLI::App* app_;
  std::string config_path_;
  std::map<std::string, std::string> values_;
  std::vector<Entry> options_;
};

void add_problem_flags(Flags& f) {
  f.add("--space", "space", "space id, see 'list'")
      .add("--epsilon", "epsilon", "sign of dt^2 (1 or -1)")
      .add("--s0", "s0", "initial abscissa")
      .add("--f0", "f0", "f(s0)")
      .add("--f1", "f1", "f'(s0)")
      .add("--singular", "singular", "start on the pole of h with f = a")
      .add("--range", "range", "s_begin,s_end")
      .add("--tol-abs", "tol_abs", "absolute tolerance")
      .add("--tol-rel", "tol_rel", "relative tolerance")
      .add("--jet-order", "jet_order", "order of the exact start jet")
      .add("--out", "out", "output path")
      .add("--format", "format", "csv or obj")
      .add("--threads", "threads", "worker threads for grid checks")
      .add("--resolution", "resolution", "mesh samples, angular x radial (e.g. 64x64)");
}

IntegrationSettings settings_of(const RunConfig& cfg) {
  IntegrationSettings s;
  s.abs_tol = cfg.tol_abs;
  s.rel_tol = cfg.tol_rel;
  s.jet_order = cfg.jet_order.value_or(10);
  return s;
}

int sign_of(const RunConfig& cfg, const SpaceDescriptor& space) { return cfg.epsilon.value_or(space.default_epsilon); }

void print_report(const std::string& label, const ResidualReport& r) {
  std::cout << "[" << label << "]\n" << r.serialize();
}

int cmd_list() {
  for (const auto& s : catalog()) {
    const Interval& I = s.quotient_interval();
    const auto end = [](double x) { return std::isinf(x) ? std::string(x > 0 ? "inf" : "-inf") : fmt12(x); };
    std::cout << s.name << "  eps~=" << (s.epsilon_tilde > 0 ? "+1" : "-1") << "  h(s)=" << s.h_formula
              << "  I=(" << end(I.lo) << "," << end(I.hi) << ")  eps=" << (s.default_epsilon > 0 ? "+1" : "-1")
              << '\n';
  }
  return kOk;
}

int cmd_solve(const RunConfig& cfg, double gate) {
  const SpaceDescriptor space = lookup_space(cfg.space);
  const SignPair signs = space.signs(sign_of(cfg, space));
  const IntegrationSettings settings = settings_of(cfg);

  ProfileSolution sol;
  if (cfg.singular) {
    const SolitonProblem p = SolitonProblem::singular(signs, space.profile, *cfg.singular);
    if (cfg.range_begin < p.s0) throw Error(ErrorKind::ConfigError, "range starts before the pole of h");
    sol = integrate(p, cfg.range_end, settings);
  } else {
    const SolitonProblem p{signs, space.profile, cfg.s0, cfg.f0, cfg.f1, false};
    try {
      p.validate(settings.degeneracy_margin);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateStart) throw;
      std::cerr << "DegeneracyEvent at s=" << fmt12(cfg.s0) << " (" << e.what() << ")\n";
      return kEvent;
    }
    if (cfg.s0 < cfg.range_begin || cfg.s0 > cfg.range_end) throw Error(ErrorKind::ConfigError, "s0 outside range");
    sol = integrate_range(p, cfg.range_begin, cfg.range_end, settings);
  }

  if (!cfg.out.empty()) {
    const MeshFormat fmt = parse_mesh_format(cfg.format);
    write_file(cfg.out, fmt == MeshFormat::CSV ? export_profile_csv(sol)
                                               : export_mesh(single_graph(space, signs.epsilon, sol), fmt,
                                                             {cfg.angular, cfg.radial}));
  }
  std::cout << "space=" << space.name << "\nepsilon=" << signs.epsilon << "\ncausal=" << sol.causal_character()
            << "\ntermination=" << to_string(sol.termination().kind) << "\ns_end=" << fmt12(sol.s_end()) << '\n';
  const ResidualReport r = ode_residual(sol, signs, space.profile);
  print_report("ode_residual", r);
  if (sol.termination().kind != TerminationKind::ReachedEnd) {
    std::cerr << to_string(sol.termination().kind) << " at s=" << fmt12(sol.termination().s) << '\n';
    return kEvent;
  }
  return r.max_abs < gate ? kOk : kGate;
}

std::string branch_csv(const CatenoidBranch& b) {
  std::vector<StateNode> rows;
  for (const auto& n : b.inverse.nodes())
    if (n.v != 0) rows.push_back({n.x, n.t, 1.0 / n.v});  // the neck row has f' = infinity
  for (const auto& n : b.graph.nodes()) rows.push_back(n);
  std::sort(rows.begin(), rows.end(), [](const StateNode& a, const StateNode& c) { return a.t < c.t; });
  std::ostringstream os;
  os << "s,f,fprime\n";
  double last = -std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (r.t == last) continue;
    last = r.t;
    os << fmt12(r.t) << ',' << fmt12(r.x) << ',' << fmt12(r.v) << '\n';
  }
  return os.str();
}

int cmd_catenoid(const RunConfig& cfg, double gate) {
  const SpaceDescriptor space = lookup_space(cfg.space);
  const int eps = sign_of(cfg, space);
  CatenoidOptions opt;
  const SolitonSurface cat = make_catenoid(space, eps, cfg.s_neck, cfg.extent, opt);
  const NeckData& neck = *cat.neck;
  std::cout << "neck y0=" << fmt12(neck.y0) << " s_neck=" << fmt12(neck.s_neck)
            << " alpha''(y0)=" << fmt12(neck.alpha_second) << '\n';
  bool ok = true, event = false;
  for (const auto& b : cat.branches) {
    const ResidualReport g = ode_residual(b.graph, space.signs(eps), space.profile);
    const ResidualReport i = ode_residual(b.inverse, branch_system(space.signs(eps), space.profile));
    std::cout << "branch=" << b.name << " causal=" << b.graph.causal_character() << " s_switch=" << fmt12(b.s_switch)
              << " s_far=" << fmt12(b.s_far()) << " termination=" << to_string(b.graph.termination().kind) << '\n';
    print_report(b.name + ".graph", g);
    print_report(b.name + ".inverse", i);
    ok = ok && g.max_abs < gate && i.max_abs < gate;
    if (b.graph.termination().kind != TerminationKind::ReachedEnd) {
      std::cerr << b.name << ": " << to_string(b.graph.termination().kind) << " at s="
                << fmt12(b.graph.termination().s) << '\n';
      event = true;
    }
  }
  if (!cfg.out.empty()) {
    const MeshFormat fmt = parse_mesh_format(cfg.format);
    if (fmt == MeshFormat::OBJ) {
      write_file(cfg.out, export_mesh(cat, fmt, {cfg.angular, cfg.radial}));
    } else {
      std::string stem = cfg.out;
      if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") stem.resize(stem.size() - 4);
      for (const auto& b : cat.branches) write_file(stem + "_" + b.name + ".csv", branch_csv(b));
    }
  }
  if (event) return kEvent;
  return ok ? kOk : kGate;
}

int cmd_glue(const RunConfig& cfg, double gate) {
  const double a = cfg.singular.value_or(0.0);
  const std::size_t order = cfg.jet_order.value_or(12);
  GlueOptions opt;
  opt.quadrants = parse_quadrants(cfg.quadrants);
  IntegrationSettings settings = settings_of(cfg);
  SolitonSurface glued;
  try {
    glued = glue_boost(a, order, cfg.range_end, opt, settings);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::GlueMismatch) throw;
    const SpaceDescriptor o1 = boost_omega1(), o2 = boost_omega2();
    std::cout << certify_boost_jets(jet_at_pole(o1.signs(1), 1, order, Rational(a)),
                                    jet_at_pole(o2.signs(1), -1, order, Rational(a)))
                     .table();
    throw;
  }
  const SmoothnessReport& rep = *glued.smoothness;
  std::cout << rep.table();
  std::cout << "exact=" << (rep.exact_pass() ? "PASS" : "FAIL") << " cross_cone=" << (rep.numeric_pass() ? "PASS" : "FAIL")
            << '\n';
  bool ok = rep.pass();
  for (const auto& p : glued.pieces) {
    const SpaceDescriptor sp = p.chart == "sqrt(x^2-y^2)" ? boost_omega1() : boost_omega2();
    const ResidualReport r = ode_residual(*p.solution, sp.signs(1), sp.profile);
    print_report(p.region, r);
    ok = ok && r.max_abs < gate;
  }
  if (!cfg.out.empty())
    write_file(cfg.out, export_mesh(glued, parse_mesh_format(cfg.format), {cfg.angular, cfg.radial}));
  return ok ? kOk : kGate;
}

// u on a regular grid read back from "x,y,u" rows; NaN where a sample is missing.
struct GridSamples {
  double x0 = 0, y0 = 0, h = 0;
  std::map<std::pair<long, long>, double> values;

  double operator()(double x, double y) const {
    const auto it = values.find({std::lround((x - x0) / h), std::lround((y - y0) / h)});
    return it == values.end() ? std::nan("") : it->second;
  }
};

int cmd_verify(const RunConfig& cfg, double gate) {
  if (cfg.input.empty()) throw Error(ErrorKind::ConfigError, "verify needs --input");
  const CsvTable table = parse_csv(read_file(cfg.input));
  const SpaceDescriptor space = lookup_space(cfg.space);
  const int eps = sign_of(cfg, space);
  bool ok = true;
  if (table.header == std::vector<std::string>{"s", "f", "fprime"}) {
    const ProfileSolution sol = profile_from_csv(table, space.signs(eps), space.profile);
    if (cfg.oracle == "ode" || cfg.oracle == "all") {
      const ResidualReport r = ode_residual(sol, space.signs(eps), space.profile);
      print_report("ode_residual", r);
      ok = ok && r.max_abs < gate;
    }
    if (cfg.oracle == "hperturbed" || cfg.oracle == "all") {
      const ResidualReport r = h_perturbed_residual(sol, space.signs(eps), space.profile);
      print_report("h_perturbed_residual", r);
      ok = ok && r.max_abs < gate;
    }
    if (cfg.oracle == "pde") throw Error(ErrorKind::ConfigError, "the pde oracle needs x,y,u data");
  } else if (table.header == std::vector<std::string>{"x", "y", "u"}) {
    if (table.rows.size() < 25) throw Error(ErrorKind::TooFewNodes, "grid too small");
    GridSamples g;
    double x1 = -INFINITY, y1 = -INFINITY;
    g.x0 = g.y0 = INFINITY;
    std::vector<double> xs;
    for (const auto& r : table.rows) {
      g.x0 = std::min(g.x0, r[0]);
      g.y0 = std::min(g.y0, r[1]);
      x1 = std::max(x1, r[0]);
      y1 = std::max(y1, r[1]);
      xs.push_back(r[0]);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    g.h = (x1 - g.x0) / static_cast<double>(xs.size() - 1);
    for (const auto& r : table.rows) g.values[{std::lround((r[0] - g.x0) / g.h), std::lround((r[1] - g.y0) / g.h)}] = r[2];
    const GridChart chart =
        space.embedding == EmbeddingKind::BoostQuadrant ? GridChart::boost(eps) : GridChart::euclidean(eps);
    const ResidualReport r = pde_residual_grid(chart, g, {g.x0, x1, g.y0, y1, g.h}, cfg.threads);
    print_report("pde_residual_grid", r);
    // second-order stencils: the gate scales with the grid
    ok = r.max_abs < std::max(gate, 100 * g.h * g.h);
  } else {
    throw Error(ErrorKind::ConfigError, "unrecognized CSV header");
  }
  return ok ? kOk : kGate;
}

int cmd_export(const RunConfig& cfg) {
  if (cfg.input.empty()) throw Error(ErrorKind::ConfigError, "export needs --input");
  if (cfg.out.empty()) throw Error(ErrorKind::ConfigError, "export needs --out");
  const SpaceDescriptor space = lookup_space(cfg.space);
  const int eps = sign_of(cfg, space);
  const ProfileSolution sol = profile_from_csv(parse_csv(read_file(cfg.input)), space.signs(eps), space.profile);
  write_file(cfg.out, export_mesh(single_graph(space, eps, sol), parse_mesh_format(cfg.format),
                                  {cfg.angular, cfg.radial}));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Translating solitons of mean curvature flow in symmetric semi-Riemannian products"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "catalog of ambient spaces");
  auto* solve = app.add_subcommand("solve", "integrate a profile and check its residual");
  auto* catenoid = app.add_subcommand("catenoid", "two-ended soliton through a neck");
  auto* glue = app.add_subcommand("glue", "boost-invariant soliton glued across the light cone");
  auto* verify = app.add_subcommand("verify", "run residual oracles on exported data");
  auto* exportc = app.add_subcommand("export", "export a profile CSV as a mesh or resampled CSV");

  Flags solve_flags(solve), catenoid_flags(catenoid), glue_flags(glue), verify_flags(verify), export_flags(exportc);
  add_problem_flags(solve_flags);
  add_problem_flags(catenoid_flags);
  catenoid_flags.add("--s-neck", "s_neck", "neck abscissa").add("--extent", "extent", "branch extent from the neck");
  glue_flags.add("--singular", "singular", "value a on the light cone")
      .add("--jet-order", "jet_order", "certification order (default 12)")
      .add("--range", "range", "s_begin,s_end of the quadrant profiles")
      .add("--quadrants", "quadrants", "adjacent quadrants to glue, e.g. 1234 or 12")
      .add("--tol-abs", "tol_abs", "absolute tolerance")
      .add("--tol-rel", "tol_rel", "relative tolerance")
      .add("--out", "out", "output path")
      .add("--format", "format", "csv or obj")
      .add("--resolution", "resolution", "grid samples per axis, NxN");
  verify_flags.add("--input", "input", "CSV to check")
      .add("--space", "space", "space id")
      .add("--epsilon", "epsilon", "sign of dt^2")
      .add("--oracle", "oracle", "ode, hperturbed, pde or all")
      .add("--threads", "threads", "worker threads for grid checks");
  export_flags.add("--input", "input", "profile CSV")
      .add("--space", "space", "space id")
      .add("--epsilon", "epsilon", "sign of dt^2")
      .add("--out", "out", "output path")
      .add("--format", "format", "csv or obj")
      .add("--resolution", "resolution", "angular x radial samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    const double gate = verification_gate();
    if (*list) return cmd_list();
    if (*solve) return cmd_solve(solve_flags.resolve(), gate);
    if (*catenoid) return cmd_catenoid(catenoid_flags.resolve(), gate);
    if (*glue) return cmd_glue(glue_flags.resolve(), gate);
    if (*verify) return cmd_verify(verify_flags.resolve(), gate);
    if (*exportc) return cmd_export(export_flags.resolve());
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kConfig;
}
