#include "soliton/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "soliton/error.hpp"

namespace soliton {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_number(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) throw Error(ErrorKind::ConfigError, key + ": not a number: '" + v + "'");
  return x;
}

long to_integer(const std::string& key, const std::string& v) {
  long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigError, key + ": not an integer: '" + v + "'");
  return x;
}

std::pair<double, double> to_pair(const std::string& key, const std::string& v) {
  const auto comma = v.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::ConfigError, key + ": expected 'a,b'");
  return {to_number(key, trim(v.substr(0, comma))), to_number(key, trim(v.substr(comma + 1)))};
}

std::string exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "space") {
    if (v.empty()) throw Error(ErrorKind::ConfigError, "space: empty");
    space = v;
  } else if (key == "epsilon") {
    const long e = to_integer(key, v);
    if (e != 1 && e != -1) throw Error(ErrorKind::ConfigError, "epsilon must be 1 or -1");
    epsilon = static_cast<int>(e);
  } else if (key == "initial") {
    if (v.rfind("singular:", 0) == 0) {
      std::string a = trim(v.substr(9));
      if (a.rfind("a=", 0) == 0) a = a.substr(2);
      singular = to_number(key, a);
    } else {
      std::istringstream is(v);
      std::string a, b, c;
      if (!std::getline(is, a, ',') || !std::getline(is, b, ',') || !std::getline(is, c))
        throw Error(ErrorKind::ConfigError, "initial: expected 'singular:a' or 's0,f0,f1'");
      s0 = to_number(key, trim(a));
      f0 = to_number(key, trim(b));
      f1 = to_number(key, trim(c));
      singular.reset();
    }
  } else if (key == "range") {
    std::tie(range_begin, range_end) = to_pair(key, v);
    if (!(range_end > range_begin)) throw Error(ErrorKind::ConfigError, "range: need begin < end");
  } else if (key == "tol_abs" || key == "tol_rel") {
    const double t = to_number(key, v);
    if (!(t > 0)) throw Error(ErrorKind::ConfigError, key + " must be positive");
    (key == "tol_abs" ? tol_abs : tol_rel) = t;
  } else if (key == "jet_order") {
    const long m = to_integer(key, v);
    if (m < 6 || m > 64) throw Error(ErrorKind::ConfigError, "jet_order must be in [6, 64]");
    jet_order = static_cast<std::size_t>(m);
  } else if (key == "out") {
    out = v;
  } else if (key == "format") {
    if (v != "csv" && v != "obj") throw Error(ErrorKind::ConfigError, "format must be csv or obj");
    format = v;
  } else if (key == "threads") {
    const long t = to_integer(key, v);
    if (t < 1) throw Error(ErrorKind::ConfigError, "threads must be >= 1");
    threads = static_cast<unsigned>(t);
  } else if (key == "s_neck") {
    s_neck = to_number(key, v);
  } else if (key == "extent") {
    extent = to_number(key, v);
    if (!(extent > 0)) throw Error(ErrorKind::ConfigError, "extent must be positive");
  } else if (key == "quadrants") {
    quadrants = v;
  } else if (key == "input") {
    input = v;
  } else if (key == "oracle") {
    if (v != "ode" && v != "hperturbed" && v != "pde" && v != "all")
      throw Error(ErrorKind::ConfigError, "oracle must be ode, hperturbed, pde or all");
    oracle = v;
  } else if (key == "resolution") {
    const auto x = v.find('x');
    if (x == std::string::npos) throw Error(ErrorKind::ConfigError, "resolution: expected 'AxR'");
    const long a = to_integer(key, v.substr(0, x)), r = to_integer(key, v.substr(x + 1));
    if (a < 2 || r < 2) throw Error(ErrorKind::ConfigError, "resolution needs at least 2x2 samples");
    angular = static_cast<std::size_t>(a);
    radial = static_cast<std::size_t>(r);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown key '" + key + "'");
  }
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig c;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigError, "line " + std::to_string(lineno) + ": expected key=value");
    c.set(trim(t.substr(0, eq)), t.substr(eq + 1));
  }
  return c;
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "space=" << space << '\n';
  if (epsilon) os << "epsilon=" << *epsilon << '\n';
  if (singular)
    os << "initial=singular:" << exact(*singular) << '\n';
  else
    os << "initial=" << exact(s0) << ',' << exact(f0) << ',' << exact(f1) << '\n';
  os << "range=" << exact(range_begin) << ',' << exact(range_end) << '\n';
  os << "tol_abs=" << exact(tol_abs) << '\n';
  os << "tol_rel=" << exact(tol_rel) << '\n';
  if (jet_order) os << "jet_order=" << *jet_order << '\n';
  if (!out.empty()) os << "out=" << out << '\n';
  os << "format=" << format << '\n';
  os << "threads=" << threads << '\n';
  os << "s_neck=" << exact(s_neck) << '\n';
  os << "extent=" << exact(extent) << '\n';
  os << "quadrants=" << quadrants << '\n';
  if (!input.empty()) os << "input=" << input << '\n';
  os << "oracle=" << oracle << '\n';
  os << "resolution=" << angular << 'x' << radial << '\n';
  return os.str();
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return RunConfig::parse(ss.str());
}

}  // namespace soliton
