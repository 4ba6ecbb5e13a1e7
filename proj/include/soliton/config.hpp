#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace soliton {

/// Flat key=value run description shared by the config file and the CLI flags.
///
///   space = euclidean:n=2
///   epsilon = 1
///   initial = singular:0        (or "singular:a=0", or "s0,f0,f1")
///   range = 0,5
///   tol_abs = 1e-10
///   tol_rel = 1e-08
///   jet_order = 10   (unset: 10 for profiles, 12 for boost gluing)
///   out = profile.csv
///   format = csv
///
/// Lines starting with '#' and blank lines are ignored.
struct RunConfig {
  std::string space = "euclidean:n=2";
  std::optional<int> epsilon;  ///< defaults to the space's canonical sign
  std::optional<double> singular = 0.0;  ///< start on the pole with f = value; unset for (s0, f0, f1)
  double s0 = 0, f0 = 0, f1 = 0;
  double range_begin = 0, range_end = 5;
  double tol_abs = 1e-10, tol_rel = 1e-8;
  std::optional<std::size_t> jet_order;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;

  // command-specific
  double s_neck = 1;
  double extent = 4;
  std::string quadrants = "1234";
  std::string input;
  std::string oracle = "ode";
  std::size_t angular = 64, radial = 64;

  /// Applies one key=value pair; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);

  static RunConfig parse(const std::string& text);
  /// Every key, one per line, in a fixed order; doubles at 17 digits so that
  /// parse(serialize()) reproduces the config exactly.
  std::string serialize() const;

  bool operator==(const RunConfig&) const = default;
};

/// Reads a config file; ConfigError if it cannot be opened.
RunConfig load_config(const std::string& path);

}  // namespace soliton
