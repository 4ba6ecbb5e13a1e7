#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "soliton/config.hpp"
#include "soliton/error.hpp"

using namespace soliton;

namespace {

bool config_error(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::ConfigError;
  }
  return false;
}

}  // namespace

TEST_CASE("defaults round-trip") {
  const RunConfig d;
  CHECK(d.singular == 0.0);
  CHECK(d.tol_abs == 1e-10);
  CHECK(d.tol_rel == 1e-8);
  CHECK(RunConfig::parse(d.serialize()) == d);
}

TEST_CASE("every key round-trips exactly") {
  RunConfig c;
  c.set("space", "desitter:n=3");
  c.set("epsilon", "-1");
  c.set("initial", "0.1, 0.30000000000000004, -0.7");
  c.set("range", "-20,20");
  c.set("tol_abs", "1e-12");
  c.set("tol_rel", "3e-11");
  c.set("jet_order", "14");
  c.set("out", "run/profile.csv");
  c.set("format", "obj");
  c.set("threads", "8");
  c.set("s_neck", "2.5");
  c.set("extent", "0.75");
  c.set("quadrants", "234");
  c.set("input", "data.csv");
  c.set("oracle", "all");
  c.set("resolution", "96x32");
  CHECK_FALSE(c.singular);
  CHECK(c.f0 == 0.30000000000000004);
  CHECK(c.range_begin == -20);
  CHECK(c.angular == 96);
  CHECK(c.radial == 32);
  const RunConfig back = RunConfig::parse(c.serialize());
  CHECK(back == c);
  CHECK(back.serialize() == c.serialize());
}

TEST_CASE("singular starts") {
  RunConfig c;
  c.set("initial", "singular:a=0.25");
  CHECK(c.singular == 0.25);
  c.set("initial", "singular:-1.5");
  CHECK(c.singular == -1.5);
  CHECK(RunConfig::parse(c.serialize()) == c);
}

TEST_CASE("comments, blanks and bad input") {
  const RunConfig c = RunConfig::parse("# a run\n\n  space = hyperbolic:n=2 \nrange=0,20\n");
  CHECK(c.space == "hyperbolic:n=2");
  CHECK(c.range_end == 20);

  RunConfig x;
  CHECK(config_error([&] { x.set("colour", "red"); }));
  CHECK(config_error([&] { x.set("epsilon", "2"); }));
  CHECK(config_error([&] { x.set("epsilon", "1.0"); }));
  CHECK(config_error([&] { x.set("range", "5,1"); }));
  CHECK(config_error([&] { x.set("range", "5"); }));
  CHECK(config_error([&] { x.set("tol_abs", "-1e-3"); }));
  CHECK(config_error([&] { x.set("tol_rel", "abc"); }));
  CHECK(config_error([&] { x.set("jet_order", "4"); }));
  CHECK(config_error([&] { x.set("format", "stl"); }));
  CHECK(config_error([&] { x.set("threads", "0"); }));
  CHECK(config_error([&] { x.set("initial", "1,2"); }));
  CHECK(config_error([&] { x.set("oracle", "eyeball"); }));
  CHECK(config_error([&] { x.set("resolution", "64"); }));
  CHECK(config_error([] { RunConfig::parse("space\n"); }));
  CHECK(config_error([] { load_config("/nonexistent/soliton.cfg"); }));
}

TEST_CASE("load_config reads a file") {
  const std::string path = "test_config_roundtrip.cfg";
  RunConfig c;
  c.set("space", "boost:omega2");
  c.set("tol_abs", "1e-11");
  {
    std::ofstream out(path);
    out << c.serialize();
  }
  CHECK(load_config(path) == c);
  std::remove(path.c_str());
}
