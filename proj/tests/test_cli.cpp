// Drives the soliton_forge binary end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "soliton_forge_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run forge(const std::string& args, const std::string& env = "") {
  const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = "cd '" + workdir().string() + "' && " + env + " '" SOLITON_FORGE_PATH "' " + args + " > '" +
                          out.string() + "' 2> '" + err.string() + "'";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::size_t lines_starting(const std::string& text, const std::string& prefix) {
  std::istringstream is(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

double report_value(const std::string& text, const std::string& key) {
  const auto at = text.find("\n" + key + "=");
  REQUIRE(at != std::string::npos);
  return std::stod(text.substr(at + key.size() + 2));
}

}  // namespace

TEST_CASE("list") {
  const Run r = forge("list");
  CHECK(r.code == 0);
  CHECK(r.out.find("euclidean:n=2") != std::string::npos);
  CHECK(r.out.find("(n-1)/s") != std::string::npos);
  CHECK(r.out.find("boost:omega2") != std::string::npos);
}

TEST_CASE("solve: success, events and gate") {
  Run r = forge("solve --space euclidean:n=2 --singular 0 --out bowl.csv");
  CHECK(r.code == 0);
  CHECK(report_value(r.out, "max_abs") < 1e-8);
  const std::string csv = slurp(workdir() / "bowl.csv");
  CHECK(csv.rfind("s,f,fprime\n", 0) == 0);

  r = forge("solve --space desitter:n=2 --epsilon 1 --s0 0 --f0 0 --f1 0 --range=-20,20");
  CHECK(r.code == 0);
  CHECK(r.out.find("termination=ReachedEnd") != std::string::npos);

  r = forge("solve --space desitter:n=2 --epsilon 1 --s0 0 --f1 1");
  CHECK(r.code == 3);
  CHECK(r.err.find("DegeneracyEvent") != std::string::npos);

  r = forge("solve --space minkowski:n=2 --range 0,30");
  CHECK(r.code == 3);
  CHECK(r.err.find("DegeneracyEvent") != std::string::npos);

  r = forge("solve --space euclidean:n=2", "SOLITON_FORGE_TOL=1e-13");
  CHECK(r.code == 4);
  r = forge("solve --space euclidean:n=2", "SOLITON_FORGE_TOL=nonsense");
  CHECK(r.code == 2);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(forge("solve --space nowhere:n=2").code == 2);
  CHECK(forge("solve --epsilon 3").code == 2);
  CHECK(forge("solve --range 5,1").code == 2);
  CHECK(forge("solve --no-such-flag").code == 2);
  CHECK(forge("solve --config missing.cfg").code == 2);
  CHECK(forge("solve --singular 0 --f1 0.5").code == 2);
  CHECK(forge("").code == 2);
  const Run r = forge("solve --space nowhere:n=2");
  CHECK(r.err.find("UnknownSpace") != std::string::npos);
}

TEST_CASE("config file with flag overrides") {
  {
    std::ofstream cfg(workdir() / "run.cfg");
    cfg << "# hyperbolic run\nspace=hyperbolic:n=2\nrange=0,20\nout=from_config.csv\n";
  }
  Run r = forge("solve --config run.cfg");
  CHECK(r.code == 0);
  CHECK(r.out.find("space=hyperbolic:n=2") != std::string::npos);
  CHECK(fs::exists(workdir() / "from_config.csv"));
  r = forge("solve --config run.cfg --space euclidean:n=3 --range 0,4");
  CHECK(r.code == 0);
  CHECK(r.out.find("space=euclidean:n=3") != std::string::npos);
  CHECK(r.out.find("s_end=4\n") != std::string::npos);
}

TEST_CASE("determinism") {
  const Run a = forge("solve --space boost:omega2 --range 0,6 --out d1.csv");
  const Run b = forge("solve --space boost:omega2 --range 0,6 --out d2.csv --threads 4");
  CHECK(a.out == b.out);
  CHECK(slurp(workdir() / "d1.csv") == slurp(workdir() / "d2.csv"));
}

TEST_CASE("catenoid") {
  Run r = forge("catenoid --space euclidean:n=2 --s-neck 1 --out cat");
  CHECK(r.code == 0);
  CHECK(r.out.find("alpha''(y0)=1\n") != std::string::npos);
  CHECK(r.out.find("y0=0") != std::string::npos);
  for (const char* name : {"cat_upper.csv", "cat_lower.csv"}) {
    const std::string csv = slurp(workdir() / name);
    CHECK(csv.rfind("s,f,fprime\n", 0) == 0);
    CHECK(lines_starting(csv, "1") > 10);
  }
  r = forge("catenoid --space minkowski:n=2 --s-neck 1 --extent 0.99 --format obj --out mk.obj");
  CHECK(r.code == 0);
  CHECK(lines_starting(slurp(workdir() / "mk.obj"), "v ") == 2 * 64 * 64);
  CHECK(forge("catenoid --space desitter:n=2 --s-neck 0").code == 2);
}

TEST_CASE("glue") {
  Run r = forge("glue");
  CHECK(r.code == 0);
  CHECK(r.out.find("a12(f1)=a12(f2)") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(lines_starting(r.out, "d") == 4);

  r = forge("glue --quadrants 12 --range 0,2 --resolution 21x21 --out glue.csv");
  CHECK(r.code == 0);
  const std::string csv = slurp(workdir() / "glue.csv");
  CHECK(csv.rfind("x,y,u\n", 0) == 0);
  CHECK(forge("glue --quadrants 13").code == 2);
}

TEST_CASE("verify and detection of corrupted data") {
  REQUIRE(forge("solve --space euclidean:n=2 --out good.csv").code == 0);
  Run r = forge("verify --input good.csv --space euclidean:n=2 --oracle all");
  CHECK(r.code == 0);
  CHECK(r.out.find("[h_perturbed_residual]") != std::string::npos);

  // shift f' on one row by 1e-3
  std::istringstream is(slurp(workdir() / "good.csv"));
  std::ostringstream os;
  std::string line;
  int row = 0;
  while (std::getline(is, line)) {
    if (row++ == 50) {
      const auto c = line.rfind(',');
      const double fp = std::stod(line.substr(c + 1)) + 1e-3;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.12g", fp);
      line = line.substr(0, c + 1) + buf;
    }
    os << line << '\n';
  }
  {
    std::ofstream out(workdir() / "bad.csv");
    out << os.str();
  }
  r = forge("verify --input bad.csv --space euclidean:n=2");
  CHECK(r.code == 4);
  CHECK(report_value(r.out, "max_abs") > 1e-4);

  REQUIRE(forge("glue --range 0,3 --resolution 81x81 --out grid.csv").code == 0);
  r = forge("verify --input grid.csv --space boost:omega1 --oracle pde --threads 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("h_grid=0.075") != std::string::npos);

  CHECK(forge("verify --input nowhere.csv").code == 2);
}

TEST_CASE("export") {
  REQUIRE(forge("solve --space euclidean:n=2 --out e2.csv").code == 0);
  Run r = forge("export --input e2.csv --space euclidean:n=2 --format obj --resolution 4x3 --out e2.obj");
  CHECK(r.code == 0);
  const std::string obj = slurp(workdir() / "e2.obj");
  CHECK(lines_starting(obj, "v ") == 12);
  CHECK(lines_starting(obj, "f ") == 16);

  REQUIRE(forge("solve --space euclidean:n=3 --out e3.csv").code == 0);
  r = forge("export --input e3.csv --space euclidean:n=3 --format obj --out e3.obj");
  CHECK(r.code == 2);
  CHECK(r.err.find("NoEmbedding") != std::string::npos);
}
