#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli() { return NETCURV_CLI_PATH; }

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "netcurv_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string(cli()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string run_capture(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const std::string cmd = std::string(cli()) + " " + args + " > " + out.string() + " 2>/dev/null";
  if (std::system(cmd.c_str()) == -1) return {};
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("cli: generate then validate") {
  const fs::path g = work_dir() / "theta.json";
  CHECK(run("generate --example standard_theta --n 64 --out " + g.string()) == 0);
  CHECK(fs::exists(g));
  CHECK(run("validate --in " + g.string()) == 0);

  const std::string line = run_capture("validate --in " + g.string());
  CHECK(line.find("valid:") != std::string::npos);
}

TEST_CASE("cli: curvature summary and reports") {
  const fs::path g = work_dir() / "butterfly.json";
  REQUIRE(run("generate --example butterfly --out " + g.string()) == 0);
  const fs::path rep = work_dir() / "report.json";
  const fs::path csv = work_dir() / "report.csv";
  CHECK(run("curvature --in " + g.string() + " --method exact --out " + rep.string() + " --csv " +
            csv.string()) == 0);
  const std::string line = run_capture("curvature --in " + g.string() + " --method exact");
  CHECK(line.find("N = 13.853372831945741") != std::string::npos);
  CHECK(slurp(rep).find("\"N\":13.853372831945741") != std::string::npos);
  CHECK(slurp(csv).find("vertex,valence,nc,tc,mc,method") == 0);
}

TEST_CASE("cli: mu single direction and lattice") {
  const fs::path g = work_dir() / "b.json";
  REQUIRE(run("generate --example butterfly --out " + g.string()) == 0);
  const std::string line = run_capture("mu --in " + g.string() + " --direction 0.0171,1,0.0093");
  CHECK(line.find("mu = 5/2") != std::string::npos);

  const fs::path map = work_dir() / "map.csv";
  CHECK(run("mu --in " + g.string() + " --lattice 200 --out " + map.string()) == 0);
  CHECK(slurp(map).find("x,y,z,mu_doubled,flag") == 0);
}

TEST_CASE("cli: verify-thm1 passes on a generated example") {
  const fs::path g = work_dir() / "t.json";
  REQUIRE(run("generate --example standard_theta --n 32 --out " + g.string()) == 0);
  const std::string line =
      run_capture("--seed 7 verify-thm1 --in " + g.string() + " --samples 50000");
  CHECK(line.find("PASS") != std::string::npos);
}

TEST_CASE("cli: double with and without enumeration") {
  const fs::path g = work_dir() / "t2.json";
  REQUIRE(run("generate --example standard_theta --n 16 --out " + g.string()) == 0);
  const std::string euler = run_capture("double --in " + g.string());
  CHECK(euler.find("euler circuit:") != std::string::npos);
  const std::string min = run_capture("double --in " + g.string() + " --enumerate");
  CHECK(min.find("min half curvature") != std::string::npos);
}

TEST_CASE("cli: refine on a built-in parametric graph") {
  const fs::path csv = work_dir() / "levels.csv";
  CHECK(run("refine --parametric circle_diameter_theta --levels 6 --out " + csv.string()) == 0);
  CHECK(slurp(csv).find("level,vertex_count,N") == 0);
}

TEST_CASE("cli: refine re-inscribes a polygonal input") {
  const fs::path g = work_dir() / "poly.json";
  REQUIRE(run("generate --example convex_polygon --n 12 --out " + g.string()) == 0);
  const std::string line = run_capture("refine --in " + g.string() + " --levels 3 --stdout");
  CHECK(line.find("level,vertex_count,N") != std::string::npos);
}

TEST_CASE("cli: --stdout routes the machine report to stdout") {
  const fs::path g = work_dir() / "s.json";
  REQUIRE(run("generate --example butterfly --out " + g.string()) == 0);
  const std::string out = run_capture("--stdout curvature --in " + g.string());
  CHECK(out.find("\"Ctot_lower_bound\":") != std::string::npos);
  const std::string quad =
      run_capture("--seed 4 curvature --in " + g.string() + " --method quadrature --samples 20000");
  CHECK(quad.find("(quadrature)") != std::string::npos);
}

TEST_CASE("cli: theta-check") {
  const fs::path g = work_dir() / "t3.json";
  REQUIRE(run("generate --example standard_theta --n 64 --out " + g.string()) == 0);
  const std::string line = run_capture("--seed 3 theta-check --in " + g.string() + " --samples 500");
  CHECK(line.find("3pi bound ok") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  SUBCASE("usage error is 64") {
    CHECK(run("no-such-command") == 64);
    CHECK(run("curvature") == 64);  // missing --in
  }
  SUBCASE("validation error is 1") {
    const fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << "{\"vertices\":[{\"id\":\"a\",\"p\":[0,0,0]},{\"id\":\"b\",\"p\":[1,0,0]}],"
                          "\"edges\":[]}";
    CHECK(run("validate --in " + bad.string()) == 1);
    const fs::path garbled = work_dir() / "garbled.json";
    std::ofstream(garbled) << "{nope";
    CHECK(run("validate --in " + garbled.string()) == 1);
  }
  SUBCASE("computation error is 2") {
    const fs::path g = work_dir() / "star7.json";
    REQUIRE(run("generate --example coplanar_star --d 7 --out " + g.string()) == 0);
    CHECK(run("double --in " + g.string() + " --enumerate") == 2);
  }
  SUBCASE("precondition failures on the input graph are 1") {
    const fs::path g = work_dir() / "nottheta.json";
    REQUIRE(run("generate --example butterfly --out " + g.string()) == 0);
    CHECK(run("theta-check --in " + g.string() + " --samples 100") == 1);
  }
}

TEST_CASE("cli: same argv and seed give byte-identical reports") {
  const fs::path g = work_dir() / "det.json";
  REQUIRE(run("generate --example butterfly --out " + g.string()) == 0);
  const fs::path r1 = work_dir() / "r1.json";
  const fs::path r2 = work_dir() / "r2.json";
  REQUIRE(run("--seed 42 --threads 1 verify-thm1 --in " + g.string() + " --samples 20000 --out " +
              r1.string()) == 0);
  REQUIRE(run("--seed 42 --threads 4 verify-thm1 --in " + g.string() + " --samples 20000 --out " +
              r2.string()) == 0);
  const std::string a = slurp(r1), b = slurp(r2);
  CHECK(!a.empty());
  CHECK(a == b);  // thread count must not change the bytes

  // generated graphs are canonical too
  const fs::path g2 = work_dir() / "det2.json";
  REQUIRE(run("generate --example butterfly --out " + g2.string()) == 0);
  CHECK(slurp(g) == slurp(g2));
}
