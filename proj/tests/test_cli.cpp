#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr folded into stdout.
Result cli(const std::string& args) {
  const std::string cmd = std::string(MESHLAB_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("meshlab_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("routes prints both center sums") {
    const auto r = cli("routes --scenario center-v1 --k 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("222.0656") != std::string::npos);
    CHECK(r.out.find("308.3401") != std::string::npos);
  }

  TEST_CASE("routes on the corner network annotates the printed erratum") {
    const auto r = cli("routes --scenario corner-v1 --k 2");
    CHECK(r.code == 0);
    CHECK(r.out.find("423.6068") != std::string::npos);
    CHECK(r.out.find("473.081") != std::string::npos);
    CHECK(r.out.find("653.8844") != std::string::npos);
  }

  TEST_CASE("neighbors prints the full-charge table") {
    const auto r = cli("neighbors --scenario center-v1");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("NODE", 0) == 0);
    CHECK(r.out.find("180.2776") != std::string::npos);
  }

  TEST_CASE("run twice writes byte-identical directories") {
    const auto a = scratch("run_a"), b = scratch("run_b");
    CHECK(cli("run --scenario center-v1 --out " + a.string()).code == 0);
    CHECK(cli("run --scenario center-v1 --out " + b.string()).code == 0);
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
      ++files;
      CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    }
    CHECK(files == 6);
  }

  TEST_CASE("MESHLAB_OUT sets the default output directory") {
    const auto dir = scratch("env");
    const std::string cmd = "env MESHLAB_OUT=" + dir.string() + " " + MESHLAB_CLI +
                            " run --scenario corner-v1 > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir / "summary.json"));
  }

  TEST_CASE("compare lists center first") {
    const auto r = cli("compare --scenarios corner-v1,center-v1");
    CHECK(r.code == 0);
    const auto c = r.out.find("222.0656"), k = r.out.find("423.6068");
    REQUIRE(c != std::string::npos);
    REQUIRE(k != std::string::npos);
    CHECK(c < k);
  }

  TEST_CASE("energy-map prints percentages") {
    const auto r = cli("energy-map --scenario center-v2");
    CHECK(r.code == 0);
    CHECK(r.out.find("1.3383") != std::string::npos);
  }

  TEST_CASE("fit-layout writes a layout") {
    const auto dir = scratch("fit");
    const auto csv = dir / "c.csv";
    std::ofstream(csv) << "node_a,node_b,distance_m\n1,2,50\n";
    const auto r = cli("fit-layout --constraints " + csv.string() + " --routers 1 --out " + (dir / "l.json").string());
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "l.json"));
  }

  TEST_CASE("usage errors exit 1 with usage text") {
    auto r = cli("routes --scenario center-v1 --bogus");
    CHECK(r.code == 1);
    CHECK(r.out.find("--scenario") != std::string::npos);
    CHECK(cli("").code == 1);
    CHECK(cli("routes").code == 1);
    CHECK(cli("routes --scenario center-v1 --k 0").code == 1);
    CHECK(cli("frobnicate").code == 1);
    CHECK(cli("fit-layout --constraints x.csv --out y.json --anchor nope").code == 1);
  }

  TEST_CASE("domain errors exit 2 and name the error") {
    const auto dir = scratch("errors");

    const auto unroutable = dir / "far.json";
    std::ofstream(unroutable) << R"({"area_side":600,"radio_range":185,"nodes":[)"
                              << R"({"id":1,"role":"coordinator","x":0,"y":0},)"
                              << R"({"id":2,"role":"end_device","x":500,"y":500}]})";
    std::ofstream(dir / "s.json") << R"({"label":"far","layout_file":"far.json","src":1,"dst":2})";
    auto r = cli("routes --scenario " + (dir / "s.json").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("NoRoute") != std::string::npos);

    std::ofstream(dir / "c.csv") << "1,2,10\n2,3,10\n1,3,50\n";
    r = cli("fit-layout --constraints " + (dir / "c.csv").string() + " --out " + (dir / "l.json").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("NoFeasibleLayout") != std::string::npos);

    std::ofstream(dir / "forced.json") << R"({"label":"x","layout_file":")"
                                       << (fs::path(MESHLAB_DATA) / "layouts" / "center.json").string()
                                       << R"(","src":1,"dst":8,"config":{"k_routes":1},"forced_depletions":[)"
                                       << R"({"tick":5,"node":2},{"tick":5,"node":3},{"tick":5,"node":4},)"
                                       << R"({"tick":5,"node":5},{"tick":5,"node":6},{"tick":5,"node":7}]})";
    r = cli("run --scenario " + (dir / "forced.json").string() + " --out " + (dir / "out").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("AllRoutesDepleted") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "summary.json"));

    r = cli("routes --scenario " + (dir / "missing.json").string());
    CHECK(r.code == 2);
  }
}
