#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(PLAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("reference constants for the disk") {
    const fs::path dir = fs::temp_directory_path() / "plap_cli_ref";
    fs::remove_all(dir);
    REQUIRE(run_cli("reference --domain disk --out " + dir.string()) == 0);
    const std::string csv = slurp(dir / "reference.csv");
    CHECK(csv.find("constant,value") == 0);
    CHECK(csv.find("h1,2\n") != std::string::npos);
    CHECK(csv.find("h2,3.1543") != std::string::npos);
    CHECK(csv.find("Lambda1,1\n") != std::string::npos);
    CHECK(csv.find("Lambda2,2\n") != std::string::npos);
    CHECK(csv.find("h2_rad,4") != std::string::npos);
    CHECK(csv.find("Lambda2_rad,3") != std::string::npos);
    CHECK(fs::exists(dir / "manifest.json"));
  }

  TEST_CASE("empty p list writes a header-only table") {
    const fs::path dir = fs::temp_directory_path() / "plap_cli_empty";
    fs::remove_all(dir);
    REQUIRE(run_cli("sweep --domain square --triangles 64 --out " + dir.string()) == 0);
    CHECK(slurp(dir / "eigenvalues.csv") == "p,lambda1,lambda2\n");
  }

  TEST_CASE("sweep determinism and manifest completeness") {
    const fs::path d1 = fs::temp_directory_path() / "plap_cli_d1";
    const fs::path d2 = fs::temp_directory_path() / "plap_cli_d2";
    fs::remove_all(d1);
    fs::remove_all(d2);
    const std::string base =
        "sweep --domain square --triangles 512 --p 2 --dt0 1.0 --w-tol-cmpa 5e-3 --out ";
    REQUIRE(run_cli(base + d1.string()) == 0);
    REQUIRE(run_cli(base + d2.string() + " --threads 2") == 0);
    CHECK(slurp(d1 / "eigenvalues.csv") == slurp(d2 / "eigenvalues.csv"));
    CHECK(!slurp(d1 / "eigenvalues.csv").empty());

    // Every emitted file appears in the manifest.
    const std::string manifest = slurp(d1 / "manifest.json");
    for (const auto& entry : fs::directory_iterator(d1)) {
      CHECK(manifest.find(entry.path().filename().string()) != std::string::npos);
    }
  }

  TEST_CASE("config file provides defaults and flags win") {
    const fs::path dir = fs::temp_directory_path() / "plap_cli_cfg";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.json";
    {
      std::ofstream os(cfg);
      os << R"({"domain": "square", "p": [2.0], "triangles": 128, "dt0": 1.0, "out": ")"
         << (dir / "outA").string() << R"("})";
    }
    REQUIRE(run_cli("first --config " + cfg.string()) == 0);
    CHECK(fs::exists(dir / "outA" / "eigenvalues.csv"));
    // Flag overrides the config's output directory.
    REQUIRE(run_cli("first --config " + cfg.string() + " --out " + (dir / "outB").string()) == 0);
    CHECK(fs::exists(dir / "outB" / "eigenvalues.csv"));
  }

  TEST_CASE("out-of-range p is rejected") {
    const fs::path dir = fs::temp_directory_path() / "plap_cli_range";
    CHECK(run_cli("first --domain square --triangles 64 --p 0.9 --out " + dir.string()) != 0);
  }
}
