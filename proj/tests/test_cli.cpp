#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

#ifndef STABLECERT_BIN
#error "STABLECERT_BIN must point at the CLI binary"
#endif

int run(const std::string& args) {
  const std::string cmd =
      std::string(STABLECERT_BIN) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

struct TempDir {
  fs::path p;
  TempDir() {
    p = fs::temp_directory_path() /
        ("stablecert_test_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter()++));
    fs::create_directories(p);
  }
  ~TempDir() { fs::remove_all(p); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

fs::path write_source(const fs::path& dir, const char* name,
                      const char* body) {
  fs::path f = dir / name;
  std::ofstream(f) << body;
  return f;
}

std::string slurp(const fs::path& f) {
  std::ifstream in(f, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path only_json(const fs::path& dir) {
  fs::path found;
  for (auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.path().extension() == ".json") {
      REQUIRE(found.empty());
      found = e.path();
    }
  }
  REQUIRE(!found.empty());
  return found;
}

}  // namespace

TEST_CASE("configuration errors exit with code 2") {
  TempDir d;
  CHECK(run("pdf --alpha 3.0 --out " + d.p.string()) == 2);
  CHECK(run("pdf --alpha 0 --out " + d.p.string()) == 2);
  CHECK(run("entropy --alpha 1.0 --source /no/such/file.json --out " +
            d.p.string()) == 2);
  CHECK(run("definitely-not-a-command") == 2);
  auto bad = write_source(d.p, "bad.json", "{\"kind\": \"nope\"}");
  CHECK(run("entropy --alpha 1.0 --source " + bad.string() + " --out " +
            d.p.string()) == 2);
}

TEST_CASE("help exits cleanly") {
  CHECK(run("--help") == 0);
  CHECK(run("pdf --help") == 0);
}

TEST_CASE("debruijn run writes a passing report for the pure Cauchy flow") {
  TempDir d;
  auto src = write_source(d.p, "atom.json",
                          R"({"kind":"atoms","atoms":[[0.0,1.0]]})");
  const std::string out = (d.p / "out").string();
  CHECK(run("debruijn --alpha 1.0 --eta 1.0 --source " + src.string() +
            " --out " + out) == 0);
  auto rep = json::parse(slurp(only_json(d.p / "out")));
  CHECK(rep["report"]["J_identity"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(rep["pass"].get<bool>());
  CHECK(rep.contains("bound_id"));
}

TEST_CASE("report files are byte identical across reruns") {
  TempDir d;
  auto src = write_source(d.p, "two.json",
                          R"({"kind":"atoms","atoms":[[-1.0,0.5],[1.0,0.5]]})");
  const std::string o1 = (d.p / "o1").string(), o2 = (d.p / "o2").string();
  CHECK(run("entropy --alpha 1.2 --eta 1.0 --source " + src.string() +
            " --out " + o1) == 0);
  CHECK(run("entropy --alpha 1.2 --eta 1.0 --source " + src.string() +
            " --out " + o2) == 0);
  CHECK(slurp(only_json(d.p / "o1")) == slurp(only_json(d.p / "o2")));
}

TEST_CASE("certify-all passes end to end") {
  TempDir d;
  auto src = write_source(d.p, "two.json",
                          R"({"kind":"atoms","atoms":[[-1.0,0.5],[1.0,0.5]]})");
  const std::string out = (d.p / "out").string();
  CHECK(run("certify-all --alpha 1.2 --b 0.5 --source " + src.string() +
            " --out " + out) == 0);
  auto j = json::parse(slurp(only_json(d.p / "out")));
  CHECK(j["pass"].get<bool>());
  CHECK(j["domination"]["pass"].get<bool>());
  CHECK(j["domination"]["slack_min"].get<double>() >= -1e-9);
  CHECK(j["q_lower_bound"]["pass"].get<bool>());
  CHECK(j["interchange"]["pass"].get<bool>());
  CHECK(j["debruijn"]["pass"].get<bool>());
  CHECK(j["domination"].contains("bound_id"));
}

TEST_CASE("csv output format") {
  TempDir d;
  const std::string out = (d.p / "out").string();
  CHECK(run("pdf --alpha 1.0 --format csv --umin -1 --umax 1 --ustep 0.5 "
            "--out " + out) == 0);
  bool found = false;
  for (auto& e : fs::recursive_directory_iterator(d.p / "out")) {
    if (e.path().extension() == ".csv") {
      found = true;
      auto text = slurp(e.path());
      CHECK(text.find("alpha") != std::string::npos);
      CHECK(text.find(',') != std::string::npos);
    }
  }
  CHECK(found);
}
