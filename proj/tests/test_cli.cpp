#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "config.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace ccrheat::cli;

namespace {

const fs::path& scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "ccrheat_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd =
      std::string("\"") + CCRHEAT_CLI_PATH + "\" " + args + " > \"" + (scratch() / "log.txt").string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

std::string out_arg(const std::string& name) { return "--out \"" + (scratch() / name).string() + "\""; }

}  // namespace

TEST_CASE("defaults validate for every subcommand") {
  for (const char* s : {"weyl-check", "heatflow", "choi", "lemma37", "purity", "beurling"}) {
    CAPTURE(s);
    CHECK_NOTHROW(validate(s, defaults_for(s)));
  }
  const RunConfig p = validate("purity", defaults_for("purity"));
  CHECK(p.probes.size() == 2);
  CHECK(p.times.back() == 16.0);
}

TEST_CASE("validation rejects bad fields") {
  RawConfig r = defaults_for("heatflow");
  r.times = "";
  CHECK_THROWS_AS(validate("heatflow", r), ConfigError);
  r.times = "0.5,-1";
  CHECK_THROWS_AS(validate("heatflow", r), ConfigError);
  r.times = "0.5,abc";
  CHECK_THROWS_AS(validate("heatflow", r), ConfigError);

  r = defaults_for("weyl-check");
  r.grid = "6";
  CHECK_THROWS_AS(validate("weyl-check", r), ConfigError);
  r.grid = "6,61";
  CHECK_THROWS_AS(validate("weyl-check", r), ConfigError);
  r.grid = "20,60";
  CHECK_THROWS_AS(validate("weyl-check", r), ConfigError);
  r = defaults_for("weyl-check");
  r.truncation = "10";
  CHECK_THROWS_AS(validate("weyl-check", r), ConfigError);

  r = defaults_for("purity");
  r.probes = "fock:0";
  CHECK_THROWS_AS(validate("purity", r), ConfigError);
  r.probes = "fock:0,fock:99";
  CHECK_THROWS_AS(validate("purity", r), ConfigError);
  r.probes = "fock:0,squeezed:1";
  CHECK_THROWS_AS(validate("purity", r), ConfigError);
  r = defaults_for("purity");
  r.times = "0";
  CHECK_THROWS_AS(validate("purity", r), ConfigError);

  r = defaults_for("beurling");
  r.epsilons = "1,1";
  CHECK_THROWS_AS(validate("beurling", r), ConfigError);
  r.epsilons = "9";
  CHECK_THROWS_AS(validate("beurling", r), ConfigError);

  r = defaults_for("lemma37");
  r.times = "0";
  CHECK_THROWS_AS(validate("lemma37", r), ConfigError);
  r.times = "1000";
  CHECK_THROWS_AS(validate("lemma37", r), ConfigError);
}

TEST_CASE("weyl-check with defaults passes and writes a summary") {
  REQUIRE(run("weyl-check " + out_arg("weyl")) == 0);
  const auto summary = load(scratch() / "weyl" / "summary.json");
  CHECK(summary["version"].is_string());
  REQUIRE(summary["checks"].size() >= 7);
  for (const auto& c : summary["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("params"));
    CHECK(c.contains("measured"));
    CHECK(c.contains("bound"));
    CHECK(c["pass"].get<bool>());
  }
  CHECK(fs::exists(scratch() / "weyl" / "weyl-check" / "riemann_lebesgue.csv"));
  CHECK(fs::exists(scratch() / "weyl" / "metadata.json"));
}

TEST_CASE("invalid configuration exits 2 before computing") {
  CHECK(run("heatflow --times \"\" " + out_arg("empty")) == 2);
  CHECK_FALSE(fs::exists(scratch() / "empty" / "summary.json"));
  CHECK(run("choi --truncation x " + out_arg("bad")) == 2);
  CHECK(run("choi --no-such-flag") == 2);
  CHECK(run("") == 2);
  CHECK(run("--config \"" + (scratch() / "missing.ini").string() + "\" choi") == 2);

  const fs::path extra = scratch() / "extra.ini";
  std::ofstream(extra) << "[choi]\nbogus = 1\n";
  CHECK(run("--config \"" + extra.string() + "\" choi " + out_arg("extra")) == 2);

  // a bad section stops `all` before any subcommand runs
  const fs::path bad = scratch() / "bad.ini";
  std::ofstream(bad) << "[beurling]\nepsilons = 0.5,0.5\n";
  CHECK(run("--config \"" + bad.string() + "\" all " + out_arg("all_bad")) == 2);
  CHECK_FALSE(fs::exists(scratch() / "all_bad" / "weyl-check"));
}

TEST_CASE("failing check exits 1") {
  CHECK(run("purity --truncation 8 --probes fock:0,fock:0 --times 0,1 " + out_arg("fail")) == 1);
  const auto summary = load(scratch() / "fail" / "summary.json");
  bool any_fail = false;
  for (const auto& c : summary["checks"]) any_fail = any_fail || !c["pass"].get<bool>();
  CHECK(any_fail);
}

TEST_CASE("config sections apply and flags override them") {
  const fs::path cfg = scratch() / "choi.ini";
  std::ofstream(cfg) << "# comment\n[choi]\ntruncation = 12\ntimes = 1\n";
  REQUIRE(run("--config \"" + cfg.string() + "\" choi --times 0.25 " + out_arg("sections")) == 0);
  const auto resolved = load(scratch() / "sections" / "choi" / "config.json");
  CHECK(resolved["truncation"] == "12");
  CHECK(resolved["times"] == "0.25");

  // comma lists in the file arrive as several values and are joined again
  std::ofstream(cfg) << "out = " << (scratch() / "listed").string() << "\n[choi]\ntimes = 0.25, 1\n";
  REQUIRE(run("--config \"" + cfg.string() + "\" choi") == 0);
  CHECK(load(scratch() / "listed" / "choi" / "config.json")["times"] == "0.25,1");
  CHECK(load(scratch() / "listed" / "summary.json")["checks"].size() == 3);
}

TEST_CASE("identical configuration gives byte-identical artifacts") {
  const std::string args = "beurling --trials 2 --epsilons 1,0.5 ";
  REQUIRE(run(args + out_arg("det1")) == 0);
  REQUIRE(run(args + out_arg("det2")) == 0);
  REQUIRE(run("choi " + out_arg("det1")) == 0);
  REQUIRE(run("choi " + out_arg("det2")) == 0);
  int compared = 0;
  for (const auto& e : fs::recursive_directory_iterator(scratch() / "det1")) {
    if (!e.is_regular_file() || e.path().filename() == "metadata.json") continue;
    const fs::path twin = scratch() / "det2" / fs::relative(e.path(), scratch() / "det1");
    CAPTURE(e.path().string());
    REQUIRE(fs::exists(twin));
    CHECK(slurp(e.path()) == slurp(twin));
    ++compared;
  }
  CHECK(compared == 5);
  CHECK(slurp(scratch() / "det1" / "metadata.json").find("started_utc") != std::string::npos);
}
