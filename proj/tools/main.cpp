// ccrheat: runs the heat-flow, Weyl and purity checks and writes artifacts.
//
// Exit status: 0 all checks pass, 1 some check failed, 2 invalid command
// line or configuration (nothing is computed in that case).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "ccrheat/simd/kernels.hpp"
#include "config.hpp"
#include "experiments.hpp"

namespace fs = std::filesystem;
using namespace ccrheat;
using namespace ccrheat::cli;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Field {
  const char* flag;
  std::string RawConfig::*member;
  const char* help;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> f{
      {"--truncation", &RawConfig::truncation, "Fock truncation N"},
      {"--grid", &RawConfig::grid, "phase-space grid L,M (half-width, points per axis)"},
      {"--times", &RawConfig::times, "time grid a,b,c"},
      {"--delta", &RawConfig::delta, "band radius delta"},
      {"--epsilons", &RawConfig::epsilons, "annihilation radii e1,e2,..."},
      {"--seed", &RawConfig::seed, "RNG seed"},
      {"--trials", &RawConfig::trials, "random pairs / states / operators"},
      {"--probes", &RawConfig::probes, "states fock:<n> or coherent:<a>; consecutive entries pair up"},
      {"--probe-times", &RawConfig::probe_times, "times for the absorbing-state probe"},
      {"--mc-samples", &RawConfig::mc_samples, "Monte-Carlo samples for heatflow (0 = off)"},
  };
  return f;
}

const std::map<std::string, std::string>& descriptions() {
  static const std::map<std::string, std::string> d{
      {"weyl-check", "Weyl relations, unitarity, conjugation, method agreement, inversion, decay profile"},
      {"heatflow", "eigen-relation, path agreement, trace/unit, semigroup law, generator"},
      {"choi", "complete positivity of the heat channel and a signed witness"},
      {"lemma37", "band-limited approximants of the heat measure"},
      {"purity", "trace-distance decay curves, certified bounds, absorbing-state probe"},
      {"beurling", "band-annihilated distances of trace-zero and trace-one operators"},
      {"all", "every subcommand; flags given here override all sections"},
  };
  return d;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

Json raw_json(const RawConfig& r) {
  Json j = Json::object();
  for (const Field& f : fields()) j[f.flag + 2] = r.*f.member;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccrheat: quantum heat semigroup checks"};
  app.set_config("--config", "", "key = value file; one [section] per subcommand; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();
  app.require_subcommand(1);
  std::string out_dir = "ccrheat-out";
  bool json_summary = false;
  app.add_option("--out", out_dir, "artifact directory")->capture_default_str();
  app.add_flag("--json-summary", json_summary, "print the summary JSON on stdout (check lines go to stderr)");

  std::vector<std::string> names = subcommand_names();
  names.push_back("all");
  // the INI reader splits "a, b" into several values; they are joined again
  std::map<std::string, std::map<std::string, std::vector<std::string>>> given;
  std::map<std::string, CLI::App*> sub;
  for (const std::string& name : names) {
    CLI::App* s = app.add_subcommand(name, descriptions().at(name));
    const RawConfig d = defaults_for(name);
    for (const Field& f : fields()) {
      auto* opt = s->add_option(f.flag, given[name][f.flag], f.help)->type_name("TEXT");
      if (name != "all") opt->default_str(d.*f.member);
    }
    sub[name] = s;
  }
  auto value = [&](const std::string& name, const Field& f) {
    std::string joined;
    for (const std::string& part : given[name][f.flag]) joined += (joined.empty() ? "" : ",") + part;
    return joined;
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string chosen;
  for (const std::string& name : names) {
    if (sub[name]->parsed()) chosen = name;
  }
  const std::vector<std::string> run =
      chosen == "all" ? subcommand_names() : std::vector<std::string>{chosen};

  std::vector<RunConfig> configs;
  std::vector<RawConfig> resolved;
  try {
    for (const std::string& name : run) {
      RawConfig r = defaults_for(name);
      for (const Field& f : fields()) {
        if (sub[name]->count(f.flag) > 0) r.*f.member = value(name, f);
        if (chosen == "all" && sub["all"]->count(f.flag) > 0) r.*f.member = value("all", f);
      }
      configs.push_back(validate(name, r));
      resolved.push_back(r);
    }
    fs::create_directories(out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "invalid configuration (" << (configs.size() < run.size() ? run[configs.size()] : chosen)
              << "): " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "cannot create output directory: " << e.what() << '\n';
    return 2;
  }

  std::ostream& lines = json_summary ? std::cerr : std::cout;
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  Json checks = Json::array();
  Json timing = Json::object();
  bool all_pass = true;
  try {
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const RunConfig& c = configs[i];
      const fs::path dir = fs::path(out_dir) / c.subcommand;
      const auto s0 = std::chrono::steady_clock::now();
      const auto reports = run_subcommand(c, dir);
      timing[c.subcommand] = std::chrono::duration<double>(std::chrono::steady_clock::now() - s0).count();
      std::ofstream(dir / "config.json") << raw_json(resolved[i]).dump(2) << '\n';
      for (const ExperimentReport& r : reports) {
        const std::string name = c.subcommand + "." + r.check;
        checks.push_back(
            {{"name", name}, {"params", r.params}, {"measured", r.measured}, {"bound", r.bound}, {"pass", r.pass}});
        all_pass = all_pass && r.pass;
        lines << (r.pass ? "PASS " : "FAIL ") << name << "  " << r.measured.dump() << "  bound " << r.bound << '\n';
        lines.flush();
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const Json summary{{"version", kVersion}, {"checks", checks}};
  std::ofstream(fs::path(out_dir) / "summary.json") << summary.dump(2) << '\n';
  const char* threads = std::getenv("CCRHEAT_THREADS");
  const Json meta{{"version", kVersion},
                  {"started_utc", started},
                  {"finished_utc", utc_now()},
                  {"elapsed_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
                  {"subcommand_seconds", timing},
                  {"simd", std::string(simd::isa_name(simd::active_isa()))},
                  {"threads_env", threads ? Json(threads) : Json(nullptr)}};
  std::ofstream(fs::path(out_dir) / "metadata.json") << meta.dump(2) << '\n';

  if (json_summary) std::cout << summary.dump(2) << '\n';
  lines << (all_pass ? "all checks pass" : "some checks FAILED") << " (" << checks.size() << " checks)\n";
  return all_pass ? 0 : 1;
}
