#include "config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "ccrheat/purity.hpp"
#include "ccrheat/weyl_transform.hpp"

namespace ccrheat::cli {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  const std::string t = trim(text);
  if (t.empty()) return out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = t.find(',', start);
    out.push_back(trim(t.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size() || !std::isfinite(v)) {
    throw ConfigError(field + ": '" + text + "' is not a finite number");
  }
  return v;
}

long long parse_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  long long v = 0;
  const auto [end, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || end != t.data() + t.size()) {
    throw ConfigError(field + ": '" + text + "' is not an integer");
  }
  return v;
}

int parse_int_in(const std::string& field, const std::string& text, long long lo, long long hi) {
  const long long v = parse_int(field, text);
  if (v < lo || v > hi) {
    throw ConfigError(field + ": " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

std::vector<double> parse_times(const std::string& field, const std::string& text, bool positive) {
  std::vector<double> v = parse_list(field, text);
  if (v.empty()) throw ConfigError(field + ": empty list");
  for (double t : v) {
    if (positive ? !(t > 0.0) : t < 0.0) {
      throw ConfigError(field + ": " + num(t) + (positive ? " must be > 0" : " must be >= 0"));
    }
  }
  return v;
}

std::vector<double> parse_epsilons(const std::string& text, int truncation) {
  std::vector<double> v = parse_list("epsilons", text);
  if (v.empty()) throw ConfigError("epsilons: empty list");
  std::set<double> seen;
  for (double e : v) {
    if (!(e > 0.0)) throw ConfigError("epsilons: values must be > 0");
    if (e > trustworthy_radius(truncation)) {
      throw ConfigError("epsilons: " + num(e) + " exceeds the window sqrt(2N) = " +
                        num(trustworthy_radius(truncation)));
    }
    if (!seen.insert(e).second) throw ConfigError("epsilons: duplicate value " + num(e));
  }
  return v;
}

Probe parse_probe(const std::string& spec, int truncation) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  try {
    if (kind == "fock") {
      const int n = parse_int_in("probes", arg, 0, truncation - 1);
      return {spec, number_state(n, truncation)};
    }
    if (kind == "coherent") {
      const double a = parse_double("probes", arg);
      if (a * a > truncation / 4.0) {
        throw ConfigError("probes: coherent amplitude " + arg + " needs |a|^2 <= N/4");
      }
      return {spec, coherent_state(a, truncation)};
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("probes: '" + spec + "': " + e.what());
  }
  throw ConfigError("probes: '" + spec + "' is not fock:<n> or coherent:<a>");
}

}  // namespace

std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split(text)) out.push_back(parse_double(field, item));
  return out;
}

RawConfig defaults_for(const std::string& sub) {
  RawConfig r;
  r.truncation = "40";
  r.grid = "8,80";
  r.times = "0.25,1";
  r.delta = "1";
  r.epsilons = "0.5";
  r.seed = "7";
  r.trials = "10";
  r.probes = "fock:0,fock:1";
  r.probe_times = "0,1,2";
  r.mc_samples = "0";
  if (sub == "weyl-check") {
    r.seed = "2024";
    r.trials = "100";
  } else if (sub == "heatflow") {
    r.truncation = "30";
  } else if (sub == "choi") {
    r.truncation = "16";
    r.times = "0.5";
  } else if (sub == "lemma37") {
    r.times = "1,4,16";
  } else if (sub == "purity") {
    r.times = "0,0.25,0.5,1,2,4,8,16";
  } else if (sub == "beurling") {
    r.truncation = "12";
    r.epsilons = "1,0.5,0.25";
    r.seed = "1";
  }
  return r;
}

RunConfig validate(const std::string& sub, const RawConfig& raw) {
  RunConfig c;
  c.subcommand = sub;
  c.truncation = parse_int_in("truncation", raw.truncation, 2, 512);
  c.seed = static_cast<std::uint64_t>(parse_int_in("seed", raw.seed, 0, 2147483647));
  c.trials = parse_int_in("trials", raw.trials, 1, 100000);
  c.mc_samples = parse_int_in("mc-samples", raw.mc_samples, 0, 100000000);
  c.delta = parse_double("delta", raw.delta);
  if (!(c.delta > 0.0)) throw ConfigError("delta: must be > 0");

  const auto grid = split(raw.grid);
  if (grid.size() != 2) throw ConfigError("grid: expected L,M");
  c.grid_half_width = parse_double("grid", grid[0]);
  c.grid_points = parse_int_in("grid", grid[1], 2, 4096);
  try {
    (void)GridSpec(c.grid_half_width, c.grid_points);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }

  if (sub == "weyl-check") {
    if (c.truncation < 18) throw ConfigError("truncation: weyl-check profiles out to R = 6 and needs N >= 18");
    if (c.grid_half_width > trustworthy_radius(c.truncation)) {
      throw ConfigError("grid: half-width " + num(c.grid_half_width) + " exceeds the window sqrt(2N) = " +
                        num(trustworthy_radius(c.truncation)));
    }
  } else if (sub == "heatflow") {
    if (c.truncation < 8) throw ConfigError("truncation: heatflow needs N >= 8");
    c.times = parse_times("times", raw.times, true);
  } else if (sub == "choi") {
    if (c.truncation < 4) throw ConfigError("truncation: choi needs N >= 4 (block N/4)");
    c.times = parse_times("times", raw.times, false);
  } else if (sub == "lemma37") {
    c.times = parse_times("times", raw.times, true);
    for (double t : c.times) {
      try {
        (void)approximant_grid(t, c.delta);
      } catch (const std::exception& e) {
        throw ConfigError("times/delta: t = " + num(t) + ": " + e.what());
      }
    }
  } else if (sub == "purity") {
    c.times = parse_times("times", raw.times, false);
    if (!(c.times.back() > 0.0)) throw ConfigError("times: the last time is certified and must be > 0");
    c.epsilons = parse_epsilons(raw.epsilons, c.truncation);
    c.probe_times = parse_times("probe-times", raw.probe_times, false);
    c.probe_specs = split(raw.probes);
    if (c.probe_specs.size() < 2 || c.probe_specs.size() % 2 != 0) {
      throw ConfigError("probes: need an even number (>= 2) of states; consecutive entries form pairs");
    }
    for (const std::string& s : c.probe_specs) c.probes.push_back(parse_probe(s, c.truncation));
  } else if (sub == "beurling") {
    c.epsilons = parse_epsilons(raw.epsilons, c.truncation);
  } else {
    throw ConfigError("unknown subcommand '" + sub + "'");
  }
  return c;
}

}  // namespace ccrheat::cli
