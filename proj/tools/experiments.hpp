#pragma once
// One function per subcommand. Each runs its checks, writes its CSV/JSON
// artifacts under `dir` and returns the reports in a fixed order.

#include <filesystem>
#include <string>
#include <vector>

#include "ccrheat/report.hpp"
#include "config.hpp"

namespace ccrheat::cli {

// Subcommands in the order `all` runs them.
const std::vector<std::string>& subcommand_names();

std::vector<ExperimentReport> run_subcommand(const RunConfig& cfg, const std::filesystem::path& dir);

}  // namespace ccrheat::cli
