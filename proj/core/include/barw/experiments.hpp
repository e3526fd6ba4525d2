#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "barw/chain.hpp"

namespace barw {

struct ExperimentConfig {
  std::string experiment;
  double lambda = 1.5;
  std::vector<int> n{1200};  // more than one value only for uncond-time
  double epsilon = 0.05;
  std::optional<double> delta;
  std::optional<int> x0;
  std::optional<int> u;
  std::optional<LevelMode> mode;
  std::optional<std::int64_t> trials;
  std::optional<std::uint64_t> seed;
  std::string graph;  // empty means complete:<n> with self moves
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> cache_dir;
  unsigned workers = 0;
};

struct ExperimentResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
};

const std::vector<std::string>& experiment_names();

// Validates the whole config and computes every result before the first
// file is written. Writes the experiment's CSV (or report.txt) and
// summary.json into out_dir.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace barw
