#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irl/advisor.hpp"
#include "irl/tabular.hpp"

namespace irl {

enum class Experiment : std::uint8_t { kPool, kCompare, kSweep, kFineSweep };

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::kPool;
  int pool_size = 100;        // trainer candidates
  int learners = 100;         // learners per cell
  int episodes = 3000;        // episodes per trainer candidate
  int learner_episodes = 3000;
  int curve_window = 500;     // episodes reported in curves
  int smoothing_window = 30;
  LearnerParams learner;      // learner.episodes is ignored; see the counts above
  std::vector<double> feedback = {0.25};
  std::vector<double> consistency = {1.0};
  std::vector<double> obedience = {1.0};
  AdviceNoise advice_noise = AdviceNoise::kExcludeGreedy;
  std::uint64_t base_seed = 1;
  std::string out_dir = "out";
  std::string pool_dir;       // trained pool to take trainers from; empty trains one
  unsigned workers = 0;       // 0 = hardware concurrency
  bool write_rewards = true;  // per-learner per-episode rewards.csv

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// Defaults of an experiment, including its parameter grids.
ExperimentConfig default_config(Experiment e);

/// Reads `key = value` lines (`#` starts a comment, grids are comma
/// separated) on top of `base`. An `experiment` key, if present, must agree
/// with base.experiment or appear before any other key, in which case the
/// defaults of that experiment are loaded first. Throws std::runtime_error
/// with the line number on malformed input or unknown keys.
ExperimentConfig parse_config(std::istream& in, ExperimentConfig base);
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

/// Comma-separated reals, e.g. "0.25,0.5". Throws std::invalid_argument.
std::vector<double> parse_grid(std::string_view text);

/// Echoes the config in the same `key = value` format.
std::string format_config(const ExperimentConfig& cfg);

}  // namespace irl
