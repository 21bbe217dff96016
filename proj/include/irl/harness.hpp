#pragma once

// Experiment runner: trainer pools, advised-learner cells over (L, C, O)
// grids, and the files they are written to.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "irl/advisor.hpp"
#include "irl/config.hpp"
#include "irl/interactive.hpp"
#include "irl/stats.hpp"

namespace irl {

/// Runs fn(0..n-1) on up to `workers` threads (0 = hardware concurrency).
/// Every index is run exactly once; the first exception is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn);

struct PoolResult {
  std::vector<RunRecord> records;
  std::vector<TrainerProfile> profiles;
  std::uint32_t polymath = 0;                  // T*, argmin std_visits
  std::optional<std::uint32_t> specialist_a;  // specialist_a with the largest total reward
};

std::uint64_t pool_seed(std::uint64_t base_seed, std::uint32_t agent);

/// specialist_a-class profile with the largest total reward, lowest id on ties.
std::optional<std::uint32_t> best_specialist_a(std::span<const TrainerProfile> pool);

/// Trains cfg.pool_size autonomous agents of cfg.episodes episodes each.
PoolResult run_pool(const ExperimentConfig& cfg);

struct Trainer {
  std::string role;  // "polymath" or "specialist_a"
  TrainerProfile profile;
  QTable q;
};

/// The trainers an experiment uses: T* always, plus the specialist-A pick
/// for compare. Throws std::runtime_error if compare finds no specialist_a.
std::vector<Trainer> pick_trainers(Experiment e, const PoolResult& pool);

struct Cell {
  std::string trainer;  // "autonomous" for the unadvised baseline
  std::uint32_t trainer_id = 0;
  double feedback = 0.0;
  double consistency = 0.0;
  double obedience = 0.0;
};

struct LearnerSummary {
  std::uint32_t agent_id = 0;
  std::uint64_t seed = 0;
  double auc = 0.0;  // mean reward over the reported episodes
  std::uint64_t steps = 0;
  std::uint64_t advised_steps = 0;
  std::uint64_t followed_steps = 0;
};

struct CellResult {
  Cell cell;
  AggregateCurve curve;                         // over the reported episodes
  std::vector<LearnerSummary> learners;
  std::vector<std::vector<double>> rewards;     // [learner][reported episode]
  std::vector<std::vector<std::uint64_t>> visits;  // [learner][state], canonical frame
  std::vector<double> visit_mean;               // per state across learners
  std::vector<double> visit_std;                // per state, population convention

  double final_smoothed() const { return curve.smoothed.back(); }
  double visit_std_sum() const;
  std::vector<double> aucs() const;
  /// Each learner's own smoothed reward at the last reported episode; their
  /// mean equals final_smoothed().
  std::vector<double> learner_finals(std::size_t window) const;
};

struct StudyResult {
  std::vector<Trainer> trainers;
  std::vector<CellResult> cells;  // autonomous first, then trainer x grid
};

/// Learners per cell for compare, sweep or fine_sweep.
StudyResult run_study(const ExperimentConfig& cfg, const std::vector<Trainer>& trainers);

/// Cell matching the coordinates exactly; nullptr if absent.
const CellResult* find_cell(const StudyResult& study, std::string_view trainer, double feedback,
                            double consistency, double obedience);
const CellResult& autonomous_cell(const StudyResult& study);

// Files. Every writer creates `dir` if needed and throws std::runtime_error
// on I/O failure.
void write_states(const std::filesystem::path& dir);
void write_pool(const std::filesystem::path& dir, const ExperimentConfig& cfg, const PoolResult& pool);
void write_study(const std::filesystem::path& dir, const ExperimentConfig& cfg, const StudyResult& study);
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                    const std::vector<std::string>& files);

/// Reads profiles.csv and qtable.csv written by write_pool.
PoolResult read_pool(const std::filesystem::path& dir);

/// Runs the configured experiment end to end and writes its files into
/// cfg.out_dir. compare and sweeps take trainers from cfg.pool_dir when set
/// and otherwise train the pool first (and write it too).
void run_experiment(const ExperimentConfig& cfg);

/// Human-readable summary of an output directory.
std::string report(const std::filesystem::path& dir);

}  // namespace irl
