#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "irl/oracle.hpp"
#include "irl/tabular.hpp"

namespace irl {

struct VisitStats {
  double mean = 0.0;
  double stddev = 0.0;  // population (divide by N)
};

/// Mean and population standard deviation over every entry, zeros
/// included. Throws std::invalid_argument for an empty vector.
VisitStats visit_stats(std::span<const std::uint64_t> counts);

enum class TrainerClass : std::uint8_t { kSpecialistA, kSpecialistB, kPolymath };

std::string_view to_string(TrainerClass c);
std::optional<TrainerClass> parse_trainer_class(std::string_view name);

inline constexpr double kSpecialistThreshold = 0.7;

struct Classification {
  TrainerClass cls = TrainerClass::kPolymath;
  /// Visit mass on strategy-A states over mass on A and B states; absent
  /// when the agent never reached either exclusive set.
  std::optional<double> path_a_fraction;
};

/// Class from canonical-frame visit counts: specialist_a when the path-A
/// fraction is at least 0.7, specialist_b at most 0.3, polymath otherwise.
Classification classify_visits(std::span<const std::uint64_t> canonical_counts, const PathSets& paths);
Classification classify_trainer(const RunRecord& record, const PathSets& paths = path_sets());

struct TrainerProfile {
  std::uint32_t agent_id = 0;
  double mean_visits = 0.0;
  double std_visits = 0.0;
  double avg_episode_reward = 0.0;
  double total_reward = 0.0;
  TrainerClass cls = TrainerClass::kPolymath;
  std::optional<double> path_a_fraction;
  std::uint64_t seed = 0;
};

TrainerProfile make_profile(std::uint32_t agent_id, const RunRecord& record,
                            const PathSets& paths = path_sets());

/// argmin of std_visits, lowest agent_id on ties. Throws on an empty pool.
std::uint32_t select_trainer(std::span<const TrainerProfile> pool);

/// How inconsistent advice is drawn.
enum class AdviceNoise : std::uint8_t {
  kExcludeGreedy,  // uniform over the six non-greedy actions
  kUniformAll,     // uniform over all seven actions
};

/// With probability `consistency` the trainer's greedy action at `s`,
/// otherwise a corrupted suggestion drawn per `noise`.
Action advise(const QTable& trainer_q, StateIndex s, double consistency, Rng& rng,
              AdviceNoise noise = AdviceNoise::kExcludeGreedy);

}  // namespace irl
