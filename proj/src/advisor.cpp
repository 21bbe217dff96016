#include "irl/advisor.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace irl {

VisitStats visit_stats(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("visit_stats: empty counts");
  const double n = static_cast<double>(counts.size());
  double sum = 0.0;
  for (std::uint64_t c : counts) sum += static_cast<double>(c);
  const double mean = sum / n;
  double sq = 0.0;
  for (std::uint64_t c : counts) {
    const double d = static_cast<double>(c) - mean;
    sq += d * d;
  }
  return {mean, std::sqrt(sq / n)};
}

std::string_view to_string(TrainerClass c) {
  switch (c) {
    case TrainerClass::kSpecialistA:
      return "specialist_a";
    case TrainerClass::kSpecialistB:
      return "specialist_b";
    case TrainerClass::kPolymath:
      return "polymath";
  }
  return "?";
}

std::optional<TrainerClass> parse_trainer_class(std::string_view name) {
  for (TrainerClass c : {TrainerClass::kSpecialistA, TrainerClass::kSpecialistB, TrainerClass::kPolymath}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

Classification classify_visits(std::span<const std::uint64_t> canonical_counts, const PathSets& paths) {
  if (canonical_counts.size() != paths.path_a.size()) {
    throw std::invalid_argument("classify_visits: counts do not cover the state space");
  }
  double mass_a = 0.0;
  double mass_b = 0.0;
  for (std::size_t i = 0; i < canonical_counts.size(); ++i) {
    if (paths.path_a[i]) mass_a += static_cast<double>(canonical_counts[i]);
    if (paths.path_b[i]) mass_b += static_cast<double>(canonical_counts[i]);
  }
  Classification out;
  if (mass_a + mass_b <= 0.0) return out;
  const double f = mass_a / (mass_a + mass_b);
  out.path_a_fraction = f;
  if (f >= kSpecialistThreshold) {
    out.cls = TrainerClass::kSpecialistA;
  } else if (f <= 1.0 - kSpecialistThreshold) {
    out.cls = TrainerClass::kSpecialistB;
  }
  return out;
}

Classification classify_trainer(const RunRecord& record, const PathSets& paths) {
  return classify_visits(record.visits.canonical, paths);
}

TrainerProfile make_profile(std::uint32_t agent_id, const RunRecord& record, const PathSets& paths) {
  TrainerProfile p;
  p.agent_id = agent_id;
  p.seed = record.seed;
  const VisitStats stats = visit_stats(record.visits.canonical);
  p.mean_visits = stats.mean;
  p.std_visits = stats.stddev;
  p.total_reward = std::accumulate(record.episode_rewards.begin(), record.episode_rewards.end(), 0.0);
  p.avg_episode_reward =
      record.episode_rewards.empty() ? 0.0 : p.total_reward / static_cast<double>(record.episode_rewards.size());
  const Classification c = classify_trainer(record, paths);
  p.cls = c.cls;
  p.path_a_fraction = c.path_a_fraction;
  return p;
}

std::uint32_t select_trainer(std::span<const TrainerProfile> pool) {
  if (pool.empty()) throw std::invalid_argument("select_trainer: empty pool");
  const TrainerProfile* best = &pool.front();
  for (const TrainerProfile& p : pool) {
    if (p.std_visits < best->std_visits || (p.std_visits == best->std_visits && p.agent_id < best->agent_id)) {
      best = &p;
    }
  }
  return best->agent_id;
}

Action advise(const QTable& trainer_q, StateIndex s, double consistency, Rng& rng, AdviceNoise noise) {
  const Action greedy = greedy_action(trainer_q.row(s));
  if (rng.bernoulli(consistency)) return greedy;
  if (noise == AdviceNoise::kUniformAll) return kAllActions[rng.uniform_int(kNumActions)];
  std::size_t pick = rng.uniform_int(kNumActions - 1);
  if (pick >= action_index(greedy)) ++pick;
  return kAllActions[pick];
}

}  // namespace irl
