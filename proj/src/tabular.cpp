#include "irl/tabular.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace irl {

void LearnerParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  if (episodes < 0) throw std::invalid_argument("episodes must be non-negative");
  if (step_cap < 1) throw std::invalid_argument("step_cap must be positive");
}

std::string_view to_string(EpisodeEnd e) {
  switch (e) {
    case EpisodeEnd::kFinished:
      return "finished";
    case EpisodeEnd::kFailed:
      return "failed";
    case EpisodeEnd::kTruncated:
      return "truncated";
  }
  return "?";
}

void VisitCounts::add(const EpisodeRecord& episode) {
  const StateSpace& space = state_space();
  bool mirrored = false;
  for (std::size_t k = 0; k < episode.entered.size(); ++k) {
    const StateIndex s = episode.entered[k];
    if (k == 0 || episode.trajectory[k - 1].action == Action::kAbort) {
      mirrored = space.state(s).cup_pos == Location::kRight;
    }
    ++raw[s.value];
    ++canonical[(mirrored ? space.mirror(s) : s).value];
  }
}

std::uint64_t VisitCounts::total() const {
  return std::accumulate(raw.begin(), raw.end(), std::uint64_t{0});
}

QTable init_qtable(Rng& rng) {
  const StateSpace& space = state_space();
  QTable q(space.size());
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    for (double& v : q.row(StateIndex{i})) v = rng.uniform();
  }
  return q;
}

Action greedy_action(std::span<const double> q_row) {
  if (q_row.size() != kNumActions) throw std::invalid_argument("q row must have 7 entries");
  std::size_t best = 0;
  for (std::size_t i = 0; i < q_row.size(); ++i) {
    if (!std::isfinite(q_row[i])) throw std::invalid_argument("non-finite action value");
    if (q_row[i] > q_row[best]) best = i;
  }
  return kAllActions[best];
}

Action epsilon_greedy(std::span<const double> q_row, double epsilon, Rng& rng) {
  const Action greedy = greedy_action(q_row);
  if (rng.bernoulli(epsilon)) return kAllActions[rng.uniform_int(kNumActions)];
  return greedy;
}

double sarsa_update(QTable& q, StateIndex s, Action a, double reward,
                    std::optional<NextPair> next, const LearnerParams& params) {
  const double bootstrap = next ? q.at(next->state, next->action) : 0.0;
  double& entry = q.at(s, a);
  if (!std::isfinite(reward) || !std::isfinite(bootstrap) || !std::isfinite(entry)) {
    throw std::invalid_argument("sarsa_update: non-finite input");
  }
  entry += params.alpha * (reward + params.gamma * bootstrap - entry);
  return entry;
}

EpisodeRecord run_autonomous_episode(QTable& q, const LearnerParams& params, Rng& rng,
                                     std::optional<Location> start_side) {
  return run_episode(
      q, params, rng,
      [&](const QTable& table, StateIndex s, Rng& r) {
        return ActionChoice{epsilon_greedy(table.row(s), params.epsilon, r)};
      },
      start_side);
}

void accumulate(RunRecord& record, const EpisodeRecord& episode) {
  record.visits.add(episode);
  record.episode_rewards.push_back(episode.total_reward);
  record.episode_steps.push_back(episode.steps);
  record.episode_ends.push_back(episode.end);
  record.steps += static_cast<std::uint64_t>(episode.steps);
  record.advised_steps += static_cast<std::uint64_t>(episode.advised_steps);
  record.followed_steps += static_cast<std::uint64_t>(episode.followed_steps);
}

RunRecord train_autonomous_agent(const LearnerParams& params, std::uint64_t seed) {
  params.validate();
  Rng rng(seed);
  RunRecord record;
  record.seed = seed;
  record.params = params;
  record.qtable = init_qtable(rng);
  record.episode_rewards.reserve(static_cast<std::size_t>(params.episodes));
  for (int e = 0; e < params.episodes; ++e) {
    accumulate(record, run_autonomous_episode(record.qtable, params, rng));
  }
  return record;
}

}  // namespace irl
