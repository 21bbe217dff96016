#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "irl/env.hpp"
#include "irl/random.hpp"

namespace irl {

/// |S| x 7 action values, row-major by state index.
class QTable {
 public:
  using Row = std::span<const double, kNumActions>;
  using MutableRow = std::span<double, kNumActions>;

  explicit QTable(std::size_t num_states = state_space().size())
      : num_states_(num_states), values_(num_states * kNumActions, 0.0) {}

  std::size_t num_states() const { return num_states_; }

  double at(StateIndex s, Action a) const { return values_[offset(s) + action_index(a)]; }
  double& at(StateIndex s, Action a) { return values_[offset(s) + action_index(a)]; }

  Row row(StateIndex s) const { return Row(values_.data() + offset(s), kNumActions); }
  MutableRow row(StateIndex s) { return MutableRow(values_.data() + offset(s), kNumActions); }

  std::span<const double> values() const { return values_; }

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t offset(StateIndex s) const { return static_cast<std::size_t>(s.value) * kNumActions; }

  std::size_t num_states_;
  std::vector<double> values_;
};

struct LearnerParams {
  double alpha = 0.3;
  double gamma = 0.9;
  double epsilon = 0.1;
  int episodes = 3000;
  int step_cap = 200;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

enum class EpisodeEnd : std::uint8_t { kFinished, kFailed, kTruncated };

std::string_view to_string(EpisodeEnd e);

struct Step {
  StateIndex state;
  Action action;
};

struct EpisodeRecord {
  double total_reward = 0.0;
  int steps = 0;
  EpisodeEnd end = EpisodeEnd::kTruncated;
  std::vector<Step> trajectory;
  /// Every state entered, in order: the start state, each successor
  /// (failed-states included), and the fresh start state after an Abort.
  std::vector<StateIndex> entered;
  int advised_steps = 0;
  int followed_steps = 0;
};

/// Per-state visit totals, both as entered and folded into the cup-left
/// frame (segments that start with the cup on the right are mirrored).
struct VisitCounts {
  std::vector<std::uint64_t> raw;
  std::vector<std::uint64_t> canonical;

  explicit VisitCounts(std::size_t n = state_space().size()) : raw(n, 0), canonical(n, 0) {}

  void add(const EpisodeRecord& episode);
  std::uint64_t total() const;
};

struct RunRecord {
  std::uint64_t seed = 0;
  LearnerParams params;
  QTable qtable;
  VisitCounts visits;
  std::vector<double> episode_rewards;
  std::vector<int> episode_steps;
  std::vector<EpisodeEnd> episode_ends;
  std::uint64_t steps = 0;
  std::uint64_t advised_steps = 0;
  std::uint64_t followed_steps = 0;
};

/// Uniform [0, 1) entries for every row. Terminal rows are never updated,
/// so a step into a final or failed state bootstraps from its initial values.
QTable init_qtable(Rng& rng);

/// argmax with lowest-index tie-break. Throws std::invalid_argument on a
/// non-finite entry.
Action greedy_action(std::span<const double> q_row);

/// Uniform random action with probability epsilon, greedy otherwise.
Action epsilon_greedy(std::span<const double> q_row, double epsilon, Rng& rng);

/// Successor pair for the bootstrap term; absent means a zero bootstrap.
struct NextPair {
  StateIndex state;
  Action action;
};

/// Q(s,a) += alpha * (r + gamma * Q(s',a') - Q(s,a)). Returns the new value.
double sarsa_update(QTable& q, StateIndex s, Action a, double reward,
                    std::optional<NextPair> next, const LearnerParams& params);

/// Picks the action to execute in `s`. Implementations may record whether
/// an action came from outside advice.
struct ActionChoice {
  Action action;
  bool advised = false;
  bool followed = false;
};

/// One SARSA episode driven by `select(q, s, rng) -> ActionChoice`, used for
/// both the current and the on-policy next action. The cup side is drawn
/// from `rng` unless `start_side` fixes it.
template <typename Selector>
EpisodeRecord run_episode(QTable& q, const LearnerParams& params, Rng& rng, Selector&& select,
                          std::optional<Location> start_side = std::nullopt) {
  const StateSpace& space = state_space();
  EpisodeRecord ep;
  State s = initial_state(start_side ? *start_side : random_cup_side(rng));
  StateIndex si = space.index(s);
  ep.entered.push_back(si);
  ActionChoice choice = select(std::as_const(q), si, rng);
  bool ended = false;
  while (ep.steps < params.step_cap) {
    const Action a = choice.action;
    ep.trajectory.push_back({si, a});
    ++ep.steps;
    ep.advised_steps += choice.advised ? 1 : 0;
    ep.followed_steps += choice.followed ? 1 : 0;
    const StepOutcome out = transition(s, a, rng);
    ep.total_reward += out.reward;
    const StateIndex next = space.successor(out);
    ep.entered.push_back(next);
    choice = select(std::as_const(q), next, rng);
    sarsa_update(q, si, a, out.reward, NextPair{next, choice.action}, params);
    if (out.kind != StepKind::kContinued) {
      ep.end = out.kind == StepKind::kFailed ? EpisodeEnd::kFailed : EpisodeEnd::kFinished;
      ended = true;
      break;
    }
    s = out.next;
    si = next;
  }
  if (!ended) ep.end = EpisodeEnd::kTruncated;
  return ep;
}

EpisodeRecord run_autonomous_episode(QTable& q, const LearnerParams& params, Rng& rng,
                                     std::optional<Location> start_side = std::nullopt);

/// Folds one finished episode into a run record.
void accumulate(RunRecord& record, const EpisodeRecord& episode);

/// Trains one agent from a fresh random table: params.episodes sequential
/// episodes sharing the table.
RunRecord train_autonomous_agent(const LearnerParams& params, std::uint64_t seed);

}  // namespace irl
