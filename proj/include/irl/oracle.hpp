#pragma once

// Ground truth for the cleaning task: exact action values by value
// iteration, breadth-first shortest episodes, and the split of success
// trajectories into the two cleaning strategies.

#include <cstdint>
#include <span>
#include <vector>

#include "irl/env.hpp"
#include "irl/tabular.hpp"

namespace irl {

/// One branch of the transition model p(s' | s, a).
struct Branch {
  double probability = 1.0;
  StepKind kind = StepKind::kContinued;
  StateIndex next;  // the failed-state for kFailed
  double reward = 0.0;
};

/// Deterministic for every action but Abort, which splits evenly over the
/// two cup sides.
std::vector<Branch> transition_model(StateIndex s, Action a);

struct OptimalSolution {
  QTable q_star;
  double residual = 0.0;
  int sweeps = 0;
  int min_steps_left = 0;
  int min_steps_right = 0;
};

/// Max over non-terminal (s, a) of |backup(q)(s,a) - q(s,a)|.
double bellman_residual(const QTable& q, double gamma);

/// Iterates the Bellman optimality backup until the largest change drops
/// below `tol`. Throws std::runtime_error after 1e5 sweeps.
OptimalSolution optimal_q(double gamma = 0.9, double tol = 1e-9);

/// Minimal number of actions from `start` to a finished outcome.
/// Throws std::runtime_error when no final state is reachable.
int shortest_episode(const State& start);

/// Greedy (epsilon = 0) rollout without learning, fixed cup side.
EpisodeRecord greedy_rollout(const QTable& q, Location cup_side, int step_cap = 200);

enum class PathClass : std::uint8_t { kA, kB, kNone };

std::string_view to_string(PathClass c);

/// A when the first wipe of a table section precedes the first cup pickup,
/// B when the pickup comes first. Only the part after the last Abort is
/// considered; unsuccessful episodes give kNone. Throws
/// std::invalid_argument for an empty trajectory.
PathClass classify_trajectory_path(std::span<const Step> trajectory, EpisodeEnd end);

/// Strategy split of the state space in the cup-left frame, built from all
/// Abort-free, cycle-free success trajectories starting at s0(left).
struct PathSets {
  std::vector<bool> path_a;   // visited only by strategy-A trajectories
  std::vector<bool> path_b;   // visited only by strategy-B trajectories
  std::vector<bool> shared;   // visited by both
  int min_steps_a = 0;
  int min_steps_b = 0;
  std::uint64_t trajectories_a = 0;
  std::uint64_t trajectories_b = 0;

  std::size_t count_a() const;
  std::size_t count_b() const;
  std::size_t count_shared() const;
  /// States on strategy-A trajectories, shared ones included.
  std::size_t strategy_a_states() const { return count_a() + count_shared(); }
  std::size_t strategy_b_states() const { return count_b() + count_shared(); }
};

PathSets compute_path_sets();

/// Process-wide PathSets, built once.
const PathSets& path_sets();

}  // namespace irl
