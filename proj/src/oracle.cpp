#include "irl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace irl {

namespace {

constexpr int kMaxSweeps = 100000;

double max_value(const QTable& q, StateIndex s) {
  const auto row = q.row(s);
  return *std::max_element(row.begin(), row.end());
}

double backup(const QTable& q, StateIndex s, Action a, double gamma) {
  double value = 0.0;
  for (const Branch& b : transition_model(s, a)) {
    double future = 0.0;
    if (b.kind == StepKind::kContinued) future = gamma * max_value(q, b.next);  // terminals are worth 0
    value += b.probability * (b.reward + future);
  }
  return value;
}

bool wipes(const State& s, Action a) {
  return a == Action::kClean && s.hand == HandContent::kSponge && s.hand_pos != Location::kHome &&
         s.hand_pos != s.cup_pos;
}

bool picks_up_cup(const State& s, Action a) {
  return a == Action::kGet && s.hand == HandContent::kFree && s.hand_pos != Location::kHome &&
         s.hand_pos == s.cup_pos;
}

class PathSearch {
 public:
  PathSearch() : on_path_(state_space().size(), false), seen_a_(on_path_.size(), false),
                 seen_b_(on_path_.size(), false) {}

  PathSets run() {
    const StateIndex root = state_space().initial(Location::kLeft);
    visit(root, PathClass::kNone);
    PathSets sets;
    const std::size_t n = on_path_.size();
    sets.path_a.assign(n, false);
    sets.path_b.assign(n, false);
    sets.shared.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      sets.shared[i] = seen_a_[i] && seen_b_[i];
      sets.path_a[i] = seen_a_[i] && !seen_b_[i];
      sets.path_b[i] = seen_b_[i] && !seen_a_[i];
    }
    sets.min_steps_a = min_a_;
    sets.min_steps_b = min_b_;
    sets.trajectories_a = count_a_;
    sets.trajectories_b = count_b_;
    return sets;
  }

 private:
  void visit(StateIndex s, PathClass cls) {
    const StateSpace& space = state_space();
    on_path_[s.value] = true;
    path_.push_back(s);
    const State& state = space.state(s);
    if (space.is_terminal(s)) {
      record(cls);
    } else {
      for (Action a : kAllActions) {
        if (a == Action::kAbort) continue;
        const StepOutcome out = transition(state, a, Location::kLeft);
        if (out.kind == StepKind::kFailed) continue;
        const StateIndex next = space.index(out.next);
        if (on_path_[next.value]) continue;
        PathClass next_cls = cls;
        if (cls == PathClass::kNone) {
          if (wipes(state, a)) next_cls = PathClass::kA;
          if (picks_up_cup(state, a)) next_cls = PathClass::kB;
        }
        visit(next, next_cls);
      }
    }
    path_.pop_back();
    on_path_[s.value] = false;
  }

  void record(PathClass cls) {
    const int steps = static_cast<int>(path_.size()) - 1;
    auto& seen = cls == PathClass::kA ? seen_a_ : seen_b_;
    for (StateIndex s : path_) seen[s.value] = true;
    if (cls == PathClass::kA) {
      ++count_a_;
      min_a_ = min_a_ == 0 ? steps : std::min(min_a_, steps);
    } else {
      ++count_b_;
      min_b_ = min_b_ == 0 ? steps : std::min(min_b_, steps);
    }
  }

  std::vector<bool> on_path_;
  std::vector<bool> seen_a_;
  std::vector<bool> seen_b_;
  std::vector<StateIndex> path_;
  int min_a_ = 0;
  int min_b_ = 0;
  std::uint64_t count_a_ = 0;
  std::uint64_t count_b_ = 0;
};

}  // namespace

std::vector<Branch> transition_model(StateIndex s, Action a) {
  const StateSpace& space = state_space();
  const State& state = space.state(s);
  std::vector<Branch> branches;
  auto push = [&](double p, const StepOutcome& out) {
    branches.push_back({p, out.kind, space.successor(out), out.reward});
  };
  if (a == Action::kAbort) {
    push(0.5, transition(state, a, Location::kLeft));
    push(0.5, transition(state, a, Location::kRight));
  } else {
    push(1.0, transition(state, a, Location::kLeft));
  }
  return branches;
}

double bellman_residual(const QTable& q, double gamma) {
  const StateSpace& space = state_space();
  double residual = 0.0;
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    const StateIndex s{i};
    if (space.is_terminal(s)) continue;
    for (Action a : kAllActions) {
      residual = std::max(residual, std::abs(backup(q, s, a, gamma) - q.at(s, a)));
    }
  }
  return residual;
}

OptimalSolution optimal_q(double gamma, double tol) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("optimal_q: gamma must lie in [0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("optimal_q: tol must be positive");
  const StateSpace& space = state_space();
  OptimalSolution sol;
  QTable next(space.size());
  for (; sol.sweeps < kMaxSweeps; ++sol.sweeps) {
    double change = 0.0;
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      const StateIndex s{i};
      if (space.is_terminal(s)) continue;
      for (Action a : kAllActions) {
        const double v = backup(sol.q_star, s, a, gamma);
        change = std::max(change, std::abs(v - sol.q_star.at(s, a)));
        next.at(s, a) = v;
      }
    }
    sol.q_star = next;
    if (change < tol) break;
  }
  sol.residual = bellman_residual(sol.q_star, gamma);
  if (sol.residual >= tol) throw std::runtime_error("optimal_q: value iteration did not converge");
  sol.min_steps_left = shortest_episode(initial_state(Location::kLeft));
  sol.min_steps_right = shortest_episode(initial_state(Location::kRight));
  return sol;
}

int shortest_episode(const State& start) {
  const StateSpace& space = state_space();
  std::vector<int> depth(space.size(), -1);
  std::deque<StateIndex> frontier;
  const StateIndex root = space.index(start);
  if (space.is_terminal(root)) throw std::invalid_argument("shortest_episode: start is final");
  depth[root.value] = 0;
  frontier.push_back(root);
  while (!frontier.empty()) {
    const StateIndex s = frontier.front();
    frontier.pop_front();
    for (Action a : kAllActions) {
      for (const Branch& b : transition_model(s, a)) {
        if (b.kind == StepKind::kFailed) continue;
        if (b.kind == StepKind::kFinished) return depth[s.value] + 1;
        if (depth[b.next.value] < 0) {
          depth[b.next.value] = depth[s.value] + 1;
          frontier.push_back(b.next);
        }
      }
    }
  }
  throw std::runtime_error("shortest_episode: no final state reachable");
}

EpisodeRecord greedy_rollout(const QTable& q, Location cup_side, int step_cap) {
  const StateSpace& space = state_space();
  EpisodeRecord ep;
  State s = initial_state(cup_side);
  ep.entered.push_back(space.index(s));
  // Abort's side is irrelevant to a greedy policy that never aborts; fix it.
  while (ep.steps < step_cap) {
    const StateIndex si = space.index(s);
    const Action a = greedy_action(q.row(si));
    ep.trajectory.push_back({si, a});
    ++ep.steps;
    const StepOutcome out = transition(s, a, cup_side);
    ep.total_reward += out.reward;
    ep.entered.push_back(space.successor(out));
    if (out.kind != StepKind::kContinued) {
      ep.end = out.kind == StepKind::kFailed ? EpisodeEnd::kFailed : EpisodeEnd::kFinished;
      return ep;
    }
    s = out.next;
  }
  ep.end = EpisodeEnd::kTruncated;
  return ep;
}

std::string_view to_string(PathClass c) {
  switch (c) {
    case PathClass::kA:
      return "A";
    case PathClass::kB:
      return "B";
    case PathClass::kNone:
      return "none";
  }
  return "?";
}

PathClass classify_trajectory_path(std::span<const Step> trajectory, EpisodeEnd end) {
  if (trajectory.empty()) throw std::invalid_argument("classify_trajectory_path: empty trajectory");
  if (end != EpisodeEnd::kFinished) return PathClass::kNone;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (trajectory[i].action == Action::kAbort) begin = i + 1;
  }
  const StateSpace& space = state_space();
  for (std::size_t i = begin; i < trajectory.size(); ++i) {
    const State& s = space.state(trajectory[i].state);
    if (wipes(s, trajectory[i].action)) return PathClass::kA;
    if (picks_up_cup(s, trajectory[i].action)) return PathClass::kB;
  }
  return PathClass::kNone;
}

std::size_t PathSets::count_a() const { return static_cast<std::size_t>(std::count(path_a.begin(), path_a.end(), true)); }
std::size_t PathSets::count_b() const { return static_cast<std::size_t>(std::count(path_b.begin(), path_b.end(), true)); }
std::size_t PathSets::count_shared() const {
  return static_cast<std::size_t>(std::count(shared.begin(), shared.end(), true));
}

PathSets compute_path_sets() { return PathSearch().run(); }

const PathSets& path_sets() {
  static const PathSets sets = compute_path_sets();
  return sets;
}

}  // namespace irl
