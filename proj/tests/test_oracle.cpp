#include "doctest.h"

#include <stdexcept>
#include <cmath>

#include "irl/oracle.hpp"

using namespace irl;

TEST_SUITE("oracle") {
  TEST_CASE("value iteration converges") {
    const OptimalSolution sol = optimal_q();
    CHECK(sol.residual < 1e-9);
    CHECK(bellman_residual(sol.q_star, 0.9) < 1e-9);
    CHECK(sol.min_steps_left == 13);
    CHECK(sol.min_steps_right == 13);
    const StateSpace& space = state_space();
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      if (!space.is_terminal(StateIndex{i})) continue;
      for (double v : sol.q_star.row(StateIndex{i})) CHECK(v == 0.0);
    }
  }

  TEST_CASE("myopic limit") {
    const OptimalSolution sol = optimal_q(0.0);
    const StateSpace& space = state_space();
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      const StateIndex s{i};
      if (space.is_terminal(s)) continue;
      for (Action a : kAllActions) {
        double expected = 0.0;
        for (const Branch& b : transition_model(s, a)) expected += b.probability * b.reward;
        CHECK(sol.q_star.at(s, a) == doctest::Approx(expected));
      }
    }
  }

  TEST_CASE("bad arguments") {
    CHECK_THROWS_AS(optimal_q(1.0), std::invalid_argument);
    CHECK_THROWS_AS(optimal_q(0.9, 0.0), std::invalid_argument);
  }

  TEST_CASE("transition model") {
    const StateSpace& space = state_space();
    const StateIndex s0 = space.initial(Location::kLeft);
    const auto abort = transition_model(s0, Action::kAbort);
    REQUIRE(abort.size() == 2);
    CHECK(abort[0].probability + abort[1].probability == 1.0);
    const auto clean = transition_model(s0, Action::kClean);
    REQUIRE(clean.size() == 1);
    CHECK(clean[0].kind == StepKind::kFailed);
    CHECK(clean[0].next == space.failed(Failure::kCleanAtHome));
  }

  TEST_CASE("greedy rollouts are optimal") {
    const OptimalSolution sol = optimal_q();
    for (Location side : {Location::kLeft, Location::kRight}) {
      const EpisodeRecord ep = greedy_rollout(sol.q_star, side);
      CHECK(ep.end == EpisodeEnd::kFinished);
      CHECK(ep.steps == shortest_episode(initial_state(side)));
      CHECK(ep.total_reward == doctest::Approx(1.0 - 0.01 * (ep.steps - 1)));
      const PathClass c = classify_trajectory_path(ep.trajectory, ep.end);
      CHECK(c == PathClass::kA);
    }
  }

  TEST_CASE("q_star is mirror symmetric") {
    const OptimalSolution sol = optimal_q();
    const StateSpace& space = state_space();
    for (std::uint32_t i = 0; i < space.size(); ++i) {
      const StateIndex s{i};
      for (Action a : kAllActions) {
        CHECK(sol.q_star.at(s, a) == doctest::Approx(sol.q_star.at(space.mirror(s), mirror(a))).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("shortest episode") {
    State s;
    s.hand = HandContent::kSponge;
    s.hand_pos = Location::kRight;
    s.cup_pos = Location::kLeft;
    s.sides = {SideCondition::kClean, SideCondition::kDirty};
    CHECK(shortest_episode(s) == 1);
    CHECK(shortest_episode(initial_state(Location::kLeft)) == shortest_episode(initial_state(Location::kRight)));
    s.sides = {SideCondition::kClean, SideCondition::kClean};
    CHECK_THROWS(shortest_episode(s));
  }

  TEST_CASE("classify trajectories") {
    const StateSpace& space = state_space();
    const StateIndex s0 = space.initial(Location::kLeft);
    State s = space.state(s0);
    std::vector<Step> traj;
    for (Action a : {Action::kGoLeft, Action::kGet}) {
      traj.push_back({space.index(s), a});
      s = transition(s, a, Location::kLeft).next;
    }
    CHECK(classify_trajectory_path(traj, EpisodeEnd::kFinished) == PathClass::kB);
    CHECK(classify_trajectory_path(traj, EpisodeEnd::kFailed) == PathClass::kNone);
    CHECK_THROWS_AS(classify_trajectory_path({}, EpisodeEnd::kFinished), std::invalid_argument);
    // only the part after the last abort counts
    traj.push_back({space.index(s), Action::kAbort});
    traj.push_back({s0, Action::kGet});
    const State sponge = transition(space.state(s0), Action::kGet, Location::kLeft).next;
    traj.push_back({space.index(sponge), Action::kGoRight});
    State at_right = transition(sponge, Action::kGoRight, Location::kLeft).next;
    traj.push_back({space.index(at_right), Action::kClean});
    CHECK(classify_trajectory_path(traj, EpisodeEnd::kFinished) == PathClass::kA);
  }

  TEST_CASE("path sets") {
    const PathSets& p = path_sets();
    const StateIndex s0 = state_space().initial(Location::kLeft);
    CHECK(p.shared[s0.value]);
    for (std::size_t i = 0; i < p.path_a.size(); ++i) {
      CHECK_FALSE((p.path_a[i] && p.path_b[i]));
      CHECK(int(p.path_a[i]) + int(p.path_b[i]) + int(p.shared[i]) <= 1);
    }
    CHECK(p.min_steps_a < p.min_steps_b);
    CHECK(p.min_steps_a == 13);
    CHECK(p.min_steps_b == 18);
    // strategy sizes of this transition table, s0 counted on both sides
    CHECK(p.strategy_a_states() == 20);
    CHECK(p.strategy_b_states() == 28);
    CHECK(p.count_shared() == 1);
    for (std::size_t f = 0; f < kNumFailures; ++f) {
      const StateIndex s = state_space().failed(static_cast<Failure>(f));
      CHECK_FALSE(p.path_a[s.value]);
      CHECK_FALSE(p.path_b[s.value]);
    }
  }
}
