#include "doctest.h"

#include <stdexcept>
#include <array>
#include <cmath>

#include "irl/interactive.hpp"
#include "irl/oracle.hpp"
#include "irl/stats.hpp"

using namespace irl;

namespace {

std::array<int, 7> executed(const QTable& learner, const QTable& trainer, StateIndex s,
                            const InteractionParams& ip, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::array<int, 7> counts{};
  for (int i = 0; i < n; ++i) ++counts[action_index(select_interactive_action(learner, trainer, s, 0.1, ip, rng).action)];
  return counts;
}

std::array<int, 7> autonomous(const QTable& learner, StateIndex s, int n, std::uint64_t seed) {
  Rng rng(seed);
  std::array<int, 7> counts{};
  for (int i = 0; i < n; ++i) ++counts[action_index(epsilon_greedy(learner.row(s), 0.1, rng))];
  return counts;
}

// Two-sample chi-square homogeneity statistic over the 7 actions.
double chi2_two_sample(const std::array<int, 7>& a, const std::array<int, 7>& b) {
  double na = 0, nb = 0;
  for (int i = 0; i < 7; ++i) {
    na += a[i];
    nb += b[i];
  }
  double chi2 = 0.0;
  for (int i = 0; i < 7; ++i) {
    const double total = a[i] + b[i];
    if (total == 0) continue;
    const double ea = total * na / (na + nb), eb = total * nb / (na + nb);
    chi2 += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
  }
  return chi2;
}

}  // namespace

TEST_SUITE("interactive") {
  TEST_CASE("validation") {
    InteractionParams ip;
    CHECK_NOTHROW(ip.validate());
    ip.feedback = 1.5;
    CHECK_THROWS(ip.validate());
    ip = {};
    ip.obedience = -0.1;
    CHECK_THROWS(ip.validate());
  }

  TEST_CASE("reductions at a fixed table") {
    Rng rng(2);
    const QTable learner = init_qtable(rng);
    const QTable trainer = init_qtable(rng);
    const StateIndex s{5};
    REQUIRE(greedy_action(learner.row(s)) != greedy_action(trainer.row(s)));
    const int n = 60000;
    const auto base = autonomous(learner, s, n, 100);
    InteractionParams no_feedback{0.0, 1.0, 1.0};
    InteractionParams no_obedience{0.8, 1.0, 0.0};
    // 6 degrees of freedom, 0.999 quantile
    CHECK(chi2_two_sample(base, executed(learner, trainer, s, no_feedback, n, 200)) < 22.46);
    CHECK(chi2_two_sample(base, executed(learner, trainer, s, no_obedience, n, 300)) < 22.46);
  }

  TEST_CASE("full advice executes the trainer's greedy action") {
    Rng rng(4);
    const QTable learner = init_qtable(rng);
    const QTable trainer = init_qtable(rng);
    InteractionParams ip{1.0, 1.0, 1.0};
    for (std::uint32_t i = 0; i < 10; ++i) {
      const StateIndex s{i};
      for (int k = 0; k < 50; ++k) {
        const ActionChoice c = select_interactive_action(learner, trainer, s, 0.1, ip, rng);
        CHECK(c.action == greedy_action(trainer.row(s)));
        CHECK(c.advised);
        CHECK(c.followed);
      }
    }
  }

  TEST_CASE("optimal trainer with full advice plays shortest episodes") {
    const OptimalSolution sol = optimal_q();
    Rng rng(6);
    QTable learner = init_qtable(rng);
    LearnerParams p;
    InteractionParams ip{1.0, 1.0, 1.0};
    const EpisodeRecord ep = run_irl_episode(learner, sol.q_star, p, ip, rng, Location::kLeft);
    CHECK(ep.end == EpisodeEnd::kFinished);
    CHECK(ep.steps == shortest_episode(initial_state(Location::kLeft)));
    CHECK(ep.advised_steps == ep.steps);
    CHECK(ep.followed_steps == ep.steps);
  }

  TEST_CASE("advice and follow rates") {
    const OptimalSolution sol = optimal_q();
    LearnerParams p;
    p.episodes = 2000;
    InteractionParams ip{0.4, 0.9, 0.6};
    const RunRecord r = train_irl_agent(sol.q_star, p, ip, 31);
    REQUIRE(r.steps > 20000);
    const double n = static_cast<double>(r.steps);
    const double advised = static_cast<double>(r.advised_steps);
    const double followed = static_cast<double>(r.followed_steps);
    CHECK(std::abs(advised / n - 0.4) <= 3 * std::sqrt(0.4 * 0.6 / n));
    CHECK(std::abs(followed / advised - 0.6) <= 3 * std::sqrt(0.6 * 0.4 / advised));
  }

  TEST_CASE("zero feedback matches autonomous episode rewards") {
    Rng seeds(12);
    LearnerParams p;
    const OptimalSolution sol = optimal_q();
    std::vector<double> irl_r, auto_r;
    Rng a(1), b(2);
    for (int i = 0; i < 10000; ++i) {
      QTable q1 = init_qtable(a);
      QTable q2 = init_qtable(b);
      irl_r.push_back(run_irl_episode(q1, sol.q_star, p, InteractionParams{0.0, 1.0, 1.0}, a).total_reward);
      auto_r.push_back(run_autonomous_episode(q2, p, b).total_reward);
    }
    CHECK(welch_t_test(irl_r, auto_r).p > 0.001);
  }

  TEST_CASE("determinism") {
    LearnerParams p;
    p.episodes = 200;
    const OptimalSolution sol = optimal_q();
    InteractionParams ip{0.25, 0.75, 0.5};
    const RunRecord a = train_irl_agent(sol.q_star, p, ip, 9);
    const RunRecord b = train_irl_agent(sol.q_star, p, ip, 9);
    CHECK(a.qtable == b.qtable);
    CHECK(a.episode_rewards == b.episode_rewards);
    CHECK(a.visits.raw == b.visits.raw);
  }
}
