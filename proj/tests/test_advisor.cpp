#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <array>
#include <cmath>

#include "irl/advisor.hpp"

using namespace irl;

namespace {

TrainerProfile profile(std::uint32_t id, double sd) {
  TrainerProfile p;
  p.agent_id = id;
  p.std_visits = sd;
  return p;
}

std::vector<std::uint64_t> mass_on(const std::vector<bool>& set, std::uint64_t amount) {
  std::vector<std::uint64_t> counts(set.size(), 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set[i]) counts[i] = amount;
  }
  return counts;
}

}  // namespace

TEST_SUITE("advisor") {
  TEST_CASE("visit_stats") {
    const std::vector<std::uint64_t> flat = {2, 2, 2};
    CHECK(visit_stats(flat).mean == 2.0);
    CHECK(visit_stats(flat).stddev == 0.0);
    const std::vector<std::uint64_t> pair = {0, 4};
    CHECK(visit_stats(pair).mean == 2.0);
    CHECK(visit_stats(pair).stddev == 2.0);
    CHECK_THROWS_AS(visit_stats({}), std::invalid_argument);
  }

  TEST_CASE("visit_stats divides by N") {
    // 53 counts totalling 59424, a mean of 1121.21 to two decimals
    std::vector<std::uint64_t> counts(53);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < 52; ++i) {
      counts[i] = (i * 389) % 2300;
      total += counts[i];
    }
    counts[52] = 59424 - total;
    const VisitStats s = visit_stats(counts);
    CHECK(s.mean == doctest::Approx(1121.21).epsilon(1e-5));
    double ss = 0.0;
    for (auto c : counts) ss += (double(c) - s.mean) * (double(c) - s.mean);
    CHECK(s.stddev == doctest::Approx(std::sqrt(ss / 53)));
    CHECK(s.stddev < std::sqrt(ss / 52));
  }

  TEST_CASE("classification") {
    const PathSets& paths = path_sets();
    Classification a = classify_visits(mass_on(paths.path_a, 10), paths);
    CHECK(a.cls == TrainerClass::kSpecialistA);
    CHECK(a.path_a_fraction == 1.0);
    Classification b = classify_visits(mass_on(paths.path_b, 10), paths);
    CHECK(b.cls == TrainerClass::kSpecialistB);
    CHECK(b.path_a_fraction == 0.0);

    // equal mass on both sides
    std::vector<std::uint64_t> counts(paths.path_a.size(), 0);
    const auto na = static_cast<std::uint64_t>(paths.count_a());
    const auto nb = static_cast<std::uint64_t>(paths.count_b());
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (paths.path_a[i]) counts[i] = nb;
      if (paths.path_b[i]) counts[i] = na;
    }
    Classification mid = classify_visits(counts, paths);
    CHECK(mid.cls == TrainerClass::kPolymath);
    CHECK(*mid.path_a_fraction == doctest::Approx(0.5));
    for (auto& c : counts) c *= 7;
    CHECK(*classify_visits(counts, paths).path_a_fraction == doctest::Approx(0.5));

    Classification none = classify_visits(std::vector<std::uint64_t>(paths.path_a.size(), 0), paths);
    CHECK(none.cls == TrainerClass::kPolymath);
    CHECK_FALSE(none.path_a_fraction.has_value());
    CHECK_THROWS_AS(classify_visits(std::vector<std::uint64_t>(3, 0), paths), std::invalid_argument);
  }

  TEST_CASE("select_trainer") {
    const std::vector<TrainerProfile> fixture = {profile(0, 1570.75), profile(1, 1628.70), profile(2, 947.96)};
    CHECK(select_trainer(fixture) == 2);
    CHECK(select_trainer(std::vector{profile(5, 3.0)}) == 5);
    const std::vector<TrainerProfile> tie = {profile(3, 1.0), profile(1, 1.0), profile(2, 4.0)};
    CHECK(select_trainer(tie) == 1);
    std::vector<TrainerProfile> perm = fixture;
    std::reverse(perm.begin(), perm.end());
    CHECK(select_trainer(perm) == 2);
    CHECK_THROWS_AS(select_trainer({}), std::invalid_argument);
  }

  TEST_CASE("advise") {
    Rng rng(8);
    QTable q = init_qtable(rng);
    const StateIndex s{3};
    const Action greedy = greedy_action(q.row(s));
    int hits = 0;
    for (int i = 0; i < 1000; ++i) hits += advise(q, s, 1.0, rng) == greedy;
    CHECK(hits == 1000);
    std::array<int, 7> counts{};
    for (int i = 0; i < 70000; ++i) ++counts[action_index(advise(q, s, 0.0, rng))];
    CHECK(counts[action_index(greedy)] == 0);
    for (Action a : kAllActions) {
      if (a != greedy) CHECK(counts[action_index(a)] == doctest::Approx(70000 / 6.0).epsilon(0.05));
    }
    hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) hits += advise(q, s, 0.75, rng) == greedy;
    CHECK(std::abs(hits / double(n) - 0.75) <= 0.02);
    hits = 0;
    for (int i = 0; i < n; ++i) hits += advise(q, s, 0.0, rng, AdviceNoise::kUniformAll) == greedy;
    CHECK(hits / double(n) == doctest::Approx(1.0 / 7).epsilon(0.05));
  }

  TEST_CASE("profiles") {
    LearnerParams p;
    p.episodes = 400;
    const RunRecord r = train_autonomous_agent(p, 4);
    const TrainerProfile t = make_profile(9, r);
    CHECK(t.agent_id == 9);
    CHECK(t.seed == 4);
    CHECK(t.std_visits >= 0.0);
    CHECK(t.total_reward == doctest::Approx(t.avg_episode_reward * 400));
    CHECK(t.cls == classify_trainer(r).cls);
    CHECK(t.mean_visits == doctest::Approx(double(r.visits.total()) / state_space().size()));
  }

  TEST_CASE("class names") {
    for (auto c : {TrainerClass::kSpecialistA, TrainerClass::kSpecialistB, TrainerClass::kPolymath}) {
      CHECK(parse_trainer_class(to_string(c)) == c);
    }
    CHECK_FALSE(parse_trainer_class("expert").has_value());
  }
}
