#include "doctest.h"

#include <stdexcept>
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "irl/harness.hpp"

using namespace irl;
namespace fs = std::filesystem;

namespace {

ExperimentConfig small(Experiment e, const fs::path& out) {
  ExperimentConfig c = default_config(e);
  c.pool_size = 3;
  c.learners = 4;
  c.episodes = 300;
  c.learner_episodes = 120;
  c.curve_window = 100;
  c.feedback = {0.5};
  c.consistency = {1.0};
  c.obedience = {0.0, 1.0};
  c.out_dir = out.string();
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const fs::path& p) {
  const std::string s = slurp(p);
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("irl_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("parallel_for") {
    std::vector<std::atomic<int>> hits(200);
    parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(parallel_for(10, 3, [](std::size_t i) {
                      if (i == 7) throw std::runtime_error("x");
                    }),
                    std::runtime_error);
  }

  TEST_CASE("pool files") {
    const fs::path out = scratch_dir("pool");
    ExperimentConfig c = small(Experiment::kPool, out);
    const PoolResult pool = run_pool(c);
    REQUIRE(pool.profiles.size() == 3);
    write_pool(out, c, pool);
    CHECK(lines(out / "profiles.csv") == 4);
    CHECK(lines(out / "visits.csv") == 1 + 3 * state_space().size());
    CHECK(lines(out / "qtable.csv") == 1 + 3 * state_space().size() * kNumActions);
    for (const auto& p : pool.profiles) CHECK(pool.profiles[pool.polymath].std_visits <= p.std_visits);

    const PoolResult back = read_pool(out);
    REQUIRE(back.records.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(back.records[i].qtable == pool.records[i].qtable);
      CHECK(back.profiles[i].std_visits == pool.profiles[i].std_visits);
    }
    CHECK(back.polymath == pool.polymath);
    fs::remove_all(out);
  }

  TEST_CASE("study cells") {
    const fs::path out = scratch_dir("study");
    ExperimentConfig c = small(Experiment::kSweep, out);
    const PoolResult pool = run_pool(c);
    const StudyResult s = run_study(c, pick_trainers(c.experiment, pool));
    REQUIRE(s.cells.size() == 3);
    CHECK(s.cells.front().cell.trainer == "autonomous");
    const CellResult* cell = find_cell(s, "polymath", 0.5, 1.0, 1.0);
    REQUIRE(cell != nullptr);
    CHECK(cell->learners.size() == 4);
    CHECK(cell->curve.mean.size() == 100);
    const auto finals = cell->learner_finals(30);
    CHECK(mean(finals) == doctest::Approx(cell->final_smoothed()));
    CHECK(find_cell(s, "polymath", 0.25, 1.0, 1.0) == nullptr);
    fs::remove_all(out);
  }

  TEST_CASE("outputs do not depend on the worker count") {
    const fs::path a = scratch_dir("w1"), b = scratch_dir("w4");
    ExperimentConfig c = small(Experiment::kSweep, a);
    c.workers = 1;
    run_experiment(c);
    c.out_dir = b.string();
    c.workers = 4;
    run_experiment(c);
    for (const char* f : {"curves.csv", "cells.csv", "learners.csv", "visit_spread.csv", "trainers.csv",
                          "pool/profiles.csv", "pool/qtable.csv", "pool/visits.csv"}) {
      CAPTURE(f);
      REQUIRE(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
    CHECK(fs::exists(a / "manifest.json"));
    CHECK(report(a).find("polymath") != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
  }
}
