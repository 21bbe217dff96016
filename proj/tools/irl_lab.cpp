// Command-line front end for the cleaning-task IRL experiments.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "irl/config.hpp"
#include "irl/harness.hpp"
#include "irl/oracle.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::optional<int> agents;
  std::optional<int> episodes;
  std::string feedback, consistency, obedience;
  std::string in;
  std::optional<unsigned> workers;
};

void add_common(CLI::App* cmd, Overrides& o, bool grids) {
  cmd->add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--agents", o.agents, "agents per pool and per cell")->check(CLI::PositiveNumber);
  cmd->add_option("--episodes", o.episodes, "training episodes per agent")->check(CLI::PositiveNumber);
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  if (grids) {
    cmd->add_option("--feedback", o.feedback, "probability-of-feedback grid, comma separated");
    cmd->add_option("--consistency", o.consistency, "consistency grid, comma separated");
    cmd->add_option("--obedience", o.obedience, "obedience grid, comma separated");
    cmd->add_option("--in", o.in, "directory of a finished pool run to take trainers from");
  }
}

irl::ExperimentConfig build_config(irl::Experiment e, const Overrides& o) {
  irl::ExperimentConfig cfg = irl::default_config(e);
  if (!o.config.empty()) cfg = irl::load_config(o.config, cfg);
  if (cfg.experiment != e) {
    throw std::runtime_error("config is for experiment '" + std::string(irl::to_string(cfg.experiment)) + "'");
  }
  if (o.seed) cfg.base_seed = *o.seed;
  if (!o.out.empty()) cfg.out_dir = o.out;
  if (o.agents) cfg.pool_size = cfg.learners = *o.agents;
  if (o.episodes) {
    cfg.episodes = cfg.learner_episodes = *o.episodes;
    if (cfg.curve_window > *o.episodes) cfg.curve_window = *o.episodes;
  }
  if (o.workers) cfg.workers = *o.workers;
  if (!o.feedback.empty()) cfg.feedback = irl::parse_grid(o.feedback);
  if (!o.consistency.empty()) cfg.consistency = irl::parse_grid(o.consistency);
  if (!o.obedience.empty()) cfg.obedience = irl::parse_grid(o.obedience);
  if (!o.in.empty()) cfg.pool_dir = o.in;
  cfg.validate();
  return cfg;
}

int oracle_check() {
  const irl::StateSpace& space = irl::state_space();
  const irl::OptimalSolution sol = irl::optimal_q();
  const irl::PathSets& paths = irl::path_sets();
  const auto left = irl::greedy_rollout(sol.q_star, irl::Location::kLeft);
  const auto right = irl::greedy_rollout(sol.q_star, irl::Location::kRight);
  std::cout << "states: " << space.size() << " (" << space.num_task_states() << " task states, "
            << irl::kNumFailures << " failed-states)\n"
            << "bellman residual: " << sol.residual << " after " << sol.sweeps << " sweeps\n"
            << "greedy rollout steps: left " << left.steps << " (" << irl::to_string(left.end) << "), right "
            << right.steps << " (" << irl::to_string(right.end) << "); shortest " << sol.min_steps_left << "/"
            << sol.min_steps_right << "\n"
            << "path A: " << paths.strategy_a_states() << " states, " << paths.min_steps_a << " actions minimum\n"
            << "path B: " << paths.strategy_b_states() << " states, " << paths.min_steps_b << " actions minimum\n";
  const bool ok = space.size() == 53 && sol.residual < 1e-9;
  std::cout << (ok ? "ok" : "FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive reinforcement learning experiments on the cleaning task"};
  app.require_subcommand(1);

  Overrides pool_o, compare_o, sweep_o, fine_o;
  std::string select_in, report_in;
  auto* pool = app.add_subcommand("pool", "train a pool of autonomous agents and profile them");
  add_common(pool, pool_o, false);
  auto* select = app.add_subcommand("select-trainer", "print T* of a finished pool run");
  select->add_option("--in", select_in, "pool output directory")->required();
  auto* compare = app.add_subcommand("compare", "autonomous vs specialist-A-advised vs polymath-advised learners");
  add_common(compare, compare_o, true);
  auto* sweep = app.add_subcommand("sweep", "learners over the feedback x consistency x obedience grid");
  add_common(sweep, sweep_o, true);
  auto* fine = app.add_subcommand("fine-sweep", "fine consistency grid at feedback 0.25");
  add_common(fine, fine_o, true);
  auto* oracle = app.add_subcommand("oracle-check", "state count, value iteration and path analysis");
  auto* rep = app.add_subcommand("report", "summarize an output directory");
  rep->add_option("--in", report_in, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*oracle) return oracle_check();
    if (*select) {
      const irl::PoolResult p = irl::read_pool(select_in);
      std::cout << p.polymath << "\n";
      return 0;
    }
    if (*rep) {
      std::cout << irl::report(report_in);
      return 0;
    }
    irl::ExperimentConfig cfg;
    if (*pool) cfg = build_config(irl::Experiment::kPool, pool_o);
    if (*compare) cfg = build_config(irl::Experiment::kCompare, compare_o);
    if (*sweep) cfg = build_config(irl::Experiment::kSweep, sweep_o);
    if (*fine) cfg = build_config(irl::Experiment::kFineSweep, fine_o);
    irl::run_experiment(cfg);
    std::cout << "wrote " << cfg.out_dir << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
