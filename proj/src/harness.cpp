#include "irl/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "irl/format.hpp"

namespace irl {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string fmt(double x) { return format_double(x); }

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

/// Rows of a headed CSV as column-name -> value maps.
std::vector<std::map<std::string, std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header");
  const std::vector<std::string> header = split(line);
  std::vector<std::map<std::string, std::string>> rows;
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::vector<std::string> fields = split(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error(path.string() + ":" + std::to_string(number) + ": expected " +
                               std::to_string(header.size()) + " fields");
    }
    auto& row = rows.emplace_back();
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
  }
  return rows;
}

const std::string& column(const std::map<std::string, std::string>& row, const std::string& name) {
  const auto it = row.find(name);
  if (it == row.end()) throw std::runtime_error("missing column " + name);
  return it->second;
}

std::string experiment_name(const ExperimentConfig& cfg) { return std::string(to_string(cfg.experiment)); }

std::uint64_t learner_seed(const ExperimentConfig& cfg, const Cell& cell, std::uint32_t agent) {
  const std::string tag = experiment_name(cfg) + "/" + cell.trainer;
  if (cell.trainer == "autonomous") return derive_seed(cfg.base_seed, tag, {}, agent);
  const double coords[] = {static_cast<double>(cell.trainer_id), cell.feedback, cell.consistency, cell.obedience};
  return derive_seed(cfg.base_seed, tag, coords, agent);
}

LearnerParams learner_params(const ExperimentConfig& cfg, int episodes) {
  LearnerParams p = cfg.learner;
  p.episodes = episodes;
  return p;
}

std::string cell_prefix(const ExperimentConfig& cfg, const Cell& c) {
  return experiment_name(cfg) + "," + c.trainer + "," + std::to_string(c.trainer_id) + "," + fmt(c.feedback) +
         "," + fmt(c.consistency) + "," + fmt(c.obedience);
}

constexpr const char* kCellHeader = "experiment,trainer,trainer_id,feedback,consistency,obedience";

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

}  // namespace

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t pool_seed(std::uint64_t base_seed, std::uint32_t agent) {
  return derive_seed(base_seed, "pool", {}, agent);
}

std::optional<std::uint32_t> best_specialist_a(std::span<const TrainerProfile> pool) {
  const TrainerProfile* best = nullptr;
  for (const TrainerProfile& p : pool) {
    if (p.cls != TrainerClass::kSpecialistA) continue;
    if (!best || p.total_reward > best->total_reward ||
        (p.total_reward == best->total_reward && p.agent_id < best->agent_id)) {
      best = &p;
    }
  }
  if (!best) return std::nullopt;
  return best->agent_id;
}

PoolResult run_pool(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<std::size_t>(cfg.pool_size);
  PoolResult pool;
  pool.records.resize(n);
  pool.profiles.resize(n);
  const LearnerParams params = learner_params(cfg, cfg.episodes);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    const auto id = static_cast<std::uint32_t>(i);
    pool.records[i] = train_autonomous_agent(params, pool_seed(cfg.base_seed, id));
    pool.profiles[i] = make_profile(id, pool.records[i]);
  });
  pool.polymath = select_trainer(pool.profiles);
  pool.specialist_a = best_specialist_a(pool.profiles);
  return pool;
}

std::vector<Trainer> pick_trainers(Experiment e, const PoolResult& pool) {
  std::vector<Trainer> trainers;
  if (e == Experiment::kCompare) {
    if (!pool.specialist_a) throw std::runtime_error("pool has no specialist_a agent to use as a trainer");
    trainers.push_back({"specialist_a", pool.profiles.at(*pool.specialist_a), pool.records.at(*pool.specialist_a).qtable});
  }
  trainers.push_back({"polymath", pool.profiles.at(pool.polymath), pool.records.at(pool.polymath).qtable});
  return trainers;
}

double CellResult::visit_std_sum() const { return std::accumulate(visit_std.begin(), visit_std.end(), 0.0); }

std::vector<double> CellResult::aucs() const {
  std::vector<double> out;
  out.reserve(learners.size());
  for (const LearnerSummary& l : learners) out.push_back(l.auc);
  return out;
}

std::vector<double> CellResult::learner_finals(std::size_t window) const {
  std::vector<double> out;
  out.reserve(rewards.size());
  for (const auto& r : rewards) out.push_back(moving_average(r, window).back());
  return out;
}

StudyResult run_study(const ExperimentConfig& cfg, const std::vector<Trainer>& trainers) {
  cfg.validate();
  if (cfg.experiment == Experiment::kPool) throw std::invalid_argument("run_study: pool is not a learner study");
  StudyResult study;
  study.trainers = trainers;
  std::vector<Cell> cells;
  cells.push_back({"autonomous", 0, 0.0, 0.0, 0.0});
  for (const Trainer& t : trainers) {
    for (double l : cfg.feedback) {
      for (double c : cfg.consistency) {
        for (double o : cfg.obedience) cells.push_back({t.role, t.profile.agent_id, l, c, o});
      }
    }
  }
  const auto learners = static_cast<std::size_t>(cfg.learners);
  const auto window = static_cast<std::size_t>(cfg.curve_window);
  const LearnerParams params = learner_params(cfg, cfg.learner_episodes);
  const std::size_t num_states = state_space().size();
  study.cells.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult& r = study.cells[c];
    r.cell = cells[c];
    r.learners.resize(learners);
    r.rewards.resize(learners);
    r.visits.resize(learners);
  }
  std::map<std::string, const Trainer*> by_role;
  for (const Trainer& t : trainers) by_role[t.role] = &t;

  parallel_for(cells.size() * learners, cfg.workers, [&](std::size_t unit) {
    CellResult& r = study.cells[unit / learners];
    const auto k = static_cast<std::uint32_t>(unit % learners);
    const std::uint64_t seed = learner_seed(cfg, r.cell, k);
    RunRecord rec;
    if (r.cell.trainer == "autonomous") {
      rec = train_autonomous_agent(params, seed);
    } else {
      InteractionParams ip{r.cell.feedback, r.cell.consistency, r.cell.obedience, cfg.advice_noise};
      rec = train_irl_agent(by_role.at(r.cell.trainer)->q, params, ip, seed);
    }
    LearnerSummary& s = r.learners[k];
    s.agent_id = k;
    s.seed = seed;
    s.steps = rec.steps;
    s.advised_steps = rec.advised_steps;
    s.followed_steps = rec.followed_steps;
    r.rewards[k].assign(rec.episode_rewards.begin(), rec.episode_rewards.begin() + static_cast<std::ptrdiff_t>(window));
    s.auc = mean(r.rewards[k]);
    r.visits[k] = rec.visits.canonical;
  });

  for (CellResult& r : study.cells) {
    r.curve = aggregate_curve(r.rewards, window, static_cast<std::size_t>(cfg.smoothing_window));
    r.visit_mean.assign(num_states, 0.0);
    r.visit_std.assign(num_states, 0.0);
    std::vector<double> column(learners);
    for (std::size_t s = 0; s < num_states; ++s) {
      for (std::size_t k = 0; k < learners; ++k) column[k] = static_cast<double>(r.visits[k][s]);
      r.visit_mean[s] = mean(column);
      r.visit_std[s] = population_stddev(column);
    }
  }
  return study;
}

const CellResult* find_cell(const StudyResult& study, std::string_view trainer, double feedback,
                            double consistency, double obedience) {
  for (const CellResult& r : study.cells) {
    if (r.cell.trainer == trainer && r.cell.feedback == feedback && r.cell.consistency == consistency &&
        r.cell.obedience == obedience) {
      return &r;
    }
  }
  return nullptr;
}

const CellResult& autonomous_cell(const StudyResult& study) {
  for (const CellResult& r : study.cells) {
    if (r.cell.trainer == "autonomous") return r;
  }
  throw std::logic_error("study has no autonomous cell");
}

void write_states(const fs::path& dir) {
  fs::create_directories(dir);
  const fs::path path = dir / "states.csv";
  std::ofstream out = open_out(path);
  const StateSpace& space = state_space();
  out << "state_index,kind,hand,hand_pos,cup_pos,left,right,failure,mirror_index\n";
  static constexpr const char* kHand[] = {"free", "sponge", "cup"};
  auto side = [](SideCondition c) { return c == SideCondition::kClean ? "clean" : "dirty"; };
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    const StateIndex s{i};
    out << i << ",";
    if (space.is_failed(s)) {
      out << "failed,,,,,," << to_string(space.failure(s));
    } else {
      const State& st = space.state(s);
      out << (space.is_final(s) ? "final" : "task") << "," << kHand[static_cast<int>(st.hand)] << ","
          << to_string(st.hand_pos) << "," << to_string(st.cup_pos) << "," << side(st.sides[0]) << ","
          << side(st.sides[1]) << ",";
    }
    out << "," << space.mirror(s).value << "\n";
  }
  finish(out, path);
}

void write_pool(const fs::path& dir, const ExperimentConfig& cfg, const PoolResult& pool) {
  fs::create_directories(dir);
  const std::string exp = "pool";
  {
    const fs::path path = dir / "profiles.csv";
    std::ofstream out = open_out(path);
    out << "experiment,agent_id,class,path_a_fraction,mean_visits,std_visits,avg_episode_reward,total_reward,seed\n";
    for (const TrainerProfile& p : pool.profiles) {
      out << exp << "," << p.agent_id << "," << to_string(p.cls) << ","
          << (p.path_a_fraction ? fmt(*p.path_a_fraction) : std::string()) << "," << fmt(p.mean_visits) << ","
          << fmt(p.std_visits) << "," << fmt(p.avg_episode_reward) << "," << fmt(p.total_reward) << "," << p.seed
          << "\n";
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "visits.csv";
    std::ofstream out = open_out(path);
    out << "experiment,agent_id,seed,state_index,count,canonical_count\n";
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
      const RunRecord& r = pool.records[i];
      for (std::size_t s = 0; s < r.visits.raw.size(); ++s) {
        out << exp << "," << i << "," << r.seed << "," << s << "," << r.visits.raw[s] << ","
            << r.visits.canonical[s] << "\n";
      }
    }
    finish(out, path);
  }
  if (cfg.write_rewards) {
    const fs::path path = dir / "rewards.csv";
    std::ofstream out = open_out(path);
    out << "experiment,agent_id,seed,episode,reward,steps,end\n";
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
      const RunRecord& r = pool.records[i];
      for (std::size_t e = 0; e < r.episode_rewards.size(); ++e) {
        out << exp << "," << i << "," << r.seed << "," << e + 1 << "," << fmt(r.episode_rewards[e]) << ","
            << r.episode_steps[e] << "," << to_string(r.episode_ends[e]) << "\n";
      }
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "qtable.csv";
    std::ofstream out = open_out(path);
    out << "experiment,agent_id,seed,state_index,action,q_value\n";
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
      const RunRecord& r = pool.records[i];
      for (std::uint32_t s = 0; s < r.qtable.num_states(); ++s) {
        for (Action a : kAllActions) {
          out << exp << "," << i << "," << r.seed << "," << s << "," << to_string(a) << ","
              << fmt(r.qtable.at(StateIndex{s}, a)) << "\n";
        }
      }
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "trainers.csv";
    std::ofstream out = open_out(path);
    out << "experiment,role,agent_id,class,std_visits,total_reward,seed\n";
    auto row = [&](const char* role, std::uint32_t id) {
      const TrainerProfile& p = pool.profiles.at(id);
      out << exp << "," << role << "," << id << "," << to_string(p.cls) << "," << fmt(p.std_visits) << ","
          << fmt(p.total_reward) << "," << p.seed << "\n";
    };
    row("polymath", pool.polymath);
    if (pool.specialist_a) row("specialist_a", *pool.specialist_a);
    finish(out, path);
  }
}

void write_study(const fs::path& dir, const ExperimentConfig& cfg, const StudyResult& study) {
  fs::create_directories(dir);
  const std::string exp = experiment_name(cfg);
  {
    const fs::path path = dir / "curves.csv";
    std::ofstream out = open_out(path);
    out << kCellHeader << ",agents,base_seed,episode,mean_reward,std_reward,smoothed_reward\n";
    for (const CellResult& r : study.cells) {
      const std::string prefix = cell_prefix(cfg, r.cell) + "," + std::to_string(r.learners.size()) + "," +
                                 std::to_string(cfg.base_seed);
      for (std::size_t e = 0; e < r.curve.mean.size(); ++e) {
        out << prefix << "," << e + 1 << "," << fmt(r.curve.mean[e]) << "," << fmt(r.curve.stddev[e]) << ","
            << fmt(r.curve.smoothed[e]) << "\n";
      }
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "cells.csv";
    std::ofstream out = open_out(path);
    out << kCellHeader << ",agents,base_seed,mean_auc,final_smoothed_reward,visit_std_sum,advice_rate,follow_rate\n";
    for (const CellResult& r : study.cells) {
      std::uint64_t steps = 0, advised = 0, followed = 0;
      for (const LearnerSummary& l : r.learners) {
        steps += l.steps;
        advised += l.advised_steps;
        followed += l.followed_steps;
      }
      out << cell_prefix(cfg, r.cell) << "," << r.learners.size() << "," << cfg.base_seed << ","
          << fmt(mean(r.aucs())) << "," << fmt(r.final_smoothed()) << "," << fmt(r.visit_std_sum()) << ","
          << fmt(steps ? static_cast<double>(advised) / static_cast<double>(steps) : 0.0) << ","
          << fmt(advised ? static_cast<double>(followed) / static_cast<double>(advised) : 0.0) << "\n";
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "learners.csv";
    std::ofstream out = open_out(path);
    out << kCellHeader << ",agent_id,seed,auc,steps,advised_steps,followed_steps\n";
    for (const CellResult& r : study.cells) {
      const std::string prefix = cell_prefix(cfg, r.cell);
      for (const LearnerSummary& l : r.learners) {
        out << prefix << "," << l.agent_id << "," << l.seed << "," << fmt(l.auc) << "," << l.steps << ","
            << l.advised_steps << "," << l.followed_steps << "\n";
      }
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "visit_spread.csv";
    std::ofstream out = open_out(path);
    out << kCellHeader << ",agents,base_seed,state_index,mean_count,std_count\n";
    for (const CellResult& r : study.cells) {
      const std::string prefix = cell_prefix(cfg, r.cell) + "," + std::to_string(r.learners.size()) + "," +
                                 std::to_string(cfg.base_seed);
      for (std::size_t s = 0; s < r.visit_mean.size(); ++s) {
        out << prefix << "," << s << "," << fmt(r.visit_mean[s]) << "," << fmt(r.visit_std[s]) << "\n";
      }
    }
    finish(out, path);
  }
  {
    const fs::path path = dir / "trainers.csv";
    std::ofstream out = open_out(path);
    out << "experiment,role,agent_id,class,std_visits,total_reward,seed\n";
    for (const Trainer& t : study.trainers) {
      out << exp << "," << t.role << "," << t.profile.agent_id << "," << to_string(t.profile.cls) << ","
          << fmt(t.profile.std_visits) << "," << fmt(t.profile.total_reward) << "," << t.profile.seed << "\n";
    }
    finish(out, path);
  }
  if (cfg.write_rewards) {
    {
      const fs::path path = dir / "rewards.csv";
      std::ofstream out = open_out(path);
      out << kCellHeader << ",agent_id,seed,episode,reward\n";
      for (const CellResult& r : study.cells) {
        const std::string prefix = cell_prefix(cfg, r.cell);
        for (std::size_t k = 0; k < r.rewards.size(); ++k) {
          for (std::size_t e = 0; e < r.rewards[k].size(); ++e) {
            out << prefix << "," << k << "," << r.learners[k].seed << "," << e + 1 << "," << fmt(r.rewards[k][e])
                << "\n";
          }
        }
      }
      finish(out, path);
    }
    {
      const fs::path path = dir / "visits.csv";
      std::ofstream out = open_out(path);
      out << kCellHeader << ",agent_id,seed,state_index,canonical_count\n";
      for (const CellResult& r : study.cells) {
        const std::string prefix = cell_prefix(cfg, r.cell);
        for (std::size_t k = 0; k < r.visits.size(); ++k) {
          for (std::size_t s = 0; s < r.visits[k].size(); ++s) {
            out << prefix << "," << k << "," << r.learners[k].seed << "," << s << "," << r.visits[k][s] << "\n";
          }
        }
      }
      finish(out, path);
    }
  }
}

void write_manifest(const fs::path& dir, const ExperimentConfig& cfg, const std::vector<std::string>& files) {
  fs::create_directories(dir);
  nlohmann::ordered_json j;
  j["experiment"] = experiment_name(cfg);
  nlohmann::ordered_json config;
  std::istringstream echo(format_config(cfg));
  std::string line;
  while (std::getline(echo, line)) {
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) config[line.substr(0, eq)] = line.substr(eq + 3);
  }
  j["config"] = config;
  j["seeds"] = {{"base_seed", cfg.base_seed}, {"derivation", "fnv1a64+splitmix64"}};
  j["versions"] = {{"irl_lab", kVersion}, {"compiler", __VERSION__}, {"cxx_standard", __cplusplus}};
  j["state_count"] = state_space().size();
  j["created_utc"] = utc_timestamp();
  j["files"] = files;
  const fs::path path = dir / "manifest.json";
  std::ofstream out = open_out(path);
  out << j.dump(2) << "\n";
  finish(out, path);
}

PoolResult read_pool(const fs::path& dir) {
  PoolResult pool;
  for (const auto& row : read_csv(dir / "profiles.csv")) {
    TrainerProfile p;
    p.agent_id = static_cast<std::uint32_t>(std::stoul(column(row, "agent_id")));
    if (p.agent_id != pool.profiles.size()) throw std::runtime_error("profiles.csv: agent ids must be 0..n-1 in order");
    const auto cls = parse_trainer_class(column(row, "class"));
    if (!cls) throw std::runtime_error("profiles.csv: unknown class " + column(row, "class"));
    p.cls = *cls;
    if (!column(row, "path_a_fraction").empty()) p.path_a_fraction = std::stod(column(row, "path_a_fraction"));
    p.mean_visits = std::stod(column(row, "mean_visits"));
    p.std_visits = std::stod(column(row, "std_visits"));
    p.avg_episode_reward = std::stod(column(row, "avg_episode_reward"));
    p.total_reward = std::stod(column(row, "total_reward"));
    p.seed = std::stoull(column(row, "seed"));
    pool.profiles.push_back(p);
  }
  if (pool.profiles.empty()) throw std::runtime_error("profiles.csv has no agents");
  pool.records.resize(pool.profiles.size());
  for (std::size_t i = 0; i < pool.records.size(); ++i) pool.records[i].seed = pool.profiles[i].seed;
  const StateSpace& space = state_space();
  for (const auto& row : read_csv(dir / "qtable.csv")) {
    const auto id = std::stoul(column(row, "agent_id"));
    const auto s = std::stoul(column(row, "state_index"));
    const auto a = parse_action(column(row, "action"));
    if (id >= pool.records.size() || s >= space.size() || !a) throw std::runtime_error("qtable.csv: bad row");
    // strtod reads back the shortest round-trip text exactly.
    pool.records[id].qtable.at(StateIndex{static_cast<std::uint32_t>(s)}, *a) = std::strtod(column(row, "q_value").c_str(), nullptr);
  }
  pool.polymath = select_trainer(pool.profiles);
  pool.specialist_a = best_specialist_a(pool.profiles);
  return pool;
}

void run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = cfg.out_dir;
  std::vector<std::string> files = {"states.csv"};
  write_states(dir);
  auto pool_files = [&] {
    files.insert(files.end(), {"profiles.csv", "visits.csv", "qtable.csv", "trainers.csv"});
    if (cfg.write_rewards) files.push_back("rewards.csv");
  };
  if (cfg.experiment == Experiment::kPool) {
    write_pool(dir, cfg, run_pool(cfg));
    pool_files();
  } else {
    PoolResult pool;
    if (!cfg.pool_dir.empty()) {
      pool = read_pool(cfg.pool_dir);
    } else {
      pool = run_pool(cfg);
      ExperimentConfig pool_cfg = cfg;
      pool_cfg.write_rewards = false;
      write_pool(dir / "pool", pool_cfg, pool);
      files.push_back("pool/");
    }
    const StudyResult study = run_study(cfg, pick_trainers(cfg.experiment, pool));
    write_study(dir, cfg, study);
    files.insert(files.end(), {"curves.csv", "cells.csv", "learners.csv", "visit_spread.csv", "trainers.csv"});
    if (cfg.write_rewards) files.insert(files.end(), {"rewards.csv", "visits.csv"});
  }
  write_manifest(dir, cfg, files);
}

std::string report(const fs::path& dir) {
  std::ostringstream out;
  out << std::setprecision(6);
  bool any = false;
  if (fs::exists(dir / "profiles.csv")) {
    any = true;
    const PoolResult pool = read_pool(dir);
    std::map<std::string, int> census;
    std::map<std::string, double> reward, sd;
    for (const TrainerProfile& p : pool.profiles) {
      const std::string c(to_string(p.cls));
      ++census[c];
      reward[c] += p.total_reward;
      sd[c] += p.std_visits;
    }
    out << "pool: " << pool.profiles.size() << " agents\n";
    for (const auto& [c, n] : census) {
      out << "  " << c << ": " << n << " agents, mean R " << reward[c] / n << ", mean std_visits " << sd[c] / n
          << "\n";
    }
    const TrainerProfile& t = pool.profiles[pool.polymath];
    out << "  T* = agent " << t.agent_id << " (" << to_string(t.cls) << ", std_visits " << t.std_visits << ")\n";
    if (pool.specialist_a) {
      out << "  specialist_a trainer = agent " << *pool.specialist_a << " (R "
          << pool.profiles[*pool.specialist_a].total_reward << ")\n";
    }
  }
  if (fs::exists(dir / "cells.csv")) {
    any = true;
    out << "cells (trainer, L, C, O: mean reward over reported episodes, final smoothed, summed visit std)\n";
    for (const auto& row : read_csv(dir / "cells.csv")) {
      out << "  " << column(row, "trainer") << " " << column(row, "feedback") << " " << column(row, "consistency")
          << " " << column(row, "obedience") << ": " << std::stod(column(row, "mean_auc")) << ", "
          << std::stod(column(row, "final_smoothed_reward")) << ", " << std::stod(column(row, "visit_std_sum"))
          << "\n";
    }
  }
  if (!any) throw std::runtime_error("no profiles.csv or cells.csv in " + dir.string());
  return out.str();
}

}  // namespace irl
