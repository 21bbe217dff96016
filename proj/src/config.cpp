#include "irl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "irl/format.hpp"

namespace irl {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw std::invalid_argument("not a boolean: '" + std::string(text) + "'");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"pool_size", [](ExperimentConfig& c, std::string_view v) { c.pool_size = parse_number<int>(v); }},
      {"learners", [](ExperimentConfig& c, std::string_view v) { c.learners = parse_number<int>(v); }},
      {"episodes", [](ExperimentConfig& c, std::string_view v) { c.episodes = parse_number<int>(v); }},
      {"learner_episodes",
       [](ExperimentConfig& c, std::string_view v) { c.learner_episodes = parse_number<int>(v); }},
      {"curve_window", [](ExperimentConfig& c, std::string_view v) { c.curve_window = parse_number<int>(v); }},
      {"smoothing_window",
       [](ExperimentConfig& c, std::string_view v) { c.smoothing_window = parse_number<int>(v); }},
      {"alpha", [](ExperimentConfig& c, std::string_view v) { c.learner.alpha = parse_number<double>(v); }},
      {"gamma", [](ExperimentConfig& c, std::string_view v) { c.learner.gamma = parse_number<double>(v); }},
      {"epsilon", [](ExperimentConfig& c, std::string_view v) { c.learner.epsilon = parse_number<double>(v); }},
      {"step_cap", [](ExperimentConfig& c, std::string_view v) { c.learner.step_cap = parse_number<int>(v); }},
      {"feedback", [](ExperimentConfig& c, std::string_view v) { c.feedback = parse_grid(v); }},
      {"consistency", [](ExperimentConfig& c, std::string_view v) { c.consistency = parse_grid(v); }},
      {"obedience", [](ExperimentConfig& c, std::string_view v) { c.obedience = parse_grid(v); }},
      {"advice_noise",
       [](ExperimentConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "exclude_greedy") {
           c.advice_noise = AdviceNoise::kExcludeGreedy;
         } else if (v == "uniform_all") {
           c.advice_noise = AdviceNoise::kUniformAll;
         } else {
           throw std::invalid_argument("advice_noise must be exclude_greedy or uniform_all");
         }
       }},
      {"base_seed",
       [](ExperimentConfig& c, std::string_view v) { c.base_seed = parse_number<std::uint64_t>(v); }},
      {"out", [](ExperimentConfig& c, std::string_view v) { c.out_dir = std::string(trim(v)); }},
      {"pool_dir", [](ExperimentConfig& c, std::string_view v) { c.pool_dir = std::string(trim(v)); }},
      {"workers", [](ExperimentConfig& c, std::string_view v) { c.workers = parse_number<unsigned>(v); }},
      {"write_rewards", [](ExperimentConfig& c, std::string_view v) { c.write_rewards = parse_bool(v); }},
  };
  return table;
}

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  for (double x : grid) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument(std::string(name) + " values must lie in [0, 1]");
  }
}

}  // namespace

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::kPool:
      return "pool";
    case Experiment::kCompare:
      return "compare";
    case Experiment::kSweep:
      return "sweep";
    case Experiment::kFineSweep:
      return "fine_sweep";
  }
  return "?";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (Experiment e : {Experiment::kPool, Experiment::kCompare, Experiment::kSweep, Experiment::kFineSweep}) {
    if (to_string(e) == name) return e;
  }
  if (name == "fine-sweep") return Experiment::kFineSweep;
  return std::nullopt;
}

void ExperimentConfig::validate() const {
  learner.validate();
  if (pool_size < 1) throw std::invalid_argument("pool_size must be at least 1");
  if (learners < 1) throw std::invalid_argument("learners must be at least 1");
  if (episodes < 1 || learner_episodes < 1) throw std::invalid_argument("episode counts must be positive");
  if (curve_window < 1) throw std::invalid_argument("curve_window must be positive");
  if (curve_window > learner_episodes) throw std::invalid_argument("curve_window exceeds learner_episodes");
  if (smoothing_window < 1) throw std::invalid_argument("smoothing_window must be positive");
  check_grid(feedback, "feedback");
  check_grid(consistency, "consistency");
  check_grid(obedience, "obedience");
  if (out_dir.empty()) throw std::invalid_argument("output directory is empty");
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::kPool:
    case Experiment::kCompare:
      break;
    case Experiment::kSweep:
      c.feedback = {0.25, 0.5, 0.75, 1.0};
      c.consistency = {0.25, 0.5, 0.75, 1.0};
      c.obedience = {0.0, 0.25, 0.5, 0.75, 1.0};
      c.write_rewards = false;
      break;
    case Experiment::kFineSweep:
      c.feedback = {0.25};
      c.consistency = {0.8, 0.85, 0.9, 0.95};
      c.obedience = {0.0, 0.25, 0.5, 0.75, 1.0};
      c.write_rewards = false;
      break;
  }
  return c;
}

std::vector<double> parse_grid(std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse_number<double>(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

ExperimentConfig parse_config(std::istream& in, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);
  std::string line;
  int number = 0;
  bool seen_other = false;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("config line " + std::to_string(number) + ": " + what);
    };
    if (eq == std::string_view::npos) fail("expected key = value");
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    if (key == "experiment") {
      const auto e = parse_experiment(value);
      if (!e) fail("unknown experiment '" + std::string(value) + "'");
      if (*e != cfg.experiment) {
        if (seen_other) fail("experiment must come first when it changes the defaults");
        const std::string out = cfg.out_dir;
        const std::uint64_t seed = cfg.base_seed;
        cfg = default_config(*e);
        cfg.out_dir = out;
        cfg.base_seed = seed;
      }
      continue;
    }
    const auto it = setters().find(key);
    if (it == setters().end()) fail("unknown key '" + std::string(key) + "'");
    try {
      it->second(cfg, value);
    } catch (const std::invalid_argument& e) {
      fail(std::string(key) + ": " + e.what());
    }
    seen_other = true;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  return parse_config(in, std::move(base));
}

std::string format_config(const ExperimentConfig& c) {
  auto grid = [](const std::vector<double>& g) {
    std::string s;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (i) s += ",";
      s += format_double(g[i]);
    }
    return s;
  };
  std::ostringstream out;
  out << "experiment = " << to_string(c.experiment) << "\n"
      << "pool_size = " << c.pool_size << "\n"
      << "learners = " << c.learners << "\n"
      << "episodes = " << c.episodes << "\n"
      << "learner_episodes = " << c.learner_episodes << "\n"
      << "curve_window = " << c.curve_window << "\n"
      << "smoothing_window = " << c.smoothing_window << "\n"
      << "alpha = " << format_double(c.learner.alpha) << "\n"
      << "gamma = " << format_double(c.learner.gamma) << "\n"
      << "epsilon = " << format_double(c.learner.epsilon) << "\n"
      << "step_cap = " << c.learner.step_cap << "\n"
      << "feedback = " << grid(c.feedback) << "\n"
      << "consistency = " << grid(c.consistency) << "\n"
      << "obedience = " << grid(c.obedience) << "\n"
      << "advice_noise = " << (c.advice_noise == AdviceNoise::kUniformAll ? "uniform_all" : "exclude_greedy")
      << "\n"
      << "base_seed = " << c.base_seed << "\n"
      << "out = " << c.out_dir << "\n"
      << "pool_dir = " << c.pool_dir << "\n"
      << "write_rewards = " << (c.write_rewards ? "true" : "false") << "\n";
  return out.str();
}

}  // namespace irl
