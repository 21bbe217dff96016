#include "irl/interactive.hpp"

#include <stdexcept>

namespace irl {

namespace {

bool unit_interval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void InteractionParams::validate() const {
  if (!unit_interval(feedback)) throw std::invalid_argument("feedback probability must lie in [0, 1]");
  if (!unit_interval(consistency)) throw std::invalid_argument("consistency must lie in [0, 1]");
  if (!unit_interval(obedience)) throw std::invalid_argument("obedience must lie in [0, 1]");
}

ActionChoice select_interactive_action(const QTable& learner_q, const QTable& trainer_q, StateIndex s,
                                       double epsilon, const InteractionParams& interaction, Rng& rng) {
  ActionChoice choice{Action::kGet};
  if (rng.bernoulli(interaction.feedback)) {
    choice.advised = true;
    const Action advice = advise(trainer_q, s, interaction.consistency, rng, interaction.noise);
    if (rng.bernoulli(interaction.obedience)) {
      choice.followed = true;
      choice.action = advice;
      return choice;
    }
  }
  choice.action = epsilon_greedy(learner_q.row(s), epsilon, rng);
  return choice;
}

EpisodeRecord run_irl_episode(QTable& learner_q, const QTable& trainer_q, const LearnerParams& params,
                              const InteractionParams& interaction, Rng& rng,
                              std::optional<Location> start_side) {
  return run_episode(
      learner_q, params, rng,
      [&](const QTable& q, StateIndex s, Rng& r) {
        return select_interactive_action(q, trainer_q, s, params.epsilon, interaction, r);
      },
      start_side);
}

RunRecord train_irl_agent(const QTable& trainer_q, const LearnerParams& params,
                          const InteractionParams& interaction, std::uint64_t seed) {
  params.validate();
  interaction.validate();
  Rng rng(seed);
  RunRecord record;
  record.seed = seed;
  record.params = params;
  record.qtable = init_qtable(rng);
  record.episode_rewards.reserve(static_cast<std::size_t>(params.episodes));
  for (int e = 0; e < params.episodes; ++e) {
    accumulate(record, run_irl_episode(record.qtable, trainer_q, params, interaction, rng));
  }
  return record;
}

}  // namespace irl
