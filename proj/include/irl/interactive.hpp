#pragma once

// Policy shaping: a trained agent occasionally proposes the next action and
// the learner may execute it instead of its own epsilon-greedy choice.

#include <cstdint>

#include "irl/advisor.hpp"
#include "irl/tabular.hpp"

namespace irl {

struct InteractionParams {
  double feedback = 0.25;    // probability that advice is offered at a step
  double consistency = 1.0;  // probability that offered advice is the trainer's greedy action
  double obedience = 1.0;    // probability that the learner executes offered advice
  AdviceNoise noise = AdviceNoise::kExcludeGreedy;

  void validate() const;
};

ActionChoice select_interactive_action(const QTable& learner_q, const QTable& trainer_q, StateIndex s,
                                       double epsilon, const InteractionParams& interaction, Rng& rng);

EpisodeRecord run_irl_episode(QTable& learner_q, const QTable& trainer_q, const LearnerParams& params,
                              const InteractionParams& interaction, Rng& rng,
                              std::optional<Location> start_side = std::nullopt);

/// Trains a fresh learner advised by `trainer_q`.
RunRecord train_irl_agent(const QTable& trainer_q, const LearnerParams& params,
                          const InteractionParams& interaction, std::uint64_t seed);

inline RunRecord train_irl_agent(const RunRecord& trainer, const LearnerParams& params,
                                 const InteractionParams& interaction, std::uint64_t seed) {
  return train_irl_agent(trainer.qtable, params, interaction, seed);
}

}  // namespace irl
