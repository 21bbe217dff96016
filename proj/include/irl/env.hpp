#pragma once

// Domestic cleaning task: a robot arm wipes both sections of a table while
// relocating a cup. Hand, sponge and cup interact through seven actions.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irl/random.hpp"

namespace irl {

enum class Location : std::uint8_t { kHome = 0, kLeft = 1, kRight = 2 };

enum class HandContent : std::uint8_t { kFree = 0, kSponge = 1, kCup = 2 };

enum class SideCondition : std::uint8_t { kDirty = 0, kClean = 1 };

enum class Action : std::uint8_t {
  kGet = 0,
  kDrop = 1,
  kGoHome = 2,
  kGoLeft = 3,
  kGoRight = 4,
  kClean = 5,
  kAbort = 6,
};

inline constexpr std::size_t kNumActions = 7;

inline constexpr std::array<Action, kNumActions> kAllActions = {
    Action::kGet,    Action::kDrop,  Action::kGoHome, Action::kGoLeft,
    Action::kGoRight, Action::kClean, Action::kAbort};

constexpr std::size_t action_index(Action a) { return static_cast<std::size_t>(a); }

/// State vector <handObject, handPosition, cupPosition, sideCondition>.
///
/// sides[0] is the left section, sides[1] the right one. The cup rests on
/// the left or right section; it is at home only while carried there.
struct State {
  HandContent hand = HandContent::kFree;
  Location hand_pos = Location::kHome;
  Location cup_pos = Location::kLeft;
  std::array<SideCondition, 2> sides = {SideCondition::kDirty, SideCondition::kDirty};

  friend constexpr auto operator<=>(const State&, const State&) = default;
};

enum class StepKind : std::uint8_t { kContinued, kFailed, kFinished };

/// The six failing rules, each leading to its own failed-state.
enum class Failure : std::uint8_t {
  kGetCupAtHome,    // Get holding the cup at home
  kGetWithSponge,   // Get holding the sponge at the cup
  kDropCupAtHome,   // Drop the cup at home
  kDropSponge,      // Drop the sponge away from home
  kCleanAtCup,      // Clean where the cup stands
  kCleanAtHome,     // Clean at home
};

inline constexpr std::size_t kNumFailures = 6;

struct StepOutcome {
  StepKind kind = StepKind::kContinued;
  State next;  // meaningless when kind == kFailed
  double reward = 0.0;
  Failure failure = Failure::kGetCupAtHome;  // only meaningful when kind == kFailed
};

inline constexpr double kFinalReward = 1.0;
inline constexpr double kFailedReward = -1.0;
inline constexpr double kStepReward = -0.01;

/// <free, home, cup_side, [dirty, dirty]>. Throws std::invalid_argument for
/// cup_side == home.
State initial_state(Location cup_side);

bool is_final(const State& s);

/// True for the two episode start configurations (either cup side).
bool is_initial(const State& s);

/// Applies the transition rules of `a` to `s`, first matching rule
/// wins; unmatched actions leave the state unchanged. `abort_cup_side` is
/// only read for Abort and must be left or right.
StepOutcome transition(const State& s, Action a, Location abort_cup_side);

/// Same, drawing Abort's cup side uniformly from `rng`. No draw is made for
/// other actions.
StepOutcome transition(const State& s, Action a, Rng& rng);

/// Draws left or right with probability 1/2 each.
Location random_cup_side(Rng& rng);

/// Relabels left and right (hand, cup and table sections).
State mirror(const State& s);
Action mirror(Action a);

std::string to_string(const State& s);
std::string_view to_string(Action a);
std::string_view to_string(Location l);
std::string_view to_string(Failure f);
std::optional<Action> parse_action(std::string_view name);

/// Index of a state in the canonical enumeration.
struct StateIndex {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(StateIndex, StateIndex) = default;
};

/// Breadth-first enumeration of every task state reachable from the two
/// initial states through non-failing transitions (cup-left root first,
/// actions in enum order; final states are not expanded), followed by one
/// failed-state per Failure value.
class StateSpace {
 public:
  StateSpace();

  /// Task states plus failed-states.
  std::size_t size() const { return states_.size() + kNumFailures; }
  std::size_t num_task_states() const { return states_.size(); }
  const std::vector<State>& states() const { return states_; }

  /// Throws std::out_of_range for a failed-state index.
  const State& state(StateIndex i) const { return states_.at(i.value); }

  /// Throws std::out_of_range for a state outside the enumeration.
  StateIndex index(const State& s) const;
  std::optional<StateIndex> find(const State& s) const;

  StateIndex failed(Failure f) const {
    return StateIndex{static_cast<std::uint32_t>(states_.size() + static_cast<std::size_t>(f))};
  }
  bool is_failed(StateIndex i) const { return i.value >= states_.size() && i.value < size(); }
  Failure failure(StateIndex i) const {
    return static_cast<Failure>(i.value - static_cast<std::uint32_t>(states_.size()));
  }
  bool is_final(StateIndex i) const { return !is_failed(i) && final_[i.value]; }

  /// Final or failed: the episode ends on entering it.
  bool is_terminal(StateIndex i) const { return is_failed(i) || final_[i.value]; }

  /// State entered by a transition outcome, failed-states included.
  StateIndex successor(const StepOutcome& out) const {
    return out.kind == StepKind::kFailed ? failed(out.failure) : index(out.next);
  }

  /// Index of mirror(state(i)); failed-states map to themselves.
  StateIndex mirror(StateIndex i) const { return is_failed(i) ? i : mirror_[i.value]; }

  StateIndex initial(Location cup_side) const { return index(initial_state(cup_side)); }

  std::string label(StateIndex i) const;

 private:
  static std::size_t encode(const State& s);

  std::vector<State> states_;
  std::vector<bool> final_;
  std::vector<StateIndex> mirror_;
  std::vector<std::int32_t> lookup_;
};

/// Process-wide enumeration, built once.
const StateSpace& state_space();

}  // namespace irl
