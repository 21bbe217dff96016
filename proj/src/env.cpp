#include "irl/env.hpp"

#include <deque>
#include <stdexcept>

namespace irl {

namespace {

constexpr std::size_t side_slot(Location l) { return l == Location::kLeft ? 0 : 1; }

Location swap_sides(Location l) {
  switch (l) {
    case Location::kLeft:
      return Location::kRight;
    case Location::kRight:
      return Location::kLeft;
    default:
      return l;
  }
}

StepOutcome failed(Failure f) { return {StepKind::kFailed, State{}, kFailedReward, f}; }

StepOutcome reached(const State& next) {
  if (is_final(next)) return {StepKind::kFinished, next, kFinalReward};
  return {StepKind::kContinued, next, kStepReward};
}

}  // namespace

State initial_state(Location cup_side) {
  if (cup_side == Location::kHome) {
    throw std::invalid_argument("initial_state: the cup starts on the left or right section");
  }
  State s;
  s.cup_pos = cup_side;
  return s;
}

bool is_final(const State& s) {
  return s.sides[0] == SideCondition::kClean && s.sides[1] == SideCondition::kClean;
}

bool is_initial(const State& s) {
  return s.cup_pos != Location::kHome && s == initial_state(s.cup_pos);
}

StepOutcome transition(const State& s, Action a, Location abort_cup_side) {
  State next = s;
  switch (a) {
    case Action::kGet:
      if (s.hand_pos == Location::kHome && s.hand == HandContent::kCup) return failed(Failure::kGetCupAtHome);
      if (s.hand_pos == s.cup_pos && s.hand == HandContent::kSponge) return failed(Failure::kGetWithSponge);
      if (s.hand_pos == Location::kHome) {
        next.hand = HandContent::kSponge;
      } else if (s.hand_pos == s.cup_pos) {
        next.hand = HandContent::kCup;
      }
      break;
    case Action::kDrop:
      if (s.hand_pos == Location::kHome && s.hand == HandContent::kCup) return failed(Failure::kDropCupAtHome);
      if (s.hand_pos != Location::kHome && s.hand == HandContent::kSponge) return failed(Failure::kDropSponge);
      next.hand = HandContent::kFree;
      break;
    case Action::kGoHome:
    case Action::kGoLeft:
    case Action::kGoRight: {
      const Location target = a == Action::kGoHome   ? Location::kHome
                              : a == Action::kGoLeft ? Location::kLeft
                                                     : Location::kRight;
      next.hand_pos = target;
      if (s.hand == HandContent::kCup) next.cup_pos = target;
      break;
    }
    case Action::kClean:
      if (s.hand_pos == s.cup_pos) return failed(Failure::kCleanAtCup);
      if (s.hand_pos == Location::kHome) return failed(Failure::kCleanAtHome);
      if (s.hand == HandContent::kSponge) next.sides[side_slot(s.hand_pos)] = SideCondition::kClean;
      break;
    case Action::kAbort:
      next = initial_state(abort_cup_side);
      break;
  }
  return reached(next);
}

StepOutcome transition(const State& s, Action a, Rng& rng) {
  const Location side = a == Action::kAbort ? random_cup_side(rng) : Location::kLeft;
  return transition(s, a, side);
}

Location random_cup_side(Rng& rng) {
  return rng.uniform_int(2) == 0 ? Location::kLeft : Location::kRight;
}

State mirror(const State& s) {
  State m = s;
  m.hand_pos = swap_sides(s.hand_pos);
  m.cup_pos = swap_sides(s.cup_pos);
  m.sides = {s.sides[1], s.sides[0]};
  return m;
}

Action mirror(Action a) {
  if (a == Action::kGoLeft) return Action::kGoRight;
  if (a == Action::kGoRight) return Action::kGoLeft;
  return a;
}

std::string_view to_string(Action a) {
  switch (a) {
    case Action::kGet:
      return "get";
    case Action::kDrop:
      return "drop";
    case Action::kGoHome:
      return "go_home";
    case Action::kGoLeft:
      return "go_left";
    case Action::kGoRight:
      return "go_right";
    case Action::kClean:
      return "clean";
    case Action::kAbort:
      return "abort";
  }
  return "?";
}

std::string_view to_string(Location l) {
  switch (l) {
    case Location::kHome:
      return "home";
    case Location::kLeft:
      return "left";
    case Location::kRight:
      return "right";
  }
  return "?";
}

std::string_view to_string(Failure f) {
  switch (f) {
    case Failure::kGetCupAtHome:
      return "get_cup_at_home";
    case Failure::kGetWithSponge:
      return "get_with_sponge";
    case Failure::kDropCupAtHome:
      return "drop_cup_at_home";
    case Failure::kDropSponge:
      return "drop_sponge";
    case Failure::kCleanAtCup:
      return "clean_at_cup";
    case Failure::kCleanAtHome:
      return "clean_at_home";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view name) {
  for (Action a : kAllActions) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

std::string to_string(const State& s) {
  static constexpr const char* kHand[] = {"free", "sponge", "cup"};
  auto side = [](SideCondition c) { return c == SideCondition::kClean ? "clean" : "dirty"; };
  std::string out = "<";
  out += kHand[static_cast<int>(s.hand)];
  out += ",";
  out += to_string(s.hand_pos);
  out += ",";
  out += to_string(s.cup_pos);
  out += ",[";
  out += side(s.sides[0]);
  out += ",";
  out += side(s.sides[1]);
  out += "]>";
  return out;
}

std::size_t StateSpace::encode(const State& s) {
  return static_cast<std::size_t>(s.hand) * 36 + static_cast<std::size_t>(s.hand_pos) * 12 +
         static_cast<std::size_t>(s.cup_pos) * 4 + static_cast<std::size_t>(s.sides[0]) * 2 +
         static_cast<std::size_t>(s.sides[1]);
}

StateSpace::StateSpace() : lookup_(3 * 3 * 3 * 2 * 2, -1) {
  std::deque<State> frontier;
  auto visit = [&](const State& s) {
    auto& slot = lookup_[encode(s)];
    if (slot >= 0) return;
    slot = static_cast<std::int32_t>(states_.size());
    states_.push_back(s);
    frontier.push_back(s);
  };
  visit(initial_state(Location::kLeft));
  visit(initial_state(Location::kRight));
  while (!frontier.empty()) {
    const State s = frontier.front();
    frontier.pop_front();
    if (irl::is_final(s)) continue;
    for (Action a : kAllActions) {
      if (a == Action::kAbort) {
        visit(initial_state(Location::kLeft));
        visit(initial_state(Location::kRight));
        continue;
      }
      const StepOutcome out = transition(s, a, Location::kLeft);
      if (out.kind != StepKind::kFailed) visit(out.next);
    }
  }
  final_.reserve(states_.size());
  mirror_.reserve(states_.size());
  for (const State& s : states_) {
    final_.push_back(irl::is_final(s));
    mirror_.push_back(index(irl::mirror(s)));
  }
}

std::optional<StateIndex> StateSpace::find(const State& s) const {
  const std::int32_t slot = lookup_[encode(s)];
  if (slot < 0) return std::nullopt;
  return StateIndex{static_cast<std::uint32_t>(slot)};
}

std::string StateSpace::label(StateIndex i) const {
  if (is_failed(i)) return "failed:" + std::string(to_string(failure(i)));
  return to_string(state(i));
}

StateIndex StateSpace::index(const State& s) const {
  if (auto i = find(s)) return *i;
  throw std::out_of_range("state_index: state not in the enumeration: " + to_string(s));
}

const StateSpace& state_space() {
  static const StateSpace space;
  return space;
}

}  // namespace irl
