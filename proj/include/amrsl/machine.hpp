#pragma once

// Transition machine: applies an action sequence to a sentence and builds an
// AMR graph.
//
//   SHIFT     buffer front -> stack as a token group
//   REDUCE    pop the stack top (token group or node)
//   MERGE     union the top two token groups
//   PRED(c)   replace the top token group with a new node labeled c
//   LA(r)     edge top -r-> second (both nodes)
//   RA(r)     edge second -r-> top (both nodes)
//   ROOT      mark the top node as root (once)
//   CLOSE     requires an empty buffer; pops everything and freezes
//
// Arc labels ending in "-of" are stored inverted, as the PENMAN reader does.

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "amrsl/graph.hpp"

namespace amrsl {

enum class ActionKind { kShift, kReduce, kMerge, kPred, kLeftArc, kRightArc, kRoot, kClose };

struct Action {
  ActionKind kind = ActionKind::kShift;
  std::string label;  // PRED concept or arc role; empty otherwise

  static Action shift() { return {ActionKind::kShift, {}}; }
  static Action reduce() { return {ActionKind::kReduce, {}}; }
  static Action merge() { return {ActionKind::kMerge, {}}; }
  static Action pred(std::string c) { return {ActionKind::kPred, std::move(c)}; }
  static Action left_arc(std::string r) { return {ActionKind::kLeftArc, std::move(r)}; }
  static Action right_arc(std::string r) { return {ActionKind::kRightArc, std::move(r)}; }
  static Action root() { return {ActionKind::kRoot, {}}; }
  static Action close() { return {ActionKind::kClose, {}}; }

  friend bool operator==(const Action&, const Action&) = default;
};

using ActionSequence = std::vector<Action>;

bool has_label(ActionKind kind);
std::string_view kind_name(ActionKind kind);

// `SHIFT`, `PRED(want-01)`, `LA(ARG0)`.
std::string format_action(const Action& a);
// Throws InputError.
Action parse_action(std::string_view text);

// Whitespace-separated actions on one line.
std::string format_actions(std::span<const Action> actions);
ActionSequence parse_actions(std::string_view line);

struct TokenGroup {
  std::vector<int> tokens;  // sorted
  friend bool operator==(const TokenGroup&, const TokenGroup&) = default;
};

struct NodeHandle {
  std::string variable;
  friend bool operator==(const NodeHandle&, const NodeHandle&) = default;
};

using StackItem = std::variant<TokenGroup, NodeHandle>;

class MachineState {
 public:
  // Throws InputError when the sentence has no tokens.
  explicit MachineState(const Sentence& s);

  std::size_t token_count() const { return token_count_; }
  std::size_t buffer_size() const { return token_count_ - next_token_; }
  // Buffer front, valid when buffer_size() > 0.
  int buffer_front() const { return static_cast<int>(next_token_); }
  const std::vector<StackItem>& stack() const { return stack_; }
  const AmrGraph& partial() const { return partial_; }
  const Alignment& alignment() const { return alignment_; }
  bool root_set() const { return root_set_; }
  bool closed() const { return closed_; }
  // Number of actions applied so far.
  std::size_t steps() const { return steps_; }
  // |nodes|^2 arcs at most; keeps sampled sequences finite.
  std::size_t edge_budget() const { return partial_.size() * partial_.size(); }

 private:
  friend MachineState step(MachineState st, const Action& act);

  std::string fresh_variable(std::string_view concept_label);

  std::size_t token_count_ = 0;
  std::size_t next_token_ = 0;
  std::vector<StackItem> stack_;
  AmrGraph partial_;
  Alignment alignment_;
  bool root_set_ = false;
  bool closed_ = false;
  std::size_t steps_ = 0;
  std::unordered_map<char, int> name_counts_;
};

MachineState initial_state(const Sentence& s);

// Why `act` is illegal in `st`, or empty if it is legal.
std::string illegal_reason(const MachineState& st, const Action& act);

// Throws MachineError carrying st.steps() as the action index.
MachineState step(MachineState st, const Action& act);

// Kinds for which some label makes step() succeed.
std::set<ActionKind> legal_actions(const MachineState& st);

enum class RootPolicy {
  kLenient,  // first created node becomes root when ROOT never ran
  kStrict,   // missing ROOT is an error
};

// Final state after all actions. The last action must be CLOSE.
MachineState execute(const Sentence& s, std::span<const Action> actions);

AmrGraph run(const Sentence& s, std::span<const Action> actions,
             RootPolicy policy = RootPolicy::kLenient);

struct MachineOutput {
  AmrGraph graph;
  Alignment alignment;
};

MachineOutput run_with_alignment(const Sentence& s, std::span<const Action> actions,
                                 RootPolicy policy = RootPolicy::kLenient);

// True iff run() would succeed.
bool is_legal_sequence(const Sentence& s, std::span<const Action> actions);

}  // namespace amrsl
