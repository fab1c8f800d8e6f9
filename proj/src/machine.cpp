#include "amrsl/machine.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "amrsl/errors.hpp"
#include "amrsl/penman.hpp"

namespace amrsl {
namespace {

constexpr std::array<std::string_view, 8> kNames = {"SHIFT", "REDUCE", "MERGE", "PRED",
                                                    "LA",    "RA",     "ROOT",  "CLOSE"};

bool is_node(const StackItem& item) { return std::holds_alternative<NodeHandle>(item); }
bool is_group(const StackItem& item) { return std::holds_alternative<TokenGroup>(item); }

const std::string& var_of(const StackItem& item) { return std::get<NodeHandle>(item).variable; }

// (source, role, target) an arc action would add, with "-of" roles flipped.
Edge arc_edge(const MachineState& st, const Action& act) {
  const auto& stack = st.stack();
  const auto& top = var_of(stack.back());
  const auto& second = var_of(stack[stack.size() - 2]);
  Edge e = act.kind == ActionKind::kLeftArc ? Edge{top, act.label, second}
                                            : Edge{second, act.label, top};
  if (is_inverse_role(e.role)) {
    e.role.resize(e.role.size() - 3);
    std::swap(e.source, e.target);
  }
  return e;
}

bool top_two_nodes(const MachineState& st) {
  const auto& s = st.stack();
  return s.size() >= 2 && is_node(s.back()) && is_node(s[s.size() - 2]);
}

std::string kind_reason(const MachineState& st, ActionKind kind) {
  if (st.closed()) return "machine is closed";
  const auto& stack = st.stack();
  switch (kind) {
    case ActionKind::kShift:
      return st.buffer_size() > 0 ? "" : "SHIFT on empty buffer";
    case ActionKind::kReduce:
      return stack.empty() ? "REDUCE on empty stack" : "";
    case ActionKind::kMerge:
      return stack.size() >= 2 && is_group(stack.back()) && is_group(stack[stack.size() - 2])
                 ? ""
                 : "MERGE needs two token groups on top";
    case ActionKind::kPred:
      return !stack.empty() && is_group(stack.back()) ? "" : "PRED needs a token group on top";
    case ActionKind::kLeftArc:
    case ActionKind::kRightArc:
      if (!top_two_nodes(st)) return std::string(kind_name(kind)) + " needs two nodes on top";
      if (st.partial().edges().size() >= st.edge_budget()) return "edge budget exhausted";
      return "";
    case ActionKind::kRoot:
      if (st.root_set()) return "root already set";
      return !stack.empty() && is_node(stack.back()) ? "" : "ROOT needs a node on top";
    case ActionKind::kClose:
      return st.buffer_size() == 0 ? "" : "CLOSE with non-empty buffer";
  }
  return "unknown action";
}

}  // namespace

bool has_label(ActionKind kind) {
  return kind == ActionKind::kPred || kind == ActionKind::kLeftArc ||
         kind == ActionKind::kRightArc;
}

std::string_view kind_name(ActionKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::string format_action(const Action& a) {
  std::string out(kind_name(a.kind));
  if (has_label(a.kind)) {
    out += '(';
    out += a.label;
    out += ')';
  }
  return out;
}

Action parse_action(std::string_view text) {
  auto open = text.find('(');
  std::string_view name = text.substr(0, open);
  auto it = std::find(kNames.begin(), kNames.end(), name);
  if (it == kNames.end()) throw InputError("unknown action '" + std::string(text) + "'");
  Action a{static_cast<ActionKind>(it - kNames.begin()), {}};
  if (has_label(a.kind)) {
    if (open == std::string_view::npos || text.back() != ')' || text.size() - open < 3) {
      throw InputError("action '" + std::string(text) + "' needs a label in parentheses");
    }
    a.label = std::string(text.substr(open + 1, text.size() - open - 2));
  } else if (open != std::string_view::npos) {
    throw InputError("action '" + std::string(name) + "' takes no label");
  }
  return a;
}

std::string format_actions(std::span<const Action> actions) {
  std::string out;
  for (const auto& a : actions) {
    if (!out.empty()) out += ' ';
    out += format_action(a);
  }
  return out;
}

ActionSequence parse_actions(std::string_view line) {
  ActionSequence seq;
  for (const auto& tok : split_tokens(line)) seq.push_back(parse_action(tok));
  return seq;
}

MachineState::MachineState(const Sentence& s) : token_count_(s.tokens.size()) {
  if (s.tokens.empty()) throw InputError("sentence '" + s.id + "' has no tokens");
}

std::string MachineState::fresh_variable(std::string_view concept_label) {
  char letter = 'x';
  if (!concept_label.empty() && std::isalpha(static_cast<unsigned char>(concept_label[0]))) {
    letter = static_cast<char>(std::tolower(static_cast<unsigned char>(concept_label[0])));
  }
  const int n = ++name_counts_[letter];
  return n == 1 ? std::string(1, letter) : letter + std::to_string(n);
}

MachineState initial_state(const Sentence& s) { return MachineState(s); }

std::string illegal_reason(const MachineState& st, const Action& act) {
  if (has_label(act.kind) && act.label.empty()) {
    return std::string(kind_name(act.kind)) + " needs a label";
  }
  auto reason = kind_reason(st, act.kind);
  if (!reason.empty()) return reason;
  if (act.kind == ActionKind::kLeftArc || act.kind == ActionKind::kRightArc) {
    auto e = arc_edge(st, act);
    if (e.role.empty()) return "empty role";
    if (st.partial().has_edge(e.source, e.role, e.target)) {
      return "duplicate edge " + e.source + " :" + e.role + " " + e.target;
    }
  }
  return "";
}

MachineState step(MachineState st, const Action& act) {
  if (auto reason = illegal_reason(st, act); !reason.empty()) {
    throw MachineError(format_action(act) + ": " + reason, st.steps_);
  }
  auto& stack = st.stack_;
  switch (act.kind) {
    case ActionKind::kShift:
      stack.push_back(TokenGroup{{static_cast<int>(st.next_token_++)}});
      break;
    case ActionKind::kReduce:
      stack.pop_back();
      break;
    case ActionKind::kMerge: {
      auto top = std::get<TokenGroup>(std::move(stack.back()));
      stack.pop_back();
      auto& below = std::get<TokenGroup>(stack.back()).tokens;
      below.insert(below.end(), top.tokens.begin(), top.tokens.end());
      std::sort(below.begin(), below.end());
      break;
    }
    case ActionKind::kPred: {
      const auto& tokens = std::get<TokenGroup>(stack.back()).tokens;
      TokenSpan span{tokens.front(), tokens.back()};
      auto var = st.fresh_variable(act.label);
      st.partial_.add_node(var, act.label);
      st.alignment_.emplace(var, span);
      stack.back() = NodeHandle{std::move(var)};
      break;
    }
    case ActionKind::kLeftArc:
    case ActionKind::kRightArc: {
      auto e = arc_edge(st, act);
      st.partial_.add_edge(std::move(e.source), std::move(e.role), std::move(e.target));
      break;
    }
    case ActionKind::kRoot:
      st.partial_.set_root(var_of(stack.back()));
      st.root_set_ = true;
      break;
    case ActionKind::kClose:
      stack.clear();
      st.closed_ = true;
      break;
  }
  ++st.steps_;
  return st;
}

std::set<ActionKind> legal_actions(const MachineState& st) {
  std::set<ActionKind> out;
  for (std::size_t k = 0; k < kNames.size(); ++k) {
    auto kind = static_cast<ActionKind>(k);
    if (kind_reason(st, kind).empty()) out.insert(kind);
  }
  return out;
}

MachineState execute(const Sentence& s, std::span<const Action> actions) {
  MachineState st(s);
  for (const auto& a : actions) st = step(std::move(st), a);
  if (!st.closed()) throw MachineError("sequence does not end with CLOSE", actions.size());
  return st;
}

MachineOutput run_with_alignment(const Sentence& s, std::span<const Action> actions,
                                 RootPolicy policy) {
  auto st = execute(s, actions);
  AmrGraph g = st.partial();
  if (!st.root_set() && !g.empty()) {
    if (policy == RootPolicy::kStrict) {
      throw MachineError("no ROOT action in strict mode", actions.size());
    }
    g.set_root(g.nodes().front().id);
  }
  return {std::move(g), st.alignment()};
}

AmrGraph run(const Sentence& s, std::span<const Action> actions, RootPolicy policy) {
  return run_with_alignment(s, actions, policy).graph;
}

bool is_legal_sequence(const Sentence& s, std::span<const Action> actions) {
  try {
    execute(s, actions);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace amrsl
