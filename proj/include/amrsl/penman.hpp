#pragma once

// PENMAN reader and writer.
//
// Reading resolves bare symbols after the whole expression is read, so a
// variable may be referenced before it is declared. A symbol naming a
// declared variable becomes an edge (re-entrancy); quoted strings, numbers,
// `-`, `+` and other non-variable symbols become attributes. A symbol that
// looks like a variable (`[a-z][0-9]*`) but is never declared is an error in
// strict mode and an `amr-unknown` node in lenient mode.
//
// Inverse roles (`:ARG0-of`) are normalized to the forward direction.
//
// Lenient mode also accepts further top-level expressions after the first.
// They join the graph as separate fragments, which is how disconnected
// parser output is stored; the first expression supplies the root.

#include <string>
#include <string_view>

#include "amrsl/graph.hpp"

namespace amrsl {

enum class ParseMode { kStrict, kLenient };

inline constexpr std::string_view kUnknownConcept = "amr-unknown";

// first_line offsets reported line numbers, for blocks embedded in files.
AmrGraph parse_penman(std::string_view text, ParseMode mode = ParseMode::kStrict,
                      int first_line = 1);

enum class Layout { kIndented, kSingleLine };

// Deterministic: children in declaration order of the other endpoint, then by
// role. Throws SerializationError naming unreachable variables.
std::string serialize_penman(const AmrGraph& g, Layout layout = Layout::kIndented);

// Like serialize_penman, but a disconnected graph is written as the root's
// component followed by one expression per remaining component.
std::string serialize_fragments(const AmrGraph& g, Layout layout = Layout::kIndented);

bool is_variable_shaped(std::string_view symbol);

// Role normalization used by the reader; exposed for tests.
bool is_inverse_role(std::string_view role);

}  // namespace amrsl
