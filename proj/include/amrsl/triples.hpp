#pragma once

// Triple view of an AMR graph, the representation Smatch scores.

#include <string>
#include <vector>

#include "amrsl/graph.hpp"

namespace amrsl {

enum class TripleKind { kInstance, kTop, kRelation, kAttribute };

// kInstance: instance(source, target=concept)
// kTop:      TOP(source), target empty
// kRelation: role(source, target) with both variables
// kAttribute: role(source, target=constant)
struct Triple {
  TripleKind kind;
  std::string role;
  std::string source;
  std::string target;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline constexpr const char* kInstanceRole = "instance";
inline constexpr const char* kTopRole = "TOP";

// Instance triples in node order, then TOP, relations, attributes.
// Empty graph yields no triples.
std::vector<Triple> to_triples(const AmrGraph& g);

// A set of triples over named variables. Smatch works on this, so sub-views
// of a graph (e.g. only :ARG relations) can be scored the same way.
struct TripleSet {
  std::vector<std::string> variables;
  std::vector<Triple> triples;
};

TripleSet triple_set(const AmrGraph& g);

std::string to_string(const Triple& t);

}  // namespace amrsl
