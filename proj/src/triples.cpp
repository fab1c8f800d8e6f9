#include "amrsl/triples.hpp"

namespace amrsl {

std::vector<Triple> to_triples(const AmrGraph& g) {
  std::vector<Triple> out;
  if (g.empty()) return out;
  out.reserve(g.size() + g.edges().size() + g.attributes().size() + 1);
  for (const auto& n : g.nodes()) {
    out.push_back({TripleKind::kInstance, kInstanceRole, n.id, n.concept_label});
  }
  out.push_back({TripleKind::kTop, kTopRole, g.root(), ""});
  for (const auto& e : g.edges()) {
    out.push_back({TripleKind::kRelation, e.role, e.source, e.target});
  }
  for (const auto& a : g.attributes()) {
    out.push_back({TripleKind::kAttribute, a.role, a.source, a.value});
  }
  return out;
}

TripleSet triple_set(const AmrGraph& g) {
  TripleSet ts;
  ts.variables.reserve(g.size());
  for (const auto& n : g.nodes()) ts.variables.push_back(n.id);
  ts.triples = to_triples(g);
  return ts;
}

std::string to_string(const Triple& t) {
  if (t.kind == TripleKind::kTop) return t.role + "(" + t.source + ")";
  return t.role + "(" + t.source + "," + t.target + ")";
}

}  // namespace amrsl
