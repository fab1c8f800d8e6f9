#pragma once

#include <map>
#include <random>
#include <set>
#include <string>

#include "amrsl/graph.hpp"
#include "amrsl/penman.hpp"

namespace testing_util {

inline amrsl::AmrGraph amr(std::string_view text) { return amrsl::parse_penman(text); }

inline amrsl::Sentence sentence(const std::string& text, const std::string& id = "s") {
  return {id, text, amrsl::split_tokens(text)};
}

// Bijective variable renaming: v -> prefix + index.
inline amrsl::AmrGraph rename(const amrsl::AmrGraph& g, const std::string& prefix = "q") {
  std::map<std::string, std::string> to;
  for (std::size_t i = 0; i < g.size(); ++i) {
    to[g.nodes()[i].id] = prefix + std::to_string(g.size() - i);
  }
  amrsl::AmrGraph out;
  for (const auto& n : g.nodes()) out.add_node(to[n.id], n.concept_label);
  for (const auto& e : g.edges()) out.add_edge(to[e.source], e.role, to[e.target]);
  for (const auto& a : g.attributes()) out.add_attribute(to[a.source], a.role, a.value);
  if (!g.empty()) out.set_root(to[g.root()]);
  return out;
}

template <typename T>
std::set<T> as_set(const std::vector<T>& v) {
  return {v.begin(), v.end()};
}

}  // namespace testing_util
