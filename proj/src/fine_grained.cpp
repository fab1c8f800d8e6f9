#include "amrsl/fine_grained.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "amrsl/triples.hpp"

namespace amrsl {
namespace {

constexpr const char* kUnlabeledRole = "rel";

using Multiset = std::map<std::string, std::size_t>;

CategoryScore multiset_score(const Multiset& test, const Multiset& gold) {
  std::size_t matched = 0, nt = 0, ng = 0;
  for (const auto& [k, c] : test) {
    nt += c;
    if (auto it = gold.find(k); it != gold.end()) matched += std::min(c, it->second);
  }
  for (const auto& [k, c] : gold) ng += c;
  return make_category(matched, nt, ng);
}

CategoryScore triple_score(const TripleSet& test, const TripleSet& gold,
                           const SmatchOptions& options) {
  if (test.triples.empty() || gold.triples.empty()) {
    return make_category(0, test.triples.size(), gold.triples.size());
  }
  auto r = match_triples(test, gold, options);
  return make_category(r.matched, r.triples_a, r.triples_b);
}

std::string unquote(std::string_view v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
  return std::string(v);
}

TripleSet unlabeled_view(const AmrGraph& g) {
  auto ts = triple_set(g);
  for (auto& t : ts.triples) {
    if (t.kind == TripleKind::kRelation || t.kind == TripleKind::kAttribute) t.role = kUnlabeledRole;
  }
  return ts;
}

TripleSet no_wsd_view(const AmrGraph& g) {
  auto ts = triple_set(g);
  for (auto& t : ts.triples) {
    if (t.kind == TripleKind::kInstance) t.target = strip_sense(t.target);
  }
  return ts;
}

Multiset concept_bag(const AmrGraph& g) {
  Multiset m;
  for (const auto& n : g.nodes()) ++m[n.concept_label];
  return m;
}

Multiset entity_bag(const AmrGraph& g) {
  Multiset m;
  for (const auto& e : g.edges()) {
    if (e.role != "name") continue;
    std::vector<std::pair<int, std::string>> ops;
    for (const auto& a : g.attributes()) {
      if (a.source != e.target || !a.role.starts_with("op")) continue;
      int idx = 0;
      try {
        idx = std::stoi(a.role.substr(2));
      } catch (...) {
        continue;
      }
      ops.emplace_back(idx, unquote(a.value));
    }
    std::sort(ops.begin(), ops.end());
    std::string entity = g.concept_of(e.source);
    for (const auto& [_, word] : ops) entity += " " + word;
    ++m[entity];
  }
  return m;
}

Multiset negation_bag(const AmrGraph& g) {
  Multiset m;
  for (const auto& a : g.attributes()) {
    if (a.role == "polarity" && a.value == "-") ++m[g.concept_of(a.source)];
  }
  return m;
}

Multiset wiki_bag(const AmrGraph& g) {
  Multiset m;
  for (const auto& a : g.attributes()) {
    if (a.role == "wiki") ++m[unquote(a.value)];
  }
  return m;
}

// Relation triples selected by `keep`, plus instance triples of their
// endpoints.
template <typename Keep>
TripleSet relation_view(const AmrGraph& g, Keep keep) {
  TripleSet ts;
  for (const auto& n : g.nodes()) ts.variables.push_back(n.id);
  std::vector<bool> touched(g.size(), false);
  for (const auto& e : g.edges()) {
    if (!keep(e)) continue;
    ts.triples.push_back({TripleKind::kRelation, e.role, e.source, e.target});
    touched[*g.index_of(e.source)] = true;
    touched[*g.index_of(e.target)] = true;
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (touched[i]) {
      const auto& n = g.nodes()[i];
      ts.triples.push_back({TripleKind::kInstance, kInstanceRole, n.id, n.concept_label});
    }
  }
  return ts;
}

TripleSet reentrancy_view(const AmrGraph& g) {
  std::map<std::string, int> indegree;
  for (const auto& e : g.edges()) ++indegree[e.target];
  return relation_view(g, [&](const Edge& e) { return indegree[e.target] >= 2; });
}

TripleSet srl_view(const AmrGraph& g) {
  static const std::regex arg_role("ARG[0-9]+");
  return relation_view(g, [](const Edge& e) { return std::regex_match(e.role, arg_role); });
}

CategoryScore add(const CategoryScore& x, const CategoryScore& y) {
  return make_category(x.matched + y.matched, x.test + y.test, x.gold + y.gold);
}

}  // namespace

CategoryScore make_category(std::size_t matched, std::size_t test, std::size_t gold) {
  CategoryScore s;
  s.matched = matched;
  s.test = test;
  s.gold = gold;
  if (test == 0 && gold == 0) {
    s.precision = s.recall = s.f1 = 1.0;
    return s;
  }
  auto r = make_result(matched, test, gold);
  s.precision = r.precision;
  s.recall = r.recall;
  s.f1 = r.f1;
  return s;
}

std::string strip_sense(std::string_view c) {
  const auto n = c.size();
  if (n >= 4 && c[n - 3] == '-' && std::isdigit(static_cast<unsigned char>(c[n - 2])) &&
      std::isdigit(static_cast<unsigned char>(c[n - 1]))) {
    return std::string(c.substr(0, n - 3));
  }
  return std::string(c);
}

std::array<std::pair<std::string_view, const CategoryScore*>, kCategoryCount> categories(
    const FineGrainedReport& r) {
  return {{{"smatch", &r.smatch},
           {"unlabeled", &r.unlabeled},
           {"no_wsd", &r.no_wsd},
           {"concepts", &r.concepts},
           {"named_entities", &r.named_entities},
           {"negation", &r.negation},
           {"wikification", &r.wikification},
           {"reentrancy", &r.reentrancy},
           {"srl", &r.srl}}};
}

FineGrainedReport fine_grained(const AmrGraph& test, const AmrGraph& gold,
                               const SmatchOptions& options) {
  FineGrainedReport r;
  r.smatch = triple_score(triple_set(test), triple_set(gold), options);
  r.unlabeled = triple_score(unlabeled_view(test), unlabeled_view(gold), options);
  r.no_wsd = triple_score(no_wsd_view(test), no_wsd_view(gold), options);
  r.concepts = multiset_score(concept_bag(test), concept_bag(gold));
  r.named_entities = multiset_score(entity_bag(test), entity_bag(gold));
  r.negation = multiset_score(negation_bag(test), negation_bag(gold));
  r.wikification = multiset_score(wiki_bag(test), wiki_bag(gold));
  r.reentrancy = triple_score(reentrancy_view(test), reentrancy_view(gold), options);
  r.srl = triple_score(srl_view(test), srl_view(gold), options);
  return r;
}

FineGrainedReport accumulate(const FineGrainedReport& x, const FineGrainedReport& y) {
  FineGrainedReport r;
  r.smatch = add(x.smatch, y.smatch);
  r.unlabeled = add(x.unlabeled, y.unlabeled);
  r.no_wsd = add(x.no_wsd, y.no_wsd);
  r.concepts = add(x.concepts, y.concepts);
  r.named_entities = add(x.named_entities, y.named_entities);
  r.negation = add(x.negation, y.negation);
  r.wikification = add(x.wikification, y.wikification);
  r.reentrancy = add(x.reentrancy, y.reentrancy);
  r.srl = add(x.srl, y.srl);
  return r;
}

}  // namespace amrsl
