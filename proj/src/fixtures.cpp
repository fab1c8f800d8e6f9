#include "amrsl/fixtures.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "amrsl/smatch.hpp"

namespace amrsl {
namespace {

constexpr std::array<const char*, 10> kConcepts = {
    "want-01", "boy", "girl", "go-02", "dog", "see-01", "cat", "person", "and", "city"};
constexpr std::array<const char*, 6> kRoles = {"ARG0", "ARG1", "ARG2", "mod", "location", "time"};
constexpr std::array<const char*, 4> kFillers = {"the", "a", "of", "to"};

std::string pick_concept(std::mt19937_64& rng) { return kConcepts[draw(rng, kConcepts.size())]; }
std::string pick_role(std::mt19937_64& rng) { return kRoles[draw(rng, kRoles.size())]; }

class VariableNamer {
 public:
  std::string operator()(const std::string& concept_label) {
    const char letter = concept_label.empty() ? 'x' : concept_label[0];
    const int n = ++counts_[letter];
    return n == 1 ? std::string(1, letter) : letter + std::to_string(n);
  }

 private:
  std::unordered_map<char, int> counts_;
};

std::string surface_word(const std::string& concept_label) {
  auto dash = concept_label.find('-');
  return concept_label.substr(0, dash);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CorpusRecord random_tree_record(std::mt19937_64& rng, const TreeFixtureOptions& options,
                                std::string id) {
  const auto lo = std::max<std::size_t>(options.min_nodes, 1);
  const auto hi = std::max(options.max_nodes, lo);
  const auto n = lo + draw(rng, hi - lo + 1);

  std::vector<std::string> concepts(n);
  for (auto& c : concepts) c = pick_concept(rng);
  VariableNamer namer;
  std::vector<std::string> vars(n);
  for (std::size_t v = 0; v < n; ++v) vars[v] = namer(concepts[v]);

  AmrGraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_node(vars[v], concepts[v]);
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t v = 1; v < n; ++v) {
    const auto parent = draw(rng, v);
    g.add_edge(vars[parent], pick_role(rng), vars[v]);
    adj[parent].push_back(v);
    adj[v].push_back(parent);
  }
  g.set_root(vars[0]);

  // Depth-first order over the undirected tree from a random node.
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> pending{draw(rng, n)};
  while (!pending.empty()) {
    auto v = pending.back();
    pending.pop_back();
    if (seen[v]) continue;
    seen[v] = true;
    order.push_back(v);
    auto next = adj[v];
    shuffle_in_place(next, rng);
    for (auto w : next) {
      if (!seen[w]) pending.push_back(w);
    }
  }

  Sentence s;
  s.id = std::move(id);
  Alignment al;
  for (auto v : order) {
    if (coin(rng, options.filler_rate)) s.tokens.emplace_back(kFillers[draw(rng, kFillers.size())]);
    const int start = static_cast<int>(s.tokens.size());
    s.tokens.push_back(surface_word(concepts[v]));
    if (coin(rng, options.multi_token_rate)) s.tokens.emplace_back("-ing");
    al.emplace(vars[v], TokenSpan{start, static_cast<int>(s.tokens.size()) - 1});
  }
  if (coin(rng, options.filler_rate)) s.tokens.emplace_back(".");
  s.text = join_tokens(s.tokens);
  return CorpusRecord{std::move(s), std::move(g), std::move(al), {}};
}

Corpus random_tree_corpus(std::size_t count, std::uint64_t seed, const TreeFixtureOptions& options) {
  std::mt19937_64 rng(seed);
  Corpus corpus;
  corpus.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    corpus.push_back(random_tree_record(rng, options, "fx" + std::to_string(i + 1)));
  }
  return corpus;
}

AmrGraph random_graph(std::mt19937_64& rng, const GraphFixtureOptions& options) {
  const auto n = std::max<std::size_t>(options.variables, 1);
  VariableNamer namer;
  AmrGraph g;
  std::vector<std::string> vars;
  for (std::size_t v = 0; v < n; ++v) {
    auto c = pick_concept(rng);
    vars.push_back(namer(c));
    g.add_node(vars.back(), c);
  }
  if (options.connected) {
    for (std::size_t v = 1; v < n; ++v) {
      const auto other = draw(rng, v);
      if (coin(rng, 0.8)) {
        g.add_edge(vars[other], pick_role(rng), vars[v]);
      } else {
        g.add_edge(vars[v], pick_role(rng), vars[other]);
      }
    }
  }
  for (std::size_t e = 0; e < options.extra_edges && n > 1; ++e) {
    const auto a = draw(rng, n);
    auto b = draw(rng, n - 1);
    if (b >= a) ++b;
    g.add_edge(vars[a], pick_role(rng), vars[b]);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (coin(rng, options.attribute_rate)) {
      if (coin(rng, 0.5)) {
        g.add_attribute(vars[v], "polarity", "-");
      } else {
        g.add_attribute(vars[v], "quant", std::to_string(1 + draw(rng, 3)));
      }
    }
  }
  g.set_root(vars[draw(rng, n)]);
  return g;
}

AmrGraph mutate_graph(const AmrGraph& g, std::mt19937_64& rng) {
  AmrGraph out;
  const auto relabel = draw(rng, g.size());
  const auto kind = draw(rng, 4);
  for (std::size_t v = 0; v < g.size(); ++v) {
    const auto& node = g.nodes()[v];
    out.add_node(node.id, kind == 0 && v == relabel ? pick_concept(rng) : node.concept_label);
  }
  const auto drop = g.edges().empty() ? 0 : draw(rng, g.edges().size());
  for (std::size_t e = 0; e < g.edges().size(); ++e) {
    const auto& edge = g.edges()[e];
    if (kind == 1 && e == drop) continue;
    const auto role = kind == 2 && e == drop ? pick_role(rng) : edge.role;
    out.add_edge(edge.source, role, edge.target);
  }
  for (const auto& a : g.attributes()) out.add_attribute(a.source, a.role, a.value);
  if (kind == 3) out.add_attribute(g.nodes()[relabel].id, "polarity", "-");
  out.set_root(g.root());
  return out;
}

ActionSequence plant_suboptimal(const Sentence& s, const ActionSequence& good,
                                std::mt19937_64& rng) {
  const auto reference = run(s, good);
  const auto best = smatch(reference, reference);
  for (int attempt = 0; attempt < 16; ++attempt) {
    ActionSequence bad = good;
    std::vector<std::size_t> arcs;
    std::optional<std::size_t> root;
    for (std::size_t i = 0; i < bad.size(); ++i) {
      if (bad[i].kind == ActionKind::kLeftArc || bad[i].kind == ActionKind::kRightArc) {
        arcs.push_back(i);
      }
      if (bad[i].kind == ActionKind::kRoot) root = i;
    }
    switch (draw(rng, 4)) {
      case 0:
        if (arcs.empty()) continue;
        bad.erase(bad.begin() + static_cast<std::ptrdiff_t>(arcs[draw(rng, arcs.size())]));
        break;
      case 1: {
        if (arcs.empty()) continue;
        auto& a = bad[arcs[draw(rng, arcs.size())]];
        a.kind = a.kind == ActionKind::kLeftArc ? ActionKind::kRightArc : ActionKind::kLeftArc;
        break;
      }
      case 2:
        if (!root) continue;
        bad.erase(bad.begin() + static_cast<std::ptrdiff_t>(*root));
        break;
      default: {
        const auto extra = 1 + draw(rng, 2);
        for (std::size_t k = 0; k < extra; ++k) {
          bad.insert(bad.end() - 1, Action::reduce());
        }
        break;
      }
    }
    if (bad == good || !is_legal_sequence(s, bad)) continue;
    const auto worse = smatch(run(s, bad), reference);
    const int cmp = compare_f1(worse, best);
    if (cmp < 0 || (cmp == 0 && bad.size() > good.size())) return bad;
  }
  ActionSequence padded = good;
  padded.insert(padded.end() - 1, Action::reduce());
  return is_legal_sequence(s, padded) ? padded : good;
}

}  // namespace amrsl
