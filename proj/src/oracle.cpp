#include "amrsl/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "amrsl/errors.hpp"
#include "amrsl/parallel.hpp"

namespace amrsl {
namespace {

struct Neighbor {
  std::size_t node;
  bool via_parent;  // the edge points into the node we came from
};

std::vector<std::vector<Neighbor>> undirected_adjacency(const AmrGraph& g) {
  std::vector<std::vector<Neighbor>> adj(g.size());
  for (const auto& e : g.edges()) {
    auto s = *g.index_of(e.source);
    auto t = *g.index_of(e.target);
    if (s == t) continue;
    adj[t].push_back({s, true});
    adj[s].push_back({t, false});
  }
  return adj;
}

std::optional<TokenSpan> nearest_alignment(const AmrGraph& g,
                                           const std::vector<std::vector<Neighbor>>& adj,
                                           const std::vector<std::optional<TokenSpan>>& spans,
                                           std::size_t start) {
  // tag 0: first hop went to a parent, 1: to a child.
  std::vector<int> tag(g.size(), -1);
  tag[start] = 0;
  std::vector<std::size_t> layer;
  for (const auto& nb : adj[start]) {
    const int t = nb.via_parent ? 0 : 1;
    if (tag[nb.node] == -1) layer.push_back(nb.node);
    if (tag[nb.node] == -1 || t < tag[nb.node]) tag[nb.node] = t;
  }
  tag[start] = -2;
  while (!layer.empty()) {
    std::optional<std::tuple<int, TokenSpan, std::size_t>> best;
    for (auto v : layer) {
      if (!spans[v]) continue;
      std::tuple<int, TokenSpan, std::size_t> key{tag[v], *spans[v], v};
      if (!best || key < *best) best = key;
    }
    if (best) return std::get<1>(*best);
    std::vector<std::size_t> next;
    for (auto v : layer) {
      for (const auto& nb : adj[v]) {
        if (tag[nb.node] == -2) continue;
        if (tag[nb.node] == -1) {
          next.push_back(nb.node);
          tag[nb.node] = tag[v];
        } else if (std::find(next.begin(), next.end(), nb.node) != next.end()) {
          tag[nb.node] = std::min(tag[nb.node], tag[v]);
        }
      }
    }
    for (auto v : layer) tag[v] = -2;
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

Alignment force_align(const AmrGraph& g, const Sentence& s, const Alignment& al) {
  validate_alignment(g, s, al);
  std::vector<std::optional<TokenSpan>> spans(g.size());
  for (const auto& [var, span] : al) spans[*g.index_of(var)] = span;
  const auto adj = undirected_adjacency(g);
  Alignment out = al;
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (spans[v]) continue;
    auto span = nearest_alignment(g, adj, spans, v);
    out.emplace(g.nodes()[v].id, span.value_or(TokenSpan{0, 0}));
  }
  return out;
}

ActionSequence oracle_actions(const AmrGraph& g, const Sentence& s, const Alignment& al) {
  validate_alignment(g, s, al);
  const auto n = g.size();
  std::vector<TokenSpan> spans(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto it = al.find(g.nodes()[v].id);
    if (it == al.end()) throw InputError("node '" + g.nodes()[v].id + "' is not aligned");
    spans[v] = it->second;
  }

  // One node per span; later nodes overlapping an accepted span are skipped.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spans[a] < spans[b]; });
  const int token_count = static_cast<int>(s.tokens.size());
  std::vector<int> starts_node(token_count, -1);
  std::vector<bool> kept(n, false);
  int covered_until = -1;
  for (auto v : order) {
    if (spans[v].start <= covered_until) continue;
    kept[v] = true;
    starts_node[spans[v].start] = static_cast<int>(v);
    covered_until = spans[v].end;
  }

  const auto adj = undirected_adjacency(g);
  std::vector<bool> predicted(n, false);
  auto pending_neighbors = [&](std::size_t v) {
    return std::any_of(adj[v].begin(), adj[v].end(), [&](const Neighbor& nb) {
      return kept[nb.node] && !predicted[nb.node];
    });
  };
  const auto root = g.index_of(g.root());

  ActionSequence actions;
  std::vector<std::size_t> stack;
  for (int t = 0; t < token_count; ++t) {
    if (starts_node[t] < 0) {
      actions.push_back(Action::shift());
      actions.push_back(Action::reduce());
      continue;
    }
    const auto v = static_cast<std::size_t>(starts_node[t]);
    while (!stack.empty() && !pending_neighbors(stack.back())) {
      actions.push_back(Action::reduce());
      stack.pop_back();
    }
    actions.push_back(Action::shift());
    for (; t < spans[v].end; ++t) {
      actions.push_back(Action::shift());
      actions.push_back(Action::merge());
    }
    actions.push_back(Action::pred(g.nodes()[v].concept_label));
    predicted[v] = true;
    if (!stack.empty()) {
      const auto& below = g.nodes()[stack.back()].id;
      const auto& self = g.nodes()[v].id;
      for (const auto& e : g.edges()) {
        if (e.source == self && e.target == below) actions.push_back(Action::left_arc(e.role));
      }
      for (const auto& e : g.edges()) {
        if (e.source == below && e.target == self) actions.push_back(Action::right_arc(e.role));
      }
    }
    stack.push_back(v);
    if (root && *root == v) actions.push_back(Action::root());
  }
  actions.push_back(Action::close());
  return actions;
}

CoverageRecord oracle_record(const CorpusRecord& record, const SmatchOptions& options) {
  const auto al = force_align(record.graph, record.sentence, record.alignment.value_or(Alignment{}));
  auto actions = oracle_actions(record.graph, record.sentence, al);
  auto replayed = run(record.sentence, actions);
  return {record.sentence.id, smatch(replayed, record.graph, options), std::move(actions)};
}

namespace {

CoverageReport summarize(std::vector<CoverageRecord> records) {
  CoverageReport report;
  std::size_t m = 0, ta = 0, tb = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i].result;
    m += r.matched;
    ta += r.triples_a;
    tb += r.triples_b;
    if (r.matched != r.triples_a || r.matched != r.triples_b) report.failures.push_back(i);
  }
  report.total = make_result(m, ta, tb);
  report.records = std::move(records);
  return report;
}

}  // namespace

CoverageReport oracle_coverage(const Corpus& corpus, const SmatchOptions& options) {
  std::vector<CoverageRecord> records(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { records[i] = oracle_record(corpus[i], options); });
  return summarize(std::move(records));
}

CoverageReport oracle_coverage_serial(const Corpus& corpus, const SmatchOptions& options) {
  std::vector<CoverageRecord> records;
  records.reserve(corpus.size());
  for (const auto& rec : corpus) records.push_back(oracle_record(rec, options));
  return summarize(std::move(records));
}

}  // namespace amrsl
