#include "amrsl/graph.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

#include "amrsl/errors.hpp"

namespace amrsl {

void AmrGraph::add_node(std::string id, std::string concept_label) {
  if (id.empty()) throw GraphError("empty variable id");
  if (index_.contains(id)) throw GraphError("duplicate variable '" + id + "'");
  index_.emplace(id, nodes_.size());
  nodes_.push_back({std::move(id), std::move(concept_label)});
}

bool AmrGraph::add_edge(std::string source, std::string role, std::string target) {
  if (role.empty()) throw GraphError("empty role label");
  if (!has_node(source)) throw GraphError("edge source '" + source + "' is not declared");
  if (!has_node(target)) throw GraphError("edge target '" + target + "' is not declared");
  if (has_edge(source, role, target)) return false;
  edges_.push_back({std::move(source), std::move(role), std::move(target)});
  return true;
}

bool AmrGraph::add_attribute(std::string source, std::string role, std::string value) {
  if (role.empty()) throw GraphError("empty role label");
  if (!has_node(source)) {
    throw GraphError("attribute source '" + source + "' is not declared");
  }
  Attribute attr{std::move(source), std::move(role), std::move(value)};
  if (std::find(attributes_.begin(), attributes_.end(), attr) != attributes_.end()) {
    return false;
  }
  attributes_.push_back(std::move(attr));
  return true;
}

void AmrGraph::set_root(std::string id) {
  if (!has_node(id)) throw GraphError("root '" + id + "' is not declared");
  root_ = std::move(id);
}

bool AmrGraph::has_node(std::string_view id) const {
  return index_.find(std::string(id)) != index_.end();
}

bool AmrGraph::has_edge(std::string_view source, std::string_view role,
                        std::string_view target) const {
  return std::any_of(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return e.source == source && e.role == role && e.target == target;
  });
}

std::optional<std::size_t> AmrGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& AmrGraph::concept_of(std::string_view id) const {
  auto idx = index_of(id);
  if (!idx) throw GraphError("unknown variable '" + std::string(id) + "'");
  return nodes_[*idx].concept_label;
}

std::vector<std::string> unreachable_nodes(const AmrGraph& g) {
  std::vector<std::string> out;
  if (g.empty()) return out;
  const auto n = g.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& e : g.edges()) {
    auto s = *g.index_of(e.source);
    auto t = *g.index_of(e.target);
    adj[s].push_back(t);
    adj[t].push_back(s);
  }
  std::vector<bool> seen(n, false);
  auto root = g.index_of(g.root());
  if (root) {
    std::queue<std::size_t> frontier;
    frontier.push(*root);
    seen[*root] = true;
    while (!frontier.empty()) {
      auto v = frontier.front();
      frontier.pop();
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          frontier.push(w);
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) out.push_back(g.nodes()[i].id);
  }
  return out;
}

bool is_connected(const AmrGraph& g) { return unreachable_nodes(g).empty(); }

std::vector<std::string> split_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

void validate_alignment(const AmrGraph& g, const Sentence& s, const Alignment& al) {
  const int n = static_cast<int>(s.tokens.size());
  for (const auto& [var, span] : al) {
    if (!g.has_node(var)) {
      throw InputError("alignment references unknown variable '" + var + "'");
    }
    if (span.start < 0 || span.start > span.end || span.end >= n) {
      throw InputError("alignment span " + std::to_string(span.start) + "-" +
                       std::to_string(span.end) + " for '" + var +
                       "' is outside the " + std::to_string(n) + " tokens");
    }
  }
}

}  // namespace amrsl
