#pragma once

// AMR graph data model: variables with concept labels, relations between
// variables and attributes carrying constants. Roles are stored without the
// leading colon.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amrsl {

struct Node {
  std::string id;
  std::string concept_label;

  friend bool operator==(const Node&, const Node&) = default;
};

struct Edge {
  std::string source;
  std::string role;
  std::string target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Attribute {
  std::string source;
  std::string role;
  std::string value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

class AmrGraph {
 public:
  // Throws GraphError on a duplicate or empty id.
  void add_node(std::string id, std::string concept_label);

  // Returns false when the identical edge is already present. Throws
  // GraphError for unknown endpoints or an empty role.
  bool add_edge(std::string source, std::string role, std::string target);
  bool add_attribute(std::string source, std::string role, std::string value);

  void set_root(std::string id);

  bool has_node(std::string_view id) const;
  bool has_edge(std::string_view source, std::string_view role,
                std::string_view target) const;
  std::optional<std::size_t> index_of(std::string_view id) const;
  const std::string& concept_of(std::string_view id) const;

  // Nodes in declaration order.
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  const std::string& root() const { return root_; }

  bool empty() const { return nodes_.empty(); }
  std::size_t size() const { return nodes_.size(); }

  friend bool operator==(const AmrGraph& a, const AmrGraph& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_ &&
           a.attributes_ == b.attributes_ && a.root_ == b.root_;
  }

 private:
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<Attribute> attributes_;
  std::string root_;
};

// True iff every node is reachable from the root ignoring edge direction.
// The empty graph is connected.
bool is_connected(const AmrGraph& g);

// Variables not reachable from the root, in declaration order.
std::vector<std::string> unreachable_nodes(const AmrGraph& g);

struct Sentence {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

// Whitespace tokenization, used when no explicit token line exists.
std::vector<std::string> split_tokens(std::string_view text);
std::string join_tokens(const std::vector<std::string>& tokens);

// Inclusive 0-based token range.
struct TokenSpan {
  int start = 0;
  int end = 0;

  friend bool operator==(const TokenSpan&, const TokenSpan&) = default;
  friend auto operator<=>(const TokenSpan&, const TokenSpan&) = default;
};

using Alignment = std::map<std::string, TokenSpan>;

// Throws InputError if a variable is unknown or a span is out of bounds.
void validate_alignment(const AmrGraph& g, const Sentence& s, const Alignment& al);

}  // namespace amrsl
