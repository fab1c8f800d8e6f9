#include "amrsl/penman.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <utility>

#include "amrsl/errors.hpp"

namespace amrsl {
namespace {

// Roles that end in "-of" but are not inverses.
constexpr std::array<std::string_view, 3> kNonInverseOfRoles = {
    "consist-of", "prep-out-of", "prep-on-behalf-of"};

enum class TokenKind { kOpen, kClose, kSlash, kRole, kString, kSymbol, kEnd };

struct Token {
  TokenKind kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(std::string_view text, int first_line) : text_(text), line_(first_line) {}

  Token next() {
    skip_space();
    const int line = line_;
    const int col = column_;
    if (pos_ >= text_.size()) return {TokenKind::kEnd, "", line, col};
    const char c = text_[pos_];
    if (c == '(') return single(TokenKind::kOpen, line, col);
    if (c == ')') return single(TokenKind::kClose, line, col);
    if (c == '/') return single(TokenKind::kSlash, line, col);
    if (c == '"') return quoted(line, col);
    std::string word;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) {
      word += text_[pos_];
      advance();
    }
    return {c == ':' ? TokenKind::kRole : TokenKind::kSymbol, std::move(word), line, col};
  }

 private:
  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' ||
           c == '/' || c == '"';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      advance();
    }
  }

  Token single(TokenKind kind, int line, int col) {
    std::string s(1, text_[pos_]);
    advance();
    return {kind, std::move(s), line, col};
  }

  Token quoted(int line, int col) {
    std::string s(1, '"');
    advance();
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      s += c;
      advance();
      if (c == '\\' && pos_ < text_.size()) {
        s += text_[pos_];
        advance();
      } else if (c == '"') {
        return {TokenKind::kString, std::move(s), line, col};
      }
    }
    throw ParseError("unterminated string", line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_ = 1;
};

struct PendingReference {
  std::string source;
  std::string role;
  std::string symbol;
  int line;
  int column;
};

class Parser {
 public:
  Parser(std::string_view text, ParseMode mode, int first_line)
      : lexer_(text, first_line), mode_(mode) {
    lookahead_ = lexer_.next();
  }

  AmrGraph parse() {
    if (lookahead_.kind != TokenKind::kOpen) fail("expected '('");
    std::string root = parse_node();
    if (mode_ == ParseMode::kLenient) {
      while (lookahead_.kind == TokenKind::kOpen) parse_node();
    }
    if (lookahead_.kind != TokenKind::kEnd) fail("unexpected content after graph");
    resolve_references();
    graph_.set_root(std::move(root));
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    std::string found = lookahead_.kind == TokenKind::kEnd
                            ? std::string("end of input")
                            : "'" + lookahead_.text + "'";
    throw ParseError(what + ", found " + found, lookahead_.line, lookahead_.column);
  }

  Token take() {
    Token t = std::move(lookahead_);
    lookahead_ = lexer_.next();
    return t;
  }

  std::string parse_node() {
    take();  // '('
    if (lookahead_.kind != TokenKind::kSymbol) fail("expected variable");
    Token var = take();
    if (lookahead_.kind != TokenKind::kSlash) fail("expected '/'");
    take();
    if (lookahead_.kind != TokenKind::kSymbol && lookahead_.kind != TokenKind::kString) {
      fail("expected concept");
    }
    Token concept_token = take();
    if (graph_.has_node(var.text)) {
      throw ParseError("duplicate variable '" + var.text + "'", var.line, var.column);
    }
    graph_.add_node(var.text, concept_token.text);
    while (lookahead_.kind == TokenKind::kRole) parse_relation(var.text);
    if (lookahead_.kind != TokenKind::kClose) fail("expected ')' or role");
    take();
    return var.text;
  }

  void parse_relation(const std::string& source) {
    Token role = take();
    std::string label = role.text.substr(1);
    if (label.empty()) throw ParseError("empty role", role.line, role.column);
    switch (lookahead_.kind) {
      case TokenKind::kOpen: {
        std::string child = parse_node();
        add_relation(source, label, child);
        break;
      }
      case TokenKind::kString:
        graph_.add_attribute(source, label, take().text);
        break;
      case TokenKind::kSymbol: {
        Token sym = take();
        pending_.push_back({source, label, sym.text, sym.line, sym.column});
        break;
      }
      default:
        fail("expected value after role :" + label);
    }
  }

  void add_relation(const std::string& source, const std::string& role,
                    const std::string& target) {
    if (is_inverse_role(role)) {
      graph_.add_edge(target, role.substr(0, role.size() - 3), source);
    } else {
      graph_.add_edge(source, role, target);
    }
  }

  void resolve_references() {
    for (auto& ref : pending_) {
      if (graph_.has_node(ref.symbol)) {
        add_relation(ref.source, ref.role, ref.symbol);
      } else if (is_variable_shaped(ref.symbol)) {
        if (mode_ == ParseMode::kStrict) {
          throw ParseError("reference to undeclared variable '" + ref.symbol + "'",
                           ref.line, ref.column);
        }
        graph_.add_node(ref.symbol, std::string(kUnknownConcept));
        add_relation(ref.source, ref.role, ref.symbol);
      } else {
        graph_.add_attribute(ref.source, ref.role, ref.symbol);
      }
    }
  }

  Lexer lexer_;
  ParseMode mode_;
  Token lookahead_;
  AmrGraph graph_;
  std::vector<PendingReference> pending_;
};

// Spanning structure chosen before emission: for each node, the edge through
// which it is declared, and whether that edge is written inverted.
struct TreeEdge {
  std::size_t edge = 0;
  bool inverted = false;
};

class Writer {
 public:
  Writer(const AmrGraph& g, Layout layout) : g_(g), layout_(layout) {
    const auto n = g.size();
    incident_.resize(n);
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
      const auto& edge = g.edges()[e];
      auto s = *g.index_of(edge.source);
      auto t = *g.index_of(edge.target);
      incident_[s].push_back(e);
      if (t != s) incident_[t].push_back(e);
    }
    for (std::size_t v = 0; v < n; ++v) {
      std::sort(incident_[v].begin(), incident_[v].end(),
                [&](std::size_t a, std::size_t b) { return key(v, a) < key(v, b); });
    }
    for (std::size_t a = 0; a < g.attributes().size(); ++a) {
      attrs_of_[*g.index_of(g.attributes()[a].source)].push_back(a);
    }
  }

  std::string write() {
    if (g_.empty()) throw SerializationError("cannot serialize an empty graph", {});
    start();
    grow(*g_.index_of(g_.root()));
    auto missing = undeclared();
    if (!missing.empty()) {
      std::string names;
      for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
      throw SerializationError("graph is disconnected; unreachable: " + names,
                               std::move(missing));
    }
    std::string out;
    emit(*g_.index_of(g_.root()), 0, out);
    return out;
  }

  // Root component first, then one expression per remaining component,
  // each started at its earliest declared node.
  std::string write_fragments() {
    if (g_.empty()) throw SerializationError("cannot serialize an empty graph", {});
    start();
    std::vector<std::size_t> tops{*g_.index_of(g_.root())};
    grow(tops.front());
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (declared_[v]) continue;
      tops.push_back(v);
      grow(v);
    }
    std::string out;
    for (auto t : tops) {
      if (!out.empty()) out += layout_ == Layout::kSingleLine ? " " : "\n";
      emit(t, 0, out);
    }
    return out;
  }

 private:
  // Sort key of edge e as seen from node v.
  std::tuple<std::size_t, std::string, int> key(std::size_t v, std::size_t e) const {
    const auto& edge = g_.edges()[e];
    auto s = *g_.index_of(edge.source);
    auto t = *g_.index_of(edge.target);
    const bool outgoing = s == v;
    return {outgoing ? t : s, edge.role, outgoing ? 0 : 1};
  }

  std::size_t other(std::size_t v, std::size_t e) const {
    const auto& edge = g_.edges()[e];
    auto s = *g_.index_of(edge.source);
    return s == v ? *g_.index_of(edge.target) : s;
  }

  bool outgoing(std::size_t v, std::size_t e) const {
    return *g_.index_of(g_.edges()[e].source) == v;
  }

  void declare_forward(std::size_t v) {
    for (auto e : incident_[v]) {
      if (!outgoing(v, e)) continue;
      auto w = other(v, e);
      if (declared_[w]) continue;
      declared_[w] = true;
      tree_[w] = TreeEdge{e, false};
      declare_forward(w);
    }
  }

  void start() {
    declared_.assign(g_.size(), false);
    tree_.assign(g_.size(), std::nullopt);
  }

  void grow(std::size_t top) {
    const auto n = g_.size();
    declared_[top] = true;
    declare_forward(top);
    // Nodes only reachable against edge direction hang off declared nodes
    // through inverted roles.
    while (true) {
      std::optional<std::pair<std::size_t, std::size_t>> pick;  // (node, edge)
      for (std::size_t v = 0; v < n && !pick; ++v) {
        if (!declared_[v]) continue;
        for (auto e : incident_[v]) {
          if (outgoing(v, e)) continue;
          auto w = other(v, e);
          if (!declared_[w]) {
            pick = {w, e};
            break;
          }
        }
      }
      if (!pick) break;
      declared_[pick->first] = true;
      tree_[pick->first] = TreeEdge{pick->second, true};
      declare_forward(pick->first);
    }
  }

  std::vector<std::string> undeclared() const {
    std::vector<std::string> missing;
    for (std::size_t v = 0; v < g_.size(); ++v) {
      if (!declared_[v]) missing.push_back(g_.nodes()[v].id);
    }
    return missing;
  }

  void separator(int depth, std::string& out) const {
    if (layout_ == Layout::kSingleLine) {
      out += ' ';
    } else {
      out += '\n';
      out.append(static_cast<std::size_t>(depth + 1) * 4, ' ');
    }
  }

  void emit(std::size_t v, int depth, std::string& out) const {
    const auto& node = g_.nodes()[v];
    out += '(';
    out += node.id;
    out += " / ";
    out += node.concept_label;
    for (auto e : incident_[v]) {
      const auto& edge = g_.edges()[e];
      auto w = other(v, e);
      const bool out_edge = outgoing(v, e);
      const bool tree_child = tree_[w] && tree_[w]->edge == e && w != v &&
                              tree_[w]->inverted == !out_edge;
      if (!out_edge && !tree_child) continue;  // written at its source
      if (out_edge && tree_[v] && tree_[v]->inverted && tree_[v]->edge == e) {
        continue;  // written inverted at the target
      }
      separator(depth, out);
      out += ':';
      out += edge.role;
      if (!out_edge) out += "-of";
      out += ' ';
      if (tree_child) {
        emit(w, depth + 1, out);
      } else {
        out += g_.nodes()[w].id;
      }
    }
    if (auto it = attrs_of_.find(v); it != attrs_of_.end()) {
      for (auto a : it->second) {
        const auto& attr = g_.attributes()[a];
        separator(depth, out);
        out += ':';
        out += attr.role;
        out += ' ';
        out += attr.value;
      }
    }
    out += ')';
  }

  const AmrGraph& g_;
  Layout layout_;
  std::vector<std::vector<std::size_t>> incident_;
  std::map<std::size_t, std::vector<std::size_t>> attrs_of_;
  std::vector<bool> declared_;
  std::vector<std::optional<TreeEdge>> tree_;
};

}  // namespace

bool is_variable_shaped(std::string_view symbol) {
  if (symbol.empty() || symbol[0] < 'a' || symbol[0] > 'z') return false;
  return std::all_of(symbol.begin() + 1, symbol.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool is_inverse_role(std::string_view role) {
  if (role.size() <= 3 || !role.ends_with("-of")) return false;
  return std::find(kNonInverseOfRoles.begin(), kNonInverseOfRoles.end(), role) ==
         kNonInverseOfRoles.end();
}

AmrGraph parse_penman(std::string_view text, ParseMode mode, int first_line) {
  return Parser(text, mode, first_line).parse();
}

std::string serialize_penman(const AmrGraph& g, Layout layout) {
  return Writer(g, layout).write();
}

std::string serialize_fragments(const AmrGraph& g, Layout layout) {
  return Writer(g, layout).write_fragments();
}

}  // namespace amrsl
