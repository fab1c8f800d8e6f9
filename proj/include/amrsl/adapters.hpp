#pragma once

// Interfaces for the trained models the pipelines depend on, and the
// line-protocol adapters that reach them as external processes.
//
// Parser:    PARSE <id>\t<tokens>                 -> AMR <id>\t<penman> | FAIL <id>
// Generator: GEN <id>\t<single-line penman>       -> TXT <id>\t<text>
// Proposer:  PROPOSE <id> <n> <seed>\t<tokens>\t<actions>
//                                                 -> CAND <id>\t<actions> ... END <id>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "amrsl/corpus.hpp"
#include "amrsl/graph.hpp"
#include "amrsl/machine.hpp"
#include "amrsl/process.hpp"

namespace amrsl {

class ParserAdapter {
 public:
  virtual ~ParserAdapter() = default;
  // nullopt when the parser reports failure.
  virtual std::optional<AmrGraph> parse(const Sentence& s) = 0;
  virtual bool thread_safe() const { return false; }
};

class GeneratorAdapter {
 public:
  virtual ~GeneratorAdapter() = default;
  virtual std::string generate(const std::string& id, const AmrGraph& g) = 0;
  virtual bool thread_safe() const { return false; }
};

using LegalityCheck = std::function<bool(const ActionSequence&)>;

struct ProposalRequest {
  const std::string& id;
  const Sentence& sentence;
  const ActionSequence& current;
  std::size_t samples;
  std::uint64_t seed;
  const LegalityCheck& is_legal;
};

class ActionProposer {
 public:
  virtual ~ActionProposer() = default;
  virtual std::vector<ActionSequence> propose(const ProposalRequest& request) = 0;
  virtual bool thread_safe() const { return false; }
};

// Collapses runs of whitespace and trims; the key for text equality.
std::string normalize_text(std::string_view text);

class ExternalParser final : public ParserAdapter {
 public:
  explicit ExternalParser(const std::string& command) : process_(command) {}
  std::optional<AmrGraph> parse(const Sentence& s) override;

 private:
  ChildProcess process_;
};

class ExternalGenerator final : public GeneratorAdapter {
 public:
  explicit ExternalGenerator(const std::string& command) : process_(command) {}
  std::string generate(const std::string& id, const AmrGraph& g) override;

 private:
  ChildProcess process_;
};

// Candidate lines that fail to parse come back as empty sequences, which
// the machine rejects.
class ExternalProposer final : public ActionProposer {
 public:
  explicit ExternalProposer(const std::string& command) : process_(command) {}
  std::vector<ActionSequence> propose(const ProposalRequest& request) override;

 private:
  ChildProcess process_;
};

// Test double: returns the graph stored for a sentence's normalized text.
class LookupParser final : public ParserAdapter {
 public:
  LookupParser() = default;
  explicit LookupParser(const Corpus& corpus);

  void add(std::string_view text, AmrGraph g);
  std::optional<AmrGraph> parse(const Sentence& s) override;
  bool thread_safe() const override { return true; }

 private:
  std::map<std::string, AmrGraph> graphs_;
};

}  // namespace amrsl
