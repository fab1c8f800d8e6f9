#pragma once

// Silver AMR filtering and training-corpus assembly.
//
// A parsed graph is dropped when it is disconnected. When every token of the
// original sentence is in the human-annotated vocabulary, the graph is also
// dropped if BLEU between the original and the text regenerated from the
// graph falls below the threshold. Sentences with out-of-vocabulary tokens
// skip the BLEU test.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "amrsl/adapters.hpp"
#include "amrsl/corpus.hpp"

namespace amrsl {

class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::set<std::string> tokens) : tokens_(std::move(tokens)) {}

  bool contains(const std::string& token) const { return tokens_.contains(token); }
  // Tokens of `tokens` absent from the vocabulary, in order.
  std::vector<std::string> oov(const std::vector<std::string>& tokens) const;
  std::size_t size() const { return tokens_.size(); }
  const std::set<std::string>& tokens() const { return tokens_; }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::set<std::string> tokens_;
};

// Throws InputError on an empty corpus.
Vocabulary build_vocabulary(const Corpus& reference);

struct SynAmrRecord {
  Sentence sentence;
  AmrGraph silver;
  std::optional<Sentence> regenerated;
};

// Metadata key holding regenerated text in silver corpus files.
inline constexpr std::string_view kRegeneratedKey = "regen";

std::vector<SynAmrRecord> synamr_records(const Corpus& silver);

enum class SynAmrRule {
  kKept,
  kDisconnected,
  kBelowThreshold,
};

std::string_view rule_name(SynAmrRule rule);

struct SynAmrDecision {
  std::size_t record = 0;
  bool kept = false;
  SynAmrRule rule = SynAmrRule::kKept;
  std::optional<double> bleu;
  std::vector<std::string> oov;  // non-empty: BLEU test bypassed
  // Set on kept in-vocabulary records that had no regenerated text.
  bool missing_regenerated = false;
};

inline constexpr double kDefaultBleuThreshold = 5.0;

struct SynAmrOptions {
  double bleu_threshold = kDefaultBleuThreshold;
  bool no_filter = false;  // keep everything
};

struct SynAmrResult {
  std::vector<std::size_t> kept;  // record indices, input order
  std::vector<SynAmrDecision> decisions;
};

SynAmrResult filter_synamr(const std::vector<SynAmrRecord>& records, const Vocabulary& vocab,
                           const SynAmrOptions& options = {});

// Fills missing regenerated text for the records the BLEU test will look at.
void regenerate(std::vector<SynAmrRecord>& records, const Vocabulary& vocab,
                GeneratorAdapter& generator);

enum class AssemblyMode { kSilverOnly, kMixed };

struct TrainingCorpora {
  Corpus pretrain;
  Corpus finetune;
};

// silver_only: pretrain = silver, finetune = gold.
// mixed: pretrain = gold and silver shuffled together by `seed`,
//        finetune = gold.
// Throws InputError on empty inputs or (mixed) colliding ids.
TrainingCorpora assemble_training(const Corpus& gold, const Corpus& silver, AssemblyMode mode,
                                  std::uint64_t seed);

}  // namespace amrsl
