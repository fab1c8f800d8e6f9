#pragma once

// Cycle-consistency filter for generated sentences. Each generated sentence
// is parsed and compared with the parse of the original sentence (not the
// gold graph, so parser error cancels out); survivors are paired with the
// gold graph for training.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "amrsl/adapters.hpp"
#include "amrsl/corpus.hpp"
#include "amrsl/smatch.hpp"

namespace amrsl {

enum class CandidateOrigin { kSampled, kGreedy };

struct SynTextCandidate {
  std::string graph_id;
  CandidateOrigin origin = CandidateOrigin::kSampled;
  std::string text;
};

enum class SynTextRule {
  kKept,
  kBelowThreshold,
  kDuplicateOfGold,
  kDuplicateOfKept,
  kOverQuota,
  kParseFailure,
};

std::string_view rule_name(SynTextRule rule);
std::string_view origin_name(CandidateOrigin origin);

struct SynTextDecision {
  std::size_t candidate = 0;  // index into the input list
  bool kept = false;
  SynTextRule rule = SynTextRule::kBelowThreshold;
  // Smatch f1 of the candidate's parse against the parse of the original
  // sentence; unset for gold duplicates and parse failures.
  std::optional<double> score;
};

inline constexpr double kDefaultSmatchThreshold = 0.80;
inline constexpr std::size_t kDefaultQuota = 3;

struct SynTextOptions {
  double threshold = kDefaultSmatchThreshold;  // inclusive
  std::size_t quota = kDefaultQuota;
  SmatchOptions smatch{};
};

struct SynTextRecordParse {
  std::string graph_id;
  std::optional<AmrGraph> parsed_original;
};

struct SynTextResult {
  Corpus kept;                               // (generated sentence, gold graph)
  std::vector<SynTextDecision> decisions;    // one per candidate, input order
  std::vector<SynTextRecordParse> originals; // the graphs candidates were compared with

  double keep_rate() const;
};

// `graph_id\torigin\ttext` lines; origin is "sampled" or "greedy".
std::vector<SynTextCandidate> parse_candidates(std::string_view text);

// Records are processed independently. Within a record candidates are ranked
// by descending score, greedy output first on ties, then input order; the
// first `quota` distinct texts at or above the threshold survive.
SynTextResult filter_syntext(const Corpus& gold, const std::vector<SynTextCandidate>& candidates,
                             ParserAdapter& parser, const SynTextOptions& options = {});

}  // namespace amrsl
