#pragma once

// Smatch: F1 over matched triples, maximized over injective variable
// mappings from graph A (test) into graph B (gold).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amrsl/graph.hpp"
#include "amrsl/triples.hpp"

namespace amrsl {

struct SmatchResult {
  std::size_t matched = 0;
  std::size_t triples_a = 0;
  std::size_t triples_b = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::map<std::string, std::string> mapping;  // A variable -> B variable
};

// Fills precision/recall/f1 from the three counts.
SmatchResult make_result(std::size_t matched, std::size_t triples_a, std::size_t triples_b);

// Compares the F1 of two results exactly, from their integer counts.
// Returns <0, 0, >0.
int compare_f1(const SmatchResult& x, const SmatchResult& y);

inline constexpr int kDefaultRestarts = 4;
inline constexpr std::size_t kExactVariableLimit = 8;

struct SmatchOptions {
  int restarts = kDefaultRestarts;
  std::uint64_t seed = 0;
  bool exact = false;
};

// Hill climbing. Restart 0 starts from a greedy concept-agreement mapping,
// the others from random injective mappings drawn from `seed`.
SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, int restarts = kDefaultRestarts,
                    std::uint64_t seed = 0);

// Exhaustive search. Throws std::invalid_argument when both graphs have more
// than kExactVariableLimit variables.
SmatchResult smatch_exact(const AmrGraph& a, const AmrGraph& b);

SmatchResult smatch(const AmrGraph& a, const AmrGraph& b, const SmatchOptions& options);

// Same searches over arbitrary triple sets.
SmatchResult match_triples(const TripleSet& a, const TripleSet& b, const SmatchOptions& options);

struct CorpusSmatch {
  std::vector<SmatchResult> records;
  SmatchResult total;  // micro-average: summed counts
};

// Pairs graphs by position. Parallel over records; each record uses the same
// options so results do not depend on the thread count.
CorpusSmatch corpus_smatch(const std::vector<AmrGraph>& test, const std::vector<AmrGraph>& gold,
                           const SmatchOptions& options = {});

// Single-threaded reference for corpus_smatch.
CorpusSmatch corpus_smatch_serial(const std::vector<AmrGraph>& test,
                                  const std::vector<AmrGraph>& gold,
                                  const SmatchOptions& options = {});

}  // namespace amrsl
