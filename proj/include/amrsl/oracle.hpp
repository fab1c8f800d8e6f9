#pragma once

// Rule-based oracle: derives machine actions that rebuild a gold graph from
// its token alignments.

#include <cstdint>
#include <string>
#include <vector>

#include "amrsl/corpus.hpp"
#include "amrsl/graph.hpp"
#include "amrsl/machine.hpp"
#include "amrsl/smatch.hpp"

namespace amrsl {

// Gives every unaligned node the span of its nearest originally aligned
// node (undirected BFS). Ties prefer paths that start at a parent, then the
// leftmost span. Nodes with no aligned node in reach fall back to token 0.
Alignment force_align(const AmrGraph& g, const Sentence& s, const Alignment& al);

// Left-to-right sweep. Each node is predicted at its span, arcs are drawn
// between the new node and the node directly below it, and nodes are reduced
// once none of their neighbors remains to be predicted. ROOT is issued while
// the gold root is on top. Nodes whose spans overlap an earlier node's span
// cannot be built and are skipped.
//
// Throws InputError when some node is unaligned.
ActionSequence oracle_actions(const AmrGraph& g, const Sentence& s, const Alignment& al);

struct CoverageRecord {
  std::string id;
  SmatchResult result;
  ActionSequence actions;
};

struct CoverageReport {
  std::vector<CoverageRecord> records;  // input order
  SmatchResult total;                   // summed counts
  std::vector<std::size_t> failures;    // indices with f1 < 1

  std::size_t size() const { return records.size(); }
};

// Force-aligns each record (missing alignment = empty), runs the oracle,
// replays the actions and scores them against the gold graph.
CoverageReport oracle_coverage(const Corpus& corpus, const SmatchOptions& options = {});
CoverageReport oracle_coverage_serial(const Corpus& corpus, const SmatchOptions& options = {});

CoverageRecord oracle_record(const CorpusRecord& record, const SmatchOptions& options);

}  // namespace amrsl
