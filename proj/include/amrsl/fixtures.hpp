#pragma once

// Synthetic data for property tests and the gen-fixtures command.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "amrsl/corpus.hpp"
#include "amrsl/machine.hpp"

namespace amrsl {

// Uniform draw in [0, n) that is identical across standard libraries.
inline std::size_t draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}
inline bool coin(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

template <typename T>
void shuffle_in_place(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[draw(rng, i)]);
}

// splitmix64 finalizer, for deriving independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

struct TreeFixtureOptions {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 10;
  double filler_rate = 0.3;      // chance of an unaligned token before a node
  double multi_token_rate = 0.15;
};

// A random tree whose tokens follow a depth-first order of the tree (from a
// random start node), with injective contiguous alignments. These graphs are
// exactly rebuildable by the oracle.
CorpusRecord random_tree_record(std::mt19937_64& rng, const TreeFixtureOptions& options,
                                std::string id);
Corpus random_tree_corpus(std::size_t count, std::uint64_t seed,
                          const TreeFixtureOptions& options = {});

struct GraphFixtureOptions {
  std::size_t variables = 4;
  std::size_t extra_edges = 1;  // beyond a spanning tree
  double attribute_rate = 0.25;
  bool connected = true;
};

// Small concept and role pools make many mappings tie, which is what the
// matcher tests need.
AmrGraph random_graph(std::mt19937_64& rng, const GraphFixtureOptions& options);

// Relabels, drops or adds one piece of structure.
AmrGraph mutate_graph(const AmrGraph& g, std::mt19937_64& rng);

// A legal but worse variant of `good`: a dropped or flipped arc, a dropped
// ROOT, or redundant REDUCEs before CLOSE.
ActionSequence plant_suboptimal(const Sentence& s, const ActionSequence& good,
                                std::mt19937_64& rng);

}  // namespace amrsl
