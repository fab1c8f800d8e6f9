#pragma once

// Per-category breakdown of graph agreement: unlabeled, sense-free, concept,
// named-entity, negation, wikification, re-entrancy and semantic-role scores.
//
// Definitions used here:
//   unlabeled      Smatch with every relation and attribute role replaced by
//                  one label.
//   no_wsd         Smatch with trailing "-dd" sense suffixes removed.
//   concepts       multiset F1 over concept labels.
//   named_entities multiset F1 over "<concept> <op1> <op2> ..." strings built
//                  from each :name edge and its name node's :opN values.
//   negation       multiset F1 over concepts carrying `:polarity -`.
//   wikification   multiset F1 over :wiki values.
//   reentrancy     Smatch over the incoming relations of nodes with two or
//                  more parents, plus the instance triples of their endpoints.
//   srl            Smatch over :ARGn relations plus endpoint instances.
//
// A category empty in both graphs scores 1.0; empty in exactly one, 0.0.

#include <array>
#include <cstddef>
#include <string_view>
#include <utility>

#include "amrsl/graph.hpp"
#include "amrsl/smatch.hpp"

namespace amrsl {

struct CategoryScore {
  std::size_t matched = 0;
  std::size_t test = 0;
  std::size_t gold = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

CategoryScore make_category(std::size_t matched, std::size_t test, std::size_t gold);

struct FineGrainedReport {
  CategoryScore smatch;
  CategoryScore unlabeled;
  CategoryScore no_wsd;
  CategoryScore concepts;
  CategoryScore named_entities;
  CategoryScore negation;
  CategoryScore wikification;
  CategoryScore reentrancy;
  CategoryScore srl;
};

inline constexpr std::size_t kCategoryCount = 9;

// (name, score) in column order.
std::array<std::pair<std::string_view, const CategoryScore*>, kCategoryCount> categories(
    const FineGrainedReport& report);

FineGrainedReport fine_grained(const AmrGraph& test, const AmrGraph& gold,
                               const SmatchOptions& options = {});

// Sums counts category by category (corpus micro-average).
FineGrainedReport accumulate(const FineGrainedReport& x, const FineGrainedReport& y);

std::string strip_sense(std::string_view concept_label);

}  // namespace amrsl
