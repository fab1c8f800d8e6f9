#pragma once

// Sentence-level BLEU against a single reference, on a 0-100 scale.
// Clipped n-gram precisions for n = 1..max_n; an order with no matches gets
// epsilon added to numerator and denominator. Brevity penalty exp(1 - r/c)
// applies when the candidate is shorter than the reference.

#include <string>
#include <vector>

namespace amrsl {

inline constexpr int kBleuMaxOrder = 4;
inline constexpr double kBleuSmoothing = 0.1;

// Empty candidate scores 0. Throws std::invalid_argument on an empty
// reference.
double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, int max_n = kBleuMaxOrder);

}  // namespace amrsl
