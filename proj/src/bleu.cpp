#include "amrsl/bleu.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace amrsl {
namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

double sentence_bleu(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, int max_n) {
  if (reference.empty()) throw std::invalid_argument("BLEU reference is empty");
  if (max_n < 1) throw std::invalid_argument("BLEU order must be positive");
  if (candidate.empty()) return 0.0;

  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = count_ngrams(candidate, n);
    const auto ref = count_ngrams(reference, n);
    int matched = 0;
    int total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      if (auto it = ref.find(gram); it != ref.end()) matched += std::min(count, it->second);
    }
    const double precision =
        matched == 0 ? kBleuSmoothing / (total + kBleuSmoothing)
                     : static_cast<double>(matched) / static_cast<double>(total);
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return 100.0 * brevity * std::exp(log_sum / max_n);
}

}  // namespace amrsl
