#include "amrsl/syntxt.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "amrsl/errors.hpp"
#include "amrsl/parallel.hpp"

namespace amrsl {

std::string_view rule_name(SynTextRule rule) {
  switch (rule) {
    case SynTextRule::kKept: return "kept";
    case SynTextRule::kBelowThreshold: return "below_threshold";
    case SynTextRule::kDuplicateOfGold: return "duplicate_of_gold";
    case SynTextRule::kDuplicateOfKept: return "duplicate_of_kept";
    case SynTextRule::kOverQuota: return "over_quota";
    case SynTextRule::kParseFailure: return "parse_failure";
  }
  return "unknown";
}

std::string_view origin_name(CandidateOrigin origin) {
  return origin == CandidateOrigin::kGreedy ? "greedy" : "sampled";
}

double SynTextResult::keep_rate() const {
  if (decisions.empty()) return 0.0;
  return static_cast<double>(kept.size()) / static_cast<double>(decisions.size());
}

std::vector<SynTextCandidate> parse_candidates(std::string_view text) {
  std::vector<SynTextCandidate> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (normalize_text(line).empty()) continue;
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos) {
      throw InputError("candidates line " + std::to_string(line_no) +
                       ": expected graph_id<TAB>origin<TAB>text");
    }
    SynTextCandidate c;
    c.graph_id = std::string(line.substr(0, t1));
    auto origin = line.substr(t1 + 1, t2 - t1 - 1);
    if (origin == "greedy") {
      c.origin = CandidateOrigin::kGreedy;
    } else if (origin == "sampled") {
      c.origin = CandidateOrigin::kSampled;
    } else {
      throw InputError("candidates line " + std::to_string(line_no) + ": unknown origin '" +
                       std::string(origin) + "'");
    }
    c.text = std::string(line.substr(t2 + 1));
    if (!c.text.empty() && c.text.back() == '\r') c.text.pop_back();
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

struct Group {
  std::size_t record;
  std::vector<std::size_t> candidates;
};

struct GroupOutcome {
  std::optional<AmrGraph> parsed_original;
  std::vector<std::optional<double>> scores;  // aligned with Group::candidates
  std::vector<SynTextRule> rules;
};

GroupOutcome filter_group(const CorpusRecord& record, const Group& group,
                          const std::vector<SynTextCandidate>& candidates, ParserAdapter& parser,
                          const SynTextOptions& options) {
  GroupOutcome out;
  const auto n = group.candidates.size();
  out.scores.assign(n, std::nullopt);
  out.rules.assign(n, SynTextRule::kBelowThreshold);
  out.parsed_original = parser.parse(record.sentence);
  const auto gold_text = normalize_text(record.sentence.text);

  std::vector<bool> eligible(n, false);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& c = candidates[group.candidates[k]];
    if (normalize_text(c.text) == gold_text) {
      out.rules[k] = SynTextRule::kDuplicateOfGold;
      continue;
    }
    if (!out.parsed_original) {
      out.rules[k] = SynTextRule::kParseFailure;
      continue;
    }
    Sentence s{record.sentence.id + "#" + std::to_string(group.candidates[k] + 1), c.text,
               split_tokens(c.text)};
    auto parsed = s.tokens.empty() ? std::nullopt : parser.parse(s);
    if (!parsed) {
      out.rules[k] = SynTextRule::kParseFailure;
      continue;
    }
    out.scores[k] = smatch(*parsed, *out.parsed_original, options.smatch).f1;
    eligible[k] = true;
  }

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < n; ++k) {
    if (eligible[k]) order.push_back(k);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (*out.scores[x] != *out.scores[y]) return *out.scores[x] > *out.scores[y];
    const bool gx = candidates[group.candidates[x]].origin == CandidateOrigin::kGreedy;
    const bool gy = candidates[group.candidates[y]].origin == CandidateOrigin::kGreedy;
    return gx && !gy;
  });

  std::set<std::string> kept_texts;
  for (auto k : order) {
    const auto text = normalize_text(candidates[group.candidates[k]].text);
    if (*out.scores[k] < options.threshold) {
      out.rules[k] = SynTextRule::kBelowThreshold;
    } else if (kept_texts.contains(text)) {
      out.rules[k] = SynTextRule::kDuplicateOfKept;
    } else if (kept_texts.size() >= options.quota) {
      out.rules[k] = SynTextRule::kOverQuota;
    } else {
      out.rules[k] = SynTextRule::kKept;
      kept_texts.insert(text);
    }
  }
  return out;
}

}  // namespace

SynTextResult filter_syntext(const Corpus& gold, const std::vector<SynTextCandidate>& candidates,
                             ParserAdapter& parser, const SynTextOptions& options) {
  std::unordered_map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < gold.size(); ++i) by_id.emplace(gold[i].sentence.id, i);

  // Groups in order of first appearance.
  std::vector<Group> groups;
  std::unordered_map<std::size_t, std::size_t> group_of_record;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    auto it = by_id.find(candidates[c].graph_id);
    if (it == by_id.end()) {
      throw InputError("candidate " + std::to_string(c + 1) + " refers to unknown graph '" +
                       candidates[c].graph_id + "'");
    }
    auto [g, inserted] = group_of_record.emplace(it->second, groups.size());
    if (inserted) groups.push_back({it->second, {}});
    groups[g->second].candidates.push_back(c);
  }

  std::vector<GroupOutcome> outcomes(groups.size());
  auto work = [&](std::size_t g) {
    outcomes[g] = filter_group(gold[groups[g].record], groups[g], candidates, parser, options);
  };
  if (parser.thread_safe()) {
    parallel_for(groups.size(), work);
  } else {
    for (std::size_t g = 0; g < groups.size(); ++g) work(g);
  }

  SynTextResult result;
  result.decisions.resize(candidates.size());
  std::vector<bool> kept(candidates.size(), false);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    auto& outcome = outcomes[g];
    result.originals.push_back({gold[group.record].sentence.id, std::move(outcome.parsed_original)});
    for (std::size_t k = 0; k < group.candidates.size(); ++k) {
      const auto c = group.candidates[k];
      auto& d = result.decisions[c];
      d.candidate = c;
      d.rule = outcome.rules[k];
      d.kept = d.rule == SynTextRule::kKept;
      d.score = outcome.scores[k];
      kept[c] = d.kept;
    }
  }
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (!kept[c]) continue;
    const auto& record = gold[by_id.at(candidates[c].graph_id)];
    CorpusRecord out;
    out.sentence.id = record.sentence.id + ".syn" + std::to_string(c + 1);
    out.sentence.text = candidates[c].text;
    out.sentence.tokens = split_tokens(candidates[c].text);
    out.graph = record.graph;
    out.metadata.emplace_back("source-id", record.sentence.id);
    out.metadata.emplace_back("origin", std::string(origin_name(candidates[c].origin)));
    result.kept.push_back(std::move(out));
  }
  return result;
}

}  // namespace amrsl
