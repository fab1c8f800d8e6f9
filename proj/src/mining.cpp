#include "amrsl/mining.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/parallel.hpp"

namespace amrsl {
namespace {

struct ExampleOutcome {
  std::size_t candidates = 0;
  std::size_t invalid = 0;
  std::size_t replacements = 0;
  std::size_t better = 0;
  std::size_t shorter = 0;
  SmatchResult final_score;
};

SmatchResult score_actions(const TrainingExample& ex, const ActionSequence& actions,
                           const SmatchOptions& options) {
  return smatch(run(ex.sentence, actions), ex.gold, options);
}

SmatchResult current_score(const TrainingExample& ex, const SmatchOptions& options) {
  try {
    return score_actions(ex, ex.actions, options);
  } catch (const MachineError& e) {
    throw InputError("example '" + ex.sentence.id + "' has an invalid action sequence: " + e.what());
  }
}

// Candidate vs current best under the replacement rule.
bool improves(const SmatchResult& cand, std::size_t cand_len, const SmatchResult& cur,
              std::size_t cur_len) {
  const int cmp = compare_f1(cand, cur);
  return cmp > 0 || (cmp == 0 && cand_len < cur_len);
}

ExampleOutcome mine_example(TrainingExample& ex, std::size_t index, ActionProposer& proposer,
                            const MiningConfig& cfg, int round, int epoch) {
  ExampleOutcome out;
  SmatchResult current = current_score(ex, cfg.smatch);
  const LegalityCheck legal = [&ex](const ActionSequence& a) {
    return is_legal_sequence(ex.sentence, a);
  };
  const ProposalRequest request{ex.sentence.id, ex.sentence, ex.actions, cfg.samples_per_sentence,
                                example_seed(cfg.seed, round, epoch, index), legal};
  auto candidates = proposer.propose(request);
  for (auto& cand : candidates) {
    ++out.candidates;
    if (!legal(cand)) {
      ++out.invalid;
      continue;
    }
    auto score = score_actions(ex, cand, cfg.smatch);
    if (!improves(score, cand.size(), current, ex.actions.size())) continue;
    ++out.replacements;
    if (compare_f1(score, current) > 0) {
      ++out.better;
    } else {
      ++out.shorter;
    }
    ex.actions = std::move(cand);
    ex.provenance = {Provenance::Kind::kMined, round};
    current = std::move(score);
  }
  out.final_score = std::move(current);
  return out;
}

SmatchResult sum_scores(const std::vector<SmatchResult>& scores) {
  std::size_t m = 0, ta = 0, tb = 0;
  for (const auto& s : scores) {
    m += s.matched;
    ta += s.triples_a;
    tb += s.triples_b;
  }
  return make_result(m, ta, tb);
}

double mean_f1(const std::vector<SmatchResult>& scores) {
  if (scores.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : scores) total += s.f1;
  return total / static_cast<double>(scores.size());
}

EpochStats summarize(const std::vector<TrainingExample>& corpus,
                     const std::vector<ExampleOutcome>& outcomes, int round, int epoch) {
  EpochStats st;
  st.round = round;
  st.epoch = epoch;
  std::vector<SmatchResult> scores;
  scores.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    st.candidates += o.candidates;
    st.invalid += o.invalid;
    st.replacements += o.replacements;
    st.better_smatch += o.better;
    st.shorter += o.shorter;
    scores.push_back(o.final_score);
  }
  for (const auto& ex : corpus) st.total_length += ex.actions.size();
  st.mean_f1 = mean_f1(scores);
  st.oracle_smatch = sum_scores(scores);
  return st;
}

}  // namespace

std::string Provenance::to_string() const {
  return kind == Kind::kRuleOracle ? "rule_oracle" : "mined(" + std::to_string(round) + ")";
}

void MiningConfig::validate() const {
  if (samples_per_sentence < 1) throw InputError("samples_per_sentence must be at least 1");
  if (stop_threshold < 1) throw InputError("stop_threshold must be at least 1");
  if (max_epochs < 1) throw InputError("max_epochs must be at least 1");
  if (max_rounds < 0) throw InputError("max_rounds must not be negative");
}

ConsiderDecision consider(const TrainingExample& ex, const ActionSequence& candidate,
                          const SmatchOptions& options) {
  ConsiderDecision d;
  d.current = current_score(ex, options);
  d.current_length = ex.actions.size();
  d.candidate_length = candidate.size();
  try {
    d.candidate = score_actions(ex, candidate, options);
  } catch (const MachineError&) {
    d.invalid = true;
    return d;
  }
  d.replace = improves(d.candidate, d.candidate_length, d.current, d.current_length);
  return d;
}

std::uint64_t example_seed(std::uint64_t seed, int round, int epoch, std::size_t index) {
  const auto pass = mix_seed(static_cast<std::uint64_t>(round), static_cast<std::uint64_t>(epoch));
  return mix_seed(seed ^ pass, index);
}

EpochStats mine_epoch(std::vector<TrainingExample>& corpus, ActionProposer& proposer,
                      const MiningConfig& cfg, int round, int epoch) {
  if (!proposer.thread_safe()) return mine_epoch_serial(corpus, proposer, cfg, round, epoch);
  std::vector<ExampleOutcome> outcomes(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    outcomes[i] = mine_example(corpus[i], i, proposer, cfg, round, epoch);
  });
  return summarize(corpus, outcomes, round, epoch);
}

EpochStats mine_epoch_serial(std::vector<TrainingExample>& corpus, ActionProposer& proposer,
                             const MiningConfig& cfg, int round, int epoch) {
  std::vector<ExampleOutcome> outcomes;
  outcomes.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    outcomes.push_back(mine_example(corpus[i], i, proposer, cfg, round, epoch));
  }
  return summarize(corpus, outcomes, round, epoch);
}

std::vector<SmatchResult> example_scores(const std::vector<TrainingExample>& corpus,
                                         const SmatchOptions& options) {
  std::vector<SmatchResult> scores(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) { scores[i] = current_score(corpus[i], options); });
  return scores;
}

MiningReport mine_rounds(std::vector<TrainingExample>& corpus, const ProposerFactory& factory,
                         const MiningConfig& cfg) {
  cfg.validate();
  MiningReport report;
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    auto proposer = factory(round);
    RoundReport rr;
    rr.round = round;
    rr.examples = corpus.size();
    const auto before = example_scores(corpus, cfg.smatch);
    std::vector<std::size_t> lengths_before;
    lengths_before.reserve(corpus.size());
    for (const auto& ex : corpus) lengths_before.push_back(ex.actions.size());
    rr.oracle_smatch_before = sum_scores(before);

    for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
      rr.epochs.push_back(mine_epoch(corpus, *proposer, cfg, round, epoch));
      if (rr.epochs.back().replacements < cfg.stop_threshold) break;
    }

    const auto after = example_scores(corpus, cfg.smatch);
    rr.oracle_smatch_after = sum_scores(after);
    std::size_t better = 0, shorter = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const int cmp = compare_f1(after[i], before[i]);
      if (cmp > 0) {
        ++better;
      } else if (cmp == 0 && corpus[i].actions.size() < lengths_before[i]) {
        ++shorter;
      }
    }
    if (!corpus.empty()) {
      rr.better_smatch_pct = 100.0 * static_cast<double>(better) / static_cast<double>(corpus.size());
      rr.shorter_pct = 100.0 * static_cast<double>(shorter) / static_cast<double>(corpus.size());
    }
    report.rounds.push_back(std::move(rr));
  }
  return report;
}

std::vector<ActionSequence> IdentityProposer::propose(const ProposalRequest& request) {
  return std::vector<ActionSequence>(request.samples, request.current);
}

std::vector<ActionSequence> PerturbationProposer::propose(const ProposalRequest& req) {
  std::mt19937_64 rng(req.seed);
  std::vector<std::string> roles = roles_;
  if (roles.empty()) {
    std::set<std::string> seen;
    for (const auto& a : req.current) {
      if (a.kind == ActionKind::kLeftArc || a.kind == ActionKind::kRightArc) seen.insert(a.label);
    }
    roles.assign(seen.begin(), seen.end());
    if (roles.empty()) roles.push_back("ARG0");
  }
  auto random_role = [&] { return roles[draw(rng, roles.size())]; };

  std::vector<ActionSequence> out;
  for (std::size_t s = 0; s < req.samples; ++s) {
    ActionSequence chosen = req.current;
    for (int attempt = 0; attempt < 8; ++attempt) {
      ActionSequence cand = req.current;
      // Everything before the final CLOSE is editable.
      const std::size_t body = cand.empty() ? 0 : cand.size() - 1;
      switch (draw(rng, 6)) {
        case 0:
          if (body == 0) continue;
          cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(draw(rng, body)));
          break;
        case 1: {
          static constexpr ActionKind kInsertable[] = {
              ActionKind::kShift,   ActionKind::kReduce,    ActionKind::kMerge,
              ActionKind::kLeftArc, ActionKind::kRightArc, ActionKind::kRoot};
          Action a{kInsertable[draw(rng, std::size(kInsertable))], {}};
          if (a.kind == ActionKind::kLeftArc || a.kind == ActionKind::kRightArc) a.label = random_role();
          cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(draw(rng, body + 1)), std::move(a));
          break;
        }
        case 2:
        case 3: {
          std::vector<std::size_t> arcs;
          for (std::size_t i = 0; i < body; ++i) {
            if (cand[i].kind == ActionKind::kLeftArc || cand[i].kind == ActionKind::kRightArc) {
              arcs.push_back(i);
            }
          }
          if (arcs.empty()) continue;
          auto& a = cand[arcs[draw(rng, arcs.size())]];
          if (draw(rng, 2) == 0) {
            a.kind = a.kind == ActionKind::kLeftArc ? ActionKind::kRightArc : ActionKind::kLeftArc;
          } else {
            a.label = random_role();
          }
          break;
        }
        case 4: {
          if (body < 2) continue;
          const auto i = draw(rng, body - 1);
          std::swap(cand[i], cand[i + 1]);
          break;
        }
        default: {
          auto it = std::find(cand.begin(), cand.end(), Action::root());
          if (it != cand.end()) cand.erase(it);
          const std::size_t limit = cand.empty() ? 0 : cand.size() - 1;
          cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(draw(rng, limit + 1)), Action::root());
          break;
        }
      }
      if (cand != req.current && req.is_legal(cand)) {
        chosen = std::move(cand);
        break;
      }
    }
    out.push_back(std::move(chosen));
  }
  return out;
}

std::vector<std::string> collect_roles(const std::vector<TrainingExample>& corpus) {
  std::set<std::string> roles;
  for (const auto& ex : corpus) {
    for (const auto& a : ex.actions) {
      if (a.kind == ActionKind::kLeftArc || a.kind == ActionKind::kRightArc) roles.insert(a.label);
    }
  }
  return {roles.begin(), roles.end()};
}

}  // namespace amrsl
