#pragma once

// Oracle mining: sample action sequences from a proposer and keep one only
// when it rebuilds the gold graph with higher Smatch, or with equal Smatch
// in fewer actions.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "amrsl/adapters.hpp"
#include "amrsl/graph.hpp"
#include "amrsl/machine.hpp"
#include "amrsl/smatch.hpp"

namespace amrsl {

struct Provenance {
  enum class Kind { kRuleOracle, kMined };
  Kind kind = Kind::kRuleOracle;
  int round = 0;  // for kMined

  std::string to_string() const;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrainingExample {
  Sentence sentence;
  AmrGraph gold;
  ActionSequence actions;  // current best
  Provenance provenance;
};

inline constexpr std::size_t kDefaultStopThreshold = 20;
inline constexpr int kDefaultRounds = 2;
inline constexpr int kDefaultEpochs = 10;

struct MiningConfig {
  std::size_t samples_per_sentence = 1;
  std::size_t stop_threshold = kDefaultStopThreshold;
  int max_epochs = kDefaultEpochs;
  int max_rounds = kDefaultRounds;
  std::uint64_t seed = 0;
  // Held fixed for every comparison so scores are a function of the graphs.
  SmatchOptions smatch{};

  // Throws InputError. max_rounds may be 0 (nothing to do).
  void validate() const;
};

struct ConsiderDecision {
  bool replace = false;
  bool invalid = false;  // candidate failed machine replay
  SmatchResult candidate;
  SmatchResult current;
  std::size_t candidate_length = 0;
  std::size_t current_length = 0;
};

ConsiderDecision consider(const TrainingExample& ex, const ActionSequence& candidate,
                          const SmatchOptions& options);

struct EpochStats {
  int round = 0;
  int epoch = 0;
  std::size_t candidates = 0;
  std::size_t invalid = 0;
  std::size_t replacements = 0;
  std::size_t better_smatch = 0;   // replacements with strictly higher f1
  std::size_t shorter = 0;         // replacements at equal f1
  double mean_f1 = 0.0;            // after the epoch
  std::size_t total_length = 0;    // after the epoch
  SmatchResult oracle_smatch;      // after the epoch, summed counts
};

// Per-example seed for the proposer.
std::uint64_t example_seed(std::uint64_t seed, int round, int epoch, std::size_t index);

// Updates `corpus` in place, so progress made before a proposer failure is
// kept. Runs examples in parallel when the proposer is thread safe.
EpochStats mine_epoch(std::vector<TrainingExample>& corpus, ActionProposer& proposer,
                      const MiningConfig& cfg, int round = 1, int epoch = 1);

// Same result computed one example at a time.
EpochStats mine_epoch_serial(std::vector<TrainingExample>& corpus, ActionProposer& proposer,
                             const MiningConfig& cfg, int round = 1, int epoch = 1);

struct RoundReport {
  int round = 0;
  std::vector<EpochStats> epochs;
  std::size_t examples = 0;
  double better_smatch_pct = 0.0;  // examples whose f1 rose this round
  double shorter_pct = 0.0;        // examples at equal f1 with fewer actions
  SmatchResult oracle_smatch_before;
  SmatchResult oracle_smatch_after;
};

struct MiningReport {
  std::vector<RoundReport> rounds;
};

using ProposerFactory = std::function<std::unique_ptr<ActionProposer>(int round)>;

// Epochs run until one yields fewer than stop_threshold replacements or
// max_epochs is reached. The factory supplies a (retrained) proposer for
// each round.
MiningReport mine_rounds(std::vector<TrainingExample>& corpus, const ProposerFactory& factory,
                         const MiningConfig& cfg);

// f1 of run(actions) against gold for every example.
std::vector<SmatchResult> example_scores(const std::vector<TrainingExample>& corpus,
                                         const SmatchOptions& options);

class IdentityProposer final : public ActionProposer {
 public:
  std::vector<ActionSequence> propose(const ProposalRequest& request) override;
  bool thread_safe() const override { return true; }
};

// Random local edits of the current sequence (delete, insert, swap, flip or
// relabel an arc, move ROOT), retried until the machine accepts them.
class PerturbationProposer final : public ActionProposer {
 public:
  explicit PerturbationProposer(std::vector<std::string> roles = {}) : roles_(std::move(roles)) {}
  std::vector<ActionSequence> propose(const ProposalRequest& request) override;
  bool thread_safe() const override { return true; }

 private:
  std::vector<std::string> roles_;
};

// Arc labels appearing in a set of action sequences, sorted.
std::vector<std::string> collect_roles(const std::vector<TrainingExample>& corpus);

}  // namespace amrsl
