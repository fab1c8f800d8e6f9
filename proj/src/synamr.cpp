#include "amrsl/synamr.hpp"

#include <random>

#include "amrsl/bleu.hpp"
#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/parallel.hpp"

namespace amrsl {

std::vector<std::string> Vocabulary::oov(const std::vector<std::string>& tokens) const {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    if (!contains(t)) out.push_back(t);
  }
  return out;
}

Vocabulary build_vocabulary(const Corpus& reference) {
  if (reference.empty()) throw InputError("vocabulary needs a non-empty reference corpus");
  std::set<std::string> tokens;
  for (const auto& rec : reference) tokens.insert(rec.sentence.tokens.begin(), rec.sentence.tokens.end());
  return Vocabulary(std::move(tokens));
}

std::vector<SynAmrRecord> synamr_records(const Corpus& silver) {
  std::vector<SynAmrRecord> out;
  out.reserve(silver.size());
  for (const auto& rec : silver) {
    SynAmrRecord r{rec.sentence, rec.graph, std::nullopt};
    if (auto text = rec.meta(kRegeneratedKey)) {
      r.regenerated = Sentence{rec.sentence.id + ".regen", *text, split_tokens(*text)};
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string_view rule_name(SynAmrRule rule) {
  switch (rule) {
    case SynAmrRule::kKept: return "kept";
    case SynAmrRule::kDisconnected: return "disconnected";
    case SynAmrRule::kBelowThreshold: return "below_threshold";
  }
  return "unknown";
}

SynAmrResult filter_synamr(const std::vector<SynAmrRecord>& records, const Vocabulary& vocab,
                           const SynAmrOptions& options) {
  SynAmrResult result;
  result.decisions.resize(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    const auto& r = records[i];
    auto& d = result.decisions[i];
    d.record = i;
    d.rule = SynAmrRule::kKept;
    if (!options.no_filter) {
      d.oov = vocab.oov(r.sentence.tokens);
      if (!is_connected(r.silver)) {
        d.rule = SynAmrRule::kDisconnected;
      } else if (d.oov.empty()) {
        if (!r.regenerated) {
          d.missing_regenerated = true;
        } else {
          d.bleu = r.regenerated->tokens.empty() || r.sentence.tokens.empty()
                       ? 0.0
                       : sentence_bleu(r.regenerated->tokens, r.sentence.tokens);
          if (*d.bleu < options.bleu_threshold) d.rule = SynAmrRule::kBelowThreshold;
        }
      }
    }
    d.kept = d.rule == SynAmrRule::kKept;
  });
  for (const auto& d : result.decisions) {
    if (d.kept) result.kept.push_back(d.record);
  }
  return result;
}

void regenerate(std::vector<SynAmrRecord>& records, const Vocabulary& vocab,
                GeneratorAdapter& generator) {
  for (auto& r : records) {
    if (r.regenerated || !vocab.oov(r.sentence.tokens).empty() || !is_connected(r.silver)) continue;
    auto text = generator.generate(r.sentence.id, r.silver);
    r.regenerated = Sentence{r.sentence.id + ".regen", text, split_tokens(text)};
  }
}

TrainingCorpora assemble_training(const Corpus& gold, const Corpus& silver, AssemblyMode mode,
                                  std::uint64_t seed) {
  if (silver.empty()) throw InputError("no silver records to assemble");
  if (gold.empty()) throw InputError("no gold records to assemble");
  TrainingCorpora out;
  out.finetune = gold;
  if (mode == AssemblyMode::kSilverOnly) {
    out.pretrain = silver;
    return out;
  }
  out.pretrain = gold;
  out.pretrain.insert(out.pretrain.end(), silver.begin(), silver.end());
  try {
    check_unique_ids(out.pretrain);
  } catch (const InputError& e) {
    throw InputError(std::string("gold and silver ids collide: ") + e.what());
  }
  std::mt19937_64 rng(seed);
  shuffle_in_place(out.pretrain, rng);
  return out;
}

}  // namespace amrsl
