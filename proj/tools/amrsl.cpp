// amrsl: command-line front end for the self-learning pipelines.
//
// Exit status: 0 success, 1 bad input or usage, 2 external adapter failure.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amrsl/adapters.hpp"
#include "amrsl/bleu.hpp"
#include "amrsl/corpus.hpp"
#include "amrsl/errors.hpp"
#include "amrsl/fine_grained.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/machine.hpp"
#include "amrsl/mining.hpp"
#include "amrsl/oracle.hpp"
#include "amrsl/parallel.hpp"
#include "amrsl/penman.hpp"
#include "amrsl/smatch.hpp"
#include "amrsl/synamr.hpp"
#include "amrsl/syntxt.hpp"

namespace {

using namespace amrsl;
using json = nlohmann::ordered_json;

struct Globals {
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string format = "text";
  bool jsonl() const { return format == "jsonl"; }
};

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string env_default(const std::string& value, const char* var) {
  if (!value.empty()) return value;
  const char* env = std::getenv(var);
  return env ? env : "";
}

// Writes to a file, or stdout when the path is empty or "-".
void emit_to(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    write_file(path, contents);
  }
}

json counts_json(const SmatchResult& r) {
  return {{"matched", r.matched}, {"test", r.triples_a},   {"gold", r.triples_b},
          {"precision", r.precision}, {"recall", r.recall}, {"f1", r.f1}};
}

json category_json(const CategoryScore& c) {
  return {{"matched", c.matched}, {"test", c.test},     {"gold", c.gold},
          {"precision", c.precision}, {"recall", c.recall}, {"f1", c.f1}};
}

json detail_json(const FineGrainedReport& report) {
  json j = json::object();
  for (const auto& [name, score] : categories(report)) j[std::string(name)] = category_json(*score);
  return j;
}

std::vector<ActionSequence> read_actions(const std::string& path, std::size_t expected) {
  std::istringstream in(read_file(path));
  std::vector<ActionSequence> out;
  std::string line;
  while (std::getline(in, line)) {
    if (normalize_text(line).empty()) continue;
    try {
      out.push_back(parse_actions(line));
    } catch (const InputError& e) {
      throw InputError(path + ": line " + std::to_string(out.size() + 1) + ": " + e.what());
    }
  }
  if (out.size() != expected) {
    throw InputError(path + ": " + std::to_string(out.size()) + " action lines for " +
                     std::to_string(expected) + " records");
  }
  return out;
}

std::string format_action_file(const std::vector<ActionSequence>& all) {
  std::string out;
  for (const auto& a : all) out += format_actions(a) + "\n";
  return out;
}

std::vector<AmrGraph> graphs_of(const Corpus& c) {
  std::vector<AmrGraph> out;
  out.reserve(c.size());
  for (const auto& r : c) out.push_back(r.graph);
  return out;
}

std::string coverage_summary(const Globals& g, const std::string& type, std::size_t records,
                             std::size_t failures, const SmatchResult& total) {
  if (g.jsonl()) {
    json j = {{"type", type}, {"records", records}, {"failures", failures}};
    j.update(counts_json(total));
    return j.dump() + "\n";
  }
  return type + ": records " + std::to_string(records) + "  failures " +
         std::to_string(failures) + "  smatch " + num(total.f1) + " (" +
         std::to_string(total.matched) + "/" + std::to_string(total.triples_a) + "/" +
         std::to_string(total.triples_b) + ")\n";
}

std::string record_line(const Globals& g, const std::string& id, const SmatchResult& r) {
  if (g.jsonl()) {
    json j = {{"type", "record"}, {"id", id}};
    j.update(counts_json(r));
    return j.dump() + "\n";
  }
  return id + "\t" + num(r.precision) + "\t" + num(r.recall) + "\t" + num(r.f1) + "\n";
}

// ---- oracle ---------------------------------------------------------------

struct OracleArgs {
  std::string corpus;
  std::string output;
  bool lenient = false;
  int restarts = kDefaultRestarts;
};

void cmd_oracle(const Globals& g, const OracleArgs& a) {
  const auto corpus = read_corpus(a.corpus, a.lenient ? ParseMode::kLenient : ParseMode::kStrict);
  const auto report = oracle_coverage(corpus, {a.restarts, g.seed, false});
  std::vector<ActionSequence> actions;
  for (const auto& r : report.records) actions.push_back(r.actions);
  write_file(a.output, format_action_file(actions));
  std::string out;
  for (const auto i : report.failures) {
    out += record_line(g, report.records[i].id, report.records[i].result);
  }
  out += coverage_summary(g, "coverage", report.size(), report.failures.size(), report.total);
  std::cout << out;
}

// ---- replay ---------------------------------------------------------------

struct ReplayArgs {
  std::string corpus;
  std::string actions;
  std::string output;
  bool strict_root = false;
  int restarts = kDefaultRestarts;
};

void cmd_replay(const Globals& g, const ReplayArgs& a) {
  const auto corpus = read_corpus(a.corpus, ParseMode::kLenient);
  const auto actions = read_actions(a.actions, corpus.size());
  Corpus out(corpus.size());
  const auto policy = a.strict_root ? RootPolicy::kStrict : RootPolicy::kLenient;
  parallel_for(corpus.size(), [&](std::size_t i) {
    try {
      auto result = run_with_alignment(corpus[i].sentence, actions[i], policy);
      out[i].sentence = corpus[i].sentence;
      out[i].graph = std::move(result.graph);
      out[i].alignment = std::move(result.alignment);
      out[i].metadata = corpus[i].metadata;
    } catch (const Error& e) {
      throw InputError("record " + corpus[i].sentence.id + ": " + e.what());
    }
  });
  write_corpus(out, a.output);
  const auto scores = corpus_smatch(graphs_of(out), graphs_of(corpus), {a.restarts, g.seed, false});
  std::size_t failures = 0;
  std::string report;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (scores.records[i].f1 < 1.0) {
      ++failures;
      report += record_line(g, corpus[i].sentence.id, scores.records[i]);
    }
  }
  report += coverage_summary(g, "replay", out.size(), failures, scores.total);
  std::cout << report;
}

// ---- smatch ---------------------------------------------------------------

struct SmatchArgs {
  std::string test;
  std::string gold;
  bool detail = false;
  bool exact = false;
  int restarts = kDefaultRestarts;
};

void cmd_smatch(const Globals& g, const SmatchArgs& a) {
  const auto test = read_corpus(a.test, ParseMode::kLenient);
  const auto gold = read_corpus(a.gold, ParseMode::kLenient);
  if (test.size() != gold.size()) {
    throw InputError("test has " + std::to_string(test.size()) + " records, gold has " +
                     std::to_string(gold.size()));
  }
  const SmatchOptions options{a.restarts, g.seed, a.exact};
  std::vector<FineGrainedReport> details(test.size());
  std::vector<SmatchResult> records(test.size());
  parallel_for(test.size(), [&](std::size_t i) {
    if (a.detail) {
      details[i] = fine_grained(test[i].graph, gold[i].graph, options);
    } else {
      records[i] = smatch(test[i].graph, gold[i].graph, options);
    }
  });
  FineGrainedReport total_detail;
  std::size_t matched = 0, ta = 0, tb = 0;
  std::string out;
  for (std::size_t i = 0; i < test.size(); ++i) {
    if (a.detail) {
      const auto& s = details[i].smatch;
      records[i] = make_result(s.matched, s.test, s.gold);
      total_detail = accumulate(total_detail, details[i]);
    }
    matched += records[i].matched;
    ta += records[i].triples_a;
    tb += records[i].triples_b;
    if (g.jsonl()) {
      json j = {{"type", "record"}, {"id", gold[i].sentence.id}};
      j.update(counts_json(records[i]));
      if (a.detail) j["detail"] = detail_json(details[i]);
      out += j.dump() + "\n";
    } else {
      out += record_line(g, gold[i].sentence.id, records[i]);
    }
  }
  const auto total = make_result(matched, ta, tb);
  if (g.jsonl()) {
    json j = {{"type", "total"}, {"records", test.size()}};
    j.update(counts_json(total));
    if (a.detail) j["detail"] = detail_json(total_detail);
    out += j.dump() + "\n";
  } else {
    out += "total\t" + num(total.precision) + "\t" + num(total.recall) + "\t" + num(total.f1) + "\n";
    if (a.detail) {
      for (const auto& [name, score] : categories(total_detail)) {
        out += std::string(name) + "\t" + num(score->precision) + "\t" + num(score->recall) +
               "\t" + num(score->f1) + "\n";
      }
    }
  }
  std::cout << out;
}

// ---- mine -----------------------------------------------------------------

struct MineArgs {
  std::string corpus;
  std::string actions;
  std::string proposer;
  std::string output;
  std::string report;
  std::string provenance;
  int rounds = kDefaultRounds;
  int epochs = kDefaultEpochs;
  std::size_t samples = 1;
  std::size_t stop_threshold = kDefaultStopThreshold;
  int restarts = kDefaultRestarts;
};

std::string epoch_line(const Globals& g, const EpochStats& e) {
  if (g.jsonl()) {
    return json{{"type", "epoch"},
                {"round", e.round},
                {"epoch", e.epoch},
                {"candidates", e.candidates},
                {"invalid", e.invalid},
                {"replacements", e.replacements},
                {"better_smatch", e.better_smatch},
                {"shorter", e.shorter},
                {"mean_f1", e.mean_f1},
                {"total_length", e.total_length},
                {"oracle_f1", e.oracle_smatch.f1}}
               .dump() +
           "\n";
  }
  return "round " + std::to_string(e.round) + " epoch " + std::to_string(e.epoch) +
         ": candidates " + std::to_string(e.candidates) + "  invalid " +
         std::to_string(e.invalid) + "  replaced " + std::to_string(e.replacements) +
         " (better " + std::to_string(e.better_smatch) + ", shorter " +
         std::to_string(e.shorter) + ")  mean f1 " + num(e.mean_f1) + "  length " +
         std::to_string(e.total_length) + "\n";
}

std::string round_line(const Globals& g, const RoundReport& r) {
  if (g.jsonl()) {
    return json{{"type", "round"},
                {"round", r.round},
                {"epochs", r.epochs.size()},
                {"examples", r.examples},
                {"better_smatch_pct", r.better_smatch_pct},
                {"shorter_pct", r.shorter_pct},
                {"oracle_f1_before", r.oracle_smatch_before.f1},
                {"oracle_f1_after", r.oracle_smatch_after.f1}}
               .dump() +
           "\n";
  }
  return "round " + std::to_string(r.round) + ": epochs " + std::to_string(r.epochs.size()) +
         "  better smatch " + num(r.better_smatch_pct, 2) + "%  shorter " +
         num(r.shorter_pct, 2) + "%  oracle smatch " + num(r.oracle_smatch_before.f1) + " -> " +
         num(r.oracle_smatch_after.f1) + "\n";
}

ProposerFactory make_proposer_factory(const std::string& which,
                                      const std::vector<TrainingExample>& corpus) {
  if (which == "builtin") {
    auto roles = collect_roles(corpus);
    return [roles](int) { return std::make_unique<PerturbationProposer>(roles); };
  }
  if (which == "identity") {
    return [](int) { return std::make_unique<IdentityProposer>(); };
  }
  // An external proposer is restarted every round; the round number is
  // passed in the environment so it can load the matching model.
  return [which](int round) {
    ::setenv("AMRSL_ROUND", std::to_string(round).c_str(), 1);
    return std::make_unique<ExternalProposer>(which);
  };
}

void cmd_mine(const Globals& g, MineArgs a) {
  a.proposer = env_default(a.proposer, "AMRSL_PROPOSER_CMD");
  if (a.proposer.empty()) a.proposer = "builtin";
  const auto corpus = read_corpus(a.corpus, ParseMode::kStrict);
  std::vector<ActionSequence> initial;
  if (!a.actions.empty()) {
    initial = read_actions(a.actions, corpus.size());
  } else {
    for (const auto& rec : corpus) {
      const Alignment al = force_align(rec.graph, rec.sentence, rec.alignment.value_or(Alignment{}));
      initial.push_back(oracle_actions(rec.graph, rec.sentence, al));
    }
  }
  std::vector<TrainingExample> examples;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    examples.push_back({corpus[i].sentence, corpus[i].graph, initial[i], {}});
  }
  MiningConfig cfg;
  cfg.samples_per_sentence = a.samples;
  cfg.stop_threshold = a.stop_threshold;
  cfg.max_epochs = a.epochs;
  cfg.max_rounds = a.rounds;
  cfg.seed = g.seed;
  cfg.smatch = {a.restarts, g.seed, false};
  cfg.validate();

  auto save = [&] {
    std::vector<ActionSequence> current;
    std::string prov;
    for (const auto& ex : examples) {
      current.push_back(ex.actions);
      prov += ex.sentence.id + "\t" + ex.provenance.to_string() + "\n";
    }
    write_file(a.output, format_action_file(current));
    if (!a.provenance.empty()) write_file(a.provenance, prov);
  };

  MiningReport report;
  try {
    report = mine_rounds(examples, make_proposer_factory(a.proposer, examples), cfg);
  } catch (const AdapterError&) {
    save();  // checkpoint: progress up to the failure
    throw;
  }
  save();
  std::string out;
  for (const auto& r : report.rounds) {
    for (const auto& e : r.epochs) out += epoch_line(g, e);
    out += round_line(g, r);
  }
  emit_to(a.report, out);
}

// ---- filter-syntext -------------------------------------------------------

struct SynTextArgs {
  std::string gold;
  std::string candidates;
  std::string parser;
  std::string output;
  std::string decisions;
  double threshold = kDefaultSmatchThreshold;
  std::size_t quota = kDefaultQuota;
  int restarts = kDefaultRestarts;
};

std::unique_ptr<ParserAdapter> make_parser(const std::string& which) {
  if (which.starts_with("lookup:")) {
    return std::make_unique<LookupParser>(read_corpus(which.substr(7), ParseMode::kLenient));
  }
  return std::make_unique<ExternalParser>(which);
}

void cmd_filter_syntext(const Globals& g, SynTextArgs a) {
  a.parser = env_default(a.parser, "AMRSL_PARSER_CMD");
  if (a.parser.empty()) throw InputError("no parser: pass --parser or set AMRSL_PARSER_CMD");
  const auto gold = read_corpus(a.gold, ParseMode::kStrict);
  const auto candidates = parse_candidates(read_file(a.candidates));
  auto parser = make_parser(a.parser);
  SynTextOptions options;
  options.threshold = a.threshold;
  options.quota = a.quota;
  options.smatch = {a.restarts, g.seed, false};
  const auto result = filter_syntext(gold, candidates, *parser, options);
  write_corpus(result.kept, a.output);

  std::string out;
  for (const auto& o : result.originals) {
    if (!g.jsonl()) continue;
    json j = {{"type", "original"}, {"graph_id", o.graph_id}};
    j["parsed"] = o.parsed_original ? json(serialize_fragments(*o.parsed_original, Layout::kSingleLine))
                                    : json(nullptr);
    out += j.dump() + "\n";
  }
  for (const auto& d : result.decisions) {
    const auto& c = candidates[d.candidate];
    if (g.jsonl()) {
      json j = {{"type", "decision"},
                {"candidate", d.candidate},
                {"graph_id", c.graph_id},
                {"origin", origin_name(c.origin)},
                {"text", c.text},
                {"kept", d.kept},
                {"rule", rule_name(d.rule)}};
      j["score"] = d.score ? json(*d.score) : json(nullptr);
      j["compared_against"] = "parsed_original";
      out += j.dump() + "\n";
    } else {
      out += std::to_string(d.candidate) + "\t" + c.graph_id + "\t" +
             std::string(rule_name(d.rule)) + "\t" + (d.score ? num(*d.score) : "-") + "\n";
    }
  }
  if (g.jsonl()) {
    out += json{{"type", "summary"},
                {"candidates", result.decisions.size()},
                {"kept", result.kept.size()},
                {"keep_rate", result.keep_rate()}}
               .dump() +
           "\n";
  } else {
    out += "kept " + std::to_string(result.kept.size()) + " of " +
           std::to_string(result.decisions.size()) + "\n";
  }
  emit_to(a.decisions, out);
}

// ---- filter-synamr --------------------------------------------------------

struct SynAmrArgs {
  std::string silver;
  std::string vocab_from;
  std::string generator;
  std::string output;
  std::string decisions;
  double bleu_threshold = kDefaultBleuThreshold;
  bool no_filter = false;
};

void cmd_filter_synamr(const Globals& g, SynAmrArgs a) {
  a.generator = env_default(a.generator, "AMRSL_GENERATOR_CMD");
  auto silver = read_corpus(a.silver, ParseMode::kLenient);
  Vocabulary vocab;
  if (!a.vocab_from.empty()) {
    vocab = build_vocabulary(read_corpus(a.vocab_from, ParseMode::kLenient));
  } else if (!a.no_filter) {
    throw InputError("--vocab-from is required unless --no-filter is given");
  }
  auto records = synamr_records(silver);
  if (!a.generator.empty() && !a.no_filter) {
    ExternalGenerator generator(a.generator);
    regenerate(records, vocab, generator);
  }
  const auto result = filter_synamr(records, vocab, {a.bleu_threshold, a.no_filter});

  Corpus kept;
  for (auto i : result.kept) {
    auto rec = silver[i];
    if (records[i].regenerated && !rec.meta(kRegeneratedKey)) {
      rec.metadata.emplace_back(std::string(kRegeneratedKey), records[i].regenerated->text);
    }
    kept.push_back(std::move(rec));
  }
  write_corpus(kept, a.output);

  std::string out;
  for (const auto& d : result.decisions) {
    const auto& id = silver[d.record].sentence.id;
    if (g.jsonl()) {
      json j = {{"type", "decision"}, {"record", d.record}, {"id", id},
                {"kept", d.kept},     {"rule", rule_name(d.rule)}};
      j["bleu"] = d.bleu ? json(*d.bleu) : json(nullptr);
      j["oov"] = d.oov;
      j["missing_regenerated"] = d.missing_regenerated;
      out += j.dump() + "\n";
    } else {
      out += id + "\t" + std::string(rule_name(d.rule)) + "\t" + (d.bleu ? num(*d.bleu, 2) : "-") +
             (d.oov.empty() ? "" : "\toov") + "\n";
    }
  }
  if (g.jsonl()) {
    out += json{{"type", "summary"}, {"records", silver.size()}, {"kept", kept.size()}}.dump() + "\n";
  } else {
    out += "kept " + std::to_string(kept.size()) + " of " + std::to_string(silver.size()) + "\n";
  }
  emit_to(a.decisions, out);
}

// ---- assemble -------------------------------------------------------------

struct AssembleArgs {
  std::string gold;
  std::string silver;
  std::string mode = "silver_only";
  std::string pretrain;
  std::string finetune;
};

void cmd_assemble(const Globals& g, const AssembleArgs& a) {
  const auto gold = read_corpus(a.gold, ParseMode::kStrict);
  const auto silver = read_corpus(a.silver, ParseMode::kLenient);
  const auto mode = a.mode == "mixed" ? AssemblyMode::kMixed : AssemblyMode::kSilverOnly;
  const auto out = assemble_training(gold, silver, mode, g.seed);
  write_corpus(out.pretrain, a.pretrain);
  write_corpus(out.finetune, a.finetune);
  if (g.jsonl()) {
    std::cout << json{{"type", "assemble"}, {"mode", a.mode},
                      {"pretrain", out.pretrain.size()}, {"finetune", out.finetune.size()}}
                     .dump()
              << "\n";
  } else {
    std::cout << "pretrain " << out.pretrain.size() << "  finetune " << out.finetune.size()
              << "\n";
  }
}

// ---- bleu -----------------------------------------------------------------

struct BleuArgs {
  std::string candidates;
  std::string references;
  int max_n = kBleuMaxOrder;
};

std::vector<std::string> lines_of(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

void cmd_bleu(const Globals& g, const BleuArgs& a) {
  const auto cand = lines_of(a.candidates);
  const auto ref = lines_of(a.references);
  if (cand.size() != ref.size()) {
    throw InputError("candidate file has " + std::to_string(cand.size()) +
                     " lines, reference file has " + std::to_string(ref.size()));
  }
  if (a.max_n < 1) throw InputError("--max-n must be at least 1");
  std::string out;
  double sum = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    const auto r = split_tokens(ref[i]);
    if (r.empty()) throw InputError(a.references + ": line " + std::to_string(i + 1) + " is empty");
    const double score = sentence_bleu(split_tokens(cand[i]), r, a.max_n);
    sum += score;
    if (g.jsonl()) {
      out += json{{"type", "line"}, {"line", i + 1}, {"bleu", score}}.dump() + "\n";
    } else {
      out += std::to_string(i + 1) + "\t" + num(score, 2) + "\n";
    }
  }
  const double mean = cand.empty() ? 0.0 : sum / static_cast<double>(cand.size());
  if (g.jsonl()) {
    out += json{{"type", "summary"}, {"lines", cand.size()}, {"mean", mean}}.dump() + "\n";
  } else {
    out += "mean\t" + num(mean, 2) + "\n";
  }
  std::cout << out;
}

// ---- gen-fixtures ---------------------------------------------------------

struct FixtureArgs {
  std::size_t count = 100;
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 10;
  double filler_rate = 0.3;
  std::string output;
  std::string planted;
};

void cmd_gen_fixtures(const Globals& g, const FixtureArgs& a) {
  if (a.min_nodes < 1 || a.max_nodes < a.min_nodes) {
    throw InputError("need 1 <= --min-nodes <= --max-nodes");
  }
  TreeFixtureOptions options;
  options.min_nodes = a.min_nodes;
  options.max_nodes = a.max_nodes;
  options.filler_rate = a.filler_rate;
  const auto corpus = random_tree_corpus(a.count, g.seed, options);
  write_corpus(corpus, a.output);
  if (!a.planted.empty()) {
    std::mt19937_64 rng(mix_seed(g.seed, 0x504c414e54ULL));
    std::vector<ActionSequence> planted;
    for (const auto& rec : corpus) {
      const auto good = oracle_actions(rec.graph, rec.sentence, *rec.alignment);
      planted.push_back(plant_suboptimal(rec.sentence, good, rng));
    }
    write_file(a.planted, format_action_file(planted));
  }
  std::cout << (g.jsonl() ? json{{"type", "fixtures"}, {"records", corpus.size()}}.dump()
                          : "records " + std::to_string(corpus.size()))
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AMR self-learning toolchain"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--jobs", g.jobs, "Worker threads (0 = default)")->check(CLI::NonNegativeNumber);
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"text", "jsonl"}));

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "Derive oracle actions and report coverage");
  oracle->add_option("corpus", oracle_args.corpus)->required()->check(CLI::ExistingFile);
  oracle->add_option("-o,--output", oracle_args.output, "Actions file")->required();
  oracle->add_flag("--lenient", oracle_args.lenient, "Lenient PENMAN reading");
  oracle->add_option("--restarts", oracle_args.restarts)->check(CLI::PositiveNumber);

  ReplayArgs replay_args;
  auto* replay = app.add_subcommand("replay", "Run action sequences through the machine");
  replay->add_option("corpus", replay_args.corpus)->required()->check(CLI::ExistingFile);
  replay->add_option("actions", replay_args.actions)->required()->check(CLI::ExistingFile);
  replay->add_option("-o,--output", replay_args.output, "Output corpus")->required();
  replay->add_flag("--strict-root", replay_args.strict_root, "Fail when ROOT is missing");
  replay->add_option("--restarts", replay_args.restarts)->check(CLI::PositiveNumber);

  SmatchArgs smatch_args;
  auto* smatch_cmd = app.add_subcommand("smatch", "Score a test corpus against gold");
  smatch_cmd->add_option("test", smatch_args.test)->required()->check(CLI::ExistingFile);
  smatch_cmd->add_option("gold", smatch_args.gold)->required()->check(CLI::ExistingFile);
  smatch_cmd->add_flag("--detail", smatch_args.detail, "Per-category scores");
  smatch_cmd->add_flag("--exact", smatch_args.exact, "Exhaustive mapping search");
  smatch_cmd->add_option("--restarts", smatch_args.restarts)->check(CLI::PositiveNumber);

  MineArgs mine_args;
  auto* mine = app.add_subcommand("mine", "Improve oracle actions with a proposer");
  mine->add_option("corpus", mine_args.corpus)->required()->check(CLI::ExistingFile);
  mine->add_option("actions", mine_args.actions, "Initial actions (default: rule oracle)")
      ->check(CLI::ExistingFile);
  mine->add_option("--proposer", mine_args.proposer,
                   "builtin, identity or a command (env AMRSL_PROPOSER_CMD)");
  mine->add_option("-o,--output", mine_args.output, "Updated actions file")->required();
  mine->add_option("--report", mine_args.report, "Report file (default stdout)");
  mine->add_option("--provenance", mine_args.provenance, "Per-record provenance file");
  mine->add_option("--rounds", mine_args.rounds)->check(CLI::NonNegativeNumber);
  mine->add_option("--epochs", mine_args.epochs)->check(CLI::PositiveNumber);
  mine->add_option("--samples", mine_args.samples)->check(CLI::PositiveNumber);
  mine->add_option("--stop-threshold", mine_args.stop_threshold);
  mine->add_option("--restarts", mine_args.restarts)->check(CLI::PositiveNumber);

  SynTextArgs syntext_args;
  auto* syntext = app.add_subcommand("filter-syntext", "Cycle-consistency filter for sentences");
  syntext->add_option("gold", syntext_args.gold)->required()->check(CLI::ExistingFile);
  syntext->add_option("candidates", syntext_args.candidates)->required()->check(CLI::ExistingFile);
  syntext->add_option("--parser", syntext_args.parser,
                      "Parser command or lookup:<corpus> (env AMRSL_PARSER_CMD)");
  syntext->add_option("-o,--output", syntext_args.output, "Kept pairs")->required();
  syntext->add_option("--decisions", syntext_args.decisions, "Decision log (default stdout)");
  syntext->add_option("--threshold", syntext_args.threshold)->check(CLI::Range(0.0, 1.0));
  syntext->add_option("--quota", syntext_args.quota)->check(CLI::PositiveNumber);
  syntext->add_option("--restarts", syntext_args.restarts)->check(CLI::PositiveNumber);

  SynAmrArgs synamr_args;
  auto* synamr = app.add_subcommand("filter-synamr", "Filter silver graphs");
  synamr->add_option("silver", synamr_args.silver)->required()->check(CLI::ExistingFile);
  synamr->add_option("--vocab-from", synamr_args.vocab_from, "Human-annotated corpus")
      ->check(CLI::ExistingFile);
  synamr->add_option("--generator", synamr_args.generator,
                     "Generator command (env AMRSL_GENERATOR_CMD)");
  synamr->add_option("-o,--output", synamr_args.output, "Kept silver corpus")->required();
  synamr->add_option("--decisions", synamr_args.decisions, "Decision log (default stdout)");
  synamr->add_option("--bleu-threshold", synamr_args.bleu_threshold);
  synamr->add_flag("--no-filter", synamr_args.no_filter, "Keep every record");

  AssembleArgs assemble_args;
  auto* assemble = app.add_subcommand("assemble", "Build pre-training and fine-tuning corpora");
  assemble->add_option("gold", assemble_args.gold)->required()->check(CLI::ExistingFile);
  assemble->add_option("silver", assemble_args.silver)->required()->check(CLI::ExistingFile);
  assemble->add_option("--mode", assemble_args.mode)
      ->check(CLI::IsMember({"silver_only", "mixed"}));
  assemble->add_option("--pretrain", assemble_args.pretrain)->required();
  assemble->add_option("--finetune", assemble_args.finetune)->required();

  BleuArgs bleu_args;
  auto* bleu = app.add_subcommand("bleu", "Line-paired sentence BLEU");
  bleu->add_option("candidates", bleu_args.candidates)->required()->check(CLI::ExistingFile);
  bleu->add_option("references", bleu_args.references)->required()->check(CLI::ExistingFile);
  bleu->add_option("--max-n", bleu_args.max_n);

  FixtureArgs fixture_args;
  auto* fixtures = app.add_subcommand("gen-fixtures", "Generate a synthetic aligned corpus");
  fixtures->add_option("-n,--count", fixture_args.count);
  fixtures->add_option("--min-nodes", fixture_args.min_nodes);
  fixtures->add_option("--max-nodes", fixture_args.max_nodes);
  fixtures->add_option("--filler-rate", fixture_args.filler_rate)->check(CLI::Range(0.0, 1.0));
  fixtures->add_option("-o,--output", fixture_args.output)->required();
  fixtures->add_option("--planted", fixture_args.planted,
                       "Also write suboptimal action sequences here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    set_jobs(g.jobs);
    if (oracle->parsed()) cmd_oracle(g, oracle_args);
    if (replay->parsed()) cmd_replay(g, replay_args);
    if (smatch_cmd->parsed()) cmd_smatch(g, smatch_args);
    if (mine->parsed()) cmd_mine(g, mine_args);
    if (syntext->parsed()) cmd_filter_syntext(g, syntext_args);
    if (synamr->parsed()) cmd_filter_synamr(g, synamr_args);
    if (assemble->parsed()) cmd_assemble(g, assemble_args);
    if (bleu->parsed()) cmd_bleu(g, bleu_args);
    if (fixtures->parsed()) cmd_gen_fixtures(g, fixture_args);
  } catch (const AdapterError& e) {
    std::cerr << "amrsl: adapter failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "amrsl: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
