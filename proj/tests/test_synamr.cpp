#include <doctest.h>

#include <filesystem>
#include <random>

#include "amrsl/bleu.hpp"
#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/penman.hpp"
#include "amrsl/synamr.hpp"
#include "helpers.hpp"

using namespace amrsl;
using testing_util::amr;
using testing_util::sentence;

namespace {

SynAmrRecord silver(const std::string& text, const std::string& penman,
                    std::optional<std::string> regen = std::nullopt) {
  SynAmrRecord r{sentence(text), parse_penman(penman, ParseMode::kLenient), std::nullopt};
  if (regen) r.regenerated = sentence(*regen, "s.regen");
  return r;
}

CorpusRecord rec(const std::string& id, const std::string& text, const std::string& penman) {
  CorpusRecord r;
  r.sentence = sentence(text, id);
  r.graph = amr(penman);
  return r;
}

const Vocabulary kVocab({"the", "boy", "wants", "to", "go", "a", "girl", "sees", "."});

class EchoGenerator final : public GeneratorAdapter {
 public:
  std::string generate(const std::string&, const AmrGraph&) override {
    ++calls;
    return "the boy wants to go .";
  }
  int calls = 0;
};

}  // namespace

TEST_SUITE("synamr") {
  TEST_CASE("vocabulary from the reference tokens") {
    const auto v = build_vocabulary({rec("a", "the boy", "(b / boy)"), rec("b", "a boy .", "(b / boy)")});
    CHECK(v.size() == 4);
    CHECK(v.contains("."));
    CHECK(v.oov({"the", "cat", "boy", "dog"}) == std::vector<std::string>{"cat", "dog"});
    CHECK_THROWS_AS(build_vocabulary({}), InputError);
  }

  TEST_CASE("disconnected silver graphs are dropped") {
    const auto r = filter_synamr(
        {silver("the boy wants to go .", "(w / want-01) (b / boy)", "the boy wants to go .")}, kVocab);
    CHECK(r.decisions[0].rule == SynAmrRule::kDisconnected);
    CHECK(r.kept.empty());
  }

  TEST_CASE("identical regeneration is kept") {
    const auto r = filter_synamr(
        {silver("the boy wants to go .", "(w / want-01 :ARG0 (b / boy))", "the boy wants to go .")}, kVocab);
    CHECK(r.decisions[0].kept);
    CHECK(*r.decisions[0].bleu == doctest::Approx(100.0));
    CHECK(r.kept == std::vector<std::size_t>{0});
  }

  TEST_CASE("out-of-vocabulary sentences bypass BLEU") {
    const auto r = filter_synamr({silver("the zebra wants", "(w / want-01 :ARG0 (z / zebra))", "xyz")}, kVocab);
    CHECK(r.decisions[0].kept);
    CHECK(r.decisions[0].oov == std::vector<std::string>{"zebra"});
    CHECK_FALSE(r.decisions[0].bleu);
    // still dropped when disconnected
    const auto d = filter_synamr({silver("the zebra wants", "(w / want-01) (z / zebra)")}, kVocab);
    CHECK(d.decisions[0].rule == SynAmrRule::kDisconnected);
  }

  TEST_CASE("no regenerated text is flagged, not dropped") {
    const auto r = filter_synamr({silver("the boy wants", "(w / want-01 :ARG0 (b / boy))")}, kVocab);
    CHECK(r.decisions[0].kept);
    CHECK(r.decisions[0].missing_regenerated);
  }

  TEST_CASE("low BLEU regeneration is dropped") {
    const std::vector<std::string> ref{"the", "boy", "wants", "to", "go", "."};
    const std::vector<std::string> bad{"a", "girl", "sees"};
    REQUIRE(sentence_bleu(bad, ref) < 5.0);
    const auto r = filter_synamr({silver("the boy wants to go .", "(w / want-01 :ARG0 (b / boy))", "a girl sees")},
                                 kVocab);
    CHECK(r.decisions[0].rule == SynAmrRule::kBelowThreshold);
    CHECK(*r.decisions[0].bleu < 5.0);
    SynAmrOptions lax;
    lax.bleu_threshold = 0.0;
    CHECK(filter_synamr({silver("the boy wants to go .", "(w / want-01 :ARG0 (b / boy))", "a girl sees")},
                        kVocab, lax)
              .decisions[0]
              .kept);
  }

  TEST_CASE("no_filter keeps everything") {
    SynAmrOptions opt;
    opt.no_filter = true;
    const auto r = filter_synamr({silver("the boy", "(w / want-01) (b / boy)", "girl"),
                                  silver("the boy wants to go .", "(b / boy)", "a girl sees")},
                                 kVocab, opt);
    CHECK(r.kept == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("property: threshold monotonicity and connectivity") {
    std::mt19937_64 rng(23);
    const auto base = random_tree_corpus(100, 31);
    const auto vocab = build_vocabulary(Corpus(base.begin(), base.begin() + 60));
    std::vector<SynAmrRecord> records;
    for (const auto& r : base) {
      auto g = r.graph;
      if (coin(rng, 0.3)) g = mutate_graph(g, rng);
      SynAmrRecord s{r.sentence, g, std::nullopt};
      if (coin(rng, 0.9)) {
        auto toks = r.sentence.tokens;
        shuffle_in_place(toks, rng);
        toks.resize(1 + draw(rng, toks.size()));
        s.regenerated = Sentence{r.sentence.id + ".regen", join_tokens(toks), toks};
      }
      records.push_back(std::move(s));
    }
    std::vector<std::size_t> previous;
    bool first = true;
    for (double t : {0.0, 1.0, 5.0, 10.0, 25.0, 50.0, 100.0}) {
      SynAmrOptions opt;
      opt.bleu_threshold = t;
      const auto r = filter_synamr(records, vocab, opt);
      for (auto i : r.kept) {
        CHECK(is_connected(records[i].silver));
        const auto& d = r.decisions[i];
        if (d.bleu) CHECK(*d.bleu >= t);
      }
      if (!first) {
        for (auto i : r.kept) CHECK(std::find(previous.begin(), previous.end(), i) != previous.end());
      }
      first = false;
      previous = r.kept;
    }
    SynAmrOptions none;
    none.no_filter = true;
    CHECK(filter_synamr(records, vocab, none).kept.size() == records.size());
  }

  TEST_CASE("regenerate fills only what BLEU will read") {
    std::vector<SynAmrRecord> records{
        silver("the boy wants to go .", "(w / want-01 :ARG0 (b / boy))"),
        silver("the zebra", "(z / zebra)"),
        silver("the boy", "(w / want-01) (b / boy)"),
        silver("a girl", "(g / girl)", "a girl"),
    };
    EchoGenerator gen;
    regenerate(records, kVocab, gen);
    CHECK(gen.calls == 1);
    CHECK(records[0].regenerated->text == "the boy wants to go .");
    CHECK_FALSE(records[1].regenerated);
    CHECK_FALSE(records[2].regenerated);
    CHECK(records[3].regenerated->text == "a girl");
  }

  TEST_CASE("external generator over the line protocol") {
    Corpus table{rec("t1", "the boy wants to go .", "(w / want-01 :ARG0 (b / boy))")};
    const auto path = std::filesystem::temp_directory_path() / "amrsl_fake_generator.amr";
    write_corpus(table, path);
    ExternalGenerator gen(std::string(FAKE_ADAPTER) + " generator " + path.string());
    std::vector<SynAmrRecord> records{silver("the boy wants to go .", "(w / want-01 :ARG0 (b / boy))"),
                                      silver("a girl sees", "(s / see-01 :ARG0 (g / girl))")};
    regenerate(records, kVocab, gen);
    CHECK(records[0].regenerated->text == "the boy wants to go .");
    CHECK(records[1].regenerated->text == "see girl");
    const auto r = filter_synamr(records, kVocab);
    CHECK(r.decisions[0].kept);
    std::filesystem::remove(path);
  }

  TEST_CASE("silver corpus files carry regenerated text in metadata") {
    auto c = parse_corpus("# ::id a\n# ::snt the boy\n# ::regen a boy\n(b / boy)\n\n# ::id b\n# ::snt x\n(x / x)\n");
    const auto r = synamr_records(c);
    CHECK(r[0].regenerated->tokens == std::vector<std::string>{"a", "boy"});
    CHECK_FALSE(r[1].regenerated);
  }

  TEST_CASE("assembly modes") {
    const Corpus gold{rec("g1", "the boy", "(b / boy)"), rec("g2", "a girl", "(g / girl)")};
    Corpus silv;
    for (int i = 0; i < 10; ++i) silv.push_back(rec("s" + std::to_string(i), "x", "(x / x)"));

    const auto only = assemble_training(gold, silv, AssemblyMode::kSilverOnly, 1);
    CHECK(format_corpus(only.pretrain) == format_corpus(silv));
    CHECK(format_corpus(only.finetune) == format_corpus(gold));

    const auto mixed = assemble_training(gold, silv, AssemblyMode::kMixed, 1);
    CHECK(mixed.pretrain.size() == 12);
    std::set<std::string> ids;
    for (const auto& r : mixed.pretrain) ids.insert(r.sentence.id);
    CHECK(ids.size() == 12);
    CHECK(format_corpus(mixed.finetune) == format_corpus(gold));
    CHECK(format_corpus(assemble_training(gold, silv, AssemblyMode::kMixed, 1).pretrain) ==
          format_corpus(mixed.pretrain));

    CHECK_THROWS_AS(assemble_training(gold, {}, AssemblyMode::kMixed, 1), InputError);
    CHECK_THROWS_AS(assemble_training({}, silv, AssemblyMode::kSilverOnly, 1), InputError);
    auto clash = silv;
    clash.push_back(rec("g1", "x", "(x / x)"));
    CHECK_THROWS_AS(assemble_training(gold, clash, AssemblyMode::kMixed, 1), InputError);
  }
}
