#include <doctest.h>

#include <filesystem>
#include <map>
#include <random>

#include "amrsl/corpus.hpp"
#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/syntxt.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace amrsl;
using testing_util::amr;

namespace {

CorpusRecord gold_record(const std::string& id, const std::string& text, const std::string& penman) {
  CorpusRecord r;
  r.sentence = testing_util::sentence(text, id);
  r.graph = amr(penman);
  return r;
}

SynTextCandidate cand(const std::string& id, const std::string& text,
                      CandidateOrigin origin = CandidateOrigin::kSampled) {
  return {id, origin, text};
}

const char* kWant = "(w / want-01 :ARG0 (b / boy))";

}  // namespace

TEST_SUITE("syntxt") {
  TEST_CASE("a copy of the gold sentence is a duplicate, whatever the spacing") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    const auto r = filter_syntext(gold, {cand("g1", "  the   boy wants ")}, parser);
    REQUIRE(r.decisions.size() == 1);
    CHECK(r.decisions[0].rule == SynTextRule::kDuplicateOfGold);
    CHECK_FALSE(r.decisions[0].score);
    CHECK(r.kept.empty());
  }

  TEST_CASE("a paraphrase the parser reads identically is kept with the gold graph") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    parser.add("a boy has wishes", amr(kWant));
    const auto r = filter_syntext(gold, {cand("g1", "a boy has wishes", CandidateOrigin::kGreedy)}, parser);
    REQUIRE(r.kept.size() == 1);
    CHECK(r.decisions[0].rule == SynTextRule::kKept);
    CHECK(*r.decisions[0].score == 1.0);
    CHECK(r.kept[0].sentence.text == "a boy has wishes");
    CHECK(r.kept[0].graph == gold[0].graph);
    CHECK(r.kept[0].meta("source-id") == "g1");
    CHECK(r.kept[0].meta("origin") == "greedy");
    CHECK(r.keep_rate() == 1.0);
  }

  TEST_CASE("quota keeps the three best of five passing candidates") {
    const Corpus gold{gold_record("g1", "the boy wants", "(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02))")};
    LookupParser parser(gold);
    // Five passing parses with distinct scores: dropping nothing, or a role.
    parser.add("c1", amr("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02))"));
    parser.add("c2", amr("(w / want-01 :ARG0 (b / boy) :ARG2 (g / go-02))"));
    parser.add("c3", amr("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-01))"));
    parser.add("c4", amr("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02) :time (n / now))"));
    parser.add("c5", amr("(w / want-01 :ARG0 (b / boy) :ARG1 (g / go-02) :time (n / now) :mod (x / x))"));
    const std::vector<SynTextCandidate> cands{cand("g1", "c5"), cand("g1", "c2"), cand("g1", "c1"),
                                              cand("g1", "c4"), cand("g1", "c3")};
    SynTextOptions opt;
    opt.threshold = 0.5;
    const auto r = filter_syntext(gold, cands, parser, opt);
    std::size_t kept = 0, over = 0;
    for (const auto& d : r.decisions) {
      kept += d.rule == SynTextRule::kKept;
      over += d.rule == SynTextRule::kOverQuota;
      CHECK(*d.score >= 0.5);
    }
    CHECK(kept == 3);
    CHECK(over == 2);
    CHECK(r.decisions[2].kept);  // the perfect one
    // every kept score beats every over-quota score
    for (const auto& k : r.decisions)
      for (const auto& o : r.decisions)
        if (k.kept && o.rule == SynTextRule::kOverQuota) CHECK(*k.score >= *o.score);
  }

  TEST_CASE("greedy wins ties, then input order") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    for (const auto* t : {"p1", "p2", "p3", "p4"}) parser.add(t, amr(kWant));
    SynTextOptions opt;
    opt.quota = 1;
    const auto r = filter_syntext(
        gold, {cand("g1", "p1"), cand("g1", "p2"), cand("g1", "p3", CandidateOrigin::kGreedy), cand("g1", "p4")},
        parser, opt);
    CHECK(r.decisions[2].kept);
    CHECK(r.kept.size() == 1);
    opt.quota = 2;
    const auto r2 = filter_syntext(gold, {cand("g1", "p1"), cand("g1", "p2"), cand("g1", "p4")}, parser, opt);
    CHECK(r2.decisions[0].kept);
    CHECK(r2.decisions[1].kept);
    CHECK(r2.decisions[2].rule == SynTextRule::kOverQuota);
  }

  TEST_CASE("repeated text is kept once") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    parser.add("boy wanting", amr(kWant));
    const auto r = filter_syntext(gold, {cand("g1", "boy wanting"), cand("g1", "boy  wanting")}, parser);
    CHECK(r.decisions[0].kept);
    CHECK(r.decisions[1].rule == SynTextRule::kDuplicateOfKept);
    CHECK(r.kept.size() == 1);
  }

  TEST_CASE("threshold is inclusive") {
    const auto parsed_original = amr("(w / want-01 :ARG0 (b / boy) :polarity -)");
    const auto parsed_candidate = amr("(w / want-01 :ARG0 (b / boy) :polarity +)");
    const auto brute = oracle::smatch(parsed_candidate, parsed_original);
    REQUIRE(brute.matched == 4);
    REQUIRE(brute.test == 5);
    REQUIRE(brute.gold == 5);
    REQUIRE(brute.f1() == doctest::Approx(0.8));

    const Corpus gold{gold_record("g1", "no boy wants", kWant)};
    LookupParser parser;
    parser.add("no boy wants", parsed_original);
    parser.add("boy wants", parsed_candidate);
    auto r = filter_syntext(gold, {cand("g1", "boy wants")}, parser);
    CHECK(*r.decisions[0].score == 0.8);
    CHECK(r.decisions[0].kept);
    SynTextOptions stricter;
    stricter.threshold = 0.81;
    r = filter_syntext(gold, {cand("g1", "boy wants")}, parser, stricter);
    CHECK(r.decisions[0].rule == SynTextRule::kBelowThreshold);
  }

  TEST_CASE("scores compare against the parsed original, output keeps the gold graph") {
    // The parser misreads the original; a candidate it misreads the same
    // way scores 1.0 even though it is far from gold.
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    const auto misread = amr("(d / dog)");
    LookupParser parser;
    parser.add("the boy wants", misread);
    parser.add("a boy wants", misread);
    const auto r = filter_syntext(gold, {cand("g1", "a boy wants")}, parser);
    CHECK(*r.decisions[0].score == 1.0);
    REQUIRE(r.kept.size() == 1);
    CHECK(r.kept[0].graph == gold[0].graph);
    REQUIRE(r.originals.size() == 1);
    CHECK(*r.originals[0].parsed_original == misread);
  }

  TEST_CASE("parse failures") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    auto r = filter_syntext(gold, {cand("g1", "unknown words"), cand("g1", "")}, parser);
    CHECK(r.decisions[0].rule == SynTextRule::kParseFailure);
    CHECK(r.decisions[1].rule == SynTextRule::kParseFailure);
    LookupParser blind;
    blind.add("boy wanting", amr(kWant));
    r = filter_syntext(gold, {cand("g1", "boy wanting"), cand("g1", "the boy wants")}, blind);
    CHECK(r.decisions[0].rule == SynTextRule::kParseFailure);
    CHECK(r.decisions[1].rule == SynTextRule::kDuplicateOfGold);
    CHECK_FALSE(r.originals[0].parsed_original);
  }

  TEST_CASE("unknown graph id is an input error") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant)};
    LookupParser parser(gold);
    CHECK_THROWS_AS(filter_syntext(gold, {cand("nope", "x")}, parser), InputError);
  }

  TEST_CASE("candidate file format") {
    const auto c = parse_candidates("g1\tgreedy\tthe boy\n\ng2\tsampled\ta  b\r\n");
    REQUIRE(c.size() == 2);
    CHECK(c[0].origin == CandidateOrigin::kGreedy);
    CHECK(c[1].graph_id == "g2");
    CHECK(c[1].text == "a  b");
    CHECK_THROWS_AS(parse_candidates("g1\tgreedy the boy\n"), InputError);
    CHECK_THROWS_AS(parse_candidates("g1\tbest\tthe boy\n"), InputError);
    CHECK(rule_name(SynTextRule::kOverQuota) == "over_quota");
  }

  TEST_CASE("property: invariants and threshold monotonicity") {
    std::mt19937_64 rng(17);
    const auto base = random_tree_corpus(40, 9);
    Corpus gold = base;
    LookupParser parser;
    std::vector<SynTextCandidate> cands;
    for (const auto& rec : gold) {
      parser.add(join_tokens(rec.sentence.tokens), rec.graph);
      const auto n = 1 + draw(rng, 8);
      for (std::size_t k = 0; k < n; ++k) {
        const auto pick = draw(rng, 6);
        std::string text = pick == 5 ? rec.sentence.text : rec.sentence.id + " v" + std::to_string(pick);
        if (pick < 4) {
          auto g = rec.graph;
          for (std::size_t m = draw(rng, 3); m > 0; --m) g = mutate_graph(g, rng);
          parser.add(text, g);  // pick 4 stays unparseable
        }
        cands.push_back({rec.sentence.id, coin(rng, 0.2) ? CandidateOrigin::kGreedy : CandidateOrigin::kSampled,
                         text});
      }
    }
    std::vector<std::set<std::size_t>> kept_at;
    for (double threshold : {0.0, 0.5, 0.7, 0.8, 0.9, 1.0}) {
      SynTextOptions opt;
      opt.threshold = threshold;
      const auto r = filter_syntext(gold, cands, parser, opt);
      REQUIRE(r.decisions.size() == cands.size());
      std::map<std::string, std::set<std::string>> kept_texts;
      std::set<std::size_t> kept;
      for (const auto& d : r.decisions) {
        const auto& c = cands[d.candidate];
        if (!d.kept) continue;
        kept.insert(d.candidate);
        CHECK(*d.score >= threshold);
        CHECK(kept_texts[c.graph_id].insert(normalize_text(c.text)).second);
      }
      for (const auto& [id, texts] : kept_texts) CHECK(texts.size() <= opt.quota);
      CHECK(r.kept.size() == kept.size());
      kept_at.push_back(kept);
    }
    for (std::size_t i = 1; i < kept_at.size(); ++i) {
      // a stricter threshold only removes candidates
      for (auto c : kept_at[i]) CHECK(kept_at[i - 1].contains(c));
    }
    CHECK_FALSE(kept_at.front().empty());
  }

  TEST_CASE("external parser over the line protocol") {
    const Corpus gold{gold_record("g1", "the boy wants", kWant),
                      gold_record("g2", "a girl", "(g / girl)")};
    auto table = gold;
    table.push_back(gold_record("t1", "boy wanting", kWant));
    const auto path = std::filesystem::temp_directory_path() / "amrsl_fake_parser.amr";
    write_corpus(table, path);
    ExternalParser parser(std::string(FAKE_ADAPTER) + " parser " + path.string());
    const auto r = filter_syntext(gold, {cand("g1", "boy wanting"), cand("g2", "nothing here")}, parser);
    CHECK(r.decisions[0].kept);
    CHECK(r.decisions[1].rule == SynTextRule::kParseFailure);
    std::filesystem::remove(path);
  }
}
