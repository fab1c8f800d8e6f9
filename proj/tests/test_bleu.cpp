#include <doctest.h>

#include <random>
#include <stdexcept>

#include "amrsl/bleu.hpp"
#include "amrsl/fixtures.hpp"
#include "oracles.hpp"

using namespace amrsl;
using Tokens = std::vector<std::string>;

TEST_SUITE("bleu") {
  TEST_CASE("identity scores 100") {
    const Tokens s{"the", "boy", "wants", "to", "go"};
    CHECK(sentence_bleu(s, s) == doctest::Approx(100.0));
    CHECK(sentence_bleu({"hi"}, {"hi"}) == doctest::Approx(100.0));
  }

  TEST_CASE("golden value for a repeated unigram") {
    const Tokens cand{"the", "the", "the"};
    const Tokens ref{"the", "cat"};
    const double expected = 19.490217756577096;
    REQUIRE(oracle::bleu(cand, ref) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(sentence_bleu(cand, ref) == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("edge cases") {
    CHECK(sentence_bleu({}, {"a"}) == 0.0);
    CHECK_THROWS_AS(sentence_bleu({"a"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(sentence_bleu({"a"}, {"a"}, 0), std::invalid_argument);
    // shorter candidate pays the brevity penalty
    CHECK(sentence_bleu({"a", "b"}, {"a", "b", "c", "d"}) < sentence_bleu({"a", "b", "c"}, {"a", "b", "c", "d"}));
  }

  TEST_CASE("property: agrees with direct counting") {
    std::mt19937_64 rng(5);
    const Tokens pool{"a", "b", "c", "d", "e"};
    for (int trial = 0; trial < 200; ++trial) {
      Tokens cand(1 + draw(rng, 9)), ref(1 + draw(rng, 9));
      for (auto& t : cand) t = pool[draw(rng, pool.size())];
      for (auto& t : ref) t = pool[draw(rng, pool.size())];
      const int max_n = 1 + static_cast<int>(draw(rng, 4));
      const double got = sentence_bleu(cand, ref, max_n);
      const double want = oracle::bleu(cand, ref, max_n);
      CHECK(got == doctest::Approx(want).epsilon(1e-9));
      CHECK(got >= 0.0);
      CHECK(got <= 100.0 + 1e-9);
      const bool perfect = std::abs(got - 100.0) < 1e-9;
      if (cand == ref) CHECK(perfect);
      // short enough that matching every 4-gram pins the order
      if (perfect && max_n == 4 && cand.size() <= 5) CHECK(cand == ref);
    }
  }

  TEST_CASE("reversal loses higher orders") {
    const Tokens s{"one", "two", "three", "four", "five"};
    const Tokens r(s.rbegin(), s.rend());
    CHECK(sentence_bleu(r, s) < 50.0);
    CHECK(sentence_bleu(r, s, 1) == doctest::Approx(100.0));
  }
}
