#include <doctest.h>

#include <random>

#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/graph.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace amrsl;
using testing_util::amr;

TEST_SUITE("graph") {
  TEST_CASE("variables are unique and endpoints must exist") {
    AmrGraph g;
    g.add_node("a", "boy");
    CHECK_THROWS_AS(g.add_node("a", "girl"), GraphError);
    CHECK_THROWS_AS(g.add_node("", "girl"), GraphError);
    CHECK_THROWS_AS(g.add_edge("a", "ARG0", "zz"), GraphError);
    CHECK_THROWS_AS(g.add_edge("a", "", "a"), GraphError);
    CHECK_THROWS_AS(g.add_attribute("zz", "polarity", "-"), GraphError);
  }

  TEST_CASE("identical edges are stored once") {
    AmrGraph g;
    g.add_node("a", "x");
    g.add_node("b", "y");
    CHECK(g.add_edge("a", "ARG0", "b"));
    CHECK_FALSE(g.add_edge("a", "ARG0", "b"));
    CHECK(g.add_edge("a", "ARG1", "b"));
    CHECK(g.edges().size() == 2);
    CHECK(g.has_edge("a", "ARG1", "b"));
    CHECK_FALSE(g.has_edge("b", "ARG1", "a"));
  }

  TEST_CASE("is_connected examples") {
    CHECK(is_connected(amr("(b / boy)")));
    AmrGraph two;
    two.add_node("a", "x");
    two.add_node("b", "y");
    two.set_root("a");
    CHECK_FALSE(is_connected(two));
    CHECK(unreachable_nodes(two) == std::vector<std::string>{"b"});

    AmrGraph chain;
    chain.add_node("a", "x");
    chain.add_node("b", "y");
    chain.add_node("c", "z");
    chain.add_edge("a", "r", "b");
    chain.add_edge("b", "r", "c");
    chain.set_root("a");
    CHECK(is_connected(chain));
    // direction is ignored
    chain.set_root("c");
    CHECK(is_connected(chain));
    CHECK(is_connected(AmrGraph{}));
  }

  TEST_CASE("is_connected agrees with transitive closure on random graphs") {
    std::mt19937_64 rng(11);
    int disconnected = 0;
    for (int trial = 0; trial < 400; ++trial) {
      GraphFixtureOptions opt;
      opt.variables = 1 + draw(rng, 12);
      opt.extra_edges = draw(rng, 3);
      opt.connected = coin(rng, 0.5);
      const auto g = random_graph(rng, opt);
      CHECK(is_connected(g) == oracle::connected(g));
      disconnected += !oracle::connected(g);
    }
    CHECK(disconnected > 20);  // both branches exercised
  }

  TEST_CASE("tokens") {
    CHECK(split_tokens("  the   boy\twants ") == std::vector<std::string>{"the", "boy", "wants"});
    CHECK(split_tokens("").empty());
    CHECK(join_tokens({"a", "b"}) == "a b");
  }

  TEST_CASE("alignment validation") {
    const auto g = amr("(w / want-01 :ARG0 (b / boy))");
    const auto s = testing_util::sentence("boy wants");
    CHECK_NOTHROW(validate_alignment(g, s, {{"b", {0, 0}}, {"w", {1, 1}}}));
    CHECK_THROWS_AS(validate_alignment(g, s, {{"x", {0, 0}}}), InputError);
    CHECK_THROWS_AS(validate_alignment(g, s, {{"b", {1, 2}}}), InputError);
    CHECK_THROWS_AS(validate_alignment(g, s, {{"b", {1, 0}}}), InputError);
    CHECK_THROWS_AS(validate_alignment(g, s, {{"b", {-1, 0}}}), InputError);
  }
}
