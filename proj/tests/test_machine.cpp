#include <doctest.h>

#include <random>

#include "amrsl/errors.hpp"
#include "amrsl/fixtures.hpp"
#include "amrsl/machine.hpp"
#include "amrsl/penman.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace amrsl;
using testing_util::amr;
using testing_util::sentence;

namespace {

// A random action of kind `k` with a label that cannot collide with an
// existing edge.
Action with_fresh_label(ActionKind k, std::mt19937_64& rng, int& counter) {
  static const std::vector<std::string> concepts{"boy", "want-01", "go-02", "girl"};
  switch (k) {
    case ActionKind::kPred:
      return Action::pred(concepts[draw(rng, concepts.size())]);
    case ActionKind::kLeftArc:
      return Action::left_arc("r" + std::to_string(++counter));
    case ActionKind::kRightArc:
      return Action::right_arc("r" + std::to_string(++counter) + (coin(rng, 0.3) ? "-of" : ""));
    default:
      return {k, {}};
  }
}

}  // namespace

TEST_SUITE("machine") {
  TEST_CASE("initial state") {
    const auto st = initial_state(sentence("boy"));
    CHECK(st.buffer_size() == 1);
    CHECK(st.buffer_front() == 0);
    CHECK(st.stack().empty());
    CHECK(st.partial().empty());
    CHECK_FALSE(st.closed());
    CHECK_FALSE(st.root_set());
    CHECK(initial_state(sentence("the boy")).buffer_size() == 2);
    CHECK_THROWS_AS(initial_state(sentence("")), InputError);
  }

  TEST_CASE("minimal construction") {
    const auto s = sentence("boy");
    const auto actions = parse_actions("SHIFT PRED(boy) ROOT CLOSE");
    const auto out = run_with_alignment(s, actions);
    CHECK(serialize_penman(out.graph) == "(b / boy)");
    CHECK(out.alignment == Alignment{{"b", {0, 0}}});
  }

  TEST_CASE("left arc points from the top node to the one below") {
    const auto s = sentence("boy wants");
    const auto g = run(s, parse_actions("SHIFT PRED(boy) SHIFT PRED(want-01) LA(ARG0) ROOT CLOSE"));
    CHECK(serialize_penman(g, Layout::kSingleLine) == "(w / want-01 :ARG0 (b / boy))");
    const auto h = run(s, parse_actions("SHIFT PRED(boy) SHIFT PRED(want-01) RA(ARG0-of) ROOT CLOSE"));
    CHECK(h.has_edge("w", "ARG0", "b"));
  }

  TEST_CASE("a repeated arc is an error that names the action index") {
    const auto s = sentence("boy wants");
    const auto actions = parse_actions("SHIFT PRED(boy) SHIFT PRED(want-01) LA(ARG0) LA(ARG0) CLOSE");
    try {
      run(s, actions);
      FAIL("expected a machine error");
    } catch (const MachineError& e) {
      CHECK(e.action_index() == 5);
    }
  }

  TEST_CASE("illegal actions") {
    const auto s = sentence("a b");
    auto expect_error_at = [&](std::string_view text, std::size_t index) {
      CAPTURE(text);
      try {
        run(s, parse_actions(text));
        FAIL("expected a machine error");
      } catch (const MachineError& e) {
        CHECK(e.action_index() == index);
      }
    };
    expect_error_at("SHIFT SHIFT SHIFT", 2);
    expect_error_at("CLOSE", 0);
    expect_error_at("SHIFT PRED(x) SHIFT PRED(y) ROOT ROOT", 5);
    expect_error_at("SHIFT PRED(x) SHIFT LA(r) CLOSE", 3);
    expect_error_at("SHIFT SHIFT CLOSE SHIFT", 3);
    expect_error_at("SHIFT PRED(x) SHIFT MERGE", 3);
    expect_error_at("REDUCE", 0);
    expect_error_at("ROOT", 0);
    expect_error_at("SHIFT PRED(x) PRED(y)", 2);
    expect_error_at("SHIFT SHIFT", 2);  // no CLOSE
    expect_error_at("", 0);
  }

  TEST_CASE("missing ROOT: first node in lenient mode, error in strict") {
    const auto s = sentence("a b");
    const auto actions = parse_actions("SHIFT PRED(x) SHIFT PRED(y) RA(r) CLOSE");
    CHECK(run(s, actions).root() == "x");
    CHECK_THROWS_AS(run(s, actions, RootPolicy::kStrict), MachineError);
  }

  TEST_CASE("merge records a multi-token span") {
    const auto s = sentence("New York City");
    const auto out = run_with_alignment(s, parse_actions("SHIFT SHIFT MERGE PRED(city) SHIFT REDUCE CLOSE"));
    CHECK(out.alignment.at("c") == TokenSpan{0, 1});
  }

  TEST_CASE("fresh variables take the concept initial") {
    const auto g = run(sentence("a b c d"),
                       parse_actions("SHIFT PRED(boy) SHIFT PRED(bird) SHIFT PRED(9x) SHIFT PRED(Bob) CLOSE"));
    std::vector<std::string> ids;
    for (const auto& n : g.nodes()) ids.push_back(n.id);
    CHECK(ids == std::vector<std::string>{"b", "b2", "x", "b3"});
  }

  TEST_CASE("action text format") {
    const auto seq = parse_actions("SHIFT PRED(want-01) LA(ARG0) RA(ARG1-of) REDUCE MERGE ROOT CLOSE");
    CHECK(seq.size() == 8);
    CHECK(seq[1] == Action::pred("want-01"));
    CHECK(seq[3] == Action::right_arc("ARG1-of"));
    CHECK(format_actions(seq) == "SHIFT PRED(want-01) LA(ARG0) RA(ARG1-of) REDUCE MERGE ROOT CLOSE");
    CHECK_THROWS_AS(parse_action("PRED"), InputError);
    CHECK_THROWS_AS(parse_action("PRED()"), InputError);
    CHECK_THROWS_AS(parse_action("SHIFT(x)"), InputError);
    CHECK_THROWS_AS(parse_action("JUMP"), InputError);
    CHECK_THROWS_AS(parse_action("LA(ARG0"), InputError);
  }

  TEST_CASE("legal_actions examples") {
    auto st = initial_state(sentence("a b"));
    auto legal = legal_actions(st);
    CHECK(legal.contains(ActionKind::kShift));
    CHECK_FALSE(legal.contains(ActionKind::kClose));
    CHECK_FALSE(legal.contains(ActionKind::kReduce));
    for (const auto& a : parse_actions("SHIFT PRED(x) SHIFT PRED(y)")) st = step(st, a);
    legal = legal_actions(st);
    CHECK(legal.contains(ActionKind::kLeftArc));
    CHECK(legal.contains(ActionKind::kRightArc));
    CHECK(legal.contains(ActionKind::kRoot));
    CHECK(legal.contains(ActionKind::kClose));
    CHECK_FALSE(legal.contains(ActionKind::kShift));
    st = step(st, Action::close());
    CHECK(legal_actions(st).empty());
  }

  TEST_CASE("edge budget bounds arcs") {
    auto st = initial_state(sentence("a b"));
    for (const auto& a : parse_actions("SHIFT PRED(x) SHIFT PRED(y) LA(r1) LA(r2) RA(r3)")) {
      st = step(st, a);
    }
    CHECK(st.edge_budget() == 4);
    st = step(st, Action::left_arc("r4"));
    CHECK_FALSE(legal_actions(st).contains(ActionKind::kLeftArc));
    CHECK_THROWS_AS(step(st, Action::left_arc("r5")), MachineError);
  }

  TEST_CASE("property: legal_actions agrees with step on random walks") {
    std::mt19937_64 rng(42);
    int counter = 0;
    std::size_t states = 0;
    for (int walk = 0; walk < 300; ++walk) {
      const auto n = 1 + draw(rng, 6);
      std::vector<std::string> toks;
      for (std::size_t i = 0; i < n; ++i) toks.push_back("t" + std::to_string(i));
      Sentence s{"w", join_tokens(toks), toks};
      auto st = initial_state(s);
      ActionSequence taken;
      std::size_t steps = 0;
      while (!st.closed()) {
        ++states;
        const auto legal = legal_actions(st);
        for (int k = 0; k < 8; ++k) {
          const auto kind = static_cast<ActionKind>(k);
          const auto act = with_fresh_label(kind, rng, counter);
          bool ok = true;
          try {
            step(st, act);
          } catch (const MachineError&) {
            ok = false;
          }
          CHECK(ok == legal.contains(kind));
          CHECK(ok == illegal_reason(st, act).empty());
        }
        REQUIRE_FALSE(legal.empty());  // a live state always has a move
        std::vector<ActionKind> kinds(legal.begin(), legal.end());
        taken.push_back(with_fresh_label(kinds[draw(rng, kinds.size())], rng, counter));
        st = step(st, taken.back());
        REQUIRE(++steps < 1000);  // progress
      }
      // Replay is deterministic and yields a well-formed graph.
      const auto g = run(s, taken);
      CHECK(g == run(s, taken));
      if (!g.empty()) CHECK(g.has_node(g.root()));
      for (const auto& e : g.edges()) CHECK((g.has_node(e.source) && g.has_node(e.target)));
    }
    CHECK(states > 1000);
  }
}
