#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsg/sample.hpp"
#include "rsg/solver.hpp"

using namespace rsg;
using fixture::word;

namespace {

Sample example_final_sample() {
  Sample s;
  s.insert(Counterexample::positive(word("sll")));
  std::vector<Word> cons{word("ell"), word("elll")};
  s.insert(Counterexample::existential(word("sll"), finite_language(3, cons)));
  return s;
}

}  // namespace

TEST_CASE("adding counterexamples") {
  Sample empty;
  Sample s = empty.add(Counterexample::positive(word("sll")));
  CHECK(empty.empty());
  CHECK(s.pos() == std::vector<Word>{word("sll")});
  Sample t = s.add(Counterexample::negative(word("e"))).add(Counterexample::negative(word("e")));
  CHECK(t.neg().size() == 1);
  CHECK_FALSE(t.insert(Counterexample::negative(word("e"))));
  CHECK(t.word_universe() == std::vector<Word>{word("e"), word("sll")});
}

TEST_CASE("consistency on the example") {
  Sample s = example_final_sample();
  CHECK(is_consistent(fixture::example_winning_set(), s));
  auto report = check_consistency(fixture::dfa_of(fixture::tag_at_least(fixture::S, 2)), s);
  CHECK_FALSE(report.consistent);
  CHECK(report.violated == CexKind::Existential);
  CHECK(is_consistent(Dfa(3, 1), Sample{}));
}

TEST_CASE("contradiction detection") {
  Sample a;
  a.insert(Counterexample::positive({0}));
  a.insert(Counterexample::negative({0}));
  CHECK(check_contradiction(a) == SampleStatus::Contradictory);

  Sample b;
  b.insert(Counterexample::positive({0}));
  b.insert(Counterexample::universal({0}, word_automaton(2, {1})));
  b.insert(Counterexample::negative({1}));
  CHECK(check_contradiction(b) == SampleStatus::Contradictory);

  CHECK(check_contradiction(example_final_sample()) == SampleStatus::Consistent);

  Sample c;
  c.insert(Counterexample::existential(word("s"), fixture::tag_at_least(fixture::E, 0)));
  CHECK(check_contradiction(c) == SampleStatus::Unknown);
}

TEST_CASE("chi encoding") {
  Sample s = example_final_sample();
  ChiEncoding chi = build_chi(s);
  CHECK(chi.universe == std::vector<Word>{word("sll"), word("ell"), word("elll")});
  CdclSolver solver;
  auto chosen = solve_chi(s, solver);
  REQUIRE(chosen.has_value());
  CHECK(std::find(chosen->begin(), chosen->end(), word("sll")) != chosen->end());
}

TEST_CASE("consistency agrees with brute force") {
  std::mt19937 rng(41);
  for (int round = 0; round < 150; ++round) {
    Sample s = oracle::random_sample(rng, 2, 3, 2);
    for (int j = 0; j < 10; ++j) {
      Dfa d = determinize(oracle::random_nfa(rng, 2, 3));
      REQUIRE(is_consistent(d, s) == oracle::consistent(d, s));
    }
  }
}

TEST_CASE("contradictory samples have no small consistent DFA") {
  std::mt19937 rng(43);
  int contradictory = 0;
  for (int round = 0; round < 120; ++round) {
    Sample s = oracle::random_sample(rng, 2, 2, 2);
    auto status = check_contradiction(s);
    CHECK(status != SampleStatus::Unknown);
    if (status != SampleStatus::Contradictory) continue;
    ++contradictory;
    for (std::size_t n = 1; n <= 3; ++n)
      CHECK_FALSE(oracle::any_dfa(2, n, [&](const Dfa& d) { return oracle::consistent(d, s); }));
  }
  CHECK(contradictory > 3);
}

TEST_CASE("dump format") {
  Sample s = example_final_sample();
  s.insert(Counterexample::negative(word("sl")));
  Alphabet sigma({"s", "e", "l"});
  std::string text = dump(s, sigma);
  CHECK(text == "+ sll\n- sl\nE sll -> ell elll\n");
  CHECK(compact({}, sigma) == "ε");
  CHECK(compact(word("sl"), Alphabet({"s", "e", "l"})) == "sl");
}
