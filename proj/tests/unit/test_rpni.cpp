#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsg/errors.hpp"
#include "rsg/rpni.hpp"

using namespace rsg;
using fixture::word;

TEST_CASE("prefix tree acceptor") {
  PartialDfa p = prefix_tree_acceptor(3, {word("s"), word("sll")});
  CHECK(p.state_count() == 4);
  CHECK_FALSE(p.is_accepting(0));
  CHECK(p.is_accepting(1));
  CHECK_FALSE(p.is_accepting(2));
  CHECK(p.is_accepting(3));
  CHECK(p.accepts(word("sll")));
  CHECK_FALSE(p.accepts(word("sl")));
  CHECK_FALSE(p.accepts(word("e")));
  PartialDfa none = prefix_tree_acceptor(3, {});
  CHECK(none.state_count() == 1);
  CHECK_FALSE(none.is_accepting(0));
  PartialDfa eps = prefix_tree_acceptor(3, {Word{}});
  CHECK(eps.state_count() == 1);
  CHECK(eps.is_accepting(0));
  Dfa total = p.complete();
  CHECK(total.state_count() == 5);
  CHECK(accepts(total, word("s")));
}

TEST_CASE("positive closure") {
  CdclSolver solver;
  Word u{0}, v{1}, w{0, 1};
  Sample a;
  a.insert(Counterexample::positive(u));
  a.insert(Counterexample::universal(u, word_automaton(2, v)));
  auto pa = choose_positive_closure(a, solver);
  CHECK(std::find(pa.begin(), pa.end(), u) != pa.end());
  CHECK(std::find(pa.begin(), pa.end(), v) != pa.end());

  Sample b;
  b.insert(Counterexample::positive(u));
  std::vector<Word> vw{v, w};
  b.insert(Counterexample::existential(u, finite_language(2, vw)));
  b.insert(Counterexample::negative(v));
  CHECK(choose_positive_closure(b, solver) == std::vector<Word>{u, w});

  CHECK(choose_positive_closure(Sample{}, solver).empty());

  Sample c;
  c.insert(Counterexample::positive(u));
  c.insert(Counterexample::negative(u));
  CHECK_THROWS_AS(choose_positive_closure(c, solver), Contradiction);
  Sample d;
  d.insert(Counterexample::existential(u, fixture::tag_at_least(fixture::S, 0)));
  CHECK_THROWS_AS(choose_positive_closure(d, solver), InfiniteLanguage);
}

TEST_CASE("merging") {
  CdclSolver solver;
  Sample a;
  for (Word x : {Word{}, Word{0}, Word{0, 0}}) a.insert(Counterexample::positive(x));
  Dfa da = merge_learn(a, 1, solver);
  CHECK(da.state_count() == 1);
  CHECK(da.is_accepting(0));

  Sample b;
  b.insert(Counterexample::positive({0}));
  b.insert(Counterexample::negative({}));
  MergeResult rb = merge_learn_detailed(b, 1, solver);
  CHECK(rb.quotient.state_count() == 2);
  CHECK(rb.dfa.state_count() == 3);
}

TEST_CASE("merge learner structural properties") {
  std::mt19937 rng(71);
  CdclSolver solver;
  for (int round = 0; round < 60; ++round) {
    Sample s = oracle::random_sample(rng, 2, 4, 2, false);
    if (check_contradiction(s) == SampleStatus::Contradictory) continue;
    bool kept_ok = true;
    MergeTrace trace{[&](const PartialDfa& q) { kept_ok = kept_ok && is_consistent(q.complete(), s); }};
    MergeResult r = merge_learn_detailed(s, 2, solver, trace);
    CHECK(kept_ok);
    CHECK(oracle::consistent(r.dfa, s, 6));
    std::vector<Word> pos = choose_positive_closure(s, solver);
    CHECK(r.quotient.state_count() <= prefix_tree_acceptor(2, pos).state_count());
  }
}

TEST_CASE("merge learner with implications") {
  std::mt19937 rng(72);
  CdclSolver solver;
  int solved = 0;
  for (int round = 0; round < 60; ++round) {
    Sample s = oracle::random_sample(rng, 2, 3, 2);
    if (check_contradiction(s) == SampleStatus::Contradictory) {
      CHECK_THROWS_AS(merge_learn(s, 2, solver), Contradiction);
      continue;
    }
    ++solved;
    CHECK(oracle::consistent(merge_learn(s, 2, solver), s));
  }
  CHECK(solved > 10);
}

TEST_CASE("consistent DFAs may need more than |V| states") {
  // V = {b, bbb}; a DFA must tell ε, b and bb apart.
  Sample s;
  s.insert(Counterexample::positive({1, 1, 1}));
  s.insert(Counterexample::negative({1}));
  CdclSolver solver;
  MergeResult r = merge_learn_detailed(s, 2, solver);
  CHECK(r.universe_size == 2);
  CHECK(r.quotient.state_count() == 3);
  CHECK(is_consistent(r.dfa, s));
  CHECK_FALSE(oracle::any_dfa(2, 2, [&](const Dfa& d) { return oracle::consistent(d, s); }));
}
