#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsg/errors.hpp"
#include "rsg/sat_learner.hpp"

using namespace rsg;

namespace {

std::optional<Model> solve(const Encoding& e) {
  CdclSolver solver;
  return solver.solve(to_cnf(e.formula));
}

bool satisfiable(const Sample& s, std::size_t n, std::size_t k) { return solve(build_formula(s, n, k)).has_value(); }

Sample pos_neg(std::vector<Word> pos, std::vector<Word> neg) {
  Sample s;
  for (auto& u : pos) s.insert(Counterexample::positive(u));
  for (auto& u : neg) s.insert(Counterexample::negative(u));
  return s;
}

}  // namespace

TEST_CASE("dfa constraints alone") {
  Sample empty;
  Encoding e = build_formula(empty, 1, 1);
  auto m = solve(e);
  REQUIRE(m.has_value());
  Dfa d = extract_dfa(*m, e.book);
  CHECK(d.state_count() == 1);
  CHECK(d.next(0, 0) == 0);
  CHECK(m->value(e.book.d(0, 0, 0)));
}

TEST_CASE("run constraints") {
  Sample empty;
  VarBook book(empty, 2, 2);
  PropFormula runs = build_run_constraints(book);
  REQUIRE(runs.roots().size() == 1);
  CHECK(runs.roots()[0] == runs.var(book.x(0, 0)));

  Sample s = pos_neg({{0}}, {});
  Encoding e = build_formula(s, 1, 1);
  auto m = solve(e);
  REQUIRE(m.has_value());
  CHECK(m->value(e.book.x(e.book.prefixes().node({0}), 0)));
}

TEST_CASE("runs in models match simulation") {
  std::mt19937 rng(61);
  for (int round = 0; round < 60; ++round) {
    Sample s = oracle::random_sample(rng, 2, 3, 2);
    for (std::size_t n = 1; n <= 3; ++n) {
      Encoding e = build_formula(s, n, 2);
      auto m = solve(e);
      if (!m) continue;
      Dfa d = extract_dfa(*m, e.book);
      const PrefixTree& tree = e.book.prefixes();
      for (std::size_t node = 0; node < tree.size(); ++node) {
        State q = 0;
        for (auto a : tree.word(node)) q = d.next(q, a);
        for (State r = 0; r < n; ++r) CHECK(m->value(e.book.x(node, r)) == (r == q));
      }
    }
  }
}

TEST_CASE("positive and negative words") {
  Sample eps = pos_neg({{}}, {});
  Encoding e = build_formula(eps, 1, 1);
  auto m = solve(e);
  REQUIRE(m.has_value());
  CHECK(m->value(e.book.f(0)));
  CHECK_FALSE(satisfiable(pos_neg({{}}, {{}}), 1, 1));

  Sample s = pos_neg({{0}}, {{0, 0}});
  Encoding e2 = build_formula(s, 2, 1);
  auto m2 = solve(e2);
  REQUIRE(m2.has_value());
  Dfa d = extract_dfa(*m2, e2.book);
  CHECK(accepts(d, {0}));
  CHECK_FALSE(accepts(d, {0, 0}));
  CHECK(oracle::any_dfa(1, 2, [&](const Dfa& x) { return oracle::consistent(x, s); }));
}

TEST_CASE("universal implications") {
  Sample s;
  s.insert(Counterexample::positive({}));
  s.insert(Counterexample::universal({}, word_automaton(2, {1})));
  Encoding e = build_formula(s, 1, 2);
  auto m = solve(e);
  REQUIRE(m.has_value());
  CHECK(accepts(extract_dfa(*m, e.book), {1}));

  s.insert(Counterexample::negative({1}));
  for (std::size_t n = 1; n <= 3; ++n) {
    CHECK_FALSE(satisfiable(s, n, 2));
    CHECK_FALSE(oracle::any_dfa(2, n, [&](const Dfa& d) { return oracle::consistent(d, s); }));
  }
  Sample none;
  CHECK(build_uni(VarBook(none, 2, 2), none).roots().empty());
}

TEST_CASE("existential implications") {
  Sample s;
  s.insert(Counterexample::positive({}));
  std::vector<Word> ab{{0}, {1}};
  s.insert(Counterexample::existential({}, finite_language(2, ab)));
  s.insert(Counterexample::negative({0}));
  Encoding e = build_formula(s, 2, 2);
  auto m = solve(e);
  REQUIRE(m.has_value());
  CHECK(accepts(extract_dfa(*m, e.book), {1}));
  CHECK_FALSE(oracle::any_dfa(2, 2, [&](const Dfa& d) { return oracle::consistent(d, s) && !accepts(d, {1}); }));

  Sample none;
  CHECK(build_ex(VarBook(none, 2, 2), none).roots().empty());

  Sample one;
  one.insert(Counterexample::existential({}, word_automaton(2, {0})));
  VarBook book(one, 3, 2);
  CHECK(book.bound(0) == 5);
}

TEST_CASE("example final sample is minimal at the conjecture size") {
  Sample s;
  s.insert(Counterexample::positive(fixture::word("sll")));
  std::vector<Word> cons{fixture::word("ell"), fixture::word("elll")};
  s.insert(Counterexample::existential(fixture::word("sll"), finite_language(3, cons)));
  CdclSolver solver;
  Dfa d = minimal_consistent_dfa(s, 3, solver);
  std::size_t n = d.state_count();
  CHECK(is_consistent(d, s));
  CHECK(satisfiable(s, n, 3));
  if (n > 1) CHECK_FALSE(satisfiable(s, n - 1, 3));
  CHECK(is_minimal_size(s, 3, n, solver));
}

TEST_CASE("contradictory sample is unsatisfiable") {
  Sample s = pos_neg({{}}, {{}});
  for (std::size_t n = 1; n <= 3; ++n) CHECK_FALSE(satisfiable(s, n, 2));
  CdclSolver solver;
  SatLearnerOptions options;
  options.n_cap = 3;
  CHECK_THROWS_AS(minimal_consistent_dfa(s, 2, solver, options), CapExceeded);
}

TEST_CASE("model extraction") {
  Sample empty;
  VarBook book(empty, 1, 1);
  Model m;
  m.values.assign(book.last() + 1, false);
  m.values[book.d(0, 0, 0)] = true;
  m.values[book.f(0)] = true;
  Dfa d = extract_dfa(m, book);
  CHECK(d.state_count() == 1);
  CHECK(d.is_accepting(0));
  m.values[book.d(0, 0, 0)] = false;
  CHECK_THROWS_AS(extract_dfa(m, book), InternalError);
}

TEST_CASE("minimal consistent dfa") {
  CdclSolver solver;
  CHECK(minimal_consistent_dfa(pos_neg({{0}}, {{}}), 2, solver).state_count() == 2);
  CHECK(minimal_consistent_dfa(Sample{}, 2, solver).state_count() == 1);
  Dfa flip = minimal_consistent_dfa(pos_neg({{0}}, {{0, 0}}), 1, solver);
  CHECK(flip.state_count() == 2);
  CHECK(flip.next(0, 0) == 1);
  CHECK(flip.next(1, 0) == 0);
  CHECK_FALSE(oracle::any_dfa(1, 1, [&](const Dfa& d) { return accepts(d, {0}) && !accepts(d, {0, 0}); }));
}

TEST_CASE("satisfiability matches exhaustive enumeration") {
  std::mt19937 rng(62);
  for (int round = 0; round < 40; ++round) {
    Sample s = oracle::random_sample(rng, 2, 3, 2);
    for (std::size_t n = 1; n <= 2; ++n) {
      Encoding e = build_formula(s, n, 2);
      auto m = solve(e);
      bool brute = oracle::any_dfa(2, n, [&](const Dfa& d) { return oracle::consistent(d, s); });
      REQUIRE(m.has_value() == brute);
      if (m) CHECK(is_consistent(extract_dfa(*m, e.book), s));
    }
  }
}
