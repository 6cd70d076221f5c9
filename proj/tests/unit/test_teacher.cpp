#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rsg/teacher.hpp"

using namespace rsg;
using fixture::word;

namespace {

std::vector<Word> words_of(const Nfa& a) { return enumerate_finite(a); }

Dfa sigma_star() {
  Dfa d(3, 1);
  d.set_accepting(0);
  return d;
}

}  // namespace

TEST_CASE("check 1: initial vertices") {
  Teacher t(fixture::example_game(2));
  CHECK(t.check_initial(Dfa(3, 1)) == word("sll"));
  CHECK_FALSE(t.check_initial(determinize(t.game().initial)).has_value());
  CHECK_FALSE(t.check_initial(sigma_star()).has_value());
}

TEST_CASE("check 2: safe vertices") {
  Teacher t(fixture::example_game(2));
  CHECK(t.check_safe(fixture::dfa_of(word_automaton(3, word("sl")))) == word("sl"));
  CHECK_FALSE(t.check_safe(fixture::dfa_of(word_automaton(3, word("sll")))).has_value());
  CHECK_FALSE(t.check_safe(determinize(t.game().safe)).has_value());
}

TEST_CASE("check 3: existential vertices") {
  Teacher t(fixture::example_game(2));
  auto e = t.check_existential(fixture::dfa_of(fixture::tag_at_least(fixture::S, 2)));
  REQUIRE(e.has_value());
  CHECK(e->first == word("sll"));
  CHECK(words_of(e->second) == std::vector<Word>{word("ell"), word("elll")});
  CHECK_FALSE(t.check_existential(Dfa(3, 1)).has_value());
  CHECK_FALSE(t.check_existential(fixture::example_winning_set()).has_value());
}

TEST_CASE("check 4: universal vertices") {
  Teacher t(fixture::example_game(2));
  Dfa c = fixture::dfa_of(unite(fixture::tag_at_least(fixture::S, 2), word_automaton(3, word("ell"))));
  auto u = t.check_universal(c);
  REQUIRE(u.has_value());
  CHECK(u->first == word("ell"));
  std::vector<Word> brute;
  for (const auto& v : oracle::all_words(3, 4))
    if (oracle::member_pair(t.game().edges, word("ell"), v)) brute.push_back(v);
  CHECK(brute == std::vector<Word>{word("sl"), word("sll")});
  CHECK(words_of(u->second) == brute);
  CHECK_FALSE(t.check_universal(fixture::dfa_of(fixture::tag_at_least(fixture::S, 0))).has_value());
  CHECK_FALSE(t.check_universal(fixture::example_winning_set()).has_value());
}

TEST_CASE("query follows the example trace") {
  Teacher t(fixture::example_game(2));
  auto r1 = t.query(Dfa(3, 1));
  REQUIRE(r1.has_value());
  CHECK(r1->kind == CexKind::Positive);
  CHECK(r1->word == word("sll"));
  auto r2 = t.query(fixture::dfa_of(fixture::tag_at_least(fixture::S, 2)));
  REQUIRE(r2.has_value());
  CHECK(r2->kind == CexKind::Existential);
  CHECK(r2->word == word("sll"));
  CHECK(words_of(r2->consequent) == std::vector<Word>{word("ell"), word("elll")});
  CHECK_FALSE(t.query(fixture::example_winning_set()).has_value());
  CHECK(describe(*r2, t.alphabet()).find("existential") != std::string::npos);
}

TEST_CASE("counterexamples are valid and deterministic") {
  Teacher t(fixture::example_game(2));
  const auto& g = t.game();
  std::mt19937 rng(31);
  auto words = oracle::all_words(3, 6);
  int seen[4] = {0, 0, 0, 0};
  for (int round = 0; round < 300; ++round) {
    Dfa c = determinize(oracle::random_nfa(rng, 3, 3, 0.35));
    auto r = t.query(c);
    CHECK(t.query(c).has_value() == r.has_value());
    if (!r) continue;
    ++seen[static_cast<int>(r->kind)];
    CHECK(t.query(c)->word == r->word);
    const Word& u = r->word;
    switch (r->kind) {
      case CexKind::Positive:
        CHECK(oracle::member(g.initial, u));
        CHECK_FALSE(oracle::member(c, u));
        break;
      case CexKind::Negative:
        CHECK(oracle::member(c, u));
        CHECK_FALSE(oracle::member(g.safe, u));
        break;
      case CexKind::Existential:
      case CexKind::Universal: {
        CHECK(oracle::member(c, u));
        bool existential = r->kind == CexKind::Existential;
        CHECK(oracle::member(existential ? g.v0 : g.v1, u));
        bool any_in = false, all_in = true;
        for (const auto& v : words) {
          bool succ = oracle::member_pair(g.edges, u, v);
          CHECK(accepts(r->consequent, v) == succ);
          if (succ) {
            any_in = any_in || oracle::member(c, v);
            all_in = all_in && oracle::member(c, v);
          }
        }
        if (existential) CHECK_FALSE(any_in);
        else CHECK_FALSE(all_in);
        break;
      }
    }
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
}
