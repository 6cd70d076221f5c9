#pragma once

#include <string>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/game.hpp"

namespace fixture {

inline rsg::RationalSafetyGame example_game(long k = 2) {
  return rsg::generate_benchmark({"example", {{"k", k}}});
}

// Example alphabet order: s e l.
inline constexpr rsg::Symbol S = 0, E = 1, L = 2;

// {tag l^n | n >= min} over {s, e, l}.
inline rsg::Nfa tag_at_least(rsg::Symbol tag, std::size_t min) {
  rsg::Nfa a(3, 1);
  rsg::State q = a.add_state();
  a.add_transition(0, tag, q);
  for (std::size_t i = 0; i < min; ++i) {
    rsg::State next = a.add_state();
    a.add_transition(q, L, next);
    q = next;
  }
  a.add_transition(q, L, q);
  a.set_accepting(q);
  a.normalize();
  return a;
}

inline rsg::Dfa dfa_of(const rsg::Nfa& a) { return rsg::minimize(rsg::determinize(a)); }

// {s l^n | n >= 2} ∪ {e l^m | m >= 3}
inline rsg::Dfa example_winning_set() { return dfa_of(rsg::unite(tag_at_least(S, 2), tag_at_least(E, 3))); }

inline rsg::Word word(const std::string& text) {
  static const rsg::Alphabet sigma({"s", "e", "l"});
  return sigma.parse_word(text);
}

}  // namespace fixture
