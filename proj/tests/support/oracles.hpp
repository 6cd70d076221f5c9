#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/game.hpp"
#include "rsg/relations.hpp"
#include "rsg/sample.hpp"

namespace oracle {

using rsg::Dfa;
using rsg::Nfa;
using rsg::Transducer;
using rsg::Word;

// Plain recursive membership, no subset construction.
bool member(const Nfa& a, const Word& u);
bool member(const Dfa& d, const Word& u);
// Depth-first search over (state, read-in, read-out) configurations.
bool member_pair(const Transducer& t, const Word& u, const Word& v);

// Every word over k symbols of length <= max_len, shortlex.
std::vector<Word> all_words(std::size_t k, std::size_t max_len);

Nfa random_nfa(std::mt19937& rng, std::size_t k, std::size_t states, double density = 0.3);
Transducer random_transducer(std::mt19937& rng, std::size_t k, std::size_t states, double density = 0.25);
Nfa language_of(std::size_t k, const std::vector<Word>& words);

// Calls fn on every total DFA with n states over k symbols; stops when fn returns true.
bool any_dfa(std::size_t k, std::size_t n, const std::function<bool(const Dfa&)>& fn);

// Sample with every consequent listed as words up to a length bound.
struct ExpandedSample {
  std::vector<Word> pos;
  std::vector<Word> neg;
  std::vector<std::pair<Word, std::vector<Word>>> ex;
  std::vector<std::pair<Word, std::vector<Word>>> uni;
};
ExpandedSample expand(const rsg::Sample& s, std::size_t max_len);
bool consistent(const Dfa& d, const ExpandedSample& s);
// Consistency re-check by enumerating consequents up to length max_len.
bool consistent(const Dfa& d, const rsg::Sample& s, std::size_t max_len = 8);

struct ExplicitGame {
  std::size_t n = 0;
  std::vector<bool> player0;
  std::vector<bool> safe;
  std::vector<bool> initial;
  std::vector<std::vector<std::size_t>> succ;
};

// Greatest fixed point: safe vertices where Player 0 keeps some successor inside and
// Player 1 cannot leave.
std::vector<bool> winning_region(const ExplicitGame& g);
ExplicitGame from_finite(const rsg::FiniteGame& fg);

ExplicitGame random_game(std::mt19937& rng, std::size_t max_vertices);
// Vertex i becomes its base-b numeral of the given width, b the least base that fits.
// Width 1 uses tokens v0, v1, ..., wider numerals single letters.
rsg::RationalSafetyGame encode(const ExplicitGame& g, std::size_t width = 1);
Word vertex_word(const ExplicitGame& g, std::size_t i, std::size_t width = 1);

// Implications get random finite consequents with at most max_cons words.
rsg::Sample random_sample(std::mt19937& rng, std::size_t k, std::size_t max_len, std::size_t max_cons,
                          bool implications = true);

// Sample over {s,e,l} words written compactly, e.g. "sll".
Word w(const rsg::Alphabet& alphabet, const std::string& text);

}  // namespace oracle
