#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/relations.hpp"

namespace rsg {

struct RationalSafetyGame {
  Alphabet alphabet;
  Nfa v0;
  Nfa v1;
  Transducer edges;
  Nfa safe;
  Nfa initial;
};

/// Throws InvariantViolation naming the broken invariant and a witness word.
void validate(const RationalSafetyGame& g);
/// Sum of the state counts of all five automata.
std::size_t game_size(const RationalSafetyGame& g);

RationalSafetyGame parse_game(std::string_view text);
std::string serialize(const RationalSafetyGame& g);
RationalSafetyGame load_game(const std::string& path);

/// `[alphabet]` plus one `[dfa]` automaton section.
std::string serialize_dfa(const Dfa& d, const Alphabet& alphabet);
/// Reads an `aut` file. Nondeterministic or partial sections are determinized.
Dfa parse_dfa(std::string_view text, const Alphabet& expected);
Dfa load_dfa(const std::string& path, const Alphabet& expected);

struct BenchmarkSpec {
  std::string name;
  std::map<std::string, long> params;
};

/// Families: example, interval, diagonal, box, solitary-box, evasion, follow, program-repair.
RationalSafetyGame generate_benchmark(const BenchmarkSpec& spec);
std::vector<std::string> benchmark_families();

/// Explicit game on all vertex words up to a length bound.
struct FiniteGame {
  std::vector<Word> vertices;
  std::vector<bool> player0;
  std::vector<bool> safe;
  std::vector<bool> initial;
  std::vector<std::vector<std::size_t>> successors;

  std::size_t edge_count() const;
  std::size_t index_of(const Word& w) const;  // vertices.size() if absent
};

FiniteGame finite_restriction(const RationalSafetyGame& g, std::size_t max_len);
std::string to_dot(const FiniteGame& fg, const Alphabet& alphabet, std::string_view name = "G");

}  // namespace rsg
