#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rsg {

using Symbol = std::uint32_t;
using State = std::uint32_t;

/// A finite word as a sequence of symbol indices into an Alphabet.
using Word = std::vector<Symbol>;

/// Shortlex order: shorter words first, equal lengths compared symbol by symbol.
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

/// Ordered list of distinct printable tokens. The reserved token "_" denotes ε in files.
class Alphabet {
 public:
  static constexpr std::string_view kEpsilonToken = "_";

  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  std::size_t size() const { return symbols_.size(); }
  const std::string& symbol(Symbol a) const { return symbols_.at(a); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::optional<Symbol> find(std::string_view token) const;

  /// Parses whitespace separated tokens. A chunk that is not a token but splits into
  /// single-character tokens is accepted too, so "sll" reads like "s l l".
  Word parse_word(std::string_view text) const;
  /// Space separated tokens; the empty word prints as "ε".
  std::string format(const Word& word) const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Symbol> index_;
};

struct Edge {
  Symbol symbol;
  State target;
  auto operator<=>(const Edge&) const = default;
};

/// ε-free nondeterministic automaton over symbols 0 .. alphabet_size-1.
class Nfa {
 public:
  Nfa() = default;
  explicit Nfa(std::size_t alphabet_size, std::size_t state_count = 1, State initial = 0);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t state_count() const { return out_.size(); }
  State initial() const { return initial_; }
  bool is_accepting(State q) const { return accepting_[q]; }
  const std::vector<Edge>& out(State q) const { return out_[q]; }
  std::size_t transition_count() const;
  std::vector<State> accepting_states() const;

  State add_state(bool accepting = false);
  void set_initial(State q);
  void set_accepting(State q, bool accepting = true);
  void add_transition(State from, Symbol symbol, State to);
  /// Sorts and deduplicates every out-list.
  void normalize();

 private:
  std::size_t alphabet_size_ = 0;
  State initial_ = 0;
  std::vector<std::vector<Edge>> out_;
  std::vector<bool> accepting_;
};

/// Total deterministic automaton with initial state 0.
class Dfa {
 public:
  Dfa() = default;
  /// All transitions initially lead to state 0, nothing accepts.
  Dfa(std::size_t alphabet_size, std::size_t state_count);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t state_count() const { return accepting_.size(); }
  static constexpr State initial() { return 0; }
  State next(State q, Symbol a) const { return delta_[q * alphabet_size_ + a]; }
  bool is_accepting(State q) const { return accepting_[q]; }

  void set_next(State q, Symbol a, State to);
  void set_accepting(State q, bool accepting = true);
  State add_state(bool accepting = false);

  Nfa to_nfa() const;

  bool operator==(const Dfa&) const = default;

 private:
  std::size_t alphabet_size_ = 0;
  std::vector<State> delta_;
  std::vector<bool> accepting_;
};

// Membership. Throws InvalidWord for out-of-range symbols.
bool accepts(const Nfa& a, const Word& u);
bool accepts(const Dfa& d, const Word& u);

// Constructors for common languages.
Nfa empty_language(std::size_t alphabet_size);
Nfa universal_language(std::size_t alphabet_size);
Nfa word_automaton(std::size_t alphabet_size, const Word& u);
/// Trie-shaped automaton accepting exactly `words`.
Nfa finite_language(std::size_t alphabet_size, std::span<const Word> words);

/// Subset construction; the empty subset serves as the rejecting sink.
Dfa determinize(const Nfa& a);
Dfa complement(const Dfa& d);
Nfa intersect(const Nfa& a, const Nfa& b);
Nfa unite(const Nfa& a, const Nfa& b);
/// L(a) \ L(b), computed as intersect(a, complement(determinize(b))).
Nfa difference(const Nfa& a, const Nfa& b);
/// L(a) \ L(d) without re-determinizing an already deterministic subtrahend.
Nfa difference(const Nfa& a, const Dfa& d);

/// Drops states that are unreachable or cannot reach an accepting state.
Nfa trim(const Nfa& a);
bool is_empty(const Nfa& a);
bool is_empty(const Dfa& d);
bool is_subset(const Nfa& a, const Nfa& b);
bool intersects(const Dfa& d, const Nfa& a);
bool included_in(const Nfa& a, const Dfa& d);

/// Shortlex-least accepted word, or nullopt for the empty language.
std::optional<Word> shortest_word(const Nfa& a);

bool is_finite(const Nfa& a);
/// All accepted words in shortlex order. Throws InfiniteLanguage.
std::vector<Word> enumerate_finite(const Nfa& a);
/// All accepted words of length at most max_len, shortlex ordered.
std::vector<Word> enumerate_up_to(const Nfa& a, std::size_t max_len);

/// Minimal equivalent DFA with states renumbered in breadth-first order.
Dfa minimize(const Dfa& d);
bool equivalent(const Dfa& a, const Dfa& b);
bool equivalent(const Nfa& a, const Nfa& b);

/// Graphviz rendering; accepting states are drawn as double circles.
std::string to_dot(const Nfa& a, const Alphabet& alphabet, std::string_view name = "A");
std::string to_dot(const Dfa& d, const Alphabet& alphabet, std::string_view name = "A");

}  // namespace rsg
