#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rsg/automata.hpp"
#include "rsg/game.hpp"

namespace rsg {

enum class CexKind { Positive, Negative, Existential, Universal };

std::string to_string(CexKind kind);

struct Counterexample {
  CexKind kind = CexKind::Positive;
  Word word;
  /// Successor set E({word}) for implications, trimmed and minimal; empty otherwise.
  Nfa consequent;

  static Counterexample positive(Word w) { return {CexKind::Positive, std::move(w), {}}; }
  static Counterexample negative(Word w) { return {CexKind::Negative, std::move(w), {}}; }
  static Counterexample existential(Word w, Nfa a) { return {CexKind::Existential, std::move(w), std::move(a)}; }
  static Counterexample universal(Word w, Nfa a) { return {CexKind::Universal, std::move(w), std::move(a)}; }

  bool is_implication() const { return kind == CexKind::Existential || kind == CexKind::Universal; }
};

/// nullopt stands for "yes".
using TeacherResponse = std::optional<Counterexample>;

std::string describe(const Counterexample& cex, const Alphabet& alphabet);

using Implication = std::pair<Word, Nfa>;

class Teacher {
 public:
  explicit Teacher(RationalSafetyGame game);

  const RationalSafetyGame& game() const { return game_; }
  const Alphabet& alphabet() const { return game_.alphabet; }

  std::optional<Word> check_initial(const Dfa& c) const;
  std::optional<Word> check_safe(const Dfa& c) const;
  std::optional<Implication> check_existential(const Dfa& c) const;
  std::optional<Implication> check_universal(const Dfa& c) const;
  /// Checks in the order initial, safe, existential, universal.
  TeacherResponse query(const Dfa& c) const;

  /// E({u}) as a trimmed minimal automaton.
  Nfa consequent(const Word& u) const;

 private:
  RationalSafetyGame game_;
  Transducer inverse_;
  Nfa vertices_;
};

}  // namespace rsg
