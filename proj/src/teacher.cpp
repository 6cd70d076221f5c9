#include "rsg/teacher.hpp"

#include "rsg/errors.hpp"

namespace rsg {

std::string to_string(CexKind kind) {
  switch (kind) {
    case CexKind::Positive: return "positive";
    case CexKind::Negative: return "negative";
    case CexKind::Existential: return "existential";
    case CexKind::Universal: return "universal";
  }
  return "?";
}

std::string describe(const Counterexample& cex, const Alphabet& alphabet) {
  std::string text = to_string(cex.kind) + " " + alphabet.format(cex.word);
  if (cex.is_implication()) {
    text += " ->";
    if (is_finite(cex.consequent)) {
      auto words = enumerate_finite(cex.consequent);
      if (words.empty()) text += " (none)";
      for (const Word& w : words) text += " {" + alphabet.format(w) + "}";
    } else {
      text += " (infinite set, " + std::to_string(cex.consequent.state_count()) + " states)";
    }
  }
  return text;
}

Teacher::Teacher(RationalSafetyGame game)
    : game_(std::move(game)), inverse_(invert(game_.edges)), vertices_(unite(game_.v0, game_.v1)) {}

Nfa Teacher::consequent(const Word& u) const {
  return trim(minimize(determinize(successors(game_.edges, u))).to_nfa());
}

std::optional<Word> Teacher::check_initial(const Dfa& c) const {
  return shortest_word(difference(game_.initial, c));
}

std::optional<Word> Teacher::check_safe(const Dfa& c) const {
  return shortest_word(difference(trim(c.to_nfa()), game_.safe));
}

std::optional<Implication> Teacher::check_existential(const Dfa& c) const {
  Nfa conj = trim(c.to_nfa());
  if (is_empty(conj)) return std::nullopt;
  Nfa b1 = image(inverse_, conj);
  Nfa b2 = difference(game_.v0, b1);
  Nfa b3 = intersect(conj, b2);
  auto u = shortest_word(b3);
  if (!u) return std::nullopt;
  return Implication{*u, consequent(*u)};
}

std::optional<Implication> Teacher::check_universal(const Dfa& c) const {
  Nfa conj = trim(c.to_nfa());
  if (is_empty(conj)) return std::nullopt;
  Nfa b1 = difference(vertices_, c);
  Nfa b2 = image(inverse_, b1);
  Nfa b3 = intersect(intersect(game_.v1, conj), b2);
  auto u = shortest_word(b3);
  if (!u) return std::nullopt;
  return Implication{*u, consequent(*u)};
}

TeacherResponse Teacher::query(const Dfa& c) const {
  if (c.alphabet_size() != game_.alphabet.size()) throw AlphabetMismatch("conjecture alphabet differs from the game");
  if (auto u = check_initial(c)) return Counterexample::positive(*u);
  if (auto u = check_safe(c)) return Counterexample::negative(*u);
  if (auto e = check_existential(c)) return Counterexample::existential(e->first, e->second);
  if (auto e = check_universal(c)) return Counterexample::universal(e->first, e->second);
  return std::nullopt;
}

}  // namespace rsg
