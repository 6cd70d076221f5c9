#include "rsg/sample.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "rsg/errors.hpp"

namespace rsg {

namespace {

bool insert_word(std::vector<Word>& list, const Word& w) {
  if (std::find(list.begin(), list.end(), w) != list.end()) return false;
  list.push_back(w);
  return true;
}

bool insert_implication(std::vector<ImplicationItem>& list, const Word& u, const Nfa& a) {
  Dfa canonical = minimize(determinize(a));
  for (const auto& item : list) {
    if (item.antecedent == u && item.canonical == canonical) return false;
  }
  list.push_back({u, trim(a), std::move(canonical)});
  return true;
}

}  // namespace

bool Sample::insert(const Counterexample& cex) {
  switch (cex.kind) {
    case CexKind::Positive: return insert_word(pos_, cex.word);
    case CexKind::Negative: return insert_word(neg_, cex.word);
    case CexKind::Existential: return insert_implication(ex_, cex.word, cex.consequent);
    case CexKind::Universal: return insert_implication(uni_, cex.word, cex.consequent);
  }
  return false;
}

Sample Sample::add(const Counterexample& cex) const {
  Sample next = *this;
  next.insert(cex);
  return next;
}

std::vector<Word> Sample::word_universe() const {
  std::vector<Word> words = pos_;
  words.insert(words.end(), neg_.begin(), neg_.end());
  for (const auto& item : ex_) words.push_back(item.antecedent);
  for (const auto& item : uni_) words.push_back(item.antecedent);
  std::sort(words.begin(), words.end(), ShortlexLess{});
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

bool Sample::consequents_finite() const {
  for (const auto* list : {&ex_, &uni_}) {
    for (const auto& item : *list) {
      if (!is_finite(item.consequent)) return false;
    }
  }
  return true;
}

ConsistencyReport check_consistency(const Dfa& d, const Sample& s) {
  auto fail = [](CexKind kind, std::size_t index, std::string message) {
    ConsistencyReport r;
    r.consistent = false;
    r.violated = kind;
    r.index = index;
    r.message = std::move(message);
    return r;
  };
  for (std::size_t i = 0; i < s.pos().size(); ++i) {
    if (!accepts(d, s.pos()[i])) return fail(CexKind::Positive, i, "positive word rejected");
  }
  for (std::size_t i = 0; i < s.neg().size(); ++i) {
    if (accepts(d, s.neg()[i])) return fail(CexKind::Negative, i, "negative word accepted");
  }
  for (std::size_t i = 0; i < s.ex().size(); ++i) {
    const auto& item = s.ex()[i];
    if (accepts(d, item.antecedent) && !intersects(d, item.consequent)) {
      return fail(CexKind::Existential, i, "antecedent accepted but no consequent accepted");
    }
  }
  for (std::size_t i = 0; i < s.uni().size(); ++i) {
    const auto& item = s.uni()[i];
    if (accepts(d, item.antecedent) && !included_in(item.consequent, d)) {
      return fail(CexKind::Universal, i, "antecedent accepted but some consequent rejected");
    }
  }
  return {};
}

bool is_consistent(const Dfa& d, const Sample& s) { return check_consistency(d, s).consistent; }

ChiEncoding build_chi(const Sample& s) {
  std::vector<std::vector<Word>> ex_words, uni_words;
  std::vector<Word> universe = s.word_universe();
  auto expand = [&](const std::vector<ImplicationItem>& items, std::vector<std::vector<Word>>& out) {
    for (const auto& item : items) {
      out.push_back(enumerate_finite(item.consequent));
      universe.insert(universe.end(), out.back().begin(), out.back().end());
    }
  };
  expand(s.ex(), ex_words);
  expand(s.uni(), uni_words);
  std::sort(universe.begin(), universe.end(), ShortlexLess{});
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

  ChiEncoding chi;
  chi.universe = universe;
  auto id = [&](const Word& w) {
    auto it = std::lower_bound(universe.begin(), universe.end(), w, ShortlexLess{});
    return static_cast<Lit>(it - universe.begin()) + 1;
  };
  chi.formula.reserve_vars(static_cast<Var>(universe.size()));
  for (const Word& w : s.pos()) chi.formula.require_clause({id(w)});
  for (const Word& w : s.neg()) chi.formula.require_clause({-id(w)});
  for (std::size_t i = 0; i < s.ex().size(); ++i) {
    std::vector<Lit> clause{-id(s.ex()[i].antecedent)};
    for (const Word& v : ex_words[i]) clause.push_back(id(v));
    chi.formula.require_clause(clause);
  }
  for (std::size_t i = 0; i < s.uni().size(); ++i) {
    for (const Word& v : uni_words[i]) chi.formula.require_clause({-id(s.uni()[i].antecedent), id(v)});
  }
  return chi;
}

std::optional<std::vector<Word>> solve_chi(const Sample& s, SatBackend& backend, const StopToken& stop) {
  ChiEncoding chi = build_chi(s);
  CnfInstance cnf = to_cnf(chi.formula);
  auto model = backend.solve(cnf, stop);
  if (!model) return std::nullopt;
  std::vector<Word> chosen;
  for (std::size_t i = 0; i < chi.universe.size(); ++i) {
    if (model->value(static_cast<Var>(i + 1))) chosen.push_back(chi.universe[i]);
  }
  return chosen;
}

std::string to_string(SampleStatus status) {
  switch (status) {
    case SampleStatus::Consistent: return "consistent";
    case SampleStatus::Contradictory: return "contradictory";
    case SampleStatus::Unknown: return "unknown";
  }
  return "?";
}

SampleStatus check_contradiction(const Sample& s, SatBackend& backend, const StopToken& stop) {
  if (!s.consequents_finite()) return SampleStatus::Unknown;
  return solve_chi(s, backend, stop) ? SampleStatus::Consistent : SampleStatus::Contradictory;
}

SampleStatus check_contradiction(const Sample& s) {
  CdclSolver solver;
  return check_contradiction(s, solver);
}

std::string compact(const Word& w, const Alphabet& alphabet) {
  if (w.empty()) return "ε";
  bool single = std::all_of(w.begin(), w.end(), [&](Symbol a) { return alphabet.symbol(a).size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !single) out += '.';
    out += alphabet.symbol(w[i]);
  }
  return out;
}

std::string dump(const Sample& s, const Alphabet& alphabet) {
  std::ostringstream out;
  for (const Word& w : s.pos()) out << "+ " << compact(w, alphabet) << '\n';
  for (const Word& w : s.neg()) out << "- " << compact(w, alphabet) << '\n';
  auto implications = [&](char tag, const std::vector<ImplicationItem>& items) {
    for (const auto& item : items) {
      out << tag << ' ' << compact(item.antecedent, alphabet) << " ->";
      if (is_finite(item.consequent)) {
        for (const Word& v : enumerate_finite(item.consequent)) out << ' ' << compact(v, alphabet);
      } else {
        out << " <automaton, " << item.consequent.state_count() << " states>";
      }
      out << '\n';
    }
  };
  implications('E', s.ex());
  implications('U', s.uni());
  return out.str();
}

}  // namespace rsg
