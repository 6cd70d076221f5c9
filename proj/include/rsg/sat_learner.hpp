#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/logic.hpp"
#include "rsg/sample.hpp"
#include "rsg/solver.hpp"

namespace rsg {

/// Trie of Pref(W); node 0 is ε.
class PrefixTree {
 public:
  PrefixTree() : parent_{0}, symbol_{0} {}
  explicit PrefixTree(const std::vector<Word>& words);

  std::size_t size() const { return parent_.size(); }
  std::size_t parent(std::size_t node) const { return parent_[node]; }
  Symbol symbol(std::size_t node) const { return symbol_[node]; }
  /// Node of a word that was inserted (or one of its prefixes).
  std::size_t node(const Word& w) const;
  Word word(std::size_t node) const;

 private:
  std::vector<std::size_t> parent_;
  std::vector<Symbol> symbol_;
  std::map<std::pair<std::size_t, Symbol>, std::size_t> child_;
};

/// Variable numbering for one (sample, n) encoding. Families occupy disjoint ranges:
/// d, f, x, then y per universal and z per existential implication.
class VarBook {
 public:
  VarBook(const Sample& s, std::size_t n, std::size_t alphabet_size);

  std::size_t n() const { return n_; }
  std::size_t alphabet_size() const { return k_; }
  const PrefixTree& prefixes() const { return prefixes_; }
  /// False for an empty word universe W, where Pref(W) is empty too.
  bool has_words() const { return has_words_; }

  Var d(State p, Symbol a, State q) const { return static_cast<Var>(1 + (p * k_ + a) * n_ + q); }
  Var f(State q) const { return static_cast<Var>(f_base_ + q); }
  Var x(std::size_t prefix, State q) const { return static_cast<Var>(x_base_ + prefix * n_ + q); }
  Var y(std::size_t iota, State q, State qa) const {
    return static_cast<Var>(y_base_[iota] + q * uni_states_[iota] + qa);
  }
  Var z(std::size_t iota, State q, State qa, std::size_t layer) const {
    return static_cast<Var>(z_base_[iota] + (layer * n_ + q) * ex_states_[iota] + qa);
  }
  /// Layer bound n·|Q_A| − 1 of an existential implication.
  std::size_t bound(std::size_t iota) const { return n_ * ex_states_[iota] - 1; }
  /// Highest id; auxiliaries are numbered above it.
  Var last() const { return last_; }

 private:
  std::size_t n_;
  std::size_t k_;
  PrefixTree prefixes_;
  bool has_words_ = false;
  Var f_base_;
  Var x_base_;
  std::vector<Var> y_base_;
  std::vector<std::size_t> uni_states_;
  std::vector<Var> z_base_;
  std::vector<std::size_t> ex_states_;
  Var last_;
};

PropFormula build_dfa_constraints(const VarBook& book);
PropFormula build_run_constraints(const VarBook& book);
PropFormula build_pos(const VarBook& book, const Sample& s);
PropFormula build_neg(const VarBook& book, const Sample& s);
PropFormula build_uni(const VarBook& book, const Sample& s);
PropFormula build_ex(const VarBook& book, const Sample& s);

struct Encoding {
  VarBook book;
  PropFormula formula;
};
/// φ_n for the sample: conjunction of all constraint families over one VarBook.
Encoding build_formula(const Sample& s, std::size_t n, std::size_t alphabet_size);

/// Definition of the DFA induced by a model. Throws InternalError on a non-functional d.
Dfa extract_dfa(const Model& m, const VarBook& book);

struct SatLearnerOptions {
  std::size_t n_cap = 32;
  std::size_t start_n = 1;
};

/// Least n with satisfiable φ_n, tried one at a time. Throws CapExceeded past n_cap.
Dfa minimal_consistent_dfa(const Sample& s, std::size_t alphabet_size, SatBackend& backend,
                           const SatLearnerOptions& options = {}, const StopToken& stop = {});

/// True when no DFA with n − 1 states is consistent with s.
bool is_minimal_size(const Sample& s, std::size_t alphabet_size, std::size_t n, SatBackend& backend,
                     const StopToken& stop = {});

}  // namespace rsg
