#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/sample.hpp"
#include "rsg/solver.hpp"

namespace rsg {

/// DFA whose transition function may be undefined; missing transitions reject.
class PartialDfa {
 public:
  static constexpr State kNone = static_cast<State>(-1);

  PartialDfa() = default;
  PartialDfa(std::size_t alphabet_size, std::size_t state_count);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t state_count() const { return accepting_.size(); }
  State next(State q, Symbol a) const { return delta_[q * alphabet_size_ + a]; }
  bool is_accepting(State q) const { return accepting_[q]; }
  void set_next(State q, Symbol a, State to) { delta_[q * alphabet_size_ + a] = to; }
  void set_accepting(State q, bool accepting = true) { accepting_[q] = accepting; }

  bool accepts(const Word& u) const;
  /// Total DFA; a rejecting sink is added only when some transition is missing.
  Dfa complete() const;

 private:
  std::size_t alphabet_size_ = 0;
  std::vector<State> delta_;
  std::vector<bool> accepting_;
};

/// Tree-shaped acceptor of exactly `words`; states are the prefixes in shortlex order.
PartialDfa prefix_tree_acceptor(std::size_t alphabet_size, const std::vector<Word>& words);

/// Pos' from the first model of χ. Throws InfiniteLanguage or Contradiction.
std::vector<Word> choose_positive_closure(const Sample& s, SatBackend& backend, const StopToken& stop = {});

struct MergeTrace {
  /// Called with every quotient that passed the test and was kept.
  std::function<void(const PartialDfa&)> on_kept;
};

struct MergeResult {
  PartialDfa quotient;
  Dfa dfa;
  std::size_t universe_size = 0;  // |V| of χ
};

MergeResult merge_learn_detailed(const Sample& s, std::size_t alphabet_size, SatBackend& backend,
                                 const MergeTrace& trace = {}, const StopToken& stop = {});
Dfa merge_learn(const Sample& s, std::size_t alphabet_size, SatBackend& backend, const StopToken& stop = {});

}  // namespace rsg
