#pragma once

#include <cstdint>
#include <vector>

#include "rsg/automata.hpp"

namespace rsg {

/// Transducer label; kEpsilon marks an empty side.
using Label = std::int32_t;
inline constexpr Label kEpsilon = -1;

struct TransducerEdge {
  Label in;
  Label out;
  State target;
  auto operator<=>(const TransducerEdge&) const = default;
};

/// Finite automaton over (Σ ∪ {ε}) × (Σ ∪ {ε}). Both-ε edges act as silent moves.
class Transducer {
 public:
  Transducer() = default;
  explicit Transducer(std::size_t alphabet_size, std::size_t state_count = 1, State initial = 0);

  std::size_t alphabet_size() const { return alphabet_size_; }
  std::size_t state_count() const { return out_.size(); }
  State initial() const { return initial_; }
  bool is_accepting(State q) const { return accepting_[q]; }
  const std::vector<TransducerEdge>& out(State q) const { return out_[q]; }
  std::size_t transition_count() const;

  State add_state(bool accepting = false);
  void set_initial(State q);
  void set_accepting(State q, bool accepting = true);
  void add_transition(State from, Label in, Label out, State to);
  void normalize();

  /// Marks the relation as automatic. Throws if the shape does not fit: once a
  /// run uses ε on one track, that track stays ε (padding at the end only).
  void set_automatic(bool automatic);
  bool automatic() const { return automatic_; }

  bool operator==(const Transducer&) const = default;

 private:
  std::size_t alphabet_size_ = 0;
  State initial_ = 0;
  std::vector<std::vector<TransducerEdge>> out_;
  std::vector<bool> accepting_;
  bool automatic_ = false;
};

bool has_automatic_shape(const Transducer& t);

bool accepts_pair(const Transducer& t, const Word& u, const Word& v);
Transducer invert(const Transducer& t);
/// { v | ∃u ∈ L(x). (u, v) ∈ R(t) } as an ε-free, trimmed NFA.
Nfa image(const Transducer& t, const Nfa& x);
Nfa successors(const Transducer& t, const Word& u);

}  // namespace rsg
