#include "rsg/relations.hpp"

#include <algorithm>
#include <tuple>
#include <unordered_map>

#include "rsg/errors.hpp"

namespace rsg {

Transducer::Transducer(std::size_t alphabet_size, std::size_t state_count, State initial)
    : alphabet_size_(alphabet_size), initial_(initial), out_(state_count), accepting_(state_count, false) {
  if (state_count == 0) throw Error("a transducer needs at least one state");
  if (initial >= state_count) throw Error("initial state out of range");
}

std::size_t Transducer::transition_count() const {
  std::size_t n = 0;
  for (const auto& edges : out_) n += edges.size();
  return n;
}

State Transducer::add_state(bool accepting) {
  out_.emplace_back();
  accepting_.push_back(accepting);
  return static_cast<State>(out_.size() - 1);
}

void Transducer::set_initial(State q) {
  if (q >= out_.size()) throw Error("initial state out of range");
  initial_ = q;
}

void Transducer::set_accepting(State q, bool accepting) {
  if (q >= out_.size()) throw Error("accepting state out of range");
  accepting_[q] = accepting;
}

void Transducer::add_transition(State from, Label in, Label out, State to) {
  if (from >= out_.size() || to >= out_.size()) throw Error("transition endpoint out of range");
  auto valid = [&](Label l) { return l == kEpsilon || (l >= 0 && static_cast<std::size_t>(l) < alphabet_size_); };
  if (!valid(in) || !valid(out)) throw InvalidWord("transducer label out of range");
  out_[from].push_back({in, out, to});
  if (automatic_ && !has_automatic_shape(*this)) {
    out_[from].pop_back();
    throw Error("transition breaks the automatic shape of the relation");
  }
}

void Transducer::normalize() {
  for (auto& edges : out_) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
}

void Transducer::set_automatic(bool automatic) {
  if (automatic && !has_automatic_shape(*this)) throw Error("relation is not in automatic (end-padded) shape");
  automatic_ = automatic;
}

bool has_automatic_shape(const Transducer& t) {
  // Modes: 0 both tracks live, 1 input exhausted, 2 output exhausted.
  std::vector<std::uint8_t> seen(t.state_count(), 0);
  std::vector<std::pair<State, int>> stack{{t.initial(), 0}};
  seen[t.initial()] |= 1;
  while (!stack.empty()) {
    auto [q, mode] = stack.back();
    stack.pop_back();
    for (const TransducerEdge& e : t.out(q)) {
      int next = mode;
      if (e.in == kEpsilon && e.out != kEpsilon) {
        if (mode == 2) return false;
        next = 1;
      } else if (e.in != kEpsilon && e.out == kEpsilon) {
        if (mode == 1) return false;
        next = 2;
      } else if (e.in != kEpsilon && e.out != kEpsilon) {
        if (mode != 0) return false;
      }
      std::uint8_t bit = static_cast<std::uint8_t>(1u << next);
      if (!(seen[e.target] & bit)) {
        seen[e.target] |= bit;
        stack.emplace_back(e.target, next);
      }
    }
  }
  return true;
}

bool accepts_pair(const Transducer& t, const Word& u, const Word& v) {
  for (const Word* w : {&u, &v}) {
    for (Symbol a : *w) {
      if (a >= t.alphabet_size()) throw InvalidWord("symbol index out of range");
    }
  }
  const std::size_t width = v.size() + 1;
  const std::size_t layer = (u.size() + 1) * width;
  std::vector<bool> seen(t.state_count() * layer, false);
  auto index = [&](State q, std::size_t i, std::size_t j) { return q * layer + i * width + j; };
  std::vector<std::tuple<State, std::size_t, std::size_t>> stack{{t.initial(), 0, 0}};
  seen[index(t.initial(), 0, 0)] = true;
  while (!stack.empty()) {
    auto [q, i, j] = stack.back();
    stack.pop_back();
    if (i == u.size() && j == v.size() && t.is_accepting(q)) return true;
    for (const TransducerEdge& e : t.out(q)) {
      std::size_t ni = i, nj = j;
      if (e.in != kEpsilon) {
        if (i == u.size() || u[i] != static_cast<Symbol>(e.in)) continue;
        ++ni;
      }
      if (e.out != kEpsilon) {
        if (j == v.size() || v[j] != static_cast<Symbol>(e.out)) continue;
        ++nj;
      }
      std::size_t k = index(e.target, ni, nj);
      if (!seen[k]) {
        seen[k] = true;
        stack.emplace_back(e.target, ni, nj);
      }
    }
  }
  return false;
}

Transducer invert(const Transducer& t) {
  Transducer r(t.alphabet_size(), t.state_count(), t.initial());
  for (State q = 0; q < t.state_count(); ++q) {
    r.set_accepting(q, t.is_accepting(q));
    for (const TransducerEdge& e : t.out(q)) r.add_transition(q, e.out, e.in, e.target);
  }
  if (t.automatic()) r.set_automatic(true);
  return r;
}

Nfa image(const Transducer& t, const Nfa& x) {
  if (t.alphabet_size() != x.alphabet_size()) throw AlphabetMismatch("transducer and automaton alphabets differ");

  // Product of x with the input track; edges are labelled by the output (ε = -1).
  struct LabelledEdge {
    Label label;
    State target;
  };
  std::vector<std::pair<State, State>> pairs{{x.initial(), t.initial()}};
  std::unordered_map<std::uint64_t, State> ids{{(std::uint64_t{x.initial()} << 32) | t.initial(), 0}};
  std::vector<std::vector<LabelledEdge>> edges(1);
  auto intern = [&](State qx, State qt) {
    auto [it, inserted] = ids.emplace((std::uint64_t{qx} << 32) | qt, static_cast<State>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(qx, qt);
      edges.emplace_back();
    }
    return it->second;
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qx, qt] = pairs[i];
    for (const TransducerEdge& e : t.out(qt)) {
      if (e.in == kEpsilon) {
        State target = intern(qx, e.target);
        edges[i].push_back({e.out, target});
        continue;
      }
      for (const Edge& ex : x.out(qx)) {
        if (ex.symbol != static_cast<Symbol>(e.in)) continue;
        State target = intern(ex.target, e.target);
        edges[i].push_back({e.out, target});
      }
    }
  }

  const std::size_t n = pairs.size();
  std::vector<bool> accepting(n);
  for (std::size_t i = 0; i < n; ++i) accepting[i] = x.is_accepting(pairs[i].first) && t.is_accepting(pairs[i].second);

  // ε-elimination by closure.
  Nfa result(x.alphabet_size(), n, 0);
  std::vector<State> closure;
  std::vector<std::size_t> stamp(n, static_cast<std::size_t>(-1));
  for (std::size_t p = 0; p < n; ++p) {
    closure.assign(1, static_cast<State>(p));
    stamp[p] = p;
    for (std::size_t c = 0; c < closure.size(); ++c) {
      for (const LabelledEdge& e : edges[closure[c]]) {
        if (e.label == kEpsilon && stamp[e.target] != p) {
          stamp[e.target] = p;
          closure.push_back(e.target);
        }
      }
    }
    for (State c : closure) {
      if (accepting[c]) result.set_accepting(static_cast<State>(p));
      for (const LabelledEdge& e : edges[c]) {
        if (e.label != kEpsilon) result.add_transition(static_cast<State>(p), static_cast<Symbol>(e.label), e.target);
      }
    }
  }
  result.normalize();
  return trim(result);
}

Nfa successors(const Transducer& t, const Word& u) { return image(t, word_automaton(t.alphabet_size(), u)); }

}  // namespace rsg
