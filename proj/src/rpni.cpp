#include "rsg/rpni.hpp"

#include <algorithm>
#include <deque>

#include "rsg/errors.hpp"

namespace rsg {

PartialDfa::PartialDfa(std::size_t alphabet_size, std::size_t state_count)
    : alphabet_size_(alphabet_size), delta_(alphabet_size * state_count, kNone), accepting_(state_count, false) {}

bool PartialDfa::accepts(const Word& u) const {
  State q = 0;
  for (Symbol a : u) {
    if (a >= alphabet_size_) throw InvalidWord("symbol index out of range");
    q = next(q, a);
    if (q == kNone) return false;
  }
  return accepting_[q];
}

Dfa PartialDfa::complete() const {
  bool partial = std::find(delta_.begin(), delta_.end(), kNone) != delta_.end();
  Dfa d(alphabet_size_, state_count() + (partial ? 1 : 0));
  const auto sink = static_cast<State>(state_count());
  for (State q = 0; q < state_count(); ++q) {
    d.set_accepting(q, accepting_[q]);
    for (Symbol a = 0; a < alphabet_size_; ++a) d.set_next(q, a, next(q, a) == kNone ? sink : next(q, a));
  }
  if (partial) {
    for (Symbol a = 0; a < alphabet_size_; ++a) d.set_next(sink, a, sink);
  }
  return d;
}

PartialDfa prefix_tree_acceptor(std::size_t alphabet_size, const std::vector<Word>& words) {
  std::vector<Word> prefixes{Word{}};
  for (const Word& w : words) {
    for (std::size_t len = 1; len <= w.size(); ++len) prefixes.emplace_back(w.begin(), w.begin() + len);
  }
  std::sort(prefixes.begin(), prefixes.end(), ShortlexLess{});
  prefixes.erase(std::unique(prefixes.begin(), prefixes.end()), prefixes.end());
  auto index = [&](const Word& w) {
    return static_cast<State>(std::lower_bound(prefixes.begin(), prefixes.end(), w, ShortlexLess{}) - prefixes.begin());
  };
  PartialDfa pta(alphabet_size, prefixes.size());
  for (State q = 1; q < prefixes.size(); ++q) {
    const Word& w = prefixes[q];
    Word parent(w.begin(), w.end() - 1);
    if (w.back() >= alphabet_size) throw InvalidWord("symbol index out of range");
    pta.set_next(index(parent), w.back(), q);
  }
  for (const Word& w : words) pta.set_accepting(index(w));
  return pta;
}

std::vector<Word> choose_positive_closure(const Sample& s, SatBackend& backend, const StopToken& stop) {
  if (!s.consequents_finite()) throw InfiniteLanguage("an implication has an infinite consequent");
  auto chosen = solve_chi(s, backend, stop);
  if (!chosen) throw Contradiction("the sample is contradictory");
  return *chosen;
}

namespace {

/// Union-find over PTA states with class successors kept at the representative.
struct Partition {
  std::size_t k = 0;
  std::vector<State> parent;
  std::vector<State> succ;
  std::vector<bool> accepting;

  explicit Partition(const PartialDfa& pta) : k(pta.alphabet_size()) {
    const std::size_t n = pta.state_count();
    parent.resize(n);
    succ.resize(n * k);
    accepting.resize(n);
    for (State q = 0; q < n; ++q) {
      parent[q] = q;
      accepting[q] = pta.is_accepting(q);
      for (Symbol a = 0; a < k; ++a) succ[q * k + a] = pta.next(q, a);
    }
  }

  State find(State q) {
    while (parent[q] != q) {
      parent[q] = parent[parent[q]];
      q = parent[q];
    }
    return q;
  }

  /// Merges two classes and folds until the partition is a congruence again.
  void merge(State a, State b) {
    std::deque<std::pair<State, State>> pending{{a, b}};
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (y < x) std::swap(x, y);
      parent[y] = x;
      accepting[x] = accepting[x] || accepting[y];
      for (Symbol c = 0; c < k; ++c) {
        State sy = succ[y * k + c];
        if (sy == PartialDfa::kNone) continue;
        State& sx = succ[x * k + c];
        if (sx == PartialDfa::kNone) {
          sx = sy;
        } else {
          pending.emplace_back(sx, sy);
        }
      }
    }
  }

  PartialDfa quotient() {
    const std::size_t n = parent.size();
    std::vector<State> id(n, PartialDfa::kNone);
    std::vector<State> reps;
    for (State q = 0; q < n; ++q) {
      if (find(q) == q) {
        id[q] = static_cast<State>(reps.size());
        reps.push_back(q);
      }
    }
    PartialDfa d(k, reps.size());
    for (State i = 0; i < reps.size(); ++i) {
      State r = reps[i];
      d.set_accepting(i, accepting[r]);
      for (Symbol c = 0; c < k; ++c) {
        State t = succ[r * k + c];
        if (t != PartialDfa::kNone) d.set_next(i, c, id[find(t)]);
      }
    }
    return d;
  }
};

}  // namespace

MergeResult merge_learn_detailed(const Sample& s, std::size_t alphabet_size, SatBackend& backend,
                                 const MergeTrace& trace, const StopToken& stop) {
  MergeResult result;
  result.universe_size = build_chi(s).universe.size();
  std::vector<Word> closure = choose_positive_closure(s, backend, stop);
  PartialDfa pta = prefix_tree_acceptor(alphabet_size, closure);
  Partition current(pta);
  const auto n = static_cast<State>(pta.state_count());
  for (State i = 1; i < n; ++i) {
    if (current.find(i) != i) continue;
    for (State j = 0; j < i; ++j) {
      if (current.find(j) != j) continue;
      stop.check();
      Partition trial = current;
      trial.merge(j, i);
      PartialDfa q = trial.quotient();
      if (!is_consistent(q.complete(), s)) continue;
      current = std::move(trial);
      if (trace.on_kept) trace.on_kept(q);
      break;
    }
  }
  result.quotient = current.quotient();
  result.dfa = result.quotient.complete();
  return result;
}

Dfa merge_learn(const Sample& s, std::size_t alphabet_size, SatBackend& backend, const StopToken& stop) {
  return merge_learn_detailed(s, alphabet_size, backend, {}, stop).dfa;
}

}  // namespace rsg
