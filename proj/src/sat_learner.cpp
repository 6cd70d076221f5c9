#include "rsg/sat_learner.hpp"

#include <algorithm>

#include "rsg/errors.hpp"

namespace rsg {

PrefixTree::PrefixTree(const std::vector<Word>& words) : PrefixTree() {
  for (const Word& w : words) {
    std::size_t node = 0;
    for (Symbol a : w) {
      auto [it, inserted] = child_.emplace(std::make_pair(node, a), parent_.size());
      if (inserted) {
        parent_.push_back(node);
        symbol_.push_back(a);
      }
      node = it->second;
    }
  }
}

std::size_t PrefixTree::node(const Word& w) const {
  std::size_t node = 0;
  for (Symbol a : w) node = child_.at({node, a});
  return node;
}

Word PrefixTree::word(std::size_t node) const {
  Word w;
  for (; node != 0; node = parent_[node]) w.push_back(symbol_[node]);
  std::reverse(w.begin(), w.end());
  return w;
}

VarBook::VarBook(const Sample& s, std::size_t n, std::size_t alphabet_size)
    : n_(n), k_(alphabet_size), prefixes_(s.word_universe()) {
  if (n == 0) throw Error("a DFA needs at least one state");
  has_words_ = !s.empty();
  Var next = static_cast<Var>(1 + n * k_ * n);
  f_base_ = next;
  next += static_cast<Var>(n);
  x_base_ = next;
  next += static_cast<Var>(prefixes_.size() * n);
  for (const auto& item : s.uni()) {
    y_base_.push_back(next);
    uni_states_.push_back(item.consequent.state_count());
    next += static_cast<Var>(n * item.consequent.state_count());
  }
  for (const auto& item : s.ex()) {
    z_base_.push_back(next);
    ex_states_.push_back(item.consequent.state_count());
    std::size_t layers = n * item.consequent.state_count();
    next += static_cast<Var>(layers * n * item.consequent.state_count());
  }
  last_ = next - 1;
}

namespace {

Lit pos(Var v) { return static_cast<Lit>(v); }
Lit neg(Var v) { return -static_cast<Lit>(v); }

PropFormula fresh(const VarBook& book) {
  PropFormula f;
  f.reserve_vars(book.last());
  return f;
}

}  // namespace

PropFormula build_dfa_constraints(const VarBook& book) {
  PropFormula f = fresh(book);
  const std::size_t n = book.n();
  for (State p = 0; p < n; ++p) {
    for (Symbol a = 0; a < book.alphabet_size(); ++a) {
      for (State q = 0; q < n; ++q) {
        for (State r = 0; r < n; ++r) {
          if (q != r) f.require_clause({neg(book.d(p, a, q)), neg(book.d(p, a, r))});
        }
      }
      std::vector<Lit> total;
      for (State q = 0; q < n; ++q) total.push_back(pos(book.d(p, a, q)));
      f.require_clause(total);
    }
  }
  return f;
}

PropFormula build_run_constraints(const VarBook& book) {
  PropFormula f = fresh(book);
  const std::size_t n = book.n();
  const PrefixTree& tree = book.prefixes();
  f.require_clause({pos(book.x(0, 0))});
  if (!book.has_words()) return f;
  for (std::size_t u = 0; u < tree.size(); ++u) {
    for (State q = 0; q < n; ++q) {
      for (State r = q + 1; r < n; ++r) f.require_clause({neg(book.x(u, q)), neg(book.x(u, r))});
    }
    if (u == 0) continue;
    std::size_t parent = tree.parent(u);
    Symbol a = tree.symbol(u);
    for (State p = 0; p < n; ++p) {
      for (State q = 0; q < n; ++q) {
        f.require_clause({neg(book.x(parent, p)), neg(book.d(p, a, q)), pos(book.x(u, q))});
      }
    }
  }
  return f;
}

PropFormula build_pos(const VarBook& book, const Sample& s) {
  PropFormula f = fresh(book);
  for (const Word& w : s.pos()) {
    std::size_t u = book.prefixes().node(w);
    for (State q = 0; q < book.n(); ++q) f.require_clause({neg(book.x(u, q)), pos(book.f(q))});
  }
  return f;
}

PropFormula build_neg(const VarBook& book, const Sample& s) {
  PropFormula f = fresh(book);
  for (const Word& w : s.neg()) {
    std::size_t u = book.prefixes().node(w);
    for (State q = 0; q < book.n(); ++q) f.require_clause({neg(book.x(u, q)), neg(book.f(q))});
  }
  return f;
}

PropFormula build_uni(const VarBook& book, const Sample& s) {
  PropFormula f = fresh(book);
  const std::size_t n = book.n();
  for (std::size_t iota = 0; iota < s.uni().size(); ++iota) {
    const auto& item = s.uni()[iota];
    const Nfa& a = item.consequent;
    f.require_clause({pos(book.y(iota, 0, a.initial()))});
    for (State pa = 0; pa < a.state_count(); ++pa) {
      for (const Edge& e : a.out(pa)) {
        for (State p = 0; p < n; ++p) {
          for (State q = 0; q < n; ++q) {
            f.require_clause({neg(book.y(iota, p, pa)), neg(book.d(p, e.symbol, q)), pos(book.y(iota, q, e.target))});
          }
        }
      }
    }
    // (x_{u,q1} ∧ f_{q1}) → (y_{q,q'} → f_q) for every accepting q' of A, already in clause form.
    std::size_t u = book.prefixes().node(item.antecedent);
    for (State q1 = 0; q1 < n; ++q1) {
      for (State q = 0; q < n; ++q) {
        for (State qa : a.accepting_states()) {
          f.require_clause({neg(book.x(u, q1)), neg(book.f(q1)), neg(book.y(iota, q, qa)), pos(book.f(q))});
        }
      }
    }
  }
  return f;
}

PropFormula build_ex(const VarBook& book, const Sample& s) {
  PropFormula f = fresh(book);
  const std::size_t n = book.n();
  for (std::size_t iota = 0; iota < s.ex().size(); ++iota) {
    const auto& item = s.ex()[iota];
    const Nfa& a = item.consequent;
    const std::size_t k = book.bound(iota);
    const std::size_t qa_count = a.state_count();

    // Incoming transitions of A, for the backward constraints.
    std::vector<std::vector<std::pair<State, Symbol>>> into(qa_count);
    for (State pa = 0; pa < qa_count; ++pa) {
      for (const Edge& e : a.out(pa)) into[e.target].emplace_back(pa, e.symbol);
    }

    for (State q = 0; q < n; ++q) {
      for (State qa = 0; qa < qa_count; ++qa) {
        bool start = q == 0 && qa == a.initial();
        f.require_clause({start ? pos(book.z(iota, q, qa, 0)) : neg(book.z(iota, q, qa, 0))});
      }
    }
    for (std::size_t l = 0; l < k; ++l) {
      for (State pa = 0; pa < qa_count; ++pa) {
        for (const Edge& e : a.out(pa)) {
          for (State p = 0; p < n; ++p) {
            for (State q = 0; q < n; ++q) {
              f.require_clause({neg(book.z(iota, p, pa, l)), neg(book.d(p, e.symbol, q)),
                                pos(book.z(iota, q, e.target, l + 1))});
            }
          }
        }
      }
    }
    for (std::size_t l = 1; l <= k; ++l) {
      for (State q = 0; q < n; ++q) {
        for (State qa = 0; qa < qa_count; ++qa) {
          std::vector<PropFormula::Node> causes;
          for (auto [pa, sym] : into[qa]) {
            for (State p = 0; p < n; ++p) {
              causes.push_back(f.conj({f.var(book.d(p, sym, q)), f.var(book.z(iota, p, pa, l - 1))}));
            }
          }
          f.require(f.implies(f.var(book.z(iota, q, qa, l)), f.disj(std::move(causes))));
        }
      }
    }
    // Gate: an accepted antecedent needs an accepting joint state in some layer.
    std::vector<PropFormula::Node> goals;
    for (State q = 0; q < n; ++q) {
      for (State qa : a.accepting_states()) {
        for (std::size_t l = 0; l <= k; ++l) goals.push_back(f.conj({f.var(book.z(iota, q, qa, l)), f.var(book.f(q))}));
      }
    }
    PropFormula::Node target = f.disj(std::move(goals));
    std::size_t u = book.prefixes().node(item.antecedent);
    for (State q1 = 0; q1 < n; ++q1) {
      f.require(f.implies(f.conj({f.var(book.x(u, q1)), f.var(book.f(q1))}), target));
    }
  }
  return f;
}

Encoding build_formula(const Sample& s, std::size_t n, std::size_t alphabet_size) {
  Encoding e{VarBook(s, n, alphabet_size), PropFormula()};
  e.formula.reserve_vars(e.book.last());
  e.formula.append(build_dfa_constraints(e.book));
  e.formula.append(build_run_constraints(e.book));
  e.formula.append(build_pos(e.book, s));
  e.formula.append(build_neg(e.book, s));
  e.formula.append(build_uni(e.book, s));
  e.formula.append(build_ex(e.book, s));
  return e;
}

Dfa extract_dfa(const Model& m, const VarBook& book) {
  const std::size_t n = book.n();
  Dfa d(book.alphabet_size(), n);
  for (State p = 0; p < n; ++p) {
    d.set_accepting(p, m.value(book.f(p)));
    for (Symbol a = 0; a < book.alphabet_size(); ++a) {
      std::optional<State> target;
      for (State q = 0; q < n; ++q) {
        if (!m.value(book.d(p, a, q))) continue;
        if (target) throw InternalError("model assigns two successors to one state and symbol");
        target = q;
      }
      if (!target) throw InternalError("model leaves a transition undefined");
      d.set_next(p, a, *target);
    }
  }
  return d;
}

Dfa minimal_consistent_dfa(const Sample& s, std::size_t alphabet_size, SatBackend& backend,
                           const SatLearnerOptions& options, const StopToken& stop) {
  for (std::size_t n = std::max<std::size_t>(1, options.start_n); n <= options.n_cap; ++n) {
    stop.check();
    Encoding e = build_formula(s, n, alphabet_size);
    CnfInstance cnf = to_cnf(e.formula);
    auto model = backend.solve(cnf, stop);
    if (!model) continue;
    Dfa d = extract_dfa(*model, e.book);
    if (!is_consistent(d, s)) throw InternalError("extracted DFA is not consistent with the sample");
    return d;
  }
  throw CapExceeded(options.n_cap);
}

bool is_minimal_size(const Sample& s, std::size_t alphabet_size, std::size_t n, SatBackend& backend,
                     const StopToken& stop) {
  if (n <= 1) return true;
  Encoding e = build_formula(s, n - 1, alphabet_size);
  return !backend.solve(to_cnf(e.formula), stop).has_value();
}

}  // namespace rsg
