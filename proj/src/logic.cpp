#include "rsg/logic.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "rsg/errors.hpp"

namespace rsg {

namespace {
constexpr PropFormula::Node kNone = static_cast<PropFormula::Node>(-1);
}

PropFormula::PropFormula() {
  nodes_.push_back({Kind::True, 0, 0});
  nodes_.push_back({Kind::False, 0, 0});
  not_node_ = {1, 0};
}

PropFormula::Node PropFormula::push(Item item) {
  nodes_.push_back(item);
  not_node_.push_back(kNone);
  return static_cast<Node>(nodes_.size() - 1);
}

PropFormula::Node PropFormula::var(Var v) {
  if (v == 0) throw Error("variable ids start at 1");
  if (v >= var_node_.size()) var_node_.resize(v + 1, kNone);
  if (var_node_[v] == kNone) var_node_[v] = push({Kind::Var, v, 0});
  max_var_ = std::max(max_var_, v);
  return var_node_[v];
}

PropFormula::Node PropFormula::neg(Node n) {
  if (nodes_[n].kind == Kind::Not) return nodes_[n].value;
  if (not_node_[n] == kNone) {
    Node m = push({Kind::Not, n, 0});
    not_node_[n] = m;
    not_node_[m] = n;
  }
  return not_node_[n];
}

PropFormula::Node PropFormula::conj(std::vector<Node> children) {
  std::vector<Node> kept;
  kept.reserve(children.size());
  for (Node c : children) {
    if (c == bottom()) return bottom();
    if (c == top()) continue;
    if (nodes_[c].kind == Kind::And) {
      for (Node g : this->children(c)) kept.push_back(g);
    } else {
      kept.push_back(c);
    }
  }
  if (kept.empty()) return top();
  if (kept.size() == 1) return kept[0];
  Node n = push({Kind::And, static_cast<std::uint32_t>(child_pool_.size()), static_cast<std::uint32_t>(kept.size())});
  child_pool_.insert(child_pool_.end(), kept.begin(), kept.end());
  return n;
}

PropFormula::Node PropFormula::disj(std::vector<Node> children) {
  std::vector<Node> kept;
  kept.reserve(children.size());
  for (Node c : children) {
    if (c == top()) return top();
    if (c == bottom()) continue;
    if (nodes_[c].kind == Kind::Or) {
      for (Node g : this->children(c)) kept.push_back(g);
    } else {
      kept.push_back(c);
    }
  }
  if (kept.empty()) return bottom();
  if (kept.size() == 1) return kept[0];
  Node n = push({Kind::Or, static_cast<std::uint32_t>(child_pool_.size()), static_cast<std::uint32_t>(kept.size())});
  child_pool_.insert(child_pool_.end(), kept.begin(), kept.end());
  return n;
}

PropFormula::Node PropFormula::clause(std::initializer_list<Lit> lits) { return clause(std::vector<Lit>(lits)); }

PropFormula::Node PropFormula::clause(const std::vector<Lit>& lits) {
  std::vector<Node> children;
  children.reserve(lits.size());
  for (Lit l : lits) children.push_back(lit(l));
  return disj(std::move(children));
}

std::vector<PropFormula::Node> PropFormula::children(Node n) const {
  const Item& it = nodes_[n];
  if (it.kind == Kind::Not) return {it.value};
  if (it.kind != Kind::And && it.kind != Kind::Or) return {};
  return std::vector<Node>(child_pool_.begin() + it.value, child_pool_.begin() + it.value + it.count);
}

PropFormula::Node PropFormula::copy_from(const PropFormula& other, Node n, std::vector<Node>& memo) {
  if (memo[n] != kNone) return memo[n];
  Node result = kNone;
  switch (other.kind(n)) {
    case Kind::True: result = top(); break;
    case Kind::False: result = bottom(); break;
    case Kind::Var: result = var(other.var_of(n)); break;
    case Kind::Not: result = neg(copy_from(other, other.nodes_[n].value, memo)); break;
    case Kind::And:
    case Kind::Or: {
      std::vector<Node> kids;
      for (Node c : other.children(n)) kids.push_back(copy_from(other, c, memo));
      result = other.kind(n) == Kind::And ? conj(std::move(kids)) : disj(std::move(kids));
      break;
    }
  }
  memo[n] = result;
  return result;
}

void PropFormula::append(const PropFormula& other) {
  std::vector<Node> memo(other.nodes_.size(), kNone);
  for (Node r : other.roots_) roots_.push_back(copy_from(other, r, memo));
  max_var_ = std::max(max_var_, other.max_var_);
}

bool PropFormula::evaluate(Node n, const std::vector<bool>& assignment) const {
  const Item& it = nodes_[n];
  switch (it.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Var: return it.value < assignment.size() && assignment[it.value];
    case Kind::Not: return !evaluate(it.value, assignment);
    case Kind::And:
      for (std::uint32_t i = 0; i < it.count; ++i) {
        if (!evaluate(child_pool_[it.value + i], assignment)) return false;
      }
      return true;
    case Kind::Or:
      for (std::uint32_t i = 0; i < it.count; ++i) {
        if (evaluate(child_pool_[it.value + i], assignment)) return true;
      }
      return false;
  }
  return false;
}

bool PropFormula::evaluate(const std::vector<bool>& assignment) const {
  for (Node r : roots_) {
    if (!evaluate(r, assignment)) return false;
  }
  return true;
}

bool CnfInstance::evaluate(const std::vector<bool>& assignment) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (Lit l : c) {
      Var v = static_cast<Var>(std::abs(l));
      bool value = v < assignment.size() && assignment[v];
      if ((l > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

namespace {

class Tseitin {
 public:
  explicit Tseitin(const PropFormula& f) : f_(f), memo_(f.node_count(), 0) { cnf_.num_vars = f.max_var(); }

  void add_root(PropFormula::Node n) {
    using Kind = PropFormula::Kind;
    switch (f_.kind(n)) {
      case Kind::True: return;
      case Kind::False: cnf_.clauses.emplace_back(); return;
      case Kind::And:
        for (auto c : f_.children(n)) add_root(c);
        return;
      case Kind::Or: {
        std::vector<Lit> clause;
        for (auto c : f_.children(n)) clause.push_back(literal(c));
        cnf_.clauses.push_back(std::move(clause));
        return;
      }
      default: cnf_.clauses.push_back({literal(n)}); return;
    }
  }

  CnfInstance take() { return std::move(cnf_); }

 private:
  Lit fresh() { return static_cast<Lit>(++cnf_.num_vars); }

  Lit literal(PropFormula::Node n) {
    using Kind = PropFormula::Kind;
    if (memo_[n] != 0) return memo_[n];
    Lit result = 0;
    switch (f_.kind(n)) {
      case Kind::Var: result = static_cast<Lit>(f_.var_of(n)); break;
      case Kind::Not: result = -literal(f_.children(n)[0]); break;
      case Kind::True:
      case Kind::False: {
        Lit t = fresh();
        cnf_.clauses.push_back({t});
        result = f_.kind(n) == Kind::True ? t : -t;
        break;
      }
      case Kind::And:
      case Kind::Or: {
        std::vector<Lit> kids;
        for (auto c : f_.children(n)) kids.push_back(literal(c));
        Lit a = fresh();
        // And: a <-> /\ kids. Or is the dual with every literal negated.
        Lit sign = f_.kind(n) == Kind::And ? 1 : -1;
        std::vector<Lit> big{sign * a};
        for (Lit k : kids) {
          cnf_.clauses.push_back({-sign * a, sign * k});
          big.push_back(-sign * k);
        }
        cnf_.clauses.push_back(std::move(big));
        result = a;
        break;
      }
    }
    memo_[n] = result;
    return result;
  }

  const PropFormula& f_;
  std::vector<Lit> memo_;
  CnfInstance cnf_;
};

}  // namespace

CnfInstance to_cnf(const PropFormula& f) {
  Tseitin t(f);
  for (auto r : f.roots()) t.add_root(r);
  return t.take();
}

void write_dimacs(std::ostream& out, const CnfInstance& cnf) {
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (Lit l : c) out << l << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const CnfInstance& cnf) {
  std::ostringstream out;
  write_dimacs(out, cnf);
  return out.str();
}

CnfInstance parse_dimacs(std::string_view text) {
  CnfInstance cnf;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<Lit> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == 'c' || line[first] == '%') continue;
    std::istringstream in(line);
    if (line[first] == 'p') {
      std::string p, fmt;
      long vars = -1, clauses = -1;
      in >> p >> fmt >> vars >> clauses;
      if (header || fmt != "cnf" || vars < 0 || clauses < 0) throw ParseError(line_no, first + 1, "bad problem line");
      header = true;
      cnf.num_vars = static_cast<Var>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw ParseError(line_no, first + 1, "clause before 'p cnf' header");
    long value = 0;
    while (in >> value) {
      if (value == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (static_cast<Var>(std::labs(value)) > cnf.num_vars) throw ParseError(line_no, first + 1, "variable out of range");
      current.push_back(static_cast<Lit>(value));
    }
    if (!in.eof()) throw ParseError(line_no, first + 1, "expected integer literals");
  }
  if (!header) throw ParseError(line_no + 1, 1, "missing 'p cnf' header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (cnf.clauses.size() != declared_clauses) {
    throw ParseError(line_no + 1, 1, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                         std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

}  // namespace rsg
