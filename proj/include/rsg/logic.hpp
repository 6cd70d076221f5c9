#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rsg {

/// Propositional variable id, 1-based as in DIMACS.
using Var = std::uint32_t;
/// DIMACS literal: +v or -v.
using Lit = std::int32_t;

/// Arena of formula nodes. Constants, variables and negations are shared;
/// conjunctions and disjunctions get a fresh node each time.
class PropFormula {
 public:
  using Node = std::uint32_t;
  enum class Kind : std::uint8_t { True, False, Var, Not, And, Or };

  PropFormula();

  Node top() const { return 0; }
  Node bottom() const { return 1; }
  Node var(Var v);
  Node lit(Lit l) { return l > 0 ? var(static_cast<Var>(l)) : neg(var(static_cast<Var>(-l))); }
  Node neg(Node n);
  Node conj(std::vector<Node> children);
  Node disj(std::vector<Node> children);
  Node implies(Node a, Node b) { return disj({neg(a), b}); }
  Node clause(std::initializer_list<Lit> lits);
  Node clause(const std::vector<Lit>& lits);

  /// Adds a top-level conjunct.
  void require(Node n) { roots_.push_back(n); }
  void require_clause(const std::vector<Lit>& lits) { roots_.push_back(clause(lits)); }
  /// Appends all conjuncts of another formula (its nodes are copied).
  void append(const PropFormula& other);

  const std::vector<Node>& roots() const { return roots_; }
  Kind kind(Node n) const { return nodes_[n].kind; }
  Var var_of(Node n) const { return nodes_[n].value; }
  std::vector<Node> children(Node n) const;
  std::size_t node_count() const { return nodes_.size(); }
  Var max_var() const { return max_var_; }
  /// Reserves ids up to v so auxiliaries start above it.
  void reserve_vars(Var v) { max_var_ = std::max(max_var_, v); }

  /// assignment[v] is the value of variable v (index 0 unused).
  bool evaluate(Node n, const std::vector<bool>& assignment) const;
  bool evaluate(const std::vector<bool>& assignment) const;

 private:
  struct Item {
    Kind kind;
    std::uint32_t value;  // variable id, negated node, or first child offset
    std::uint32_t count;  // number of children
  };
  Node push(Item item);
  Node copy_from(const PropFormula& other, Node n, std::vector<Node>& memo);

  std::vector<Item> nodes_;
  std::vector<Node> child_pool_;
  std::vector<Node> var_node_;
  std::vector<Node> not_node_;
  std::vector<Node> roots_;
  Var max_var_ = 0;
};

struct CnfInstance {
  Var num_vars = 0;
  std::vector<std::vector<Lit>> clauses;

  bool evaluate(const std::vector<bool>& assignment) const;
};

/// Tseitin transformation. Original variable ids are kept; auxiliaries follow max_var().
CnfInstance to_cnf(const PropFormula& f);

/// Satisfying assignment; values[v] for v in 1..num_vars.
struct Model {
  std::vector<bool> values;
  bool value(Var v) const { return v < values.size() && values[v]; }
};

void write_dimacs(std::ostream& out, const CnfInstance& cnf);
std::string to_dimacs(const CnfInstance& cnf);
/// Throws ParseError on malformed input.
CnfInstance parse_dimacs(std::string_view text);

}  // namespace rsg
