#include <doctest.h>

#include <random>

#include "rsg/errors.hpp"
#include "rsg/logic.hpp"
#include "rsg/solver.hpp"

using namespace rsg;

namespace {

bool brute_sat(const CnfInstance& cnf) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
    std::vector<bool> a(cnf.num_vars + 1);
    for (Var v = 1; v <= cnf.num_vars; ++v) a[v] = (bits >> (v - 1)) & 1;
    if (cnf.evaluate(a)) return true;
  }
  return false;
}

CnfInstance random_cnf(std::mt19937& rng, Var vars, std::size_t clauses, std::size_t width) {
  std::uniform_int_distribution<Var> pick(1, vars);
  std::bernoulli_distribution sign(0.5);
  CnfInstance cnf;
  cnf.num_vars = vars;
  for (std::size_t i = 0; i < clauses; ++i) {
    std::vector<Lit> c;
    for (std::size_t j = 0; j < width; ++j) {
      Lit l = static_cast<Lit>(pick(rng));
      c.push_back(sign(rng) ? l : -l);
    }
    cnf.clauses.push_back(c);
  }
  return cnf;
}

CnfInstance pigeonhole(int holes) {
  int pigeons = holes + 1;
  CnfInstance cnf;
  auto v = [&](int p, int h) { return static_cast<Lit>(p * holes + h + 1); };
  cnf.num_vars = static_cast<Var>(pigeons * holes);
  for (int p = 0; p < pigeons; ++p) {
    std::vector<Lit> c;
    for (int h = 0; h < holes; ++h) c.push_back(v(p, h));
    cnf.clauses.push_back(c);
  }
  for (int h = 0; h < holes; ++h)
    for (int p = 0; p < pigeons; ++p)
      for (int q = p + 1; q < pigeons; ++q) cnf.clauses.push_back({-v(p, h), -v(q, h)});
  return cnf;
}

PropFormula::Node random_formula(std::mt19937& rng, PropFormula& f, Var vars, int depth) {
  std::uniform_int_distribution<int> kind(0, depth <= 0 ? 1 : 4);
  std::uniform_int_distribution<Var> pick(1, vars);
  switch (kind(rng)) {
    case 0: return f.var(pick(rng));
    case 1: return f.neg(f.var(pick(rng)));
    case 2: return f.neg(random_formula(rng, f, vars, depth - 1));
    case 3: return f.conj({random_formula(rng, f, vars, depth - 1), random_formula(rng, f, vars, depth - 1)});
    default: return f.disj({random_formula(rng, f, vars, depth - 1), random_formula(rng, f, vars, depth - 1)});
  }
}

}  // namespace

TEST_CASE("cnf of small formulas") {
  PropFormula f;
  f.require(f.var(1));
  CnfInstance one = to_cnf(f);
  REQUIRE(one.clauses.size() == 1);
  CHECK(one.clauses[0] == std::vector<Lit>{1});

  PropFormula g;
  g.require(g.conj({g.var(1), g.var(2)}));
  CnfInstance two = to_cnf(g);
  REQUIRE(two.clauses.size() == 2);
  CHECK(two.clauses[0] == std::vector<Lit>{1});
  CHECK(two.clauses[1] == std::vector<Lit>{2});
}

TEST_CASE("constant folding") {
  PropFormula f;
  CHECK(f.conj({f.top(), f.var(3)}) == f.var(3));
  CHECK(f.conj({f.bottom(), f.var(3)}) == f.bottom());
  CHECK(f.disj({f.top(), f.var(3)}) == f.top());
  CHECK(f.neg(f.neg(f.var(2))) == f.var(2));
}

TEST_CASE("tseitin keeps satisfiability and models") {
  std::mt19937 rng(51);
  CdclSolver solver;
  for (int round = 0; round < 200; ++round) {
    PropFormula f;
    const Var vars = 5;
    f.reserve_vars(vars);
    f.require(random_formula(rng, f, vars, 3));
    f.require(random_formula(rng, f, vars, 3));
    bool expected = false;
    for (unsigned bits = 0; bits < (1u << vars); ++bits) {
      std::vector<bool> a(vars + 1);
      for (Var v = 1; v <= vars; ++v) a[v] = (bits >> (v - 1)) & 1;
      expected = expected || f.evaluate(a);
    }
    CnfInstance cnf = to_cnf(f);
    auto model = solver.solve(cnf);
    REQUIRE(model.has_value() == expected);
    if (model) {
      std::vector<bool> a(vars + 1);
      for (Var v = 1; v <= vars; ++v) a[v] = model->value(v);
      CHECK(f.evaluate(a));
    }
  }
}

TEST_CASE("solver agrees with truth tables") {
  std::mt19937 rng(52);
  CdclSolver solver;
  int sat = 0;
  for (int round = 0; round < 300; ++round) {
    CnfInstance cnf = random_cnf(rng, 10, 35 + round % 20, 3);
    auto model = solver.solve(cnf);
    REQUIRE(model.has_value() == brute_sat(cnf));
    if (model) {
      ++sat;
      CHECK(cnf.evaluate(model->values));
    }
  }
  CHECK(sat > 20);
  CHECK_FALSE(solver.solve(pigeonhole(6)).has_value());
}

TEST_CASE("dimacs") {
  CnfInstance one = parse_dimacs("p cnf 1 1\n1 0\n");
  CdclSolver solver;
  auto m = solver.solve(one);
  REQUIRE(m.has_value());
  CHECK(m->value(1));
  CHECK_FALSE(solver.solve(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")).has_value());
  CnfInstance cnf{3, {{1, -2}, {3}, {-1, 2, -3}}};
  std::string text = to_dimacs(cnf);
  CHECK(text.rfind("p cnf 3 3\n", 0) == 0);
  CnfInstance back = parse_dimacs(text);
  CHECK(back.num_vars == 3);
  CHECK(back.clauses == cnf.clauses);
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs("p cnf x\n"), ParseError);
}

TEST_CASE("solver output parsing") {
  auto m = parse_solver_output("SAT\n1 -2 3 0\n", 3);
  REQUIRE(m.has_value());
  CHECK(m->value(1));
  CHECK_FALSE(m->value(2));
  CHECK(m->value(3));
  CHECK_FALSE(parse_solver_output("s UNSATISFIABLE\n", 3).has_value());
  auto c = parse_solver_output("c comment\ns SATISFIABLE\nv -1 2\nv 0\n", 2);
  REQUIRE(c.has_value());
  CHECK(c->value(2));
  CHECK_THROWS_AS(parse_solver_output("garbage\n", 1), SolverError);
}

TEST_CASE("external solver backend") {
  auto backend = make_backend(std::string("exec:") + RSG_DIMACS_SOLVE);
  std::mt19937 rng(53);
  for (int round = 0; round < 20; ++round) {
    CnfInstance cnf = random_cnf(rng, 8, 30, 3);
    auto model = backend->solve(cnf);
    CHECK(model.has_value() == brute_sat(cnf));
    if (model) CHECK(cnf.evaluate(model->values));
  }
  CHECK_THROWS_AS(make_backend("bogus"), ParameterError);
  auto missing = make_backend("exec:/nonexistent/solver");
  CHECK_THROWS_AS(missing->solve(CnfInstance{1, {{1}}}), SolverError);
}

TEST_CASE("cancellation") {
  std::atomic<bool> flag{true};
  StopToken stop;
  stop.set_flag(&flag);
  CdclSolver solver;
  CHECK_THROWS_AS(solver.solve(pigeonhole(9), stop), Cancelled);
  CHECK_THROWS_AS(StopToken::after(0.0).check(), Cancelled);
}
