// Minimal standalone solver: reads a DIMACS file, prints SAT/UNSAT and a model line.
#include <fstream>
#include <iostream>
#include <sstream>

#include "rsg/logic.hpp"
#include "rsg/solver.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: dimacs_solve <file.cnf>\n";
    return 2;
  }
  std::ifstream in(argv[1]);
  if (!in) {
    std::cerr << "cannot open " << argv[1] << '\n';
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    rsg::CnfInstance cnf = rsg::parse_dimacs(buffer.str());
    rsg::CdclSolver solver;
    auto model = solver.solve(cnf);
    if (!model) {
      std::cout << "UNSAT\n";
      return 20;
    }
    std::cout << "SAT\n";
    for (rsg::Var v = 1; v <= cnf.num_vars; ++v) std::cout << (model->value(v) ? "" : "-") << v << ' ';
    std::cout << "0\n";
    return 10;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
}
