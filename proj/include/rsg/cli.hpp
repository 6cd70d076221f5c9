#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rsg/learner.hpp"

namespace rsg::cli {

enum ExitCode : int { kSolved = 0, kTimeout = 1, kContradiction = 2, kInputError = 3, kInternalError = 4 };

inline constexpr const char* kCsvHeader = "game,game_size,learner,time_s,iterations,dfa_size,pos,neg,ex,uni,outcome";

struct BenchCell {
  std::string game;
  BenchmarkSpec spec;
  std::string learner;
};

struct BenchRow {
  std::string game;
  std::size_t game_size = 0;
  std::string learner;
  double time_s = 0.0;
  std::size_t iterations = 0;
  std::size_t dfa_size = 0;
  std::size_t pos = 0, neg = 0, ex = 0, uni = 0;
  std::string outcome;
};

std::string csv_row(const BenchRow& row);
BenchRow make_row(const std::string& game, std::size_t game_size, const LearnResult& r);

/// Cells of a suite in output order. Suites: paper, scalability, empty.
std::vector<BenchCell> suite_cells(const std::string& suite, const std::vector<long>& kprimes,
                                   const std::vector<std::string>& learners);
/// Runs cells on up to `jobs` threads; rows come back in cell order.
std::vector<BenchRow> run_cells(const std::vector<BenchCell>& cells, const LearnOptions& options, unsigned jobs);

int exit_code(Outcome outcome);

/// Entry point of the `rsg` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsg::cli
