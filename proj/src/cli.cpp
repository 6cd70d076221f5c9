#include "rsg/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include "rsg/errors.hpp"
#include "rsg/game.hpp"
#include "rsg/teacher.hpp"

namespace rsg::cli {

std::string csv_row(const BenchRow& row) {
  std::ostringstream out;
  out << row.game << ',' << row.game_size << ',' << row.learner << ',' << std::fixed << std::setprecision(3)
      << row.time_s << ',' << row.iterations << ',' << row.dfa_size << ',' << row.pos << ',' << row.neg << ','
      << row.ex << ',' << row.uni << ',' << row.outcome;
  return out.str();
}

BenchRow make_row(const std::string& game, std::size_t game_size, const LearnResult& r) {
  BenchRow row;
  row.game = game;
  row.game_size = game_size;
  row.learner = r.learner;
  row.time_s = r.wall_time;
  row.iterations = r.iterations;
  row.dfa_size = r.outcome == Outcome::Solved ? r.dfa_size() : 0;
  row.pos = r.sample.pos().size();
  row.neg = r.sample.neg().size();
  row.ex = r.sample.ex().size();
  row.uni = r.sample.uni().size();
  row.outcome = to_string(r.outcome);
  return row;
}

int exit_code(Outcome outcome) {
  switch (outcome) {
    case Outcome::Solved: return kSolved;
    case Outcome::Timeout: return kTimeout;
    case Outcome::CapExceeded: return kTimeout;
    case Outcome::Contradiction: return kContradiction;
  }
  return kInternalError;
}

std::vector<BenchCell> suite_cells(const std::string& suite, const std::vector<long>& kprimes,
                                   const std::vector<std::string>& learners) {
  std::vector<std::pair<std::string, BenchmarkSpec>> games;
  if (suite == "paper") {
    for (const char* name : {"diagonal", "box", "solitary-box", "evasion", "follow", "program-repair"})
      games.push_back({name, BenchmarkSpec{name, {}}});
  } else if (suite == "scalability") {
    for (long kp : kprimes)
      games.push_back({"interval-" + std::to_string(kp), BenchmarkSpec{"interval", {{"k", 1}, {"kprime", kp}}}});
  } else if (suite != "empty") {
    throw ParameterError("unknown suite '" + suite + "'");
  }
  for (const auto& l : learners)
    if (l != "sat" && l != "rpni") throw ParameterError("unknown learner '" + l + "'");
  std::vector<BenchCell> cells;
  for (const auto& [game, spec] : games)
    for (const auto& l : learners) cells.push_back({game, spec, l});
  return cells;
}

namespace {

BenchRow run_cell(const BenchCell& cell, const LearnOptions& options) {
  RationalSafetyGame g = generate_benchmark(cell.spec);
  Teacher teacher(g);
  try {
    return make_row(cell.game, game_size(g), learn_with(cell.learner, teacher, options));
  } catch (const InfiniteBranching&) {
    BenchRow row;
    row.game = cell.game;
    row.game_size = game_size(g);
    row.learner = cell.learner;
    row.outcome = "error";
    return row;
  }
}

}  // namespace

std::vector<BenchRow> run_cells(const std::vector<BenchCell>& cells, const LearnOptions& options, unsigned jobs) {
  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        rows[i] = run_cell(cells[i], options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

namespace {

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  file << text;
}

void append_stats(const std::string& path, const BenchRow& row) {
  bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream file(path, std::ios::app);
  if (!file) throw ParameterError("cannot write '" + path + "'");
  if (fresh) file << kCsvHeader << '\n';
  file << csv_row(row) << '\n';
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) throw ParameterError("not an integer: '" + item + "'");
    values.push_back(v);
  }
  return values;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

struct SolveFlags {
  std::string game;
  std::string learner = "sat";
  double timeout = 300.0;
  std::size_t max_states = 32;
  std::string solver = "internal";
  std::string out;
  std::string stats;
  long seed = 0;
  std::string emit = "aut";
};

int cmd_solve(const SolveFlags& f, std::ostream& out, std::ostream& err) {
  RationalSafetyGame g = load_game(f.game);
  validate(g);
  Teacher teacher(g);
  LearnOptions options;
  options.timeout_s = f.timeout;
  options.n_cap = f.max_states;
  options.solver = f.solver;
  LearnResult r = learn_with(f.learner, teacher, options);
  std::string name = std::filesystem::path(f.game).stem().string();
  BenchRow row = make_row(name, game_size(g), r);
  if (!f.stats.empty()) append_stats(f.stats, row);
  err << "outcome " << row.outcome << ", iterations " << row.iterations << ", size " << row.dfa_size << ", time "
      << std::fixed << std::setprecision(3) << row.time_s << "s\n";
  if (!r.message.empty() && r.outcome != Outcome::Solved) err << r.message << '\n';
  if (r.outcome == Outcome::Solved) {
    std::string text = f.emit == "dot" ? to_dot(r.dfa, g.alphabet, "W") : serialize_dfa(r.dfa, g.alphabet);
    write_text(f.out, text, out);
  }
  return exit_code(r.outcome);
}

int cmd_verify(const std::string& game_path, const std::string& dfa_path, std::ostream& out) {
  RationalSafetyGame g = load_game(game_path);
  validate(g);
  Dfa d = load_dfa(dfa_path, g.alphabet);
  Teacher teacher(g);
  TeacherResponse response = teacher.query(d);
  if (!response) {
    out << "yes\n";
    return 0;
  }
  out << describe(*response, g.alphabet) << '\n';
  return 1;
}

int cmd_gen(const std::string& family, const std::map<std::string, long>& params, const std::string& path,
            std::ostream& out) {
  RationalSafetyGame g = generate_benchmark(BenchmarkSpec{family, params});
  validate(g);
  write_text(path, serialize(g), out);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rational safety game solver"};
  app.require_subcommand(1);

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "Learn a winning set for a game file");
  solve_cmd->add_option("game", solve.game, "game file")->required();
  solve_cmd->add_option("--learner", solve.learner)->check(CLI::IsMember({"sat", "rpni"}));
  solve_cmd->add_option("--timeout", solve.timeout, "seconds");
  solve_cmd->add_option("--max-states", solve.max_states, "state cap of the SAT learner");
  solve_cmd->add_option("--solver", solve.solver, "internal or exec:<path>");
  solve_cmd->add_option("--out", solve.out, "DFA output file");
  solve_cmd->add_option("--stats", solve.stats, "CSV file to append a row to");
  solve_cmd->add_option("--seed", solve.seed, "unused, all components are deterministic");
  solve_cmd->add_option("--emit", solve.emit)->check(CLI::IsMember({"aut", "dot"}));

  std::string verify_game, verify_dfa;
  auto* verify_cmd = app.add_subcommand("verify", "Check a DFA against a game");
  verify_cmd->add_option("game", verify_game)->required();
  verify_cmd->add_option("dfa", verify_dfa)->required();

  std::string family, gen_out = "-";
  std::map<std::string, long> gen_params;
  auto* gen_cmd = app.add_subcommand("gen", "Write a benchmark game");
  gen_cmd->add_option("family", family)->required();
  gen_cmd->add_option("out", gen_out, "output file, - for stdout");
  for (const char* p : {"k", "kprime", "width", "margin", "distance", "bound"}) {
    gen_cmd->add_option_function<long>(std::string("--") + p, [&gen_params, p](long v) { gen_params[p] = v; });
  }

  std::string suite = "paper", kprime_list = "10,50,100", learners = "sat,rpni", bench_out = "-";
  double bench_timeout = 300.0;
  unsigned jobs = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark suite and print CSV");
  bench_cmd->add_option("--suite", suite)->check(CLI::IsMember({"paper", "scalability", "empty"}));
  bench_cmd->add_option("--kprime-list", kprime_list);
  bench_cmd->add_option("--learners", learners);
  bench_cmd->add_option("--timeout", bench_timeout);
  bench_cmd->add_option("--jobs", jobs);
  bench_cmd->add_option("--out", bench_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve, out, err);
    if (*verify_cmd) return cmd_verify(verify_game, verify_dfa, out);
    if (*gen_cmd) return cmd_gen(family, gen_params, gen_out, out);
    if (*bench_cmd) {
      auto cells = suite_cells(suite, parse_long_list(kprime_list), split(learners));
      LearnOptions options;
      options.timeout_s = bench_timeout;
      auto rows = run_cells(cells, options, jobs);
      std::string text = std::string(kCsvHeader) + "\n";
      for (const auto& row : rows) text += csv_row(row) + "\n";
      write_text(bench_out, text, out);
      return 0;
    }
  } catch (const InvariantViolation& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InfiniteBranching& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const AlphabetMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInternalError;
}

}  // namespace rsg::cli
