#pragma once

#include <atomic>
#include <chrono>
#include <memory>
#include <optional>
#include <string>

#include "rsg/logic.hpp"

namespace rsg {

/// Cooperative cancellation: a wall-clock deadline and/or an external flag.
class StopToken {
 public:
  using Clock = std::chrono::steady_clock;

  StopToken() = default;
  explicit StopToken(Clock::time_point deadline) : deadline_(deadline) {}
  static StopToken after(double seconds);

  void set_flag(const std::atomic<bool>* flag) { flag_ = flag; }
  bool has_deadline() const { return deadline_.has_value(); }
  Clock::time_point deadline() const { return *deadline_; }
  double seconds_left() const;
  bool stop_requested() const;
  /// Throws Cancelled when stop_requested().
  void check() const;

 private:
  std::optional<Clock::time_point> deadline_;
  const std::atomic<bool>* flag_ = nullptr;
};

struct SolverStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
};

/// Pluggable satisfiability backend. Instances are not shared between threads.
class SatBackend {
 public:
  virtual ~SatBackend() = default;
  /// nullopt means unsatisfiable. Throws Cancelled if the token fires.
  virtual std::optional<Model> solve(const CnfInstance& cnf, const StopToken& stop = {}) = 0;
  virtual std::string name() const = 0;
};

/// Conflict-driven clause learning with watched literals, VSIDS and Luby restarts.
class CdclSolver : public SatBackend {
 public:
  std::optional<Model> solve(const CnfInstance& cnf, const StopToken& stop = {}) override;
  std::string name() const override { return "internal"; }
  const SolverStats& last_stats() const { return stats_; }

 private:
  SolverStats stats_;
};

/// Runs `<path> <dimacs-file>` and reads `SAT`/`UNSAT` plus a model line.
class ExternalSolver : public SatBackend {
 public:
  explicit ExternalSolver(std::string path) : path_(std::move(path)) {}
  std::optional<Model> solve(const CnfInstance& cnf, const StopToken& stop = {}) override;
  std::string name() const override { return "exec:" + path_; }

 private:
  std::string path_;
};

/// Parses the textual answer of an external solver.
std::optional<Model> parse_solver_output(const std::string& output, Var num_vars);

/// "internal" or "exec:<path>".
std::unique_ptr<SatBackend> make_backend(const std::string& spec);

}  // namespace rsg
