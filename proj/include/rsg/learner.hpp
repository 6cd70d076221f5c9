#pragma once

#include <atomic>
#include <functional>
#include <string>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/sample.hpp"
#include "rsg/teacher.hpp"

namespace rsg {

enum class Outcome { Solved, Timeout, Contradiction, CapExceeded };
std::string to_string(Outcome outcome);

struct LearnOptions {
  double timeout_s = 300.0;
  std::size_t n_cap = 32;
  std::string solver = "internal";
  /// Run the χ contradiction test after each counterexample when all consequents are finite.
  bool detect_contradictions = true;
  bool keep_history = false;
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(std::size_t iteration, const Dfa& conjecture, const TeacherResponse& response)> observer;
};

struct LearnResult {
  std::string learner;
  Outcome outcome = Outcome::Timeout;
  Dfa dfa;
  std::size_t iterations = 0;
  Sample sample;
  double wall_time = 0.0;
  double learner_time = 0.0;
  double teacher_time = 0.0;
  std::string message;
  /// Conjectures in order, when keep_history is set.
  std::vector<Dfa> history;

  std::size_t dfa_size() const { return dfa.state_count(); }
};

/// CEGIS loop with the SAT learner as conjecture builder.
LearnResult learn(const Teacher& teacher, const LearnOptions& options = {});
/// CEGIS loop with the state-merging learner. Throws InfiniteBranching.
LearnResult learn_rpni(const Teacher& teacher, const LearnOptions& options = {});
LearnResult learn_with(const std::string& learner, const Teacher& teacher, const LearnOptions& options = {});

}  // namespace rsg
