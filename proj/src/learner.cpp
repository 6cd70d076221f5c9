#include "rsg/learner.hpp"

#include <chrono>

#include "rsg/errors.hpp"
#include "rsg/rpni.hpp"
#include "rsg/sat_learner.hpp"
#include "rsg/solver.hpp"

namespace rsg {

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Solved: return "solved";
    case Outcome::Timeout: return "timeout";
    case Outcome::Contradiction: return "contradiction";
    case Outcome::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

using Builder = std::function<Dfa(const Sample&, const StopToken&)>;
using Hook = std::function<void(const Counterexample&)>;

LearnResult cegis(const std::string& name, const Teacher& teacher, const LearnOptions& options, SatBackend& backend,
                  const Builder& build, const Hook& on_counterexample) {
  LearnResult result;
  result.learner = name;
  const auto start = Clock::now();
  StopToken stop = StopToken::after(options.timeout_s);
  stop.set_flag(options.cancel);
  try {
    for (;;) {
      stop.check();
      auto t0 = Clock::now();
      Dfa conjecture = build(result.sample, stop);
      result.learner_time += seconds_since(t0);
      ++result.iterations;
      if (options.keep_history) result.history.push_back(conjecture);

      stop.check();
      t0 = Clock::now();
      TeacherResponse response = teacher.query(conjecture);
      result.teacher_time += seconds_since(t0);
      if (options.observer) options.observer(result.iterations, conjecture, response);
      if (!response) {
        result.outcome = Outcome::Solved;
        result.dfa = std::move(conjecture);
        break;
      }
      if (on_counterexample) on_counterexample(*response);
      if (!result.sample.insert(*response)) {
        throw InternalError("teacher repeated a counterexample the conjecture already satisfies");
      }
      if (options.detect_contradictions && result.sample.consequents_finite()) {
        t0 = Clock::now();
        SampleStatus status = check_contradiction(result.sample, backend, stop);
        result.learner_time += seconds_since(t0);
        if (status == SampleStatus::Contradictory) {
          result.outcome = Outcome::Contradiction;
          result.message = "sample is contradictory: no winning set contains the initial vertices";
          break;
        }
      }
    }
  } catch (const Cancelled&) {
    result.outcome = Outcome::Timeout;
    result.message = "time limit of " + std::to_string(options.timeout_s) + " s reached";
  } catch (const CapExceeded& e) {
    result.outcome = Outcome::CapExceeded;
    result.message = e.what();
  } catch (const Contradiction& e) {
    result.outcome = Outcome::Contradiction;
    result.message = e.what();
  }
  result.wall_time = seconds_since(start);
  return result;
}

}  // namespace

LearnResult learn(const Teacher& teacher, const LearnOptions& options) {
  auto backend = make_backend(options.solver);
  const std::size_t k = teacher.alphabet().size();
  std::size_t last_n = 1;
  Builder build = [&](const Sample& s, const StopToken& stop) {
    // The sample only grows, so smaller sizes stay unsatisfiable.
    SatLearnerOptions o{options.n_cap, last_n};
    Dfa d = minimal_consistent_dfa(s, k, *backend, o, stop);
    last_n = d.state_count();
    return d;
  };
  return cegis("sat", teacher, options, *backend, build, {});
}

LearnResult learn_rpni(const Teacher& teacher, const LearnOptions& options) {
  auto backend = make_backend(options.solver);
  const std::size_t k = teacher.alphabet().size();
  Builder build = [&](const Sample& s, const StopToken& stop) { return merge_learn(s, k, *backend, stop); };
  Hook check_branching = [&](const Counterexample& cex) {
    if (cex.is_implication() && !is_finite(cex.consequent)) {
      throw InfiniteBranching(teacher.alphabet().format(cex.word));
    }
  };
  return cegis("rpni", teacher, options, *backend, build, check_branching);
}

LearnResult learn_with(const std::string& learner, const Teacher& teacher, const LearnOptions& options) {
  if (learner == "sat") return learn(teacher, options);
  if (learner == "rpni") return learn_rpni(teacher, options);
  throw ParameterError("unknown learner '" + learner + "' (expected sat or rpni)");
}

}  // namespace rsg
