#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rsg/cli.hpp"
#include "rsg/errors.hpp"
#include "rsg/game.hpp"
#include "rsg/learner.hpp"
#include "rsg/teacher.hpp"

namespace py = pybind11;
using namespace rsg;

namespace {

std::vector<std::string> words_of(const Nfa& a, const Alphabet& sigma) {
  std::vector<std::string> out;
  for (const auto& w : enumerate_finite(a)) out.push_back(sigma.format(w));
  return out;
}

py::object response_dict(const TeacherResponse& r, const Alphabet& sigma) {
  if (!r) return py::none();
  py::dict d;
  d["kind"] = to_string(r->kind);
  d["word"] = sigma.format(r->word);
  if (r->is_implication()) {
    if (is_finite(r->consequent)) d["consequent"] = words_of(r->consequent, sigma);
    else d["consequent"] = py::none();
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rational safety games solved by learning regular winning sets";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<InfiniteBranching>(m, "InfiniteBranching", PyExc_ValueError);

  py::class_<Dfa>(m, "Dfa")
      .def_property_readonly("state_count", &Dfa::state_count)
      .def_property_readonly("alphabet_size", &Dfa::alphabet_size)
      .def("__eq__", [](const Dfa& a, const Dfa& b) { return a == b; });

  py::class_<RationalSafetyGame>(m, "Game")
      .def_property_readonly("alphabet", [](const RationalSafetyGame& g) { return g.alphabet.symbols(); })
      .def_property_readonly("size", [](const RationalSafetyGame& g) { return game_size(g); })
      .def("validate", [](const RationalSafetyGame& g) { validate(g); })
      .def("serialize", [](const RationalSafetyGame& g) { return serialize(g); })
      .def("is_vertex",
           [](const RationalSafetyGame& g, const std::string& w) {
             Word u = g.alphabet.parse_word(w);
             return accepts(g.v0, u) || accepts(g.v1, u);
           })
      .def("is_safe", [](const RationalSafetyGame& g, const std::string& w) {
        return accepts(g.safe, g.alphabet.parse_word(w));
      })
      .def("is_initial", [](const RationalSafetyGame& g, const std::string& w) {
        return accepts(g.initial, g.alphabet.parse_word(w));
      })
      .def("successors", [](const RationalSafetyGame& g, const std::string& w) {
        Nfa s = successors(g.edges, g.alphabet.parse_word(w));
        if (!is_finite(s)) throw InfiniteBranching(w);
        return words_of(s, g.alphabet);
      });

  m.def("parse_game", &parse_game, py::arg("text"));
  m.def("load_game", &load_game, py::arg("path"));
  m.def(
      "generate_benchmark",
      [](const std::string& family, const std::map<std::string, long>& params) {
        return generate_benchmark({family, params});
      },
      py::arg("family"), py::arg("params") = std::map<std::string, long>{});
  m.def("benchmark_families", &benchmark_families);

  m.def(
      "parse_dfa", [](const std::string& text, const RationalSafetyGame& g) { return parse_dfa(text, g.alphabet); },
      py::arg("text"), py::arg("game"));
  m.def(
      "serialize_dfa", [](const Dfa& d, const RationalSafetyGame& g) { return serialize_dfa(d, g.alphabet); },
      py::arg("dfa"), py::arg("game"));
  m.def(
      "accepts", [](const Dfa& d, const RationalSafetyGame& g, const std::string& w) {
        return accepts(d, g.alphabet.parse_word(w));
      },
      py::arg("dfa"), py::arg("game"), py::arg("word"));
  m.def(
      "dfa_to_dot", [](const Dfa& d, const RationalSafetyGame& g) { return to_dot(d, g.alphabet, "W"); },
      py::arg("dfa"), py::arg("game"));

  m.def(
      "query",
      [](const RationalSafetyGame& g, const Dfa& d) {
        Teacher t(g);
        return response_dict(t.query(d), g.alphabet);
      },
      py::arg("game"), py::arg("dfa"), "None if the DFA is a winning set, else a counterexample dict.");
  m.def(
      "verify", [](const RationalSafetyGame& g, const Dfa& d) { return !Teacher(g).query(d).has_value(); },
      py::arg("game"), py::arg("dfa"));

  m.def(
      "solve",
      [](const RationalSafetyGame& g, const std::string& learner, double timeout, std::size_t max_states,
         const std::string& solver) {
        LearnResult r;
        {
          py::gil_scoped_release release;
          Teacher t(g);
          LearnOptions options;
          options.timeout_s = timeout;
          options.n_cap = max_states;
          options.solver = solver;
          r = learn_with(learner, t, options);
        }
        py::dict d;
        d["learner"] = r.learner;
        d["outcome"] = to_string(r.outcome);
        d["dfa"] = r.outcome == Outcome::Solved ? py::cast(r.dfa) : py::none();
        d["iterations"] = r.iterations;
        d["dfa_size"] = r.outcome == Outcome::Solved ? r.dfa_size() : 0;
        d["pos"] = r.sample.pos().size();
        d["neg"] = r.sample.neg().size();
        d["ex"] = r.sample.ex().size();
        d["uni"] = r.sample.uni().size();
        d["wall_time"] = r.wall_time;
        d["message"] = r.message;
        return d;
      },
      py::arg("game"), py::arg("learner") = "sat", py::arg("timeout") = 300.0, py::arg("max_states") = 32,
      py::arg("solver") = "internal");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "rsg");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line tool in-process; returns (exit code, stdout, stderr).");
  m.attr("CSV_HEADER") = cli::kCsvHeader;
}
