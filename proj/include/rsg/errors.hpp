#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rsg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidWord : public Error {
 public:
  using Error::Error;
};

class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

class InfiniteLanguage : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A structurally valid game that violates one of its semantic invariants.
class InvariantViolation : public Error {
 public:
  InvariantViolation(std::string invariant, std::string witness)
      : Error("invariant '" + invariant + "' violated, witness: " + (witness.empty() ? "ε" : witness)),
        invariant_(std::move(invariant)),
        witness_(std::move(witness)) {}

  const std::string& invariant() const { return invariant_; }
  const std::string& witness() const { return witness_; }

 private:
  std::string invariant_;
  std::string witness_;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A vertex with infinitely many successors was met by a learner that needs finite branching.
class InfiniteBranching : public Error {
 public:
  InfiniteBranching(std::string vertex)
      : Error("vertex " + (vertex.empty() ? std::string("ε") : vertex) + " has infinitely many successors"),
        vertex_(std::move(vertex)) {}

  const std::string& vertex() const { return vertex_; }

 private:
  std::string vertex_;
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(std::size_t last_tried)
      : Error("no consistent DFA with at most " + std::to_string(last_tried) + " states"),
        last_tried_(last_tried) {}

  std::size_t last_tried() const { return last_tried_; }

 private:
  std::size_t last_tried_;
};

class Contradiction : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

class Cancelled : public Error {
 public:
  Cancelled() : Error("cancelled") {}
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rsg
