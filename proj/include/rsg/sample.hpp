#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rsg/automata.hpp"
#include "rsg/logic.hpp"
#include "rsg/solver.hpp"
#include "rsg/teacher.hpp"

namespace rsg {

struct ImplicationItem {
  Word antecedent;
  Nfa consequent;
  /// Minimal DFA of the consequent, used for deduplication.
  Dfa canonical;
};

/// The learner's store (Pos, Neg, Ex, Uni). Insertion ordered and duplicate free.
class Sample {
 public:
  const std::vector<Word>& pos() const { return pos_; }
  const std::vector<Word>& neg() const { return neg_; }
  const std::vector<ImplicationItem>& ex() const { return ex_; }
  const std::vector<ImplicationItem>& uni() const { return uni_; }

  /// Returns a new sample; duplicates leave it unchanged.
  [[nodiscard]] Sample add(const Counterexample& cex) const;
  /// In-place variant; returns false for a duplicate.
  bool insert(const Counterexample& cex);

  std::size_t size() const { return pos_.size() + neg_.size() + ex_.size() + uni_.size(); }
  bool empty() const { return size() == 0; }
  /// Pos ∪ Neg ∪ Ante(Ex) ∪ Ante(Uni) in shortlex order.
  std::vector<Word> word_universe() const;
  bool consequents_finite() const;

 private:
  std::vector<Word> pos_;
  std::vector<Word> neg_;
  std::vector<ImplicationItem> ex_;
  std::vector<ImplicationItem> uni_;
};

struct ConsistencyReport {
  bool consistent = true;
  CexKind violated = CexKind::Positive;
  std::size_t index = 0;  // position of the violating item in its list
  std::string message;

  explicit operator bool() const { return consistent; }
};

ConsistencyReport check_consistency(const Dfa& d, const Sample& s);
bool is_consistent(const Dfa& d, const Sample& s);

/// Boolean abstraction of the sample over the finite word universe V.
struct ChiEncoding {
  std::vector<Word> universe;  // x_w has id index+1
  PropFormula formula;
};

/// Throws InfiniteLanguage if a consequent language is infinite.
ChiEncoding build_chi(const Sample& s);
/// Words set true by the first model of χ, in shortlex order; nullopt if χ is unsatisfiable.
std::optional<std::vector<Word>> solve_chi(const Sample& s, SatBackend& backend, const StopToken& stop = {});

enum class SampleStatus { Consistent, Contradictory, Unknown };
std::string to_string(SampleStatus status);
SampleStatus check_contradiction(const Sample& s, SatBackend& backend, const StopToken& stop = {});
SampleStatus check_contradiction(const Sample& s);

/// Debug dump, one item per line: `+ w`, `- w`, `E w -> v1 v2`, `U w -> v1 v2`.
std::string dump(const Sample& s, const Alphabet& alphabet);
/// Word without separators when every token is a single character, else dot separated.
std::string compact(const Word& w, const Alphabet& alphabet);

}  // namespace rsg
