#include <algorithm>
#include <initializer_list>

#include "rsg/errors.hpp"
#include "rsg/game.hpp"

namespace rsg {

namespace {

struct Step {
  bool loop = false;
  Label in = kEpsilon;
  Label out = kEpsilon;
  std::vector<Symbol> copied;
};

Step pair(Label in, Label out) { return Step{false, in, out, {}}; }
Step copy(std::initializer_list<Symbol> symbols) { return Step{true, kEpsilon, kEpsilon, symbols}; }

/// Adds one accepting path of pairs and copy-loops below the initial state.
/// Consecutive loops are separated by a silent edge so they do not interleave.
void add_branch(Transducer& t, const std::vector<Step>& steps) {
  State current = t.initial();
  bool current_has_loop = false;
  for (const Step& step : steps) {
    if (step.loop) {
      if (current_has_loop || current == t.initial()) {
        State next = t.add_state();
        t.add_transition(current, kEpsilon, kEpsilon, next);
        current = next;
      }
      for (Symbol a : step.copied) t.add_transition(current, static_cast<Label>(a), static_cast<Label>(a), current);
      current_has_loop = true;
    } else {
      State next = t.add_state();
      t.add_transition(current, step.in, step.out, next);
      current = next;
      current_has_loop = false;
    }
  }
  t.set_accepting(current);
}

/// tag · body where body is given by an automaton section starting at state `body_start`.
Nfa tagged(std::size_t k, std::initializer_list<Symbol> tags, const Nfa& body) {
  Nfa a(k, 1, 0);
  std::vector<State> map(body.state_count());
  for (State q = 0; q < body.state_count(); ++q) map[q] = a.add_state(body.is_accepting(q));
  for (State q = 0; q < body.state_count(); ++q) {
    for (const Edge& e : body.out(q)) a.add_transition(map[q], e.symbol, map[e.target]);
  }
  for (Symbol tag : tags) a.add_transition(0, tag, map[body.initial()]);
  a.normalize();
  return a;
}

Nfa single_word(std::size_t k, const Word& w) { return word_automaton(k, w); }

long param(const BenchmarkSpec& spec, const std::string& key, long fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

void allow_params(const BenchmarkSpec& spec, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : spec.params) {
    (void)value;
    bool known = std::any_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; });
    if (!known) throw ParameterError("family '" + spec.name + "' has no parameter '" + key + "'");
  }
}

// ---------------------------------------------------------------------------
// One-dimensional robot

enum : Symbol { kS = 0, kE = 1, kL = 2 };

Transducer robot_edges() {
  Transducer t(3, 5, 0);
  for (State q = 1; q <= 4; ++q) t.set_accepting(q);
  t.add_transition(0, kS, kE, 1);
  t.add_transition(1, kL, kL, 1);
  t.add_transition(1, kEpsilon, kL, 2);
  t.add_transition(0, kE, kS, 3);
  t.add_transition(3, kL, kL, 3);
  t.add_transition(3, kL, kEpsilon, 4);
  t.normalize();
  return t;
}

Nfa tag_loop(Symbol tag) {
  Nfa a(3, 2, 0);
  a.set_accepting(1);
  a.add_transition(0, tag, 1);
  a.add_transition(1, kL, 1);
  return a;
}

/// tags · l^lo .. l^hi; hi < 0 means unbounded.
Nfa unary_range(std::initializer_list<Symbol> tags, long lo, long hi) {
  Nfa a(3, 2, 0);
  for (Symbol tag : tags) a.add_transition(0, tag, 1);
  State current = 1;
  long top = hi < 0 ? lo : hi;
  for (long i = 0; i < top; ++i) {
    State next = a.add_state();
    a.add_transition(current, kL, next);
    current = next;
  }
  for (long i = lo; i <= top; ++i) a.set_accepting(static_cast<State>(1 + i));
  if (hi < 0) a.add_transition(current, kL, current);
  a.normalize();
  return a;
}

RationalSafetyGame robot_game(long k, long kprime) {
  RationalSafetyGame g;
  g.alphabet = Alphabet({"s", "e", "l"});
  g.v0 = tag_loop(kS);
  g.v1 = tag_loop(kE);
  g.edges = robot_edges();
  g.safe = unary_range({kS, kE}, k, kprime);
  return g;
}

RationalSafetyGame example_game(const BenchmarkSpec& spec) {
  allow_params(spec, {"k"});
  long k = param(spec, "k", 2);
  if (k < 1) throw ParameterError("example requires k >= 1");
  RationalSafetyGame g = robot_game(k, -1);
  g.initial = unary_range({kS}, k, -1);
  return g;
}

RationalSafetyGame interval_game(const BenchmarkSpec& spec) {
  allow_params(spec, {"k", "kprime"});
  if (!spec.params.count("kprime")) throw ParameterError("interval requires parameter kprime");
  long k = param(spec, "k", 1);
  long kprime = spec.params.at("kprime");
  if (k < 1 || k >= kprime) throw ParameterError("interval requires 1 <= k < kprime");
  RationalSafetyGame g = robot_game(k, kprime);
  Word start{kS};
  start.insert(start.end(), static_cast<std::size_t>(k), kL);
  g.initial = single_word(3, start);
  return g;
}

// ---------------------------------------------------------------------------
// Two-dimensional grid: tag · b^min(x,y) · (h^(x-y) | v^(y-x))

enum : Symbol { kGs = 0, kGe = 1, kB = 2, kH = 3, kV = 4 };

Nfa grid_body() {
  Nfa a(5, 3, 0);
  for (State q = 0; q < 3; ++q) a.set_accepting(q);
  a.add_transition(0, kB, 0);
  a.add_transition(0, kH, 1);
  a.add_transition(1, kH, 1);
  a.add_transition(0, kV, 2);
  a.add_transition(2, kV, 2);
  return a;
}

/// Moves along the axis whose excess letter is `own`; `other` is the excess letter of the other axis.
void add_axis_moves(Transducer& t, Label tag_in, Label tag_out, Label own, Label other) {
  auto own_s = static_cast<Symbol>(own);
  auto other_s = static_cast<Symbol>(other);
  add_branch(t, {pair(tag_in, tag_out), copy({kB}), copy({own_s}), pair(kEpsilon, own)});
  add_branch(t, {pair(tag_in, tag_out), copy({kB}), pair(other, kB), copy({other_s})});
  add_branch(t, {pair(tag_in, tag_out), copy({kB}), copy({own_s}), pair(own, kEpsilon)});
  add_branch(t, {pair(tag_in, tag_out), copy({kB}), pair(kB, other), copy({other_s})});
}

RationalSafetyGame grid_game(const Nfa& safe_body, bool solitary) {
  RationalSafetyGame g;
  g.alphabet = Alphabet({"s", "e", "b", "h", "v"});
  Nfa body = grid_body();
  g.v0 = tagged(5, {kGs}, body);
  g.v1 = tagged(5, {kGe}, body);
  Transducer t(5, 1, 0);
  // Player 0 moves vertically (v is the y excess), player 1 horizontally.
  add_axis_moves(t, kGs, kGe, kV, kH);
  if (solitary) {
    add_axis_moves(t, kGs, kGe, kH, kV);
    add_branch(t, {pair(kGe, kGs), copy({kB, kH, kV})});
  } else {
    add_axis_moves(t, kGe, kGs, kH, kV);
  }
  t.normalize();
  g.edges = std::move(t);
  g.safe = tagged(5, {kGs, kGe}, safe_body);
  g.initial = single_word(5, {kGs});
  return g;
}

RationalSafetyGame diagonal_game(const BenchmarkSpec& spec) {
  allow_params(spec, {"margin"});
  long margin = param(spec, "margin", 2);
  if (margin < 0) throw ParameterError("diagonal requires margin >= 0");
  Nfa body(5, 1, 0);
  body.set_accepting(0);
  body.add_transition(0, kB, 0);
  for (Symbol excess : {kH, kV}) {
    State current = 0;
    for (long i = 0; i < margin; ++i) {
      State next = body.add_state(true);
      body.add_transition(current, excess, next);
      current = next;
    }
  }
  return grid_game(body, false);
}

/// Stripe 0 <= y < width, where y = #b + #v.
Nfa stripe_body(long width) {
  Nfa body(5, 1, 0);
  body.set_accepting(0);
  State h_tail = body.add_state(true);
  body.add_transition(h_tail, kH, h_tail);
  body.add_transition(0, kH, h_tail);
  std::vector<State> b_chain{0};
  std::vector<State> v_chain{0};
  for (long y = 1; y < width; ++y) {
    State b = body.add_state(true);
    State v = body.add_state(true);
    body.add_transition(b_chain.back(), kB, b);
    body.add_transition(b, kH, h_tail);
    body.add_transition(b_chain.back(), kV, v);
    body.add_transition(v_chain.back(), kV, v);
    b_chain.push_back(b);
    v_chain.push_back(v);
  }
  body.normalize();
  return body;
}

RationalSafetyGame box_game(const BenchmarkSpec& spec, bool solitary) {
  allow_params(spec, {"width"});
  long width = param(spec, "width", 3);
  if (width < 1) throw ParameterError("box requires width >= 1");
  return grid_game(stripe_body(width), solitary);
}

// ---------------------------------------------------------------------------
// Two robots: tag · x^|dx| · y^|dy|

enum : Symbol { kRs = 0, kRe = 1, kX = 2, kY = 3 };

void add_relative_moves(Transducer& t, Label tag_in, Label tag_out) {
  add_branch(t, {pair(tag_in, tag_out), copy({kX}), pair(kEpsilon, kX), copy({kY})});
  add_branch(t, {pair(tag_in, tag_out), copy({kX}), pair(kX, kEpsilon), copy({kY})});
  add_branch(t, {pair(tag_in, tag_out), copy({kX}), copy({kY}), pair(kEpsilon, kY)});
  add_branch(t, {pair(tag_in, tag_out), copy({kX}), copy({kY}), pair(kY, kEpsilon)});
}

RationalSafetyGame robots_game(const Nfa& safe) {
  RationalSafetyGame g;
  g.alphabet = Alphabet({"s", "e", "x", "y"});
  Nfa body(4, 2, 0);
  body.set_accepting(0);
  body.set_accepting(1);
  body.add_transition(0, kX, 0);
  body.add_transition(0, kY, 1);
  body.add_transition(1, kY, 1);
  g.v0 = tagged(4, {kRs}, body);
  g.v1 = tagged(4, {kRe}, body);
  Transducer t(4, 1, 0);
  add_relative_moves(t, kRs, kRe);
  add_relative_moves(t, kRe, kRs);
  t.normalize();
  g.edges = std::move(t);
  g.safe = safe;
  g.initial = single_word(4, {kRs, kX});
  return g;
}

RationalSafetyGame evasion_game(const BenchmarkSpec& spec) {
  allow_params(spec, {});
  // Displacement other than (0, 0).
  Nfa body(4, 3, 0);
  body.set_accepting(1);
  body.set_accepting(2);
  body.add_transition(0, kX, 1);
  body.add_transition(1, kX, 1);
  body.add_transition(0, kY, 2);
  body.add_transition(1, kY, 2);
  body.add_transition(2, kY, 2);
  return robots_game(tagged(4, {kRs, kRe}, body));
}

RationalSafetyGame follow_game(const BenchmarkSpec& spec) {
  allow_params(spec, {"distance"});
  long distance = param(spec, "distance", 2);
  if (distance < 0) throw ParameterError("follow requires distance >= 0");
  // States (i, phase): i letters read so far, phase 0 while reading x, 1 while reading y.
  const long n = distance + 1;
  Nfa body(4, static_cast<std::size_t>(2 * n), 0);
  auto id = [&](long i, int phase) { return static_cast<State>(2 * i + phase); };
  for (long i = 0; i < n; ++i) {
    body.set_accepting(id(i, 0));
    body.set_accepting(id(i, 1));
    if (i + 1 < n) {
      body.add_transition(id(i, 0), kX, id(i + 1, 0));
      body.add_transition(id(i, 0), kY, id(i + 1, 1));
      body.add_transition(id(i, 1), kY, id(i + 1, 1));
    }
  }
  Nfa safe = tagged(4, {kRs, kRe}, body);
  return robots_game(trim(safe));
}

// ---------------------------------------------------------------------------
// Program repair: tag · c^x, the environment adds 1 or 2, the repair subtracts 0..2.

enum : Symbol { kPs = 0, kPe = 1, kC = 2 };

RationalSafetyGame program_repair_game(const BenchmarkSpec& spec) {
  allow_params(spec, {"bound"});
  long bound = param(spec, "bound", 3);
  if (bound < 2) throw ParameterError("program-repair requires bound >= 2");
  RationalSafetyGame g;
  g.alphabet = Alphabet({"s", "e", "c"});
  Nfa loop(3, 1, 0);
  loop.set_accepting(0);
  loop.add_transition(0, kC, 0);
  g.v0 = tagged(3, {kPs}, loop);
  g.v1 = tagged(3, {kPe}, loop);
  Transducer t(3, 1, 0);
  add_branch(t, {pair(kPe, kPs), copy({kC}), pair(kEpsilon, kC)});
  add_branch(t, {pair(kPe, kPs), copy({kC}), pair(kEpsilon, kC), pair(kEpsilon, kC)});
  add_branch(t, {pair(kPs, kPe), copy({kC})});
  add_branch(t, {pair(kPs, kPe), copy({kC}), pair(kC, kEpsilon)});
  add_branch(t, {pair(kPs, kPe), copy({kC}), pair(kC, kEpsilon), pair(kC, kEpsilon)});
  t.normalize();
  g.edges = std::move(t);
  Nfa counter(3, static_cast<std::size_t>(bound + 1), 0);
  for (long i = 0; i <= bound; ++i) {
    counter.set_accepting(static_cast<State>(i));
    if (i < bound) counter.add_transition(static_cast<State>(i), kC, static_cast<State>(i + 1));
  }
  g.safe = tagged(3, {kPs, kPe}, counter);
  g.initial = single_word(3, {kPs});
  return g;
}

}  // namespace

std::vector<std::string> benchmark_families() {
  return {"example", "interval", "diagonal", "box", "solitary-box", "evasion", "follow", "program-repair"};
}

RationalSafetyGame generate_benchmark(const BenchmarkSpec& spec) {
  RationalSafetyGame g;
  if (spec.name == "example") {
    g = example_game(spec);
  } else if (spec.name == "interval") {
    g = interval_game(spec);
  } else if (spec.name == "diagonal") {
    g = diagonal_game(spec);
  } else if (spec.name == "box") {
    g = box_game(spec, false);
  } else if (spec.name == "solitary-box") {
    g = box_game(spec, true);
  } else if (spec.name == "evasion") {
    g = evasion_game(spec);
  } else if (spec.name == "follow") {
    g = follow_game(spec);
  } else if (spec.name == "program-repair") {
    g = program_repair_game(spec);
  } else {
    throw ParameterError("unknown benchmark family '" + spec.name + "'");
  }
  validate(g);
  return g;
}

}  // namespace rsg
