#include "rsg/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>

#include "rsg/errors.hpp"

namespace rsg {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::uint64_t pair_key(State a, State b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

void check_same_alphabet(std::size_t a, std::size_t b) {
  if (a != b) {
    throw AlphabetMismatch("alphabet sizes differ: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

void check_word(std::size_t alphabet_size, const Word& u) {
  for (Symbol a : u) {
    if (a >= alphabet_size) {
      throw InvalidWord("symbol index " + std::to_string(a) + " out of range for alphabet of size " +
                        std::to_string(alphabet_size));
    }
  }
}

std::vector<bool> reachable_states(const Nfa& a) {
  std::vector<bool> seen(a.state_count(), false);
  std::vector<State> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (const Edge& e : a.out(q)) {
      if (!seen[e.target]) {
        seen[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  return seen;
}

/// Length of the shortest path from each state to an accepting state.
std::vector<std::size_t> distance_to_accepting(const Nfa& a) {
  std::vector<std::vector<State>> in(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    for (const Edge& e : a.out(q)) in[e.target].push_back(q);
  }
  std::vector<std::size_t> dist(a.state_count(), kUnreached);
  std::deque<State> queue;
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.is_accepting(q)) {
      dist[q] = 0;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    State q = queue.front();
    queue.pop_front();
    for (State p : in[q]) {
      if (dist[p] == kUnreached) {
        dist[p] = dist[q] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

std::vector<bool> reachable_states(const Dfa& d) {
  std::vector<bool> seen(d.state_count(), false);
  std::vector<State> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Symbol a = 0; a < d.alphabet_size(); ++a) {
      State t = d.next(q, a);
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

}  // namespace

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw Error("alphabet must not be empty");
  for (Symbol i = 0; i < symbols_.size(); ++i) {
    const std::string& s = symbols_[i];
    if (s.empty()) throw Error("alphabet symbols must not be empty");
    if (s == kEpsilonToken) throw Error("'_' is reserved for ε and cannot be an alphabet symbol");
    for (char c : s) {
      if (static_cast<unsigned char>(c) <= ' ' || c == '/' || c == '#') {
        throw Error("alphabet symbol '" + s + "' contains a reserved or non-printable character");
      }
    }
    if (!index_.emplace(s, i).second) throw Error("duplicate alphabet symbol '" + s + "'");
  }
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Word Alphabet::parse_word(std::string_view text) const {
  Word word;
  std::istringstream in{std::string(text)};
  std::string chunk;
  while (in >> chunk) {
    if (chunk == "ε") continue;
    if (auto a = find(chunk)) {
      word.push_back(*a);
      continue;
    }
    Word split;
    for (char c : chunk) {
      auto a = find(std::string_view(&c, 1));
      if (!a) throw InvalidWord("unknown symbol '" + chunk + "'");
      split.push_back(*a);
    }
    word.insert(word.end(), split.begin(), split.end());
  }
  return word;
}

std::string Alphabet::format(const Word& word) const {
  if (word.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += symbol(word[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nfa

Nfa::Nfa(std::size_t alphabet_size, std::size_t state_count, State initial)
    : alphabet_size_(alphabet_size), initial_(initial), out_(state_count), accepting_(state_count, false) {
  if (state_count == 0) throw Error("an automaton needs at least one state");
  if (initial >= state_count) throw Error("initial state out of range");
}

std::size_t Nfa::transition_count() const {
  std::size_t n = 0;
  for (const auto& edges : out_) n += edges.size();
  return n;
}

std::vector<State> Nfa::accepting_states() const {
  std::vector<State> result;
  for (State q = 0; q < accepting_.size(); ++q) {
    if (accepting_[q]) result.push_back(q);
  }
  return result;
}

State Nfa::add_state(bool accepting) {
  out_.emplace_back();
  accepting_.push_back(accepting);
  return static_cast<State>(out_.size() - 1);
}

void Nfa::set_initial(State q) {
  if (q >= out_.size()) throw Error("initial state out of range");
  initial_ = q;
}

void Nfa::set_accepting(State q, bool accepting) {
  if (q >= out_.size()) throw Error("accepting state out of range");
  accepting_[q] = accepting;
}

void Nfa::add_transition(State from, Symbol symbol, State to) {
  if (from >= out_.size() || to >= out_.size()) throw Error("transition endpoint out of range");
  if (symbol >= alphabet_size_) throw InvalidWord("transition symbol out of range");
  out_[from].push_back({symbol, to});
}

void Nfa::normalize() {
  for (auto& edges : out_) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
}

// ---------------------------------------------------------------------------
// Dfa

Dfa::Dfa(std::size_t alphabet_size, std::size_t state_count)
    : alphabet_size_(alphabet_size), delta_(alphabet_size * state_count, 0), accepting_(state_count, false) {
  if (state_count == 0) throw Error("an automaton needs at least one state");
}

void Dfa::set_next(State q, Symbol a, State to) {
  if (q >= state_count() || to >= state_count() || a >= alphabet_size_) throw Error("DFA transition out of range");
  delta_[q * alphabet_size_ + a] = to;
}

void Dfa::set_accepting(State q, bool accepting) { accepting_.at(q) = accepting; }

State Dfa::add_state(bool accepting) {
  State q = static_cast<State>(accepting_.size());
  accepting_.push_back(accepting);
  delta_.resize(delta_.size() + alphabet_size_, q);
  return q;
}

Nfa Dfa::to_nfa() const {
  Nfa a(alphabet_size_, state_count(), 0);
  for (State q = 0; q < state_count(); ++q) {
    a.set_accepting(q, accepting_[q]);
    for (Symbol s = 0; s < alphabet_size_; ++s) a.add_transition(q, s, next(q, s));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Membership and constructors

bool accepts(const Nfa& a, const Word& u) {
  check_word(a.alphabet_size(), u);
  std::vector<State> current{a.initial()};
  std::vector<bool> mark(a.state_count(), false);
  for (Symbol s : u) {
    std::vector<State> next;
    for (State q : current) {
      for (const Edge& e : a.out(q)) {
        if (e.symbol == s && !mark[e.target]) {
          mark[e.target] = true;
          next.push_back(e.target);
        }
      }
    }
    for (State q : next) mark[q] = false;
    current = std::move(next);
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return a.is_accepting(q); });
}

bool accepts(const Dfa& d, const Word& u) {
  check_word(d.alphabet_size(), u);
  State q = 0;
  for (Symbol s : u) q = d.next(q, s);
  return d.is_accepting(q);
}

Nfa empty_language(std::size_t alphabet_size) { return Nfa(alphabet_size, 1, 0); }

Nfa universal_language(std::size_t alphabet_size) {
  Nfa a(alphabet_size, 1, 0);
  a.set_accepting(0);
  for (Symbol s = 0; s < alphabet_size; ++s) a.add_transition(0, s, 0);
  return a;
}

Nfa word_automaton(std::size_t alphabet_size, const Word& u) {
  check_word(alphabet_size, u);
  Nfa a(alphabet_size, u.size() + 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i) a.add_transition(static_cast<State>(i), u[i], static_cast<State>(i + 1));
  a.set_accepting(static_cast<State>(u.size()));
  return a;
}

Nfa finite_language(std::size_t alphabet_size, std::span<const Word> words) {
  Nfa a(alphabet_size, 1, 0);
  std::vector<std::vector<std::pair<Symbol, State>>> children(1);
  for (const Word& w : words) {
    check_word(alphabet_size, w);
    State q = 0;
    for (Symbol s : w) {
      auto& kids = children[q];
      auto it = std::find_if(kids.begin(), kids.end(), [&](const auto& kv) { return kv.first == s; });
      if (it != kids.end()) {
        q = it->second;
      } else {
        State t = a.add_state();
        children.emplace_back();
        children[q].emplace_back(s, t);
        a.add_transition(q, s, t);
        q = t;
      }
    }
    a.set_accepting(q);
  }
  a.normalize();
  return a;
}

// ---------------------------------------------------------------------------
// Boolean operations

Dfa determinize(const Nfa& a) {
  const std::size_t k = a.alphabet_size();
  std::map<std::vector<State>, State> ids;
  std::vector<std::vector<State>> subsets;

  Dfa d(k, 1);
  subsets.push_back({a.initial()});
  ids.emplace(subsets[0], 0);
  d.set_accepting(0, a.is_accepting(a.initial()));

  std::vector<std::vector<State>> buckets(k);
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    for (auto& b : buckets) b.clear();
    for (State q : subsets[i]) {
      for (const Edge& e : a.out(q)) buckets[e.symbol].push_back(e.target);
    }
    for (Symbol s = 0; s < k; ++s) {
      auto& target = buckets[s];
      std::sort(target.begin(), target.end());
      target.erase(std::unique(target.begin(), target.end()), target.end());
      auto [it, inserted] = ids.emplace(target, static_cast<State>(subsets.size()));
      if (inserted) {
        bool acc = std::any_of(target.begin(), target.end(), [&](State q) { return a.is_accepting(q); });
        d.add_state(acc);
        subsets.push_back(target);
      }
      d.set_next(static_cast<State>(i), s, it->second);
    }
  }
  return d;
}

Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (State q = 0; q < c.state_count(); ++q) c.set_accepting(q, !d.is_accepting(q));
  return c;
}

Nfa intersect(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a.alphabet_size(), b.alphabet_size());
  Nfa p(a.alphabet_size(), 1, 0);
  std::unordered_map<std::uint64_t, State> ids;
  std::vector<std::pair<State, State>> pairs{{a.initial(), b.initial()}};
  ids.emplace(pair_key(a.initial(), b.initial()), 0);
  p.set_accepting(0, a.is_accepting(a.initial()) && b.is_accepting(b.initial()));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [qa, qb] = pairs[i];
    for (const Edge& ea : a.out(qa)) {
      for (const Edge& eb : b.out(qb)) {
        if (ea.symbol != eb.symbol) continue;
        auto [it, inserted] = ids.emplace(pair_key(ea.target, eb.target), static_cast<State>(pairs.size()));
        if (inserted) {
          pairs.emplace_back(ea.target, eb.target);
          p.add_state(a.is_accepting(ea.target) && b.is_accepting(eb.target));
        }
        p.add_transition(static_cast<State>(i), ea.symbol, it->second);
      }
    }
  }
  return trim(p);
}

Nfa unite(const Nfa& a, const Nfa& b) {
  check_same_alphabet(a.alphabet_size(), b.alphabet_size());
  const State offset_a = 1;
  const State offset_b = static_cast<State>(1 + a.state_count());
  Nfa u(a.alphabet_size(), 1 + a.state_count() + b.state_count(), 0);
  auto copy = [&](const Nfa& src, State offset) {
    for (State q = 0; q < src.state_count(); ++q) {
      u.set_accepting(q + offset, src.is_accepting(q));
      for (const Edge& e : src.out(q)) u.add_transition(q + offset, e.symbol, e.target + offset);
    }
    for (const Edge& e : src.out(src.initial())) u.add_transition(0, e.symbol, e.target + offset);
  };
  copy(a, offset_a);
  copy(b, offset_b);
  u.set_accepting(0, a.is_accepting(a.initial()) || b.is_accepting(b.initial()));
  return trim(u);
}

Nfa difference(const Nfa& a, const Nfa& b) { return intersect(a, complement(determinize(b)).to_nfa()); }

Nfa difference(const Nfa& a, const Dfa& d) {
  check_same_alphabet(a.alphabet_size(), d.alphabet_size());
  return intersect(a, complement(d).to_nfa());
}

Nfa trim(const Nfa& a) {
  std::vector<bool> reach = reachable_states(a);
  std::vector<std::size_t> dist = distance_to_accepting(a);
  std::vector<State> id(a.state_count(), static_cast<State>(-1));
  if (dist[a.initial()] == kUnreached) return empty_language(a.alphabet_size());

  Nfa t(a.alphabet_size(), 1, 0);
  id[a.initial()] = 0;
  for (State q = 0; q < a.state_count(); ++q) {
    if (q == a.initial() || !reach[q] || dist[q] == kUnreached) continue;
    id[q] = t.add_state();
  }
  for (State q = 0; q < a.state_count(); ++q) {
    if (id[q] == static_cast<State>(-1)) continue;
    t.set_accepting(id[q], a.is_accepting(q));
    for (const Edge& e : a.out(q)) {
      if (id[e.target] != static_cast<State>(-1)) t.add_transition(id[q], e.symbol, id[e.target]);
    }
  }
  t.normalize();
  return t;
}

bool is_empty(const Nfa& a) { return distance_to_accepting(a)[a.initial()] == kUnreached; }

bool is_empty(const Dfa& d) {
  std::vector<bool> reach = reachable_states(d);
  for (State q = 0; q < d.state_count(); ++q) {
    if (reach[q] && d.is_accepting(q)) return false;
  }
  return true;
}

bool is_subset(const Nfa& a, const Nfa& b) { return is_empty(difference(a, b)); }

bool intersects(const Dfa& d, const Nfa& a) {
  check_same_alphabet(d.alphabet_size(), a.alphabet_size());
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<std::pair<State, State>> stack{{0, a.initial()}};
  seen.emplace(pair_key(0, a.initial()), true);
  while (!stack.empty()) {
    auto [qd, qa] = stack.back();
    stack.pop_back();
    if (d.is_accepting(qd) && a.is_accepting(qa)) return true;
    for (const Edge& e : a.out(qa)) {
      State nd = d.next(qd, e.symbol);
      if (seen.emplace(pair_key(nd, e.target), true).second) stack.emplace_back(nd, e.target);
    }
  }
  return false;
}

bool included_in(const Nfa& a, const Dfa& d) {
  check_same_alphabet(d.alphabet_size(), a.alphabet_size());
  std::unordered_map<std::uint64_t, bool> seen;
  std::vector<std::pair<State, State>> stack{{0, a.initial()}};
  seen.emplace(pair_key(0, a.initial()), true);
  while (!stack.empty()) {
    auto [qd, qa] = stack.back();
    stack.pop_back();
    if (a.is_accepting(qa) && !d.is_accepting(qd)) return false;
    for (const Edge& e : a.out(qa)) {
      State nd = d.next(qd, e.symbol);
      if (seen.emplace(pair_key(nd, e.target), true).second) stack.emplace_back(nd, e.target);
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Words

std::optional<Word> shortest_word(const Nfa& a) {
  std::vector<std::size_t> dist = distance_to_accepting(a);
  if (dist[a.initial()] == kUnreached) return std::nullopt;

  Word word;
  std::vector<State> current{a.initial()};
  std::size_t remaining = dist[a.initial()];
  std::vector<bool> mark(a.state_count(), false);
  while (remaining > 0) {
    bool advanced = false;
    for (Symbol s = 0; s < a.alphabet_size() && !advanced; ++s) {
      std::vector<State> next;
      bool on_track = false;
      for (State q : current) {
        for (const Edge& e : a.out(q)) {
          if (e.symbol != s || dist[e.target] == kUnreached || mark[e.target]) continue;
          mark[e.target] = true;
          next.push_back(e.target);
          if (dist[e.target] == remaining - 1) on_track = true;
        }
      }
      for (State q : next) mark[q] = false;
      if (on_track) {
        std::erase_if(next, [&](State q) { return dist[q] != remaining - 1; });
        current = std::move(next);
        word.push_back(s);
        --remaining;
        advanced = true;
      }
    }
    if (!advanced) throw InternalError("shortest_word lost its track");
  }
  return word;
}

bool is_finite(const Nfa& a) {
  Nfa t = trim(a);
  if (is_empty(t)) return true;
  // Iterative three-colour DFS; a back edge means a useful cycle.
  enum : std::uint8_t { kWhite, kGrey, kBlack };
  std::vector<std::uint8_t> colour(t.state_count(), kWhite);
  std::vector<std::pair<State, std::size_t>> stack{{t.initial(), 0}};
  colour[t.initial()] = kGrey;
  while (!stack.empty()) {
    auto& [q, next_edge] = stack.back();
    if (next_edge < t.out(q).size()) {
      State target = t.out(q)[next_edge++].target;
      if (colour[target] == kGrey) return false;
      if (colour[target] == kWhite) {
        colour[target] = kGrey;
        stack.emplace_back(target, 0);
      }
    } else {
      colour[q] = kBlack;
      stack.pop_back();
    }
  }
  return true;
}

std::vector<Word> enumerate_finite(const Nfa& a) {
  if (!is_finite(a)) throw InfiniteLanguage("language is infinite");
  Nfa t = trim(a);
  std::vector<Word> words;
  if (is_empty(t)) return words;
  Word current;
  // Explicit DFS over paths of the trimmed acyclic automaton.
  std::vector<std::pair<State, std::size_t>> stack{{t.initial(), 0}};
  if (t.is_accepting(t.initial())) words.push_back(current);
  while (!stack.empty()) {
    auto& [q, next_edge] = stack.back();
    if (next_edge < t.out(q).size()) {
      const Edge& e = t.out(q)[next_edge++];
      current.push_back(e.symbol);
      if (t.is_accepting(e.target)) words.push_back(current);
      stack.emplace_back(e.target, 0);
    } else {
      stack.pop_back();
      if (!current.empty() && !stack.empty()) current.pop_back();
    }
  }
  std::sort(words.begin(), words.end(), ShortlexLess{});
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return words;
}

std::vector<Word> enumerate_up_to(const Nfa& a, std::size_t max_len) {
  Dfa d = determinize(trim(a));
  Nfa dn = d.to_nfa();
  std::vector<std::size_t> dist = distance_to_accepting(dn);
  std::vector<Word> result;
  std::vector<std::pair<State, Word>> level{{0, {}}};
  for (std::size_t len = 0; len <= max_len && !level.empty(); ++len) {
    std::vector<std::pair<State, Word>> next;
    for (auto& [q, w] : level) {
      if (d.is_accepting(q)) result.push_back(w);
      if (len == max_len) continue;
      for (Symbol s = 0; s < d.alphabet_size(); ++s) {
        State t = d.next(q, s);
        if (dist[t] == kUnreached || len + 1 + dist[t] > max_len) continue;
        Word nw = w;
        nw.push_back(s);
        next.emplace_back(t, std::move(nw));
      }
    }
    level = std::move(next);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Minimization

Dfa minimize(const Dfa& d) {
  const std::size_t k = d.alphabet_size();
  std::vector<bool> reach = reachable_states(d);
  std::vector<State> states;
  for (State q = 0; q < d.state_count(); ++q) {
    if (reach[q]) states.push_back(q);
  }

  // Moore refinement: class ids are stable once the count stops growing.
  std::vector<std::size_t> cls(d.state_count(), 0);
  for (State q : states) cls[q] = d.is_accepting(q) ? 1 : 0;
  std::size_t class_count = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature_ids;
    std::vector<std::size_t> next_cls(d.state_count(), 0);
    std::vector<std::size_t> signature(k + 1);
    for (State q : states) {
      signature[0] = cls[q];
      for (Symbol s = 0; s < k; ++s) signature[s + 1] = cls[d.next(q, s)];
      auto [it, inserted] = signature_ids.emplace(signature, signature_ids.size());
      next_cls[q] = it->second;
    }
    cls = std::move(next_cls);
    if (signature_ids.size() == class_count) break;
    class_count = signature_ids.size();
  }

  // Canonical numbering: breadth-first from the initial class, symbols in order.
  std::vector<State> representative(class_count, 0);
  for (State q : states) representative[cls[q]] = q;
  std::vector<State> order_id(class_count, static_cast<State>(-1));
  std::vector<std::size_t> order;
  order_id[cls[0]] = 0;
  order.push_back(cls[0]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    State rep = representative[order[i]];
    for (Symbol s = 0; s < k; ++s) {
      std::size_t c = cls[d.next(rep, s)];
      if (order_id[c] == static_cast<State>(-1)) {
        order_id[c] = static_cast<State>(order.size());
        order.push_back(c);
      }
    }
  }
  Dfa m(k, order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    State rep = representative[order[i]];
    m.set_accepting(static_cast<State>(i), d.is_accepting(rep));
    for (Symbol s = 0; s < k; ++s) m.set_next(static_cast<State>(i), s, order_id[cls[d.next(rep, s)]]);
  }
  return m;
}

bool equivalent(const Dfa& a, const Dfa& b) {
  check_same_alphabet(a.alphabet_size(), b.alphabet_size());
  return minimize(a) == minimize(b);
}

bool equivalent(const Nfa& a, const Nfa& b) { return equivalent(determinize(a), determinize(b)); }

// ---------------------------------------------------------------------------
// DOT

std::string to_dot(const Nfa& a, const Alphabet& alphabet, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n  rankdir=LR;\n  __start [shape=point];\n";
  for (State q = 0; q < a.state_count(); ++q) {
    out << "  q" << q << " [shape=" << (a.is_accepting(q) ? "doublecircle" : "circle") << ", label=\"" << q
        << "\"];\n";
  }
  out << "  __start -> q" << a.initial() << ";\n";
  for (State q = 0; q < a.state_count(); ++q) {
    std::map<State, std::vector<Symbol>> grouped;
    for (const Edge& e : a.out(q)) grouped[e.target].push_back(e.symbol);
    for (auto& [target, symbols] : grouped) {
      std::sort(symbols.begin(), symbols.end());
      symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
      out << "  q" << q << " -> q" << target << " [label=\"";
      for (std::size_t i = 0; i < symbols.size(); ++i) out << (i ? "," : "") << alphabet.symbol(symbols[i]);
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_dot(const Dfa& d, const Alphabet& alphabet, std::string_view name) {
  return to_dot(d.to_nfa(), alphabet, name);
}

}  // namespace rsg
