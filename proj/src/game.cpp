#include "rsg/game.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "rsg/errors.hpp"

namespace rsg {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

std::size_t parse_index(const Token& tok, std::size_t line, std::size_t bound, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
    throw ParseError(line, tok.column, std::string("expected ") + what + ", got '" + std::string(tok.text) + "'");
  }
  if (value >= bound) {
    throw ParseError(line, tok.column,
                     std::string(what) + " " + std::to_string(value) + " out of range (" + std::to_string(bound) + ")");
  }
  return value;
}

struct PendingTransition {
  std::size_t src;
  Label in;
  Label out;
  std::size_t dst;
};

/// Accumulates one automaton section.
struct SectionBuilder {
  std::string name;
  bool transducer = false;
  std::size_t header_line = 0;
  std::optional<std::size_t> states;
  std::optional<std::size_t> initial;
  std::optional<std::vector<std::size_t>> accepting;
  std::vector<PendingTransition> transitions;

  void require_states(std::size_t line, std::size_t column) const {
    if (!states) throw ParseError(line, column, "'states:' must precede the rest of section [" + name + "]");
  }

  void feed(const std::vector<Token>& tokens, std::size_t line, const Alphabet& alphabet) {
    std::string_view head = tokens[0].text;
    auto key_tokens = [&](std::string_view key) -> std::optional<std::vector<Token>> {
      if (head.substr(0, key.size()) != key) return std::nullopt;
      std::vector<Token> rest;
      if (head.size() > key.size()) rest.push_back({head.substr(key.size()), tokens[0].column + key.size()});
      rest.insert(rest.end(), tokens.begin() + 1, tokens.end());
      return rest;
    };
    if (auto rest = key_tokens("states:")) {
      if (states) throw ParseError(line, tokens[0].column, "duplicate 'states:'");
      if (rest->size() != 1) throw ParseError(line, tokens[0].column, "'states:' takes exactly one number");
      std::size_t n = parse_index((*rest)[0], line, static_cast<std::size_t>(1) << 31, "state count");
      if (n == 0) throw ParseError(line, (*rest)[0].column, "state count must be positive");
      states = n;
      return;
    }
    if (auto rest = key_tokens("initial:")) {
      require_states(line, tokens[0].column);
      if (initial) throw ParseError(line, tokens[0].column, "duplicate 'initial:'");
      if (rest->size() != 1) throw ParseError(line, tokens[0].column, "'initial:' takes exactly one state");
      initial = parse_index((*rest)[0], line, *states, "state");
      return;
    }
    if (auto rest = key_tokens("accepting:")) {
      require_states(line, tokens[0].column);
      if (accepting) throw ParseError(line, tokens[0].column, "duplicate 'accepting:'");
      accepting.emplace();
      for (const Token& tok : *rest) accepting->push_back(parse_index(tok, line, *states, "state"));
      return;
    }
    require_states(line, tokens[0].column);
    if (tokens.size() != 3) {
      std::size_t column = tokens.size() > 3 ? tokens[3].column : tokens.back().column;
      throw ParseError(line, column, "expected 'src " + std::string(transducer ? "in/out" : "symbol") + " dst'");
    }
    PendingTransition t{};
    t.src = parse_index(tokens[0], line, *states, "state");
    t.dst = parse_index(tokens[2], line, *states, "state");
    auto label = [&](std::string_view text, std::size_t column, bool allow_epsilon) -> Label {
      if (text == Alphabet::kEpsilonToken) {
        if (!allow_epsilon) throw ParseError(line, column, "ε is not allowed in automaton sections");
        return kEpsilon;
      }
      auto a = alphabet.find(text);
      if (!a) throw ParseError(line, column, "unknown symbol '" + std::string(text) + "'");
      return static_cast<Label>(*a);
    };
    const Token& mid = tokens[1];
    if (transducer) {
      std::size_t slash = mid.text.find('/');
      if (slash == std::string_view::npos) throw ParseError(line, mid.column, "expected 'in/out' label");
      t.in = label(mid.text.substr(0, slash), mid.column, true);
      t.out = label(mid.text.substr(slash + 1), mid.column + slash + 1, true);
    } else {
      t.in = label(mid.text, mid.column, false);
      t.out = kEpsilon;
    }
    transitions.push_back(t);
  }

  void check_complete(std::size_t line) const {
    if (!states) throw ParseError(line, 1, "section [" + name + "] lacks 'states:'");
    if (!initial) throw ParseError(line, 1, "section [" + name + "] lacks 'initial:'");
    if (!accepting) throw ParseError(line, 1, "section [" + name + "] lacks 'accepting:'");
  }

  Nfa nfa(std::size_t alphabet_size) const {
    Nfa a(alphabet_size, *states, static_cast<State>(*initial));
    for (std::size_t q : *accepting) a.set_accepting(static_cast<State>(q));
    for (const auto& t : transitions) {
      a.add_transition(static_cast<State>(t.src), static_cast<Symbol>(t.in), static_cast<State>(t.dst));
    }
    a.normalize();
    return a;
  }

  Transducer relation(std::size_t alphabet_size) const {
    Transducer r(alphabet_size, *states, static_cast<State>(*initial));
    for (std::size_t q : *accepting) r.set_accepting(static_cast<State>(q));
    for (const auto& t : transitions) r.add_transition(static_cast<State>(t.src), t.in, t.out, static_cast<State>(t.dst));
    r.normalize();
    return r;
  }
};

/// Generic section-file reader shared by games and DFA files.
struct SectionFile {
  std::optional<Alphabet> alphabet;
  std::size_t alphabet_line = 0;
  std::map<std::string, SectionBuilder> sections;
  std::size_t last_line = 0;
};

SectionFile read_sections(std::string_view text, const std::vector<std::string>& known,
                          const std::string& transducer_section) {
  SectionFile file;
  std::vector<std::string> alphabet_tokens;
  std::string current;
  bool have_alphabet_tokens = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto finish_alphabet = [&](std::size_t line) {
    if (current == "alphabet" && !file.alphabet) {
      if (alphabet_tokens.empty()) throw ParseError(line, 1, "alphabet must not be empty");
      file.alphabet = Alphabet(alphabet_tokens);
    }
  };
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::string_view head = tokens[0].text;
    if (head.front() == '[') {
      if (head.back() != ']' || tokens.size() != 1) throw ParseError(line_no, tokens[0].column, "malformed section header");
      finish_alphabet(line_no);
      std::string name(head.substr(1, head.size() - 2));
      if (name != "alphabet" && std::find(known.begin(), known.end(), name) == known.end()) {
        throw ParseError(line_no, tokens[0].column, "unknown section [" + name + "]");
      }
      if ((name == "alphabet" && have_alphabet_tokens) || file.sections.count(name)) {
        throw ParseError(line_no, tokens[0].column, "duplicate section [" + name + "]");
      }
      current = name;
      if (name == "alphabet") {
        have_alphabet_tokens = true;
        file.alphabet_line = line_no;
      } else {
        if (!file.alphabet) throw ParseError(line_no, tokens[0].column, "[alphabet] must come first");
        SectionBuilder b;
        b.name = name;
        b.transducer = name == transducer_section;
        b.header_line = line_no;
        file.sections.emplace(name, std::move(b));
      }
      if (end == text.size()) break;
      continue;
    }
    if (current.empty()) throw ParseError(line_no, tokens[0].column, "content outside of any section");
    if (current == "alphabet") {
      for (const Token& tok : tokens) {
        std::string symbol(tok.text);
        if (symbol == Alphabet::kEpsilonToken) throw ParseError(line_no, tok.column, "'_' is reserved for ε");
        if (symbol.find('/') != std::string::npos) throw ParseError(line_no, tok.column, "'/' is not allowed in symbols");
        if (std::find(alphabet_tokens.begin(), alphabet_tokens.end(), symbol) != alphabet_tokens.end()) {
          throw ParseError(line_no, tok.column, "duplicate symbol '" + symbol + "'");
        }
        alphabet_tokens.push_back(symbol);
      }
    } else {
      file.sections.at(current).feed(tokens, line_no, *file.alphabet);
    }
    if (end == text.size()) break;
  }
  finish_alphabet(line_no);
  file.last_line = line_no;
  if (!file.alphabet) throw ParseError(line_no + 1, 1, "missing [alphabet] section");
  for (const std::string& name : known) {
    auto it = file.sections.find(name);
    if (it == file.sections.end()) throw ParseError(line_no + 1, 1, "missing section [" + name + "]");
    it->second.check_complete(line_no + 1);
  }
  return file;
}

void write_header(std::ostringstream& out, const char* name, std::size_t states, State initial,
                  const std::vector<State>& accepting) {
  out << "\n[" << name << "]\nstates: " << states << "\ninitial: " << initial << "\naccepting:";
  for (State q : accepting) out << ' ' << q;
  out << '\n';
}

void write_nfa(std::ostringstream& out, const char* name, const Nfa& a, const Alphabet& alphabet) {
  write_header(out, name, a.state_count(), a.initial(), a.accepting_states());
  for (State q = 0; q < a.state_count(); ++q) {
    std::vector<Edge> edges = a.out(q);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const Edge& e : edges) out << q << ' ' << alphabet.symbol(e.symbol) << ' ' << e.target << '\n';
  }
}

std::string label_text(Label l, const Alphabet& alphabet) {
  return l == kEpsilon ? std::string(Alphabet::kEpsilonToken) : alphabet.symbol(static_cast<Symbol>(l));
}

void write_alphabet(std::ostringstream& out, const Alphabet& alphabet) {
  out << "[alphabet]\n";
  for (std::size_t i = 0; i < alphabet.size(); ++i) out << (i ? " " : "") << alphabet.symbol(static_cast<Symbol>(i));
  out << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

void validate(const RationalSafetyGame& g) {
  const Alphabet& al = g.alphabet;
  if (is_empty(g.v0)) throw InvariantViolation("L(v0) is non-empty", "");
  if (is_empty(g.v1)) throw InvariantViolation("L(v1) is non-empty", "");
  if (auto w = shortest_word(intersect(g.v0, g.v1))) {
    throw InvariantViolation("L(v0) and L(v1) are disjoint", al.format(*w));
  }
  if (auto w = shortest_word(difference(g.initial, g.safe))) {
    throw InvariantViolation("L(initial) is a subset of L(safe)", al.format(*w));
  }
}

std::size_t game_size(const RationalSafetyGame& g) {
  return g.v0.state_count() + g.v1.state_count() + g.edges.state_count() + g.safe.state_count() +
         g.initial.state_count();
}

RationalSafetyGame parse_game(std::string_view text) {
  SectionFile file = read_sections(text, {"v0", "v1", "edges", "safe", "initial"}, "edges");
  RationalSafetyGame g;
  g.alphabet = *file.alphabet;
  const std::size_t k = g.alphabet.size();
  g.v0 = file.sections.at("v0").nfa(k);
  g.v1 = file.sections.at("v1").nfa(k);
  g.edges = file.sections.at("edges").relation(k);
  g.safe = file.sections.at("safe").nfa(k);
  g.initial = file.sections.at("initial").nfa(k);
  validate(g);
  return g;
}

std::string serialize(const RationalSafetyGame& g) {
  std::ostringstream out;
  out << "# rational safety game\n";
  write_alphabet(out, g.alphabet);
  write_nfa(out, "v0", g.v0, g.alphabet);
  write_nfa(out, "v1", g.v1, g.alphabet);
  std::vector<State> accepting;
  for (State q = 0; q < g.edges.state_count(); ++q) {
    if (g.edges.is_accepting(q)) accepting.push_back(q);
  }
  write_header(out, "edges", g.edges.state_count(), g.edges.initial(), accepting);
  for (State q = 0; q < g.edges.state_count(); ++q) {
    std::vector<TransducerEdge> edges = g.edges.out(q);
    std::sort(edges.begin(), edges.end());
    for (const TransducerEdge& e : edges) {
      out << q << ' ' << label_text(e.in, g.alphabet) << '/' << label_text(e.out, g.alphabet) << ' ' << e.target
          << '\n';
    }
  }
  write_nfa(out, "safe", g.safe, g.alphabet);
  write_nfa(out, "initial", g.initial, g.alphabet);
  return out.str();
}

RationalSafetyGame load_game(const std::string& path) { return parse_game(read_file(path)); }

std::string serialize_dfa(const Dfa& d, const Alphabet& alphabet) {
  if (d.alphabet_size() != alphabet.size()) throw AlphabetMismatch("DFA and alphabet sizes differ");
  std::ostringstream out;
  write_alphabet(out, alphabet);
  std::vector<State> accepting;
  for (State q = 0; q < d.state_count(); ++q) {
    if (d.is_accepting(q)) accepting.push_back(q);
  }
  write_header(out, "dfa", d.state_count(), 0, accepting);
  for (State q = 0; q < d.state_count(); ++q) {
    for (Symbol a = 0; a < d.alphabet_size(); ++a) out << q << ' ' << alphabet.symbol(a) << ' ' << d.next(q, a) << '\n';
  }
  return out.str();
}

Dfa parse_dfa(std::string_view text, const Alphabet& expected) {
  SectionFile file = read_sections(text, {"dfa"}, "");
  if (!(*file.alphabet == expected)) {
    throw AlphabetMismatch("DFA alphabet does not match the game alphabet");
  }
  const SectionBuilder& section = file.sections.at("dfa");
  Nfa a = section.nfa(expected.size());

  bool deterministic = a.initial() == 0;
  for (State q = 0; q < a.state_count() && deterministic; ++q) {
    const auto& edges = a.out(q);
    if (edges.size() != expected.size()) deterministic = false;
    for (std::size_t i = 0; i < edges.size() && deterministic; ++i) {
      if (edges[i].symbol != i) deterministic = false;
    }
  }
  if (!deterministic) return determinize(a);
  Dfa d(expected.size(), a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    d.set_accepting(q, a.is_accepting(q));
    for (const Edge& e : a.out(q)) d.set_next(q, e.symbol, e.target);
  }
  return d;
}

Dfa load_dfa(const std::string& path, const Alphabet& expected) { return parse_dfa(read_file(path), expected); }

// ---------------------------------------------------------------------------
// Finite restriction

std::size_t FiniteGame::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : successors) n += s.size();
  return n;
}

std::size_t FiniteGame::index_of(const Word& w) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), w, ShortlexLess{});
  if (it == vertices.end() || *it != w) return vertices.size();
  return static_cast<std::size_t>(it - vertices.begin());
}

FiniteGame finite_restriction(const RationalSafetyGame& g, std::size_t max_len) {
  FiniteGame fg;
  fg.vertices = enumerate_up_to(unite(g.v0, g.v1), max_len);
  const std::size_t n = fg.vertices.size();
  fg.player0.resize(n);
  fg.safe.resize(n);
  fg.initial.resize(n);
  fg.successors.resize(n);
  Dfa safe = determinize(g.safe);
  Dfa initial = determinize(g.initial);
  for (std::size_t i = 0; i < n; ++i) {
    const Word& u = fg.vertices[i];
    fg.player0[i] = accepts(g.v0, u);
    fg.safe[i] = accepts(safe, u);
    fg.initial[i] = accepts(initial, u);
    for (const Word& v : enumerate_up_to(successors(g.edges, u), max_len)) {
      std::size_t j = fg.index_of(v);
      if (j < n) fg.successors[i].push_back(j);
    }
    std::sort(fg.successors[i].begin(), fg.successors[i].end());
  }
  return fg;
}

std::string to_dot(const FiniteGame& fg, const Alphabet& alphabet, std::string_view name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  for (std::size_t i = 0; i < fg.vertices.size(); ++i) {
    out << "  v" << i << " [label=\"" << alphabet.format(fg.vertices[i]) << "\", shape="
        << (fg.player0[i] ? "circle" : "box");
    if (fg.safe[i]) out << ", style=filled, fillcolor=lightgrey";
    if (fg.initial[i]) out << ", peripheries=2";
    out << "];\n";
  }
  for (std::size_t i = 0; i < fg.vertices.size(); ++i) {
    for (std::size_t j : fg.successors[i]) out << "  v" << i << " -> v" << j << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace rsg
