#include "rsg/solver.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "rsg/errors.hpp"

namespace rsg {

StopToken StopToken::after(double seconds) {
  auto delta = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  return StopToken(Clock::now() + delta);
}

double StopToken::seconds_left() const {
  if (!deadline_) return std::numeric_limits<double>::infinity();
  return std::chrono::duration<double>(*deadline_ - Clock::now()).count();
}

bool StopToken::stop_requested() const {
  if (flag_ && flag_->load(std::memory_order_relaxed)) return true;
  return deadline_ && Clock::now() >= *deadline_;
}

void StopToken::check() const {
  if (stop_requested()) throw Cancelled();
}

namespace {

using ILit = std::uint32_t;
constexpr std::uint32_t kNoClause = static_cast<std::uint32_t>(-1);
constexpr ILit kUndefLit = static_cast<ILit>(-1);

inline ILit make_lit(std::uint32_t v, bool negative) { return 2 * v + (negative ? 1 : 0); }
inline std::uint32_t var_of(ILit l) { return l >> 1; }
inline ILit negate(ILit l) { return l ^ 1u; }

double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

class Engine {
 public:
  Engine(const CnfInstance& cnf, const StopToken& stop, SolverStats& stats) : stop_(stop), stats_(stats) {
    Var n = cnf.num_vars;
    for (const auto& c : cnf.clauses) {
      for (Lit l : c) n = std::max<Var>(n, static_cast<Var>(std::abs(l)));
    }
    num_vars_ = n;
    assigns_.assign(n, -1);
    level_.assign(n, 0);
    reason_.assign(n, kNoClause);
    seen_.assign(n, 0);
    activity_.assign(n, 0.0);
    polarity_.assign(n, 0);
    watches_.resize(2 * static_cast<std::size_t>(n));
    heap_index_.assign(n, -1);
    for (std::uint32_t v = 0; v < n; ++v) heap_insert(v);
    for (const auto& c : cnf.clauses) {
      if (!add_clause(c)) {
        ok_ = false;
        break;
      }
    }
  }

  std::optional<Model> run() {
    if (!ok_) return std::nullopt;
    if (propagate() != kNoClause) return std::nullopt;
    max_learnts_ = std::max<double>(static_cast<double>(clauses_.size()) / 3.0, 2000.0);
    for (int restart = 0;; ++restart) {
      auto budget = static_cast<std::uint64_t>(luby(2.0, restart) * 100.0);
      int status = search(budget);
      if (status == 1) {
        Model m;
        m.values.assign(num_vars_ + 1, false);
        for (std::uint32_t v = 0; v < num_vars_; ++v) m.values[v + 1] = assigns_[v] == 1;
        return m;
      }
      if (status == 0) return std::nullopt;
      cancel_until(0);
    }
  }

 private:
  // -1 undefined, 0 false, 1 true
  int value(ILit l) const {
    int a = assigns_[var_of(l)];
    if (a < 0) return -1;
    return a ^ static_cast<int>(l & 1u);
  }

  std::uint32_t decision_level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }

  std::uint32_t& size_of(std::uint32_t c) { return arena_[c]; }
  bool learnt(std::uint32_t c) const { return arena_[c + 1] & 1u; }
  bool deleted(std::uint32_t c) const { return arena_[c + 1] & 2u; }
  std::uint32_t lbd(std::uint32_t c) const { return arena_[c + 1] >> 2; }
  float clause_activity(std::uint32_t c) const { return std::bit_cast<float>(arena_[c + 2]); }
  void set_clause_activity(std::uint32_t c, float a) { arena_[c + 2] = std::bit_cast<std::uint32_t>(a); }
  ILit* lits(std::uint32_t c) { return &arena_[c + 3]; }

  std::uint32_t allocate(const std::vector<ILit>& ls, bool is_learnt, std::uint32_t lbd_value) {
    auto c = static_cast<std::uint32_t>(arena_.size());
    arena_.push_back(static_cast<std::uint32_t>(ls.size()));
    arena_.push_back((is_learnt ? 1u : 0u) | (lbd_value << 2));
    arena_.push_back(0);
    set_clause_activity(c, 0.0f);
    arena_.insert(arena_.end(), ls.begin(), ls.end());
    return c;
  }

  void attach(std::uint32_t c) {
    ILit* l = lits(c);
    watches_[l[0]].push_back({c, l[1]});
    watches_[l[1]].push_back({c, l[0]});
  }

  bool add_clause(const std::vector<Lit>& input) {
    std::vector<ILit> ls;
    ls.reserve(input.size());
    for (Lit l : input) {
      if (l == 0) throw SolverError("literal 0 inside a clause");
      ls.push_back(make_lit(static_cast<std::uint32_t>(std::abs(l)) - 1, l < 0));
    }
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::vector<ILit> kept;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      if (i + 1 < ls.size() && ls[i + 1] == negate(ls[i])) return true;  // tautology
      int val = value(ls[i]);
      if (val == 1) return true;
      if (val == 0) continue;
      kept.push_back(ls[i]);
    }
    if (kept.empty()) return false;
    if (kept.size() == 1) {
      enqueue(kept[0], kNoClause);
      return propagate() == kNoClause;
    }
    std::uint32_t c = allocate(kept, false, 0);
    clauses_.push_back(c);
    attach(c);
    return true;
  }

  void enqueue(ILit l, std::uint32_t reason) {
    std::uint32_t v = var_of(l);
    assigns_[v] = (l & 1u) ? 0 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(l);
  }

  std::uint32_t propagate() {
    std::uint32_t conflict = kNoClause;
    while (qhead_ < trail_.size()) {
      ILit p = trail_[qhead_++];
      ILit false_lit = negate(p);
      auto& ws = watches_[false_lit];
      ++stats_.propagations;
      std::size_t i = 0, j = 0;
      const std::size_t end = ws.size();
      while (i < end) {
        Watcher w = ws[i];
        if (value(w.blocker) == 1) {
          ws[j++] = ws[i++];
          continue;
        }
        std::uint32_t c = w.clause;
        ILit* l = lits(c);
        if (l[0] == false_lit) std::swap(l[0], l[1]);
        ++i;
        ILit first = l[0];
        if (first != w.blocker && value(first) == 1) {
          ws[j++] = {c, first};
          continue;
        }
        bool moved = false;
        const std::uint32_t n = size_of(c);
        for (std::uint32_t k = 2; k < n; ++k) {
          if (value(l[k]) != 0) {
            std::swap(l[1], l[k]);
            watches_[l[1]].push_back({c, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {c, first};
        if (value(first) == 0) {
          conflict = c;
          qhead_ = trail_.size();
          while (i < end) ws[j++] = ws[i++];
        } else {
          enqueue(first, c);
        }
      }
      ws.resize(j);
      if (conflict != kNoClause) break;
    }
    return conflict;
  }

  void analyze(std::uint32_t conflict, std::vector<ILit>& out_learnt, std::uint32_t& out_level) {
    int path = 0;
    ILit p = kUndefLit;
    out_learnt.assign(1, kUndefLit);
    std::size_t index = trail_.size();
    std::vector<std::uint32_t> touched;
    do {
      std::uint32_t c = conflict;
      if (learnt(c)) bump_clause(c);
      ILit* l = lits(c);
      for (std::uint32_t k = (p == kUndefLit ? 0 : 1); k < size_of(c); ++k) {
        ILit q = l[k];
        std::uint32_t v = var_of(q);
        if (!seen_[v] && level_[v] > 0) {
          bump_var(v);
          seen_[v] = 1;
          touched.push_back(v);
          if (level_[v] >= decision_level()) {
            ++path;
          } else {
            out_learnt.push_back(q);
          }
        }
      }
      while (!seen_[var_of(trail_[--index])]) {
      }
      p = trail_[index];
      conflict = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --path;
    } while (path > 0);
    out_learnt[0] = negate(p);

    // Local minimization: drop literals implied by other literals of the clause.
    std::size_t j = 1;
    for (std::size_t i = 1; i < out_learnt.size(); ++i) {
      std::uint32_t v = var_of(out_learnt[i]);
      std::uint32_t r = reason_[v];
      bool redundant = r != kNoClause;
      if (redundant) {
        ILit* l = lits(r);
        for (std::uint32_t k = 1; k < size_of(r); ++k) {
          std::uint32_t u = var_of(l[k]);
          if (!seen_[u] && level_[u] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) out_learnt[j++] = out_learnt[i];
    }
    out_learnt.resize(j);
    for (std::uint32_t v : touched) seen_[v] = 0;

    out_level = 0;
    if (out_learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < out_learnt.size(); ++i) {
        if (level_[var_of(out_learnt[i])] > level_[var_of(out_learnt[max_i])]) max_i = i;
      }
      std::swap(out_learnt[1], out_learnt[max_i]);
      out_level = level_[var_of(out_learnt[1])];
    }
  }

  std::uint32_t compute_lbd(const std::vector<ILit>& ls) {
    ++lbd_stamp_;
    if (lbd_seen_.size() < decision_level() + 1) lbd_seen_.resize(decision_level() + 1, 0);
    std::uint32_t count = 0;
    for (ILit l : ls) {
      std::uint32_t lv = level_[var_of(l)];
      if (lbd_seen_[lv] != lbd_stamp_) {
        lbd_seen_[lv] = lbd_stamp_;
        ++count;
      }
    }
    return count;
  }

  void cancel_until(std::uint32_t lvl) {
    if (decision_level() <= lvl) return;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[lvl];) {
      std::uint32_t v = var_of(trail_[i]);
      polarity_[v] = static_cast<std::uint8_t>(assigns_[v]);
      assigns_[v] = -1;
      reason_[v] = kNoClause;
      if (heap_index_[v] < 0) heap_insert(v);
    }
    trail_.resize(trail_lim_[lvl]);
    qhead_ = trail_.size();
    trail_lim_.resize(lvl);
  }

  ILit pick_branch() {
    while (!heap_.empty()) {
      std::uint32_t v = heap_pop();
      if (assigns_[v] < 0) return make_lit(v, polarity_[v] == 0);
    }
    return kUndefLit;
  }

  bool locked(std::uint32_t c) {
    ILit first = lits(c)[0];
    return reason_[var_of(first)] == c && value(first) == 1;
  }

  void reduce_db() {
    std::sort(learnts_.begin(), learnts_.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (lbd(a) != lbd(b)) return lbd(a) < lbd(b);
      return clause_activity(a) > clause_activity(b);
    });
    std::size_t keep = learnts_.size() / 2;
    std::vector<std::uint32_t> kept;
    for (std::size_t i = 0; i < learnts_.size(); ++i) {
      std::uint32_t c = learnts_[i];
      if (i < keep || lbd(c) <= 2 || locked(c)) {
        kept.push_back(c);
      } else {
        arena_[c + 1] |= 2u;
      }
    }
    learnts_ = std::move(kept);
    for (auto& ws : watches_) {
      std::erase_if(ws, [&](const Watcher& w) { return deleted(w.clause); });
    }
    max_learnts_ *= 1.1;
    if (arena_.size() > 4 * live_arena_size()) compact();
  }

  std::size_t live_arena_size() {
    std::size_t n = 0;
    for (auto c : clauses_) n += 3 + size_of(c);
    for (auto c : learnts_) n += 3 + size_of(c);
    return n;
  }

  void compact() {
    std::vector<std::uint32_t> fresh;
    fresh.reserve(live_arena_size());
    std::vector<std::pair<std::uint32_t, std::uint32_t>> moved;
    auto relocate = [&](std::uint32_t c) {
      auto nc = static_cast<std::uint32_t>(fresh.size());
      fresh.insert(fresh.end(), arena_.begin() + c, arena_.begin() + c + 3 + size_of(c));
      moved.emplace_back(c, nc);
      return nc;
    };
    for (auto& c : clauses_) c = relocate(c);
    for (auto& c : learnts_) c = relocate(c);
    std::sort(moved.begin(), moved.end());
    auto lookup = [&](std::uint32_t c) {
      auto it = std::lower_bound(moved.begin(), moved.end(), std::make_pair(c, 0u));
      return it->second;
    };
    for (auto& ws : watches_) {
      for (auto& w : ws) w.clause = lookup(w.clause);
    }
    for (auto& r : reason_) {
      if (r != kNoClause) {
        auto it = std::lower_bound(moved.begin(), moved.end(), std::make_pair(r, 0u));
        r = (it != moved.end() && it->first == r) ? it->second : kNoClause;
      }
    }
    arena_ = std::move(fresh);
  }

  // 1 sat, 0 unsat, -1 restart
  int search(std::uint64_t budget) {
    std::uint64_t local_conflicts = 0;
    std::vector<ILit> learnt_clause;
    for (;;) {
      std::uint32_t conflict = propagate();
      if (conflict != kNoClause) {
        ++stats_.conflicts;
        ++local_conflicts;
        if ((stats_.conflicts & 127u) == 0) stop_.check();
        if (decision_level() == 0) return 0;
        std::uint32_t back = 0;
        analyze(conflict, learnt_clause, back);
        std::uint32_t glue = compute_lbd(learnt_clause);
        cancel_until(back);
        if (learnt_clause.size() == 1) {
          enqueue(learnt_clause[0], kNoClause);
        } else {
          std::uint32_t c = allocate(learnt_clause, true, glue);
          learnts_.push_back(c);
          attach(c);
          bump_clause(c);
          enqueue(learnt_clause[0], c);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999f;
        continue;
      }
      if (local_conflicts >= budget) return -1;
      if (static_cast<double>(learnts_.size()) >= max_learnts_) reduce_db();
      ILit next = pick_branch();
      if (next == kUndefLit) return 1;
      ++stats_.decisions;
      if ((stats_.decisions & 1023u) == 0) stop_.check();
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoClause);
    }
  }

  void bump_var(std::uint32_t v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (auto& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_index_[v] >= 0) heap_up(static_cast<std::size_t>(heap_index_[v]));
  }

  void bump_clause(std::uint32_t c) {
    set_clause_activity(c, clause_activity(c) + clause_inc_);
    if (clause_activity(c) > 1e20f) {
      for (auto l : learnts_) set_clause_activity(l, clause_activity(l) * 1e-20f);
      clause_inc_ *= 1e-20f;
    }
  }

  // Binary max-heap on activity.
  void heap_insert(std::uint32_t v) {
    heap_index_[v] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_.size() - 1);
  }
  std::uint32_t heap_pop() {
    std::uint32_t top = heap_[0];
    heap_index_[top] = -1;
    std::uint32_t last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_index_[last] = 0;
      heap_down(0);
    }
    return top;
  }
  void heap_up(std::size_t i) {
    std::uint32_t v = heap_[i];
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (activity_[heap_[parent]] >= activity_[v]) break;
      heap_[i] = heap_[parent];
      heap_index_[heap_[i]] = static_cast<int>(i);
      i = parent;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
  }
  void heap_down(std::size_t i) {
    std::uint32_t v = heap_[i];
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= heap_.size()) break;
      if (child + 1 < heap_.size() && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
      if (activity_[heap_[child]] <= activity_[v]) break;
      heap_[i] = heap_[child];
      heap_index_[heap_[i]] = static_cast<int>(i);
      i = child;
    }
    heap_[i] = v;
    heap_index_[v] = static_cast<int>(i);
  }

  struct Watcher {
    std::uint32_t clause;
    ILit blocker;
  };

  const StopToken& stop_;
  SolverStats& stats_;
  Var num_vars_ = 0;
  bool ok_ = true;
  std::vector<std::uint32_t> arena_;
  std::vector<std::uint32_t> clauses_;
  std::vector<std::uint32_t> learnts_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<std::uint8_t> seen_;
  std::vector<std::uint8_t> polarity_;
  std::vector<ILit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  float clause_inc_ = 1.0f;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_index_;
  double max_learnts_ = 2000.0;
  std::vector<std::uint32_t> lbd_seen_;
  std::uint32_t lbd_stamp_ = 0;
};

}  // namespace

std::optional<Model> CdclSolver::solve(const CnfInstance& cnf, const StopToken& stop) {
  stats_ = {};
  stop.check();
  Engine engine(cnf, stop, stats_);
  return engine.run();
}

std::optional<Model> parse_solver_output(const std::string& output, Var num_vars) {
  std::istringstream in(output);
  std::string line;
  int status = -1;
  bool model_done = false;
  Model m;
  m.values.assign(num_vars + 1, false);
  while (std::getline(in, line)) {
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (first == "c") continue;
    if (first == "SAT" || first == "SATISFIABLE") {
      status = 1;
      continue;
    }
    if (first == "UNSAT" || first == "UNSATISFIABLE") {
      status = 0;
      continue;
    }
    if (first == "s") {
      std::string word;
      words >> word;
      if (word == "SATISFIABLE") status = 1;
      else if (word == "UNSATISFIABLE") status = 0;
      else throw SolverError("unrecognised status line: " + line);
      continue;
    }
    if (status != 1 || model_done) throw SolverError("unexpected solver output: " + line);
    std::istringstream values(line);
    std::string token;
    while (values >> token) {
      if (token == "v") continue;
      char* end = nullptr;
      long lit = std::strtol(token.c_str(), &end, 10);
      if (*end != '\0') throw SolverError("malformed model token '" + token + "'");
      if (lit == 0) {
        model_done = true;
        break;
      }
      auto v = static_cast<Var>(std::labs(lit));
      if (v > num_vars) throw SolverError("model mentions variable " + std::to_string(v) + " beyond " +
                                          std::to_string(num_vars));
      m.values[v] = lit > 0;
    }
  }
  if (status < 0) throw SolverError("solver printed neither SAT nor UNSAT");
  if (status == 0) return std::nullopt;
  if (!model_done) throw SolverError("malformed model: missing terminating 0");
  return m;
}

std::optional<Model> ExternalSolver::solve(const CnfInstance& cnf, const StopToken& stop) {
  stop.check();
  char name[] = "/tmp/rsg-cnf-XXXXXX";
  int fd = mkstemp(name);
  if (fd < 0) throw SolverError("cannot create temporary DIMACS file");
  close(fd);
  {
    std::ofstream out(name);
    write_dimacs(out, cnf);
  }
  std::string command;
  if (stop.has_deadline()) {
    double left = std::max(1.0, std::ceil(stop.seconds_left()));
    command = "timeout " + std::to_string(static_cast<long>(left)) + " ";
  }
  command += "'" + path_ + "' '" + name + "' 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    std::remove(name);
    throw SolverError("cannot start external solver '" + path_ + "'");
  }
  std::string output;
  std::array<char, 4096> buffer{};
  std::size_t got = 0;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) output.append(buffer.data(), got);
  int status = pclose(pipe);
  std::remove(name);
  stop.check();
  std::optional<Model> result;
  try {
    result = parse_solver_output(output, cnf.num_vars);
  } catch (const SolverError& e) {
    throw SolverError("external solver '" + path_ + "' (exit status " + std::to_string(status) + "): " + e.what());
  }
  if (result && !cnf.evaluate(result->values)) throw SolverError("external solver returned a non-model");
  return result;
}

std::unique_ptr<SatBackend> make_backend(const std::string& spec) {
  if (spec.empty() || spec == "internal") return std::make_unique<CdclSolver>();
  if (spec.rfind("exec:", 0) == 0 && spec.size() > 5) return std::make_unique<ExternalSolver>(spec.substr(5));
  throw ParameterError("unknown solver backend '" + spec + "' (expected internal or exec:<path>)");
}

}  // namespace rsg
