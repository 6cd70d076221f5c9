#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "rsg/cli.hpp"
#include "rsg/game.hpp"

namespace fs = std::filesystem;
using namespace rsg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run rsg_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rsg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("rsg-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& row) {
  std::vector<std::string> out;
  std::stringstream in(row);
  std::string f;
  while (std::getline(in, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("solve and verify round trip") {
  TempDir dir;
  write(dir / "interval_k2.game", serialize(fixture::example_game(2)));
  Run r = rsg_cli({"solve", dir / "interval_k2.game", "--learner", "sat", "--out", dir / "w.aut", "--stats",
                   dir / "stats.csv"});
  CHECK(r.code == 0);
  auto rows = lines(read(dir / "stats.csv"));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == cli::kCsvHeader);
  auto f = fields(rows[1]);
  REQUIRE(f.size() == 11);
  CHECK(f[0] == "interval_k2");
  CHECK(std::stoi(f[6]) >= 1);
  CHECK(f[10] == "solved");
  CHECK(rsg_cli({"verify", dir / "interval_k2.game", dir / "w.aut"}).code == 0);

  rsg_cli({"solve", dir / "interval_k2.game", "--learner", "rpni", "--stats", dir / "stats.csv", "--out",
           dir / "r.aut"});
  CHECK(lines(read(dir / "stats.csv")).size() == 3);
  CHECK(rsg_cli({"verify", dir / "interval_k2.game", dir / "r.aut"}).code == 0);

  Run dot = rsg_cli({"solve", dir / "interval_k2.game", "--emit", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
}

TEST_CASE("solve rejects invalid games") {
  TempDir dir;
  auto g = fixture::example_game(2);
  g.v1 = unite(g.v1, word_automaton(3, fixture::word("s")));
  write(dir / "bad.game", serialize(g));
  Run r = rsg_cli({"solve", dir / "bad.game"});
  CHECK(r.code == 3);
  CHECK(r.err.find("witness: s") != std::string::npos);
  write(dir / "garbage.game", "[alphabet]\ns\n[v0]\nstates: x\n");
  CHECK(rsg_cli({"solve", dir / "garbage.game"}).code == 3);
  CHECK(rsg_cli({"solve", dir / "missing.game"}).code == 3);
  CHECK(rsg_cli({"solve"}).code == 3);
  CHECK(rsg_cli({"solve", dir / "bad.game", "--learner", "magic"}).code == 3);
}

TEST_CASE("solve with a short timeout") {
  TempDir dir;
  write(dir / "follow.game", serialize(generate_benchmark({"follow", {}})));
  Run r = rsg_cli({"solve", dir / "follow.game", "--learner", "rpni", "--timeout", "5"});
  CHECK((r.code == 0 || r.code == 1));
  write(dir / "diag.game", serialize(generate_benchmark({"diagonal", {}})));
  CHECK(rsg_cli({"solve", dir / "diag.game", "--timeout", "0"}).code == 1);
}

TEST_CASE("verify reports counterexamples") {
  TempDir dir;
  auto g = fixture::example_game(2);
  write(dir / "g.game", serialize(g));
  write(dir / "good.aut", serialize_dfa(fixture::example_winning_set(), g.alphabet));
  CHECK(rsg_cli({"verify", dir / "g.game", dir / "good.aut"}).code == 0);

  write(dir / "s.aut", serialize_dfa(fixture::dfa_of(fixture::tag_at_least(fixture::S, 2)), g.alphabet));
  Run r = rsg_cli({"verify", dir / "g.game", dir / "s.aut"});
  CHECK(r.code != 0);
  CHECK(r.out.find("existential") != std::string::npos);
  CHECK(r.out.find("s l l") != std::string::npos);

  write(dir / "empty.aut", serialize_dfa(Dfa(3, 1), g.alphabet));
  Run e = rsg_cli({"verify", dir / "g.game", dir / "empty.aut"});
  CHECK(e.code != 0);
  CHECK(e.out.find("positive") != std::string::npos);
}

TEST_CASE("gen") {
  TempDir dir;
  CHECK(rsg_cli({"gen", "interval", "--k", "1", "--kprime", "10", dir / "i.game"}).code == 0);
  auto g = load_game(dir / "i.game");
  CHECK_NOTHROW(validate(g));
  // Winning region of interval(1, 10): s l^1..10 and e l^2..10.
  Nfa s_side = intersect(fixture::tag_at_least(fixture::S, 1), complement(determinize(fixture::tag_at_least(fixture::S, 11))).to_nfa());
  Nfa e_side = intersect(fixture::tag_at_least(fixture::E, 2), complement(determinize(fixture::tag_at_least(fixture::E, 11))).to_nfa());
  write(dir / "w.aut", serialize_dfa(fixture::dfa_of(unite(s_side, e_side)), g.alphabet));
  CHECK(rsg_cli({"verify", dir / "i.game", dir / "w.aut"}).code == 0);

  Run d = rsg_cli({"gen", "diagonal"});
  CHECK(d.code == 0);
  CHECK_NOTHROW(parse_game(d.out));
  CHECK(rsg_cli({"gen", "interval", "--k", "5", "--kprime", "3", dir / "x.game"}).code == 3);
  CHECK(rsg_cli({"gen", "nonsense"}).code == 3);
}

TEST_CASE("bench") {
  Run empty = rsg_cli({"bench", "--suite", "empty"});
  CHECK(empty.code == 0);
  CHECK(empty.out == std::string(cli::kCsvHeader) + "\n");
  Run none = rsg_cli({"bench", "--suite", "scalability", "--kprime-list", ""});
  CHECK(none.out == std::string(cli::kCsvHeader) + "\n");

  auto strip_time = [](const std::string& text) {
    std::string out;
    for (const auto& row : lines(text)) {
      auto f = fields(row);
      f[3] = "";
      for (const auto& x : f) out += x + ",";
      out += "\n";
    }
    return out;
  };
  Run a = rsg_cli({"bench", "--suite", "scalability", "--kprime-list", "3,6", "--jobs", "2"});
  Run b = rsg_cli({"bench", "--suite", "scalability", "--kprime-list", "3,6"});
  CHECK(a.code == 0);
  CHECK(lines(a.out).size() == 5);
  CHECK(strip_time(a.out) == strip_time(b.out));
  CHECK(lines(a.out)[1].rfind("interval-3,", 0) == 0);
  CHECK(fields(lines(a.out)[2])[2] == "rpni");
  CHECK(rsg_cli({"bench", "--suite", "unknown"}).code == 3);
}

TEST_CASE("bench standard suite shape") {
  Run r = rsg_cli({"bench", "--suite", "paper", "--timeout", "120"});
  CHECK(r.code == 0);
  auto rows = lines(r.out);
  CHECK(rows.size() <= 13);
  CHECK(rows.size() == 13);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(fields(rows[i]).size() == 11);
}
