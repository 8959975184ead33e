#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "aoe/canonicalize.hpp"
#include "aoe/cli.hpp"
#include "aoe/io.hpp"
#include "aoe/oracle.hpp"
#include "aoe/simplify.hpp"
#include "aoe/timeline.hpp"
#include "test_support.hpp"

using namespace aoe;
using namespace aoe::testing;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("aoe_io_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  std::string file(const std::string& name, const std::string& content) const {
    const std::filesystem::path p = path / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("parsing AoN documents") {
  const AonGraph a = parse_aon(R"({"tasks":[{"id":"a","deps":[]}]})");
  CHECK(a.task_count() == 1);
  CHECK(a.deps().empty());

  const AonGraph d = parse_aon(
      R"({"tasks":[{"id":"a"},{"id":"b"},{"id":"c","deps":["a"]},{"id":"d","deps":["a","b"]}]})");
  CHECK(d == aon_diamond_deps());

  CHECK_THROWS_AS(parse_aon("not json"), ParseError);
  CHECK_THROWS_AS(parse_aon(R"({"vertices":[]})"), ParseError);
  CHECK_THROWS_AS(parse_aon(R"({"tasks":[{"id":"a"},{"id":"a"}]})"), DuplicateTask);
  CHECK_THROWS_AS(parse_aon(R"({"tasks":[{"id":"a","deps":["zz"]}]})"), UnknownDep);
  CHECK_THROWS_AS(
      parse_aon(R"({"tasks":[{"id":"a","deps":["b"]},{"id":"b","deps":["a"]}]})"),
      CyclicDeps);
  CHECK_THROWS_AS(parse_aon(R"({"tasks":[{"id":"a","deps":["a"]}]})"), CyclicDeps);
}

TEST_CASE("AoN round trips") {
  for (const AonGraph& a : {aon_single_task(), aon_parallel_pair(),
                            aon_chain_pair(), aon_diamond_deps()}) {
    const std::string text = emit_aon(a);
    CHECK(parse_aon(text) == a);
    CHECK(emit_aon(parse_aon(text)) == text);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const AonGraph a = random_poset(1 + int(seed % 12), 0.4, seed).to_aon();
    CHECK(parse_aon(emit_aon(a)) == a);
  }
}

TEST_CASE("parsing AOE documents") {
  const AoeGraph g = parse_aoe(
      R"({"vertices":[0,1,2],"edges":[{"from":0,"to":1,"task":"a"},{"from":1,"to":2,"task":null}]})");
  CHECK(g.vertex_count() == 3);
  CHECK(g.task_count() == 1);
  CHECK(g.unlabeled_edge_count() == 1);

  // duplicate unlabeled edges coalesce quietly
  const AoeGraph c = parse_aoe(
      R"({"vertices":[0,1],"edges":[{"from":0,"to":1},{"from":0,"to":1}]})");
  CHECK(c.unlabeled_edge_count() == 1);

  CHECK_THROWS_AS(parse_aoe(R"({"vertices":[0],"edges":[{"from":0,"to":0}]})"),
                  SelfLoop);
  CHECK_THROWS_AS(
      parse_aoe(
          R"({"vertices":[0,1,2],"edges":[{"from":0,"to":1,"task":"a"},{"from":1,"to":2,"task":"a"}]})"),
      DuplicateTaskLabel);
  CHECK_THROWS_AS(
      parse_aoe(
          R"({"vertices":[0,1],"edges":[{"from":0,"to":1},{"from":1,"to":0}]})"),
      CycleError);
  CHECK_THROWS_AS(parse_aoe(R"({"vertices":[0,0],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(parse_aoe(R"({"vertices":[0],"edges":[{"from":0,"to":5}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_aoe(R"({"vertices":[-1],"edges":[]})"), ParseError);
}

TEST_CASE("AOE emission is canonical") {
  const AoeGraph one = simplify_naive(expand_aon(aon_single_task())).graph;
  const std::string expected = R"({
  "edges": [
    {
      "from": 0,
      "task": "a",
      "to": 1
    }
  ],
  "vertices": [
    0,
    1
  ]
}
)";
  CHECK(emit_aoe(one) == expected);

  // emit . parse . emit is the identity on bytes, and parsing an emitted
  // graph loses nothing
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PosetSpec p = random_poset(1 + int(seed % 10), 0.4, seed + 77);
    for (const AoeGraph& g : {expand_aon(p.to_aon()),
                              simplify_optimized(expand_aon(p.to_aon())).graph}) {
      const std::string text = emit_aoe(g);
      const AoeGraph back = parse_aoe(text);
      CHECK(emit_aoe(back) == text);
      CHECK(equivalent(back, g));
      CHECK(back.vertex_count() == g.vertex_count());
      CHECK(back.edge_count() == g.edge_count());
    }
  }
}

TEST_CASE("both engines emit identical bytes") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const PosetSpec p = random_poset(2 + int(seed % 9), 0.35, seed + 300);
    const AoeGraph canon = expand_aon(p.to_aon());
    CHECK(emit_aoe(simplify_naive(canon).graph) ==
          emit_aoe(simplify_optimized(canon).graph));
  }
}

TEST_CASE("DOT output") {
  const AoeGraph one =
      renumber_by_signature(simplify_naive(expand_aon(aon_single_task())).graph);
  CHECK(emit_dot(one) == R"(digraph aoe {
  rankdir=LR;
  v0;
  v1;
  v0 -> v1 [label="a"];
}
)");

  const AoeGraph d =
      renumber_by_signature(simplify_naive(expand_aon(aon_diamond_deps())).graph);
  CHECK(emit_dot(d) == R"(digraph aoe {
  rankdir=LR;
  v0;
  v1;
  v2;
  v3;
  v0 -> v1 [label="a"];
  v0 -> v2 [label="b"];
  v1 -> v2 [style=dashed];
  v1 -> v3 [label="c"];
  v2 -> v3 [label="d"];
}
)");

  const AoeGraph chain =
      renumber_by_signature(simplify_naive(expand_aon(aon_chain_pair())).graph);
  const Timeline t = schedule(chain, {{"a", 2}, {"b", 3}});
  CHECK(emit_dot(chain, &t) == R"(digraph aoe {
  rankdir=LR;
  v0 [label="v0 @ 0"];
  v1 [label="v1 @ 2"];
  v2 [label="v2 @ 5"];
  { rank=same; v0; }
  { rank=same; v1; }
  { rank=same; v2; }
  v0 -> v1 [label="a"];
  v1 -> v2 [label="b"];
}
)");
}

TEST_CASE("durations and timelines") {
  const DurationMap d = parse_durations(R"({"a": 2, "b": 3.5})");
  CHECK(d.at("a") == 2.0);
  CHECK(d.at("b") == 3.5);
  CHECK_THROWS_AS(parse_durations(R"({"a": "x"})"), ParseError);
  CHECK_THROWS_AS(parse_durations(R"({"a": 0})"), InvalidDuration);
  CHECK_THROWS_AS(parse_durations(R"([1,2])"), ParseError);

  const AoeGraph chain = simplify_naive(expand_aon(aon_chain_pair())).graph;
  const Timeline t = schedule(chain, {{"a", 2}, {"b", 3}});
  const Timeline back = parse_timeline(emit_timeline(t));
  CHECK(back.level == t.level);
  CHECK(back.makespan == t.makespan);
  CHECK(back.critical_tasks == t.critical_tasks);
}

TEST_CASE("command line surface") {
  const TempDir tmp;
  const std::string diamond = tmp.file("diamond.json", emit_aon(aon_diamond_deps()));
  const std::string chain = tmp.file("chain.json", emit_aon(aon_chain_pair()));

  std::string out, err;

  SUBCASE("minimize") {
    REQUIRE(cli({"minimize", diamond}, &out) == 0);
    const AoeGraph g = parse_aoe(out);
    CHECK(g.vertex_count() == 4);
    CHECK(g.unlabeled_edge_count() == 1);
  }

  SUBCASE("expand and simplify agree with minimize") {
    const std::string canon_path = (tmp.path / "canon.json").string();
    REQUIRE(cli({"expand", diamond, "-o", canon_path}) == 0);
    const std::string trace_path = (tmp.path / "trace.txt").string();
    REQUIRE(cli({"simplify", canon_path, "--engine", "naive", "--trace",
                 trace_path, "-o", (tmp.path / "slow.json").string()}) == 0);
    REQUIRE(cli({"simplify", canon_path, "-o", (tmp.path / "fast.json").string()}) == 0);
    std::ifstream slow(tmp.path / "slow.json"), fast(tmp.path / "fast.json");
    std::stringstream s1, s2;
    s1 << slow.rdbuf();
    s2 << fast.rdbuf();
    CHECK(s1.str() == s2.str());
    std::ifstream trace(trace_path);
    std::string first_line;
    std::getline(trace, first_line);
    CHECK(!first_line.empty());

    // simplify also accepts the AoN document directly
    REQUIRE(cli({"simplify", diamond}, &out) == 0);
    CHECK(out == s1.str());
  }

  SUBCASE("check") {
    const std::string g1 = (tmp.path / "g1.json").string();
    const std::string g2 = (tmp.path / "g2.json").string();
    REQUIRE(cli({"minimize", diamond, "-o", g1}) == 0);
    REQUIRE(cli({"minimize", chain, "-o", g2}) == 0);
    CHECK(cli({"check", g1, g1}, &out) == 0);
    CHECK(out == "equivalent\n");
    CHECK(cli({"check", g1, g2}, &out) == 1);
    CHECK(out == "not equivalent\n");
  }

  SUBCASE("levels and dot") {
    const std::string g1 = (tmp.path / "g1.json").string();
    REQUIRE(cli({"minimize", chain, "-o", g1}) == 0);
    const std::string durations = tmp.file("durations.json", R"({"a":2,"b":3})");
    REQUIRE(cli({"levels", g1, "--durations", durations}, &out) == 0);
    const Timeline t = parse_timeline(out);
    CHECK(t.makespan == 5);
    CHECK(t.critical_tasks == std::set<TaskLabel>{"a", "b"});

    const std::string tl = tmp.file("timeline.json", out);
    REQUIRE(cli({"dot", g1, "--levels", tl}, &out) == 0);
    CHECK(out.find("style=dashed") == std::string::npos);
    CHECK(out.find("rank=same") != std::string::npos);
    REQUIRE(cli({"dot", g1}, &out) == 0);
    CHECK(out.find("label=\"a\"") != std::string::npos);
  }

  SUBCASE("gen is reproducible") {
    std::string out2;
    REQUIRE(cli({"gen", "--tasks", "8", "--density", "0.4", "--seed", "9"}, &out) == 0);
    REQUIRE(cli({"gen", "--tasks", "8", "--density", "0.4", "--seed", "9"}, &out2) == 0);
    CHECK(out == out2);
    CHECK(parse_aon(out).task_count() == 8);
    REQUIRE(cli({"gen", "--tasks", "8", "--density", "0.4", "--seed", "10"}, &out2) == 0);
    CHECK(out != out2);
  }

  SUBCASE("bench smoke") {
    REQUIRE(cli({"bench", "--max-tasks", "8", "--seed", "3"}, &out) == 0);
    CHECK(out.find("tasks") != std::string::npos);
    CHECK(out.find("optimized_ms") != std::string::npos);
  }

  SUBCASE("error exits") {
    CHECK(cli({"simplify", "--no-such-flag"}, &out, &err) == 2);
    CHECK(cli({"no-such-command"}, &out, &err) == 2);
    CHECK(cli({"minimize", (tmp.path / "missing.json").string()}, &out, &err) == 2);
    const std::string junk = tmp.file("junk.json", "{");
    CHECK(cli({"minimize", junk}, &out, &err) == 2);
    CHECK_FALSE(err.empty());
    const std::string cyclic = tmp.file(
        "cyclic.json",
        R"({"tasks":[{"id":"a","deps":["b"]},{"id":"b","deps":["a"]}]})");
    CHECK(cli({"minimize", cyclic}, &out, &err) == 2);
    CHECK(cli({}, &out, &err) == 2);  // a subcommand is required
    CHECK(cli({"--help"}, &out, &err) == 0);
  }
}
