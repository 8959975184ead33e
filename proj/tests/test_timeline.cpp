#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoe/canonicalize.hpp"
#include "aoe/oracle.hpp"
#include "aoe/simplify.hpp"
#include "aoe/timeline.hpp"
#include "test_support.hpp"

using namespace aoe;
using namespace aoe::testing;

TEST_CASE("scheduling a simplified chain") {
  const AoeGraph g = simplify_naive(expand_aon(aon_chain_pair())).graph;
  const Timeline t = schedule(g, {{"a", 2}, {"b", 3}});
  CHECK(t.level.at(g.task_start("a")) == 0);
  CHECK(t.level.at(g.task_end("a")) == 2);
  CHECK(t.level.at(g.task_end("b")) == 5);
  CHECK(t.makespan == 5);
  CHECK(t.critical_tasks == std::set<TaskLabel>{"a", "b"});
}

TEST_CASE("scheduling parallel tasks") {
  const AoeGraph g = simplify_naive(expand_aon(aon_parallel_pair())).graph;
  const Timeline t = schedule(g, {{"a", 1}, {"b", 4}});
  CHECK(t.makespan == 4);
  CHECK(t.critical_tasks == std::set<TaskLabel>{"b"});
}

TEST_CASE("equal durations make every diamond task critical") {
  const AoeGraph g = simplify_naive(expand_aon(aon_diamond_deps())).graph;
  const Timeline t = schedule(g, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}});
  CHECK(t.makespan == 2);
  // the chain a-then-d runs through the surviving constraint edge, so all
  // four tasks lie on some longest path
  CHECK(t.critical_tasks == std::set<TaskLabel>{"a", "b", "c", "d"});
}

TEST_CASE("schedule validation") {
  const AoeGraph g = expand_aon(aon_chain_pair());
  CHECK_THROWS_AS(schedule(g, {{"a", 2}}), MissingDuration);
  CHECK_THROWS_AS(schedule(g, DurationMap{{"a", 2}, {"b", 0}}), InvalidDuration);
  CHECK_THROWS_AS(schedule(g, DurationMap{{"a", 2}, {"b", -1}}), InvalidDuration);

  AoeGraph cyclic;
  cyclic.add_vertex(0);
  cyclic.add_vertex(1);
  cyclic.add_unlabeled_edge(0, 1);
  cyclic.add_unlabeled_edge(1, 0);
  CHECK_THROWS_AS(schedule(cyclic, {}), CycleError);
}

TEST_CASE("levels respect every edge") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PosetSpec p = random_poset(2 + int(seed % 9), 0.4, seed + 40);
    const AoeGraph g = expand_aon(p.to_aon());
    DurationMap d;
    std::mt19937_64 rng(seed);
    for (const TaskLabel& t : g.tasks()) d[t] = double(1 + rng() % 9);
    const Timeline t = schedule(g, d);
    for (const Edge& e : g.edges()) {
      const double w = e.is_task() ? d.at(e.task) : 0.0;
      CHECK(t.level.at(e.head) >= t.level.at(e.tail) + w);
    }
    double max_level = 0;
    for (const auto& [v, lv] : t.level) max_level = std::max(max_level, lv);
    CHECK(t.makespan == max_level);
  }
}

TEST_CASE("simplification preserves makespan and critical tasks") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PosetSpec p = random_poset(1 + int(seed % 10), 0.35, seed + 900);
    const AoeGraph canon = expand_aon(p.to_aon());
    DurationMap d;
    std::mt19937_64 rng(seed * 13 + 5);
    for (const TaskLabel& t : canon.tasks()) d[t] = double(1 + rng() % 9);

    const Timeline before = schedule(canon, d);
    const Timeline canon2 = schedule(canonicalize_aoe(canon), d);
    const Timeline after = schedule(simplify_optimized(canon).graph, d);
    CHECK(before.makespan == canon2.makespan);
    CHECK(before.makespan == after.makespan);
    CHECK(before.critical_tasks == canon2.critical_tasks);
    CHECK(before.critical_tasks == after.critical_tasks);
  }
}
