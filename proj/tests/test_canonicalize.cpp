#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aoe/canonicalize.hpp"
#include "aoe/oracle.hpp"
#include "aoe/reachability.hpp"
#include "test_support.hpp"

using namespace aoe;
using namespace aoe::testing;

TEST_CASE("expanding the empty project") {
  const AoeGraph g = expand_aon(AonGraph{});
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.unlabeled_edge_count() == 1);
  CHECK(g.has_unlabeled_edge(0, 1));
}

TEST_CASE("expanding a single task") {
  const AoeGraph g = expand_aon(aon_single_task());
  CHECK(g.vertex_count() == 4);
  CHECK(g.task_count() == 1);
  CHECK(g.unlabeled_edge_count() == 2);
  // source feeds the start milestone, the end milestone feeds the sink
  const VertexId st = g.task_start("a");
  const VertexId en = g.task_end("a");
  CHECK(g.in_degree(st) == 1);
  CHECK(g.out_degree(en) == 1);
  CHECK(g.in_degree(en) == 1);
}

TEST_CASE("expanding a two-task chain") {
  const AoeGraph g = expand_aon(aon_chain_pair());
  CHECK(g.vertex_count() == 6);
  CHECK(g.task_count() == 2);
  CHECK(g.unlabeled_edge_count() == 3);
  CHECK(g.has_unlabeled_edge(g.task_end("a"), g.task_start("b")));
}

TEST_CASE("expansion size and reachability") {
  // vertex count is 2 * tasks + 2, and the relation is exactly the closure
  // of the deps; exhaustively over every poset with up to 5 tasks, then
  // randomized spot checks on larger ones
  for (int n = 0; n <= 5; ++n) {
    std::size_t mismatches = 0;
    for (const TaskReachability& r : all_posets(n)) {
      const AoeGraph g = expand_aon(to_aon(r));
      const std::size_t want = n == 0 ? 2 : 2 * std::size_t(n) + 2;
      if (g.vertex_count() != want || task_reachability(g) != r) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PosetSpec p = random_poset(9, 0.3, seed + 7);
    CHECK(task_reachability(expand_aon(p.to_aon())) == p.relation);
  }
}

TEST_CASE("expansion of redundant deps matches the reduced form") {
  AonGraph redundant;
  for (const char* t : {"a", "b", "c"}) redundant.add_task(t);
  redundant.add_dep("a", "b");
  redundant.add_dep("b", "c");
  redundant.add_dep("a", "c");  // implied
  AonGraph reduced;
  for (const char* t : {"a", "b", "c"}) reduced.add_task(t);
  reduced.add_dep("a", "b");
  reduced.add_dep("b", "c");
  CHECK(expand_aon(redundant) == expand_aon(reduced));
  // expanding deps verbatim keeps the extra edge
  CHECK(expand_aon(redundant, DepExpansion::AsGiven).unlabeled_edge_count() ==
        expand_aon(reduced).unlabeled_edge_count() + 1);
}

TEST_CASE("cyclic deps are rejected") {
  AonGraph a;
  a.add_task("a");
  a.add_task("b");
  a.add_dep("a", "b");
  a.add_dep("b", "a");
  CHECK_FALSE(a.is_acyclic());
  CHECK_THROWS_AS(expand_aon(a), CycleError);
}

TEST_CASE("canonicalizing arbitrary graphs") {
  // already canonical input: the relation is untouched
  const AoeGraph chain = expand_aon(aon_chain_pair());
  CHECK(task_reachability(canonicalize_aoe(chain)) == task_reachability(chain));

  // a redundant unlabeled edge bypassing a task chain changes nothing
  AoeGraph noisy = chain;
  noisy.add_unlabeled_edge(noisy.task_start("a"), noisy.task_start("b"));
  CHECK(task_reachability(canonicalize_aoe(noisy)) == task_reachability(chain));

  // a bare two-vertex task graph canonicalizes to the four-vertex form
  AoeGraph bare;
  bare.add_vertex(0);
  bare.add_vertex(1);
  bare.add_task_edge(0, 1, "a");
  CHECK(canonicalize_aoe(bare) == expand_aon(aon_single_task()));

  // canonicalization is idempotent
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    std::mt19937_64 rng(seed);
    const AoeGraph g = random_aoe(8, 0.4, 0.5, rng);
    const AoeGraph once = canonicalize_aoe(g);
    CHECK(canonicalize_aoe(once) == once);
    CHECK(task_reachability(once) == task_reachability(g));
  }
}
