#pragma once

#include "aoe/graph.hpp"

namespace aoe {

enum class DepExpansion {
  TransitiveReduction,  // expand the reduction of the deps (the default)
  AsGiven,              // expand the deps exactly as listed
};

// Canonical expansion of an AoN graph: a fresh start/end milestone pair and a
// task edge per task, one unlabeled edge per expanded dependency, plus a
// super-source feeding every vertex without incoming edges and a super-sink
// fed by every vertex without outgoing edges. An empty project expands to a
// two-vertex graph with one unlabeled edge. Throws CycleError.
AoeGraph expand_aon(const AonGraph& a,
                    DepExpansion mode = DepExpansion::TransitiveReduction);

// Rebuilds any acyclic AOE in canonical form with exactly the same task
// reachability: compute the relation, read it as an AoN graph, expand.
AoeGraph canonicalize_aoe(const AoeGraph& g);

}  // namespace aoe
