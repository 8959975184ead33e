#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "aoe/graph.hpp"
#include "aoe/reachability.hpp"

namespace aoe {

// Which tasks end and start at a vertex. In a fully simplified graph every
// vertex has a nonempty, globally unique signature, which is what makes two
// independently simplified results comparable vertex by vertex.
struct VertexSignature {
  std::vector<TaskLabel> in_tasks;   // tasks ending here, sorted
  std::vector<TaskLabel> out_tasks;  // tasks starting here, sorted

  friend bool operator==(const VertexSignature&, const VertexSignature&) = default;
  friend auto operator<=>(const VertexSignature&, const VertexSignature&) = default;
};

VertexSignature signature(const AoeGraph& g, VertexId v);

// Rebuilds the graph with vertices renumbered 0..n-1 in signature order
// (ties broken by old id), so equal results emit identical bytes.
AoeGraph renumber_by_signature(const AoeGraph& g);

// Structural identity of two fully simplified graphs: the signature-induced
// vertex map is a bijection and both task and unlabeled edges correspond
// under it. Throws NotSaturated when either graph still admits a rewrite.
bool same_output(const AoeGraph& g, const AoeGraph& h);

// Minimum vertex count of any acyclic AOE realizing exactly the relation r,
// by exhaustive search over the ways task endpoints can share vertices.
// Exponential; refuses more than max_tasks tasks (TooLarge).
int brute_force_min(const TaskReachability& r, int max_tasks = 4);

// A strict partial order over generated task labels.
struct PosetSpec {
  TaskReachability relation;

  int n_tasks() const { return static_cast<int>(relation.task_count()); }
  AonGraph to_aon() const { return aoe::to_aon(relation); }
};

// Deterministic per seed: sample each pair ordered by a random permutation
// with the given probability, then close transitively.
PosetSpec random_poset(int n, double density, std::uint64_t seed);

// Expands the poset and simplifies it `orders` times with random rule
// selection plus once with the optimized driver; true when all outputs are
// pairwise identical under same_output. Divergences are dumped to stderr.
bool confluence_trial(const PosetSpec& p, int orders, std::uint64_t seed);

}  // namespace aoe
