#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "aoe/graph.hpp"

namespace aoe {

// The three local rewrite rules:
//   rule 1  merge two vertices with no outgoing (resp. incoming) task edges
//           and identical outgoing (resp. incoming) neighbor sets
//   rule 2  remove an unlabeled edge whose endpoints stay connected by
//           another path
//   rule 3  contract an unlabeled edge (u, v) when rule 2 does not apply,
//           an outgoing task at u forbids other edges into v and an incoming
//           task at v forbids other edges out of u, and every incoming
//           neighbor of v reaches every outgoing neighbor of u

enum class Rule1Direction { Forward, Backward };

enum class RuleKind { Rule1Forward, Rule1Backward, Rule2, Rule3 };

// One applied rewrite: the merged vertex pair for rules 1 and 3, or the
// removed unlabeled edge for rule 2. Kept as an audit trail so independent
// runs can be compared.
struct RuleApplication {
  RuleKind kind = RuleKind::Rule2;
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const RuleApplication&, const RuleApplication&) = default;
};

// Forward when neither vertex has an outgoing task edge and the outgoing
// neighbor sets are equal (both empty qualifies); Backward symmetrically.
// Forward wins when both hold. Throws UnknownVertex.
std::optional<Rule1Direction> rule1_applicable(const AoeGraph& g, VertexId u,
                                               VertexId v);

// True when the endpoints are joined by some path other than the edge itself
// (a parallel task edge counts). Throws NotUnlabeled / UnknownEdge.
bool rule2_applicable(const AoeGraph& g, const Edge& e);
bool rule3_applicable(const AoeGraph& g, const Edge& e);

// Validates the matching predicate, then merges (rules 1 and 3, survivor
// min(u, v)) or removes the edge (rule 2). Throws RuleNotApplicable.
void apply_rule(AoeGraph& g, const RuleApplication& r);

// Every rewrite applicable right now, in deterministic order (rule 2 edges,
// rule 1 pairs, rule 3 edges). Intended for small graphs.
std::vector<RuleApplication> applicable_rules(const AoeGraph& g);

// Path counts per ordered vertex pair, saturated at 2 ("two or more").
// count(u, u) is always 0 on acyclic inputs; count(u, v) >= 1 exactly when a
// path exists.
class PathCountMatrix {
 public:
  PathCountMatrix() = default;

  int count(VertexId u, VertexId v) const;
  int count_at(std::size_t u_index, std::size_t v_index) const {
    return cells_[v_index * verts_.size() + u_index];
  }
  const std::vector<VertexId>& vertex_ids() const { return verts_; }

 private:
  friend PathCountMatrix compute_path_counts(const AoeGraph& g);

  std::vector<VertexId> verts_;        // ascending live vertices
  std::vector<std::uint8_t> cells_;    // column-major: one column per target
};

// One topological sweep; initialization counts edge multiplicity so a task
// edge parallel to an unlabeled edge is seen as a second path. Throws
// CycleError.
PathCountMatrix compute_path_counts(const AoeGraph& g);

// Removes every unlabeled edge with two or more paths between its endpoints,
// in one batch. The matrix must be fresh for g. Returns the removals.
std::vector<RuleApplication> rule2_sweep(AoeGraph& g, const PathCountMatrix& m);

// Groups of two or more vertices mergeable by rule 1, found by bucketing on
// degree and then radix-splitting on the sorted neighbor lists; forward
// groups first, then backward, duplicates dropped. Each group is sorted.
std::vector<std::vector<VertexId>> merge_detection(const AoeGraph& g);

// First unlabeled edge (deterministic order) contractible by rule 3, found
// via the per-vertex intersections of the incoming neighbors' reachable
// sets. Call on a graph already swept by rule 2, with that sweep's matrix.
std::optional<Edge> rule3_scan(const AoeGraph& g, const PathCountMatrix& m);

struct SimplifyResult {
  AoeGraph graph;
  std::vector<RuleApplication> trace;
  // Fixpoint steps for the naive/random drivers; outer-loop count for the
  // optimized driver.
  int iterations = 0;
};

// Reference driver: repeatedly finds the first applicable rewrite in
// deterministic order and applies it, until none is left. Accepts any
// acyclic AOE. Throws CycleError.
SimplifyResult simplify_naive(AoeGraph g);

// Like simplify_naive but picks uniformly among all currently applicable
// rewrites; used to probe order independence.
SimplifyResult simplify_random(AoeGraph g, std::mt19937_64& rng);

// Batched driver: per outer iteration recompute the path-count matrix, sweep
// rule 2, then either merge one detected rule-1 group or contract one rule-3
// edge; stop when nothing applies. The matrix is never consulted after a
// merge within the same iteration. Throws CycleError.
SimplifyResult simplify_optimized(AoeGraph g);

}  // namespace aoe
