#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aoe/errors.hpp"

namespace aoe {

using VertexId = int;
using TaskLabel = std::string;

// A directed edge. An empty task label marks a plain ordering constraint;
// a nonempty label marks the unique edge carrying that task.
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  TaskLabel task;

  bool is_task() const { return !task.empty(); }

  friend bool operator==(const Edge&, const Edge&) = default;
  // Orders by (tail, head, task); unlabeled edges sort before task edges
  // between the same pair.
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Activity-on-edge graph: a directed multigraph whose task edges carry
// distinct labels. Parallel task edges between the same pair are allowed;
// parallel unlabeled edges are coalesced eagerly, on insertion and after
// merges. The class does not enforce acyclicity; algorithms that need it
// validate via topological_order().
//
// Vertex ids are small nonnegative integers, stable until merged away.
// Merging u and v keeps min(u, v). Edges are kept sorted so that every
// iteration over the graph is deterministic.
class AoeGraph {
 public:
  AoeGraph() = default;

  // Adds a vertex with the smallest id above all existing ones.
  VertexId add_vertex();
  // Adds a specific nonnegative id; adding an existing id is a no-op.
  void add_vertex(VertexId v);

  bool has_vertex(VertexId v) const { return vertices_.contains(v); }
  const std::set<VertexId>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }

  void add_task_edge(VertexId tail, VertexId head, const TaskLabel& task);
  // Returns false when the edge was already present (coalesced away).
  bool add_unlabeled_edge(VertexId tail, VertexId head);
  void remove_unlabeled_edge(VertexId tail, VertexId head);

  // Merges v into u (or u into v): the survivor is min(u, v), every edge is
  // re-targeted, unlabeled edges between the pair are dropped and duplicate
  // unlabeled edges coalesced. Refuses to merge the endpoints of a task edge.
  void merge_vertices(VertexId u, VertexId v);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t unlabeled_edge_count() const;
  bool has_edge(const Edge& e) const;
  bool has_unlabeled_edge(VertexId tail, VertexId head) const;

  std::vector<TaskLabel> tasks() const;
  std::size_t task_count() const { return task_index_.size(); }
  bool has_task(const TaskLabel& t) const { return task_index_.contains(t); }
  // Start/end milestone of the unique edge carrying the task.
  VertexId task_start(const TaskLabel& t) const;
  VertexId task_end(const TaskLabel& t) const;

  // Sorted, deduplicated neighbor sets.
  std::vector<VertexId> out_neighbors(VertexId v) const;
  std::vector<VertexId> in_neighbors(VertexId v) const;
  // Edge-multiset degrees (parallel task edges count individually).
  std::size_t out_degree(VertexId v) const;
  std::size_t in_degree(VertexId v) const;
  bool has_outgoing_task(VertexId v) const;
  bool has_incoming_task(VertexId v) const;

  friend bool operator==(const AoeGraph&, const AoeGraph&) = default;

 private:
  void check_vertex(VertexId v) const;
  void insert_edge(Edge e);

  std::set<VertexId> vertices_;
  std::vector<Edge> edges_;  // sorted by (tail, head, task)
  std::map<TaskLabel, std::pair<VertexId, VertexId>> task_index_;
};

// Activity-on-node dependency graph over task labels. Deps may be redundant
// (non-reduced) and may even be cyclic while under construction; consumers
// validate with is_acyclic() and reject cyclic inputs.
class AonGraph {
 public:
  AonGraph() = default;

  void add_task(const TaskLabel& t);
  bool has_task(const TaskLabel& t) const { return tasks_.contains(t); }
  // "before precedes after". Both tasks must exist.
  void add_dep(const TaskLabel& before, const TaskLabel& after);

  const std::set<TaskLabel>& tasks() const { return tasks_; }
  const std::set<std::pair<TaskLabel, TaskLabel>>& deps() const { return deps_; }
  std::size_t task_count() const { return tasks_.size(); }

  bool is_acyclic() const;
  AonGraph transitive_reduction() const;

  friend bool operator==(const AonGraph&, const AonGraph&) = default;

 private:
  std::set<TaskLabel> tasks_;
  std::set<std::pair<TaskLabel, TaskLabel>> deps_;
};

bool is_acyclic(const AoeGraph& g);

// Deterministic topological order: ties broken by ascending vertex id
// (the lexicographically smallest valid order). Throws CycleError.
std::vector<VertexId> topological_order(const AoeGraph& g);

}  // namespace aoe
