#include "aoe/graph.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>

#include "aoe/reachability.hpp"

namespace aoe {

VertexId AoeGraph::add_vertex() {
  const VertexId v = vertices_.empty() ? 0 : *vertices_.rbegin() + 1;
  vertices_.insert(v);
  return v;
}

void AoeGraph::add_vertex(VertexId v) {
  if (v < 0) throw std::invalid_argument("vertex ids must be nonnegative");
  vertices_.insert(v);
}

void AoeGraph::check_vertex(VertexId v) const {
  if (!vertices_.contains(v))
    throw UnknownVertex("unknown vertex " + std::to_string(v));
}

void AoeGraph::insert_edge(Edge e) {
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), std::move(e));
}

void AoeGraph::add_task_edge(VertexId tail, VertexId head, const TaskLabel& task) {
  check_vertex(tail);
  check_vertex(head);
  if (task.empty()) throw std::invalid_argument("task label must be nonempty");
  if (tail == head)
    throw SelfLoop("task " + task + " would form a self-loop at vertex " +
                   std::to_string(tail));
  if (task_index_.contains(task))
    throw DuplicateTaskLabel("task label already used: " + task);
  task_index_.emplace(task, std::make_pair(tail, head));
  insert_edge(Edge{tail, head, task});
}

bool AoeGraph::add_unlabeled_edge(VertexId tail, VertexId head) {
  check_vertex(tail);
  check_vertex(head);
  if (tail == head)
    throw SelfLoop("unlabeled self-loop at vertex " + std::to_string(tail));
  if (has_unlabeled_edge(tail, head)) return false;
  insert_edge(Edge{tail, head, {}});
  return true;
}

void AoeGraph::remove_unlabeled_edge(VertexId tail, VertexId head) {
  const Edge e{tail, head, {}};
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e)
    throw UnknownEdge("no unlabeled edge " + std::to_string(tail) + " -> " +
                      std::to_string(head));
  edges_.erase(it);
}

void AoeGraph::merge_vertices(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("cannot merge a vertex with itself");
  const VertexId keep = std::min(u, v);
  const VertexId drop = std::max(u, v);

  std::vector<Edge> next;
  next.reserve(edges_.size());
  for (const Edge& e : edges_) {
    const bool between = (e.tail == u && e.head == v) || (e.tail == v && e.head == u);
    if (between) {
      if (e.is_task())
        throw MergeWouldDropTask("merging " + std::to_string(u) + " and " +
                                 std::to_string(v) + " would destroy task " + e.task);
      continue;  // unlabeled edges between the pair disappear
    }
    Edge m = e;
    if (m.tail == drop) m.tail = keep;
    if (m.head == drop) m.head = keep;
    next.push_back(std::move(m));
  }
  std::sort(next.begin(), next.end());
  // Only unlabeled edges can collide (task labels are unique); coalesce them.
  next.erase(std::unique(next.begin(), next.end()), next.end());
  edges_ = std::move(next);
  vertices_.erase(drop);
  for (auto& [label, ends] : task_index_) {
    if (ends.first == drop) ends.first = keep;
    if (ends.second == drop) ends.second = keep;
  }
}

std::size_t AoeGraph::unlabeled_edge_count() const {
  std::size_t n = 0;
  for (const Edge& e : edges_)
    if (!e.is_task()) ++n;
  return n;
}

bool AoeGraph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

bool AoeGraph::has_unlabeled_edge(VertexId tail, VertexId head) const {
  return has_edge(Edge{tail, head, {}});
}

std::vector<TaskLabel> AoeGraph::tasks() const {
  std::vector<TaskLabel> out;
  out.reserve(task_index_.size());
  for (const auto& [label, ends] : task_index_) out.push_back(label);
  return out;
}

VertexId AoeGraph::task_start(const TaskLabel& t) const {
  const auto it = task_index_.find(t);
  if (it == task_index_.end()) throw UnknownTask("unknown task: " + t);
  return it->second.first;
}

VertexId AoeGraph::task_end(const TaskLabel& t) const {
  const auto it = task_index_.find(t);
  if (it == task_index_.end()) throw UnknownTask("unknown task: " + t);
  return it->second.second;
}

std::vector<VertexId> AoeGraph::out_neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<VertexId> out;
  auto it = std::lower_bound(edges_.begin(), edges_.end(), v,
                             [](const Edge& e, VertexId t) { return e.tail < t; });
  for (; it != edges_.end() && it->tail == v; ++it)
    if (out.empty() || out.back() != it->head) out.push_back(it->head);
  return out;  // sorted because edges_ is sorted by (tail, head)
}

std::vector<VertexId> AoeGraph::in_neighbors(VertexId v) const {
  check_vertex(v);
  std::vector<VertexId> in;
  for (const Edge& e : edges_)
    if (e.head == v) in.push_back(e.tail);
  std::sort(in.begin(), in.end());
  in.erase(std::unique(in.begin(), in.end()), in.end());
  return in;
}

std::size_t AoeGraph::out_degree(VertexId v) const {
  check_vertex(v);
  std::size_t n = 0;
  for (const Edge& e : edges_)
    if (e.tail == v) ++n;
  return n;
}

std::size_t AoeGraph::in_degree(VertexId v) const {
  check_vertex(v);
  std::size_t n = 0;
  for (const Edge& e : edges_)
    if (e.head == v) ++n;
  return n;
}

bool AoeGraph::has_outgoing_task(VertexId v) const {
  check_vertex(v);
  for (const Edge& e : edges_)
    if (e.tail == v && e.is_task()) return true;
  return false;
}

bool AoeGraph::has_incoming_task(VertexId v) const {
  check_vertex(v);
  for (const Edge& e : edges_)
    if (e.head == v && e.is_task()) return true;
  return false;
}

namespace {

// Kahn's algorithm with a min-heap so ties always break toward the smallest
// vertex id. Returns nothing if the graph has a cycle.
std::optional<std::vector<VertexId>> try_topological_order(const AoeGraph& g) {
  const std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
  const std::size_t n = verts.size();
  const auto index_of = [&](VertexId v) {
    return static_cast<std::size_t>(
        std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<std::size_t>> outs(n);
  for (const Edge& e : g.edges()) {
    const std::size_t h = index_of(e.head);
    ++indeg[h];
    outs[index_of(e.tail)].push_back(h);
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) ready.push(i);
  std::vector<VertexId> order;
  order.reserve(n);
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(verts[i]);  // verts is ascending, so index order = id order
    for (std::size_t w : outs[i])
      if (--indeg[w] == 0) ready.push(w);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

}  // namespace

bool is_acyclic(const AoeGraph& g) { return try_topological_order(g).has_value(); }

std::vector<VertexId> topological_order(const AoeGraph& g) {
  auto order = try_topological_order(g);
  if (!order) throw CycleError("graph contains a directed cycle");
  return *order;
}

void AonGraph::add_task(const TaskLabel& t) {
  if (t.empty()) throw std::invalid_argument("task label must be nonempty");
  if (!tasks_.insert(t).second) throw DuplicateTask("duplicate task: " + t);
}

void AonGraph::add_dep(const TaskLabel& before, const TaskLabel& after) {
  if (!tasks_.contains(before)) throw UnknownDep("unknown task in dep: " + before);
  if (!tasks_.contains(after)) throw UnknownDep("unknown task in dep: " + after);
  if (before == after)
    throw CyclicDeps("task depends on itself: " + before);
  deps_.emplace(before, after);
}

bool AonGraph::is_acyclic() const {
  // Kahn over the dependency digraph.
  std::map<TaskLabel, int> indeg;
  std::map<TaskLabel, std::vector<TaskLabel>> outs;
  for (const TaskLabel& t : tasks_) indeg[t] = 0;
  for (const auto& [a, b] : deps_) {
    ++indeg[b];
    outs[a].push_back(b);
  }
  std::vector<TaskLabel> ready;
  for (const auto& [t, d] : indeg)
    if (d == 0) ready.push_back(t);
  std::size_t seen = 0;
  while (!ready.empty()) {
    const TaskLabel t = ready.back();
    ready.pop_back();
    ++seen;
    for (const TaskLabel& w : outs[t])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return seen == tasks_.size();
}

AonGraph AonGraph::transitive_reduction() const {
  const TaskReachability closure = reachability(*this);  // validates acyclicity
  AonGraph out;
  for (const TaskLabel& t : tasks_) out.add_task(t);
  for (const auto& [a, b] : deps_) {
    bool redundant = false;
    for (const TaskLabel& w : tasks_) {
      if (w == a || w == b) continue;
      if (closure.reaches(a, w) && closure.reaches(w, b)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.add_dep(a, b);
  }
  return out;
}

}  // namespace aoe
