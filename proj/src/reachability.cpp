#include "aoe/reachability.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>

namespace aoe {

TaskReachability::TaskReachability(std::vector<TaskLabel> tasks)
    : tasks_(std::move(tasks)) {
  std::sort(tasks_.begin(), tasks_.end());
  if (std::adjacent_find(tasks_.begin(), tasks_.end()) != tasks_.end())
    throw std::invalid_argument("task labels must be distinct");
  rel_.assign(tasks_.size() * tasks_.size(), 0);
}

std::size_t TaskReachability::index_of(const TaskLabel& t) const {
  const auto it = std::lower_bound(tasks_.begin(), tasks_.end(), t);
  if (it == tasks_.end() || *it != t) throw UnknownTask("unknown task: " + t);
  return static_cast<std::size_t>(it - tasks_.begin());
}

bool TaskReachability::has_task(const TaskLabel& t) const {
  return std::binary_search(tasks_.begin(), tasks_.end(), t);
}

bool TaskReachability::reaches(const TaskLabel& from, const TaskLabel& to) const {
  const std::size_t i = index_of(from);
  const std::size_t j = index_of(to);
  return rel_[i * tasks_.size() + j] != 0;
}

void TaskReachability::set(const TaskLabel& from, const TaskLabel& to, bool value) {
  const std::size_t i = index_of(from);
  const std::size_t j = index_of(to);
  if (i == j) throw std::invalid_argument("relation is irreflexive");
  rel_[i * tasks_.size() + j] = value ? 1 : 0;
}

std::vector<std::pair<TaskLabel, TaskLabel>> TaskReachability::related_pairs() const {
  std::vector<std::pair<TaskLabel, TaskLabel>> out;
  const std::size_t n = tasks_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (rel_[i * n + j]) out.emplace_back(tasks_[i], tasks_[j]);
  return out;
}

bool TaskReachability::is_transitive() const {
  const std::size_t n = tasks_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!rel_[i * n + j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (rel_[j * n + k] && !rel_[i * n + k]) return false;
    }
  return true;
}

namespace {

// Vertex-to-vertex reachability (paths of one or more edges) as bitset rows
// over a dense index of the live vertices, accumulated in reverse
// topological order.
struct VertexReach {
  std::vector<VertexId> verts;           // ascending
  std::vector<std::uint64_t> bits;       // n rows of `words` words
  std::size_t words = 0;

  explicit VertexReach(const AoeGraph& g) {
    const std::vector<VertexId> order = topological_order(g);
    verts.assign(g.vertices().begin(), g.vertices().end());
    const std::size_t n = verts.size();
    words = (n + 63) / 64;
    bits.assign(n * words, 0);
    std::vector<std::vector<std::size_t>> outs(n);
    for (const Edge& e : g.edges())
      outs[index_of(e.tail)].push_back(index_of(e.head));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const std::size_t v = index_of(*it);
      std::uint64_t* row = &bits[v * words];
      for (std::size_t w : outs[v]) {
        const std::uint64_t* src = &bits[w * words];
        for (std::size_t k = 0; k < words; ++k) row[k] |= src[k];
        row[w / 64] |= std::uint64_t{1} << (w % 64);
      }
    }
  }

  std::size_t index_of(VertexId v) const {
    return static_cast<std::size_t>(
        std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  }

  bool reaches(VertexId u, VertexId v) const {
    const std::size_t i = index_of(u);
    const std::size_t j = index_of(v);
    return (bits[i * words + j / 64] >> (j % 64)) & 1;
  }
};

}  // namespace

bool task_reaches(const AoeGraph& g, const TaskLabel& from, const TaskLabel& to) {
  if (from == to) throw SameTask("task compared with itself: " + from);
  const VertexId end = g.task_end(from);
  const VertexId start = g.task_start(to);
  if (end == start) return true;
  // Plain DFS; single-pair queries do not warrant the full closure.
  std::vector<VertexId> stack{end};
  std::set<VertexId> seen{end};
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (const Edge& e : g.edges()) {
      if (e.tail != v) continue;
      if (e.head == start) return true;
      if (seen.insert(e.head).second) stack.push_back(e.head);
    }
  }
  return false;
}

TaskReachability task_reachability(const AoeGraph& g) {
  const VertexReach reach(g);  // throws CycleError on cyclic input
  TaskReachability rel(g.tasks());
  for (const TaskLabel& from : rel.tasks()) {
    const VertexId end = g.task_end(from);
    for (const TaskLabel& to : rel.tasks()) {
      if (from == to) continue;
      const VertexId start = g.task_start(to);
      if (end == start || reach.reaches(end, start)) rel.set(from, to);
    }
  }
  return rel;
}

std::set<std::vector<TaskLabel>> potential_critical_paths(const AoeGraph& g,
                                                          std::size_t max_tasks) {
  if (g.task_count() > max_tasks)
    throw SizeLimitExceeded("critical path enumeration capped at " +
                            std::to_string(max_tasks) + " tasks");
  const TaskReachability rel = task_reachability(g);
  const std::vector<TaskLabel>& ts = rel.tasks();

  // The relation is transitive, so the maximal sequences are exactly the
  // maximal chains: walk cover steps (no task strictly between) starting
  // from tasks with no predecessor.
  auto covers = [&](const TaskLabel& a, const TaskLabel& b) {
    if (!rel.reaches(a, b)) return false;
    for (const TaskLabel& w : ts)
      if (w != a && w != b && rel.reaches(a, w) && rel.reaches(w, b)) return false;
    return true;
  };

  std::set<std::vector<TaskLabel>> result;
  std::vector<TaskLabel> chain;
  std::function<void(const TaskLabel&)> extend = [&](const TaskLabel& t) {
    chain.push_back(t);
    bool extended = false;
    for (const TaskLabel& next : ts)
      if (covers(t, next)) {
        extended = true;
        extend(next);
      }
    if (!extended) result.insert(chain);
    chain.pop_back();
  };

  for (const TaskLabel& t : ts) {
    bool minimal = true;
    for (const TaskLabel& p : ts)
      if (p != t && rel.reaches(p, t)) {
        minimal = false;
        break;
      }
    if (minimal) extend(t);
  }
  return result;
}

bool equivalent(const AoeGraph& g, const AoeGraph& h) {
  const TaskReachability rg = task_reachability(g);
  const TaskReachability rh = task_reachability(h);
  return rg == rh;
}

TaskReachability reachability(const AonGraph& a) {
  if (!a.is_acyclic()) throw CycleError("dependency graph contains a cycle");
  std::vector<TaskLabel> labels(a.tasks().begin(), a.tasks().end());
  TaskReachability rel(std::move(labels));
  const std::size_t n = rel.task_count();
  const std::vector<TaskLabel>& ts = rel.tasks();
  std::map<TaskLabel, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[ts[i]] = i;

  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (const auto& [x, y] : a.deps()) m[index[x]][index[y]] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!m[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (m[k][j]) m[i][j] = 1;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] && i != j) rel.set(ts[i], ts[j]);
  return rel;
}

AonGraph to_aon(const TaskReachability& r) {
  AonGraph a;
  for (const TaskLabel& t : r.tasks()) a.add_task(t);
  for (const auto& [x, y] : r.related_pairs()) a.add_dep(x, y);
  return a;
}

}  // namespace aoe
