#include "aoe/canonicalize.hpp"

#include <map>
#include <vector>

#include "aoe/reachability.hpp"

namespace aoe {

AoeGraph expand_aon(const AonGraph& a, DepExpansion mode) {
  if (!a.is_acyclic()) throw CycleError("dependency graph contains a cycle");

  AoeGraph g;
  const std::vector<TaskLabel> ts(a.tasks().begin(), a.tasks().end());
  const int n = static_cast<int>(ts.size());
  if (n == 0) {
    // Degenerate project: just the two boundary milestones.
    g.add_vertex(0);
    g.add_vertex(1);
    g.add_unlabeled_edge(0, 1);
    return g;
  }

  // Task i gets start milestone 2i and end milestone 2i+1; the super-source
  // and super-sink take the next two ids.
  std::map<TaskLabel, int> index;
  for (int i = 0; i < n; ++i) {
    index[ts[i]] = i;
    g.add_vertex(2 * i);
    g.add_vertex(2 * i + 1);
    g.add_task_edge(2 * i, 2 * i + 1, ts[i]);
  }
  const AonGraph deps =
      mode == DepExpansion::TransitiveReduction ? a.transitive_reduction() : a;
  for (const auto& [before, after] : deps.deps())
    g.add_unlabeled_edge(2 * index[before] + 1, 2 * index[after]);

  std::vector<char> has_in(2 * n, 0), has_out(2 * n, 0);
  for (const Edge& e : g.edges()) {
    has_out[e.tail] = 1;
    has_in[e.head] = 1;
  }
  const VertexId source = 2 * n;
  const VertexId sink = 2 * n + 1;
  g.add_vertex(source);
  g.add_vertex(sink);
  for (int v = 0; v < 2 * n; ++v) {
    if (!has_in[v]) g.add_unlabeled_edge(source, v);
    if (!has_out[v]) g.add_unlabeled_edge(v, sink);
  }
  return g;
}

AoeGraph canonicalize_aoe(const AoeGraph& g) {
  return expand_aon(to_aon(task_reachability(g)));
}

}  // namespace aoe
