#include "aoe/timeline.hpp"

#include <algorithm>

namespace aoe {

Timeline schedule(const AoeGraph& g, const DurationMap& durations) {
  const std::vector<VertexId> order = topological_order(g);
  const auto weight = [&](const Edge& e) {
    if (!e.is_task()) return 0.0;
    const auto it = durations.find(e.task);
    if (it == durations.end())
      throw MissingDuration("no duration for task " + e.task);
    if (!(it->second > 0.0))
      throw InvalidDuration("duration for task " + e.task + " must be positive");
    return it->second;
  };

  Timeline t;
  for (VertexId v : g.vertices()) t.level[v] = 0.0;
  for (VertexId v : order)
    for (const Edge& e : g.edges())
      if (e.tail == v)
        t.level[e.head] = std::max(t.level[e.head], t.level[v] + weight(e));
  for (const auto& [v, lv] : t.level) t.makespan = std::max(t.makespan, lv);

  // Longest distance from each vertex to any sink, for the criticality test.
  std::map<VertexId, double> to_sink;
  for (VertexId v : g.vertices()) to_sink[v] = 0.0;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    for (const Edge& e : g.edges())
      if (e.tail == *it)
        to_sink[*it] = std::max(to_sink[*it], weight(e) + to_sink[e.head]);

  for (const Edge& e : g.edges()) {
    if (!e.is_task()) continue;
    if (t.level[e.tail] + weight(e) + to_sink[e.head] == t.makespan)
      t.critical_tasks.insert(e.task);
  }
  return t;
}

}  // namespace aoe
