#pragma once

#include <map>
#include <set>
#include <string>

#include "aoe/graph.hpp"

namespace aoe {

// Task durations in abstract time units; must be positive and cover every
// task of the graph being scheduled.
using DurationMap = std::map<TaskLabel, double>;

struct Timeline {
  std::map<VertexId, double> level;  // earliest time per milestone
  double makespan = 0.0;
  std::set<TaskLabel> critical_tasks;  // on some maximum-weight path
};

// Earliest-start schedule: longest weighted path from the sources, with task
// edges weighing their duration and unlabeled edges nothing. Critical tasks
// are everything lying on at least one maximum-weight source-to-sink path.
// Throws CycleError / MissingDuration / InvalidDuration.
Timeline schedule(const AoeGraph& g, const DurationMap& durations);

}  // namespace aoe
