#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "aoe/graph.hpp"

namespace aoe {

// The "can run after" relation between tasks: from reaches to when the end
// milestone of from coincides with, or has a path to, the start milestone of
// to. Always irreflexive; transitive and acyclic whenever it was computed
// from an acyclic graph.
class TaskReachability {
 public:
  TaskReachability() = default;
  // Takes the task universe; labels must be distinct.
  explicit TaskReachability(std::vector<TaskLabel> tasks);

  const std::vector<TaskLabel>& tasks() const { return tasks_; }
  std::size_t task_count() const { return tasks_.size(); }
  bool has_task(const TaskLabel& t) const;

  // reaches(t, t) is false by construction.
  bool reaches(const TaskLabel& from, const TaskLabel& to) const;
  void set(const TaskLabel& from, const TaskLabel& to, bool value = true);

  // All related ordered pairs, sorted.
  std::vector<std::pair<TaskLabel, TaskLabel>> related_pairs() const;
  bool is_transitive() const;

  friend bool operator==(const TaskReachability&, const TaskReachability&) = default;

 private:
  std::size_t index_of(const TaskLabel& t) const;

  std::vector<TaskLabel> tasks_;  // sorted
  std::vector<char> rel_;        // row-major |tasks| x |tasks|
};

// Single-pair query; throws UnknownTask / SameTask.
bool task_reaches(const AoeGraph& g, const TaskLabel& from, const TaskLabel& to);

// Full relation over all ordered pairs of distinct tasks. Throws CycleError.
TaskReachability task_reachability(const AoeGraph& g);

// All maximal task sequences chained by the reachability relation; no result
// is a subsequence of another. Output can be exponential, so the task count
// is capped. Throws CycleError / SizeLimitExceeded.
std::set<std::vector<TaskLabel>> potential_critical_paths(const AoeGraph& g,
                                                          std::size_t max_tasks = 20);

// Same task set and same reachability relation; by the theory this is the
// same as having equal sets of potential critical paths, without ever
// enumerating them. Throws CycleError.
bool equivalent(const AoeGraph& g, const AoeGraph& h);

// Transitive closure of an AoN dependency graph. Throws CycleError.
TaskReachability reachability(const AonGraph& a);

// AoN graph whose deps are exactly the related pairs of the relation.
AonGraph to_aon(const TaskReachability& r);

}  // namespace aoe
