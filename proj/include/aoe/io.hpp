#pragma once

#include <string>

#include "aoe/graph.hpp"
#include "aoe/timeline.hpp"

namespace aoe {

// AoN document: {"tasks": [{"id": "a", "deps": ["b", ...]}, ...]} where deps
// lists the tasks that must precede this one. Parsing rejects duplicate ids,
// unknown dep references and cyclic deps; emission is canonical (sorted,
// two-space indent), so emit then parse round-trips exactly.
AonGraph parse_aon(const std::string& text);
std::string emit_aon(const AonGraph& a);

// AOE document: {"vertices": [0, ...], "edges": [{"from": 0, "to": 1,
// "task": "a"|null}, ...]}. Duplicate unlabeled edges coalesce on parse;
// self-loops, duplicate task labels and cycles are rejected. Emission
// renumbers vertices by signature so equal graphs emit identical bytes.
AoeGraph parse_aoe(const std::string& text);
std::string emit_aoe(const AoeGraph& g);

// Flat JSON object {"a": 2, "b": 3.5} of positive durations.
DurationMap parse_durations(const std::string& text);

// {"levels": {"0": 0.0, ...}, "makespan": ..., "critical": [...]}
std::string emit_timeline(const Timeline& t);
Timeline parse_timeline(const std::string& text);

// Graphviz rendering: task edges solid and labeled, unlabeled edges dashed.
// Given a timeline, vertices are annotated with their level and grouped
// rank=same per level so the drawing comes out leveled. Throws CycleError.
std::string emit_dot(const AoeGraph& g, const Timeline* timeline = nullptr);

}  // namespace aoe
