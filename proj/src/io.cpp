#include "aoe/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <json.hpp>

#include "aoe/oracle.hpp"

namespace aoe {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

// Doubles that happen to be integral print without a trailing ".0" both in
// JSON and in DOT labels, matching how nlohmann serializes whole numbers.
json number_for(double x) {
  if (x == static_cast<double>(static_cast<long long>(x)))
    return json(static_cast<long long>(x));
  return json(x);
}

}  // namespace

AonGraph parse_aon(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("tasks") || !j["tasks"].is_array())
    throw ParseError("expected an object with a \"tasks\" array");
  AonGraph a;
  for (const json& t : j["tasks"]) {
    if (!t.is_object() || !t.contains("id") || !t["id"].is_string())
      throw ParseError("every task needs a string \"id\"");
    const std::string id = t["id"].get<std::string>();
    if (id.empty()) throw ParseError("task ids must be nonempty");
    a.add_task(id);  // DuplicateTask on repeats
  }
  for (const json& t : j["tasks"]) {
    const std::string id = t["id"].get<std::string>();
    if (!t.contains("deps")) continue;
    if (!t["deps"].is_array())
      throw ParseError("\"deps\" of task " + id + " must be an array");
    for (const json& d : t["deps"]) {
      if (!d.is_string())
        throw ParseError("deps of task " + id + " must be task ids");
      a.add_dep(d.get<std::string>(), id);  // UnknownDep on bad references
    }
  }
  if (!a.is_acyclic()) throw CyclicDeps("task dependencies form a cycle");
  return a;
}

std::string emit_aon(const AonGraph& a) {
  json tasks = json::array();
  for (const TaskLabel& t : a.tasks()) {
    json deps = json::array();
    for (const auto& [before, after] : a.deps())
      if (after == t) deps.push_back(before);
    tasks.push_back(json{{"id", t}, {"deps", deps}});
  }
  return json{{"tasks", tasks}}.dump(2) + "\n";
}

AoeGraph parse_aoe(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array() ||
      !j.contains("edges") || !j["edges"].is_array())
    throw ParseError("expected an object with \"vertices\" and \"edges\" arrays");
  AoeGraph g;
  for (const json& v : j["vertices"]) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
      throw ParseError("vertices must be nonnegative integers");
    const VertexId id = v.get<VertexId>();
    if (g.has_vertex(id))
      throw ParseError("duplicate vertex id " + std::to_string(id));
    g.add_vertex(id);
  }
  for (const json& e : j["edges"]) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
        !e["from"].is_number_integer() || !e["to"].is_number_integer())
      throw ParseError("every edge needs integer \"from\" and \"to\"");
    const VertexId from = e["from"].get<VertexId>();
    const VertexId to = e["to"].get<VertexId>();
    if (!g.has_vertex(from) || !g.has_vertex(to))
      throw ParseError("edge references unknown vertex");
    if (e.contains("task") && !e["task"].is_null()) {
      if (!e["task"].is_string())
        throw ParseError("edge \"task\" must be a string or null");
      g.add_task_edge(from, to, e["task"].get<std::string>());
    } else {
      g.add_unlabeled_edge(from, to);  // duplicates coalesce silently
    }
  }
  if (!is_acyclic(g)) throw CycleError("graph contains a directed cycle");
  return g;
}

std::string emit_aoe(const AoeGraph& g) {
  const AoeGraph r = renumber_by_signature(g);
  json vertices = json::array();
  for (VertexId v : r.vertices()) vertices.push_back(v);
  json edges = json::array();
  for (const Edge& e : r.edges()) {
    json je{{"from", e.tail}, {"to", e.head}};
    je["task"] = e.is_task() ? json(e.task) : json(nullptr);
    edges.push_back(je);
  }
  return json{{"vertices", vertices}, {"edges", edges}}.dump(2) + "\n";
}

DurationMap parse_durations(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw ParseError("expected an object of task durations");
  DurationMap d;
  for (const auto& [task, value] : j.items()) {
    if (!value.is_number())
      throw ParseError("duration of task " + task + " must be a number");
    const double x = value.get<double>();
    if (!(x > 0.0))
      throw InvalidDuration("duration for task " + task + " must be positive");
    d[task] = x;
  }
  return d;
}

std::string emit_timeline(const Timeline& t) {
  json levels = json::object();
  for (const auto& [v, lv] : t.level) levels[std::to_string(v)] = number_for(lv);
  json critical = json::array();
  for (const TaskLabel& task : t.critical_tasks) critical.push_back(task);
  return json{{"levels", levels},
              {"makespan", number_for(t.makespan)},
              {"critical", critical}}
             .dump(2) +
         "\n";
}

Timeline parse_timeline(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("levels") || !j["levels"].is_object())
    throw ParseError("expected an object with a \"levels\" map");
  Timeline t;
  for (const auto& [key, value] : j["levels"].items()) {
    if (!value.is_number())
      throw ParseError("level of vertex " + key + " must be a number");
    try {
      t.level[std::stoi(key)] = value.get<double>();
    } catch (const std::exception&) {
      throw ParseError("vertex key is not an integer: " + key);
    }
  }
  if (j.contains("makespan") && j["makespan"].is_number())
    t.makespan = j["makespan"].get<double>();
  if (j.contains("critical") && j["critical"].is_array())
    for (const json& c : j["critical"])
      if (c.is_string()) t.critical_tasks.insert(c.get<std::string>());
  return t;
}

std::string emit_dot(const AoeGraph& g, const Timeline* timeline) {
  topological_order(g);  // CycleError on bad input
  std::ostringstream os;
  os << "digraph aoe {\n  rankdir=LR;\n";
  if (timeline == nullptr) {
    for (VertexId v : g.vertices()) os << "  v" << v << ";\n";
  } else {
    std::map<double, std::vector<VertexId>> by_level;
    for (VertexId v : g.vertices()) {
      const auto it = timeline->level.find(v);
      const double lv = it == timeline->level.end() ? 0.0 : it->second;
      os << "  v" << v << " [label=\"v" << v << " @ "
         << number_for(lv).dump() << "\"];\n";
      by_level[lv].push_back(v);
    }
    for (const auto& [lv, vs] : by_level) {
      os << "  { rank=same;";
      for (VertexId v : vs) os << " v" << v << ";";
      os << " }\n";
    }
  }
  for (const Edge& e : g.edges()) {
    os << "  v" << e.tail << " -> v" << e.head;
    if (e.is_task())
      os << " [label=\"" << e.task << "\"];\n";
    else
      os << " [style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace aoe
