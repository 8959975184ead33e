#include "aoe/oracle.hpp"

#include <algorithm>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "aoe/canonicalize.hpp"
#include "aoe/simplify.hpp"

namespace aoe {

VertexSignature signature(const AoeGraph& g, VertexId v) {
  if (!g.has_vertex(v)) throw UnknownVertex("unknown vertex " + std::to_string(v));
  VertexSignature s;
  for (const Edge& e : g.edges()) {
    if (!e.is_task()) continue;
    if (e.head == v) s.in_tasks.push_back(e.task);
    if (e.tail == v) s.out_tasks.push_back(e.task);
  }
  // edges() iterates in sorted order, but sort by label to be explicit
  std::sort(s.in_tasks.begin(), s.in_tasks.end());
  std::sort(s.out_tasks.begin(), s.out_tasks.end());
  return s;
}

AoeGraph renumber_by_signature(const AoeGraph& g) {
  std::vector<std::pair<VertexSignature, VertexId>> keyed;
  keyed.reserve(g.vertex_count());
  for (VertexId v : g.vertices()) keyed.emplace_back(signature(g, v), v);
  std::sort(keyed.begin(), keyed.end());
  std::map<VertexId, VertexId> remap;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    remap[keyed[i].second] = static_cast<VertexId>(i);

  AoeGraph out;
  for (std::size_t i = 0; i < keyed.size(); ++i)
    out.add_vertex(static_cast<VertexId>(i));
  for (const Edge& e : g.edges()) {
    if (e.is_task())
      out.add_task_edge(remap[e.tail], remap[e.head], e.task);
    else
      out.add_unlabeled_edge(remap[e.tail], remap[e.head]);
  }
  return out;
}

bool same_output(const AoeGraph& g, const AoeGraph& h) {
  if (!applicable_rules(g).empty())
    throw NotSaturated("first graph still admits a rewrite");
  if (!applicable_rules(h).empty())
    throw NotSaturated("second graph still admits a rewrite");
  if (g.tasks() != h.tasks()) return false;

  const auto collect = [](const AoeGraph& x) {
    std::map<VertexSignature, VertexId> by_sig;
    for (VertexId v : x.vertices()) {
      auto [it, fresh] = by_sig.emplace(signature(x, v), v);
      if (!fresh) return std::map<VertexSignature, VertexId>{};  // collision
    }
    return by_sig;
  };
  const auto gs = collect(g);
  const auto hs = collect(h);
  if (gs.empty() != (g.vertex_count() == 0)) return false;
  if (hs.empty() != (h.vertex_count() == 0)) return false;
  if (gs.size() != hs.size()) return false;

  std::map<VertexId, VertexId> to_h;
  for (const auto& [sig, v] : gs) {
    const auto it = hs.find(sig);
    if (it == hs.end()) return false;
    to_h[v] = it->second;
  }
  // Task edges already correspond once the signatures match; only the
  // unlabeled edges need an explicit check.
  std::set<std::pair<VertexId, VertexId>> gu, hu;
  for (const Edge& e : g.edges())
    if (!e.is_task()) gu.emplace(to_h.at(e.tail), to_h.at(e.head));
  for (const Edge& e : h.edges())
    if (!e.is_task()) hu.emplace(e.tail, e.head);
  return gu == hu;
}

namespace {

bool assignment_realizes(const TaskReachability& r,
                         const std::vector<TaskLabel>& ts,
                         const std::vector<int>& assign, int k) {
  AoeGraph g;
  for (int v = 0; v < k; ++v) g.add_vertex(v);
  const int t = static_cast<int>(ts.size());
  for (int i = 0; i < t; ++i)
    g.add_task_edge(assign[2 * i], assign[2 * i + 1], ts[i]);
  // Wire every required pair directly unless the endpoints already touch;
  // for a transitive relation this can never manufacture extra pairs.
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j) {
      if (i == j || !r.reaches(ts[i], ts[j])) continue;
      const int from = assign[2 * i + 1];
      const int to = assign[2 * j];
      if (from != to && !g.has_unlabeled_edge(from, to))
        g.add_unlabeled_edge(from, to);
    }
  if (!is_acyclic(g)) return false;
  return task_reachability(g) == r;
}

}  // namespace

int brute_force_min(const TaskReachability& r, int max_tasks) {
  const int t = static_cast<int>(r.task_count());
  if (t > max_tasks)
    throw TooLarge("brute-force search capped at " + std::to_string(max_tasks) +
                   " tasks");
  if (t == 0) return 1;  // a graph keeps at least one milestone

  const std::vector<TaskLabel>& ts = r.tasks();
  const int slots = 2 * t;
  std::vector<int> assign(slots, 0);
  int best = 2 * t;  // all endpoints distinct always realizes r

  // Enumerate endpoint-to-vertex assignments up to renaming: restricted
  // growth strings over the 2t endpoint slots.
  std::function<void(int, int)> rec = [&](int pos, int mx) {
    if (pos == slots) {
      const int k = mx + 1;
      if (k < best && assignment_realizes(r, ts, assign, k)) best = k;
      return;
    }
    const int limit = std::min(mx + 1, best - 2);
    for (int val = 0; val <= limit; ++val) {
      if (pos % 2 == 1 && val == assign[pos - 1]) continue;  // no self-loops
      assign[pos] = val;
      rec(pos + 1, std::max(mx, val));
    }
  };
  rec(0, -1);
  return best;
}

PosetSpec random_poset(int n, double density, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("task count must be nonnegative");
  if (density < 0.0 || density > 1.0)
    throw std::invalid_argument("density must lie in [0, 1]");

  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  std::vector<TaskLabel> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::ostringstream name;
    name << 't';
    const std::string digits = std::to_string(i);
    name << std::string(width - digits.size(), '0') << digits;
    labels.push_back(name.str());
  }
  TaskReachability rel(labels);

  std::mt19937_64 rng(seed);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[i], perm[j]);
  }
  const auto coin = [&] {
    // top 53 bits -> [0, 1); avoids distribution objects so runs reproduce
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < density;
  };
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin()) m[perm[i]][perm[j]] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      if (!m[i][k]) continue;
      for (int j = 0; j < n; ++j)
        if (m[k][j]) m[i][j] = 1;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) rel.set(labels[i], labels[j]);
  return PosetSpec{std::move(rel)};
}

namespace {

const char* kind_name(RuleKind k) {
  switch (k) {
    case RuleKind::Rule1Forward: return "rule1f";
    case RuleKind::Rule1Backward: return "rule1b";
    case RuleKind::Rule2: return "rule2";
    case RuleKind::Rule3: return "rule3";
  }
  return "?";
}

void dump_trace(std::ostream& os, const char* title,
                const std::vector<RuleApplication>& trace) {
  os << title << ":";
  for (const RuleApplication& r : trace)
    os << ' ' << kind_name(r.kind) << '(' << r.u << ',' << r.v << ')';
  os << '\n';
}

}  // namespace

bool confluence_trial(const PosetSpec& p, int orders, std::uint64_t seed) {
  const AoeGraph canonical = expand_aon(p.to_aon());
  std::vector<SimplifyResult> runs;
  runs.reserve(orders + 1);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < orders; ++i) {
    std::mt19937_64 sub(rng());
    runs.push_back(simplify_random(canonical, sub));
  }
  runs.push_back(simplify_optimized(canonical));

  for (std::size_t i = 0; i < runs.size(); ++i)
    for (std::size_t j = i + 1; j < runs.size(); ++j)
      if (!same_output(runs[i].graph, runs[j].graph)) {
        std::cerr << "confluence violation between runs " << i << " and " << j
                  << " (" << p.n_tasks() << " tasks, seed " << seed << ")\n";
        dump_trace(std::cerr, "first trace", runs[i].trace);
        dump_trace(std::cerr, "second trace", runs[j].trace);
        return false;
      }
  return true;
}

}  // namespace aoe
