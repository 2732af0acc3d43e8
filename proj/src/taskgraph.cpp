#include "thermsched/taskgraph.hpp"

#include "thermsched/errors.hpp"
#include "thermsched/rng.hpp"
#include "thermsched/techlib.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace thermsched {

namespace {

// Kahn's algorithm over a min-heap; returns fewer than n ids on a cycle.
std::vector<TaskId> kahn(std::size_t n,
                         const std::vector<std::vector<TaskId>> &succ,
                         const std::vector<std::vector<TaskId>> &pred) {
  std::vector<std::size_t> indeg(n);
  std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
  for (TaskId i = 0; i < n; ++i) {
    indeg[i] = pred[i].size();
    if (indeg[i] == 0) {
      ready.push(i);
    }
  }
  std::vector<TaskId> order;
  order.reserve(n);
  while (!ready.empty()) {
    TaskId u = ready.top();
    ready.pop();
    order.push_back(u);
    for (TaskId v : succ[u]) {
      if (--indeg[v] == 0) {
        ready.push(v);
      }
    }
  }
  return order;
}

} // namespace

TaskGraph::TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges,
                     double deadline, std::vector<std::string> names)
    : tasks_(std::move(tasks)), edges_(std::move(edges)), deadline_(deadline),
      names_(std::move(names)) {
  const std::size_t n = tasks_.size();
  if (n == 0) {
    throw FormatError("task graph has no tasks");
  }
  if (!(deadline_ > 0.0) || !std::isfinite(deadline_)) {
    throw FormatError("deadline must be positive");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (tasks_[i].id != i) {
      throw FormatError("task ids must be dense 0..n-1 in order");
    }
  }
  if (names_.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      names_.push_back(std::to_string(i));
    }
  } else if (names_.size() != n) {
    throw FormatError("task name list does not match task count");
  }

  succ_.assign(n, {});
  pred_.assign(n, {});
  std::set<Edge> seen;
  for (const auto &[p, s] : edges_) {
    if (p >= n || s >= n) {
      throw RefError("edge (" + std::to_string(p) + ", " + std::to_string(s) +
                     ") names an unknown task");
    }
    if (p == s) {
      throw CycleError("self-loop on task " + names_[p]);
    }
    if (!seen.insert({p, s}).second) {
      throw FormatError("duplicate edge " + names_[p] + " -> " + names_[s]);
    }
    succ_[p].push_back(s);
    pred_[s].push_back(p);
  }
  for (auto &v : succ_) {
    std::sort(v.begin(), v.end());
  }
  for (auto &v : pred_) {
    std::sort(v.begin(), v.end());
  }
  if (kahn(n, succ_, pred_).size() != n) {
    throw CycleError("task graph contains a directed cycle");
  }
}

std::vector<TaskId> topo_order(const TaskGraph &g) {
  std::vector<std::vector<TaskId>> succ(g.size()), pred(g.size());
  for (TaskId i = 0; i < g.size(); ++i) {
    succ[i] = g.successors(i);
    pred[i] = g.predecessors(i);
  }
  auto order = kahn(g.size(), succ, pred);
  if (order.size() != g.size()) {
    throw CycleError("task graph contains a directed cycle");
  }
  return order;
}

CriticalityMap static_criticality(const TaskGraph &g, const TechLibrary &lib) {
  for (const auto &t : g.tasks()) {
    if (t.typeRow >= lib.rows()) {
      throw RefError("task " + g.name(t.id) + " has no library row");
    }
  }
  CriticalityMap out;
  out.sc.assign(g.size(), 0.0);
  auto order = topo_order(g);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const TaskId t = *it;
    double tail = 0.0;
    for (TaskId s : g.successors(t)) {
      tail = std::max(tail, out.sc[s]);
    }
    out.sc[t] = lib.meanWcet(g.task(t).typeRow) + tail;
  }
  return out;
}

TaskGraph parse_task_graph(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error &e) {
    throw FormatError(std::string("graph document is not valid JSON: ") +
                      e.what());
  }
  if (!doc.is_object() || !doc.contains("tasks") || !doc.contains("edges") ||
      !doc.contains("deadline")) {
    throw FormatError("graph document needs 'tasks', 'edges' and 'deadline'");
  }
  if (!doc["tasks"].is_array() || !doc["edges"].is_array() ||
      !doc["deadline"].is_number()) {
    throw FormatError("graph document has wrongly typed fields");
  }

  auto keyOf = [](const json &id) -> std::string {
    if (id.is_string()) {
      return id.get<std::string>();
    }
    if (id.is_number_integer()) {
      return std::to_string(id.get<long long>());
    }
    throw FormatError("task ids must be integers or strings");
  };

  std::map<std::string, TaskId> index;
  std::vector<std::string> names;
  std::vector<Task> tasks;
  for (const auto &entry : doc["tasks"]) {
    if (!entry.is_object() || !entry.contains("id")) {
      throw FormatError("each task needs an 'id'");
    }
    std::string key = keyOf(entry["id"]);
    if (index.count(key) != 0) {
      throw FormatError("duplicate task id '" + key + "'");
    }
    const TaskId dense = tasks.size();
    index.emplace(key, dense);
    names.push_back(key);
    std::size_t row = dense;
    if (entry.contains("typeRow")) {
      if (!entry["typeRow"].is_number_unsigned()) {
        throw FormatError("typeRow must be a non-negative integer");
      }
      row = entry["typeRow"].get<std::size_t>();
    }
    tasks.push_back({dense, row});
  }

  std::vector<Edge> edges;
  for (const auto &e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw FormatError("each edge must be a [pred, succ] pair");
    }
    std::string p = keyOf(e[0]);
    std::string s = keyOf(e[1]);
    auto pi = index.find(p);
    auto si = index.find(s);
    if (pi == index.end() || si == index.end()) {
      throw RefError("edge [" + p + ", " + s + "] names an unknown task");
    }
    edges.emplace_back(pi->second, si->second);
  }
  return TaskGraph(std::move(tasks), std::move(edges),
                   doc["deadline"].get<double>(), std::move(names));
}

TaskGraph generate_random_graph(std::size_t nTasks, std::size_t nEdges,
                                double deadline, std::uint64_t seed) {
  if (nTasks == 0) {
    throw InfeasibleError("a task graph needs at least one task");
  }
  const std::size_t maxEdges = nTasks * (nTasks - 1) / 2;
  if (nEdges > maxEdges) {
    throw InfeasibleError("a DAG on " + std::to_string(nTasks) +
                          " tasks has at most " + std::to_string(maxEdges) +
                          " edges, " + std::to_string(nEdges) + " requested");
  }
  Rng rng(seed);
  const auto layers = static_cast<std::size_t>(
      std::ceil(std::sqrt(static_cast<double>(nTasks))));
  std::vector<std::size_t> layerOf(nTasks);
  std::vector<std::vector<TaskId>> members(layers);
  for (TaskId t = 0; t < nTasks; ++t) {
    layerOf[t] = t % layers;
    members[layerOf[t]].push_back(t);
  }

  std::set<Edge> chosen;
  std::vector<Edge> edges;
  auto add = [&](TaskId p, TaskId s) {
    if (chosen.insert({p, s}).second) {
      edges.emplace_back(p, s);
    }
  };

  // Phase 1: give every task above layer 0 one predecessor from below.
  for (TaskId t = 0; t < nTasks && edges.size() < nEdges; ++t) {
    const std::size_t l = layerOf[t];
    if (l == 0) {
      continue;
    }
    std::size_t below = 0;
    for (std::size_t k = 0; k < l; ++k) {
      below += members[k].size();
    }
    std::size_t pick = rng.below(below);
    for (std::size_t k = 0; k < l; ++k) {
      if (pick < members[k].size()) {
        add(members[k][pick], t);
        break;
      }
      pick -= members[k].size();
    }
  }

  // Phase 2: random forward pairs in (layer, id) order until the count is met.
  if (edges.size() < nEdges) {
    std::vector<TaskId> rank;
    for (const auto &m : members) {
      rank.insert(rank.end(), m.begin(), m.end());
    }
    std::vector<Edge> pool;
    for (std::size_t i = 0; i < rank.size(); ++i) {
      for (std::size_t j = i + 1; j < rank.size(); ++j) {
        if (chosen.count({rank[i], rank[j]}) == 0) {
          pool.emplace_back(rank[i], rank[j]);
        }
      }
    }
    for (std::size_t i = 0; edges.size() < nEdges; ++i) {
      std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      add(pool[i].first, pool[i].second);
    }
  }

  std::vector<Task> tasks;
  for (TaskId t = 0; t < nTasks; ++t) {
    tasks.push_back({t, t});
  }
  return TaskGraph(std::move(tasks), std::move(edges), deadline);
}

} // namespace thermsched
