#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thermsched {

class TechLibrary;

using TaskId = std::size_t;
using Edge = std::pair<TaskId, TaskId>;

struct Task {
  TaskId id = 0;
  /// Row of the technology library describing this task.
  std::size_t typeRow = 0;
};

/// Immutable, validated DAG of tasks with a real-time deadline.
///
/// Task ids are dense (tasks()[i].id == i). Construction rejects cycles and
/// self-loops (CycleError), unknown endpoints (RefError), duplicate edges and
/// non-positive deadlines (FormatError).
class TaskGraph {
public:
  TaskGraph(std::vector<Task> tasks, std::vector<Edge> edges, double deadline,
            std::vector<std::string> names = {});

  std::size_t size() const { return tasks_.size(); }
  const std::vector<Task> &tasks() const { return tasks_; }
  const Task &task(TaskId id) const { return tasks_.at(id); }
  const std::vector<Edge> &edges() const { return edges_; }
  double deadline() const { return deadline_; }

  const std::vector<TaskId> &successors(TaskId id) const { return succ_.at(id); }
  const std::vector<TaskId> &predecessors(TaskId id) const {
    return pred_.at(id);
  }

  /// Original (possibly symbolic) name of the task, or its id as text.
  const std::string &name(TaskId id) const { return names_.at(id); }
  const std::vector<std::string> &names() const { return names_; }

private:
  std::vector<Task> tasks_;
  std::vector<Edge> edges_;
  double deadline_;
  std::vector<std::string> names_;
  std::vector<std::vector<TaskId>> succ_;
  std::vector<std::vector<TaskId>> pred_;
};

/// Static criticality per task: sc(t) = w(t) + max over successors sc(s),
/// with w(t) the mean WCET of t's library row.
struct CriticalityMap {
  std::vector<double> sc;

  double operator[](TaskId id) const { return sc.at(id); }
  std::size_t size() const { return sc.size(); }
};

/// Parses the JSON graph format: {"tasks":[{"id":..}], "edges":[[p,s]],
/// "deadline":D}. Ids may be integers or strings and are renumbered densely
/// in order of appearance; an optional per-task "typeRow" overrides the
/// default row (the dense id).
TaskGraph parse_task_graph(std::string_view document);

/// Kahn order; among simultaneously available tasks the lowest id first.
std::vector<TaskId> topo_order(const TaskGraph &g);

CriticalityMap static_criticality(const TaskGraph &g, const TechLibrary &lib);

/// Layered random DAG: ceil(sqrt(n)) layers filled round-robin, one edge from
/// a lower layer into every task above layer 0 while the budget lasts, then
/// random forward pairs until exactly nEdges edges exist.
TaskGraph generate_random_graph(std::size_t nTasks, std::size_t nEdges,
                                double deadline, std::uint64_t seed);

} // namespace thermsched
