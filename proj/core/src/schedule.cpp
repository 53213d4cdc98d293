#include "jobshop/schedule.hpp"

#include <algorithm>
#include <sstream>

namespace jobshop {

Solution::Solution(const Instance& instance,
                   std::vector<std::vector<OpId>> sequences)
    : sequences_(std::move(sequences)),
      machine_(instance.num_operations(), -1),
      position_(instance.num_operations(), -1) {
  if (static_cast<int>(sequences_.size()) != instance.num_machines()) {
    throw std::invalid_argument("need one sequence per machine");
  }
  for (int m = 0; m < instance.num_machines(); ++m) {
    const auto& seq = sequences_[m];
    for (std::size_t p = 0; p < seq.size(); ++p) {
      const OpId o = seq[p];
      if (o.index < 0 || o.index >= instance.num_operations()) {
        throw std::invalid_argument("unknown operation in sequence");
      }
      if (instance.machine(o) != m) {
        throw std::invalid_argument(instance.label(o) +
                                    " is sequenced on the wrong machine");
      }
      if (machine_[o.index] != -1) {
        throw std::invalid_argument(instance.label(o) + " sequenced twice");
      }
      machine_[o.index] = m;
      position_[o.index] = static_cast<int>(p);
    }
  }
  for (int i = 0; i < instance.num_operations(); ++i) {
    if (machine_[i] == -1) {
      throw std::invalid_argument(instance.label(OpId{i}) + " is not sequenced");
    }
  }
}

void Solution::rewrite_segment(int machine, int first,
                               std::span<const OpId> ops) {
  auto& seq = sequences_[machine];
  for (std::size_t i = 0; i < ops.size(); ++i) {
    seq[first + i] = ops[i];
    position_[ops[i].index] = first + static_cast<int>(i);
  }
}

CycleError::CycleError(OpId on_cycle)
    : std::runtime_error("selection contains a cycle through operation " +
                         std::to_string(on_cycle.index)),
      operation_(on_cycle) {}

ScheduleData evaluate(const Instance& instance, const Solution& solution) {
  const int count = instance.num_operations();
  ScheduleData data;
  data.head.assign(count, 0);
  data.tail.assign(count, 0);
  data.topological_order.reserve(count);

  std::vector<int> indegree(count, 0);
  for (int i = 0; i < count; ++i) {
    const OpId o{i};
    indegree[i] = int{instance.job_pred(o).valid()} +
                  int{solution.machine_pred(o).valid()};
    if (indegree[i] == 0) data.topological_order.push_back(o);
  }

  auto& order = data.topological_order;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const OpId o = order[k];
    const Time end = data.head[o.index] + instance.duration(o);
    for (const OpId next : {instance.job_succ(o), solution.machine_succ(o)}) {
      if (!next.valid()) continue;
      data.head[next.index] = std::max(data.head[next.index], end);
      if (--indegree[next.index] == 0) order.push_back(next);
    }
  }

  if (static_cast<int>(order.size()) != count) {
    // Every leftover operation keeps an unprocessed predecessor, so walking
    // predecessors must eventually revisit an operation on a cycle.
    OpId o{static_cast<std::int32_t>(
        std::find_if(indegree.begin(), indegree.end(),
                     [](int d) { return d > 0; }) -
        indegree.begin())};
    std::vector<bool> seen(count, false);
    while (!seen[o.index]) {
      seen[o.index] = true;
      const OpId jp = instance.job_pred(o);
      o = (jp.valid() && indegree[jp.index] > 0) ? jp
                                                 : solution.machine_pred(o);
    }
    throw CycleError(o);
  }

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const OpId o = *it;
    const Time after = std::max(data.tail_of(instance.job_succ(o)),
                                data.tail_of(solution.machine_succ(o)));
    data.tail[o.index] = instance.duration(o) + after;
    data.makespan = std::max(data.makespan, data.head[o.index] + data.tail[o.index]);
  }
  return data;
}

std::vector<OpId> critical_path(const Instance& instance,
                                const Solution& solution,
                                const ScheduleData& data) {
  OpId current = kNoOp;
  for (int i = 0; i < instance.num_operations(); ++i) {
    if (data.head[i] + instance.duration(OpId{i}) == data.makespan) {
      current = OpId{i};
      break;
    }
  }
  std::vector<OpId> path;
  while (current.valid()) {
    path.push_back(current);
    const Time start = data.head[current.index];
    const OpId mp = solution.machine_pred(current);
    const OpId jp = instance.job_pred(current);
    if (mp.valid() && data.head[mp.index] + instance.duration(mp) == start) {
      current = mp;
    } else if (jp.valid() &&
               data.head[jp.index] + instance.duration(jp) == start) {
      current = jp;
    } else {
      current = kNoOp;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<CriticalBlock> critical_blocks(std::span<const OpId> path,
                                           const Solution& solution) {
  std::vector<CriticalBlock> blocks;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const OpId o = path[i];
    const bool extends = i > 0 &&
                         solution.machine_of(path[i - 1]) == solution.machine_of(o) &&
                         solution.position(path[i - 1]) + 1 == solution.position(o);
    if (!extends) blocks.push_back({solution.machine_of(o), {}});
    blocks.back().ops.push_back(o);
  }
  return blocks;
}

std::vector<CriticalBlock> all_critical_blocks(const Instance& instance,
                                               const Solution& solution,
                                               const ScheduleData& data) {
  std::vector<CriticalBlock> blocks;
  for (int m = 0; m < solution.num_machines(); ++m) {
    const auto seq = solution.sequence(m);
    for (std::size_t p = 0; p < seq.size(); ++p) {
      const OpId o = seq[p];
      if (!data.is_critical(o)) continue;
      const bool extends =
          p > 0 && data.is_critical(seq[p - 1]) &&
          data.head[seq[p - 1].index] + instance.duration(seq[p - 1]) ==
              data.head[o.index];
      if (!extends) blocks.push_back({m, {}});
      blocks.back().ops.push_back(o);
    }
  }
  return blocks;
}

std::string gantt_export(const Instance& instance, const Solution& solution,
                         const ScheduleData& data) {
  std::ostringstream out;
  for (int m = 0; m < solution.num_machines(); ++m) {
    // Sequence order equals start order in a semi-active schedule.
    for (const OpId o : solution.sequence(m)) {
      const Time start = data.head[o.index];
      out << "M" << m + 1 << " " << instance.label(o) << " " << start << " "
          << start + instance.duration(o) << " "
          << (data.is_critical(o) ? "critical" : "-") << "\n";
    }
  }
  return out.str();
}

}  // namespace jobshop
