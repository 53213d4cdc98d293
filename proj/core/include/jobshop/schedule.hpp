#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobshop/instance.hpp"

namespace jobshop {

/// A complete selection: one processing order per machine.
///
/// Besides the sequences a Solution caches, for every operation, its machine
/// and its position in that machine's sequence, so MP/MS lookups are O(1).
class Solution {
 public:
  Solution() = default;

  /// Throws std::invalid_argument unless every sequence holds exactly the
  /// operations routed to that machine, each once.
  Solution(const Instance& instance, std::vector<std::vector<OpId>> sequences);

  int num_machines() const { return static_cast<int>(sequences_.size()); }
  std::span<const OpId> sequence(int machine) const {
    return sequences_[machine];
  }
  const std::vector<std::vector<OpId>>& sequences() const { return sequences_; }

  int machine_of(OpId o) const { return machine_[o.index]; }
  int position(OpId o) const { return position_[o.index]; }

  OpId machine_pred(OpId o) const {
    const int p = position_[o.index];
    return p == 0 ? kNoOp : sequences_[machine_[o.index]][p - 1];
  }
  OpId machine_succ(OpId o) const {
    const auto& seq = sequences_[machine_[o.index]];
    const auto p = static_cast<std::size_t>(position_[o.index]);
    return p + 1 == seq.size() ? kNoOp : seq[p + 1];
  }

  /// Replaces positions [first, first + ops.size()) of one machine. The
  /// replacement must be a permutation of the ops it overwrites.
  void rewrite_segment(int machine, int first, std::span<const OpId> ops);

  bool operator==(const Solution& other) const {
    return sequences_ == other.sequences_;
  }

 private:
  std::vector<std::vector<OpId>> sequences_;
  std::vector<int> machine_;
  std::vector<int> position_;
};

/// Raised when a selection implies a cycle in the disjunctive graph.
class CycleError : public std::runtime_error {
 public:
  explicit CycleError(OpId on_cycle);

  OpId operation() const { return operation_; }

 private:
  OpId operation_;
};

/// Longest-path data of an acyclic selection.
///
/// head[o] is the longest path from the dummy start to o (the semi-active
/// start time); tail[o] is the longest path from o to the dummy finish and
/// includes o's own duration. An operation is critical iff
/// head + tail == makespan.
struct ScheduleData {
  std::vector<Time> head;
  std::vector<Time> tail;
  Time makespan = 0;
  std::vector<OpId> topological_order;

  Time head_of(OpId o) const { return o.valid() ? head[o.index] : 0; }
  Time tail_of(OpId o) const { return o.valid() ? tail[o.index] : 0; }
  bool is_critical(OpId o) const {
    return head[o.index] + tail[o.index] == makespan;
  }
};

/// Forward and backward longest-path passes over a topological order of the
/// job and machine arcs. Throws CycleError for infeasible selections.
ScheduleData evaluate(const Instance& instance, const Solution& solution);

struct CriticalBlock {
  int machine = 0;
  std::vector<OpId> ops;

  bool operator==(const CriticalBlock&) const = default;
};

/// One critical path, start to finish. Backtracks from the smallest-id
/// operation that completes at the makespan, preferring the machine
/// predecessor whenever both predecessors are tight.
std::vector<OpId> critical_path(const Instance& instance,
                                const Solution& solution,
                                const ScheduleData& data);

/// Splits a path into maximal runs of machine-adjacent operations.
std::vector<CriticalBlock> critical_blocks(std::span<const OpId> path,
                                           const Solution& solution);

/// Blocks over every critical operation rather than one path: maximal runs
/// of machine-adjacent critical operations joined by tight machine arcs.
/// Ordered by (machine, position).
std::vector<CriticalBlock> all_critical_blocks(const Instance& instance,
                                               const Solution& solution,
                                               const ScheduleData& data);

/// One row per operation, "M<machine> <op> <start> <end> critical|-",
/// sorted by machine then start time. Machines and labels are 1-based.
std::string gantt_export(const Instance& instance, const Solution& solution,
                         const ScheduleData& data);

}  // namespace jobshop
