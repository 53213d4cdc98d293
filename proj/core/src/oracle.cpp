#include "jobshop/oracle.hpp"

#include <algorithm>
#include <limits>

namespace jobshop {

namespace {

class ActiveScheduleEnumerator {
 public:
  explicit ActiveScheduleEnumerator(const Instance& instance)
      : instance_(instance),
        next_(instance.num_jobs(), 0),
        job_ready_(instance.num_jobs(), 0),
        machine_ready_(instance.num_machines(), 0),
        sequences_(instance.num_machines()) {}

  OracleResult run() {
    descend(instance_.num_operations(), 0);
    return {best_, explored_, Solution(instance_, best_sequences_)};
  }

 private:
  void descend(int left, Time makespan) {
    if (makespan >= best_) return;
    if (left == 0) {
      ++explored_;
      best_ = makespan;
      best_sequences_ = sequences_;
      return;
    }
    const int n = instance_.num_jobs();
    Time min_end = std::numeric_limits<Time>::max();
    int machine = -1;
    for (int j = 0; j < n; ++j) {
      if (done(j)) continue;
      const Operation& op = instance_.routes()[j][next_[j]];
      const Time end = std::max(job_ready_[j], machine_ready_[op.machine]) + op.duration;
      if (end < min_end) {
        min_end = end;
        machine = op.machine;
      }
    }
    for (int j = 0; j < n; ++j) {
      if (done(j)) continue;
      const Operation& op = instance_.routes()[j][next_[j]];
      if (op.machine != machine) continue;
      const Time start = std::max(job_ready_[j], machine_ready_[machine]);
      if (start >= min_end) continue;

      const Time saved_job = job_ready_[j];
      const Time saved_machine = machine_ready_[machine];
      const Time end = start + op.duration;
      job_ready_[j] = machine_ready_[machine] = end;
      sequences_[machine].push_back(instance_.op(j, next_[j]));
      ++next_[j];

      descend(left - 1, std::max(makespan, end));

      --next_[j];
      sequences_[machine].pop_back();
      job_ready_[j] = saved_job;
      machine_ready_[machine] = saved_machine;
    }
  }

  bool done(int j) const {
    return next_[j] == static_cast<int>(instance_.routes()[j].size());
  }

  const Instance& instance_;
  std::vector<int> next_;
  std::vector<Time> job_ready_;
  std::vector<Time> machine_ready_;
  std::vector<std::vector<OpId>> sequences_;
  std::vector<std::vector<OpId>> best_sequences_;
  Time best_ = std::numeric_limits<Time>::max();
  std::int64_t explored_ = 0;
};

}  // namespace

OracleResult brute_force_optimum(const Instance& instance, int limit) {
  if (instance.num_operations() > limit) {
    throw TooLargeError("instance has " +
                        std::to_string(instance.num_operations()) +
                        " operations; the oracle limit is " +
                        std::to_string(limit));
  }
  return ActiveScheduleEnumerator(instance).run();
}

Time reference_evaluate(const Instance& instance, const Solution& solution) {
  const int count = instance.num_operations();
  std::vector<Time> start(count, 0);
  std::vector<int> parent(count, -1);

  // Arcs into each operation: from its job predecessor and machine predecessor.
  std::vector<std::pair<int, int>> arcs;
  for (int m = 0; m < solution.num_machines(); ++m) {
    const auto seq = solution.sequence(m);
    for (std::size_t p = 1; p < seq.size(); ++p) {
      arcs.emplace_back(seq[p - 1].index, seq[p].index);
    }
  }
  for (int i = 0; i < count; ++i) {
    const OpId jp = instance.job_pred(OpId{i});
    if (jp.valid()) arcs.emplace_back(jp.index, i);
  }

  int changed_at = -1;
  for (int round = 0; round <= count; ++round) {
    changed_at = -1;
    for (const auto& [from, to] : arcs) {
      const Time candidate = start[from] + instance.duration(OpId{from});
      if (candidate > start[to]) {
        start[to] = candidate;
        parent[to] = from;
        changed_at = to;
      }
    }
    if (changed_at < 0) break;
  }
  if (changed_at >= 0) {
    // Following parents |ops| times from a still-changing node lands on the
    // cycle that keeps pushing it.
    int o = changed_at;
    for (int i = 0; i < count; ++i) o = parent[o];
    throw CycleError(OpId{o});
  }

  Time makespan = 0;
  for (int i = 0; i < count; ++i) {
    makespan = std::max(makespan, start[i] + instance.duration(OpId{i}));
  }
  return makespan;
}

}  // namespace jobshop
