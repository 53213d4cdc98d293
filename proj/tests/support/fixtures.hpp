#pragma once

// Hand-built schedules and random generators shared by the unit and
// acceptance suites. The generators deliberately avoid the library's own
// construction code so they can serve as independent inputs.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "jobshop/instance.hpp"
#include "jobshop/schedule.hpp"

namespace jobshop::testing {

// O<job><pos>, both 1-based, as printed in the Gantt labels.
inline OpId O(const Instance& instance, int job, int pos) {
  return instance.op(job - 1, pos - 1);
}

// The 3x3 example with the optimal selection of length 10:
// M1 (O21, O11, O32), M2 (O31, O12, O23), M3 (O22, O13, O33).
inline Solution example_selection(const Instance& in) {
  return Solution(in, {{O(in, 2, 1), O(in, 1, 1), O(in, 3, 2)},
                       {O(in, 3, 1), O(in, 1, 2), O(in, 2, 3)},
                       {O(in, 2, 2), O(in, 1, 3), O(in, 3, 3)}});
}

struct RandomInstanceSpec {
  int min_jobs = 2, max_jobs = 10;
  int min_machines = 2, max_machines = 10;
  Time max_duration = 20;
};

// Every job visits every machine once, in a random order.
inline Instance random_instance(std::mt19937_64& gen,
                                const RandomInstanceSpec& spec = {}) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };
  const int n = pick(spec.min_jobs, spec.max_jobs);
  const int m = pick(spec.min_machines, spec.max_machines);
  std::vector<std::vector<Operation>> routes(n);
  std::vector<int> order(m);
  for (auto& route : routes) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    for (int machine : order) {
      route.push_back(
          {machine, std::uniform_int_distribution<Time>(1, spec.max_duration)(gen)});
    }
  }
  return Instance("random", m, std::move(routes));
}

// Instance with exactly `ops` operations spread over n jobs; routes may
// skip machines but never repeat one within a job.
inline Instance random_small_instance(std::mt19937_64& gen, int ops,
                                      Time max_duration = 9) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  };
  const int m = pick(2, 4);
  int n = pick(2, std::min(ops, 5));
  while (n * m < ops) ++n;
  std::vector<int> lengths(n, 1);
  for (int left = ops - n; left > 0;) {
    const int j = pick(0, n - 1);
    if (lengths[j] < m) {
      ++lengths[j];
      --left;
    }
  }
  std::vector<std::vector<Operation>> routes(n);
  std::vector<int> order(m);
  for (int j = 0; j < n; ++j) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), gen);
    for (int k = 0; k < lengths[j]; ++k) {
      routes[j].push_back(
          {order[k], std::uniform_int_distribution<Time>(1, max_duration)(gen)});
    }
  }
  return Instance("small", m, std::move(routes));
}

// Feasible selection from a random interleaving of the job routes: each
// machine is sequenced in the order its operations were drawn, which is a
// topological order of the job arcs, so no cycle can arise.
inline Solution random_selection(const Instance& instance, std::mt19937_64& gen) {
  std::vector<int> tickets;
  for (int j = 0; j < instance.num_jobs(); ++j) {
    tickets.insert(tickets.end(), instance.routes()[j].size(), j);
  }
  std::shuffle(tickets.begin(), tickets.end(), gen);
  std::vector<int> next(instance.num_jobs(), 0);
  std::vector<std::vector<OpId>> sequences(instance.num_machines());
  for (int j : tickets) {
    const OpId o = instance.op(j, next[j]++);
    sequences[instance.machine(o)].push_back(o);
  }
  return Solution(instance, std::move(sequences));
}

// Longest-path heads by plain recursion with memoisation; the selection
// must be acyclic.
class NaiveTimes {
 public:
  NaiveTimes(const Instance& instance, const Solution& solution)
      : instance_(instance),
        solution_(solution),
        head_(instance.num_operations(), -1),
        tail_(instance.num_operations(), -1) {}

  Time head(OpId o) {
    if (head_[o.index] >= 0) return head_[o.index];
    Time h = 0;
    for (OpId p : {instance_.job_pred(o), solution_.machine_pred(o)}) {
      if (p.valid()) h = std::max(h, head(p) + instance_.duration(p));
    }
    return head_[o.index] = h;
  }

  Time tail(OpId o) {
    if (tail_[o.index] >= 0) return tail_[o.index];
    Time t = 0;
    for (OpId s : {instance_.job_succ(o), solution_.machine_succ(o)}) {
      if (s.valid()) t = std::max(t, tail(s));
    }
    return tail_[o.index] = t + instance_.duration(o);
  }

 private:
  const Instance& instance_;
  const Solution& solution_;
  std::vector<Time> head_;
  std::vector<Time> tail_;
};

}  // namespace jobshop::testing
