#include "jobshop/tabu_search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

namespace jobshop {

Solution initial_solution(const Instance& instance, Rng& rng) {
  const int n = instance.num_jobs();
  std::vector<int> next(n, 0);
  std::vector<Time> job_ready(n, 0);
  std::vector<Time> machine_ready(instance.num_machines(), 0);
  std::vector<std::vector<OpId>> sequences(instance.num_machines());
  std::vector<int> conflict;

  for (int left = instance.num_operations(); left > 0; --left) {
    int best_job = -1;
    Time best_end = std::numeric_limits<Time>::max();
    for (int j = 0; j < n; ++j) {
      if (next[j] == static_cast<int>(instance.routes()[j].size())) continue;
      const Operation& op = instance.routes()[j][next[j]];
      const Time end =
          std::max(job_ready[j], machine_ready[op.machine]) + op.duration;
      if (end < best_end) {
        best_end = end;
        best_job = j;
      }
    }
    const int machine = instance.routes()[best_job][next[best_job]].machine;

    conflict.clear();
    for (int j = 0; j < n; ++j) {
      if (next[j] == static_cast<int>(instance.routes()[j].size())) continue;
      const Operation& op = instance.routes()[j][next[j]];
      if (op.machine == machine &&
          (j == best_job ||
           std::max(job_ready[j], machine_ready[machine]) < best_end)) {
        conflict.push_back(j);
      }
    }
    const int j = conflict[rng.below(conflict.size())];
    const Operation& op = instance.routes()[j][next[j]];
    const Time start = std::max(job_ready[j], machine_ready[machine]);
    job_ready[j] = machine_ready[machine] = start + op.duration;
    sequences[machine].push_back(instance.op(j, next[j]));
    ++next[j];
  }
  return Solution(instance, std::move(sequences));
}

int tenure_base(int num_jobs, int num_machines) {
  return 10 + num_jobs / num_machines;
}

TenureRange tenure_range(int num_jobs, int num_machines) {
  const int base = tenure_base(num_jobs, num_machines);
  return {base, base * 3 / 2};
}

namespace {

// Operation at `position` of the move's machine once `move` is applied.
OpId after_move(const Move& move, std::span<const OpId> seq, int first,
                int last, int position) {
  if (position < first || position > last) return seq[position];
  if (move.kind == MoveKind::Forward) {
    return position == last ? seq[first] : seq[position + 1];
  }
  return position == first ? seq[last] : seq[position - 1];
}

// Whether applying `move` leaves `entry`'s segment at its positions. Only
// records overlapping the move's span can be recreated by it.
bool produces(const Move& move, const Solution& solution,
              const TabuList::Entry& entry) {
  if (entry.machine != move.machine) return false;
  const int first = solution.position(move.u);
  const int last = solution.position(move.v);
  const int entry_last = entry.first + static_cast<int>(entry.segment.size()) - 1;
  if (entry_last < first || entry.first > last) return false;
  const auto seq = solution.sequence(move.machine);
  if (entry_last >= static_cast<int>(seq.size())) return false;
  for (std::size_t i = 0; i < entry.segment.size(); ++i) {
    const int position = entry.first + static_cast<int>(i);
    if (after_move(move, seq, first, last, position) != entry.segment[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace

bool TabuList::is_tabu(const Move& move, const Solution& solution,
                       std::int64_t iteration) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return iteration <= e.expires_at && produces(move, solution, e);
  });
}

void TabuList::record(const Move& move, const Solution& before,
                      std::int64_t iteration, int tenure) {
  const int first = before.position(move.u);
  const int last = before.position(move.v);
  const auto seq = before.sequence(move.machine);
  record_segment(move.machine, first,
                 std::vector<OpId>(seq.begin() + first, seq.begin() + last + 1),
                 iteration, tenure);
}

void TabuList::record_segment(int machine, int first,
                              std::vector<OpId> segment,
                              std::int64_t iteration, int tenure) {
  std::erase_if(entries_,
                [&](const Entry& e) { return iteration > e.expires_at; });
  entries_.push_back({machine, first, std::move(segment), iteration + tenure});
}

std::size_t TabuList::active(std::int64_t iteration) const {
  return std::count_if(entries_.begin(), entries_.end(), [&](const Entry& e) {
    return iteration <= e.expires_at;
  });
}

std::size_t select_move(std::span<const Candidate> candidates,
                        Time best_makespan, Rng& rng, bool random_ties) {
  std::size_t chosen = candidates.size();
  std::uint64_t ties = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (c.tabu && c.estimate >= best_makespan) continue;
    if (chosen == candidates.size() || c.estimate < candidates[chosen].estimate) {
      chosen = i;
      ties = 1;
    } else if (random_ties && c.estimate == candidates[chosen].estimate) {
      if (rng.below(++ties) == 0) chosen = i;
    }
  }
  if (chosen == candidates.size()) chosen = rng.below(candidates.size());
  return chosen;
}

std::size_t select_move(std::vector<Candidate>& candidates, Time best_makespan,
                        const TabuList& tabu_list, const Solution& solution,
                        std::int64_t iteration, Rng& rng, bool random_ties) {
  for (Candidate& c : candidates) {
    c.tabu = tabu_list.is_tabu(c.move, solution, iteration);
  }
  return select_move(std::span<const Candidate>(candidates), best_makespan, rng,
                     random_ties);
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::TargetReached: return "target";
    case StopReason::IterationLimit: return "iterations";
    case StopReason::TimeLimit: return "time";
    case StopReason::EmptyNeighborhood: return "empty-neighborhood";
  }
  return "?";
}

TabuSearch::TabuSearch(const Instance& instance, SearchConfig config)
    : instance_(instance), config_(std::move(config)) {
  if (config_.max_iters < 0) {
    throw std::invalid_argument("max_iters must not be negative");
  }
  if (config_.improve_iter < 1) {
    throw std::invalid_argument("improve_iter must be at least 1");
  }
}

std::vector<Move> TabuSearch::default_moves(const Solution& solution,
                                            const ScheduleData& data) const {
  const auto& options = config_.neighborhood_options;
  const auto path = critical_path(instance_, solution, data);
  const auto blocks = critical_blocks(path, solution);
  std::vector<Move> moves =
      options.all_critical_paths
          ? generate(config_.neighborhood, instance_, solution, data,
                     all_critical_blocks(instance_, solution, data), options)
          : generate(config_.neighborhood, instance_, solution, data, blocks,
                     options);
  const bool clipping =
      config_.clip.value_or(config_.neighborhood == NeighborhoodKind::N8);
  // Clipping always refers to the canonical path's first and last block.
  return clipping ? clip(moves, blocks, solution) : moves;
}

SearchStats TabuSearch::run() {
  Rng rng(config_.seed);
  Solution start = initial_solution(instance_, rng);
  return search(std::move(start), rng);
}

SearchStats TabuSearch::run(const Solution& start) {
  Rng rng(config_.seed);
  return search(start, rng);
}

SearchStats TabuSearch::search(Solution current, Rng& rng) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - started).count();
  };

  ScheduleData data = evaluate(instance_, current);
  SearchStats stats;
  stats.initial_makespan = data.makespan;
  stats.best_makespan = data.makespan;
  stats.best_solution = current;

  const Time target = config_.target_lb.value_or(simple_lower_bound(instance_));
  const TenureRange tenure =
      tenure_range(instance_.num_jobs(), instance_.num_machines());
  TabuList tabu;
  int stagnation = 0;
  std::vector<Candidate> candidates;
  std::vector<std::size_t> picks;

  auto improve_best = [&](const Solution& s, Time makespan,
                          std::int64_t iteration) {
    stats.best_makespan = makespan;
    stats.best_solution = s;
    stats.iteration_of_best = iteration;
    stats.time_to_best_s = elapsed();
  };

  std::int64_t iter = 0;
  for (;; ++iter) {
    if (stats.best_makespan <= target) {
      stats.stop_reason = StopReason::TargetReached;
      break;
    }
    if (iter >= config_.max_iters) {
      stats.stop_reason = StopReason::IterationLimit;
      break;
    }
    if (config_.time_limit_s && elapsed() >= *config_.time_limit_s) {
      stats.stop_reason = StopReason::TimeLimit;
      break;
    }

    std::vector<Move> moves = source_ ? source_(instance_, current, data)
                                      : default_moves(current, data);
    if (moves.empty()) {
      stats.stop_reason = StopReason::EmptyNeighborhood;
      break;
    }
    if (config_.children_cap && moves.size() > *config_.children_cap) {
      picks.resize(moves.size());
      for (std::size_t i = 0; i < picks.size(); ++i) picks[i] = i;
      const std::size_t cap = *config_.children_cap;
      for (std::size_t i = 0; i < cap; ++i) {
        std::swap(picks[i], picks[i + rng.below(picks.size() - i)]);
      }
      picks.resize(cap);
      std::sort(picks.begin(), picks.end());
      std::vector<Move> kept;
      kept.reserve(cap);
      for (std::size_t i : picks) kept.push_back(moves[i]);
      moves = std::move(kept);
    }

    candidates.clear();
    for (const Move& m : moves) {
      Time value;
      if (config_.exact_ranking) {
        value = evaluate(instance_, apply(m, current)).makespan;
      } else {
        value = estimate(m, instance_, data, current).makespan;
      }
      candidates.push_back({m, value, tabu.is_tabu(m, current, iter)});
    }
    const std::size_t index =
        select_move(std::span<const Candidate>(candidates), stats.best_makespan,
                    rng, config_.random_ties);
    const Candidate selected = candidates[index];

    const int first = current.position(selected.move.u);
    const int last = current.position(selected.move.v);
    const auto seq = current.sequence(selected.move.machine);
    const std::vector<OpId> saved(seq.begin() + first, seq.begin() + last + 1);

    apply_in_place(selected.move, current);
    data = evaluate(instance_, current);

    IterationEvent event;
    event.iteration = iter;
    event.selected = selected.move;
    event.selected_tabu = selected.tabu;
    event.selected_estimate = selected.estimate;
    event.selected_makespan = data.makespan;
    event.best_before = stats.best_makespan;
    event.children = moves.size();

    if (data.makespan < stats.best_makespan) {
      improve_best(current, data.makespan, iter + 1);
      ++stats.improving_steps;
      stagnation = 0;
    } else {
      ++stagnation;
    }

    Move applied = selected.move;
    if (stagnation == config_.improve_iter) {
      // Step back to the incumbent and move to a random child instead.
      current.rewrite_segment(selected.move.machine, first, saved);
      applied = moves[rng.below(moves.size())];
      tabu.record(applied, current, iter,
                  static_cast<int>(rng.between(tenure.min, tenure.max)));
      apply_in_place(applied, current);
      data = evaluate(instance_, current);
      if (data.makespan < stats.best_makespan) {
        improve_best(current, data.makespan, iter + 1);
      }
      stagnation = 0;
      ++stats.restarts;
      event.restarted = true;
    } else {
      tabu.record_segment(selected.move.machine, first, saved, iter,
                          static_cast<int>(rng.between(tenure.min, tenure.max)));
    }

    event.applied = applied;
    event.best_after = stats.best_makespan;
    event.incumbent_makespan = data.makespan;
    event.stagnation = stagnation;
    if (observer_) observer_(event);
  }

  stats.iterations = iter;
  stats.wall_time_s = elapsed();
  if (evaluate(instance_, stats.best_solution).makespan != stats.best_makespan) {
    throw SearchInvariantError("best solution does not re-evaluate to " +
                               std::to_string(stats.best_makespan));
  }
  return stats;
}

SearchStats run(const Instance& instance, const SearchConfig& config) {
  return TabuSearch(instance, config).run();
}

}  // namespace jobshop
