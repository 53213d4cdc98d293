#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jobshop/move_eval.hpp"
#include "jobshop/neighborhood.hpp"
#include "jobshop/rng.hpp"

namespace jobshop {

/// Randomised Giffler-Thompson construction: repeatedly take the machine of
/// the earliest-completing schedulable operation and schedule a uniformly
/// random member of its conflict set. Always yields an active schedule.
Solution initial_solution(const Instance& instance, Rng& rng);

struct TenureRange {
  int min = 0;
  int max = 0;
};

/// L = 10 + floor(n / m).
int tenure_base(int num_jobs, int num_machines);
/// [L, floor(1.5 L)].
TenureRange tenure_range(int num_jobs, int num_machines);

/// Forbids re-creating recently left machine-sequence segments.
///
/// Each accepted move records the segment it overwrote (positions pos(u)
/// through pos(v) on its machine, before the move). A candidate move is tabu
/// when the machine sequence it would produce holds an unexpired record's
/// segment at that record's positions, whatever span the move itself covers.
class TabuList {
 public:
  struct Entry {
    int machine = 0;
    int first = 0;
    std::vector<OpId> segment;
    std::int64_t expires_at = 0;
  };

  bool is_tabu(const Move& move, const Solution& solution,
               std::int64_t iteration) const;

  /// Call with the solution as it was before `move` was applied.
  void record(const Move& move, const Solution& before, std::int64_t iteration,
              int tenure);
  /// Records `segment` as the content of positions [first, first + size).
  void record_segment(int machine, int first, std::vector<OpId> segment,
                      std::int64_t iteration, int tenure);

  std::size_t active(std::int64_t iteration) const;
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

struct Candidate {
  Move move;
  Time estimate = 0;
  bool tabu = false;
};

/// Index of the lowest-estimate candidate that is not tabu or whose
/// estimate beats `best_makespan`. Ties go to the earliest candidate, or to
/// a random one when `random_ties` is set. If no candidate is admissible a
/// uniformly random index is returned. `candidates` must not be empty.
std::size_t select_move(std::span<const Candidate> candidates,
                        Time best_makespan, Rng& rng, bool random_ties = false);

/// Convenience overload that fills in tabu flags from `tabu_list`.
std::size_t select_move(std::vector<Candidate>& candidates, Time best_makespan,
                        const TabuList& tabu_list, const Solution& solution,
                        std::int64_t iteration, Rng& rng,
                        bool random_ties = false);

struct SearchConfig {
  NeighborhoodKind neighborhood = NeighborhoodKind::N8;
  std::int64_t max_iters = 50'000'000;
  int improve_iter = 200;
  std::uint64_t seed = 0;
  std::optional<double> time_limit_s;
  /// Stop once the best makespan reaches this bound. Defaults to
  /// simple_lower_bound(instance).
  std::optional<Time> target_lb;
  /// Random subset size of the neighbourhood per iteration; unset keeps
  /// every move.
  std::optional<std::size_t> children_cap;
  /// Rank candidates by exact re-evaluation instead of the estimate.
  bool exact_ranking = false;
  bool random_ties = false;
  /// Apply the non-improvement clipping. Unset means "only for N8".
  std::optional<bool> clip;
  NeighborhoodOptions neighborhood_options;
};

enum class StopReason { TargetReached, IterationLimit, TimeLimit, EmptyNeighborhood };

std::string_view to_string(StopReason reason);

struct SearchStats {
  Time initial_makespan = 0;
  Time best_makespan = 0;
  Solution best_solution;
  std::int64_t iterations = 0;
  std::int64_t improving_steps = 0;
  std::int64_t restarts = 0;
  std::int64_t iteration_of_best = 0;
  double wall_time_s = 0.0;
  double time_to_best_s = 0.0;
  StopReason stop_reason = StopReason::IterationLimit;
};

/// Per-iteration snapshot for observers (tests, tracing).
struct IterationEvent {
  std::int64_t iteration = 0;
  Move selected;
  bool selected_tabu = false;
  Time selected_estimate = 0;
  Time selected_makespan = 0;  // exact value after applying `selected`
  Time best_before = 0;
  Time best_after = 0;
  bool restarted = false;
  Move applied;  // differs from `selected` on restarts
  Time incumbent_makespan = 0;
  int stagnation = 0;  // N after this iteration
  std::size_t children = 0;
};

/// Produces the candidate moves of an incumbent. The default one generates
/// the configured neighbourhood and clips it.
using MoveSource = std::function<std::vector<Move>(
    const Instance&, const Solution&, const ScheduleData&)>;

using IterationObserver = std::function<void(const IterationEvent&)>;

/// Tabu search over the configured neighbourhood.
class TabuSearch {
 public:
  TabuSearch(const Instance& instance, SearchConfig config);

  void set_move_source(MoveSource source) { source_ = std::move(source); }
  void set_observer(IterationObserver observer) {
    observer_ = std::move(observer);
  }

  /// Starts from a random initial solution drawn from the seeded stream.
  SearchStats run();
  /// Starts from `start` (the stream is still seeded from config.seed).
  SearchStats run(const Solution& start);

 private:
  SearchStats search(Solution start, Rng& rng);
  std::vector<Move> default_moves(const Solution& solution,
                                  const ScheduleData& data) const;

  const Instance& instance_;
  SearchConfig config_;
  MoveSource source_;
  IterationObserver observer_;
};

/// Thrown when the search's final answer does not re-evaluate to the
/// recorded makespan.
class SearchInvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

SearchStats run(const Instance& instance, const SearchConfig& config);

}  // namespace jobshop
