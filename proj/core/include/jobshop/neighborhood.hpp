#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "jobshop/schedule.hpp"

namespace jobshop {

enum class MoveKind {
  Forward,   // insert u right after v
  Backward,  // insert v right before u
};

/// An insertion on one machine. u precedes v in the current sequence.
///
/// Swaps of machine-adjacent operations are stored as Forward: both kinds
/// yield the same sequence in that case, so one representative is kept.
struct Move {
  MoveKind kind = MoveKind::Forward;
  int machine = 0;
  OpId u;
  OpId v;

  bool operator==(const Move&) const = default;
};

enum class NeighborhoodKind { N5, N6, N7, N8 };

std::string_view to_string(NeighborhoodKind kind);
std::optional<NeighborhoodKind> parse_neighborhood(std::string_view name);

struct NeighborhoodOptions {
  /// Build blocks from every critical operation instead of one path.
  bool all_critical_paths = false;
  /// Largest machine-position distance for insertions outside a block;
  /// 0 means unlimited.
  int outside_window = 0;
};

/// L(v, end) >= L(JS[u], end) - p(JS[u]): moving u right after v keeps the
/// selection acyclic.
bool prop1_holds(OpId u, OpId v, const Instance& instance,
                 const ScheduleData& data);

/// L(0, u) + p(u) >= L(0, JP[v]): moving v right before u keeps the
/// selection acyclic.
bool prop2_holds(OpId u, OpId v, const Instance& instance,
                 const ScheduleData& data);

/// Gate applied to every generated move: the move's feasibility condition
/// must hold, and when it holds with equality the cycle-closing path is
/// ruled out by search. Adjacent swaps pass if either side passes, since both kinds
/// describe the same resulting sequence.
bool move_is_feasible(const Move& move, const Solution& solution,
                      const Instance& instance, const ScheduleData& data);

/// Moves of `kind` built from `blocks`, gated, deduplicated and sorted by
/// (machine, pos(u), pos(v), kind).
std::vector<Move> generate(NeighborhoodKind kind, const Instance& instance,
                           const Solution& solution, const ScheduleData& data,
                           std::span<const CriticalBlock> blocks,
                           const NeighborhoodOptions& options = {});

/// Same, from the canonical critical path (or all critical operations when
/// options.all_critical_paths is set).
std::vector<Move> generate(NeighborhoodKind kind, const Instance& instance,
                           const Solution& solution, const ScheduleData& data,
                           const NeighborhoodOptions& options = {});

/// Drops the moves that cannot reduce the makespan: within the first block,
/// the first operation moved after an inner one and an inner one moved
/// before the first; within the last block, the mirror images. `blocks`
/// must be in path order.
std::vector<Move> clip(std::span<const Move> moves,
                       std::span<const CriticalBlock> blocks,
                       const Solution& solution);

/// True if `clip` would remove `move`.
bool is_clipped(const Move& move, std::span<const CriticalBlock> blocks,
                const Solution& solution);

}  // namespace jobshop
