#pragma once

#include "jobshop/neighborhood.hpp"

namespace jobshop {

/// Returns a copy of `solution` with the move applied. For the span
/// (u, w1..wk, v): Forward gives (w1..wk, v, u), Backward gives
/// (v, u, w1..wk). Throws std::invalid_argument if u and v are not on
/// move.machine in that order.
Solution apply(const Move& move, const Solution& solution);

/// In-place variant used by the search loop.
void apply_in_place(const Move& move, Solution& solution);

struct MoveEstimate {
  Time makespan = 0;
};

/// Estimated makespan after `move`, from the pre-move heads and tails.
///
/// Only the moved span is re-timed: new heads run forward from the span's
/// machine predecessor, new tails run backward from its machine successor,
/// and job neighbours keep their old values. The estimate is the longest
/// path through any span operation.
MoveEstimate estimate(const Move& move, const Instance& instance,
                      const ScheduleData& data, const Solution& solution);

}  // namespace jobshop
