#include "jobshop/move_eval.hpp"

#include <algorithm>
#include <stdexcept>

namespace jobshop {

namespace {

struct Span {
  int first;  // position of u
  int last;   // position of v
};

Span locate(const Move& move, const Solution& solution) {
  if (!move.u.valid() || !move.v.valid() ||
      solution.machine_of(move.u) != move.machine ||
      solution.machine_of(move.v) != move.machine) {
    throw std::invalid_argument("move endpoints are not on the move's machine");
  }
  const Span span{solution.position(move.u), solution.position(move.v)};
  if (span.first >= span.last) {
    throw std::invalid_argument("move requires u strictly before v");
  }
  return span;
}

// i-th operation of the span after the move.
OpId moved_at(const Move& move, std::span<const OpId> seq, Span span, int i) {
  const int len = span.last - span.first + 1;
  if (move.kind == MoveKind::Forward) {
    return i + 1 == len ? seq[span.first] : seq[span.first + 1 + i];
  }
  return i == 0 ? seq[span.last] : seq[span.first + i - 1];
}

}  // namespace

void apply_in_place(const Move& move, Solution& solution) {
  const Span span = locate(move, solution);
  const auto seq = solution.sequence(move.machine);
  std::vector<OpId> moved(seq.begin() + span.first, seq.begin() + span.last + 1);
  if (move.kind == MoveKind::Forward) {
    std::rotate(moved.begin(), moved.begin() + 1, moved.end());
  } else {
    std::rotate(moved.begin(), moved.end() - 1, moved.end());
  }
  solution.rewrite_segment(move.machine, span.first, moved);
}

Solution apply(const Move& move, const Solution& solution) {
  Solution out = solution;
  apply_in_place(move, out);
  return out;
}

MoveEstimate estimate(const Move& move, const Instance& instance,
                      const ScheduleData& data, const Solution& solution) {
  const Span span = locate(move, solution);
  const auto seq = solution.sequence(move.machine);
  const int len = span.last - span.first + 1;

  thread_local std::vector<Time> heads;
  heads.resize(len);

  auto job_ready = [&](OpId o) {
    const OpId jp = instance.job_pred(o);
    return jp.valid() ? data.head[jp.index] + instance.duration(jp) : Time{0};
  };

  Time machine_ready = 0;
  if (span.first > 0) {
    const OpId before = seq[span.first - 1];
    machine_ready = data.head[before.index] + instance.duration(before);
  }
  for (int i = 0; i < len; ++i) {
    const OpId o = moved_at(move, seq, span, i);
    heads[i] = std::max(job_ready(o), machine_ready);
    machine_ready = heads[i] + instance.duration(o);
  }

  Time next_tail = 0;
  if (span.last + 1 < static_cast<int>(seq.size())) {
    next_tail = data.tail[seq[span.last + 1].index];
  }
  Time best = 0;
  for (int i = len - 1; i >= 0; --i) {
    const OpId o = moved_at(move, seq, span, i);
    const Time tail =
        instance.duration(o) +
        std::max(data.tail_of(instance.job_succ(o)), next_tail);
    best = std::max(best, heads[i] + tail);
    next_tail = tail;
  }
  return {best};
}

}  // namespace jobshop
