#include "jobshop/neighborhood.hpp"

#include <algorithm>
#include <cstdint>
#include <tuple>

namespace jobshop {

std::string_view to_string(NeighborhoodKind kind) {
  switch (kind) {
    case NeighborhoodKind::N5: return "n5";
    case NeighborhoodKind::N6: return "n6";
    case NeighborhoodKind::N7: return "n7";
    case NeighborhoodKind::N8: return "n8";
  }
  return "?";
}

std::optional<NeighborhoodKind> parse_neighborhood(std::string_view name) {
  if (name == "n5" || name == "N5") return NeighborhoodKind::N5;
  if (name == "n6" || name == "N6") return NeighborhoodKind::N6;
  if (name == "n7" || name == "N7") return NeighborhoodKind::N7;
  if (name == "n8" || name == "N8") return NeighborhoodKind::N8;
  return std::nullopt;
}

bool prop1_holds(OpId u, OpId v, const Instance& instance,
                 const ScheduleData& data) {
  const OpId js = instance.job_succ(u);
  const Time rhs = js.valid() ? data.tail[js.index] - instance.duration(js) : 0;
  return data.tail[v.index] >= rhs;
}

bool prop2_holds(OpId u, OpId v, const Instance& instance,
                 const ScheduleData& data) {
  return data.head[u.index] + instance.duration(u) >=
         data.head_of(instance.job_pred(v));
}

namespace {

// Depth-first search over job and machine arcs. Only operations whose head
// does not exceed the target's can lie on a path to it.
bool reaches(OpId from, OpId to, const Instance& instance,
             const Solution& solution, const ScheduleData& data) {
  thread_local std::vector<std::uint32_t> seen;
  thread_local std::uint32_t stamp = 0;
  thread_local std::vector<OpId> stack;
  if (seen.size() < static_cast<std::size_t>(instance.num_operations())) {
    seen.assign(instance.num_operations(), 0);
  }
  if (++stamp == 0) {
    std::fill(seen.begin(), seen.end(), 0);
    stamp = 1;
  }
  const Time limit = data.head[to.index];
  stack.assign(1, from);
  seen[from.index] = stamp;
  while (!stack.empty()) {
    const OpId o = stack.back();
    stack.pop_back();
    if (o == to) return true;
    for (OpId next : {instance.job_succ(o), solution.machine_succ(o)}) {
      if (next.valid() && seen[next.index] != stamp &&
          data.head[next.index] <= limit) {
        seen[next.index] = stamp;
        stack.push_back(next);
      }
    }
  }
  return false;
}

}  // namespace

bool move_is_feasible(const Move& move, const Solution& solution,
                      const Instance& instance, const ScheduleData& data) {
  const OpId u = move.u;
  const OpId v = move.v;
  // A strict inequality rules out the path that would close a cycle. On
  // equality the path may exist (zero durations, or a job revisiting the
  // machine), so it is searched for.
  auto forward_ok = [&] {
    const OpId js = instance.job_succ(u);
    if (!js.valid()) return true;
    const Time rhs = data.tail[js.index] - instance.duration(js);
    const Time lhs = data.tail[v.index];
    if (lhs != rhs) return lhs > rhs;
    return !reaches(js, v, instance, solution, data);
  };
  auto backward_ok = [&] {
    const OpId jp = instance.job_pred(v);
    if (!jp.valid()) return true;
    const Time lhs = data.head[u.index] + instance.duration(u);
    const Time rhs = data.head[jp.index];
    if (lhs != rhs) return lhs > rhs;
    return !reaches(u, jp, instance, solution, data);
  };
  if (solution.position(u) + 1 == solution.position(v)) {
    return forward_ok() || backward_ok();
  }
  return move.kind == MoveKind::Forward ? forward_ok() : backward_ok();
}

namespace {

class MoveCollector {
 public:
  MoveCollector(const Instance& instance, const Solution& solution,
                const ScheduleData& data)
      : instance_(instance), solution_(solution), data_(data) {}

  void add(MoveKind kind, OpId u, OpId v) {
    if (u == v) return;
    if (solution_.position(u) + 1 == solution_.position(v)) {
      kind = MoveKind::Forward;
    }
    const Move move{kind, solution_.machine_of(u), u, v};
    if (move_is_feasible(move, solution_, instance_, data_)) {
      moves_.push_back(move);
    }
  }

  std::vector<Move> finish() && {
    auto key = [this](const Move& m) {
      return std::tuple(m.machine, solution_.position(m.u),
                        solution_.position(m.v), static_cast<int>(m.kind));
    };
    std::sort(moves_.begin(), moves_.end(),
              [&](const Move& a, const Move& b) { return key(a) < key(b); });
    moves_.erase(std::unique(moves_.begin(), moves_.end()), moves_.end());
    return std::move(moves_);
  }

 private:
  const Instance& instance_;
  const Solution& solution_;
  const ScheduleData& data_;
  std::vector<Move> moves_;
};

void add_block_moves(NeighborhoodKind kind, const CriticalBlock& block,
                     const Solution& solution,
                     const NeighborhoodOptions& options,
                     MoveCollector& out) {
  const auto& b = block.ops;
  const std::size_t size = b.size();
  const OpId first = b.front();
  const OpId last = b.back();

  if (size >= 2) {
    out.add(MoveKind::Backward, b[0], b[1]);
    out.add(MoveKind::Forward, b[size - 2], b[size - 1]);
  }
  if (kind >= NeighborhoodKind::N6) {
    for (std::size_t i = 1; i + 1 < size; ++i) {
      out.add(MoveKind::Backward, first, b[i]);
      out.add(MoveKind::Forward, b[i], last);
    }
  }
  if (kind >= NeighborhoodKind::N7) {
    for (std::size_t i = 1; i + 1 < size; ++i) {
      out.add(MoveKind::Forward, first, b[i]);
      out.add(MoveKind::Backward, b[i], last);
    }
  }
  if (kind == NeighborhoodKind::N8) {
    const auto seq = solution.sequence(block.machine);
    const int begin = solution.position(first);
    const int end = solution.position(last);
    const int window = options.outside_window;
    const int after_limit =
        window > 0 ? std::min<int>(seq.size() - 1, end + window) : seq.size() - 1;
    const int before_limit = window > 0 ? std::max(0, begin - window) : 0;
    for (const OpId u : b) {
      for (int p = end + 1; p <= after_limit; ++p) {
        out.add(MoveKind::Forward, u, seq[p]);
      }
    }
    for (const OpId v : b) {
      for (int p = begin - 1; p >= before_limit; --p) {
        out.add(MoveKind::Backward, seq[p], v);
      }
    }
  }
}

}  // namespace

std::vector<Move> generate(NeighborhoodKind kind, const Instance& instance,
                           const Solution& solution, const ScheduleData& data,
                           std::span<const CriticalBlock> blocks,
                           const NeighborhoodOptions& options) {
  MoveCollector collector(instance, solution, data);
  for (const CriticalBlock& block : blocks) {
    add_block_moves(kind, block, solution, options, collector);
  }
  return std::move(collector).finish();
}

std::vector<Move> generate(NeighborhoodKind kind, const Instance& instance,
                           const Solution& solution, const ScheduleData& data,
                           const NeighborhoodOptions& options) {
  if (options.all_critical_paths) {
    const auto blocks = all_critical_blocks(instance, solution, data);
    return generate(kind, instance, solution, data, blocks, options);
  }
  const auto path = critical_path(instance, solution, data);
  const auto blocks = critical_blocks(path, solution);
  return generate(kind, instance, solution, data, blocks, options);
}

namespace {

bool is_inner(OpId o, const CriticalBlock& block, const Solution& solution) {
  if (block.ops.size() < 3 || solution.machine_of(o) != block.machine) {
    return false;
  }
  const int p = solution.position(o);
  return p > solution.position(block.ops.front()) &&
         p < solution.position(block.ops.back());
}

}  // namespace

bool is_clipped(const Move& move, std::span<const CriticalBlock> blocks,
                const Solution& solution) {
  if (blocks.empty()) return false;
  const CriticalBlock& first = blocks.front();
  const CriticalBlock& last = blocks.back();
  // First block: first op after an inner op, or an inner op before the first.
  if (move.u == first.ops.front() && is_inner(move.v, first, solution)) {
    return true;
  }
  // Last block: last op before an inner op, or an inner op after the last.
  if (move.v == last.ops.back() && is_inner(move.u, last, solution)) {
    return true;
  }
  return false;
}

std::vector<Move> clip(std::span<const Move> moves,
                       std::span<const CriticalBlock> blocks,
                       const Solution& solution) {
  std::vector<Move> kept;
  kept.reserve(moves.size());
  for (const Move& move : moves) {
    if (!is_clipped(move, blocks, solution)) kept.push_back(move);
  }
  return kept;
}

}  // namespace jobshop
