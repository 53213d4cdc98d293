#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jobshop {

using Time = std::int64_t;

/// Flat operation identifier. Operations are numbered job by job in route
/// order, so comparing ids is the same as comparing (job, position) pairs.
struct OpId {
  std::int32_t index = -1;

  constexpr bool valid() const { return index >= 0; }
  constexpr auto operator<=>(const OpId&) const = default;
};

/// Marks the dummy start / finish neighbours of an operation.
inline constexpr OpId kNoOp{};

struct Operation {
  int machine = 0;
  Time duration = 0;

  bool operator==(const Operation&) const = default;
};

/// Thrown by the parsers. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line);

  int line() const { return line_; }

 private:
  int line_;
};

/// A job-shop instance: n jobs, m machines, and one route per job.
///
/// The constructor validates the hard invariants (non-empty routes,
/// machine indices in range, non-negative durations) and throws
/// std::invalid_argument otherwise. Zero durations are legal (ORB07 has
/// one) and reported by warnings(). Per-operation lookups are O(1).
class Instance {
 public:
  Instance(std::string name, int num_machines,
           std::vector<std::vector<Operation>> routes);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  int num_jobs() const { return static_cast<int>(routes_.size()); }
  int num_machines() const { return num_machines_; }
  int num_operations() const { return static_cast<int>(machine_.size()); }

  const std::vector<std::vector<Operation>>& routes() const { return routes_; }

  OpId op(int job, int position) const {
    return OpId{job_offset_[job] + position};
  }
  int job_of(OpId o) const { return job_[o.index]; }
  int position_of(OpId o) const { return o.index - job_offset_[job_[o.index]]; }
  int machine(OpId o) const { return machine_[o.index]; }
  Time duration(OpId o) const { return duration_[o.index]; }

  /// Job predecessor / successor, kNoOp at either end of the route.
  OpId job_pred(OpId o) const {
    return position_of(o) == 0 ? kNoOp : OpId{o.index - 1};
  }
  OpId job_succ(OpId o) const {
    return o.index + 1 == job_offset_[job_[o.index] + 1] ? kNoOp
                                                          : OpId{o.index + 1};
  }

  /// Operations whose route entry names machine `m`, in id order.
  std::vector<OpId> operations_on(int m) const;

  Time total_processing_time() const;

  /// Soft checks: every job visits every machine exactly once and no
  /// operation has zero duration. Returns human-readable warnings.
  std::vector<std::string> warnings() const;

  /// Display label: O<job><pos> with 1-based numbers, e.g. "O31".
  /// Falls back to "O<job>_<pos>" when either number has two digits.
  std::string label(OpId o) const;

  bool operator==(const Instance& other) const {
    return num_machines_ == other.num_machines_ && routes_ == other.routes_;
  }

 private:
  std::string name_;
  int num_machines_;
  std::vector<std::vector<Operation>> routes_;
  std::vector<int> job_offset_;  // size n + 1
  std::vector<int> job_;
  std::vector<int> machine_;
  std::vector<Time> duration_;
};

// Parsing and serialisation -------------------------------------------------

/// OR-Library layout: optional '#' comments, "n m", then one line per job of
/// m "machine duration" pairs with 0-based machines.
Instance parse_orlib(std::string_view text, std::string name = "");

/// Taillard layout: "n m" (descriptor and label lines are skipped), an n x m
/// duration matrix, then an n x m matrix of 1-based machine numbers.
Instance parse_taillard(std::string_view text, std::string name = "");

std::string to_orlib(const Instance& instance);
std::string to_taillard(const Instance& instance);

enum class InstanceFormat { OrLib, Taillard };

/// "orlib" or "taillard" (case-insensitive).
std::optional<InstanceFormat> parse_format(std::string_view name);

/// Reads and parses a file. The instance is named after the file stem.
/// Throws std::runtime_error if the file cannot be read.
Instance load_instance(const std::string& path, InstanceFormat format);

/// Small 3-job, 3-machine example used throughout the tests and docs.
Instance builtin_example();

/// max(longest job, most loaded machine); never exceeds the optimum.
Time simple_lower_bound(const Instance& instance);

// Known bounds ---------------------------------------------------------------

struct Bounds {
  Time lower = 0;
  Time upper = 0;
};

/// Bound table keyed by lower-cased instance name.
class KnownBounds {
 public:
  KnownBounds() = default;

  /// One "name LB UB" entry per line; '#' comments and blank lines skipped.
  static KnownBounds parse(std::string_view text);
  static KnownBounds load(const std::string& path);

  void set(std::string_view name, Bounds bounds);
  std::optional<Bounds> find(std::string_view name) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::string, Bounds> table_;
};

}  // namespace jobshop
