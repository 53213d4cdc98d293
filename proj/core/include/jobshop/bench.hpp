#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "jobshop/instance.hpp"
#include "jobshop/tabu_search.hpp"

namespace jobshop {

struct RunRecord {
  std::string instance;
  NeighborhoodKind neighborhood = NeighborhoodKind::N8;
  std::uint64_t seed = 0;
  Time best = 0;
  double time_to_best_s = 0.0;
  std::int64_t iterations = 0;
  std::optional<double> re_percent;  // set when a lower bound is known
};

/// 100 * (found - lb) / lb.
double relative_error(Time found, Time lower_bound);

class MissingBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Mre {
  double best = 0.0;     // b-MRE: mean over instances of the best run's RE
  double average = 0.0;  // av-MRE: mean over instances of the mean RE
};

/// Groups `records` by instance and averages the per-instance RE values.
/// Throws std::invalid_argument on an empty record set and
/// MissingBoundError when an instance has no bound entry.
Mre compute_mre(std::span<const RunRecord> records, const KnownBounds& bounds);

/// Row of the summary tables: one (instance, neighbourhood) pair.
struct Summary {
  std::string instance;
  std::string group;
  NeighborhoodKind neighborhood = NeighborhoodKind::N8;
  int runs = 0;
  std::optional<Time> lower_bound;
  Time best = 0;
  double mean = 0.0;        // M_av
  double time_to_best = 0.0;  // T_av
  std::optional<double> best_re;
  std::optional<double> mean_re;
};

Summary summarize(std::span<const RunRecord> records,
                  std::optional<Time> lower_bound, std::string group = "");

struct GroupSummary {
  std::string group;
  NeighborhoodKind neighborhood = NeighborhoodKind::N8;
  int instances = 0;
  std::optional<double> best_mre;
  std::optional<double> mean_mre;
  double time_to_best = 0.0;
};

/// Aggregates summaries sharing (group, neighbourhood), in first-seen order.
std::vector<GroupSummary> group_summaries(std::span<const Summary> rows);

struct ExperimentInstance {
  Instance instance;
  std::string group;
};

struct Experiment {
  std::vector<ExperimentInstance> instances;
  std::vector<NeighborhoodKind> neighborhoods{NeighborhoodKind::N8};
  int runs = 10;
  std::uint64_t base_seed = 0;  // run i uses base_seed + i
  SearchConfig search;          // neighbourhood and seed are overridden
  int jobs = 1;                 // worker threads
};

/// Runs every (instance, neighbourhood, run) triple. Records come back in
/// that nesting order regardless of `jobs`. The target bound of each search
/// is the instance's known LB when present.
std::vector<RunRecord> run_experiment(const Experiment& experiment,
                                      const KnownBounds& bounds);

enum class ReportFormat { Csv, Markdown };

struct ReportOptions {
  ReportFormat format = ReportFormat::Csv;
  /// Wall-clock columns are left empty when false, making reports
  /// reproducible byte for byte.
  bool timing = true;
};

/// Per-run records followed by the summary rows.
void write_run_report(std::ostream& out, std::span<const RunRecord> records,
                      std::span<const Summary> summaries,
                      const ReportOptions& options);

/// Summary rows followed by the per-group aggregation.
void write_compare_report(std::ostream& out, std::span<const Summary> summaries,
                          std::span<const GroupSummary> groups,
                          const ReportOptions& options);

}  // namespace jobshop
