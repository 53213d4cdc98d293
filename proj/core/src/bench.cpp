#include "jobshop/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <map>
#include <thread>

namespace jobshop {

double relative_error(Time found, Time lower_bound) {
  return 100.0 * static_cast<double>(found - lower_bound) /
         static_cast<double>(lower_bound);
}

Mre compute_mre(std::span<const RunRecord> records, const KnownBounds& bounds) {
  if (records.empty()) {
    throw std::invalid_argument("MRE of an empty record set is undefined");
  }
  // Instance -> (best RE, sum of RE, count), in first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::tuple<double, double, int>> per_instance;
  for (const RunRecord& r : records) {
    const auto bound = bounds.find(r.instance);
    if (!bound) throw MissingBoundError("no bound for instance '" + r.instance + "'");
    const double re = relative_error(r.best, bound->lower);
    auto [it, inserted] = per_instance.try_emplace(r.instance, re, 0.0, 0);
    if (inserted) order.push_back(r.instance);
    auto& [best, sum, count] = it->second;
    best = std::min(best, re);
    sum += re;
    ++count;
  }
  Mre mre;
  for (const auto& name : order) {
    const auto& [best, sum, count] = per_instance.at(name);
    mre.best += best;
    mre.average += sum / count;
  }
  mre.best /= static_cast<double>(order.size());
  mre.average /= static_cast<double>(order.size());
  return mre;
}

Summary summarize(std::span<const RunRecord> records,
                  std::optional<Time> lower_bound, std::string group) {
  if (records.empty()) throw std::invalid_argument("no records to summarise");
  Summary s;
  s.instance = records.front().instance;
  s.group = std::move(group);
  s.neighborhood = records.front().neighborhood;
  s.runs = static_cast<int>(records.size());
  s.lower_bound = lower_bound;
  s.best = records.front().best;
  double makespans = 0.0;
  double times = 0.0;
  for (const RunRecord& r : records) {
    s.best = std::min(s.best, r.best);
    makespans += static_cast<double>(r.best);
    times += r.time_to_best_s;
  }
  s.mean = makespans / s.runs;
  s.time_to_best = times / s.runs;
  if (lower_bound) {
    s.best_re = relative_error(s.best, *lower_bound);
    s.mean_re = 100.0 * (s.mean - static_cast<double>(*lower_bound)) /
                static_cast<double>(*lower_bound);
  }
  return s;
}

std::vector<GroupSummary> group_summaries(std::span<const Summary> rows) {
  std::vector<GroupSummary> groups;
  std::vector<int> with_bound;
  std::vector<double> best_sum, mean_sum, time_sum;
  for (const Summary& row : rows) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const GroupSummary& g) {
      return g.group == row.group && g.neighborhood == row.neighborhood;
    });
    std::size_t k;
    if (it == groups.end()) {
      groups.push_back({row.group, row.neighborhood, 0, std::nullopt, std::nullopt, 0.0});
      with_bound.push_back(0);
      best_sum.push_back(0.0);
      mean_sum.push_back(0.0);
      time_sum.push_back(0.0);
      k = groups.size() - 1;
    } else {
      k = static_cast<std::size_t>(it - groups.begin());
    }
    ++groups[k].instances;
    time_sum[k] += row.time_to_best;
    if (row.best_re) {
      ++with_bound[k];
      best_sum[k] += *row.best_re;
      mean_sum[k] += *row.mean_re;
    }
  }
  for (std::size_t k = 0; k < groups.size(); ++k) {
    groups[k].time_to_best = time_sum[k] / groups[k].instances;
    // MRE needs every instance of the group to have a bound.
    if (with_bound[k] == groups[k].instances) {
      groups[k].best_mre = best_sum[k] / with_bound[k];
      groups[k].mean_mre = mean_sum[k] / with_bound[k];
    }
  }
  return groups;
}

std::vector<RunRecord> run_experiment(const Experiment& experiment,
                                      const KnownBounds& bounds) {
  struct Task {
    std::size_t instance;
    NeighborhoodKind kind;
    int run;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < experiment.instances.size(); ++i) {
    for (const NeighborhoodKind kind : experiment.neighborhoods) {
      for (int r = 0; r < experiment.runs; ++r) tasks.push_back({i, kind, r});
    }
  }

  std::vector<RunRecord> records(tasks.size());
  auto execute = [&](const Task& task) {
    const Instance& instance = experiment.instances[task.instance].instance;
    const auto bound = bounds.find(instance.name());
    SearchConfig config = experiment.search;
    config.neighborhood = task.kind;
    config.seed = experiment.base_seed + static_cast<std::uint64_t>(task.run);
    if (bound && !config.target_lb) config.target_lb = bound->lower;
    const SearchStats stats = run(instance, config);

    RunRecord record;
    record.instance = instance.name();
    record.neighborhood = task.kind;
    record.seed = config.seed;
    record.best = stats.best_makespan;
    record.time_to_best_s = stats.time_to_best_s;
    record.iterations = stats.iterations;
    if (bound) record.re_percent = relative_error(stats.best_makespan, bound->lower);
    return record;
  };

  const int workers = std::max(1, std::min<int>(experiment.jobs, tasks.size()));
  if (workers == 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) records[t] = execute(tasks[t]);
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t; !failed && (t = next++) < tasks.size();) {
        try {
          records[t] = execute(tasks[t]);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& thread : pool) thread.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

namespace {

std::string fixed(double value, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string optional_fixed(const std::optional<double>& value, int digits) {
  return value ? fixed(*value, digits) : std::string{};
}

std::string time_cell(double seconds, const ReportOptions& options) {
  return options.timing ? fixed(seconds, 3) : std::string{};
}

void write_row(std::ostream& out, const std::vector<std::string>& cells,
               ReportFormat format) {
  if (format == ReportFormat::Csv) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << "\n";
    return;
  }
  out << "|";
  for (const auto& cell : cells) out << " " << (cell.empty() ? "-" : cell) << " |";
  out << "\n";
}

void write_header(std::ostream& out, const std::vector<std::string>& csv,
                  const std::vector<std::string>& markdown, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_row(out, csv, format);
    return;
  }
  write_row(out, markdown, format);
  out << "|";
  for (std::size_t i = 0; i < markdown.size(); ++i) out << (i ? " ---: |" : " --- |");
  out << "\n";
}

void write_summaries(std::ostream& out, std::span<const Summary> summaries,
                     const ReportOptions& options) {
  write_header(out,
               {"instance", "neighborhood", "runs", "lb", "best", "m_av",
                "t_av_s", "b_re_percent", "av_re_percent"},
               {"Problem", "Neighborhood", "Runs", "LB", "Best", "M_av",
                "T_av(s)", "b-RE", "av-RE"},
               options.format);
  for (const Summary& s : summaries) {
    write_row(out,
              {s.instance, std::string(to_string(s.neighborhood)),
               std::to_string(s.runs),
               s.lower_bound ? std::to_string(*s.lower_bound) : "",
               std::to_string(s.best), fixed(s.mean, 2),
               time_cell(s.time_to_best, options), optional_fixed(s.best_re, 4),
               optional_fixed(s.mean_re, 4)},
              options.format);
  }
}

}  // namespace

void write_run_report(std::ostream& out, std::span<const RunRecord> records,
                      std::span<const Summary> summaries,
                      const ReportOptions& options) {
  write_header(out,
               {"instance", "neighborhood", "seed", "best", "time_to_best_s",
                "iterations", "re_percent"},
               {"Problem", "Neighborhood", "Seed", "Best", "T_best(s)",
                "Iterations", "RE"},
               options.format);
  for (const RunRecord& r : records) {
    write_row(out,
              {r.instance, std::string(to_string(r.neighborhood)),
               std::to_string(r.seed), std::to_string(r.best),
               time_cell(r.time_to_best_s, options),
               std::to_string(r.iterations), optional_fixed(r.re_percent, 4)},
              options.format);
  }
  out << "\n";
  write_summaries(out, summaries, options);
}

void write_compare_report(std::ostream& out, std::span<const Summary> summaries,
                          std::span<const GroupSummary> groups,
                          const ReportOptions& options) {
  write_summaries(out, summaries, options);
  out << "\n";
  write_header(out,
               {"group", "neighborhood", "instances", "b_mre", "av_mre", "t_av_s"},
               {"Group", "Neighborhood", "Instances", "b-MRE", "av-MRE", "T_av(s)"},
               options.format);
  for (const GroupSummary& g : groups) {
    write_row(out,
              {g.group, std::string(to_string(g.neighborhood)),
               std::to_string(g.instances), optional_fixed(g.best_mre, 2),
               optional_fixed(g.mean_mre, 2), time_cell(g.time_to_best, options)},
              options.format);
  }
}

}  // namespace jobshop
