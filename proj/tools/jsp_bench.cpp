// jsp_bench: multi-seed tabu search runs, neighbourhood comparisons and the
// brute-force oracle, on OR-Library / Taillard instance files.
//
// Exit codes: 0 success, 2 input error, 3 internal invariant failure.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "jobshop/bench.hpp"
#include "jobshop/oracle.hpp"

namespace {

using namespace jobshop;

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchFlags {
  std::int64_t max_iters = 50'000'000;
  double time_limit = 0.0;
  int improve_iter = 200;
  std::size_t children_cap = 0;
  long long target = -1;
  bool exact_ranking = false;
  bool random_ties = false;
  bool all_critical_paths = false;
  int outside_window = 0;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--max-iters", max_iters, "Iteration budget per run")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--time-limit", time_limit,
                   "Wall-clock budget per run in seconds (0 = none)")
        ->check(CLI::NonNegativeNumber);
    cmd.add_option("--improve-iter", improve_iter,
                   "Non-improving iterations before a random step")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--children-cap", children_cap,
                   "Random subset of moves evaluated per iteration (0 = all)");
    cmd.add_option("--target", target,
                   "Stop at this makespan (default: bounds LB, else simple LB)");
    cmd.add_flag("--exact-ranking", exact_ranking,
                 "Rank moves by exact evaluation instead of the estimate");
    cmd.add_flag("--random-ties", random_ties, "Break equal estimates randomly");
    cmd.add_flag("--all-critical-paths", all_critical_paths,
                 "Build blocks from every critical operation");
    cmd.add_option("--outside-window", outside_window,
                   "Cap on insertion distance outside a block (0 = none)")
        ->check(CLI::NonNegativeNumber);
  }

  SearchConfig config() const {
    SearchConfig c;
    c.max_iters = max_iters;
    c.improve_iter = improve_iter;
    if (time_limit > 0) c.time_limit_s = time_limit;
    if (children_cap > 0) c.children_cap = children_cap;
    if (target >= 0) c.target_lb = target;
    c.exact_ranking = exact_ranking;
    c.random_ties = random_ties;
    c.neighborhood_options.all_critical_paths = all_critical_paths;
    c.neighborhood_options.outside_window = outside_window;
    return c;
  }
};

struct ReportFlags {
  std::string out;
  std::string emit = "csv";
  bool no_timing = false;
  int jobs = 1;
  std::string bounds;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--bounds", bounds, "Bounds file with 'name LB UB' lines");
    cmd.add_option("--out", out, "Report path (default: stdout)");
    cmd.add_option("--emit", emit, "Report format")
        ->check(CLI::IsMember({"csv", "md"}));
    cmd.add_flag("--no-timing", no_timing,
                 "Leave wall-clock columns empty (reproducible reports)");
    cmd.add_option("--jobs", jobs, "Parallel runs")->check(CLI::PositiveNumber);
  }

  ReportOptions options() const {
    return {emit == "md" ? ReportFormat::Markdown : ReportFormat::Csv,
            !no_timing};
  }

  KnownBounds load_bounds() const {
    return bounds.empty() ? KnownBounds{} : KnownBounds::load(bounds);
  }

  void emit_report(const std::string& text) const {
    if (out.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream file(out, std::ios::binary);
    if (!file) throw InputError("cannot write '" + out + "'");
    file << text;
  }
};

InstanceFormat format_or_throw(const std::string& name) {
  auto format = parse_format(name);
  if (!format) throw InputError("unknown format '" + name + "'");
  return *format;
}

Instance load(const std::string& path, const std::string& format) {
  const InstanceFormat parsed = format_or_throw(format);
  Instance instance =
      path == "builtin" ? builtin_example() : load_instance(path, parsed);
  for (const auto& warning : instance.warnings()) {
    std::cerr << "warning: " << instance.name() << ": " << warning << "\n";
  }
  return instance;
}

std::vector<Summary> summarize_all(const Experiment& experiment,
                                   const std::vector<RunRecord>& records,
                                   const KnownBounds& bounds) {
  std::vector<Summary> rows;
  const auto runs = static_cast<std::size_t>(experiment.runs);
  for (std::size_t start = 0; start < records.size(); start += runs) {
    const auto& entry = experiment.instances[start / runs /
                                             experiment.neighborhoods.size()];
    std::optional<Time> lb;
    if (auto b = bounds.find(entry.instance.name())) lb = b->lower;
    rows.push_back(summarize(std::span(records).subspan(start, runs), lb,
                             entry.group));
  }
  return rows;
}

int cmd_run(const std::string& path, const std::string& format,
            const std::string& neighborhood, int runs, std::uint64_t seed,
            const SearchFlags& search, const ReportFlags& report,
            const std::string& gantt_path) {
  Experiment experiment;
  experiment.instances.push_back({load(path, format), ""});
  auto kind = parse_neighborhood(neighborhood);
  if (!kind) throw InputError("unknown neighborhood '" + neighborhood + "'");
  experiment.neighborhoods = {*kind};
  experiment.runs = runs;
  experiment.base_seed = seed;
  experiment.search = search.config();
  experiment.jobs = report.jobs;

  const KnownBounds bounds = report.load_bounds();
  const auto records = run_experiment(experiment, bounds);
  const auto summaries = summarize_all(experiment, records, bounds);
  std::ostringstream text;
  write_run_report(text, records, summaries, report.options());
  report.emit_report(text.str());

  if (!gantt_path.empty()) {
    // Re-run the best seed; searches are deterministic under an iteration
    // budget.
    const auto best = std::min_element(
        records.begin(), records.end(),
        [](const RunRecord& a, const RunRecord& b) { return a.best < b.best; });
    SearchConfig config = experiment.search;
    config.neighborhood = *kind;
    config.seed = best->seed;
    const Instance& instance = experiment.instances.front().instance;
    if (auto b = bounds.find(instance.name()); b && !config.target_lb) {
      config.target_lb = b->lower;
    }
    const SearchStats stats = run(instance, config);
    std::ofstream file(gantt_path);
    if (!file) throw InputError("cannot write '" + gantt_path + "'");
    file << gantt_export(instance, stats.best_solution,
                         evaluate(instance, stats.best_solution));
  }
  return 0;
}

std::vector<ExperimentInstance> load_list(const std::string& list_path,
                                          const std::string& default_format) {
  std::ifstream in(list_path);
  if (!in) throw InputError("cannot read '" + list_path + "'");
  const auto base = std::filesystem::path(list_path).parent_path();
  std::vector<ExperimentInstance> out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string path, format = default_format, group = "all";
    if (!(fields >> path) || path.front() == '#') continue;
    fields >> format >> group;
    const auto resolved = std::filesystem::path(path).is_absolute()
                              ? std::filesystem::path(path)
                              : base / path;
    out.push_back({load(resolved.string(), format), group});
  }
  if (out.empty()) throw InputError("instance list '" + list_path + "' is empty");
  return out;
}

int cmd_compare(const std::string& list, const std::string& format,
                const std::vector<std::string>& neighborhoods, int runs,
                std::uint64_t seed, const SearchFlags& search,
                const ReportFlags& report) {
  Experiment experiment;
  experiment.instances = load_list(list, format);
  experiment.neighborhoods.clear();
  for (const auto& name : neighborhoods) {
    auto kind = parse_neighborhood(name);
    if (!kind) throw InputError("unknown neighborhood '" + name + "'");
    experiment.neighborhoods.push_back(*kind);
  }
  experiment.runs = runs;
  experiment.base_seed = seed;
  experiment.search = search.config();
  experiment.jobs = report.jobs;

  const KnownBounds bounds = report.load_bounds();
  const auto records = run_experiment(experiment, bounds);
  const auto summaries = summarize_all(experiment, records, bounds);
  const auto groups = group_summaries(summaries);
  std::ostringstream text;
  write_compare_report(text, summaries, groups, report.options());
  report.emit_report(text.str());
  return 0;
}

int cmd_oracle(const std::string& path, const std::string& format, int limit) {
  const Instance instance = load(path, format);
  const OracleResult result = brute_force_optimum(instance, limit);
  std::cout << "instance " << instance.name() << "\n"
            << "optimal_makespan " << result.optimal_makespan << "\n"
            << "explored " << result.explored << "\n"
            << "simple_lower_bound " << simple_lower_bound(instance) << "\n";
  std::cout << gantt_export(instance, result.optimal_solution,
                            evaluate(instance, result.optimal_solution));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Job-shop tabu search benchmark harness"};
  app.require_subcommand(1);

  std::string instance_path, list_path, format = "orlib", neighborhood = "n8",
                                        gantt;
  std::vector<std::string> neighborhoods{"n5", "n6", "n7", "n8"};
  int runs = 10;
  std::uint64_t seed = 0;
  int limit = 12;
  SearchFlags run_search, compare_search;
  ReportFlags run_report, compare_report;

  auto* run_cmd = app.add_subcommand("run", "Independent seeded runs on one instance");
  run_cmd->add_option("--instance", instance_path, "Instance file, or 'builtin'")
      ->required();
  run_cmd->add_option("--format", format, "orlib | taillard");
  run_cmd->add_option("--neighborhood", neighborhood, "n5 | n6 | n7 | n8");
  run_cmd->add_option("--runs", runs, "Number of runs")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Base seed; run i uses seed + i");
  run_cmd->add_option("--gantt", gantt, "Write the best schedule's Gantt rows here");
  run_search.add_to(*run_cmd);
  run_report.add_to(*run_cmd);

  auto* compare_cmd =
      app.add_subcommand("compare", "Neighbourhood comparison over an instance list");
  compare_cmd
      ->add_option("--instances", list_path,
                   "List file: one 'path [format] [group]' per line")
      ->required();
  compare_cmd->add_option("--format", format, "Default format for list entries");
  compare_cmd->add_option("--neighborhoods", neighborhoods, "Kinds to compare")
      ->delimiter(',');
  compare_cmd->add_option("--runs", runs, "Runs per (instance, kind)")
      ->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", seed, "Base seed; run i uses seed + i");
  compare_search.add_to(*compare_cmd);
  compare_report.add_to(*compare_cmd);

  auto* oracle_cmd =
      app.add_subcommand("oracle", "Exact optimum of a tiny instance by enumeration");
  oracle_cmd->add_option("--instance", instance_path, "Instance file, or 'builtin'")
      ->required();
  oracle_cmd->add_option("--format", format, "orlib | taillard");
  oracle_cmd->add_option("--limit", limit, "Maximum number of operations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*run_cmd) {
      return cmd_run(instance_path, format, neighborhood, runs, seed, run_search,
                     run_report, gantt);
    }
    if (*compare_cmd) {
      return cmd_compare(list_path, format, neighborhoods, runs, seed,
                         compare_search, compare_report);
    }
    return cmd_oracle(instance_path, format, limit);
  } catch (const SearchInvariantError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::logic_error& e) {
    // invalid_argument (bad config, oversized oracle input) is the caller's fault.
    if (dynamic_cast<const std::invalid_argument*>(&e)) {
      std::cerr << "error: " << e.what() << "\n";
      return kInputError;
    }
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
