#include "jobshop/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

namespace jobshop {

ParseError::ParseError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                  : what),
      line_(line) {}

Instance::Instance(std::string name, int num_machines,
                   std::vector<std::vector<Operation>> routes)
    : name_(std::move(name)),
      num_machines_(num_machines),
      routes_(std::move(routes)) {
  if (num_machines_ < 1) {
    throw std::invalid_argument("instance needs at least one machine");
  }
  if (routes_.empty()) {
    throw std::invalid_argument("instance needs at least one job");
  }
  job_offset_.reserve(routes_.size() + 1);
  job_offset_.push_back(0);
  for (std::size_t j = 0; j < routes_.size(); ++j) {
    const auto& route = routes_[j];
    if (route.empty()) {
      throw std::invalid_argument("job " + std::to_string(j) +
                                  " has no operations");
    }
    for (const Operation& op : route) {
      if (op.machine < 0 || op.machine >= num_machines_) {
        throw std::invalid_argument("job " + std::to_string(j) +
                                    ": machine index out of range");
      }
      if (op.duration < 0) {
        throw std::invalid_argument("job " + std::to_string(j) +
                                    ": negative duration");
      }
      job_.push_back(static_cast<int>(j));
      machine_.push_back(op.machine);
      duration_.push_back(op.duration);
    }
    job_offset_.push_back(static_cast<int>(machine_.size()));
  }
}

std::vector<OpId> Instance::operations_on(int m) const {
  std::vector<OpId> ops;
  for (int i = 0; i < num_operations(); ++i) {
    if (machine_[i] == m) ops.push_back(OpId{i});
  }
  return ops;
}

Time Instance::total_processing_time() const {
  return std::accumulate(duration_.begin(), duration_.end(), Time{0});
}

std::vector<std::string> Instance::warnings() const {
  std::vector<std::string> out;
  for (int j = 0; j < num_jobs(); ++j) {
    std::vector<int> visits(num_machines_, 0);
    for (std::size_t k = 0; k < routes_[j].size(); ++k) {
      ++visits[routes_[j][k].machine];
      if (routes_[j][k].duration == 0) {
        out.push_back("job " + std::to_string(j) + " operation " +
                      std::to_string(k) + " has zero duration");
      }
    }
    for (int m = 0; m < num_machines_; ++m) {
      if (visits[m] != 1) {
        out.push_back("job " + std::to_string(j) + " visits machine " +
                      std::to_string(m) + " " + std::to_string(visits[m]) +
                      " times");
      }
    }
  }
  return out;
}

std::string Instance::label(OpId o) const {
  const int job = job_of(o) + 1;
  const int pos = position_of(o) + 1;
  if (job < 10 && pos < 10) {
    return "O" + std::to_string(job) + std::to_string(pos);
  }
  return "O" + std::to_string(job) + "_" + std::to_string(pos);
}

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

bool is_comment_or_blank(std::string_view line) {
  const auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Non-comment, non-blank lines with their 1-based line numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    const auto raw = text.substr(pos, end - pos);
    if (!is_comment_or_blank(raw)) lines.push_back({number, split(raw)});
    pos = end + 1;
  }
  return lines;
}

std::optional<long long> to_int(std::string_view token) {
  long long value = 0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

long long expect_int(std::string_view token, int line) {
  auto value = to_int(token);
  if (!value) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'",
                     line);
  }
  return *value;
}

bool all_numeric(const Line& line) {
  return std::all_of(line.tokens.begin(), line.tokens.end(),
                     [](std::string_view t) { return to_int(t).has_value(); });
}

std::pair<int, int> parse_header(const Line& line) {
  if (line.tokens.size() < 2) {
    throw ParseError("header must read 'jobs machines'", line.number);
  }
  const auto n = expect_int(line.tokens[0], line.number);
  const auto m = expect_int(line.tokens[1], line.number);
  if (n < 1 || m < 1) {
    throw ParseError("job and machine counts must be positive", line.number);
  }
  return {static_cast<int>(n), static_cast<int>(m)};
}

}  // namespace

Instance parse_orlib(std::string_view text, std::string name) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty instance text", 0);
  const auto [n, m] = parse_header(lines[0]);
  if (lines[0].tokens.size() != 2) {
    throw ParseError("header must contain exactly two numbers", lines[0].number);
  }
  if (static_cast<int>(lines.size()) - 1 < n) {
    throw ParseError("expected " + std::to_string(n) + " job lines, found " +
                         std::to_string(lines.size() - 1),
                     lines.back().number);
  }
  if (static_cast<int>(lines.size()) - 1 > n) {
    throw ParseError("unexpected data after the last job", lines[n + 1].number);
  }
  std::vector<std::vector<Operation>> routes(n);
  for (int j = 0; j < n; ++j) {
    const Line& line = lines[j + 1];
    if (line.tokens.size() != static_cast<std::size_t>(2 * m)) {
      throw ParseError("expected " + std::to_string(m) +
                           " machine/duration pairs, found " +
                           std::to_string(line.tokens.size()) + " numbers",
                       line.number);
    }
    for (int k = 0; k < m; ++k) {
      const auto machine = expect_int(line.tokens[2 * k], line.number);
      const auto duration = expect_int(line.tokens[2 * k + 1], line.number);
      if (machine < 0 || machine >= m) {
        throw ParseError("machine index " + std::to_string(machine) +
                             " outside [0, " + std::to_string(m) + ")",
                         line.number);
      }
      if (duration < 0) {
        throw ParseError("negative duration", line.number);
      }
      routes[j].push_back({static_cast<int>(machine), duration});
    }
  }
  return Instance(std::move(name), m, std::move(routes));
}

Instance parse_taillard(std::string_view text, std::string name) {
  const auto lines = content_lines(text);
  // Descriptor and label lines ("Times", "Machines") carry no numbers.
  std::vector<const Line*> numeric;
  for (const Line& line : lines) {
    if (all_numeric(line)) numeric.push_back(&line);
  }
  if (numeric.empty()) throw ParseError("no 'jobs machines' header found", 0);
  const auto [n, m] = parse_header(*numeric[0]);
  const std::size_t cells = static_cast<std::size_t>(n) * m;

  struct Entry {
    long long value;
    int line;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 1; i < numeric.size(); ++i) {
    for (auto token : numeric[i]->tokens) {
      entries.push_back({*to_int(token), numeric[i]->number});
    }
  }
  if (entries.size() < 2 * cells) {
    throw ParseError("expected " + std::to_string(2 * cells) +
                         " matrix entries, found " +
                         std::to_string(entries.size()),
                     lines.back().number);
  }
  if (entries.size() > 2 * cells) {
    throw ParseError("unexpected data after the machine matrix",
                     entries[2 * cells].line);
  }
  std::vector<std::vector<Operation>> routes(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < m; ++k) {
      const Entry& d = entries[static_cast<std::size_t>(j) * m + k];
      const Entry& mc = entries[cells + static_cast<std::size_t>(j) * m + k];
      if (d.value < 0) throw ParseError("negative duration", d.line);
      if (mc.value < 1 || mc.value > m) {
        throw ParseError("machine number " + std::to_string(mc.value) +
                             " outside [1, " + std::to_string(m) + "]",
                         mc.line);
      }
      routes[j].push_back({static_cast<int>(mc.value - 1), d.value});
    }
  }
  return Instance(std::move(name), m, std::move(routes));
}

namespace {

// Both text formats assume rectangular routes (m operations per job).
void require_rectangular(const Instance& instance) {
  for (const auto& route : instance.routes()) {
    if (static_cast<int>(route.size()) != instance.num_machines()) {
      throw std::invalid_argument(
          "text formats need exactly m operations per job");
    }
  }
}

}  // namespace

std::string to_orlib(const Instance& instance) {
  require_rectangular(instance);
  std::ostringstream out;
  if (!instance.name().empty()) out << "# " << instance.name() << "\n";
  out << instance.num_jobs() << " " << instance.num_machines() << "\n";
  for (const auto& route : instance.routes()) {
    for (std::size_t k = 0; k < route.size(); ++k) {
      out << (k ? " " : "") << route[k].machine << " " << route[k].duration;
    }
    out << "\n";
  }
  return out.str();
}

std::string to_taillard(const Instance& instance) {
  require_rectangular(instance);
  std::ostringstream out;
  if (!instance.name().empty()) out << "# " << instance.name() << "\n";
  out << "Nb of jobs, Nb of Machines\n"
      << instance.num_jobs() << " " << instance.num_machines() << "\nTimes\n";
  for (const auto& route : instance.routes()) {
    for (std::size_t k = 0; k < route.size(); ++k) {
      out << (k ? " " : "") << route[k].duration;
    }
    out << "\n";
  }
  out << "Machines\n";
  for (const auto& route : instance.routes()) {
    for (std::size_t k = 0; k < route.size(); ++k) {
      out << (k ? " " : "") << route[k].machine + 1;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::optional<InstanceFormat> parse_format(std::string_view name) {
  const auto key = lower(name);
  if (key == "orlib") return InstanceFormat::OrLib;
  if (key == "taillard") return InstanceFormat::Taillard;
  return std::nullopt;
}

Instance load_instance(const std::string& path, InstanceFormat format) {
  const std::string text = read_file(path);
  std::string name = std::filesystem::path(path).stem().string();
  return format == InstanceFormat::OrLib ? parse_orlib(text, std::move(name))
                                         : parse_taillard(text, std::move(name));
}

Instance builtin_example() {
  return Instance("example3x3", 3,
                  {
                      {{0, 2}, {1, 1}, {2, 3}},
                      {{0, 1}, {2, 2}, {1, 2}},
                      {{1, 5}, {0, 2}, {2, 1}},
                  });
}

Time simple_lower_bound(const Instance& instance) {
  std::vector<Time> load(instance.num_machines(), 0);
  Time bound = 0;
  for (const auto& route : instance.routes()) {
    Time length = 0;
    for (const Operation& op : route) {
      length += op.duration;
      load[op.machine] += op.duration;
    }
    bound = std::max(bound, length);
  }
  return std::max(bound, *std::max_element(load.begin(), load.end()));
}

KnownBounds KnownBounds::parse(std::string_view text) {
  KnownBounds bounds;
  for (const Line& line : content_lines(text)) {
    if (line.tokens.size() != 3) {
      throw ParseError("bounds lines read 'name LB UB'", line.number);
    }
    const Time lb = expect_int(line.tokens[1], line.number);
    const Time ub = expect_int(line.tokens[2], line.number);
    if (lb > ub) throw ParseError("LB exceeds UB", line.number);
    bounds.set(line.tokens[0], {lb, ub});
  }
  return bounds;
}

KnownBounds KnownBounds::load(const std::string& path) {
  return parse(read_file(path));
}

void KnownBounds::set(std::string_view name, Bounds bounds) {
  table_[lower(name)] = bounds;
}

std::optional<Bounds> KnownBounds::find(std::string_view name) const {
  auto it = table_.find(lower(name));
  if (it == table_.end()) return std::nullopt;
  return it->second;
}

}  // namespace jobshop
