#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "cobench/error.hpp"
#include "cobench/numfmt.hpp"
#include "cobench/problems.hpp"

namespace cobench {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

[[noreturn]] void fail(const std::string& what) { throw ParseError(what); }

// Every token parses as an integer.
std::optional<std::vector<long long>> int_row(std::string_view line) {
  std::vector<long long> row;
  for (std::string_view tok : split_ws(line)) {
    auto v = parse_int(tok);
    if (!v) return std::nullopt;
    row.push_back(*v);
  }
  return row;
}

}  // namespace

// ---------------------------------------------------------------------------
// TSPLIB

Instance parse_tsplib(std::string_view text) {
  std::string name;
  std::string comment;
  std::optional<long long> dimension;
  std::optional<std::string> weight_type;
  std::vector<Point> coords;
  bool in_coords = false;
  bool saw_coords = false;

  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const std::string_view line = trim(lines[ln]);
    if (line.empty()) continue;
    const std::string head = upper(split_ws(line).front());

    if (in_coords) {
      auto tokens = split_ws(line);
      if (head == "EOF") break;
      if (!parse_double(tokens.front())) {
        in_coords = false;  // next keyword
      } else {
        if (tokens.size() != 3) {
          fail("malformed NODE_COORD_SECTION line " + std::to_string(ln + 1));
        }
        auto x = parse_double(tokens[1]);
        auto y = parse_double(tokens[2]);
        if (!parse_int(tokens[0]) || !x || !y) {
          fail("malformed NODE_COORD_SECTION line " + std::to_string(ln + 1));
        }
        coords.push_back({*x, *y});
        continue;
      }
    }

    if (head == "EOF") break;
    if (head.rfind("NODE_COORD_SECTION", 0) == 0) {
      if (!weight_type) fail("NODE_COORD_SECTION before EDGE_WEIGHT_TYPE");
      in_coords = true;
      saw_coords = true;
      continue;
    }
    if (head.rfind("DISPLAY_DATA_SECTION", 0) == 0) {
      // Display coordinates duplicate the node coordinates; skip the block.
      while (ln + 1 < lines.size()) {
        auto tokens = split_ws(trim(lines[ln + 1]));
        if (!tokens.empty() && !parse_double(tokens.front())) break;
        ++ln;
      }
      continue;
    }
    if (head.find("_SECTION") != std::string::npos) {
      fail("unsupported TSPLIB section '" + head + "'");
    }

    const std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) fail("malformed TSPLIB header line " + std::to_string(ln + 1));
    const std::string key = upper(trim(line.substr(0, colon)));
    const std::string_view value = trim(line.substr(colon + 1));
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "COMMENT") {
      if (!comment.empty()) comment += ' ';
      comment += std::string(value);
    } else if (key == "TYPE") {
      if (upper(value) != "TSP") fail("unsupported TSPLIB TYPE '" + std::string(value) + "'");
    } else if (key == "DIMENSION") {
      dimension = parse_int(value);
      if (!dimension) fail("malformed DIMENSION");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      weight_type = upper(value);
      if (*weight_type != "EUC_2D") {
        fail("unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "' (only EUC_2D)");
      }
    }
    // Other header keys (NODE_COORD_TYPE, DISPLAY_DATA_TYPE, ...) carry
    // nothing we need.
  }

  if (!weight_type) fail("missing EDGE_WEIGHT_TYPE");
  if (!dimension) fail("missing DIMENSION");
  if (!saw_coords) fail("missing NODE_COORD_SECTION");
  if (*dimension < 2 || *dimension > 1000) fail("DIMENSION must be within 2..1000");
  if (static_cast<long long>(coords.size()) != *dimension) {
    fail("dimension mismatch: DIMENSION " + std::to_string(*dimension) + " but " +
         std::to_string(coords.size()) + " coordinates");
  }

  Instance inst;
  inst.kind = ProblemKind::TSP;
  inst.id = name.empty() ? "tsplib" : name;
  inst.meta["source"] = "tsplib";
  if (!name.empty()) inst.meta["name"] = name;
  if (!comment.empty()) inst.meta["comment"] = comment;
  RoutingInstance r;
  r.coords = std::move(coords);
  inst.payload = std::move(r);
  return inst;
}

std::string write_tsplib(const Instance& inst) {
  const RoutingInstance& r = inst.routing();
  std::ostringstream out;
  out << "NAME : " << inst.id << "\n";
  out << "TYPE : TSP\n";
  out << "DIMENSION : " << r.size() << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  for (int i = 0; i < r.size(); ++i) {
    out << (i + 1) << ' ' << format_shortest(r.coords[i].x) << ' '
        << format_shortest(r.coords[i].y) << "\n";
  }
  out << "EOF\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Taillard JSSP

Instance parse_taillard(std::string_view text) {
  std::optional<std::vector<long long>> header;
  std::vector<std::vector<long long>> rows;
  std::optional<std::size_t> machines_marker;  // number of rows seen at "Machines"

  for (std::string_view raw : split_lines(text)) {
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    auto numbers = int_row(line);
    if (!numbers) {
      const std::string word = upper(line);
      if (header && word.rfind("MACHINES", 0) == 0) machines_marker = rows.size();
      continue;  // "Nb of jobs, ...", "Times", comments
    }
    if (!header) {
      if (numbers->size() < 2) fail("Taillard header needs job and machine counts");
      header = std::move(numbers);
    } else {
      rows.push_back(std::move(*numbers));
    }
  }

  if (!header) fail("missing Taillard header line");
  const long long jobs = (*header)[0];
  const long long machines = (*header)[1];
  if (jobs < 1 || machines < 1 || jobs > 1000 || machines > 1000) {
    fail("invalid job/machine counts in Taillard header");
  }
  if (machines_marker && static_cast<long long>(*machines_marker) != jobs) {
    fail("inconsistent block sizes: times block has " + std::to_string(*machines_marker) +
         " rows, expected " + std::to_string(jobs));
  }
  if (static_cast<long long>(rows.size()) < 2 * jobs) {
    fail("truncated Taillard file: expected " + std::to_string(2 * jobs) + " rows, found " +
         std::to_string(rows.size()));
  }
  if (static_cast<long long>(rows.size()) > 2 * jobs) {
    fail("inconsistent block sizes: trailing rows after the machines block");
  }
  for (const auto& row : rows) {
    if (static_cast<long long>(row.size()) != machines) {
      fail("inconsistent block sizes: row of length " + std::to_string(row.size()) +
           ", expected " + std::to_string(machines));
    }
  }

  SchedulingInstance s;
  s.jobs = static_cast<int>(jobs);
  s.machines = static_cast<int>(machines);
  long long min_id = rows[jobs].front();
  long long max_id = min_id;
  for (long long j = 0; j < jobs; ++j) {
    std::vector<int> times;
    for (long long p : rows[j]) {
      if (p < 0) fail("negative processing time");
      times.push_back(static_cast<int>(p));
    }
    s.ptimes.push_back(std::move(times));
    for (long long m : rows[jobs + j]) {
      min_id = std::min(min_id, m);
      max_id = std::max(max_id, m);
    }
  }
  long long shift = 0;
  if (min_id >= 1 && max_id == machines) {
    shift = 1;
  } else if (!(min_id >= 0 && max_id <= machines - 1)) {
    fail("machine ids outside both 0-based and 1-based ranges");
  }
  s.machine_order.emplace();
  for (long long j = 0; j < jobs; ++j) {
    std::vector<int> order;
    for (long long m : rows[jobs + j]) order.push_back(static_cast<int>(m - shift));
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int m = 0; m < s.machines; ++m) {
      if (sorted[m] != m) fail("machine row " + std::to_string(j) + " is not a permutation");
    }
    s.machine_order->push_back(std::move(order));
  }

  Instance inst;
  inst.kind = ProblemKind::JSSP;
  inst.id = "taillard-" + std::to_string(jobs) + "x" + std::to_string(machines);
  inst.meta["source"] = "taillard";
  if (header->size() >= 6) {
    inst.meta["time_seed"] = std::to_string((*header)[2]);
    inst.meta["machine_seed"] = std::to_string((*header)[3]);
    inst.meta["upper_bound"] = std::to_string((*header)[4]);
    inst.meta["lower_bound"] = std::to_string((*header)[5]);
  }
  inst.payload = std::move(s);
  return inst;
}

std::string write_taillard(const Instance& inst) {
  const SchedulingInstance& s = inst.scheduling();
  if (!s.machine_order) throw InvalidArgument("Taillard format needs a JSSP instance");
  std::ostringstream out;
  out << "Nb of jobs, Nb of Machines\n" << s.jobs << ' ' << s.machines << "\nTimes\n";
  for (const auto& row : s.ptimes) {
    for (int m = 0; m < s.machines; ++m) out << (m ? " " : "") << row[m];
    out << "\n";
  }
  out << "Machines\n";
  for (const auto& row : *s.machine_order) {
    for (int m = 0; m < s.machines; ++m) out << (m ? " " : "") << row[m] + 1;
    out << "\n";
  }
  return out.str();
}

}  // namespace cobench
