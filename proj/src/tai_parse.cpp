#include <cctype>
#include <cmath>
#include <string>

#include "cobench/error.hpp"
#include "cobench/numfmt.hpp"
#include "cobench/tai.hpp"

namespace cobench {

namespace {

bool is_word(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

char lower(char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }

// Hand-rolled cursor; regex engines recurse on long inputs.
class Cursor {
 public:
  Cursor(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  std::size_t pos() const { return pos_; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  // Whitespace plus markdown emphasis around labels ("**Route:**").
  void skip_decor() {
    while (pos_ < text_.size() &&
           (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '*')) {
      ++pos_;
    }
  }

  bool eat(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view word) {
    if (pos_ > 0 && is_word(text_[pos_ - 1])) return false;
    if (text_.size() - pos_ < word.size()) return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (lower(text_[pos_ + i]) != word[i]) return false;
    }
    const std::size_t end = pos_ + word.size();
    if (end < text_.size() && is_word(text_[end])) return false;
    pos_ = end;
    return true;
  }

  std::optional<int> integer() {
    skip_space();
    std::size_t p = pos_;
    bool neg = false;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) neg = text_[p++] == '-';
    const std::size_t digits = p;
    long long v = 0;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
      if (p - digits >= 9) return std::nullopt;
      v = v * 10 + (text_[p] - '0');
      ++p;
    }
    if (p == digits) return std::nullopt;
    pos_ = p;
    return static_cast<int>(neg ? -v : v);
  }

  std::optional<double> number() {
    skip_decor();
    std::size_t p = pos_;
    if (p < text_.size() && (text_[p] == '-' || text_[p] == '+')) ++p;
    const std::size_t start = p;
    while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
    }
    if (p == start || (p == start + 1 && text_[start] == '.')) return std::nullopt;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '-' || text_[q] == '+')) ++q;
      const std::size_t exp = q;
      while (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) ++q;
      if (q > exp) p = q;
    }
    auto v = parse_double(text_.substr(pos_, p - pos_));
    if (v) pos_ = p;
    return v;
  }

  std::optional<std::vector<int>> int_list() {
    if (!eat('[')) return std::nullopt;
    std::vector<int> out;
    if (eat(']')) return out;
    while (true) {
      auto v = integer();
      if (!v) return std::nullopt;
      out.push_back(*v);
      if (eat(']')) return out;
      if (!eat(',')) return std::nullopt;
    }
  }

  std::optional<std::vector<std::vector<int>>> nested_list() {
    if (!eat('[')) return std::nullopt;
    std::vector<std::vector<int>> out;
    if (eat(']')) return out;
    while (true) {
      auto row = int_list();
      if (!row) return std::nullopt;
      out.push_back(std::move(*row));
      if (eat(']')) return out;
      if (!eat(',')) return std::nullopt;
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_;
};

std::vector<std::string_view> labels_for(ProblemKind kind) {
  switch (grammar_for(kind)) {
    case OutputGrammar::Route:
    case OutputGrammar::Routes:
      return {"routes", "route"};
    case OutputGrammar::Set:
      return {"set"};
    case OutputGrammar::Order:
      return {"order"};
    case OutputGrammar::Schedule:
      return {"schedule"};
  }
  return {};
}

std::optional<Solution> read_body(Cursor& c, ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP:
      if (auto v = c.int_list()) return Route{std::move(*v)};
      return std::nullopt;
    case ProblemKind::CVRP:
      if (auto v = c.nested_list()) return RouteSet{std::move(*v)};
      return std::nullopt;
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      if (auto v = c.int_list()) return VertexSet{std::move(*v)};
      return std::nullopt;
    case ProblemKind::PFSP:
      if (auto v = c.int_list()) {
        for (int& j : *v) --j;  // displayed 1-based
        return JobOrder{std::move(*v)};
      }
      return std::nullopt;
    case ProblemKind::JSSP:
      if (auto v = c.nested_list()) return MachineSchedules{std::move(*v)};
      return std::nullopt;
  }
  return std::nullopt;
}

// Attempts a full answer starting at a label position.
std::optional<ParsedSolution> try_at(std::string_view text, std::size_t pos, ProblemKind kind) {
  for (std::string_view label : labels_for(kind)) {
    Cursor c(text, pos);
    if (!c.eat_word(label)) continue;
    c.skip_decor();
    if (!c.eat(':')) continue;
    c.skip_decor();
    auto sol = read_body(c, kind);
    if (!sol) continue;
    ParsedSolution out;
    out.solution = std::move(sol);
    out.format_ok = true;
    Cursor obj(text, c.pos());
    obj.skip_decor();
    obj.eat(',');
    obj.skip_decor();
    if (obj.eat_word("objective")) {
      obj.skip_decor();
      if (obj.eat(':')) out.stated_objective = obj.number();
    }
    return out;
  }
  return std::nullopt;
}

std::string join(const std::vector<int>& values, int shift = 0) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i] + shift);
  }
  return out + "]";
}

std::string join_nested(const std::vector<std::vector<int>>& rows) {
  std::string out = "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) out += ", ";
    out += join(rows[i]);
  }
  return out + "]";
}

}  // namespace

ParsedSolution parse(std::string_view text, ProblemKind kind) {
  try {
    for (std::size_t i = text.size(); i-- > 0;) {
      const char c = lower(text[i]);
      if (c != 'r' && c != 's' && c != 'o') continue;
      if (auto found = try_at(text, i, kind)) return std::move(*found);
    }
  } catch (...) {
    // bad_alloc on absurd inputs; report as a format failure.
  }
  return {};
}

std::string format_solution(const Solution& sol, double objective, ProblemKind kind) {
  if (!solution_matches(kind, sol)) throw InvalidArgument("solution does not match problem kind");
  std::string body;
  switch (kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP:
      body = join(std::get<Route>(sol).nodes);
      break;
    case ProblemKind::CVRP:
      body = join_nested(std::get<RouteSet>(sol).routes);
      break;
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      body = join(std::get<VertexSet>(sol).vertices);
      break;
    case ProblemKind::PFSP:
      body = join(std::get<JobOrder>(sol).jobs, 1);
      break;
    case ProblemKind::JSSP:
      body = join_nested(std::get<MachineSchedules>(sol).machines);
      break;
  }
  const std::string obj = is_routing(kind) ? format_fixed(objective, 2)
                                           : std::to_string(std::llround(objective));
  return std::string(grammar_label(grammar_for(kind))) + ": " + body + ", Objective: " + obj;
}

}  // namespace cobench
