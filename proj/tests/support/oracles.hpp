#pragma once

// Test-side reference implementations. They follow the constraint and
// objective definitions directly and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <variant>
#include <vector>

#include "cobench/problems.hpp"

namespace oracle {

using cobench::Instance;
using cobench::ProblemKind;
using cobench::Solution;

inline double dist(const cobench::Point& a, const cobench::Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double walk(const std::vector<cobench::Point>& c, const std::vector<int>& nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i) total += dist(c[nodes[i - 1]], c[nodes[i]]);
  return total;
}

inline bool inside(int v, int n) { return 0 <= v && v < n; }

inline long count_of(const std::vector<int>& v, int x) { return std::count(v.begin(), v.end(), x); }

struct Verdict {
  bool zeta = false;
  std::vector<bool> c;
  bool feasible() const { return zeta && std::all_of(c.begin(), c.end(), [](bool b) { return b; }); }
};

inline Verdict tsp(const cobench::RoutingInstance& r, const std::vector<int>& nodes) {
  const int n = r.size();
  std::vector<int> body = nodes;
  if (body.size() >= 2 && body.front() == body.back()) body.pop_back();
  bool once = static_cast<int>(body.size()) == n;
  for (int v = 0; v < n; ++v) once = once && count_of(body, v) == 1;
  const bool back = nodes.size() >= 2 && nodes.front() == r.depot && nodes.back() == r.depot;
  return {true, {once, back}};
}

inline Verdict op(const cobench::RoutingInstance& r, const std::vector<int>& nodes) {
  const int n = r.size();
  const bool start = !nodes.empty() && nodes[0] == r.depot;
  std::vector<int> body = nodes;
  if (body.size() >= 2 && body.back() == r.depot) body.pop_back();
  bool once = true;
  for (int v : body) once = once && inside(v, n) && count_of(body, v) == 1;
  bool ranged = std::all_of(nodes.begin(), nodes.end(), [n](int v) { return inside(v, n); });
  const bool budget = ranged && walk(r.coords, nodes) <= *r.distance_limit + 1e-6;
  return {true, {start, once, budget}};
}

inline Verdict cvrp(const cobench::RoutingInstance& r, const std::vector<std::vector<int>>& routes) {
  const int n = r.size();
  std::vector<std::vector<int>> used;
  for (const auto& route : routes) {
    if (std::any_of(route.begin(), route.end(), [&](int v) { return v != r.depot; })) used.push_back(route);
  }
  bool ends = true;
  bool ranged = true;
  bool capacity = true;
  std::vector<int> all;
  for (const auto& route : used) {
    ends = ends && route.size() >= 2 && route.front() == r.depot && route.back() == r.depot;
    for (std::size_t i = 1; i + 1 < route.size(); ++i) ends = ends && route[i] != r.depot;
    long load = 0;
    for (int v : route) {
      if (!inside(v, n)) {
        ranged = false;
      } else if (v != r.depot) {
        load += (*r.demands)[v];
        all.push_back(v);
      }
    }
    capacity = capacity && load <= *r.capacity;
  }
  bool once = ranged;
  for (int v = 0; v < n; ++v) {
    if (v != r.depot) once = once && count_of(all, v) == 1;
  }
  return {true, {ends, once, capacity}};
}

inline bool distinct_valid(const std::vector<int>& s, int n) {
  return std::all_of(s.begin(), s.end(), [&](int v) { return inside(v, n) && count_of(s, v) == 1; });
}

inline Verdict mis(const cobench::GraphInstance& g, const std::vector<int>& s) {
  bool ok = distinct_valid(s, g.n);
  const std::set<cobench::Edge> edges(g.edges.begin(), g.edges.end());
  for (std::size_t a = 0; ok && a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (edges.count({std::min(s[a], s[b]), std::max(s[a], s[b])})) ok = false;
    }
  }
  return {true, {ok}};
}

inline Verdict mvc(const cobench::GraphInstance& g, const std::vector<int>& s) {
  bool ok = distinct_valid(s, g.n);
  for (const auto& [u, v] : g.edges) ok = ok && (count_of(s, u) > 0 || count_of(s, v) > 0);
  return {true, {ok}};
}

inline Verdict pfsp(const cobench::SchedulingInstance& s, const std::vector<int>& order) {
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> ids(s.jobs);
  std::iota(ids.begin(), ids.end(), 0);
  return {true, {sorted == ids}};
}

// Semi-active decoding by fixpoint: an operation runs once its job
// predecessor is done and every earlier listed entry on its machine is done.
// Entries that are out of range or repeated are ignored. Returns the finish
// times, or nullopt when some operation can never run.
inline std::optional<std::vector<std::vector<long>>> decode(const cobench::SchedulingInstance& s,
                                                            const std::vector<std::vector<int>>& rows) {
  const int J = s.jobs;
  const int M = s.machines;
  const auto& mo = *s.machine_order;
  std::vector<std::vector<int>> listed(M);
  for (int m = 0; m < M && m < static_cast<int>(rows.size()); ++m) {
    for (int j : rows[m]) {
      if (inside(j, J) && count_of(listed[m], j) == 0) listed[m].push_back(j);
    }
  }
  std::vector<std::vector<long>> finish(J, std::vector<long>(M, -1));
  std::vector<long> machine_free(M, 0);
  std::vector<std::size_t> machine_pos(M, 0);
  int remaining = J * M;
  bool progress = true;
  while (remaining > 0 && progress) {
    progress = false;
    for (int j = 0; j < J; ++j) {
      for (int o = 0; o < M; ++o) {
        if (finish[j][o] >= 0) continue;
        if (o > 0 && finish[j][o - 1] < 0) break;
        const int m = mo[j][o];
        const bool is_listed = count_of(listed[m], j) > 0;
        if (is_listed && listed[m][machine_pos[m]] != j) break;
        const long ready = o > 0 ? finish[j][o - 1] : 0;
        const long start = is_listed ? std::max(ready, machine_free[m]) : ready;
        finish[j][o] = start + s.ptimes[j][o];
        if (is_listed) {
          machine_free[m] = finish[j][o];
          ++machine_pos[m];
        }
        --remaining;
        progress = true;
        break;
      }
    }
  }
  if (remaining > 0) return std::nullopt;
  return finish;
}

inline Verdict jssp(const cobench::SchedulingInstance& s, const std::vector<std::vector<int>>& rows) {
  const int J = s.jobs;
  const int M = s.machines;
  bool all = static_cast<int>(rows.size()) >= M;
  for (int m = 0; all && m < M; ++m) {
    for (int j = 0; j < J; ++j) all = all && count_of(rows[m], j) > 0;
  }
  bool no_conflict = static_cast<int>(rows.size()) <= M;
  for (const auto& row : rows) no_conflict = no_conflict && distinct_valid(row, J);
  const bool precedence = decode(s, rows).has_value();
  return {true, {all, no_conflict, precedence}};
}

inline Verdict evaluate(const Instance& inst, const Solution& sol) {
  const auto wrong = [&] {
    Verdict v;
    v.c.assign(inst.kind == ProblemKind::TSP ? 2 : (inst.kind == ProblemKind::OP || inst.kind == ProblemKind::CVRP ||
                                                            inst.kind == ProblemKind::JSSP
                                                        ? 3
                                                        : 1),
               false);
    return v;
  };
  switch (inst.kind) {
    case ProblemKind::TSP:
      if (auto* r = std::get_if<cobench::Route>(&sol)) return tsp(inst.routing(), r->nodes);
      return wrong();
    case ProblemKind::OP:
      if (auto* r = std::get_if<cobench::Route>(&sol)) return op(inst.routing(), r->nodes);
      return wrong();
    case ProblemKind::CVRP:
      if (auto* r = std::get_if<cobench::RouteSet>(&sol)) return cvrp(inst.routing(), r->routes);
      return wrong();
    case ProblemKind::MIS:
      if (auto* v = std::get_if<cobench::VertexSet>(&sol)) return mis(inst.graph(), v->vertices);
      return wrong();
    case ProblemKind::MVC:
      if (auto* v = std::get_if<cobench::VertexSet>(&sol)) return mvc(inst.graph(), v->vertices);
      return wrong();
    case ProblemKind::PFSP:
      if (auto* o = std::get_if<cobench::JobOrder>(&sol)) return pfsp(inst.scheduling(), o->jobs);
      return wrong();
    case ProblemKind::JSSP:
      if (auto* m = std::get_if<cobench::MachineSchedules>(&sol)) return jssp(inst.scheduling(), m->machines);
      return wrong();
  }
  return wrong();
}

// ---------------------------------------------------------------------------
// Objectives

// C[k][i] = max(C[k-1][i], C[k][i-1]) + p, position-major.
inline long flowshop(const cobench::SchedulingInstance& s, const std::vector<int>& order) {
  std::vector<long> c(s.machines, 0);
  for (int j : order) {
    for (int m = 0; m < s.machines; ++m) c[m] = std::max(c[m], m > 0 ? c[m - 1] : 0L) + s.ptimes[j][m];
  }
  return c.back();
}

inline std::optional<long> jobshop(const cobench::SchedulingInstance& s, const std::vector<std::vector<int>>& rows) {
  const auto fin = decode(s, rows);
  if (!fin) return std::nullopt;
  long best = 0;
  for (const auto& row : *fin) best = std::max(best, *std::max_element(row.begin(), row.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Exact and strong references

inline int max_independent_set(const cobench::GraphInstance& g) {
  const int n = g.n;
  std::vector<std::uint64_t> adj(n, 0);
  for (const auto& [u, v] : g.edges) {
    adj[u] |= std::uint64_t{1} << v;
    adj[v] |= std::uint64_t{1} << u;
  }
  int best = 0;
  auto rec = [&](auto&& self, std::uint64_t cand, int size) -> void {
    if (cand == 0) {
      best = std::max(best, size);
      return;
    }
    if (size + __builtin_popcountll(cand) <= best) return;
    int pick = -1;
    int deg = -1;
    for (std::uint64_t c = cand; c; c &= c - 1) {
      const int v = __builtin_ctzll(c);
      const int d = __builtin_popcountll(adj[v] & cand);
      if (d > deg) {
        deg = d;
        pick = v;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    if (deg == 0) {
      best = std::max(best, size + __builtin_popcountll(cand));
      return;
    }
    self(self, cand & ~bit & ~adj[pick], size + 1);
    self(self, cand & ~bit, size);
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  rec(rec, all, 0);
  return best;
}

inline long flowshop_optimum(const cobench::SchedulingInstance& s) {
  const int J = s.jobs;
  const int M = s.machines;
  std::vector<int> ident(J);
  std::iota(ident.begin(), ident.end(), 0);
  long best = flowshop(s, ident);
  std::vector<char> used(J, 0);
  // Machine bound: current completion + remaining work + the smallest tail.
  auto rec = [&](auto&& self, const std::vector<long>& c, int depth) -> void {
    if (depth == J) {
      best = std::min(best, c.back());
      return;
    }
    for (int m = 0; m < M; ++m) {
      long rest = 0;
      long tail = std::numeric_limits<long>::max();
      for (int j = 0; j < J; ++j) {
        if (used[j]) continue;
        rest += s.ptimes[j][m];
        long t = 0;
        for (int k = m + 1; k < M; ++k) t += s.ptimes[j][k];
        tail = std::min(tail, t);
      }
      if (c[m] + rest + tail >= best) return;
    }
    for (int j = 0; j < J; ++j) {
      if (used[j]) continue;
      std::vector<long> next(M);
      for (int m = 0; m < M; ++m) next[m] = std::max(c[m], m > 0 ? next[m - 1] : 0L) + s.ptimes[j][m];
      used[j] = 1;
      self(self, next, depth + 1);
      used[j] = 0;
    }
  };
  rec(rec, std::vector<long>(M, 0), 0);
  return best;
}

// Best closed tour found by multi-start 2-opt plus or-opt local search.
inline double tsp_reference(const std::vector<cobench::Point>& c, int starts, std::uint64_t seed) {
  const int n = static_cast<int>(c.size());
  std::mt19937_64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  auto cost = [&](const std::vector<int>& t) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += dist(c[t[i]], c[t[(i + 1) % n]]);
    return s;
  };
  for (int s = 0; s < starts; ++s) {
    std::vector<int> t(n);
    std::iota(t.begin(), t.end(), 0);
    std::shuffle(t.begin(), t.end(), rng);
    double cur = cost(t);
    bool improved = true;
    while (improved) {
      improved = false;
      for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 2; j < n; ++j) {
          if (i == 0 && j == n - 1) continue;
          const double delta = dist(c[t[i]], c[t[j]]) + dist(c[t[i + 1]], c[t[(j + 1) % n]]) -
                               dist(c[t[i]], c[t[i + 1]]) - dist(c[t[j]], c[t[(j + 1) % n]]);
          if (delta < -1e-9) {
            std::reverse(t.begin() + i + 1, t.begin() + j + 1);
            improved = true;
          }
        }
      }
      for (int len = 1; len <= 3 && !improved; ++len) {
        for (int i = 0; i + len <= n && !improved; ++i) {
          std::vector<int> seg(t.begin() + i, t.begin() + i + len);
          std::vector<int> rest;
          rest.insert(rest.end(), t.begin(), t.begin() + i);
          rest.insert(rest.end(), t.begin() + i + len, t.end());
          for (std::size_t p = 0; p <= rest.size() && !improved; ++p) {
            std::vector<int> cand = rest;
            cand.insert(cand.begin() + p, seg.begin(), seg.end());
            const double v = cost(cand);
            if (v < cur - 1e-9) {
              t = std::move(cand);
              improved = true;
            }
          }
        }
      }
      cur = cost(t);
    }
    best = std::min(best, cur);
  }
  return best;
}

}  // namespace oracle
