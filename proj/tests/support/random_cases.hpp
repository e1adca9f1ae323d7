#pragma once

// Small random instances and a mix of valid, mutated and malformed solutions.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "cobench/heuristics.hpp"
#include "cobench/problems.hpp"

namespace cases {

using cobench::Instance;
using cobench::ProblemKind;
using cobench::Solution;

inline Instance small_instance(ProblemKind kind, std::uint64_t seed) {
  cobench::GenConfig cfg;
  cfg.seed = seed;
  switch (kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP:
      cfg.size_range = {4, 10};
      break;
    case ProblemKind::CVRP:
      cfg.size_range = {4, 9};
      break;
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      cfg.size_range = {4, 12};
      break;
    case ProblemKind::PFSP:
      cfg.jobs_range = {2, 6};
      cfg.machines_range = {2, 5};
      break;
    case ProblemKind::JSSP:
      cfg.jobs_range = {2, 4};
      cfg.machines_range = {2, 4};
      break;
  }
  return cobench::gen_instance(kind, cfg);
}

inline int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// One random edit of an index list: swap, delete, duplicate, replace with a
// random (possibly out-of-range) value, reverse or clear.
inline void mutate(std::vector<int>& v, int n, std::mt19937_64& rng) {
  const int op = pick(rng, 0, 5);
  const int size = static_cast<int>(v.size());
  switch (op) {
    case 0:
      if (size >= 2) std::swap(v[pick(rng, 0, size - 1)], v[pick(rng, 0, size - 1)]);
      break;
    case 1:
      if (size >= 1) v.erase(v.begin() + pick(rng, 0, size - 1));
      break;
    case 2:
      if (size >= 1) v.insert(v.begin() + pick(rng, 0, size), v[pick(rng, 0, size - 1)]);
      break;
    case 3:
      if (size >= 1) v[pick(rng, 0, size - 1)] = pick(rng, -1, n);
      break;
    case 4:
      std::reverse(v.begin(), v.end());
      break;
    default:
      if (pick(rng, 0, 9) == 0) v.clear();
      break;
  }
}

inline std::vector<int> random_subset(int n, std::mt19937_64& rng) {
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (pick(rng, 0, 1)) out.push_back(v);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

inline Solution random_solution(const Instance& inst, std::mt19937_64& rng) {
  const int style = pick(rng, 0, 3);  // 0: heuristic, 1: heuristic + edits, 2-3: random
  const int edits = style == 1 ? pick(rng, 1, 3) : (style >= 2 ? pick(rng, 0, 2) : 0);
  Solution base;
  if (style <= 1) {
    const auto& methods = cobench::methods_for(inst.kind);
    auto method = methods[pick(rng, 0, static_cast<int>(methods.size()) - 1)];
    cobench::SolveOptions opts;
    opts.seed = rng();
    opts.tsili_samples = 8;
    if (method == cobench::Method::ACO) {
      cobench::AcoConfig aco;
      aco.ants = 4;
      aco.iterations = 3;
      aco.seed = rng();
      opts.aco = aco;
    }
    base = cobench::solve(inst, method, opts);
  }
  const int n = inst.size();
  switch (inst.kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP: {
      cobench::Route r;
      if (style <= 1) {
        r = std::get<cobench::Route>(base);
      } else {
        r.nodes = inst.kind == ProblemKind::TSP ? std::vector<int>(n) : random_subset(n, rng);
        if (inst.kind == ProblemKind::TSP) std::iota(r.nodes.begin(), r.nodes.end(), 0);
        std::shuffle(r.nodes.begin(), r.nodes.end(), rng);
        if (pick(rng, 0, 1)) r.nodes.insert(r.nodes.begin(), 0);
        if (pick(rng, 0, 1)) r.nodes.push_back(0);
      }
      for (int e = 0; e < edits; ++e) mutate(r.nodes, n, rng);
      return r;
    }
    case ProblemKind::CVRP: {
      cobench::RouteSet s;
      if (style <= 1) {
        s = std::get<cobench::RouteSet>(base);
      } else {
        std::vector<int> customers(n - 1);
        std::iota(customers.begin(), customers.end(), 1);
        std::shuffle(customers.begin(), customers.end(), rng);
        std::vector<int> route = {0};
        for (int c : customers) {
          route.push_back(c);
          if (pick(rng, 0, 2) == 0) {
            route.push_back(0);
            s.routes.push_back(route);
            route = {0};
          }
        }
        route.push_back(0);
        s.routes.push_back(route);
      }
      for (int e = 0; e < edits; ++e) {
        const int which = pick(rng, 0, 4);
        if (which == 0) {
          s.routes.push_back(pick(rng, 0, 1) ? std::vector<int>{0, 0} : std::vector<int>{});
        } else if (which == 1 && s.routes.size() >= 2 && !s.routes[0].empty() && !s.routes[1].empty()) {
          auto& a = s.routes[0];
          auto& b = s.routes[1];
          a.pop_back();
          a.insert(a.end(), b.begin() + 1, b.end());
          s.routes.erase(s.routes.begin() + 1);
        } else if (!s.routes.empty()) {
          mutate(s.routes[pick(rng, 0, static_cast<int>(s.routes.size()) - 1)], n, rng);
        }
      }
      return s;
    }
    case ProblemKind::MIS:
    case ProblemKind::MVC: {
      cobench::VertexSet s;
      s.vertices = style <= 1 ? std::get<cobench::VertexSet>(base).vertices : random_subset(n, rng);
      for (int e = 0; e < edits; ++e) {
        if (pick(rng, 0, 1)) {
          s.vertices.push_back(pick(rng, 0, n - 1));
        } else {
          mutate(s.vertices, n, rng);
        }
      }
      return s;
    }
    case ProblemKind::PFSP: {
      cobench::JobOrder o;
      if (style <= 1) {
        o = std::get<cobench::JobOrder>(base);
      } else {
        o.jobs.resize(n);
        std::iota(o.jobs.begin(), o.jobs.end(), 0);
        std::shuffle(o.jobs.begin(), o.jobs.end(), rng);
      }
      for (int e = 0; e < edits; ++e) mutate(o.jobs, n, rng);
      return o;
    }
    case ProblemKind::JSSP: {
      const auto& s = inst.scheduling();
      cobench::MachineSchedules m;
      if (style <= 1) {
        m = std::get<cobench::MachineSchedules>(base);
      } else {
        m.machines.assign(s.machines, std::vector<int>(s.jobs));
        for (auto& row : m.machines) {
          std::iota(row.begin(), row.end(), 0);
          std::shuffle(row.begin(), row.end(), rng);
        }
      }
      for (int e = 0; e < edits; ++e) {
        const int which = pick(rng, 0, 5);
        if (which == 0) {
          m.machines.push_back(m.machines.empty() ? std::vector<int>{} : m.machines.front());
        } else if (which == 1 && !m.machines.empty()) {
          m.machines.pop_back();
        } else if (!m.machines.empty()) {
          mutate(m.machines[pick(rng, 0, static_cast<int>(m.machines.size()) - 1)], s.jobs, rng);
        }
      }
      return m;
    }
  }
  return base;
}

}  // namespace cases
