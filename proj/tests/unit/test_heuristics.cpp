#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "cobench/error.hpp"
#include "cobench/heuristics.hpp"
#include "cobench/verify.hpp"
#include "golden.hpp"
#include "oracles.hpp"
#include "random_cases.hpp"

using namespace cobench;

namespace {

// Exhaustive TSP: every permutation of the non-depot nodes.
double tsp_by_permutation(const RoutingInstance& r) {
  std::vector<int> rest;
  for (int v = 0; v < r.size(); ++v) {
    if (v != r.depot) rest.push_back(v);
  }
  double best = std::numeric_limits<double>::infinity();
  do {
    std::vector<int> tour = {r.depot};
    tour.insert(tour.end(), rest.begin(), rest.end());
    tour.push_back(r.depot);
    best = std::min(best, oracle::walk(r.coords, tour));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

// Exhaustive OP: every ordered subset; prize first, then length.
int op_by_enumeration(const RoutingInstance& r) {
  const int n = r.size();
  int best = 0;
  std::vector<int> path = {r.depot};
  std::vector<char> used(n, 0);
  used[r.depot] = 1;
  auto rec = [&](auto&& self, double len, int prize) -> void {
    best = std::max(best, prize);
    for (int v = 0; v < n; ++v) {
      if (used[v]) continue;
      const double next = len + oracle::dist(r.coords[path.back()], r.coords[v]);
      if (next > *r.distance_limit + 1e-6) continue;
      used[v] = 1;
      path.push_back(v);
      self(self, next, prize + (*r.prizes)[v]);
      path.pop_back();
      used[v] = 0;
    }
  };
  rec(rec, 0.0, 0);
  return best;
}

// Exhaustive CVRP: every customer permutation split greedily at every
// possible cut set.
double cvrp_by_enumeration(const RoutingInstance& r) {
  std::vector<int> cust;
  for (int v = 0; v < r.size(); ++v) {
    if (v != r.depot) cust.push_back(v);
  }
  const int k = static_cast<int>(cust.size());
  double best = std::numeric_limits<double>::infinity();
  do {
    for (int cuts = 0; cuts < (1 << (k - 1)); ++cuts) {
      double total = 0.0;
      long load = 0;
      int prev = r.depot;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        total += oracle::dist(r.coords[prev], r.coords[cust[i]]);
        load += (*r.demands)[cust[i]];
        prev = cust[i];
        if (i + 1 == k || (cuts >> i & 1)) {
          total += oracle::dist(r.coords[prev], r.coords[r.depot]);
          ok = load <= *r.capacity;
          load = 0;
          prev = r.depot;
        }
      }
      if (ok) best = std::min(best, total);
    }
  } while (std::next_permutation(cust.begin(), cust.end()));
  return best;
}

long jssp_by_enumeration(const SchedulingInstance& s) {
  std::vector<std::vector<int>> rows(s.machines, std::vector<int>(s.jobs));
  for (auto& row : rows) std::iota(row.begin(), row.end(), 0);
  long best = std::numeric_limits<long>::max();
  auto rec = [&](auto&& self, int m) -> void {
    if (m == s.machines) {
      if (auto v = oracle::jobshop(s, rows)) best = std::min(best, *v);
      return;
    }
    std::sort(rows[m].begin(), rows[m].end());
    do {
      self(self, m + 1);
    } while (std::next_permutation(rows[m].begin(), rows[m].end()));
  };
  rec(rec, 0);
  return best;
}

Instance with_size(ProblemKind kind, int n, std::uint64_t seed) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.size_range = {n, n};
  cfg.jobs_range = {n, n};
  cfg.machines_range = {n, n};
  return gen_instance(kind, cfg);
}

}  // namespace

TEST_CASE("method names") {
  CHECK(parse_method("greedy_insertion") == Method::GreedyInsertion);
  CHECK(parse_method("NEH") == Method::NEH);
  for (ProblemKind kind : kAllKinds) {
    for (Method m : methods_for(kind)) {
      CHECK(parse_method(method_name(m)) == m);
      CHECK(method_valid(kind, m));
    }
  }
  CHECK_THROWS_AS(parse_method("simulated-annealing"), InvalidArgument);
  CHECK_FALSE(method_valid(ProblemKind::TSP, Method::NEH));
  CHECK_THROWS_AS(solve(golden::mis_example(), Method::NEH), InvalidArgument);
}

TEST_CASE("every method is feasible on generated instances") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size_range = {10, 60};
    for (ProblemKind kind : kAllKinds) {
      const Instance inst = gen_instance(kind, cfg);
      for (Method m : methods_for(kind)) {
        SolveOptions opts;
        opts.seed = seed;
        if (m == Method::ACO) opts.aco = AcoConfig{10, 10, 1.0, 2.0, 0.1, 1.0, seed};
        INFO(inst.id, " ", method_name(m));
        CHECK(check(inst, solve(inst, m, opts)).feasible);
      }
    }
  }
}

TEST_CASE("stochastic methods are reproducible per seed") {
  const Instance op = with_size(ProblemKind::OP, 40, 4);
  SolveOptions opts;
  opts.seed = 77;
  opts.tsili_samples = 50;
  CHECK(solve(op, Method::Tsili, opts) == solve(op, Method::Tsili, opts));
  const AcoConfig aco{8, 10, 1.0, 2.0, 0.1, 1.0, 5};
  for (ProblemKind kind : {ProblemKind::TSP, ProblemKind::OP, ProblemKind::CVRP}) {
    const Instance inst = with_size(kind, 25, 6);
    CHECK(aco_solve(inst, aco) == aco_solve(inst, aco));
  }
  AcoConfig bad = aco;
  bad.evaporation = 1.5;
  CHECK_THROWS_AS(aco_solve(with_size(ProblemKind::TSP, 10, 1), bad), InvalidArgument);
  CHECK_THROWS_AS(aco_solve(golden::mis_example(), aco), InvalidArgument);
}

TEST_CASE("worked PFSP example under the baselines") {
  const Instance inst = golden::pfsp_example();
  const auto best = brute_force(inst);
  CHECK(best.objective.value == oracle::flowshop_optimum(inst.scheduling()));
  CHECK(best.objective.value <= 471);
  CHECK(objective(inst, solve(inst, Method::NEH)).value >= best.objective.value);
}

TEST_CASE("brute force matches independent enumeration") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Instance tsp = with_size(ProblemKind::TSP, 8, seed);
    CHECK(brute_force(tsp).objective.value == doctest::Approx(tsp_by_permutation(tsp.routing())));

    const Instance op = with_size(ProblemKind::OP, 8, seed);
    const auto op_best = brute_force(op);
    CHECK(op_best.objective.value == op_by_enumeration(op.routing()));
    CHECK(check(op, op_best.solution).feasible);

    const Instance cvrp = with_size(ProblemKind::CVRP, 7, seed);
    const auto cv = brute_force(cvrp);
    CHECK(cv.objective.value == doctest::Approx(cvrp_by_enumeration(cvrp.routing())));
    CHECK(check(cvrp, cv.solution).feasible);

    const Instance mis = with_size(ProblemKind::MIS, 16, seed);
    CHECK(brute_force(mis).objective.value == oracle::max_independent_set(mis.graph()));
    const Instance mvc = with_size(ProblemKind::MVC, 16, seed);
    CHECK(brute_force(mvc).objective.value == mvc.graph().n - oracle::max_independent_set(mvc.graph()));

    const Instance pfsp = with_size(ProblemKind::PFSP, 6, seed);
    CHECK(brute_force(pfsp).objective.value == oracle::flowshop_optimum(pfsp.scheduling()));

    const Instance jssp = with_size(ProblemKind::JSSP, 3, seed);
    const auto js = brute_force(jssp);
    CHECK(js.objective.value == jssp_by_enumeration(jssp.scheduling()));
    CHECK(check(jssp, js.solution).feasible);
  }
}

TEST_CASE("brute force refuses large instances") {
  CHECK_THROWS_AS(brute_force(with_size(ProblemKind::PFSP, 12, 1)), BudgetExceeded);
  CHECK_THROWS_AS(brute_force(with_size(ProblemKind::TSP, 30, 1)), BudgetExceeded);
  CHECK_THROWS_AS(brute_force(with_size(ProblemKind::JSSP, 5, 1)), BudgetExceeded);
  BruteForceBudget wide;
  wide.tsp_nodes = 12;
  CHECK_NOTHROW(brute_force(with_size(ProblemKind::TSP, 12, 1), wide));
}

TEST_CASE("exact MIS agrees with the test-side search") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 30; ++t) {
    const Instance g = with_size(ProblemKind::MIS, 20 + t % 25, rng());
    const auto set = exact_mis(g.graph());
    CHECK(check(g, VertexSet{set}).feasible);
    CHECK(static_cast<int>(set.size()) == oracle::max_independent_set(g.graph()));
  }
}

TEST_CASE("2-opt never lengthens a tour and keeps the start") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const Instance inst = with_size(ProblemKind::TSP, 30, rng());
    const auto& c = inst.routing().coords;
    std::vector<int> tour(c.size());
    std::iota(tour.begin(), tour.end(), 0);
    std::shuffle(tour.begin() + 1, tour.end(), rng);
    tour.push_back(0);
    const auto better = two_opt(c, tour);
    CHECK(better.front() == 0);
    CHECK(better.back() == 0);
    CHECK(oracle::walk(c, better) <= oracle::walk(c, tour) + 1e-9);
    CHECK(check(inst, Route{better}).feasible);
  }
}

TEST_CASE("savings beats sweep on average; ATC with zero due dates is SPT") {
  double sweep = 0.0, savings = 0.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.size_range = {30, 50};
    const Instance cvrp = gen_instance(ProblemKind::CVRP, cfg);
    sweep += objective(cvrp, solve(cvrp, Method::Sweep)).value;
    savings += objective(cvrp, solve(cvrp, Method::ParallelSavings)).value;
    const Instance jssp = gen_instance(ProblemKind::JSSP, cfg);
    CHECK(solve(jssp, Method::ATC) == solve(jssp, Method::SPT));
  }
  CHECK(savings < sweep);
}
