#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cobench/error.hpp"
#include "heuristics_impl.hpp"

namespace cobench::detail {

namespace {

// ATC needs due dates, which makespan instances lack; all are zero.
constexpr double kAtcDueDate = 0.0;
constexpr double kAtcLookahead = 2.0;

}  // namespace

std::vector<int> pfsp_palmer(const SchedulingInstance& s) {
  const int m = s.machines;
  std::vector<long long> slope(s.jobs, 0);
  for (int j = 0; j < s.jobs; ++j) {
    for (int i = 1; i <= m; ++i) slope[j] += static_cast<long long>(2 * i - m - 1) * s.ptimes[j][i - 1];
  }
  std::vector<int> order(s.jobs);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return slope[a] > slope[b]; });
  return order;
}

std::vector<int> pfsp_neh(const SchedulingInstance& s) {
  std::vector<long long> total(s.jobs, 0);
  for (int j = 0; j < s.jobs; ++j) {
    total[j] = std::accumulate(s.ptimes[j].begin(), s.ptimes[j].end(), 0LL);
  }
  std::vector<int> jobs(s.jobs);
  std::iota(jobs.begin(), jobs.end(), 0);
  std::stable_sort(jobs.begin(), jobs.end(), [&](int a, int b) { return total[a] > total[b]; });
  std::vector<int> seq;
  for (int j : jobs) {
    std::vector<int> best;
    long long best_span = std::numeric_limits<long long>::max();
    for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
      std::vector<int> trial = seq;
      trial.insert(trial.begin() + static_cast<long>(pos), j);
      const long long span = flowshop_makespan(s, trial);
      if (span < best_span) {
        best_span = span;
        best = std::move(trial);
      }
    }
    seq = std::move(best);
  }
  return seq;
}

std::vector<std::vector<int>> jssp_dispatch(const SchedulingInstance& s, Method rule) {
  const int jobs = s.jobs;
  const int machines = s.machines;
  const auto& route = *s.machine_order;
  std::vector<int> next(jobs, 0);
  std::vector<long long> job_free(jobs, 0);
  std::vector<long long> machine_free(machines, 0);
  std::vector<std::vector<int>> seq(machines);
  for (int step = 0; step < jobs * machines; ++step) {
    long long earliest = std::numeric_limits<long long>::max();
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= machines) continue;
      earliest = std::min(earliest, std::max(job_free[j], machine_free[route[j][next[j]]]));
    }
    std::vector<int> ready;
    double mean_p = 0.0;
    for (int j = 0; j < jobs; ++j) {
      if (next[j] >= machines) continue;
      if (std::max(job_free[j], machine_free[route[j][next[j]]]) == earliest) {
        ready.push_back(j);
        mean_p += s.ptimes[j][next[j]];
      }
    }
    mean_p /= static_cast<double>(ready.size());
    auto score = [&](int j) -> double {
      const double p = s.ptimes[j][next[j]];
      switch (rule) {
        case Method::SPT:
          return -p;
        case Method::FIFO:
          return -static_cast<double>(job_free[j]);
        default: {
          const double slack = std::max(0.0, kAtcDueDate - p - static_cast<double>(earliest));
          return (1.0 / p) * std::exp(-slack / (kAtcLookahead * std::max(mean_p, 1.0)));
        }
      }
    };
    int pick = ready.front();
    double best = score(pick);
    for (int j : ready) {
      const double sc = score(j);
      if (sc > best) {
        best = sc;
        pick = j;
      }
    }
    const int m = route[pick][next[pick]];
    const long long end = earliest + s.ptimes[pick][next[pick]];
    job_free[pick] = machine_free[m] = end;
    seq[m].push_back(pick);
    ++next[pick];
  }
  return seq;
}

}  // namespace cobench::detail
