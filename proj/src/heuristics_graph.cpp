#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "cobench/error.hpp"
#include "heuristics_impl.hpp"

namespace cobench {

namespace {

std::vector<std::vector<int>> adjacency(const GraphInstance& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

// Vertices by static degree ascending, ties to the lower id.
std::vector<int> by_degree(const std::vector<std::vector<int>>& adj) {
  std::vector<int> order(adj.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return adj[a].size() < adj[b].size(); });
  return order;
}

std::vector<int> complement(const std::vector<int>& set, int n) {
  std::vector<char> in(n, 0);
  for (int v : set) in[v] = 1;
  std::vector<int> out;
  for (int v = 0; v < n; ++v) {
    if (!in[v]) out.push_back(v);
  }
  return out;
}

class MisSearch {
 public:
  explicit MisSearch(const GraphInstance& g) : n_(g.n), nb_(g.n, 0) {
    for (const auto& [u, v] : g.edges) {
      nb_[u] |= bit(v);
      nb_[v] |= bit(u);
    }
  }

  std::uint64_t run() {
    const std::uint64_t all = n_ == 64 ? ~0ULL : (bit(n_) - 1);
    search(all, 0);
    return best_;
  }

 private:
  static std::uint64_t bit(int v) { return 1ULL << v; }

  void search(std::uint64_t cand, std::uint64_t chosen) {
    // Forced moves: vertices of residual degree <= 1 are always safe to take.
    bool again = true;
    while (again) {
      again = false;
      for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        if (std::popcount(nb_[v] & cand) <= 1) {
          chosen |= bit(v);
          cand &= ~(nb_[v] | bit(v));
          again = true;
          break;
        }
      }
    }
    if (std::popcount(chosen) + std::popcount(cand) <= std::popcount(best_)) return;
    if (cand == 0) {
      best_ = chosen;
      return;
    }
    int pivot = -1;
    int degree = -1;
    for (std::uint64_t rest = cand; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      const int dv = std::popcount(nb_[v] & cand);
      if (dv > degree) {
        degree = dv;
        pivot = v;
      }
    }
    search(cand & ~(nb_[pivot] | bit(pivot)), chosen | bit(pivot));
    search(cand & ~bit(pivot), chosen);
  }

  int n_;
  std::vector<std::uint64_t> nb_;
  std::uint64_t best_ = 0;
};

}  // namespace

namespace detail {

std::vector<int> mis_greedy_min_degree(const GraphInstance& g) {
  const auto adj = adjacency(g);
  std::vector<char> alive(g.n, 1);
  std::vector<int> degree(g.n);
  for (int v = 0; v < g.n; ++v) degree[v] = static_cast<int>(adj[v].size());
  std::vector<int> chosen;
  auto remove = [&](int v) {
    alive[v] = 0;
    for (int w : adj[v]) {
      if (alive[w]) --degree[w];
    }
  };
  while (true) {
    int pick = -1;
    for (int v = 0; v < g.n; ++v) {
      if (alive[v] && (pick < 0 || degree[v] < degree[pick])) pick = v;
    }
    if (pick < 0) break;
    chosen.push_back(pick);
    std::vector<int> gone{pick};
    for (int w : adj[pick]) {
      if (alive[w]) gone.push_back(w);
    }
    for (int v : gone) {
      if (alive[v]) remove(v);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> mis_degree_add(const GraphInstance& g) {
  const auto adj = adjacency(g);
  std::vector<char> blocked(g.n, 0);
  std::vector<int> chosen;
  for (int v : by_degree(adj)) {
    if (blocked[v]) continue;
    chosen.push_back(v);
    blocked[v] = 1;
    for (int w : adj[v]) blocked[w] = 1;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<int> mvc_matching(const GraphInstance& g) {
  std::vector<char> covered(g.n, 0);
  std::vector<int> cover;
  for (const auto& [u, v] : g.edges) {
    if (covered[u] || covered[v]) continue;
    covered[u] = covered[v] = 1;
    cover.push_back(u);
    cover.push_back(v);
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

std::vector<int> mvc_greedy_max_degree(const GraphInstance& g) {
  const auto adj = adjacency(g);
  std::vector<char> taken(g.n, 0);
  std::vector<int> degree(g.n);
  for (int v = 0; v < g.n; ++v) degree[v] = static_cast<int>(adj[v].size());
  std::vector<int> cover;
  while (true) {
    int pick = -1;
    for (int v = 0; v < g.n; ++v) {
      if (!taken[v] && degree[v] > 0 && (pick < 0 || degree[v] > degree[pick])) pick = v;
    }
    if (pick < 0) break;
    taken[pick] = 1;
    cover.push_back(pick);
    for (int w : adj[pick]) {
      if (!taken[w]) --degree[w];
    }
    degree[pick] = 0;
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

std::vector<int> mvc_degree_removal(const GraphInstance& g) {
  return complement(mis_degree_add(g), g.n);
}

}  // namespace detail

std::vector<int> exact_mis(const GraphInstance& g) {
  if (g.n > 64) throw BudgetExceeded("exact independent set supports at most 64 nodes");
  if (g.n == 0) return {};
  const std::uint64_t best = MisSearch(g).run();
  std::vector<int> out;
  for (int v = 0; v < g.n; ++v) {
    if (best >> v & 1ULL) out.push_back(v);
  }
  return out;
}

}  // namespace cobench
