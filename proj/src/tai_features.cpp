#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "cobench/error.hpp"
#include "cobench/tai.hpp"

namespace cobench {

namespace {

double sq_dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Candidate {
  double sq = 0.0;
  int id = 0;
  bool operator<(const Candidate& o) const { return sq < o.sq || (sq == o.sq && id < o.id); }
};

std::vector<Feature> to_features(std::vector<Candidate> found) {
  std::sort(found.begin(), found.end());
  std::vector<Feature> out;
  out.reserve(found.size());
  for (const Candidate& c : found) out.push_back({c.id, std::sqrt(c.sq)});
  return out;
}

class KdTree {
 public:
  explicit KdTree(std::span<const Point> pts) : pts_(pts), order_(pts.size()) {
    std::iota(order_.begin(), order_.end(), 0);
    if (!order_.empty()) root_ = build(0, static_cast<int>(order_.size()), 0);
  }

  // The k best (sq, id) candidates excluding `self`.
  std::vector<Candidate> query(int self, int k) const {
    std::priority_queue<Candidate> heap;  // max-heap: worst candidate on top
    search(root_, self, k, heap);
    std::vector<Candidate> out;
    while (!heap.empty()) {
      out.push_back(heap.top());
      heap.pop();
    }
    return out;
  }

 private:
  static constexpr int kLeafSize = 8;

  struct Node {
    int begin = 0;
    int end = 0;
    int axis = 0;
    double split = 0.0;
    int left = -1;
    int right = -1;
  };

  static double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }

  int build(int begin, int end, int depth) {
    const int idx = static_cast<int>(nodes_.size());
    nodes_.push_back({begin, end, depth % 2, 0.0, -1, -1});
    if (end - begin <= kLeafSize) return idx;
    const int axis = depth % 2;
    const int mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](int a, int b) { return coord(pts_[a], axis) < coord(pts_[b], axis); });
    const double split = coord(pts_[order_[mid]], axis);
    const int left = build(begin, mid, depth + 1);
    const int right = build(mid, end, depth + 1);
    nodes_[idx].split = split;
    nodes_[idx].left = left;
    nodes_[idx].right = right;
    return idx;
  }

  void search(int ni, int self, int k, std::priority_queue<Candidate>& heap) const {
    const Node& node = nodes_[ni];
    if (node.left < 0) {
      for (int i = node.begin; i < node.end; ++i) {
        const int id = order_[i];
        if (id == self) continue;
        Candidate c{sq_dist(pts_[self], pts_[id]), id};
        if (static_cast<int>(heap.size()) < k) {
          heap.push(c);
        } else if (c < heap.top()) {
          heap.pop();
          heap.push(c);
        }
      }
      return;
    }
    // Left holds coordinates <= split, right holds >= split.
    const double delta = coord(pts_[self], node.axis) - node.split;
    const int near = delta <= 0 ? node.left : node.right;
    const int far = delta <= 0 ? node.right : node.left;
    search(near, self, k, heap);
    // Equal distance may still tie with a lower id, so prune only on strict.
    if (static_cast<int>(heap.size()) < k || delta * delta <= heap.top().sq) {
      search(far, self, k, heap);
    }
  }

  std::span<const Point> pts_;
  std::vector<int> order_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace

FeatureTable nearest_neighbor_features_exhaustive(std::span<const Point> coords, int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  const int n = static_cast<int>(coords.size());
  const int take = std::min(k, std::max(0, n - 1));
  FeatureTable table(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Candidate> all;
    all.reserve(n);
    for (int j = 0; j < n; ++j) {
      if (j != i) all.push_back({sq_dist(coords[i], coords[j]), j});
    }
    std::partial_sort(all.begin(), all.begin() + take, all.end());
    all.resize(take);
    table[i] = to_features(std::move(all));
  }
  return table;
}

FeatureTable nearest_neighbor_features_kdtree(std::span<const Point> coords, int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  const int n = static_cast<int>(coords.size());
  const int take = std::min(k, std::max(0, n - 1));
  FeatureTable table(n);
  if (take == 0) return table;
  KdTree tree(coords);
  for (int i = 0; i < n; ++i) table[i] = to_features(tree.query(i, take));
  return table;
}

FeatureTable nearest_neighbor_features(std::span<const Point> coords, int k) {
  if (static_cast<int>(coords.size()) > kSpatialIndexThreshold) {
    return nearest_neighbor_features_kdtree(coords, k);
  }
  return nearest_neighbor_features_exhaustive(coords, k);
}

FeatureTable degree_features(const GraphInstance& graph, int k) {
  if (k < 0) throw InvalidArgument("k must be non-negative");
  std::vector<std::vector<int>> adj(graph.n);
  for (const auto& [u, v] : graph.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  FeatureTable table(graph.n);
  for (int v = 0; v < graph.n; ++v) {
    std::vector<int> nb = adj[v];
    std::sort(nb.begin(), nb.end(), [&](int a, int b) {
      const auto da = adj[a].size();
      const auto db = adj[b].size();
      return da != db ? da > db : a < b;
    });
    const int take = std::min<int>(k, static_cast<int>(nb.size()));
    for (int i = 0; i < take; ++i) {
      table[v].push_back({nb[i], static_cast<double>(adj[nb[i]].size())});
    }
  }
  return table;
}

}  // namespace cobench
