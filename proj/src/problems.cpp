#include "cobench/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "cobench/error.hpp"
#include "cobench/numfmt.hpp"

namespace cobench {

namespace {

constexpr std::array<std::string_view, 7> kKindNames = {"tsp", "op",  "cvrp", "mis",
                                                       "mvc", "pfsp", "jssp"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void invalid(const std::string& what) { throw InvalidArgument(what); }

}  // namespace

std::string_view kind_name(ProblemKind kind) { return kKindNames[static_cast<int>(kind)]; }

ProblemKind parse_kind(std::string_view name) {
  const std::string key = lower(name);
  for (ProblemKind kind : kAllKinds) {
    if (kind_name(kind) == key) return kind;
  }
  invalid("unknown problem kind '" + std::string(name) + "'");
}

Sense sense_of(ProblemKind kind) {
  return (kind == ProblemKind::OP || kind == ProblemKind::MIS) ? Sense::Maximize
                                                                : Sense::Minimize;
}

bool is_routing(ProblemKind kind) {
  return kind == ProblemKind::TSP || kind == ProblemKind::OP || kind == ProblemKind::CVRP;
}
bool is_graph(ProblemKind kind) { return kind == ProblemKind::MIS || kind == ProblemKind::MVC; }
bool is_scheduling(ProblemKind kind) {
  return kind == ProblemKind::PFSP || kind == ProblemKind::JSSP;
}

const RoutingInstance& Instance::routing() const {
  if (const auto* p = std::get_if<RoutingInstance>(&payload)) return *p;
  invalid("instance '" + id + "' has no routing payload");
}

const GraphInstance& Instance::graph() const {
  if (const auto* p = std::get_if<GraphInstance>(&payload)) return *p;
  invalid("instance '" + id + "' has no graph payload");
}

const SchedulingInstance& Instance::scheduling() const {
  if (const auto* p = std::get_if<SchedulingInstance>(&payload)) return *p;
  invalid("instance '" + id + "' has no scheduling payload");
}

int Instance::size() const {
  return std::visit(
      [](const auto& p) -> int {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RoutingInstance>) return p.size();
        if constexpr (std::is_same_v<T, GraphInstance>) return p.n;
        if constexpr (std::is_same_v<T, SchedulingInstance>) return p.jobs;
      },
      payload);
}

namespace {

void validate_routing(ProblemKind kind, const RoutingInstance& r) {
  const int n = r.size();
  if (n < 2 || n > 1000) invalid("routing instance needs 2..1000 nodes, got " + std::to_string(n));
  if (r.depot < 0 || r.depot >= n) invalid("depot index out of range");
  for (const Point& p : r.coords) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) invalid("non-finite coordinate");
  }
  const bool op = kind == ProblemKind::OP;
  const bool cvrp = kind == ProblemKind::CVRP;
  if (r.prizes.has_value() != op) invalid("prizes must be present exactly for OP");
  if (r.distance_limit.has_value() != op) invalid("distance_limit must be present exactly for OP");
  if (r.demands.has_value() != cvrp || r.capacity.has_value() != cvrp) {
    invalid("demands and capacity must be present exactly for CVRP");
  }
  if (op) {
    if (static_cast<int>(r.prizes->size()) != n) invalid("prizes length differs from node count");
    if ((*r.prizes)[r.depot] != 0) invalid("depot prize must be 0");
    for (int s : *r.prizes) {
      if (s < 0) invalid("negative prize");
    }
    if (!(*r.distance_limit > 0.0) || !std::isfinite(*r.distance_limit)) {
      invalid("distance_limit must be positive");
    }
  }
  if (cvrp) {
    if (static_cast<int>(r.demands->size()) != n) invalid("demands length differs from node count");
    if ((*r.demands)[r.depot] != 0) invalid("depot demand must be 0");
    int max_demand = 0;
    for (int q : *r.demands) {
      if (q < 0) invalid("negative demand");
      max_demand = std::max(max_demand, q);
    }
    if (*r.capacity <= 0) invalid("capacity must be positive");
    if (*r.capacity < max_demand) invalid("capacity below the largest single demand");
  }
}

void validate_graph(const GraphInstance& g) {
  if (g.n < 1) invalid("graph needs at least one node");
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto [u, v] = g.edges[i];
    if (u < 0 || v < 0 || u >= g.n || v >= g.n) invalid("edge endpoint out of range");
    if (u == v) invalid("self-loop on node " + std::to_string(u));
    if (u > v) invalid("edge not normalized (first < second)");
    if (i > 0 && !(g.edges[i - 1] < g.edges[i])) invalid("edges not sorted or duplicated");
  }
}

void validate_scheduling(ProblemKind kind, const SchedulingInstance& s) {
  if (s.jobs < 1 || s.machines < 1) invalid("scheduling instance needs jobs and machines");
  if (static_cast<int>(s.ptimes.size()) != s.jobs) invalid("ptimes row count differs from jobs");
  for (const auto& row : s.ptimes) {
    if (static_cast<int>(row.size()) != s.machines) invalid("ptimes column count differs from machines");
    for (int p : row) {
      if (p < 0) invalid("negative processing time");
    }
  }
  const bool jssp = kind == ProblemKind::JSSP;
  if (s.machine_order.has_value() != jssp) invalid("machine_order must be present exactly for JSSP");
  if (jssp) {
    if (static_cast<int>(s.machine_order->size()) != s.jobs) invalid("machine_order row count");
    for (const auto& row : *s.machine_order) {
      if (static_cast<int>(row.size()) != s.machines) invalid("machine_order column count");
      std::vector<int> sorted = row;
      std::sort(sorted.begin(), sorted.end());
      for (int m = 0; m < s.machines; ++m) {
        if (sorted[m] != m) invalid("machine_order row is not a permutation of machine ids");
      }
    }
  }
}

}  // namespace

void validate(const Instance& inst) {
  if (is_routing(inst.kind)) {
    validate_routing(inst.kind, inst.routing());
  } else if (is_graph(inst.kind)) {
    validate_graph(inst.graph());
  } else {
    validate_scheduling(inst.kind, inst.scheduling());
  }
}

bool solution_matches(ProblemKind kind, const Solution& sol) {
  switch (kind) {
    case ProblemKind::TSP:
    case ProblemKind::OP:
      return std::holds_alternative<Route>(sol);
    case ProblemKind::CVRP:
      return std::holds_alternative<RouteSet>(sol);
    case ProblemKind::MIS:
    case ProblemKind::MVC:
      return std::holds_alternative<VertexSet>(sol);
    case ProblemKind::PFSP:
      return std::holds_alternative<JobOrder>(sol);
    case ProblemKind::JSSP:
      return std::holds_alternative<MachineSchedules>(sol);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Geometry

double euclid(std::span<const Point> coords, int i, int j) {
  const double dx = coords[i].x - coords[j].x;
  const double dy = coords[i].y - coords[j].y;
  return std::sqrt(dx * dx + dy * dy);
}

double nearest_neighbor_tour_length(std::span<const Point> coords, int start) {
  const int n = static_cast<int>(coords.size());
  if (n < 2) invalid("nearest-neighbor tour needs at least 2 nodes");
  if (start < 0 || start >= n) invalid("start node out of range");
  std::vector<char> seen(n, 0);
  seen[start] = 1;
  int cur = start;
  double length = 0.0;
  for (int step = 1; step < n; ++step) {
    int best = -1;
    double best_d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (seen[j]) continue;
      const double d = euclid(coords, cur, j);
      if (best < 0 || d < best_d) {
        best = j;
        best_d = d;
      }
    }
    seen[best] = 1;
    length += best_d;
    cur = best;
  }
  return length + euclid(coords, cur, start);
}

double distance_limit_for_fraction(const RoutingInstance& inst, double u) {
  return u * nearest_neighbor_tour_length(inst.coords, inst.depot);
}

double op_distance_limit(const RoutingInstance& inst, Rng& rng) {
  if (inst.size() < 2) invalid("distance limit needs at least 2 nodes");
  std::uniform_real_distribution<double> frac(0.5, 0.7);
  return distance_limit_for_fraction(inst, frac(rng));
}

int default_capacity(std::span<const int> demands, int depot) {
  const int customers = static_cast<int>(demands.size()) - 1;
  if (customers < 1) return 30;
  long long total = 0;
  for (int i = 0; i < static_cast<int>(demands.size()); ++i) {
    if (i != depot) total += demands[i];
  }
  const double mean = static_cast<double>(total) / customers;
  return std::max(30, static_cast<int>(std::lround(mean * customers / 4.0)));
}

// ---------------------------------------------------------------------------
// Generation

namespace {

int draw(Rng& rng, IntRange r) { return std::uniform_int_distribution<int>(r.lo, r.hi)(rng); }

double to_grid(double v) {
  return static_cast<double>(std::lround(std::clamp(v, double(kCoordMin), double(kCoordMax))));
}

void check_range(IntRange r, int lo, int hi, const char* what) {
  if (r.lo > r.hi) invalid(std::string(what) + " range is empty");
  if (r.lo < lo || r.hi > hi) {
    invalid(std::string(what) + " range must lie within [" + std::to_string(lo) + "," +
            std::to_string(hi) + "]");
  }
}

std::vector<Point> uniform_coords(int n, Rng& rng) {
  std::uniform_int_distribution<int> coord(kCoordMin, kCoordMax);
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    p.x = coord(rng);
    p.y = coord(rng);
  }
  return pts;
}

std::vector<Point> gaussian_mixture_coords(int n, int clusters, int scale, Rng& rng) {
  std::uniform_int_distribution<int> coord(kCoordMin, kCoordMax);
  std::vector<Point> centers(clusters);
  for (Point& c : centers) {
    c.x = coord(rng);
    c.y = coord(rng);
  }
  std::uniform_int_distribution<int> pick(0, clusters - 1);
  std::normal_distribution<double> offset(0.0, double(kCoordMax) / (2.0 * scale));
  std::vector<Point> pts(n);
  for (Point& p : pts) {
    const Point& c = centers[pick(rng)];
    p.x = to_grid(c.x + offset(rng));
    p.y = to_grid(c.y + offset(rng));
  }
  return pts;
}

std::vector<Point> gen_coords(int n, const GenConfig& cfg, Rng& rng) {
  switch (cfg.distribution) {
    case Distribution::Uniform:
      return uniform_coords(n, rng);
    case Distribution::GaussianMixture:
      return gaussian_mixture_coords(n, cfg.gm_clusters, cfg.gm_scale, rng);
    case Distribution::Clustered:
      return sample_clustered(n, rng).points;
    case Distribution::Mixed: {
      const int uniform_part = (n + 1) / 2;
      std::vector<Point> pts = uniform_coords(uniform_part, rng);
      std::vector<Point> rest = sample_clustered(n - uniform_part, rng).points;
      pts.insert(pts.end(), rest.begin(), rest.end());
      return pts;
    }
  }
  invalid("unknown distribution");
}

std::string distribution_label(const GenConfig& cfg) {
  switch (cfg.distribution) {
    case Distribution::Uniform:
      return "uniform";
    case Distribution::GaussianMixture:
      return "gm(c=" + std::to_string(cfg.gm_clusters) + ",l=" + std::to_string(cfg.gm_scale) + ")";
    case Distribution::Clustered:
      return "clustered";
    case Distribution::Mixed:
      return "mixed";
  }
  return "unknown";
}

GraphInstance erdos_renyi(int n, double p, Rng& rng) {
  GraphInstance g;
  g.n = n;
  std::bernoulli_distribution coin(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

// Preferential attachment seeded with a star on m + 1 nodes; each new node
// attaches to m distinct targets drawn from the degree-weighted node list.
GraphInstance barabasi_albert(int n, int m, Rng& rng) {
  GraphInstance g;
  g.n = n;
  std::vector<int> repeated;
  for (int v = 1; v <= m; ++v) {
    g.edges.emplace_back(0, v);
    repeated.push_back(0);
    repeated.push_back(v);
  }
  for (int source = m + 1; source < n; ++source) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < m) {
      std::uniform_int_distribution<std::size_t> pick(0, repeated.size() - 1);
      targets.insert(repeated[pick(rng)]);
    }
    for (int t : targets) {
      g.edges.emplace_back(t, source);
      repeated.push_back(t);
      repeated.push_back(source);
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace

ClusteredSample sample_clustered(int count, Rng& rng) {
  ClusteredSample out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> centroids(kClusterCount);
  for (Point& c : centroids) {
    c.x = unit(rng);
    c.y = unit(rng);
  }
  const double span = kCoordMax - kCoordMin;
  std::uniform_int_distribution<int> pick(0, kClusterCount - 1);
  std::normal_distribution<double> offset(0.0, kClusterSigma);
  out.points.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Point& c = centroids[pick(rng)];
    const double x = std::clamp(c.x + offset(rng), 0.0, 1.0);
    const double y = std::clamp(c.y + offset(rng), 0.0, 1.0);
    out.points.push_back({to_grid(kCoordMin + x * span), to_grid(kCoordMin + y * span)});
  }
  for (const Point& c : centroids) {
    out.centroids.push_back({kCoordMin + c.x * span, kCoordMin + c.y * span});
  }
  return out;
}

Instance gen_instance(ProblemKind kind, const GenConfig& cfg) {
  Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(kind)));
  Instance inst;
  inst.kind = kind;
  inst.seed = cfg.seed;

  if (is_routing(kind)) {
    check_range(cfg.size_range, 2, 1000, "size");
    if (cfg.distribution == Distribution::GaussianMixture &&
        (cfg.gm_clusters < 1 || cfg.gm_scale < 1)) {
      invalid("gaussian mixture needs c >= 1 and l >= 1");
    }
    const int n = draw(rng, cfg.size_range);
    RoutingInstance r;
    r.coords = gen_coords(n, cfg, rng);
    r.depot = 0;
    if (kind == ProblemKind::OP) {
      std::uniform_int_distribution<int> prize(1, 10);
      r.prizes = std::vector<int>(n, 0);
      for (int i = 1; i < n; ++i) (*r.prizes)[i] = prize(rng);
      r.distance_limit = op_distance_limit(r, rng);
    } else if (kind == ProblemKind::CVRP) {
      std::uniform_int_distribution<int> demand(1, 10);
      r.demands = std::vector<int>(n, 0);
      for (int i = 1; i < n; ++i) (*r.demands)[i] = demand(rng);
      r.capacity = cfg.capacity.value_or(default_capacity(*r.demands));
      const int max_demand = *std::max_element(r.demands->begin(), r.demands->end());
      if (*r.capacity < max_demand) invalid("capacity below the largest single demand");
    }
    inst.meta["distribution"] = distribution_label(cfg);
    inst.id = std::string(kind_name(kind)) + "-n" + std::to_string(n) + "-s" +
              std::to_string(cfg.seed);
    inst.payload = std::move(r);
  } else if (is_graph(kind)) {
    check_range(cfg.size_range, 1, 100000, "size");
    if (cfg.distribution != Distribution::Uniform) {
      invalid("coordinate distributions do not apply to graph problems");
    }
    if (cfg.er_p.lo > cfg.er_p.hi || cfg.er_p.lo < 0.0 || cfg.er_p.hi > 1.0) {
      invalid("ER edge probability range must lie within [0,1]");
    }
    if (cfg.ba_m.lo > cfg.ba_m.hi || cfg.ba_m.lo < 1) invalid("BA attachment range invalid");
    const int n = draw(rng, cfg.size_range);
    GraphFamily family = cfg.graph_family;
    if (family == GraphFamily::Any) {
      family = std::bernoulli_distribution(0.5)(rng) ? GraphFamily::ErdosRenyi
                                                     : GraphFamily::BarabasiAlbert;
    }
    if (family == GraphFamily::ErdosRenyi) {
      const double p = std::uniform_real_distribution<double>(cfg.er_p.lo, cfg.er_p.hi)(rng);
      inst.payload = erdos_renyi(n, p, rng);
      inst.meta["graph_family"] = "er";
      inst.meta["er_p"] = format_fixed(p, 6);
    } else {
      // Small graphs cap m at n - 1 so a default range stays usable.
      if (cfg.ba_m.lo >= n) invalid("BA attachment m must be smaller than the node count");
      const int m = draw(rng, {cfg.ba_m.lo, std::min(cfg.ba_m.hi, n - 1)});
      inst.payload = barabasi_albert(n, m, rng);
      inst.meta["graph_family"] = "ba";
      inst.meta["ba_m"] = std::to_string(m);
    }
    inst.id = std::string(kind_name(kind)) + "-n" + std::to_string(n) + "-s" +
              std::to_string(cfg.seed);
  } else {
    check_range(cfg.jobs_range, 1, 1000, "jobs");
    check_range(cfg.machines_range, 1, 1000, "machines");
    if (cfg.distribution != Distribution::Uniform) {
      invalid("coordinate distributions do not apply to scheduling problems");
    }
    SchedulingInstance s;
    s.jobs = draw(rng, cfg.jobs_range);
    s.machines = draw(rng, cfg.machines_range);
    std::uniform_int_distribution<int> ptime(1, 100);
    s.ptimes.assign(s.jobs, std::vector<int>(s.machines));
    for (auto& row : s.ptimes) {
      for (int& p : row) p = ptime(rng);
    }
    if (kind == ProblemKind::JSSP) {
      s.machine_order.emplace(s.jobs, std::vector<int>(s.machines));
      for (auto& row : *s.machine_order) {
        std::iota(row.begin(), row.end(), 0);
        std::shuffle(row.begin(), row.end(), rng);
      }
    }
    inst.id = std::string(kind_name(kind)) + "-" + std::to_string(s.jobs) + "x" +
              std::to_string(s.machines) + "-s" + std::to_string(cfg.seed);
    inst.payload = std::move(s);
  }
  return inst;
}

}  // namespace cobench
