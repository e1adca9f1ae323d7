#include "cobench/serialize.hpp"

#include <sstream>

#include "cobench/error.hpp"

namespace cobench {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

template <typename T>
T field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) bad(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    bad(std::string("bad field '") + key + "': " + e.what());
  }
}

// Integral coordinates are written as integers so generated files read
// naturally; json keeps doubles round-trip exact otherwise.
ordered_json coord_value(double v) {
  if (v == static_cast<double>(static_cast<long long>(v))) return static_cast<long long>(v);
  return v;
}

ordered_json routing_payload(const RoutingInstance& r) {
  ordered_json p;
  ordered_json coords = ordered_json::array();
  for (const Point& pt : r.coords) coords.push_back({coord_value(pt.x), coord_value(pt.y)});
  p["coords"] = std::move(coords);
  p["depot"] = r.depot;
  if (r.prizes) p["prizes"] = *r.prizes;
  if (r.distance_limit) p["distance_limit"] = *r.distance_limit;
  if (r.demands) p["demands"] = *r.demands;
  if (r.capacity) p["capacity"] = *r.capacity;
  return p;
}

RoutingInstance routing_from(const json& p) {
  RoutingInstance r;
  for (const auto& c : field<json>(p, "coords")) {
    if (!c.is_array() || c.size() != 2) bad("coordinate must be a pair");
    r.coords.push_back({c[0].get<double>(), c[1].get<double>()});
  }
  r.depot = p.value("depot", 0);
  if (p.contains("prizes")) r.prizes = field<std::vector<int>>(p, "prizes");
  if (p.contains("distance_limit")) r.distance_limit = field<double>(p, "distance_limit");
  if (p.contains("demands")) r.demands = field<std::vector<int>>(p, "demands");
  if (p.contains("capacity")) r.capacity = field<int>(p, "capacity");
  return r;
}

ordered_json graph_payload(const GraphInstance& g) {
  ordered_json p;
  p["n"] = g.n;
  ordered_json edges = ordered_json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  p["edges"] = std::move(edges);
  return p;
}

GraphInstance graph_from(const json& p) {
  GraphInstance g;
  g.n = field<int>(p, "n");
  for (const auto& e : field<json>(p, "edges")) {
    if (!e.is_array() || e.size() != 2) bad("edge must be a pair");
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

ordered_json scheduling_payload(const SchedulingInstance& s) {
  ordered_json p;
  p["jobs"] = s.jobs;
  p["machines"] = s.machines;
  p["ptimes"] = s.ptimes;
  if (s.machine_order) p["machine_order"] = *s.machine_order;
  return p;
}

SchedulingInstance scheduling_from(const json& p) {
  SchedulingInstance s;
  s.jobs = field<int>(p, "jobs");
  s.machines = field<int>(p, "machines");
  s.ptimes = field<std::vector<std::vector<int>>>(p, "ptimes");
  if (p.contains("machine_order")) {
    s.machine_order = field<std::vector<std::vector<int>>>(p, "machine_order");
  }
  return s;
}

}  // namespace

ordered_json provenance_to_json(const Provenance& prov) {
  ordered_json p;
  p["tool"] = kToolName;
  p["version"] = kToolVersion;
  p["command"] = prov.command;
  if (prov.seed) {
    p["seed"] = *prov.seed;
  } else {
    p["seed"] = nullptr;
  }
  return p;
}

ordered_json instance_to_json(const Instance& inst) {
  ordered_json doc;
  doc["schema_version"] = kInstanceSchemaVersion;
  doc["kind"] = kind_name(inst.kind);
  doc["id"] = inst.id;
  if (inst.seed) {
    doc["seed"] = *inst.seed;
  } else {
    doc["seed"] = nullptr;
  }
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : inst.meta) meta[k] = v;  // std::map: sorted keys
  doc["meta"] = std::move(meta);
  doc["payload"] = std::visit(
      [](const auto& p) -> ordered_json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RoutingInstance>) return routing_payload(p);
        if constexpr (std::is_same_v<T, GraphInstance>) return graph_payload(p);
        if constexpr (std::is_same_v<T, SchedulingInstance>) return scheduling_payload(p);
      },
      inst.payload);
  return doc;
}

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) bad("instance document must be an object");
  const int version = field<int>(doc, "schema_version");
  if (version != kInstanceSchemaVersion) {
    bad("unsupported schema_version " + std::to_string(version));
  }
  Instance inst;
  try {
    inst.kind = parse_kind(field<std::string>(doc, "kind"));
  } catch (const InvalidArgument& e) {
    bad(e.what());
  }
  inst.id = field<std::string>(doc, "id");
  if (doc.contains("seed") && !doc.at("seed").is_null()) inst.seed = field<std::uint64_t>(doc, "seed");
  if (doc.contains("meta")) {
    for (const auto& [k, v] : doc.at("meta").items()) {
      inst.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  const json& payload = field<json>(doc, "payload");
  try {
    if (is_routing(inst.kind)) {
      inst.payload = routing_from(payload);
    } else if (is_graph(inst.kind)) {
      inst.payload = graph_from(payload);
    } else {
      inst.payload = scheduling_from(payload);
    }
  } catch (const json::exception& e) {
    bad(std::string("malformed payload: ") + e.what());
  }
  validate(inst);
  return inst;
}

std::string write_instance(const Instance& inst, const Provenance* prov) {
  ordered_json doc = instance_to_json(inst);
  if (prov) doc["provenance"] = provenance_to_json(*prov);
  return doc.dump(2) + "\n";
}

Instance read_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("instance document is not valid JSON: ") + e.what());
  }
  return instance_from_json(doc);
}

// ---------------------------------------------------------------------------
// Solutions

ordered_json solution_to_json(const Solution& sol) {
  ordered_json doc;
  std::visit(
      [&doc](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Route>) {
          doc["type"] = "route";
          doc["nodes"] = s.nodes;
        } else if constexpr (std::is_same_v<T, RouteSet>) {
          doc["type"] = "routes";
          doc["routes"] = s.routes;
        } else if constexpr (std::is_same_v<T, VertexSet>) {
          doc["type"] = "set";
          doc["vertices"] = s.vertices;
        } else if constexpr (std::is_same_v<T, JobOrder>) {
          doc["type"] = "order";
          doc["jobs"] = s.jobs;
        } else {
          doc["type"] = "schedule";
          doc["machines"] = s.machines;
        }
      },
      sol);
  return doc;
}

Solution solution_from_json(const json& doc) {
  const std::string type = field<std::string>(doc, "type");
  try {
    if (type == "route") return Route{field<std::vector<int>>(doc, "nodes")};
    if (type == "routes") return RouteSet{field<std::vector<std::vector<int>>>(doc, "routes")};
    if (type == "set") return VertexSet{field<std::vector<int>>(doc, "vertices")};
    if (type == "order") return JobOrder{field<std::vector<int>>(doc, "jobs")};
    if (type == "schedule") {
      return MachineSchedules{field<std::vector<std::vector<int>>>(doc, "machines")};
    }
  } catch (const json::exception& e) {
    bad(std::string("malformed solution: ") + e.what());
  }
  bad("unknown solution type '" + type + "'");
}

ordered_json reference_to_json(const ReferenceSolution& ref, const Provenance* prov) {
  ordered_json doc;
  doc["instance_id"] = ref.instance_id;
  doc["kind"] = kind_name(ref.kind);
  doc["solution"] = solution_to_json(ref.solution);
  doc["objective"] = ref.objective;
  doc["source"] = ref.source;
  if (prov) doc["provenance"] = provenance_to_json(*prov);
  return doc;
}

ReferenceSolution reference_from_json(const json& doc) {
  ReferenceSolution ref;
  ref.instance_id = field<std::string>(doc, "instance_id");
  try {
    ref.kind = parse_kind(field<std::string>(doc, "kind"));
  } catch (const InvalidArgument& e) {
    bad(e.what());
  }
  ref.solution = solution_from_json(field<json>(doc, "solution"));
  ref.objective = field<double>(doc, "objective");
  ref.source = field<std::string>(doc, "source");
  if (ref.source != "oracle" && ref.source != "imported" && ref.source.rfind("heuristic:", 0) != 0) {
    bad("unknown reference source '" + ref.source + "'");
  }
  if (!solution_matches(ref.kind, ref.solution)) bad("reference solution type does not match kind");
  return ref;
}

std::string write_references(const std::vector<ReferenceSolution>& refs, const Provenance* prov) {
  std::string out;
  for (const auto& ref : refs) out += reference_to_json(ref, prov).dump() + "\n";
  return out;
}

std::vector<ReferenceSolution> read_references(std::string_view text) {
  std::vector<ReferenceSolution> refs;
  // A whole-document parse covers the single pretty-printed object case.
  try {
    json doc = json::parse(text);
    if (doc.is_array()) {
      for (const auto& d : doc) refs.push_back(reference_from_json(d));
    } else {
      refs.push_back(reference_from_json(doc));
    }
    return refs;
  } catch (const json::parse_error&) {
  }
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      refs.push_back(reference_from_json(json::parse(line)));
    } catch (const json::parse_error& e) {
      bad("reference line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return refs;
}

}  // namespace cobench
