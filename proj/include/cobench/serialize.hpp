#pragma once

// Native structured-text documents: instance files and reference-solution
// files. Field order is fixed so that byte comparison is meaningful.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobench/problems.hpp"

namespace cobench {

inline constexpr int kInstanceSchemaVersion = 1;
inline constexpr std::string_view kToolName = "cobench";
inline constexpr std::string_view kToolVersion = "0.1.0";

using ordered_json = nlohmann::ordered_json;

/// Who produced an artifact and how.
struct Provenance {
  std::string command;
  std::optional<std::uint64_t> seed;
};

ordered_json provenance_to_json(const Provenance& prov);

ordered_json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& doc);

/// Pretty-printed instance document with a trailing newline.
std::string write_instance(const Instance& inst, const Provenance* prov = nullptr);
/// Throws ParseError on malformed documents, InvalidArgument on invalid data.
Instance read_instance(std::string_view text);

ordered_json solution_to_json(const Solution& sol);
Solution solution_from_json(const nlohmann::json& doc);

/// source is "oracle", "imported" or "heuristic:<name>".
struct ReferenceSolution {
  std::string instance_id;
  ProblemKind kind = ProblemKind::TSP;
  Solution solution;
  double objective = 0.0;
  std::string source = "imported";
};

ordered_json reference_to_json(const ReferenceSolution& ref, const Provenance* prov = nullptr);
ReferenceSolution reference_from_json(const nlohmann::json& doc);

/// One JSON object per line.
std::string write_references(const std::vector<ReferenceSolution>& refs,
                             const Provenance* prov = nullptr);
/// Accepts JSON lines or a single (possibly pretty-printed) object.
std::vector<ReferenceSolution> read_references(std::string_view text);

}  // namespace cobench
