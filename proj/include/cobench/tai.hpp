#pragma once

// Text boundary: instances rendered as text-attributed instances (TAIs) with
// heuristic features, and model text parsed back into solutions.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cobench/problems.hpp"

namespace cobench {

/// Expected answer shape; every grammar ends with ", Objective: <number>".
enum class OutputGrammar { Route, Routes, Set, Order, Schedule };

OutputGrammar grammar_for(ProblemKind kind);
std::string_view grammar_label(OutputGrammar grammar);

struct TextAttributedInstance {
  std::string instruction;
  std::string input;
  OutputGrammar expected_output_grammar = OutputGrammar::Route;
};

/// One (entity id, value) pair of a heuristic feature list.
struct Feature {
  int id = 0;
  double value = 0.0;
  friend bool operator==(const Feature&, const Feature&) = default;
};

using FeatureTable = std::vector<std::vector<Feature>>;

/// k nearest neighbors per node, ascending by distance, ties to the lower id.
/// Uses a k-d tree above kSpatialIndexThreshold nodes.
FeatureTable nearest_neighbor_features(std::span<const Point> coords, int k);
FeatureTable nearest_neighbor_features_exhaustive(std::span<const Point> coords, int k);
FeatureTable nearest_neighbor_features_kdtree(std::span<const Point> coords, int k);
inline constexpr int kSpatialIndexThreshold = 64;

/// Up to k neighbors per node with the largest degrees (value = degree),
/// ties to the lower id.
FeatureTable degree_features(const GraphInstance& graph, int k);

TextAttributedInstance encode(const Instance& inst, int k = 2);

/// Result of reading a solution out of model text. format_ok is the
/// format-conformance flag; it says nothing about feasibility.
struct ParsedSolution {
  std::optional<Solution> solution;
  std::optional<double> stated_objective;
  bool format_ok = false;
};

/// Never throws. Takes the last well-formed answer in `text`; accepts both
/// "Route:" and "Routes:" for routing kinds. PFSP orders are read 1-based.
ParsedSolution parse(std::string_view text, ProblemKind kind);

/// Inverse of parse. Routing objectives use 2 decimals, the others are
/// printed as integers. PFSP jobs are shown 1-based.
/// Throws InvalidArgument when the solution alternative does not match kind.
std::string format_solution(const Solution& sol, double objective, ProblemKind kind);

inline constexpr std::string_view kPromptTemplateVersion = "alpaca-co-v1";

/// Alpaca-style prompt with an empty response section.
std::string render_prompt(const TextAttributedInstance& tai);

}  // namespace cobench
