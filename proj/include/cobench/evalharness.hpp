#pragma once

// Best-of-N selection, metrics, batch evaluation of completion endpoints and
// supervised dataset export.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobench/problems.hpp"
#include "cobench/serialize.hpp"
#include "cobench/tai.hpp"
#include "cobench/verify.hpp"

namespace cobench {

// ---------------------------------------------------------------------------
// Endpoints

struct EndpointConfig {
  std::string base_url;  // "http(s)://host[:port]/v1" or "mock://"
  std::string model_name;
  double temperature = 0.0;
  double top_p = 0.7;
  int max_tokens = 4096;
  int n_samples = 1;
  double timeout_seconds = 120.0;
  int max_parallel = 4;
  int retries = 3;
  double backoff_seconds = 1.0;
  std::string api_key_env = "OPENAI_API_KEY";
  bool provider_sampling = false;  // ask for n choices in one request
};

/// Throws InvalidArgument.
void validate(const EndpointConfig& cfg);

struct CompletionRequest {
  std::string instance_id;
  std::string prompt;
  int n = 1;
  std::uint64_t seed = 0;
};

/// Returns n completions or throws EndpointError. Must be thread-safe.
class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::vector<std::string> complete(const CompletionRequest& request) = 0;
};

/// Chat-completions over HTTP(S). Credentials come from cfg.api_key_env.
std::unique_ptr<CompletionClient> make_http_client(const EndpointConfig& cfg);

/// Drops provider-marked reasoning blocks (<think>...</think>).
std::string strip_reasoning(std::string_view text);

// ---------------------------------------------------------------------------
// Mock policy

struct MockPolicyConfig {
  double infeasible_prob = 0.0;
  int swaps = 0;  // feasibility-preserving perturbations of the reference
  double format_fail_prob = 0.0;
  std::uint64_t seed = 0;
};

void validate(const MockPolicyConfig& cfg);

/// Prose with format_fail_prob; otherwise a guaranteed-infeasible corruption
/// with infeasible_prob; otherwise the reference after `swaps` perturbations
/// that keep it feasible. Deterministic given cfg.seed.
std::string mock_policy(const Instance& inst, const Solution& reference, const MockPolicyConfig& cfg);

/// Serves mock_policy answers for known instances. Candidate i of a request
/// uses seed mix(mix(cfg.seed, request.seed, id), i), so a request for n
/// answers is a prefix of a request for more.
class MockClient : public CompletionClient {
 public:
  MockClient(MockPolicyConfig cfg, std::map<std::string, std::pair<Instance, Solution>> known);
  std::vector<std::string> complete(const CompletionRequest& request) override;

 private:
  MockPolicyConfig cfg_;
  std::map<std::string, std::pair<Instance, Solution>> known_;
};

// ---------------------------------------------------------------------------
// Records and metrics

enum class SizeTier { Small, Medium, Large };
std::string_view tier_name(SizeTier tier);
/// Node kinds: <= 30 small, <= 60 medium. Scheduling: max(J, M) <= 10
/// small, <= 15 medium.
SizeTier size_tier(const Instance& inst);

struct Candidate {
  std::string raw_text;
  ParsedSolution parsed;
  FeasibilityReport report;
  std::optional<double> objective;  // recomputed, never the stated one
};

/// Parses, checks and scores one raw answer.
Candidate assess(const Instance& inst, std::string raw_text);

struct EvalRecord {
  std::string instance_id;
  ProblemKind kind = ProblemKind::TSP;
  SizeTier tier = SizeTier::Small;
  std::vector<Candidate> candidates;
  std::optional<std::size_t> selected;
  double reference = 0.0;
  std::optional<double> gap;
  double wall_ms = 0.0;
  std::string error;
};

/// Index of the best feasible candidate; ties to the lowest index. Throws
/// InvalidArgument for an empty list.
std::optional<std::size_t> bon_select(ProblemKind kind, std::span<const Candidate> candidates);

/// Relative gap as a fraction: (v - ref) / |ref| for minimization kinds,
/// (ref - v) / ref for OP and MIS. A zero reference gives |v - ref|.
double optimality_gap(double value, double reference, ProblemKind kind);

inline constexpr int kGapThresholds[] = {1, 5, 10};

struct TierMetrics {
  std::size_t records = 0;
  double feasibility_rate = 0.0;
  std::optional<double> mean_gap;
};

struct MetricsSummary {
  std::size_t records = 0;
  std::size_t feasible_records = 0;
  double feasibility_rate = 0.0;
  std::optional<double> mean_gap;  // fraction
  std::optional<double> gap_std;   // population
  std::map<int, double> gap_at_k;  // K percent -> fraction of all records
  std::map<SizeTier, TierMetrics> tiers;
};

/// Throws InvalidArgument when a record has no finite reference.
MetricsSummary metrics(std::span<const EvalRecord> records);

// ---------------------------------------------------------------------------
// Batch evaluation

struct EvalItem {
  Instance instance;
  double reference = 0.0;
};

struct EvalOptions {
  int n_samples = 1;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string results_path;  // JSONL; completed records are reused
  int repeats = 1;           // > 1 keeps the best of independent runs
};

/// One record per item, in item order. Endpoint failures become records with
/// no candidates and an error message; they never abort the batch.
std::vector<EvalRecord> evaluate_endpoint(CompletionClient& client, std::span<const EvalItem> items,
                                          const EvalOptions& opts);

ordered_json record_to_json(const EvalRecord& rec);
/// Rebuilds a record from its raw texts; derived fields are recomputed.
EvalRecord record_from_json(const nlohmann::json& doc, const Instance& inst);

ordered_json summary_to_json(const MetricsSummary& summary);
MetricsSummary summary_from_json(const nlohmann::json& doc);
/// Plain-text tables: overall metrics, Gap@K and per-tier rows.
std::string render_summary(const MetricsSummary& summary);

// ---------------------------------------------------------------------------
// Supervised dataset

struct LabeledPair {
  Instance instance;
  Solution solution;
  double objective = 0.0;
};

/// One JSON object per line: instruction, input, output, kind, instance_id.
/// Throws ValidationError naming the failed constraints of any infeasible
/// label.
std::string export_sft_dataset(std::span<const LabeledPair> pairs, int k = 2);

}  // namespace cobench
