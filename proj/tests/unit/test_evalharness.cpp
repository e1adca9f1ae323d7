#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>

#include "cobench/error.hpp"
#include "cobench/evalharness.hpp"
#include "cobench/heuristics.hpp"
#include "golden.hpp"

using namespace cobench;
namespace fs = std::filesystem;

namespace {

Candidate fake(bool feasible, double value) {
  Candidate c;
  c.report.zeta = true;
  c.report.feasible = feasible;
  c.objective = value;
  return c;
}

EvalRecord record_with_gap(std::optional<double> gap) {
  EvalRecord r;
  r.reference = 100;
  r.kind = ProblemKind::TSP;
  if (gap) {
    r.candidates.push_back(fake(true, 100 * (1 + *gap)));
    r.selected = 0;
    r.gap = gap;
  } else {
    r.candidates.push_back(fake(false, 0));
  }
  return r;
}

class ScriptedClient : public CompletionClient {
 public:
  explicit ScriptedClient(std::function<std::vector<std::string>(const CompletionRequest&)> fn) : fn_(std::move(fn)) {}
  std::vector<std::string> complete(const CompletionRequest& request) override {
    ++calls;
    return fn_(request);
  }
  std::atomic<int> calls{0};

 private:
  std::function<std::vector<std::string>(const CompletionRequest&)> fn_;
};

struct Batch {
  std::vector<EvalItem> items;
  std::map<std::string, std::pair<Instance, Solution>> known;
};

Batch batch(int count, std::uint64_t seed) {
  Batch b;
  for (int i = 0; i < count; ++i) {
    const ProblemKind kind = kAllKinds[i % kAllKinds.size()];
    GenConfig cfg;
    cfg.seed = seed + i;
    cfg.size_range = {10, 30};
    cfg.jobs_range = {5, 8};
    cfg.machines_range = {5, 8};
    Instance inst = gen_instance(kind, cfg);
    inst.id += "-" + std::to_string(i);
    const Solution sol = solve(inst, methods_for(kind).front());
    b.items.push_back({inst, objective(inst, sol).value});
    b.known.emplace(inst.id, std::make_pair(inst, sol));
  }
  return b;
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cobench-tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("best-of-N selection") {
  std::vector<Candidate> c = {fake(true, 10), fake(false, 5), fake(true, 8)};
  CHECK(bon_select(ProblemKind::TSP, c) == 2u);
  CHECK(bon_select(ProblemKind::OP, c) == 0u);
  std::vector<Candidate> none = {fake(false, 1), fake(false, 2)};
  CHECK_FALSE(bon_select(ProblemKind::TSP, none).has_value());
  std::vector<Candidate> single = {fake(true, 3)};
  CHECK(bon_select(ProblemKind::TSP, single) == 0u);
  std::vector<Candidate> ties = {fake(false, 1), fake(true, 4), fake(true, 4)};
  CHECK(bon_select(ProblemKind::TSP, ties) == 1u);
  CHECK_THROWS_AS(bon_select(ProblemKind::TSP, std::vector<Candidate>{}), InvalidArgument);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    std::vector<Candidate> pool;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) pool.push_back(fake(rng() % 2, static_cast<double>(rng() % 50)));
    const auto pick = bon_select(ProblemKind::MIS, pool);
    if (pick) CHECK(pool[*pick].report.feasible);
  }
}

TEST_CASE("metrics counting") {
  const std::vector<EvalRecord> three = {record_with_gap(0.005), record_with_gap(0.03), record_with_gap(0.12)};
  const auto m = metrics(three);
  CHECK(m.feasibility_rate == 1.0);
  CHECK(m.gap_at_k.at(1) == doctest::Approx(1.0 / 3));
  CHECK(m.gap_at_k.at(5) == doctest::Approx(2.0 / 3));
  CHECK(m.gap_at_k.at(10) == doctest::Approx(2.0 / 3));
  CHECK(*m.mean_gap == doctest::Approx((0.005 + 0.03 + 0.12) / 3));

  const auto none = metrics(std::vector<EvalRecord>{record_with_gap(std::nullopt)});
  CHECK(none.feasibility_rate == 0.0);
  CHECK_FALSE(none.mean_gap.has_value());

  const auto half = metrics(std::vector<EvalRecord>{record_with_gap(0.0), record_with_gap(std::nullopt)});
  CHECK(half.feasibility_rate == 0.5);
  CHECK(half.gap_at_k.at(1) == 0.5);

  EvalRecord bad = record_with_gap(0.0);
  bad.reference = std::nan("");
  CHECK_THROWS_AS(metrics(std::vector<EvalRecord>{bad}), InvalidArgument);
}

TEST_CASE("gaps and size tiers") {
  CHECK(optimality_gap(110, 100, ProblemKind::TSP) == doctest::Approx(0.1));
  CHECK(optimality_gap(90, 100, ProblemKind::OP) == doctest::Approx(0.1));
  CHECK(optimality_gap(5, 6, ProblemKind::MIS) == doctest::Approx(1.0 / 6));
  CHECK(optimality_gap(2, 0, ProblemKind::MVC) == 2.0);

  GenConfig cfg;
  cfg.size_range = {30, 30};
  CHECK(size_tier(gen_instance(ProblemKind::TSP, cfg)) == SizeTier::Small);
  cfg.size_range = {31, 31};
  CHECK(size_tier(gen_instance(ProblemKind::TSP, cfg)) == SizeTier::Medium);
  cfg.size_range = {61, 61};
  CHECK(size_tier(gen_instance(ProblemKind::MIS, cfg)) == SizeTier::Large);
  cfg.jobs_range = {10, 10};
  cfg.machines_range = {11, 11};
  CHECK(size_tier(gen_instance(ProblemKind::PFSP, cfg)) == SizeTier::Medium);
}

TEST_CASE("mock policy") {
  const Batch b = batch(14, 3);
  for (const auto& item : b.items) {
    const auto& [inst, sol] = b.known.at(item.instance.id);
    CHECK(mock_policy(inst, sol, {}) == format_solution(sol, item.reference, inst.kind));

    MockPolicyConfig prose;
    prose.format_fail_prob = 1.0;
    CHECK_FALSE(assess(inst, mock_policy(inst, sol, prose)).parsed.format_ok);

    MockPolicyConfig broken;
    broken.infeasible_prob = 1.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      broken.seed = s;
      const Candidate c = assess(inst, mock_policy(inst, sol, broken));
      CHECK(c.parsed.format_ok);
      CHECK_FALSE(c.report.feasible);
    }

    MockPolicyConfig shuffled;
    shuffled.swaps = 3;
    shuffled.seed = 4;
    CHECK(mock_policy(inst, sol, shuffled) == mock_policy(inst, sol, shuffled));
    CHECK(assess(inst, mock_policy(inst, sol, shuffled)).report.feasible);
  }
  MockPolicyConfig bad;
  bad.infeasible_prob = 1.5;
  CHECK_THROWS_AS(validate(bad), InvalidArgument);
}

TEST_CASE("mock infeasibility rate concentrates") {
  const Batch b = batch(1000, 40);
  MockPolicyConfig cfg;
  cfg.infeasible_prob = 0.5;
  cfg.seed = 11;
  MockClient client(cfg, b.known);
  const auto m = metrics(evaluate_endpoint(client, b.items, {}));
  CHECK(m.feasibility_rate >= 0.45);
  CHECK(m.feasibility_rate <= 0.55);
}

TEST_CASE("echo endpoint and prose endpoint") {
  const Batch b = batch(21, 7);
  MockClient echo({}, b.known);
  const auto m = metrics(evaluate_endpoint(echo, b.items, {}));
  CHECK(m.feasibility_rate == 1.0);
  CHECK(*m.mean_gap == 0.0);

  ScriptedClient prose([](const CompletionRequest& r) { return std::vector<std::string>(r.n, "I am not sure."); });
  EvalOptions opts;
  opts.n_samples = 3;
  const auto records = evaluate_endpoint(prose, b.items, opts);
  for (const auto& r : records) {
    REQUIRE(r.candidates.size() == 3);
    for (const auto& c : r.candidates) CHECK_FALSE(c.report.zeta);
  }
  CHECK(metrics(records).feasibility_rate == 0.0);
}

TEST_CASE("endpoint failures stay per instance") {
  const Batch b = batch(6, 9);
  MockClient echo({}, b.known);
  ScriptedClient flaky([&](const CompletionRequest& r) {
    if (r.instance_id == b.items[2].instance.id) throw EndpointError("HTTP 500");
    return echo.complete(r);
  });
  EvalOptions opts;
  opts.jobs = 3;
  const auto records = evaluate_endpoint(flaky, b.items, opts);
  REQUIRE(records.size() == 6);
  CHECK(records[2].candidates.empty());
  CHECK(records[2].error == "HTTP 500");
  CHECK_FALSE(records[2].selected.has_value());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].instance_id == b.items[i].instance.id);
    if (i != 2) CHECK(records[i].selected.has_value());
  }
}

TEST_CASE("results file makes runs resumable") {
  const Batch b = batch(10, 21);
  const fs::path path = temp_file("resume.jsonl");
  MockPolicyConfig cfg;
  cfg.infeasible_prob = 0.3;
  cfg.swaps = 2;
  MockClient mock(cfg, b.known);
  ScriptedClient counting([&](const CompletionRequest& r) { return mock.complete(r); });
  EvalOptions opts;
  opts.n_samples = 4;
  opts.results_path = path.string();
  opts.seed = 5;

  std::vector<EvalItem> first(b.items.begin(), b.items.begin() + 4);
  evaluate_endpoint(counting, first, opts);
  CHECK(counting.calls == 4);
  const auto full = evaluate_endpoint(counting, b.items, opts);
  CHECK(counting.calls == 10);
  const auto again = evaluate_endpoint(counting, b.items, opts);
  CHECK(counting.calls == 10);
  for (std::size_t i = 0; i < full.size(); ++i) {
    CHECK(record_to_json(full[i]).dump() == record_to_json(again[i]).dump());
  }

  // A torn final line is redone; a torn middle line is an error.
  {
    std::ofstream out(path, std::ios::app);
    out << "{\"instance_id\": \"trunc";
  }
  CHECK_NOTHROW(evaluate_endpoint(counting, b.items, opts));
  const fs::path broken = temp_file("broken.jsonl");
  {
    std::ofstream out(broken);
    out << "{oops\n{\"instance_id\": \"x\", \"reference\": 1, \"candidates\": []}\n";
  }
  opts.results_path = broken.string();
  CHECK_THROWS_AS(evaluate_endpoint(counting, b.items, opts), ParseError);
}

TEST_CASE("nested candidates never worsen the selection") {
  const Batch b = batch(30, 33);
  MockPolicyConfig cfg;
  cfg.infeasible_prob = 0.4;
  cfg.swaps = 3;
  cfg.seed = 2;
  MockClient client(cfg, b.known);
  std::vector<std::vector<EvalRecord>> runs;
  for (int n : {1, 2, 4, 8}) {
    EvalOptions opts;
    opts.n_samples = n;
    runs.push_back(evaluate_endpoint(client, b.items, opts));
  }
  for (std::size_t s = 1; s < runs.size(); ++s) {
    for (std::size_t i = 0; i < b.items.size(); ++i) {
      const auto& small = runs[s - 1][i];
      const auto& large = runs[s][i];
      for (std::size_t c = 0; c < small.candidates.size(); ++c) {
        CHECK(small.candidates[c].raw_text == large.candidates[c].raw_text);
      }
      if (small.gap) CHECK(*large.gap <= *small.gap);
    }
  }
}

TEST_CASE("repeat-best keeps the better run") {
  const Batch b = batch(7, 50);
  MockPolicyConfig cfg;
  cfg.infeasible_prob = 0.5;
  cfg.swaps = 3;
  MockClient client(cfg, b.known);
  EvalOptions once;
  EvalOptions thrice;
  thrice.repeats = 3;
  const auto a = metrics(evaluate_endpoint(client, b.items, once));
  const auto c = metrics(evaluate_endpoint(client, b.items, thrice));
  CHECK(c.feasibility_rate >= a.feasibility_rate);
}

TEST_CASE("report JSON round-trip and rendering") {
  const std::vector<EvalRecord> recs = {record_with_gap(0.02), record_with_gap(std::nullopt)};
  const auto m = metrics(recs);
  const auto back = summary_from_json(nlohmann::json::parse(summary_to_json(m).dump()));
  CHECK(back.records == m.records);
  CHECK(back.feasibility_rate == m.feasibility_rate);
  CHECK(back.gap_at_k == m.gap_at_k);
  const std::string text = render_summary(m);
  CHECK(text.find("Gap@5") != std::string::npos);
  CHECK(text.find("50.00%") != std::string::npos);
}

TEST_CASE("supervised export") {
  const Batch b = batch(7, 60);
  std::vector<LabeledPair> pairs;
  for (const auto& item : b.items) pairs.push_back({item.instance, b.known.at(item.instance.id).second, item.reference});
  const std::string text = export_sft_dataset(pairs);
  std::istringstream lines(text);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) {
    const auto doc = nlohmann::json::parse(line);
    for (const char* key : {"instruction", "input", "output", "kind", "instance_id"}) CHECK(doc.contains(key));
    const auto kind = parse_kind(doc.at("kind").get<std::string>());
    CHECK(parse(doc.at("output").get<std::string>(), kind).format_ok);
    if (kind == ProblemKind::TSP) CHECK(doc.at("output").get<std::string>().rfind("Route: [", 0) == 0);
  }
  CHECK(count == 7);

  std::vector<LabeledPair> bad = {{golden::mis_example(), VertexSet{{0, 9}}, 2}};
  try {
    export_sft_dataset(bad);
    FAIL("accepted an infeasible label");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("independence") != std::string::npos);
  }
  std::vector<LabeledPair> wrong_obj = {{golden::mis_example(), VertexSet{golden::kMisSet}, 5}};
  CHECK_THROWS_AS(export_sft_dataset(wrong_obj), ValidationError);
}

TEST_CASE("reasoning blocks are stripped") {
  CHECK(strip_reasoning("<think>Route: [0]</think>Set: [1], Objective: 1") == "Set: [1], Objective: 1");
  CHECK(strip_reasoning("a<think>b</think>c<think>d</think>e") == "ace");
  CHECK(strip_reasoning("keep<think>never closed") == "keep");
  CHECK(strip_reasoning("plain") == "plain");
}

TEST_CASE("endpoint config validation") {
  EndpointConfig cfg;
  cfg.base_url = "http://localhost:1/v1";
  CHECK_NOTHROW(validate(cfg));
  cfg.top_p = 0.0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg.top_p = 0.7;
  cfg.n_samples = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
  cfg.n_samples = 1;
  cfg.temperature = -1;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);
}
