#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cobench/cli.hpp"
#include "cobench/serialize.hpp"
#include "golden.hpp"

using namespace cobench;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "cobench-cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("generate is deterministic and carries provenance") {
  const fs::path dir = scratch("generate");
  const auto a = dir / "a.json";
  std::vector<std::string> texts;
  for (int i = 0; i < 2; ++i) {
    const auto r = run({"generate", "--kind", "cvrp", "--n", "20", "--seed", "9", "--out", a.string()});
    REQUIRE(r.code == 0);
    texts.push_back(slurp(a));
  }
  CHECK(texts[0] == texts[1]);
  const auto doc = nlohmann::json::parse(slurp(a));
  REQUIRE(doc.contains("provenance"));
  CHECK(doc.at("provenance").at("seed") == 9);
  CHECK(read_instance(slurp(a)).routing().size() == 20);

  CHECK(run({"generate", "--kind", "pfsp", "--count", "3", "--seed", "1", "--out", (dir / "many").string()}).code == 0);
  CHECK(std::distance(fs::directory_iterator(dir / "many"), fs::directory_iterator{}) == 3);
}

TEST_CASE("verify prints the verdict") {
  const fs::path dir = scratch("verify");
  const auto inst = dir / "mis.json";
  spit(inst, write_instance(golden::mis_example()));
  spit(dir / "good.txt", golden::kMisOutput);
  spit(dir / "bad.txt", "Set: [0, 9], Objective: 2");
  spit(dir / "prose.txt", "no idea");

  const auto good = run({"verify", inst.string(), "--answer", (dir / "good.txt").string()});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "feasible, objective 6"));
  const auto bad = run({"verify", inst.string(), "--answer", (dir / "bad.txt").string()});
  CHECK(contains(bad.out, "infeasible"));
  CHECK(contains(run({"verify", inst.string(), "--answer", (dir / "prose.txt").string()}).out, "format error"));

  const auto js = run({"verify", inst.string(), "--answer", (dir / "good.txt").string(), "--json"});
  REQUIRE(js.code == 0);
  CHECK(nlohmann::json::parse(js.out).at("feasible") == true);

  const auto rew = run({"reward", inst.string(), "--answer", (dir / "good.txt").string(), "--reference-objective", "6"});
  CHECK(rew.code == 0);
  CHECK(contains(rew.out, "total 2.000000"));
}

TEST_CASE("usage, data and budget errors map to exit codes") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"generate"}).code == 1);
  CHECK(run({"--version"}).code == 0);
  const auto missing = run({"verify", "/nonexistent/x.json", "--answer", "-"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cobench: error:"));

  const fs::path dir = scratch("errors");
  const auto inst = dir / "big.json";
  REQUIRE(run({"generate", "--kind", "pfsp", "--n", "12", "--out", inst.string()}).code == 0);
  const auto oracle = run({"oracle", inst.string()});
  CHECK(oracle.code == 2);
  CHECK(contains(oracle.err, "refuses"));
  CHECK(run({"solve", inst.string(), "--method", "christofides"}).code == 2);
}

TEST_CASE("pipeline from generation to a mock evaluation") {
  const fs::path dir = scratch("pipeline");
  const auto inst_dir = dir / "instances";
  REQUIRE(run({"generate", "--kind", "mis", "--count", "4", "--size-range", "12,20", "--out", inst_dir.string()})
              .code == 0);
  const auto refs = dir / "refs.jsonl";
  REQUIRE(run({"solve", inst_dir.string(), "--method", "greedy_min_degree", "--out", refs.string()}).code == 0);
  CHECK(contains(slurp(refs), "heuristic:"));

  const auto sft = dir / "sft.jsonl";
  REQUIRE(run({"dataset", inst_dir.string(), "--reference", refs.string(), "--out", sft.string()}).code == 0);
  std::istringstream lines(slurp(sft));
  int rows = 0;
  for (std::string line; std::getline(lines, line); ++rows) CHECK(nlohmann::json::parse(line).contains("output"));
  CHECK(rows == 4);

  const auto report = dir / "report.json";
  const auto ev = run({"evaluate", inst_dir.string(), "--reference", refs.string(), "--endpoint-url", "mock://",
                       "--bon", "4", "--out", report.string()});
  REQUIRE(ev.code == 0);
  CHECK(contains(ev.out, "100.00%"));
  const auto doc = nlohmann::json::parse(slurp(report));
  CHECK(doc.at("summary").at("records") == 4);
  CHECK(doc.contains("provenance"));
  CHECK(run({"report", report.string()}).code == 0);
  CHECK(run({"report", report.string(), "--json"}).code == 0);
}

TEST_CASE("config file values yield to explicit flags") {
  const fs::path dir = scratch("config");
  const auto cfg = dir / "run.toml";
  spit(cfg, "[generate]\nkind = \"tsp\"\nn = 15\nseed = 4\n");
  const auto from_file = dir / "file.json";
  REQUIRE(run({"--config", cfg.string(), "generate", "--out", from_file.string()}).code == 0);
  CHECK(read_instance(slurp(from_file)).routing().size() == 15);
  const auto override_n = dir / "flag.json";
  REQUIRE(run({"--config", cfg.string(), "generate", "--n", "11", "--out", override_n.string()}).code == 0);
  CHECK(read_instance(slurp(override_n)).routing().size() == 11);
}

TEST_CASE("unreachable endpoint exits with the endpoint code") {
  const fs::path dir = scratch("endpoint");
  const auto inst = dir / "i.json";
  const auto refs = dir / "r.jsonl";
  REQUIRE(run({"generate", "--kind", "tsp", "--n", "10", "--out", inst.string()}).code == 0);
  REQUIRE(run({"solve", inst.string(), "--method", "nn", "--out", refs.string()}).code == 0);
  const auto r = run({"evaluate", inst.string(), "--reference", refs.string(), "--endpoint-url",
                      "http://127.0.0.1:9/v1", "--retries", "0", "--timeout", "1"});
  CHECK(r.code == 3);
}
