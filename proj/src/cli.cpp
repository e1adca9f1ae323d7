#include "cobench/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cobench/error.hpp"
#include "cobench/evalharness.hpp"
#include "cobench/heuristics.hpp"
#include "cobench/numfmt.hpp"
#include "cobench/rewards.hpp"
#include "cobench/serialize.hpp"
#include "cobench/tai.hpp"
#include "cobench/verify.hpp"

namespace cobench::cli {

namespace fs = std::filesystem;

namespace {

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::string command;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, Context& ctx) {
  if (path.empty() || path == "-") {
    ctx.out << text;
    return;
  }
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw InvalidArgument("cannot write " + path);
  f << text;
}

Instance load_instance(const std::string& path, const std::string& format) {
  std::string fmt = format;
  if (fmt == "auto") {
    const auto ext = fs::path(path).extension().string();
    if (ext == ".tsp") {
      fmt = "tsplib";
    } else if (ext == ".json") {
      fmt = "native";
    } else {
      throw InvalidArgument("cannot infer the format of " + path + "; pass --format");
    }
  }
  const std::string text = read_file(path);
  if (fmt == "tsplib") return parse_tsplib(text);
  if (fmt == "taillard") {
    Instance inst = parse_taillard(text);
    inst.id = fs::path(path).stem().string();
    return inst;
  }
  if (fmt == "native") return read_instance(text);
  throw InvalidArgument("unknown format '" + fmt + "'");
}

// Files and directories; directories contribute their *.json and *.tsp
// files in name order.
std::vector<Instance> load_instances(const std::vector<std::string>& paths, const std::string& format) {
  std::vector<Instance> out;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(p)) {
        const auto ext = entry.path().extension().string();
        if (entry.is_regular_file() && (ext == ".json" || ext == ".tsp")) files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) out.push_back(load_instance(f, format));
    } else {
      out.push_back(load_instance(p, format));
    }
  }
  if (out.empty()) throw InvalidArgument("no instances given");
  return out;
}

std::map<std::string, ReferenceSolution> load_reference_map(const std::string& path) {
  std::map<std::string, ReferenceSolution> out;
  for (auto& ref : read_references(read_file(path))) out[ref.instance_id] = std::move(ref);
  return out;
}

const ReferenceSolution& reference_for(const std::map<std::string, ReferenceSolution>& refs,
                                       const Instance& inst) {
  const auto it = refs.find(inst.id);
  if (it == refs.end()) throw InvalidArgument("no reference solution for '" + inst.id + "'");
  if (it->second.kind != inst.kind) throw InvalidArgument("reference for '" + inst.id + "' has another kind");
  return it->second;
}

Distribution parse_distribution(const std::string& name, GenConfig& cfg) {
  if (name == "uniform") return Distribution::Uniform;
  if (name == "gm2") {
    cfg.gm_clusters = 2;
    cfg.gm_scale = 5;
    return Distribution::GaussianMixture;
  }
  if (name == "gm3") {
    cfg.gm_clusters = 3;
    cfg.gm_scale = 10;
    return Distribution::GaussianMixture;
  }
  if (name == "clustered") return Distribution::Clustered;
  if (name == "mixed") return Distribution::Mixed;
  throw InvalidArgument("unknown distribution '" + name + "'");
}

GraphFamily parse_family(const std::string& name) {
  if (name == "any") return GraphFamily::Any;
  if (name == "er") return GraphFamily::ErdosRenyi;
  if (name == "ba") return GraphFamily::BarabasiAlbert;
  throw InvalidArgument("unknown graph family '" + name + "'");
}

IntRange to_range(const std::vector<int>& v, IntRange fallback) {
  if (v.empty()) return fallback;
  return {v.at(0), v.at(1)};
}

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

int default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string constraint_lines(const FeasibilityReport& report) {
  std::string out = std::string("  format: ") + (report.zeta ? "ok" : "violated") + "\n";
  for (const auto& [name, ok] : report.constraints) out += "  " + name + ": " + (ok ? "ok" : "violated") + "\n";
  for (const auto& [name, v] : report.margins) out += "  margin " + name + ": " + format_fixed(v, 6) + "\n";
  return out;
}

// Solution under test: raw answer text (parsed) or a reference file entry.
struct SolutionSource {
  std::string answer_path;
  std::string reference_path;
};

struct Assessed {
  FeasibilityReport report;
  std::optional<double> value;
  std::optional<double> stated;
};

Assessed assess_source(const Instance& inst, const SolutionSource& src) {
  if (src.answer_path.empty() == src.reference_path.empty()) {
    throw InvalidArgument("pass exactly one of --answer or --solution");
  }
  Assessed a;
  if (!src.answer_path.empty()) {
    const std::string text = src.answer_path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                                    : read_file(src.answer_path);
    Candidate c = assess(inst, text);
    a.report = c.report;
    a.value = c.objective;
    a.stated = c.parsed.stated_objective;
    return a;
  }
  const auto refs = load_reference_map(src.reference_path);
  const auto& ref = reference_for(refs, inst);
  a.report = check(inst, ref.solution);
  try {
    a.value = objective(inst, ref.solution).value;
  } catch (const Error&) {
  }
  return a;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::string command = std::string(kToolName);
  for (const auto& a : args) command += " " + a;
  Context ctx{out, err, command};

  CLI::App app{"Benchmark, verification and reward engine for LLM combinatorial optimization solvers",
               std::string(kToolName)};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags win");
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  std::vector<std::string> inputs;
  std::string format = "auto";
  std::string out_path;
  std::uint64_t seed = 0;
  int jobs = default_jobs();
  int k = 2;

  auto add_inputs = [&](CLI::App* sub) {
    sub->add_option("--instance,instances", inputs, "instance files or directories")->required();
    sub->add_option("--format", format, "auto, native, tsplib or taillard")
        ->check(CLI::IsMember({"auto", "native", "tsplib", "taillard"}));
  };

  // generate ---------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "write seeded random instances");
  std::string kind_text;
  std::optional<int> n_opt;
  std::vector<int> size_range, job_range, machine_range;
  std::string dist = "uniform";
  std::string family = "any";
  int count = 1;
  std::optional<int> capacity;
  gen->add_option("--kind", kind_text, "tsp, op, cvrp, mis, mvc, pfsp or jssp")->required();
  gen->add_option("--n", n_opt, "fixed node count (scheduling: jobs = machines = n)");
  gen->add_option("--size-range", size_range, "node count range lo,hi")->delimiter(',')->expected(2);
  gen->add_option("--job-range", job_range, "job count range lo,hi")->delimiter(',')->expected(2);
  gen->add_option("--machine-range", machine_range, "machine count range lo,hi")->delimiter(',')->expected(2);
  gen->add_option("--dist", dist, "uniform, gm2, gm3, clustered or mixed");
  gen->add_option("--graph-family", family, "any, er or ba");
  gen->add_option("--capacity", capacity, "CVRP vehicle capacity");
  gen->add_option("--count", count, "number of instances (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "base seed");
  gen->add_option("--out", out_path, "output file, or a directory when --count > 1");

  // encode -----------------------------------------------------------------
  auto* enc = app.add_subcommand("encode", "render text-attributed instances");
  add_inputs(enc);
  bool with_prompt = false;
  enc->add_option("--k", k, "features per entity")->check(CLI::NonNegativeNumber);
  enc->add_flag("--prompt", with_prompt, "include the full instruction-tuning prompt");
  enc->add_option("--out", out_path, "output JSON lines file");

  // solve ------------------------------------------------------------------
  auto* sol = app.add_subcommand("solve", "run a baseline heuristic");
  add_inputs(sol);
  std::string method_text;
  int tsili_samples = 1280;
  std::optional<int> aco_ants, aco_iters;
  sol->add_option("--method", method_text, "heuristic name")->required();
  sol->add_option("--seed", seed, "seed for stochastic methods");
  sol->add_option("--tsili-samples", tsili_samples, "Tsili rollouts");
  sol->add_option("--aco-ants", aco_ants, "ACO ants");
  sol->add_option("--aco-iterations", aco_iters, "ACO iterations");
  sol->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sol->add_option("--out", out_path, "reference solutions file (JSON lines)");

  // oracle -----------------------------------------------------------------
  auto* orc = app.add_subcommand("oracle", "prove optimal solutions for small instances");
  add_inputs(orc);
  orc->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  orc->add_option("--out", out_path, "reference solutions file (JSON lines)");

  // verify -----------------------------------------------------------------
  SolutionSource source;
  bool as_json = false;
  auto* ver = app.add_subcommand("verify", "check a solution against an instance");
  add_inputs(ver);
  ver->add_option("--answer", source.answer_path, "answer text file ('-' for stdin)");
  ver->add_option("--solution", source.reference_path, "reference solutions file");
  ver->add_flag("--json", as_json, "print JSON");

  // reward -----------------------------------------------------------------
  auto* rew = app.add_subcommand("reward", "feasibility and optimality rewards of a solution");
  add_inputs(rew);
  std::string reference_path;
  std::optional<double> reference_value;
  RewardConfig reward_cfg;
  rew->add_option("--answer", source.answer_path, "answer text file ('-' for stdin)");
  rew->add_option("--solution", source.reference_path, "reference solutions file holding the candidate");
  rew->add_option("--reference", reference_path, "reference solutions file for the gap");
  rew->add_option("--reference-objective", reference_value, "reference objective value");
  rew->add_option("--alpha", reward_cfg.alpha, "optimality weight");

  // evaluate ---------------------------------------------------------------
  auto* ev = app.add_subcommand("evaluate", "evaluate an endpoint with best-of-N sampling");
  add_inputs(ev);
  EndpointConfig endpoint;
  MockPolicyConfig mock;
  std::string results_path;
  int repeats = 1;
  ev->add_option("--reference", reference_path, "reference solutions file")->required();
  ev->add_option("--endpoint-url", endpoint.base_url, "chat-completions base URL or mock://")->required();
  ev->add_option("--model", endpoint.model_name, "model name");
  ev->add_option("--bon", endpoint.n_samples, "samples per instance (N)")->check(CLI::PositiveNumber);
  ev->add_option("--temperature", endpoint.temperature, "sampling temperature");
  ev->add_option("--top-p", endpoint.top_p, "nucleus sampling mass");
  ev->add_option("--max-tokens", endpoint.max_tokens, "completion token limit");
  ev->add_option("--timeout", endpoint.timeout_seconds, "request timeout in seconds");
  ev->add_option("--retries", endpoint.retries, "retries per request");
  ev->add_option("--backoff", endpoint.backoff_seconds, "initial retry backoff in seconds");
  ev->add_option("--max-parallel", endpoint.max_parallel, "in-flight request limit");
  ev->add_option("--api-key-env", endpoint.api_key_env, "environment variable holding the credential");
  ev->add_flag("--provider-sampling", endpoint.provider_sampling, "request N choices in one call");
  ev->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  ev->add_option("--seed", seed, "sampling seed");
  ev->add_option("--results", results_path, "resumable per-instance results (JSON lines)");
  ev->add_option("--repeats", repeats, "independent runs, best kept")->check(CLI::PositiveNumber);
  ev->add_option("--mock-infeasible-prob", mock.infeasible_prob, "mock endpoint corruption rate");
  ev->add_option("--mock-format-fail-prob", mock.format_fail_prob, "mock endpoint prose rate");
  ev->add_option("--mock-swaps", mock.swaps, "mock endpoint perturbation strength");
  ev->add_option("--out", out_path, "evaluation report (JSON)");

  // dataset ----------------------------------------------------------------
  auto* ds = app.add_subcommand("dataset", "export supervised fine-tuning records");
  add_inputs(ds);
  ds->add_option("--reference", reference_path, "reference solutions file")->required();
  ds->add_option("--k", k, "features per entity")->check(CLI::NonNegativeNumber);
  ds->add_option("--out", out_path, "output JSON lines file");

  // report -----------------------------------------------------------------
  auto* rep = app.add_subcommand("report", "render an evaluation report");
  std::string report_path;
  rep->add_option("--in,report", report_path, "evaluation report (JSON)")->required();
  rep->add_flag("--json", as_json, "print the summary as JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GenConfig cfg;
      const ProblemKind kind = parse_kind(kind_text);
      cfg.distribution = parse_distribution(dist, cfg);
      cfg.graph_family = parse_family(family);
      cfg.capacity = capacity;
      cfg.size_range = to_range(size_range, cfg.size_range);
      cfg.jobs_range = to_range(job_range, cfg.jobs_range);
      cfg.machines_range = to_range(machine_range, cfg.machines_range);
      if (n_opt) {
        if (is_scheduling(kind)) {
          cfg.jobs_range = cfg.machines_range = {*n_opt, *n_opt};
        } else {
          cfg.size_range = {*n_opt, *n_opt};
        }
      }
      if (count > 1 && (out_path.empty() || out_path == "-")) {
        throw InvalidArgument("--count > 1 needs --out DIRECTORY");
      }
      for (int i = 0; i < count; ++i) {
        cfg.seed = seed + static_cast<std::uint64_t>(i);
        const Instance inst = gen_instance(kind, cfg);
        const Provenance prov{ctx.command, cfg.seed};
        const std::string text = write_instance(inst, &prov);
        if (count == 1) {
          write_output(out_path, text, ctx);
        } else {
          write_output((fs::path(out_path) / (inst.id + ".json")).string(), text, ctx);
        }
      }
      return kExitOk;
    }

    if (enc->parsed()) {
      std::string text;
      const Provenance prov{ctx.command, std::nullopt};
      for (const auto& inst : load_instances(inputs, format)) {
        const auto tai = encode(inst, k);
        ordered_json doc;
        doc["instance_id"] = inst.id;
        doc["kind"] = kind_name(inst.kind);
        doc["instruction"] = tai.instruction;
        doc["input"] = tai.input;
        doc["output_grammar"] = grammar_label(tai.expected_output_grammar);
        doc["prompt_template"] = kPromptTemplateVersion;
        if (with_prompt) doc["prompt"] = render_prompt(tai);
        doc["provenance"] = provenance_to_json(prov);
        text += doc.dump() + "\n";
      }
      write_output(out_path, text, ctx);
      return kExitOk;
    }

    if (sol->parsed() || orc->parsed()) {
      const auto instances = load_instances(inputs, format);
      std::vector<ReferenceSolution> refs(instances.size());
      std::optional<Method> method;
      SolveOptions opts;
      if (sol->parsed()) {
        method = parse_method(method_text);
        opts.seed = seed;
        opts.tsili_samples = tsili_samples;
        if (aco_ants || aco_iters) {
          for (const auto& inst : instances) {
            if (!is_routing(inst.kind)) throw InvalidArgument("ACO options need routing instances");
          }
          AcoConfig aco = aco_defaults(instances.front().kind);
          if (aco_ants) aco.ants = *aco_ants;
          if (aco_iters) aco.iterations = *aco_iters;
          aco.seed = seed;
          opts.aco = aco;
        }
      }
      parallel_for(instances.size(), jobs, [&](std::size_t i) {
        const Instance& inst = instances[i];
        ReferenceSolution& ref = refs[i];
        ref.instance_id = inst.id;
        ref.kind = inst.kind;
        if (method) {
          ref.solution = solve(inst, *method, opts);
          ref.source = "heuristic:" + std::string(method_name(*method));
          ref.objective = objective(inst, ref.solution).value;
        } else {
          auto result = brute_force(inst);
          ref.solution = std::move(result.solution);
          ref.objective = result.objective.value;
          ref.source = "oracle";
        }
      });
      const Provenance prov{ctx.command, method ? std::optional<std::uint64_t>(seed) : std::nullopt};
      write_output(out_path, write_references(refs, &prov), ctx);
      return kExitOk;
    }

    if (ver->parsed()) {
      const auto instances = load_instances(inputs, format);
      if (instances.size() != 1) throw InvalidArgument("verify takes exactly one instance");
      const Instance& inst = instances.front();
      const Assessed a = assess_source(inst, source);
      if (as_json) {
        ordered_json doc;
        doc["instance_id"] = inst.id;
        doc["zeta"] = a.report.zeta;
        doc["feasible"] = a.report.feasible;
        ordered_json cons = ordered_json::object();
        for (const auto& [name, ok] : a.report.constraints) cons[name] = ok;
        doc["constraints"] = std::move(cons);
        ordered_json margins = ordered_json::object();
        for (const auto& [name, v] : a.report.margins) margins[name] = v;
        doc["margins"] = std::move(margins);
        doc["objective"] = a.value ? ordered_json(*a.value) : ordered_json(nullptr);
        doc["stated_objective"] = a.stated ? ordered_json(*a.stated) : ordered_json(nullptr);
        out << doc.dump(2) << "\n";
      } else {
        std::string head = !a.report.zeta ? "format error" : (a.report.feasible ? "feasible" : "infeasible");
        if (a.report.zeta) head += ", objective " + (a.value ? format_shortest(*a.value) : std::string("n/a"));
        out << head << "\n" << constraint_lines(a.report);
      }
      return kExitOk;
    }

    if (rew->parsed()) {
      const auto instances = load_instances(inputs, format);
      if (instances.size() != 1) throw InvalidArgument("reward takes exactly one instance");
      const Instance& inst = instances.front();
      const Assessed a = assess_source(inst, source);
      double reference = 0.0;
      if (reference_value) {
        reference = *reference_value;
      } else if (!reference_path.empty()) {
        reference = reference_for(load_reference_map(reference_path), inst).objective;
      } else {
        throw InvalidArgument("pass --reference or --reference-objective");
      }
      const RewardWeights w = default_weights(inst.kind);
      const double rf = feasibility_reward(a.report, w);
      double ro = 0.0;
      if (a.report.feasible && a.value) ro = optimality_reward(*a.value, reference, inst.kind, reward_cfg);
      out << "R_f   " << format_fixed(rf, 6) << "\n";
      out << "R_o   " << format_fixed(ro, 6) << "\n";
      out << "total " << format_fixed(rf + ro, 6) << "\n";
      return kExitOk;
    }

    if (ev->parsed()) {
      const auto instances = load_instances(inputs, format);
      const auto refs = load_reference_map(reference_path);
      std::vector<EvalItem> items;
      std::map<std::string, std::pair<Instance, Solution>> known;
      for (const auto& inst : instances) {
        const auto& ref = reference_for(refs, inst);
        items.push_back({inst, objective(inst, ref.solution).value});
        known.emplace(inst.id, std::make_pair(inst, ref.solution));
      }
      std::unique_ptr<CompletionClient> client;
      if (endpoint.base_url.rfind("mock://", 0) == 0) {
        validate(endpoint);
        mock.seed = seed;
        client = std::make_unique<MockClient>(mock, std::move(known));
      } else {
        client = make_http_client(endpoint);
      }
      EvalOptions opts;
      opts.n_samples = endpoint.n_samples;
      opts.jobs = std::min(jobs, endpoint.max_parallel);
      opts.seed = seed;
      opts.results_path = results_path;
      opts.repeats = repeats;
      const auto records = evaluate_endpoint(*client, items, opts);
      const MetricsSummary summary = metrics(records);
      ordered_json doc;
      doc["summary"] = summary_to_json(summary);
      ordered_json recs = ordered_json::array();
      for (const auto& r : records) recs.push_back(record_to_json(r));
      doc["records"] = std::move(recs);
      doc["provenance"] = provenance_to_json({ctx.command, seed});
      if (!out_path.empty() && out_path != "-") write_output(out_path, doc.dump(2) + "\n", ctx);
      out << render_summary(summary);
      const bool all_failed = !records.empty() && std::all_of(records.begin(), records.end(),
                                                             [](const EvalRecord& r) { return !r.error.empty(); });
      if (all_failed) {
        err << "cobench: error: every request failed; first: " << records.front().error << "\n";
        return kExitEndpoint;
      }
      return kExitOk;
    }

    if (ds->parsed()) {
      const auto instances = load_instances(inputs, format);
      const auto refs = load_reference_map(reference_path);
      std::vector<LabeledPair> pairs;
      for (const auto& inst : instances) {
        const auto& ref = reference_for(refs, inst);
        pairs.push_back({inst, ref.solution, objective(inst, ref.solution).value});
      }
      write_output(out_path, export_sft_dataset(pairs, k), ctx);
      return kExitOk;
    }

    if (rep->parsed()) {
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(read_file(report_path));
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(report_path + " is not valid JSON: " + e.what());
      }
      if (!doc.contains("summary")) throw ParseError(report_path + " has no summary");
      const MetricsSummary summary = summary_from_json(doc.at("summary"));
      if (as_json) {
        out << summary_to_json(summary).dump(2) << "\n";
      } else {
        out << render_summary(summary);
      }
      return kExitOk;
    }
  } catch (const EndpointError& e) {
    err << "cobench: error: " << e.what() << "\n";
    return kExitEndpoint;
  } catch (const std::exception& e) {
    err << "cobench: error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace cobench::cli
