#include <algorithm>
#include <cmath>
#include <sstream>

#include "cobench/error.hpp"
#include "cobench/evalharness.hpp"
#include "cobench/numfmt.hpp"

namespace cobench {

std::string_view tier_name(SizeTier tier) {
  switch (tier) {
    case SizeTier::Small:
      return "small";
    case SizeTier::Medium:
      return "medium";
    case SizeTier::Large:
      return "large";
  }
  return "small";
}

SizeTier size_tier(const Instance& inst) {
  if (is_scheduling(inst.kind)) {
    const auto& s = inst.scheduling();
    const int dim = std::max(s.jobs, s.machines);
    if (dim <= 10) return SizeTier::Small;
    return dim <= 15 ? SizeTier::Medium : SizeTier::Large;
  }
  const int n = inst.size();
  if (n <= 30) return SizeTier::Small;
  return n <= 60 ? SizeTier::Medium : SizeTier::Large;
}

Candidate assess(const Instance& inst, std::string raw_text) {
  Candidate c;
  c.parsed = parse(strip_reasoning(raw_text), inst.kind);
  c.raw_text = std::move(raw_text);
  if (!c.parsed.format_ok) {
    c.report = format_failure(inst.kind);
    return c;
  }
  c.report = check(inst, *c.parsed.solution);
  try {
    c.objective = objective(inst, *c.parsed.solution).value;
  } catch (const Error&) {
    // Out-of-range indices or a deadlocked schedule: nothing to score.
  }
  return c;
}

std::optional<std::size_t> bon_select(ProblemKind kind, std::span<const Candidate> candidates) {
  if (candidates.empty()) throw InvalidArgument("best-of-n needs at least one candidate");
  const bool maximize = sense_of(kind) == Sense::Maximize;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    if (!c.report.feasible || !c.objective) continue;
    if (!best) {
      best = i;
      continue;
    }
    const double cur = *candidates[*best].objective;
    if (maximize ? *c.objective > cur : *c.objective < cur) best = i;
  }
  return best;
}

double optimality_gap(double value, double reference, ProblemKind kind) {
  if (reference == 0.0) return std::abs(value - reference);
  if (sense_of(kind) == Sense::Maximize) return (reference - value) / reference;
  return (value - reference) / std::abs(reference);
}

MetricsSummary metrics(std::span<const EvalRecord> records) {
  MetricsSummary s;
  s.records = records.size();
  std::vector<double> gaps;
  std::map<SizeTier, std::vector<double>> tier_gaps;
  std::map<SizeTier, std::size_t> tier_feasible;
  for (const auto& rec : records) {
    if (!std::isfinite(rec.reference)) {
      throw InvalidArgument("record '" + rec.instance_id + "' has no reference objective");
    }
    ++s.tiers[rec.tier].records;
    if (!rec.selected || !rec.gap) continue;
    ++s.feasible_records;
    ++tier_feasible[rec.tier];
    gaps.push_back(*rec.gap);
    tier_gaps[rec.tier].push_back(*rec.gap);
  }
  for (int k : kGapThresholds) s.gap_at_k[k] = 0.0;
  if (s.records == 0) return s;
  const double total = static_cast<double>(s.records);
  s.feasibility_rate = static_cast<double>(s.feasible_records) / total;
  if (!gaps.empty()) {
    double sum = 0.0;
    for (double g : gaps) sum += g;
    const double mean = sum / static_cast<double>(gaps.size());
    double var = 0.0;
    for (double g : gaps) var += (g - mean) * (g - mean);
    s.mean_gap = mean;
    s.gap_std = std::sqrt(var / static_cast<double>(gaps.size()));
  }
  for (int k : kGapThresholds) {
    const auto hits = std::count_if(gaps.begin(), gaps.end(), [k](double g) { return g * 100.0 < k; });
    s.gap_at_k[k] = static_cast<double>(hits) / total;
  }
  for (auto& [tier, tm] : s.tiers) {
    tm.feasibility_rate = static_cast<double>(tier_feasible[tier]) / static_cast<double>(tm.records);
    const auto& tg = tier_gaps[tier];
    if (!tg.empty()) {
      double sum = 0.0;
      for (double g : tg) sum += g;
      tm.mean_gap = sum / static_cast<double>(tg.size());
    }
  }
  return s;
}

namespace {

ordered_json optional_number(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::optional<double> read_optional(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) return std::nullopt;
  return doc.at(key).get<double>();
}

SizeTier parse_tier(const std::string& name) {
  for (SizeTier t : {SizeTier::Small, SizeTier::Medium, SizeTier::Large}) {
    if (tier_name(t) == name) return t;
  }
  throw ParseError("unknown size tier '" + name + "'");
}

std::string percent(double fraction) { return format_fixed(fraction * 100.0, 2) + "%"; }

std::string percent(const std::optional<double>& fraction) {
  return fraction ? percent(*fraction) : std::string("n/a");
}

}  // namespace

ordered_json summary_to_json(const MetricsSummary& s) {
  ordered_json doc;
  doc["records"] = s.records;
  doc["feasible_records"] = s.feasible_records;
  doc["feasibility_rate"] = s.feasibility_rate;
  doc["mean_gap"] = optional_number(s.mean_gap);
  doc["gap_std"] = optional_number(s.gap_std);
  ordered_json at = ordered_json::object();
  for (const auto& [k, v] : s.gap_at_k) at[std::to_string(k)] = v;
  doc["gap_at_k"] = std::move(at);
  ordered_json tiers = ordered_json::object();
  for (const auto& [tier, tm] : s.tiers) {
    ordered_json t;
    t["records"] = tm.records;
    t["feasibility_rate"] = tm.feasibility_rate;
    t["mean_gap"] = optional_number(tm.mean_gap);
    tiers[std::string(tier_name(tier))] = std::move(t);
  }
  doc["tiers"] = std::move(tiers);
  return doc;
}

MetricsSummary summary_from_json(const nlohmann::json& doc) {
  MetricsSummary s;
  try {
    s.records = doc.at("records").get<std::size_t>();
    s.feasible_records = doc.at("feasible_records").get<std::size_t>();
    s.feasibility_rate = doc.at("feasibility_rate").get<double>();
    s.mean_gap = read_optional(doc, "mean_gap");
    s.gap_std = read_optional(doc, "gap_std");
    for (const auto& [k, v] : doc.at("gap_at_k").items()) s.gap_at_k[std::stoi(k)] = v.get<double>();
    for (const auto& [name, t] : doc.at("tiers").items()) {
      TierMetrics tm;
      tm.records = t.at("records").get<std::size_t>();
      tm.feasibility_rate = t.at("feasibility_rate").get<double>();
      tm.mean_gap = read_optional(t, "mean_gap");
      s.tiers[parse_tier(name)] = tm;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed metrics summary: ") + e.what());
  } catch (const std::logic_error& e) {
    throw ParseError(std::string("malformed metrics summary: ") + e.what());
  }
  return s;
}

std::string render_summary(const MetricsSummary& s) {
  std::ostringstream out;
  out << "records            " << s.records << "\n";
  out << "feasible           " << s.feasible_records << "\n";
  out << "feasibility rate   " << percent(s.feasibility_rate) << "\n";
  out << "mean gap           " << percent(s.mean_gap) << "\n";
  out << "gap std            " << percent(s.gap_std) << "\n";
  out << "\n";
  for (const auto& [k, v] : s.gap_at_k) {
    out << "Gap@" << k << (k < 10 ? "              " : "             ") << percent(v) << "\n";
  }
  if (!s.tiers.empty()) {
    out << "\ntier      records  feasible  mean gap\n";
    for (const auto& [tier, tm] : s.tiers) {
      std::string name(tier_name(tier));
      name.resize(10, ' ');
      std::string count = std::to_string(tm.records);
      count.resize(9, ' ');
      std::string feas = percent(tm.feasibility_rate);
      feas.resize(10, ' ');
      out << name << count << feas << percent(tm.mean_gap) << "\n";
    }
  }
  return out.str();
}

}  // namespace cobench
