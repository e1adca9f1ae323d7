#include "cobench/rewards.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>
#include <string>

#include "cobench/error.hpp"

namespace cobench {

namespace {

constexpr double kRatioCeiling = 1.05;

}  // namespace

RewardWeights default_weights(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::TSP:
      return {{0.2, 0.5, 0.3}};
    case ProblemKind::OP:
      return {{0.2, 0.1, 0.2, 0.5}};
    case ProblemKind::CVRP:
      return {{0.2, 0.1, 0.1, 0.6}};
    case ProblemKind::MIS:
    case ProblemKind::MVC:
    case ProblemKind::PFSP:
      return {{0.2, 0.8}};
    case ProblemKind::JSSP:
      return {{0.2, 0.2, 0.2, 0.4}};
  }
  return {};
}

void validate(const RewardConfig& cfg) {
  if (!(cfg.alpha > 0.0)) throw InvalidArgument("alpha must be > 0");
  if (!(cfg.epsilon_clip > 0.0 && cfg.epsilon_clip < 1.0)) {
    throw InvalidArgument("epsilon_clip must lie in (0, 1)");
  }
  if (!(cfg.beta_kl >= 0.0)) throw InvalidArgument("beta_kl must be >= 0");
  if (cfg.group_size < 2) throw InvalidArgument("group_size must be >= 2");
  if (!(cfg.std_floor >= 0.0)) throw InvalidArgument("std_floor must be >= 0");
}

double feasibility_reward(const FeasibilityReport& report, const RewardWeights& w) {
  if (w.omega.size() != report.constraints.size() + 1) {
    throw InvalidArgument("weights need " + std::to_string(report.constraints.size() + 1) +
                          " entries, got " + std::to_string(w.omega.size()));
  }
  if (!report.zeta) return 0.0;
  double r = w.omega[0];
  for (std::size_t i = 0; i < report.constraints.size(); ++i) {
    if (report.constraints[i].second) r += w.omega[i + 1];
  }
  return r;
}

double optimality_reward(double value, double reference, ProblemKind kind,
                         const RewardConfig& cfg) {
  validate(cfg);
  if (!std::isfinite(reference) || reference == 0.0) {
    throw InvalidArgument("optimality reward needs a finite nonzero reference");
  }
  double r = 0.0;
  if (sense_of(kind) == Sense::Maximize) {
    r = cfg.alpha * value / reference;
  } else {
    const double gap = (value - reference) / std::abs(reference);
    r = cfg.alpha / (1.0 + gap);
  }
  const double ceiling = kRatioCeiling * cfg.alpha;
  if (!(r >= 0.0) || r > ceiling) {
    std::clog << "warning: optimality reward " << r << " clamped (value " << value
              << ", reference " << reference << ")\n";
    r = std::isnan(r) ? 0.0 : std::clamp(r, 0.0, ceiling);
  }
  return r;
}

double total_reward(const FeasibilityReport& report, double value, double reference,
                    ProblemKind kind, const RewardConfig& cfg, const RewardWeights* weights) {
  const RewardWeights w = weights ? *weights : default_weights(kind);
  const double rf = feasibility_reward(report, w);
  if (!report.zeta || !report.feasible) return rf;
  return rf + optimality_reward(value, reference, kind, cfg);
}

std::vector<double> group_advantages(std::span<const double> rewards, double std_floor) {
  if (rewards.size() < 2) throw InvalidArgument("a group needs at least 2 rewards");
  const double n = static_cast<double>(rewards.size());
  const double mean = std::accumulate(rewards.begin(), rewards.end(), 0.0) / n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  const double sd = std::sqrt(var / n);
  std::vector<double> out(rewards.size(), 0.0);
  if (sd < std_floor || sd == 0.0) return out;
  for (std::size_t i = 0; i < rewards.size(); ++i) out[i] = (rewards[i] - mean) / sd;
  return out;
}

double grpo_surrogate(std::span<const double> ratios, std::span<const double> advantages,
                      double kl, const RewardConfig& cfg) {
  validate(cfg);
  if (ratios.size() != advantages.size()) throw InvalidArgument("ratios and advantages differ in length");
  if (ratios.empty()) throw InvalidArgument("empty group");
  if (!(kl >= 0.0)) throw InvalidArgument("kl must be >= 0");
  const double lo = 1.0 - cfg.epsilon_clip;
  const double hi = 1.0 + cfg.epsilon_clip;
  double sum = 0.0;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = ratios[i];
    if (!(r > 0.0)) throw InvalidArgument("ratios must be > 0");
    const double a = advantages[i];
    sum += std::min(r * a, std::clamp(r, lo, hi) * a);
  }
  return sum / static_cast<double>(ratios.size()) - cfg.beta_kl * kl;
}

}  // namespace cobench
