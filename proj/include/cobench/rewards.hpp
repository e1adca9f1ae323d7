#pragma once

// Feasibility/optimality rewards, group-relative advantages and the clipped
// policy surrogate. Pure arithmetic; KL is supplied by the caller.

#include <span>
#include <vector>

#include "cobench/problems.hpp"
#include "cobench/verify.hpp"

namespace cobench {

/// omega[0] is the format weight, omega[i] weighs constraint i in verify's
/// order.
struct RewardWeights {
  std::vector<double> omega;
};

RewardWeights default_weights(ProblemKind kind);

struct RewardConfig {
  double alpha = 1.0;
  double epsilon_clip = 0.1;
  double beta_kl = 0.05;
  int group_size = 8;
  double std_floor = 1e-8;
};

/// Throws InvalidArgument when a field is out of range.
void validate(const RewardConfig& cfg);

/// 0 when zeta is false, else omega_0 + sum omega_i * c_i.
/// Throws InvalidArgument on a length mismatch.
double feasibility_reward(const FeasibilityReport& report, const RewardWeights& w);

/// alpha / (1 + gap) for minimization kinds, alpha * value / reference for
/// OP and MIS. Clamped to [0, 1.05 alpha] with a warning on std::clog.
/// Throws InvalidArgument when the reference is zero or not finite.
double optimality_reward(double value, double reference, ProblemKind kind,
                         const RewardConfig& cfg = {});

/// R_f + R_o, where R_o counts only for fully feasible reports.
double total_reward(const FeasibilityReport& report, double value, double reference,
                    ProblemKind kind, const RewardConfig& cfg = {},
                    const RewardWeights* weights = nullptr);

/// (R_i - mean) / std with the population std; all zeros below std_floor.
/// Throws InvalidArgument for fewer than 2 rewards.
std::vector<double> group_advantages(std::span<const double> rewards, double std_floor = 1e-8);

/// mean_i min(r_i A_i, clip(r_i, 1-eps, 1+eps) A_i) - beta * kl.
/// Throws InvalidArgument on mismatched lengths, r_i <= 0 or kl < 0.
double grpo_surrogate(std::span<const double> ratios, std::span<const double> advantages,
                      double kl, const RewardConfig& cfg = {});

}  // namespace cobench
