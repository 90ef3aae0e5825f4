#pragma once

#include <vector>

#include "ep/core/environment.hpp"

namespace ep::core {

/// Throws std::invalid_argument unless 0 < gamma < 1.
void require_discount(double gamma);

/// Normalized values V^pi(s) for every state, from a direct linear solve of
/// the policy-evaluation equations.
std::vector<double> policy_values(const FiniteEnvironment& env, const StationaryPolicy& policy,
                                  double gamma);

DiscountedValue policy_value(const FiniteEnvironment& env, const StationaryPolicy& policy,
                             std::size_t start, double gamma);

/// Expected value of `values` under a state distribution.
double expect(const std::vector<double>& state_belief, const std::vector<double>& values);

struct OptimalSolution {
  StationaryPolicy policy;
  std::vector<double> values;  // normalized V*(s)
};

struct ValueIterationOptions {
  double tolerance = 1e-10;
  std::size_t max_sweeps = 1'000'000;
};

/// Value iteration to the Bellman-residual tolerance, then greedy extraction
/// (lowest action index among ties) polished by exact policy evaluation until
/// the greedy policy is stable.
OptimalSolution optimal_policy(const FiniteEnvironment& env, double gamma,
                               const ValueIterationOptions& options = {});

/// Bayes-mixture value: sum_nu w(nu) E_{s ~ b_nu} V_nu^pi(s).
DiscountedValue mixture_value(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                              const StationaryPolicy& policy, double gamma);

}  // namespace ep::core
