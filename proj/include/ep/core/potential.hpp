#pragma once

#include <cstddef>
#include <stdexcept>

#include "ep/core/environment.hpp"
#include "ep/estimate.hpp"

namespace ep::core {

/// Raised when no environment in the class can explain the observed history.
class InconsistentHistory : public std::runtime_error {
 public:
  InconsistentHistory() : std::runtime_error("inconsistent history") {}
};

/// Raised by the bound checker when the designated true environment has zero
/// posterior weight.
class TrueEnvironmentExcluded : public std::runtime_error {
 public:
  TrueEnvironmentExcluded() : std::runtime_error("true environment excluded") {}
};

/// Bayes update of both the environment weights and the per-environment
/// state beliefs after taking `action` and receiving `percept`.
BeliefState posterior_update(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                             std::size_t action, const Percept& percept);

/// Exact exploration potential
///   sum_nu w(nu) |V_nu^{pi*_nu} - Vhat^{pi*_nu}|
/// with Vhat the Bayes-mixture value. Environments with zero weight are
/// skipped.
EPEstimate exploration_potential(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                                 double gamma);

struct BoundOptions {
  /// Largest number of stationary policies enumerated when searching for the
  /// mixture-greedy policy. Above it the search falls back to a candidate set.
  std::size_t policy_budget = 100'000;
};

struct BoundReport {
  double lhs = 0.0;  // V*_mu - V_mu^{greedy}
  double rhs = 0.0;  // (Vhat* - V_mu^{greedy}) + EP / w(mu)
  bool holds = false;
  StationaryPolicy greedy_policy;
  double mixture_optimum = 0.0;  // Vhat* over the searched set
  double exploration_potential = 0.0;
};

BoundReport optimality_bound_check(const FiniteEnvironmentClass& cls, std::size_t true_index,
                                   const BeliefState& belief, double gamma,
                                   const BoundOptions& options = {});

}  // namespace ep::core
