#pragma once

#include <cstddef>
#include <vector>

#include "ep/core/environment.hpp"
#include "ep/random.hpp"

namespace ep::core {

struct RandomClassLimits {
  std::size_t max_environments = 4;
  std::size_t max_states = 5;
  std::size_t max_actions = 3;
};

/// Random class with Bernoulli rewards, Dirichlet(1) transition rows and a
/// random strictly positive prior. Sizes are uniform in [1, max].
FiniteEnvironmentClass random_class(Rng& rng, const RandomClassLimits& limits = {});

/// Samples the successor state and reward of `env` in `state` under `action`.
Percept sample_percept(const FiniteEnvironment& env, std::size_t state, std::size_t action, Rng& rng);

/// One step of a simulated interaction history.
struct HistoryStep {
  std::size_t action;
  Percept percept;
  BeliefState belief;  // posterior after the step
};

/// Simulates `steps` steps in the true environment `true_index` under
/// uniformly random actions, tracking the posterior.
std::vector<HistoryStep> random_history(const FiniteEnvironmentClass& cls, std::size_t true_index,
                                        std::size_t steps, Rng& rng);

}  // namespace ep::core
