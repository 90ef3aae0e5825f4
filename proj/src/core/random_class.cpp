#include "ep/core/random_class.hpp"

#include <stdexcept>

#include "ep/core/potential.hpp"

namespace ep::core {

namespace {

std::size_t uniform_size(Rng& rng, std::size_t max) {
  return std::uniform_int_distribution<std::size_t>(1, max)(rng);
}

std::vector<double> dirichlet_row(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> row(n);
  double total = 0.0;
  for (double& p : row) {
    p = expo(rng);
    total += p;
  }
  for (double& p : row) p /= total;
  return row;
}

}  // namespace

FiniteEnvironmentClass random_class(Rng& rng, const RandomClassLimits& limits) {
  const std::size_t n = uniform_size(rng, limits.max_environments);
  const std::size_t S = uniform_size(rng, limits.max_states);
  const std::size_t A = uniform_size(rng, limits.max_actions);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<FiniteEnvironment> envs;
  envs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> transition;
    transition.reserve(S * A * S);
    for (std::size_t row = 0; row < S * A; ++row) {
      auto p = dirichlet_row(rng, S);
      transition.insert(transition.end(), p.begin(), p.end());
    }
    std::vector<double> reward(S * A);
    for (double& r : reward) r = unit(rng);
    const std::size_t initial = std::uniform_int_distribution<std::size_t>(0, S - 1)(rng);
    envs.emplace_back(S, A, std::move(transition), std::move(reward), initial, RewardModel::bernoulli);
  }
  // strictly positive prior
  std::vector<double> prior = dirichlet_row(rng, n);
  for (double& w : prior) w = 0.05 / static_cast<double>(n) + 0.95 * w;
  double total = 0.0;
  for (double w : prior) total += w;
  for (double& w : prior) w /= total;
  return FiniteEnvironmentClass(std::move(envs), std::move(prior));
}

Percept sample_percept(const FiniteEnvironment& env, std::size_t state, std::size_t action, Rng& rng) {
  auto row = env.transition_row(state, action);
  std::discrete_distribution<std::size_t> next(row.begin(), row.end());
  Percept p;
  p.observation = next(rng);
  if (env.reward_model() == RewardModel::bernoulli) {
    p.reward = std::uniform_real_distribution<double>(0.0, 1.0)(rng) < env.reward(state, action) ? 1.0 : 0.0;
  } else {
    p.reward = env.reward(state, action);
  }
  return p;
}

std::vector<HistoryStep> random_history(const FiniteEnvironmentClass& cls, std::size_t true_index,
                                        std::size_t steps, Rng& rng) {
  if (true_index >= cls.size()) {
    throw std::invalid_argument("true environment index out of range");
  }
  const auto& mu = cls[true_index];
  std::uniform_int_distribution<std::size_t> pick_action(0, cls.action_count() - 1);
  BeliefState belief = BeliefState::initial(cls);
  std::size_t state = mu.initial_state();
  std::vector<HistoryStep> history;
  history.reserve(steps);
  for (std::size_t t = 0; t < steps; ++t) {
    const std::size_t action = pick_action(rng);
    const Percept percept = sample_percept(mu, state, action, rng);
    belief = posterior_update(belief, cls, action, percept);
    state = percept.observation;
    history.push_back({action, percept, belief});
  }
  return history;
}

}  // namespace ep::core
