#include "ep/core/environment.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ep::core {

FiniteEnvironment::FiniteEnvironment(std::size_t state_count, std::size_t action_count,
                                     std::vector<double> transition, std::vector<double> reward,
                                     std::size_t initial_state, RewardModel reward_model)
    : states_(state_count),
      actions_(action_count),
      transition_(std::move(transition)),
      reward_(std::move(reward)),
      initial_(initial_state),
      model_(reward_model) {
  if (states_ == 0 || actions_ == 0) {
    throw std::invalid_argument("environment needs at least one state and one action");
  }
  if (transition_.size() != states_ * actions_ * states_) {
    throw std::invalid_argument("transition table has the wrong size");
  }
  if (reward_.size() != states_ * actions_) {
    throw std::invalid_argument("reward table has the wrong size");
  }
  if (initial_ >= states_) {
    throw std::invalid_argument("initial state out of range");
  }
  for (std::size_t s = 0; s < states_; ++s) {
    for (std::size_t a = 0; a < actions_; ++a) {
      auto row = transition_row(s, a);
      double sum = 0.0;
      for (double p : row) {
        if (!(p >= 0.0)) {
          throw std::invalid_argument("negative transition probability");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("transition row (" + std::to_string(s) + ", " +
                                    std::to_string(a) + ") does not sum to 1");
      }
      double r = this->reward(s, a);
      if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("reward outside [0,1]");
      }
    }
  }
}

double FiniteEnvironment::reward_likelihood(std::size_t s, std::size_t a, double r) const {
  const double expected = reward(s, a);
  switch (model_) {
    case RewardModel::deterministic:
      return std::abs(r - expected) <= 1e-12 ? 1.0 : 0.0;
    case RewardModel::bernoulli:
      if (r == 1.0) return expected;
      if (r == 0.0) return 1.0 - expected;
      return 0.0;
  }
  return 0.0;
}

FiniteEnvironmentClass::FiniteEnvironmentClass(std::vector<FiniteEnvironment> environments,
                                               std::vector<double> prior)
    : envs_(std::move(environments)), prior_(std::move(prior)) {
  if (envs_.empty()) {
    throw std::invalid_argument("environment class is empty");
  }
  if (prior_.size() != envs_.size()) {
    throw std::invalid_argument("prior length does not match the class size");
  }
  for (const auto& env : envs_) {
    if (env.action_count() != envs_.front().action_count()) {
      throw std::invalid_argument("environments disagree on the action count");
    }
    if (env.state_count() != envs_.front().state_count()) {
      throw std::invalid_argument("environments disagree on the state count");
    }
  }
  for (double w : prior_) {
    if (!(w > 0.0)) {
      throw std::invalid_argument("prior weights must be strictly positive");
    }
  }
  if (std::abs(std::accumulate(prior_.begin(), prior_.end(), 0.0) - 1.0) > 1e-12) {
    throw std::invalid_argument("prior does not sum to 1");
  }
}

BeliefState BeliefState::initial(const FiniteEnvironmentClass& cls) {
  BeliefState b;
  b.weights = cls.prior();
  b.state_beliefs.reserve(cls.size());
  for (const auto& env : cls.environments()) {
    std::vector<double> sb(env.state_count(), 0.0);
    sb[env.initial_state()] = 1.0;
    b.state_beliefs.push_back(std::move(sb));
  }
  return b;
}

BeliefState BeliefState::point_mass(const FiniteEnvironmentClass& cls, std::size_t index) {
  BeliefState b = initial(cls);
  std::fill(b.weights.begin(), b.weights.end(), 0.0);
  b.weights.at(index) = 1.0;
  return b;
}

}  // namespace ep::core
