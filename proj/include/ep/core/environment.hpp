#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ep::core {

enum class RewardModel {
  deterministic,  // the reward table holds the reward itself
  bernoulli,      // the reward table holds P(r = 1); rewards are 0 or 1
};

/// A finite, fully observable MDP. Observations are successor states.
class FiniteEnvironment {
 public:
  /// `transition` is laid out as [state][action][next-state], `reward` as
  /// [state][action]. Throws std::invalid_argument when a transition row does
  /// not sum to 1 within 1e-12, a reward lies outside [0,1], or the initial
  /// state is out of range.
  FiniteEnvironment(std::size_t state_count, std::size_t action_count,
                    std::vector<double> transition, std::vector<double> reward,
                    std::size_t initial_state = 0,
                    RewardModel reward_model = RewardModel::deterministic);

  std::size_t state_count() const noexcept { return states_; }
  std::size_t action_count() const noexcept { return actions_; }
  std::size_t initial_state() const noexcept { return initial_; }
  RewardModel reward_model() const noexcept { return model_; }

  double transition(std::size_t s, std::size_t a, std::size_t next) const {
    return transition_[(s * actions_ + a) * states_ + next];
  }
  std::span<const double> transition_row(std::size_t s, std::size_t a) const {
    return {transition_.data() + (s * actions_ + a) * states_, states_};
  }
  /// Expected immediate reward.
  double reward(std::size_t s, std::size_t a) const { return reward_[s * actions_ + a]; }

  /// Probability of observing reward `r` after taking `a` in `s`.
  double reward_likelihood(std::size_t s, std::size_t a, double r) const;

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<double> transition_;
  std::vector<double> reward_;
  std::size_t initial_;
  RewardModel model_;
};

/// A finite environment class with a strictly positive prior. All members
/// share their state and action counts, so a stationary policy of one
/// environment is a valid policy in every other.
class FiniteEnvironmentClass {
 public:
  FiniteEnvironmentClass(std::vector<FiniteEnvironment> environments, std::vector<double> prior);

  std::size_t size() const noexcept { return envs_.size(); }
  std::size_t state_count() const noexcept { return envs_.front().state_count(); }
  std::size_t action_count() const noexcept { return envs_.front().action_count(); }
  const FiniteEnvironment& operator[](std::size_t i) const { return envs_[i]; }
  const std::vector<FiniteEnvironment>& environments() const noexcept { return envs_; }
  const std::vector<double>& prior() const noexcept { return prior_; }

 private:
  std::vector<FiniteEnvironment> envs_;
  std::vector<double> prior_;
};

/// Posterior over the class plus, for each environment, a distribution over
/// that environment's current state.
struct BeliefState {
  std::vector<double> weights;
  std::vector<std::vector<double>> state_beliefs;

  /// Prior weights with every environment in its initial state.
  static BeliefState initial(const FiniteEnvironmentClass& cls);
  /// All weight on environment `index`.
  static BeliefState point_mass(const FiniteEnvironmentClass& cls, std::size_t index);
};

/// Deterministic stationary policy: one action per state.
struct StationaryPolicy {
  std::vector<std::size_t> actions;

  std::size_t operator()(std::size_t state) const { return actions[state]; }
  friend bool operator==(const StationaryPolicy&, const StationaryPolicy&) = default;
};

/// A (1 - gamma)-normalized discounted value, in [0,1] for rewards in [0,1].
struct DiscountedValue {
  double value = 0.0;
  double gamma = 0.0;
};

struct Percept {
  std::size_t observation = 0;  // successor state
  double reward = 0.0;
};

}  // namespace ep::core
