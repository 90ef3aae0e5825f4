#include "ep/core/value.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ep::core {

namespace {

constexpr double kTieTolerance = 1e-12;

void require_policy(const FiniteEnvironment& env, const StationaryPolicy& policy) {
  if (policy.actions.size() != env.state_count()) {
    throw std::invalid_argument("policy does not cover every state");
  }
  for (std::size_t a : policy.actions) {
    if (a >= env.action_count()) {
      throw std::invalid_argument("policy action out of range");
    }
  }
}

// Normalized one-step lookahead (1-g) r(s,a) + g sum_s' P(s'|s,a) V(s').
double q_value(const FiniteEnvironment& env, std::size_t s, std::size_t a,
               const std::vector<double>& values, double gamma) {
  double future = 0.0;
  auto row = env.transition_row(s, a);
  for (std::size_t next = 0; next < row.size(); ++next) {
    future += row[next] * values[next];
  }
  return (1.0 - gamma) * env.reward(s, a) + gamma * future;
}

StationaryPolicy greedy(const FiniteEnvironment& env, const std::vector<double>& values, double gamma) {
  StationaryPolicy policy{std::vector<std::size_t>(env.state_count(), 0)};
  for (std::size_t s = 0; s < env.state_count(); ++s) {
    std::vector<double> q(env.action_count());
    for (std::size_t a = 0; a < env.action_count(); ++a) {
      q[a] = q_value(env, s, a, values, gamma);
    }
    const double best = *std::max_element(q.begin(), q.end());
    // lowest index among (numerical) ties
    policy.actions[s] = static_cast<std::size_t>(
        std::find_if(q.begin(), q.end(), [&](double v) { return v >= best - kTieTolerance; }) -
        q.begin());
  }
  return policy;
}

}  // namespace

void require_discount(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in (0,1)");
  }
}

std::vector<double> policy_values(const FiniteEnvironment& env, const StationaryPolicy& policy,
                                  double gamma) {
  require_discount(gamma);
  require_policy(env, policy);
  const auto n = static_cast<Eigen::Index>(env.state_count());
  Eigen::MatrixXd system = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd rewards(n);
  for (Eigen::Index s = 0; s < n; ++s) {
    const std::size_t a = policy(static_cast<std::size_t>(s));
    auto row = env.transition_row(static_cast<std::size_t>(s), a);
    for (Eigen::Index next = 0; next < n; ++next) {
      system(s, next) -= gamma * row[static_cast<std::size_t>(next)];
    }
    rewards(s) = (1.0 - gamma) * env.reward(static_cast<std::size_t>(s), a);
  }
  Eigen::VectorXd v = system.partialPivLu().solve(rewards);
  std::vector<double> out(env.state_count());
  for (Eigen::Index s = 0; s < n; ++s) {
    out[static_cast<std::size_t>(s)] = std::clamp(v(s), 0.0, 1.0);
  }
  return out;
}

DiscountedValue policy_value(const FiniteEnvironment& env, const StationaryPolicy& policy,
                             std::size_t start, double gamma) {
  if (start >= env.state_count()) {
    throw std::invalid_argument("start state out of range");
  }
  return {policy_values(env, policy, gamma)[start], gamma};
}

double expect(const std::vector<double>& state_belief, const std::vector<double>& values) {
  double sum = 0.0;
  for (std::size_t s = 0; s < state_belief.size(); ++s) {
    sum += state_belief[s] * values[s];
  }
  return sum;
}

OptimalSolution optimal_policy(const FiniteEnvironment& env, double gamma,
                               const ValueIterationOptions& options) {
  require_discount(gamma);
  std::vector<double> values(env.state_count(), 0.0);
  std::vector<double> next(env.state_count());
  for (std::size_t sweep = 0; sweep < options.max_sweeps; ++sweep) {
    double residual = 0.0;
    for (std::size_t s = 0; s < env.state_count(); ++s) {
      double best = 0.0;
      for (std::size_t a = 0; a < env.action_count(); ++a) {
        best = std::max(best, q_value(env, s, a, values, gamma));
      }
      next[s] = best;
      residual = std::max(residual, std::abs(best - values[s]));
    }
    values.swap(next);
    if (residual <= options.tolerance) break;
  }

  // Policy-iteration polish: terminates in a handful of rounds once the
  // value-iteration estimate is this close.
  StationaryPolicy policy = greedy(env, values, gamma);
  for (int round = 0; round < 100; ++round) {
    values = policy_values(env, policy, gamma);
    StationaryPolicy improved = greedy(env, values, gamma);
    if (improved == policy) break;
    policy = std::move(improved);
  }
  return {std::move(policy), std::move(values)};
}

DiscountedValue mixture_value(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                              const StationaryPolicy& policy, double gamma) {
  require_discount(gamma);
  double total = 0.0;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (belief.weights[i] <= 0.0) continue;
    total += belief.weights[i] * expect(belief.state_beliefs[i], policy_values(cls[i], policy, gamma));
  }
  return {std::clamp(total, 0.0, 1.0), gamma};
}

}  // namespace ep::core
