#include "ep/core/potential.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "ep/core/value.hpp"

namespace ep::core {

BeliefState posterior_update(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                             std::size_t action, const Percept& percept) {
  if (action >= cls.action_count()) {
    throw std::invalid_argument("action out of range");
  }
  if (percept.observation >= cls.state_count()) {
    throw std::invalid_argument("observation out of range");
  }
  BeliefState out;
  out.weights.resize(cls.size());
  out.state_beliefs.resize(cls.size());
  double total = 0.0;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& env = cls[i];
    const auto& sb = belief.state_beliefs[i];
    double likelihood = 0.0;
    for (std::size_t s = 0; s < env.state_count(); ++s) {
      if (sb[s] == 0.0) continue;
      likelihood += sb[s] * env.transition(s, action, percept.observation) *
                    env.reward_likelihood(s, action, percept.reward);
    }
    out.weights[i] = belief.weights[i] * likelihood;
    total += out.weights[i];
    // The successor state is observed, so every state belief collapses onto it.
    out.state_beliefs[i].assign(env.state_count(), 0.0);
    out.state_beliefs[i][percept.observation] = 1.0;
  }
  if (!(total > 0.0)) {
    throw InconsistentHistory();
  }
  for (double& w : out.weights) w /= total;
  return out;
}

namespace {

// Per-environment optimal policies and the value of each of them in every
// environment, evaluated at that environment's state belief.
struct CrossValues {
  std::vector<std::optional<OptimalSolution>> optimal;
  // cross[i][j] = E_{b_j} V_j^{pi*_i}
  std::vector<std::vector<double>> cross;
};

CrossValues cross_values(const BeliefState& belief, const FiniteEnvironmentClass& cls, double gamma) {
  CrossValues cv;
  cv.optimal.resize(cls.size());
  cv.cross.assign(cls.size(), std::vector<double>(cls.size(), 0.0));
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (belief.weights[i] <= 0.0) continue;
    cv.optimal[i] = optimal_policy(cls[i], gamma);
    for (std::size_t j = 0; j < cls.size(); ++j) {
      if (belief.weights[j] <= 0.0) continue;
      cv.cross[i][j] =
          i == j ? expect(belief.state_beliefs[i], cv.optimal[i]->values)
                 : expect(belief.state_beliefs[j], policy_values(cls[j], cv.optimal[i]->policy, gamma));
    }
  }
  return cv;
}

double potential_from(const BeliefState& belief, const CrossValues& cv) {
  const std::size_t n = belief.weights.size();
  double ep = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (belief.weights[i] <= 0.0) continue;
    double mixture = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      mixture += belief.weights[j] * cv.cross[i][j];
    }
    ep += belief.weights[i] * std::abs(cv.cross[i][i] - mixture);
  }
  return std::clamp(ep, 0.0, 1.0);
}

// Number of stationary policies, saturating at limit + 1.
std::size_t policy_count(std::size_t actions, std::size_t states, std::size_t limit) {
  std::size_t count = 1;
  for (std::size_t s = 0; s < states; ++s) {
    if (count > limit / actions) return limit + 1;
    count *= actions;
  }
  return count;
}

// Optimal policy of the posterior-mean model.
StationaryPolicy mean_model_policy(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                                   double gamma) {
  const std::size_t S = cls.state_count();
  const std::size_t A = cls.action_count();
  std::vector<double> transition(S * A * S, 0.0);
  std::vector<double> reward(S * A, 0.0);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const double w = belief.weights[i];
    if (w <= 0.0) continue;
    for (std::size_t s = 0; s < S; ++s) {
      for (std::size_t a = 0; a < A; ++a) {
        reward[s * A + a] += w * cls[i].reward(s, a);
        for (std::size_t next = 0; next < S; ++next) {
          transition[(s * A + a) * S + next] += w * cls[i].transition(s, a, next);
        }
      }
    }
  }
  // renormalize rows against rounding
  for (std::size_t row = 0; row < S * A; ++row) {
    double sum = 0.0;
    for (std::size_t next = 0; next < S; ++next) sum += transition[row * S + next];
    for (std::size_t next = 0; next < S; ++next) transition[row * S + next] /= sum;
    reward[row] = std::clamp(reward[row], 0.0, 1.0);
  }
  FiniteEnvironment mean_env(S, A, std::move(transition), std::move(reward), 0,
                             RewardModel::deterministic);
  return optimal_policy(mean_env, gamma).policy;
}

}  // namespace

EPEstimate exploration_potential(const BeliefState& belief, const FiniteEnvironmentClass& cls,
                                 double gamma) {
  require_discount(gamma);
  return {potential_from(belief, cross_values(belief, cls, gamma)), 0.0, 0};
}

BoundReport optimality_bound_check(const FiniteEnvironmentClass& cls, std::size_t true_index,
                                   const BeliefState& belief, double gamma,
                                   const BoundOptions& options) {
  require_discount(gamma);
  if (true_index >= cls.size()) {
    throw std::invalid_argument("true environment index out of range");
  }
  const double w_true = belief.weights[true_index];
  if (!(w_true > 0.0)) {
    throw TrueEnvironmentExcluded();
  }

  const CrossValues cv = cross_values(belief, cls, gamma);
  BoundReport report;
  report.exploration_potential = potential_from(belief, cv);

  const std::size_t S = cls.state_count();
  const std::size_t A = cls.action_count();
  double best = -1.0;
  auto consider = [&](const StationaryPolicy& policy) {
    const double v = mixture_value(belief, cls, policy, gamma).value;
    if (v > best) {
      best = v;
      report.greedy_policy = policy;
    }
  };

  const std::size_t count = policy_count(A, S, options.policy_budget);
  if (count <= options.policy_budget) {
    // Enumerate in lexicographic order (state 0 most significant) so ties go
    // to the lowest actions.
    StationaryPolicy policy{std::vector<std::size_t>(S, 0)};
    for (std::size_t k = 0; k < count; ++k) {
      consider(policy);
      for (std::size_t s = S; s-- > 0;) {
        if (++policy.actions[s] < A) break;
        policy.actions[s] = 0;
      }
    }
  } else {
    consider(mean_model_policy(belief, cls, gamma));
    for (const auto& opt : cv.optimal) {
      if (opt) consider(opt->policy);
    }
  }
  report.mixture_optimum = best;

  const auto& mu = cls[true_index];
  const auto& b_mu = belief.state_beliefs[true_index];
  const double v_star = cv.cross[true_index][true_index];
  const double v_greedy = expect(b_mu, policy_values(mu, report.greedy_policy, gamma));
  report.lhs = v_star - v_greedy;
  report.rhs = (best - v_greedy) + report.exploration_potential / w_true;
  report.holds = report.lhs <= report.rhs + 1e-9;
  return report;
}

}  // namespace ep::core
