#include "ep/bandit/selectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ep/bandit/estimator.hpp"

namespace ep::bandit {

namespace {

constexpr std::array<std::pair<AlgorithmKind, std::string_view>, 7> kNames{{
    {AlgorithmKind::round_robin, "roundrobin"},
    {AlgorithmKind::epsilon_greedy, "egreedy"},
    {AlgorithmKind::ucb1, "ucb1"},
    {AlgorithmKind::ocucb, "ocucb"},
    {AlgorithmKind::thompson, "thompson"},
    {AlgorithmKind::oracle, "oracle"},
    {AlgorithmKind::minep, "minep"},
}};

// OCUCB constants.
constexpr double kOcucbAlpha = 3.0;
constexpr double kOcucbPsi = 2.0;

template <class Index>
std::size_t index_policy(const std::vector<std::size_t>& counts, const std::vector<double>& means,
                         Index&& index) {
  if (counts.empty() || counts.size() != means.size()) {
    throw std::invalid_argument("counts and means must be nonempty and aligned");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) return i;
  }
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double v = index(i);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::string_view algorithm_name(AlgorithmKind kind) noexcept {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<AlgorithmKind> parse_algorithm(std::string_view name) noexcept {
  for (const auto& [k, n] : kNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

void AlgorithmSpec::validate() const {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0,1]");
  }
  if (kind == AlgorithmKind::minep && ep_samples < 2) {
    throw std::invalid_argument("MinEP needs at least 2 EP samples");
  }
}

std::string_view AlgorithmSpec::name() const noexcept { return algorithm_name(kind); }

std::size_t select_roundrobin(std::size_t t, std::size_t arms) {
  if (arms == 0) throw std::invalid_argument("no arms");
  return t % arms;
}

std::size_t select_egreedy(const BetaPosterior& posterior, double epsilon, Rng& rng) {
  const double coin = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (coin < epsilon) {
    return std::uniform_int_distribution<std::size_t>(0, posterior.arm_count() - 1)(rng);
  }
  return argmax(posterior_mean(posterior));
}

std::size_t select_ucb1(const std::vector<std::size_t>& counts, const std::vector<double>& means,
                        std::size_t t) {
  const double log_t = std::log(static_cast<double>(std::max<std::size_t>(t, 1)));
  return index_policy(counts, means, [&](std::size_t i) {
    return means[i] + std::sqrt(2.0 * log_t / static_cast<double>(counts[i]));
  });
}

std::size_t select_ocucb(const std::vector<std::size_t>& counts, const std::vector<double>& means,
                         std::size_t t, std::size_t horizon) {
  if (horizon == 0) throw std::invalid_argument("OCUCB horizon must be at least 1");
  const double n = static_cast<double>(horizon);
  return index_policy(counts, means, [&](std::size_t i) {
    const double pulls = static_cast<double>(counts[i]);
    // log clamped at 0 past psi * n total pulls
    const double log_term = std::max(0.0, std::log(kOcucbPsi * n / std::max<double>(1.0, t)));
    return means[i] + std::sqrt(kOcucbAlpha / pulls * log_term);
  });
}

std::size_t select_thompson(const BetaPosterior& posterior, Rng& rng) {
  std::vector<double> theta(posterior.arm_count());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = sample_beta(posterior[i], rng);
  return argmax(theta);
}

std::size_t select_oracle(const BernoulliBandit& bandit) { return bandit.best_arm(); }

std::size_t select_minep(const BetaPosterior& posterior, std::size_t samples, Rng& rng) {
  CommonRandomPool pool(rng(), samples);
  std::size_t best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::size_t arm = 0; arm < posterior.arm_count(); ++arm) {
    const double v = expected_ep_after(posterior, arm, pool).value;
    if (v < best_value) {
      best_value = v;
      best = arm;
    }
  }
  return best;
}

AgentState::AgentState(std::size_t arms)
    : posterior(BetaPosterior::uniform(arms)), counts(arms, 0), reward_sums(arms, 0.0) {}

void AgentState::observe(std::size_t arm, int reward) {
  posterior.observe(arm, reward);
  ++counts[arm];
  reward_sums[arm] += reward;
  ++steps;
}

std::vector<double> AgentState::empirical_means() const {
  std::vector<double> out(counts.size(), 0.0);
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out[i] = reward_sums[i] / static_cast<double>(counts[i]);
  }
  return out;
}

std::size_t select_arm(const AlgorithmSpec& spec, const AgentState& state,
                       const BernoulliBandit& bandit, std::size_t horizon, Rng& rng) {
  switch (spec.kind) {
    case AlgorithmKind::round_robin:
      return select_roundrobin(state.steps, bandit.arm_count());
    case AlgorithmKind::epsilon_greedy:
      return select_egreedy(state.posterior, spec.epsilon, rng);
    case AlgorithmKind::ucb1:
      return select_ucb1(state.counts, state.empirical_means(), state.steps);
    case AlgorithmKind::ocucb:
      return select_ocucb(state.counts, state.empirical_means(), state.steps,
                          spec.horizon != 0 ? spec.horizon : horizon);
    case AlgorithmKind::thompson:
      return select_thompson(state.posterior, rng);
    case AlgorithmKind::oracle:
      return select_oracle(bandit);
    case AlgorithmKind::minep:
      return select_minep(state.posterior, spec.ep_samples, rng);
  }
  throw std::logic_error("unhandled algorithm kind");
}

}  // namespace ep::bandit
