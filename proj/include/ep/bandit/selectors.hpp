#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ep/bandit/bandit.hpp"
#include "ep/random.hpp"

namespace ep::bandit {

enum class AlgorithmKind { round_robin, epsilon_greedy, ucb1, ocucb, thompson, oracle, minep };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::round_robin;
  double epsilon = 0.1;            // epsilon-greedy
  std::size_t horizon = 0;         // OCUCB; 0 means "the experiment horizon"
  std::size_t ep_samples = 1000;   // MinEP decisions

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
  std::string_view name() const noexcept;
};

/// Names used on the command line and in CSV output: roundrobin, egreedy,
/// ucb1, ocucb, thompson, oracle, minep.
std::string_view algorithm_name(AlgorithmKind kind) noexcept;
std::optional<AlgorithmKind> parse_algorithm(std::string_view name) noexcept;

std::size_t select_roundrobin(std::size_t t, std::size_t arms);

std::size_t select_egreedy(const BetaPosterior& posterior, double epsilon, Rng& rng);

/// `counts` are per-arm pulls, `means` empirical means, `t` total pulls.
std::size_t select_ucb1(const std::vector<std::size_t>& counts, const std::vector<double>& means,
                        std::size_t t);

/// Index mean + sqrt((alpha / T_i) ln(psi n / t)) with alpha = 3, psi = 2 and
/// t total pulls. The bonus shrinks as t approaches the horizon n.
std::size_t select_ocucb(const std::vector<std::size_t>& counts, const std::vector<double>& means,
                         std::size_t t, std::size_t horizon);

std::size_t select_thompson(const BetaPosterior& posterior, Rng& rng);

std::size_t select_oracle(const BernoulliBandit& bandit);

/// Arm minimizing the posterior-predictive expected EP after one more pull.
/// One seed is drawn from `rng`; all 2k hypothetical EP evaluations share it.
std::size_t select_minep(const BetaPosterior& posterior, std::size_t samples, Rng& rng);

/// Everything an arm-selection rule may look at.
struct AgentState {
  explicit AgentState(std::size_t arms);

  BetaPosterior posterior;
  std::vector<std::size_t> counts;
  std::vector<double> reward_sums;
  std::size_t steps = 0;

  void observe(std::size_t arm, int reward);
  std::vector<double> empirical_means() const;
};

/// Dispatches to the selector for `spec`. `horizon` is used by OCUCB when
/// the spec leaves it unset.
std::size_t select_arm(const AlgorithmSpec& spec, const AgentState& state,
                       const BernoulliBandit& bandit, std::size_t horizon, Rng& rng);

}  // namespace ep::bandit
