#pragma once

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "ep/bandit/bandit.hpp"
#include "ep/estimate.hpp"
#include "ep/random.hpp"

namespace ep::bandit {

/// Monte-Carlo estimate of the bandit exploration potential
///   E_{theta ~ posterior} |theta_j - thetahat_j|,  j = argmax_i theta_i,
/// from `samples` independent posterior draws taken from `rng` in arm order.
/// Throws std::invalid_argument when samples < 2.
EPEstimate ep_bandit(const BetaPosterior& posterior, std::size_t samples, Rng& rng);

/// Common random numbers for comparing EP across related posteriors.
///
/// Posterior draws are generated per (alpha, beta, occurrence) key from a seed
/// derived from that key, and each posterior is evaluated with its arms in
/// canonical (sorted) order. Posteriors that share an arm parameter therefore
/// share that arm's draws, and posteriors that are permutations of each other
/// get bit-identical estimates.
class CommonRandomPool {
 public:
  CommonRandomPool(std::uint64_t seed, std::size_t samples);

  std::size_t samples() const noexcept { return samples_; }
  EPEstimate ep(const BetaPosterior& posterior);

  /// Draw columns of `posterior` in canonical order.
  struct Slot {
    BetaParams params;
    const double* draws;
  };
  std::vector<Slot> slots(const BetaPosterior& posterior);

 private:
  using Key = std::tuple<double, double, std::size_t>;
  const std::vector<double>& draws(const Key& key);

  std::uint64_t seed_;
  std::size_t samples_;
  std::map<Key, std::vector<double>> pools_;
};

/// Posterior-predictive expectation of next-step EP for one arm.
struct ExpectedEp {
  double value = 0.0;
  double std_error = 0.0;
  double p_success = 0.0;
  EPEstimate success;  // EP after observing reward 1
  EPEstimate failure;  // EP after observing reward 0
};

/// Evaluates both hypothetical posteriors on draws from the current posterior
/// in a common pool seeded from one draw of `rng`. The outcome is integrated
/// exactly per draw; `success` and `failure` are importance-weighted estimates
/// on the same draws, so value = p * success + (1 - p) * failure.
ExpectedEp expected_ep_after(const BetaPosterior& posterior, std::size_t arm, std::size_t samples,
                             Rng& rng);
ExpectedEp expected_ep_after(const BetaPosterior& posterior, std::size_t arm, CommonRandomPool& pool);

}  // namespace ep::bandit
