#pragma once

#include <cstddef>
#include <vector>

#include "ep/random.hpp"

namespace ep::bandit {

/// Bernoulli bandit with true arm means theta*.
class BernoulliBandit {
 public:
  explicit BernoulliBandit(std::vector<double> means);

  std::size_t arm_count() const noexcept { return means_.size(); }
  double mean(std::size_t arm) const { return means_.at(arm); }
  const std::vector<double>& means() const noexcept { return means_; }
  /// Index of the largest mean, lowest index on ties.
  std::size_t best_arm() const noexcept { return best_; }
  double best_mean() const noexcept { return means_[best_]; }

 private:
  std::vector<double> means_;
  std::size_t best_ = 0;
};

/// Draws a reward for `arm`. Consumes exactly one uniform draw from `rng`.
int pull(const BernoulliBandit& bandit, std::size_t arm, Rng& rng);

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const noexcept { return alpha / (alpha + beta); }
  friend bool operator==(const BetaParams&, const BetaParams&) = default;
  friend auto operator<=>(const BetaParams&, const BetaParams&) = default;
};

/// Independent Beta posterior per arm.
class BetaPosterior {
 public:
  /// Beta(1,1) on each of `arms` arms.
  static BetaPosterior uniform(std::size_t arms);
  explicit BetaPosterior(std::vector<BetaParams> arms);

  std::size_t arm_count() const noexcept { return arms_.size(); }
  const BetaParams& operator[](std::size_t arm) const { return arms_[arm]; }
  const std::vector<BetaParams>& arms() const noexcept { return arms_; }

  /// In-place conjugate update.
  void observe(std::size_t arm, int reward);

  friend bool operator==(const BetaPosterior&, const BetaPosterior&) = default;

 private:
  std::vector<BetaParams> arms_;
};

BetaPosterior beta_update(BetaPosterior posterior, std::size_t arm, int reward);

/// Bayes-mean parameter theta-hat.
std::vector<double> posterior_mean(const BetaPosterior& posterior);

/// One draw from Beta(alpha, beta) via the gamma ratio.
double sample_beta(const BetaParams& params, Rng& rng);

/// argmax with lowest-index tie-break.
template <class Range>
std::size_t argmax(const Range& values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < std::size(values); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

}  // namespace ep::bandit
