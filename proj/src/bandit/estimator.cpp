#include "ep/bandit/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ep::bandit {

namespace {

// Welford accumulator for the mean and its standard error.
class Accumulator {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  EPEstimate estimate() const {
    const double variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
    return {std::clamp(mean_, 0.0, 1.0), std::sqrt(variance / static_cast<double>(n_)), n_};
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void require_samples(std::size_t samples) {
  if (samples < 2) {
    throw std::invalid_argument("EP estimation needs at least 2 samples");
  }
}

}  // namespace

EPEstimate ep_bandit(const BetaPosterior& posterior, std::size_t samples, Rng& rng) {
  require_samples(samples);
  const std::size_t k = posterior.arm_count();
  const std::vector<double> means = posterior_mean(posterior);
  std::vector<double> theta(k);
  Accumulator acc;
  for (std::size_t n = 0; n < samples; ++n) {
    for (std::size_t i = 0; i < k; ++i) theta[i] = sample_beta(posterior[i], rng);
    const std::size_t j = argmax(theta);
    acc.add(std::abs(theta[j] - means[j]));
  }
  return acc.estimate();
}

CommonRandomPool::CommonRandomPool(std::uint64_t seed, std::size_t samples)
    : seed_(seed), samples_(samples) {
  require_samples(samples);
}

const std::vector<double>& CommonRandomPool::draws(const Key& key) {
  auto it = pools_.find(key);
  if (it != pools_.end()) return it->second;

  const auto& [alpha, beta, occurrence] = key;
  std::uint64_t s = hash_combine(seed_, std::bit_cast<std::uint64_t>(alpha));
  s = hash_combine(s, std::bit_cast<std::uint64_t>(beta));
  s = hash_combine(s, occurrence);
  Rng rng(s);
  std::gamma_distribution<double> ga(alpha, 1.0);
  std::gamma_distribution<double> gb(beta, 1.0);
  std::vector<double> pool(samples_);
  for (double& x : pool) {
    const double a = ga(rng);
    const double b = gb(rng);
    x = a / (a + b);
  }
  return pools_.emplace(key, std::move(pool)).first->second;
}

std::vector<CommonRandomPool::Slot> CommonRandomPool::slots(const BetaPosterior& posterior) {
  std::vector<BetaParams> params = posterior.arms();
  std::sort(params.begin(), params.end());
  std::vector<Slot> out;
  out.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    std::size_t occurrence = 0;
    while (occurrence < i && params[i - occurrence - 1] == params[i]) ++occurrence;
    out.push_back({params[i], draws({params[i].alpha, params[i].beta, occurrence}).data()});
  }
  return out;
}

EPEstimate CommonRandomPool::ep(const BetaPosterior& posterior) {
  const auto columns = slots(posterior);
  Accumulator acc;
  for (std::size_t n = 0; n < samples_; ++n) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < columns.size(); ++i) {
      if (columns[i].draws[n] > columns[j].draws[n]) j = i;
    }
    acc.add(std::abs(columns[j].draws[n] - columns[j].params.mean()));
  }
  return acc.estimate();
}

ExpectedEp expected_ep_after(const BetaPosterior& posterior, std::size_t arm, std::size_t samples,
                             Rng& rng) {
  CommonRandomPool pool(rng(), samples);
  return expected_ep_after(posterior, arm, pool);
}

// The predictive mixture p Beta(a+1, b) + (1-p) Beta(a, b+1) is Beta(a, b), so
// drawing theta from the current posterior and the outcome r ~ Bernoulli(theta_arm)
// gives theta | r distributed as the hypothetical posterior. Integrating r out
// per draw leaves only the Bayes mean of the pulled arm depending on r. All arms
// of one decision are then scored on the same draws; the per-outcome estimates
// are the importance-weighted versions of the same sum.
ExpectedEp expected_ep_after(const BetaPosterior& posterior, std::size_t arm, CommonRandomPool& pool) {
  if (arm >= posterior.arm_count()) {
    throw std::out_of_range("arm index out of range");
  }
  const auto columns = pool.slots(posterior);
  const BetaParams pulled = posterior[arm];
  // first slot holding the pulled arm's parameters, so exchangeable arms
  // receive identical scores
  std::size_t slot = 0;
  while (!(columns[slot].params == pulled)) ++slot;

  const double p = pulled.mean();
  const double q = 1.0 - p;
  const double total = pulled.alpha + pulled.beta + 1.0;
  const double mean_success = (pulled.alpha + 1.0) / total;
  const double mean_failure = pulled.alpha / total;

  Accumulator combined;
  Accumulator success;
  Accumulator failure;
  for (std::size_t n = 0; n < pool.samples(); ++n) {
    std::size_t j = 0;
    for (std::size_t i = 1; i < columns.size(); ++i) {
      if (columns[i].draws[n] > columns[j].draws[n]) j = i;
    }
    const double best = columns[j].draws[n];
    double dev_success = 0.0;
    double dev_failure = 0.0;
    if (j == slot) {
      dev_success = std::abs(best - mean_success);
      dev_failure = std::abs(best - mean_failure);
    } else {
      dev_success = dev_failure = std::abs(best - columns[j].params.mean());
    }
    const double theta = columns[slot].draws[n];
    combined.add(theta * dev_success + (1.0 - theta) * dev_failure);
    success.add(theta / p * dev_success);
    failure.add((1.0 - theta) / q * dev_failure);
  }
  ExpectedEp out;
  const EPEstimate c = combined.estimate();
  out.value = c.value;
  out.std_error = c.std_error;
  out.p_success = p;
  out.success = success.estimate();
  out.failure = failure.estimate();
  return out;
}

}  // namespace ep::bandit
