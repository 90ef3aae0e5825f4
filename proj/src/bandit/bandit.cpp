#include "ep/bandit/bandit.hpp"

#include <stdexcept>

namespace ep::bandit {

BernoulliBandit::BernoulliBandit(std::vector<double> means) : means_(std::move(means)) {
  if (means_.empty()) {
    throw std::invalid_argument("bandit needs at least one arm");
  }
  for (double m : means_) {
    if (!(m >= 0.0 && m <= 1.0)) {
      throw std::invalid_argument("arm means must lie in [0,1]");
    }
  }
  best_ = argmax(means_);
}

int pull(const BernoulliBandit& bandit, std::size_t arm, Rng& rng) {
  if (arm >= bandit.arm_count()) {
    throw std::out_of_range("arm index out of range");
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  return u < bandit.mean(arm) ? 1 : 0;
}

BetaPosterior BetaPosterior::uniform(std::size_t arms) {
  return BetaPosterior(std::vector<BetaParams>(arms, BetaParams{1.0, 1.0}));
}

BetaPosterior::BetaPosterior(std::vector<BetaParams> arms) : arms_(std::move(arms)) {
  if (arms_.empty()) {
    throw std::invalid_argument("posterior needs at least one arm");
  }
  for (const auto& p : arms_) {
    if (!(p.alpha > 0.0 && p.beta > 0.0)) {
      throw std::invalid_argument("Beta parameters must be positive");
    }
  }
}

void BetaPosterior::observe(std::size_t arm, int reward) {
  if (arm >= arms_.size()) {
    throw std::out_of_range("arm index out of range");
  }
  if (reward != 0 && reward != 1) {
    throw std::invalid_argument("Bernoulli reward must be 0 or 1");
  }
  arms_[arm].alpha += reward;
  arms_[arm].beta += 1 - reward;
}

BetaPosterior beta_update(BetaPosterior posterior, std::size_t arm, int reward) {
  posterior.observe(arm, reward);
  return posterior;
}

std::vector<double> posterior_mean(const BetaPosterior& posterior) {
  std::vector<double> out;
  out.reserve(posterior.arm_count());
  for (const auto& p : posterior.arms()) out.push_back(p.mean());
  return out;
}

double sample_beta(const BetaParams& params, Rng& rng) {
  const double x = std::gamma_distribution<double>(params.alpha, 1.0)(rng);
  const double y = std::gamma_distribution<double>(params.beta, 1.0)(rng);
  return x / (x + y);
}

}  // namespace ep::bandit
