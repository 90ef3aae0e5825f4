#include "ep/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ep::harness {

void ExperimentConfig::validate() const {
  if (means.empty()) throw std::invalid_argument("at least one arm is required");
  for (double m : means) {
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("arm means must lie in [0,1]");
  }
  if (algorithms.empty()) throw std::invalid_argument("at least one algorithm is required");
  for (const auto& a : algorithms) a.validate();
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (seeds < 1) throw std::invalid_argument("seed count must be at least 1");
  if (!ep_schedule.empty() && ep_samples < 2) {
    throw std::invalid_argument("EP estimation needs at least 2 samples");
  }
  for (std::size_t i = 0; i < ep_schedule.size(); ++i) {
    if (ep_schedule[i] < 1 || ep_schedule[i] > horizon) {
      throw std::invalid_argument("EP schedule must lie within [1, horizon]");
    }
    if (i > 0 && ep_schedule[i] <= ep_schedule[i - 1]) {
      throw std::invalid_argument("EP schedule must be strictly increasing");
    }
  }
}

std::vector<std::size_t> geometric_schedule(std::size_t horizon, std::size_t per_decade) {
  if (horizon < 1 || per_decade < 1) throw std::invalid_argument("invalid schedule parameters");
  std::vector<std::size_t> out;
  for (std::size_t i = 0;; ++i) {
    const double t = std::round(std::pow(10.0, static_cast<double>(i) / static_cast<double>(per_decade)));
    if (t > static_cast<double>(horizon)) break;
    const auto step = static_cast<std::size_t>(t);
    if (out.empty() || out.back() != step) out.push_back(step);
  }
  if (out.back() != horizon) out.push_back(horizon);
  return out;
}

ExperimentConfig canonical_config() {
  using bandit::AlgorithmKind;
  ExperimentConfig config;
  config.means = {0.6, 0.5, 0.4, 0.4};
  for (auto kind : {AlgorithmKind::round_robin, AlgorithmKind::epsilon_greedy, AlgorithmKind::ucb1,
                    AlgorithmKind::ocucb, AlgorithmKind::thompson, AlgorithmKind::oracle,
                    AlgorithmKind::minep}) {
    config.algorithms.push_back({.kind = kind});
  }
  config.ep_schedule = geometric_schedule(config.horizon);
  return config;
}

}  // namespace ep::harness
