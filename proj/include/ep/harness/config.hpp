#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ep/bandit/selectors.hpp"

namespace ep::harness {

struct ExperimentConfig {
  std::vector<double> means;
  std::vector<bandit::AlgorithmSpec> algorithms;
  std::size_t horizon = 10'000;
  std::size_t seeds = 100;
  std::size_t ep_samples = 1000;
  /// Sorted timesteps in [1, horizon] at which EP is recorded.
  std::vector<std::size_t> ep_schedule;
  std::uint64_t base_seed = 0;
  /// Worker threads for multi-seed runs; 0 picks hardware concurrency.
  std::size_t threads = 0;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
};

/// Roughly `per_decade` log-spaced timesteps in [1, horizon]; always contains
/// 1 and horizon.
std::vector<std::size_t> geometric_schedule(std::size_t horizon, std::size_t per_decade = 50);

/// Arms 0.6, 0.5, 0.4, 0.4 with all seven algorithms.
ExperimentConfig canonical_config();

}  // namespace ep::harness
