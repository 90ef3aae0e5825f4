#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ep/estimate.hpp"
#include "ep/harness/config.hpp"

namespace ep::harness {

struct StepRecord {
  std::uint32_t t = 0;
  std::uint32_t arm = 0;
  std::uint8_t reward = 0;
  double regret = 0.0;  // cumulative pseudo-regret through step t
  std::optional<EPEstimate> ep;
};

struct Trace {
  std::string algorithm;
  std::size_t seed = 0;
  std::vector<StepRecord> records;
};

/// Seed of the episode's main stream.
std::uint64_t episode_seed(std::uint64_t base_seed, std::string_view algorithm, std::size_t seed_index);
/// Seed of the EP-estimation sub-stream at step t.
std::uint64_t ep_stream_seed(std::uint64_t episode, std::size_t t);

/// Runs one seeded episode. Arm selection and rewards draw from the episode
/// stream; EP estimation at scheduled steps draws from its own sub-stream, so
/// the schedule never changes the arm sequence.
Trace run_episode(const ExperimentConfig& config, const bandit::AlgorithmSpec& algorithm,
                  std::size_t seed_index);

/// All `config.seeds` episodes of one algorithm, ordered by seed, run on
/// config.threads workers.
std::vector<Trace> run_seeds(const ExperimentConfig& config, const bandit::AlgorithmSpec& algorithm);

/// regret_t = sum_{s <= t} (max_i means_i - means_{arm_s}).
std::vector<double> cumulative_regret(std::span<const std::size_t> arms, std::span<const double> means);

}  // namespace ep::harness
