#include "ep/harness/episode.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "ep/bandit/estimator.hpp"

namespace ep::harness {

std::uint64_t episode_seed(std::uint64_t base_seed, std::string_view algorithm, std::size_t seed_index) {
  return hash_combine(hash_combine(mix64(base_seed), hash_name(algorithm)), seed_index);
}

std::uint64_t ep_stream_seed(std::uint64_t episode, std::size_t t) { return hash_combine(episode, t); }

Trace run_episode(const ExperimentConfig& config, const bandit::AlgorithmSpec& algorithm,
                  std::size_t seed_index) {
  const bandit::BernoulliBandit arms(config.means);
  bandit::AgentState state(arms.arm_count());
  const std::uint64_t seed = episode_seed(config.base_seed, algorithm.name(), seed_index);
  Rng rng(seed);

  Trace trace{std::string(algorithm.name()), seed_index, {}};
  trace.records.reserve(config.horizon);
  auto next_ep = config.ep_schedule.begin();
  double regret = 0.0;
  for (std::size_t t = 1; t <= config.horizon; ++t) {
    const std::size_t arm = bandit::select_arm(algorithm, state, arms, config.horizon, rng);
    const int reward = bandit::pull(arms, arm, rng);
    state.observe(arm, reward);
    regret += arms.best_mean() - arms.mean(arm);

    StepRecord rec;
    rec.t = static_cast<std::uint32_t>(t);
    rec.arm = static_cast<std::uint32_t>(arm);
    rec.reward = static_cast<std::uint8_t>(reward);
    rec.regret = regret;
    if (next_ep != config.ep_schedule.end() && *next_ep == t) {
      Rng ep_rng(ep_stream_seed(seed, t));
      rec.ep = bandit::ep_bandit(state.posterior, config.ep_samples, ep_rng);
      ++next_ep;
    }
    trace.records.push_back(rec);
  }
  return trace;
}

std::vector<Trace> run_seeds(const ExperimentConfig& config, const bandit::AlgorithmSpec& algorithm) {
  std::vector<Trace> traces(config.seeds);
  std::size_t workers = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, config.seeds);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < config.seeds; i = next++) {
      try {
        traces[i] = run_episode(config, algorithm, i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return traces;
}

std::vector<double> cumulative_regret(std::span<const std::size_t> arms, std::span<const double> means) {
  if (means.empty()) throw std::invalid_argument("no arm means");
  const double best = *std::max_element(means.begin(), means.end());
  std::vector<double> out;
  out.reserve(arms.size());
  double total = 0.0;
  for (std::size_t a : arms) {
    if (a >= means.size()) throw std::out_of_range("arm index out of range");
    total += best - means[a];
    out.push_back(total);
  }
  return out;
}

}  // namespace ep::harness
