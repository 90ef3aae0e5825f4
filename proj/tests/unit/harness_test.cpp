#include <gtest/gtest.h>

#include <cmath>

#include "ep/harness/aggregate.hpp"

namespace ep::harness {
namespace {

using bandit::AlgorithmKind;
using bandit::AlgorithmSpec;

ExperimentConfig small_config(std::size_t horizon) {
  ExperimentConfig c = canonical_config();
  c.horizon = horizon;
  c.seeds = 3;
  c.ep_samples = 200;
  c.ep_schedule = geometric_schedule(horizon);
  c.threads = 1;
  return c;
}

Trace constant_trace(std::size_t seed, double regret, double ep, std::size_t length = 5) {
  Trace tr{"x", seed, {}};
  for (std::size_t t = 1; t <= length; ++t) {
    StepRecord r;
    r.t = static_cast<std::uint32_t>(t);
    r.regret = regret;
    r.ep = EPEstimate{ep, 0.0, 10};
    tr.records.push_back(r);
  }
  return tr;
}

TEST(Schedule, GeometricSpacing) {
  const auto s = geometric_schedule(10'000);
  EXPECT_EQ(s.front(), 1u);
  EXPECT_EQ(s.back(), 10'000u);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
  std::size_t last_decade = 0;
  for (std::size_t t : s) last_decade += t >= 1000;
  EXPECT_NEAR(static_cast<double>(last_decade), 51.0, 1.0);
  EXPECT_EQ(geometric_schedule(1), std::vector<std::size_t>{1});
  EXPECT_EQ(geometric_schedule(7).back(), 7u);
}

TEST(Config, Validation) {
  auto c = small_config(10);
  EXPECT_NO_THROW(c.validate());
  c.ep_schedule = {0, 5};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config(10);
  c.ep_schedule = {3, 3};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config(10);
  c.means = {0.5, 1.1};
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = small_config(10);
  c.seeds = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(RunEpisode, OracleHasZeroRegret) {
  const auto trace = run_episode(small_config(500), {.kind = AlgorithmKind::oracle}, 0);
  ASSERT_EQ(trace.records.size(), 500u);
  for (const auto& r : trace.records) {
    EXPECT_EQ(r.arm, 0u);
    EXPECT_EQ(r.regret, 0.0);
  }
}

TEST(RunEpisode, RoundRobinRegret) {
  const auto trace = run_episode(small_config(400), {.kind = AlgorithmKind::round_robin}, 0);
  EXPECT_NEAR(trace.records.back().regret, 100 * 0.0 + 100 * 0.1 + 200 * 0.2, 1e-9);
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    EXPECT_EQ(trace.records[i].t, i + 1);
    EXPECT_EQ(trace.records[i].arm, i % 4);
  }
}

TEST(RunEpisode, DeterministicAndMonotone) {
  const auto config = small_config(300);
  for (const auto& alg : config.algorithms) {
    const auto a = run_episode(config, alg, 2);
    const auto b = run_episode(config, alg, 2);
    ASSERT_EQ(a.records.size(), b.records.size());
    double prev = 0.0;
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      EXPECT_EQ(a.records[i].arm, b.records[i].arm);
      EXPECT_EQ(a.records[i].reward, b.records[i].reward);
      EXPECT_EQ(a.records[i].regret, b.records[i].regret);
      ASSERT_EQ(a.records[i].ep.has_value(), b.records[i].ep.has_value());
      if (a.records[i].ep) {
        EXPECT_EQ(a.records[i].ep->value, b.records[i].ep->value);
        EXPECT_GE(a.records[i].ep->value, 0.0);
        EXPECT_LE(a.records[i].ep->value, 1.0);
      }
      EXPECT_GE(a.records[i].regret, prev);
      prev = a.records[i].regret;
    }
  }
}

TEST(RunEpisode, EpRecordingDoesNotPerturbArms) {
  auto with = small_config(400);
  auto without = with;
  without.ep_schedule.clear();
  for (const auto& alg : with.algorithms) {
    const auto a = run_episode(with, alg, 1);
    const auto b = run_episode(without, alg, 1);
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      ASSERT_EQ(a.records[i].arm, b.records[i].arm) << alg.name() << " t=" << i + 1;
      ASSERT_EQ(a.records[i].reward, b.records[i].reward);
      EXPECT_FALSE(b.records[i].ep.has_value());
    }
  }
}

TEST(RunSeeds, OrderedAndIndependentOfThreadCount) {
  auto config = small_config(200);
  config.seeds = 5;
  const AlgorithmSpec alg{.kind = AlgorithmKind::thompson};
  const auto serial = run_seeds(config, alg);
  config.threads = 3;
  const auto parallel = run_seeds(config, alg);
  for (std::size_t s = 0; s < 5; ++s) {
    EXPECT_EQ(serial[s].seed, s);
    const auto single = run_episode(config, alg, s);
    for (std::size_t i = 0; i < single.records.size(); ++i) {
      EXPECT_EQ(serial[s].records[i].arm, single.records[i].arm);
      EXPECT_EQ(parallel[s].records[i].arm, single.records[i].arm);
    }
  }
}

TEST(CumulativeRegret, Examples) {
  const std::vector<double> means{0.6, 0.5, 0.4, 0.4};
  for (double r : cumulative_regret(std::vector<std::size_t>(10, 0), means)) EXPECT_EQ(r, 0.0);
  EXPECT_NEAR(cumulative_regret(std::vector<std::size_t>{1}, means)[0], 0.1, 1e-15);
  const std::size_t m = 25;
  std::vector<std::size_t> arms;
  for (std::size_t i = 0; i < 4 * m; ++i) arms.push_back(i % 4);
  EXPECT_NEAR(cumulative_regret(arms, means).back(), m * (0.0 + 0.1 + 0.2 + 0.2), 1e-12);
  EXPECT_THROW(cumulative_regret(std::vector<std::size_t>{4}, means), std::out_of_range);
}

TEST(Aggregate, SingleSeedHasZeroStd) {
  const std::vector<Trace> one{constant_trace(0, 2.0, 0.3)};
  const auto agg = aggregate(one);
  EXPECT_EQ(agg.seed_count, 1u);
  for (const auto& p : agg.points) {
    EXPECT_EQ(p.regret.std, 0.0);
    EXPECT_EQ(p.ep->std, 0.0);
  }
}

TEST(Aggregate, ConstantFamily) {
  std::vector<Trace> traces;
  for (std::size_t s = 0; s < 7; ++s) traces.push_back(constant_trace(s, 1.25, 0.125));
  for (const auto& p : aggregate(traces).points) {
    EXPECT_DOUBLE_EQ(p.regret.mean, 1.25);
    EXPECT_EQ(p.regret.std, 0.0);
    EXPECT_DOUBLE_EQ(p.ep->mean, 0.125);
    EXPECT_EQ(p.ep->std, 0.0);
  }
}

TEST(Aggregate, TwoValues) {
  const std::vector<Trace> traces{constant_trace(0, 0.0, 0.1), constant_trace(1, 1.0, 0.1)};
  const auto p = aggregate(traces).points.front();
  EXPECT_DOUBLE_EQ(p.regret.mean, 0.5);
  EXPECT_NEAR(p.regret.std, 0.7071067811865476, 1e-15);
}

TEST(Aggregate, RejectsMismatchedTraces) {
  const std::vector<Trace> traces{constant_trace(0, 0.0, 0.1, 5), constant_trace(1, 1.0, 0.1, 4)};
  EXPECT_THROW(aggregate(traces), std::invalid_argument);
  EXPECT_THROW(aggregate(std::span<const Trace>{}), std::invalid_argument);
}

TEST(SlopeFit, SyntheticSeries) {
  AggregateSeries s;
  for (std::size_t t : geometric_schedule(10'000)) {
    AggregatePoint p;
    p.t = t;
    p.ep = Moments{1.0 / std::sqrt(static_cast<double>(t)), 0.0};
    s.points.push_back(p);
  }
  EXPECT_NEAR(slope_fit(s, 1, 10'000), -0.5, 1e-9);
  EXPECT_NEAR(slope_fit(s, 1000, 10'000), -0.5, 1e-9);
  for (auto& p : s.points) p.ep->mean = 0.3;
  EXPECT_NEAR(slope_fit(s, 1, 10'000), 0.0, 1e-12);
  EXPECT_THROW(slope_fit(s, 9990, 10'000), std::invalid_argument);
}

}  // namespace
}  // namespace ep::harness
