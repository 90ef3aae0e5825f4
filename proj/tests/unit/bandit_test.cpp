#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ep/bandit/estimator.hpp"
#include "ep/bandit/selectors.hpp"
#include "oracles/brute_force.hpp"

namespace ep::bandit {
namespace {

BetaPosterior make(std::vector<BetaParams> arms) { return BetaPosterior(std::move(arms)); }

TEST(Pull, DegenerateMeans) {
  Rng rng(1);
  const BernoulliBandit b({1.0, 0.0});
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(pull(b, 0, rng), 1);
    EXPECT_EQ(pull(b, 1, rng), 0);
  }
  EXPECT_THROW(pull(b, 2, rng), std::out_of_range);
}

TEST(Pull, EmpiricalFrequency) {
  Rng rng(2);
  const BernoulliBandit b({0.6});
  int ones = 0;
  for (int i = 0; i < 100'000; ++i) ones += pull(b, 0, rng);
  EXPECT_NEAR(ones / 1e5, 0.6, 0.005);
}

TEST(Pull, ConsumesOneDraw) {
  Rng a(3), b(3);
  pull(BernoulliBandit({0.3}), 0, a);
  b.discard(1);
  EXPECT_EQ(a(), b());
}

TEST(BernoulliBandit, RejectsInvalidMeans) {
  EXPECT_THROW(BernoulliBandit({}), std::invalid_argument);
  EXPECT_THROW(BernoulliBandit({0.5, 1.2}), std::invalid_argument);
  EXPECT_EQ(BernoulliBandit({0.6, 0.5, 0.4, 0.4}).best_arm(), 0u);
}

TEST(BetaUpdate, Conjugacy) {
  EXPECT_EQ(beta_update(make({{1, 1}}), 0, 1)[0], (BetaParams{2, 1}));
  EXPECT_EQ(beta_update(make({{3, 2}}), 0, 0)[0], (BetaParams{3, 3}));
  EXPECT_THROW(beta_update(make({{1, 1}}), 1, 0), std::out_of_range);

  auto p = BetaPosterior::uniform(2);
  for (int r : {1, 1, 0, 1, 0, 1, 1, 0, 0, 1}) p = beta_update(p, 0, r);
  EXPECT_EQ(p[0], (BetaParams{7, 5}));
  EXPECT_EQ(p[1], (BetaParams{1, 1}));
  EXPECT_NEAR(posterior_mean(p)[0], 7.0 / 12.0, 1e-15);
}

TEST(BetaUpdate, CommutesOverPermutations) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::pair<std::size_t, int>> obs;
    for (int i = 0; i < 40; ++i) {
      obs.emplace_back(std::uniform_int_distribution<std::size_t>(0, 2)(rng),
                       std::uniform_int_distribution<int>(0, 1)(rng));
    }
    auto a = BetaPosterior::uniform(3);
    for (auto [arm, r] : obs) a = beta_update(a, arm, r);
    std::shuffle(obs.begin(), obs.end(), rng);
    auto b = BetaPosterior::uniform(3);
    for (auto [arm, r] : obs) b = beta_update(b, arm, r);
    EXPECT_EQ(a, b);
    double pseudo = 0.0;
    for (const auto& p : a.arms()) pseudo += p.alpha + p.beta - 2.0;
    EXPECT_EQ(pseudo, 40.0);
  }
}

TEST(PosteriorMean, ClosedFormAndMonteCarlo) {
  for (double m : posterior_mean(BetaPosterior::uniform(3))) EXPECT_EQ(m, 0.5);
  const BetaParams p{7, 5};
  Rng rng(5);
  double sum = 0.0;
  const int n = 100'000;
  for (int i = 0; i < n; ++i) sum += sample_beta(p, rng);
  const double sd = std::sqrt(7.0 * 5.0 / (144.0 * 13.0));
  EXPECT_NEAR(sum / n, 7.0 / 12.0, 3.0 * sd / std::sqrt(n));
}

TEST(EpBandit, OneArmUniformIsQuarter) {
  EXPECT_NEAR(oracle::beta_mad(1, 1), 0.25, 1e-9);
  Rng rng(6);
  const auto est = ep_bandit(BetaPosterior::uniform(1), 100'000, rng);
  EXPECT_NEAR(est.value, 0.25, 4.0 * est.std_error);
  EXPECT_EQ(est.sample_count, 100'000u);
}

TEST(EpBandit, TwoArmUniformIsQuarter) {
  // closed form: E|max(U1,U2) - 1/2| = int_0^1 2m |m - 1/2| dm
  const int panels = 100'000;
  double integral = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double m = (i + 0.5) / panels;
    integral += 2.0 * m * std::abs(m - 0.5) / panels;
  }
  EXPECT_NEAR(integral, 0.25, 1e-9);

  // independent Monte-Carlo oracle straight from uniforms
  std::mt19937 mc(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double mc_sum = 0.0;
  for (int i = 0; i < 200'000; ++i) mc_sum += std::abs(std::max(u(mc), u(mc)) - 0.5);
  EXPECT_NEAR(mc_sum / 200'000, 0.25, 0.002);

  Rng rng(7);
  const auto est = ep_bandit(BetaPosterior::uniform(2), 100'000, rng);
  EXPECT_NEAR(est.value, 0.25, 4.0 * est.std_error);
}

TEST(EpBandit, DegenerateConcentration) {
  Rng rng(8);
  const auto est = ep_bandit(make({{1e6, 1}, {1, 1e6}, {1, 1e6}}), 10'000, rng);
  EXPECT_LT(est.value, 1e-4);
}

TEST(EpBandit, RequiresTwoSamples) {
  Rng rng(9);
  EXPECT_THROW(ep_bandit(BetaPosterior::uniform(2), 1, rng), std::invalid_argument);
}

TEST(EpBandit, DeterministicGivenSeed) {
  Rng a(10), b(10);
  const auto post = make({{3, 4}, {5, 2}, {1, 1}});
  const auto x = ep_bandit(post, 1000, a);
  const auto y = ep_bandit(post, 1000, b);
  EXPECT_EQ(x.value, y.value);
  EXPECT_EQ(x.std_error, y.std_error);
}

TEST(EpBandit, StdErrorShrinksAsInverseSqrt) {
  Rng rng(11);
  const auto post = make({{3, 4}, {5, 2}, {2, 2}});
  double small = 0.0, large = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    small += ep_bandit(post, 1000, rng).std_error;
    large += ep_bandit(post, 4000, rng).std_error;
  }
  EXPECT_NEAR(small / large, 2.0, 0.4);
}

TEST(EpBandit, RangeProperty) {
  Rng rng(12);
  std::uniform_real_distribution<double> param(0.5, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BetaParams> arms(std::uniform_int_distribution<int>(1, 6)(rng));
    for (auto& a : arms) a = {param(rng), param(rng)};
    const auto est = ep_bandit(BetaPosterior(arms), 200, rng);
    EXPECT_GE(est.value, 0.0);
    EXPECT_LE(est.value, 1.0);
    EXPECT_GE(est.std_error, 0.0);
  }
}

TEST(EpBandit, OneArmDecreasesWithSuccesses) {
  double prev_oracle = 1.0;
  double prev_est = 1.0;
  for (int n : {0, 1, 2, 4, 8, 16, 32}) {
    const double truth = oracle::beta_mad(n + 1.0, 1.0);
    EXPECT_LT(truth, prev_oracle);
    Rng rng(100 + n);
    const auto est = ep_bandit(make({{n + 1.0, 1.0}}), 100'000, rng);
    EXPECT_NEAR(est.value, truth, 4.0 * est.std_error) << "n = " << n;
    EXPECT_LT(est.value, prev_est);
    prev_oracle = truth;
    prev_est = est.value;
  }
}

TEST(CommonRandomPool, PermutedPosteriorsAgreeExactly) {
  CommonRandomPool pool(13, 500);
  const auto a = pool.ep(make({{2, 1}, {1, 3}, {4, 4}}));
  const auto b = pool.ep(make({{4, 4}, {2, 1}, {1, 3}}));
  EXPECT_EQ(a.value, b.value);
}

TEST(CommonRandomPool, MatchesClosedFormOneArm) {
  CommonRandomPool pool(14, 100'000);
  const auto est = pool.ep(BetaPosterior::uniform(1));
  EXPECT_NEAR(est.value, 0.25, 4.0 * est.std_error);
}

TEST(ExpectedEpAfter, OneArmMatchesQuadratureOracle) {
  // predictive P(success) = 1/2 under Beta(1,1)
  const double truth = 0.5 * oracle::beta_mad(2, 1) + 0.5 * oracle::beta_mad(1, 2);
  Rng rng(15);
  const auto e = expected_ep_after(BetaPosterior::uniform(1), 0, 100'000, rng);
  EXPECT_NEAR(e.value, truth, 4.0 * e.std_error);
  EXPECT_NEAR(e.success.value, oracle::beta_mad(2, 1), 4.0 * e.success.std_error);
  EXPECT_NEAR(e.failure.value, oracle::beta_mad(1, 2), 4.0 * e.failure.std_error);
  EXPECT_DOUBLE_EQ(e.p_success, 0.5);
}

TEST(ExpectedEpAfter, OneArmNonUniformPosterior) {
  const BetaParams p{3, 5};
  const double ps = 3.0 / 8.0;
  const double truth = ps * oracle::beta_mad(4, 5) + (1 - ps) * oracle::beta_mad(3, 6);
  Rng rng(16);
  const auto e = expected_ep_after(make({p}), 0, 100'000, rng);
  EXPECT_NEAR(e.value, truth, 4.0 * e.std_error);
}

TEST(ExpectedEpAfter, KnownArmChangesLess) {
  Rng a(17), b(17);
  const auto known = expected_ep_after(make({{1e6, 1}, {1, 1e6}}), 0, 2000, a).value;
  const auto fresh = expected_ep_after(make({{1, 1}, {1, 1e6}}), 0, 2000, b).value;
  EXPECT_LT(known, fresh);
}

TEST(ExpectedEpAfter, ConvexCombinationOfOutcomes) {
  Rng rng(18);
  std::uniform_real_distribution<double> param(1.0, 30.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<BetaParams> arms(std::uniform_int_distribution<int>(1, 4)(rng));
    for (auto& x : arms) x = {std::round(param(rng)), std::round(param(rng))};
    const BetaPosterior post(arms);
    const std::size_t arm = std::uniform_int_distribution<std::size_t>(0, arms.size() - 1)(rng);
    const auto e = expected_ep_after(post, arm, 300, rng);
    EXPECT_LE(std::min(e.success.value, e.failure.value), e.value + 1e-12);
    EXPECT_GE(std::max(e.success.value, e.failure.value), e.value - 1e-12);
    EXPECT_NEAR(e.value, e.p_success * e.success.value + (1 - e.p_success) * e.failure.value, 1e-12);
  }
}

TEST(ExpectedEpAfter, ArmOutOfRange) {
  Rng rng(19);
  EXPECT_THROW(expected_ep_after(BetaPosterior::uniform(2), 2, 100, rng), std::out_of_range);
}

TEST(Selectors, RoundRobin) {
  EXPECT_EQ(select_roundrobin(0, 4), 0u);
  EXPECT_EQ(select_roundrobin(5, 4), 1u);
  EXPECT_EQ(select_roundrobin(4000, 4), 0u);
}

TEST(Selectors, EpsilonGreedy) {
  Rng rng(20);
  const auto post = make({{9, 1}, {1, 9}});
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(select_egreedy(post, 0.0, rng), 0u);
  EXPECT_EQ(select_egreedy(BetaPosterior::uniform(3), 0.0, rng), 0u);

  std::vector<int> freq(4, 0);
  const int n = 100'000;
  for (int i = 0; i < n; ++i) ++freq[select_egreedy(make({{9, 1}, {1, 9}, {1, 9}, {1, 9}}), 1.0, rng)];
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  for (int f : freq) EXPECT_NEAR(f / double(n), 0.25, 3.0 * sigma);
}

TEST(Selectors, Ucb1) {
  EXPECT_EQ(select_ucb1({0, 0, 0}, {0, 0, 0}, 0), 0u);
  EXPECT_EQ(select_ucb1({3, 0, 2}, {0.9, 0, 0.1}, 5), 1u);
  EXPECT_EQ(select_ucb1({10, 10}, {0.5, 0.5}, 20), 0u);
  const double i0 = 0.6 + std::sqrt(2 * std::log(110.0) / 100);
  const double i1 = 0.5 + std::sqrt(2 * std::log(110.0) / 10);
  EXPECT_NEAR(i0, 0.9066, 1e-4);
  EXPECT_NEAR(i1, 1.4696, 1e-4);
  EXPECT_EQ(select_ucb1({100, 10}, {0.6, 0.5}, 110), 1u);
}

TEST(Selectors, Ocucb) {
  EXPECT_EQ(select_ocucb({0, 0}, {0, 0}, 0, 100), 0u);
  EXPECT_EQ(select_ocucb({7, 7}, {0.3, 0.3}, 14, 100), 0u);
  // ln(2000 / 55): the bonus depends on total pulls, not the arm's own count
  const double i0 = 0.6 + std::sqrt(3.0 / 50 * std::log(2000.0 / 55));
  const double i1 = 0.5 + std::sqrt(3.0 / 5 * std::log(2000.0 / 55));
  EXPECT_NEAR(i0, 1.0643, 1e-4);
  EXPECT_NEAR(i1, 1.9684, 1e-4);
  EXPECT_EQ(select_ocucb({50, 5}, {0.6, 0.5}, 55, 1000), 1u);
  // Past psi * n pulls the bonus vanishes and the empirical leader wins.
  EXPECT_EQ(select_ocucb({1900, 200}, {0.55, 0.5}, 2100, 1000), 0u);
  EXPECT_EQ(select_ocucb({1900, 10}, {0.55, 0.5}, 1910, 1000), 1u);
  EXPECT_THROW(select_ocucb({1, 1}, {0, 0}, 2, 0), std::invalid_argument);
}

TEST(Selectors, Thompson) {
  Rng rng(21);
  int zero = 0;
  for (int i = 0; i < 10'000; ++i) zero += select_thompson(make({{1e6, 1}, {1, 1e6}}), rng) == 0;
  EXPECT_GT(zero / 1e4, 0.999);

  std::vector<int> freq(3, 0);
  const int n = 100'000;
  for (int i = 0; i < n; ++i) ++freq[select_thompson(BetaPosterior::uniform(3), rng)];
  const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / n);
  for (int f : freq) EXPECT_NEAR(f / double(n), 1.0 / 3, 3.0 * sigma);

  EXPECT_EQ(select_thompson(BetaPosterior::uniform(1), rng), 0u);
}

TEST(Selectors, Oracle) {
  EXPECT_EQ(select_oracle(BernoulliBandit({0.6, 0.5, 0.4, 0.4})), 0u);
  EXPECT_EQ(select_oracle(BernoulliBandit({0.3, 0.3, 0.3})), 0u);
  EXPECT_EQ(select_oracle(BernoulliBandit({0.1, 0.9})), 1u);
}

TEST(Selectors, MinEpDegenerateCases) {
  Rng rng(22);
  EXPECT_EQ(select_minep(BetaPosterior::uniform(1), 500, rng), 0u);
  for (int i = 0; i < 200; ++i) {
    EXPECT_EQ(select_minep(BetaPosterior::uniform(2), 500, rng), 0u);
    EXPECT_EQ(select_minep(make({{3, 5}, {3, 5}}), 500, rng), 0u);
    EXPECT_EQ(select_minep(BetaPosterior::uniform(4), 500, rng), 0u);
  }
}

TEST(Selectors, MinEpFocusesOnPromisingArms) {
  // pull counts and means as in late-stage play on (0.6, 0.5, 0.4, 0.4)
  const std::vector<double> means{0.6, 0.5, 0.4, 0.4};
  const std::vector<double> pulls{4000, 2000, 500, 500};
  std::vector<BetaParams> arms;
  for (std::size_t i = 0; i < 4; ++i) {
    const double s = std::round(means[i] * pulls[i]);
    arms.push_back({1 + s, 1 + pulls[i] - s});
  }
  const BetaPosterior post(arms);
  Rng rng(23);
  int promising = 0;
  const int decisions = 400;
  for (int i = 0; i < decisions; ++i) promising += select_minep(post, 500, rng) <= 1;
  EXPECT_GT(promising / double(decisions), 0.95);
}

TEST(Selectors, ArmAlwaysInRangeAndDeterministicOnesArePure) {
  Rng rng(24);
  const BernoulliBandit bandit({0.6, 0.5, 0.4, 0.4, 0.2});
  for (auto kind : {AlgorithmKind::round_robin, AlgorithmKind::epsilon_greedy, AlgorithmKind::ucb1,
                    AlgorithmKind::ocucb, AlgorithmKind::thompson, AlgorithmKind::oracle, AlgorithmKind::minep}) {
    AgentState state(bandit.arm_count());
    AlgorithmSpec spec{.kind = kind, .ep_samples = 50};
    for (int t = 0; t < 200; ++t) {
      const std::size_t arm = select_arm(spec, state, bandit, 200, rng);
      ASSERT_LT(arm, bandit.arm_count());
      if (kind != AlgorithmKind::thompson && kind != AlgorithmKind::minep &&
          kind != AlgorithmKind::epsilon_greedy) {
        Rng other(t);
        EXPECT_EQ(select_arm(spec, state, bandit, 200, other), arm);
      }
      state.observe(arm, pull(bandit, arm, rng));
    }
  }
  AgentState state(2);
  state.observe(0, 1);
  Rng a(1), b(2);
  AlgorithmSpec greedy{.kind = AlgorithmKind::epsilon_greedy, .epsilon = 0.0};
  EXPECT_EQ(select_arm(greedy, state, BernoulliBandit({0.5, 0.5}), 10, a),
            select_arm(greedy, state, BernoulliBandit({0.5, 0.5}), 10, b));
}

TEST(AlgorithmSpec, NamesRoundTripAndValidation) {
  for (auto name : {"roundrobin", "egreedy", "ucb1", "ocucb", "thompson", "oracle", "minep"}) {
    const auto kind = parse_algorithm(name);
    ASSERT_TRUE(kind.has_value());
    EXPECT_EQ(algorithm_name(*kind), name);
  }
  EXPECT_FALSE(parse_algorithm("ucb2").has_value());
  EXPECT_THROW((AlgorithmSpec{.kind = AlgorithmKind::epsilon_greedy, .epsilon = 1.5}.validate()),
               std::invalid_argument);
  EXPECT_THROW((AlgorithmSpec{.kind = AlgorithmKind::minep, .ep_samples = 1}.validate()), std::invalid_argument);
}

}  // namespace
}  // namespace ep::bandit
