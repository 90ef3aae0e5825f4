#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ep/harness/episode.hpp"

namespace ep::harness {

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single value
};

struct AggregatePoint {
  std::size_t t = 0;
  Moments regret;
  std::optional<Moments> ep;  // present where every trace recorded EP
};

struct AggregateSeries {
  std::string algorithm;
  std::size_t seed_count = 0;
  std::vector<AggregatePoint> points;
};

Moments moments(std::span<const double> values);

/// Pointwise mean and sample standard deviation across traces. The traces
/// must share their timesteps; throws std::invalid_argument otherwise.
AggregateSeries aggregate(std::span<const Trace> traces);

/// Least-squares slope of log(mean EP) against log(t) over EP points with
/// t in [t_min, t_max]. Throws std::invalid_argument with fewer than 3 points
/// or a nonpositive mean.
double slope_fit(const AggregateSeries& series, double t_min, double t_max);

}  // namespace ep::harness
