#include "ep/harness/aggregate.hpp"

#include <cmath>
#include <stdexcept>

namespace ep::harness {

Moments moments(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("no values to aggregate");
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

AggregateSeries aggregate(std::span<const Trace> traces) {
  if (traces.empty()) throw std::invalid_argument("no traces to aggregate");
  const auto& first = traces.front();
  for (const auto& tr : traces) {
    if (tr.records.size() != first.records.size()) {
      throw std::invalid_argument("traces have different lengths");
    }
  }
  AggregateSeries out;
  out.algorithm = first.algorithm;
  out.seed_count = traces.size();
  out.points.reserve(first.records.size());

  std::vector<double> regret(traces.size());
  std::vector<double> ep(traces.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) {
    AggregatePoint p;
    p.t = first.records[i].t;
    bool all_ep = true;
    for (std::size_t s = 0; s < traces.size(); ++s) {
      const auto& rec = traces[s].records[i];
      if (rec.t != p.t) throw std::invalid_argument("traces disagree on timesteps");
      regret[s] = rec.regret;
      if (rec.ep) {
        ep[s] = rec.ep->value;
      } else {
        all_ep = false;
      }
    }
    p.regret = moments(regret);
    if (all_ep) p.ep = moments(ep);
    out.points.push_back(p);
  }
  return out;
}

double slope_fit(const AggregateSeries& series, double t_min, double t_max) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : series.points) {
    const double t = static_cast<double>(p.t);
    if (!p.ep || t < t_min || t > t_max) continue;
    if (!(p.ep->mean > 0.0)) throw std::invalid_argument("nonpositive mean EP in slope range");
    xs.push_back(std::log(t));
    ys.push_back(std::log(p.ep->mean));
  }
  if (xs.size() < 3) throw std::invalid_argument("slope fit needs at least 3 points in range");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace ep::harness
