#include "ep/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <vector>

namespace ep::cli {

namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 620.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 440.0;
constexpr std::size_t kMaxPoints = 1000;

constexpr std::array<std::string_view, 8> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Sample {
  double t;
  double mean;
  double std;
};

std::vector<Sample> extract(const harness::AggregateSeries& s, PlotKind kind) {
  std::vector<Sample> out;
  for (const auto& p : s.points) {
    if (kind == PlotKind::ep) {
      if (p.ep) out.push_back({static_cast<double>(p.t), p.ep->mean, p.ep->std});
    } else {
      out.push_back({static_cast<double>(p.t), p.regret.mean, p.regret.std});
    }
  }
  if (out.size() > kMaxPoints) {
    // keep endpoints and an even stride in between
    std::vector<Sample> thinned;
    const double stride = static_cast<double>(out.size() - 1) / static_cast<double>(kMaxPoints - 1);
    for (std::size_t i = 0; i < kMaxPoints; ++i) {
      thinned.push_back(out[static_cast<std::size_t>(std::llround(static_cast<double>(i) * stride))]);
    }
    out = std::move(thinned);
  }
  return out;
}

class Axis {
 public:
  Axis(double lo, double hi, bool log, double pixel_lo, double pixel_hi)
      : log_(log), pixel_lo_(pixel_lo), pixel_hi_(pixel_hi) {
    lo_ = log ? std::log10(lo) : lo;
    hi_ = log ? std::log10(hi) : hi;
    if (hi_ - lo_ < 1e-12) {
      lo_ -= 0.5;
      hi_ += 0.5;
    }
  }
  double operator()(double v) const {
    const double x = log_ ? std::log10(v) : v;
    return pixel_lo_ + (x - lo_) / (hi_ - lo_) * (pixel_hi_ - pixel_lo_);
  }
  double lo() const { return log_ ? std::pow(10.0, lo_) : lo_; }
  double hi() const { return log_ ? std::pow(10.0, hi_) : hi_; }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log_) {
      for (double e = std::ceil(lo_ - 1e-9); e <= hi_ + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
    } else {
      for (int i = 0; i <= 5; ++i) out.push_back(lo_ + (hi_ - lo_) * i / 5.0);
    }
    return out;
  }

 private:
  bool log_;
  double lo_;
  double hi_;
  double pixel_lo_;
  double pixel_hi_;
};

std::string label(double v, bool log) {
  if (log) return fmt::format("1e{}", static_cast<int>(std::lround(std::log10(v))));
  return fmt::format("{:.3g}", v);
}

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

void append_point(std::string& out, double x, double y) {
  if (!out.empty()) out.push_back(' ');
  out += fmt::format("{:.2f},{:.2f}", x, y);
}

}  // namespace

std::string render_svg(std::span<const harness::AggregateSeries> series, const PlotSpec& spec) {
  std::vector<std::vector<Sample>> data;
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -tmin;
  double ymin = tmin;
  double ymax = -tmin;
  for (const auto& s : series) {
    auto samples = extract(s, spec.kind);
    for (const auto& p : samples) {
      if (spec.loglog && !(p.t > 0.0 && p.mean > 0.0)) {
        throw PlotError(fmt::format("log-log plot of nonpositive value {} at t = {} ({})", p.mean, p.t,
                                    s.algorithm));
      }
      tmin = std::min(tmin, p.t);
      tmax = std::max(tmax, p.t);
      ymin = std::min(ymin, p.mean);
      ymax = std::max(ymax, p.mean);
      if (spec.band) {
        ymax = std::max(ymax, p.mean + p.std);
        if (!spec.loglog || p.mean - p.std > 0.0) ymin = std::min(ymin, p.mean - p.std);
      }
    }
    data.push_back(std::move(samples));
  }
  if (!(tmax >= tmin)) throw PlotError("no data to plot");
  if (!spec.loglog) ymin = std::min(ymin, 0.0);

  const Axis xaxis(tmin, tmax, spec.loglog, kLeft, kRight);
  const Axis yaxis(ymin, ymax, spec.loglog, kBottom, kTop);

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
      kSvgWidth, kSvgHeight);
  svg += fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kSvgWidth, kSvgHeight);
  svg += fmt::format(
      "<defs><clipPath id=\"plot-area\"><rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
      "height=\"{:.2f}\"/></clipPath></defs>\n",
      kLeft, kTop, kRight - kLeft, kBottom - kTop);

  // axes and ticks
  svg += fmt::format(
      "<g class=\"axes\" stroke=\"black\" fill=\"none\"><rect x=\"{:.2f}\" y=\"{:.2f}\" "
      "width=\"{:.2f}\" height=\"{:.2f}\"/></g>\n",
      kLeft, kTop, kRight - kLeft, kBottom - kTop);
  svg += "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double v : xaxis.ticks()) {
    const double x = xaxis(v);
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>", x,
                       kBottom, kBottom + 5);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", x, kBottom + 18,
                       label(v, spec.loglog));
  }
  for (double v : yaxis.ticks()) {
    const double y = yaxis(v);
    svg += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"black\"/>",
                       kLeft - 5, y, kLeft);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{}</text>\n", kLeft - 8, y + 4,
                       label(v, spec.loglog));
  }
  svg += "</g>\n";
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"13\">time step</text>\n",
      (kLeft + kRight) / 2, kBottom + 40);
  svg += fmt::format(
      "<text transform=\"translate(18,{:.2f}) rotate(-90)\" text-anchor=\"middle\" "
      "font-family=\"sans-serif\" font-size=\"13\">{}</text>\n",
      (kTop + kBottom) / 2, spec.kind == PlotKind::ep ? "exploration potential" : "regret");

  svg += "<g clip-path=\"url(#plot-area)\">\n";
  if (spec.band) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      std::string points;
      for (const auto& p : data[i]) append_point(points, xaxis(p.t), yaxis(p.mean + p.std));
      for (auto it = data[i].rbegin(); it != data[i].rend(); ++it) {
        const double lower = spec.loglog ? std::max(it->mean - it->std, yaxis.lo()) : it->mean - it->std;
        append_point(points, xaxis(it->t), yaxis(lower));
      }
      svg += fmt::format("<polygon class=\"band\" points=\"{}\" fill=\"{}\" fill-opacity=\"0.2\" stroke=\"none\"/>\n",
                         points, kPalette[i % kPalette.size()]);
    }
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::string points;
    for (const auto& p : data[i]) append_point(points, xaxis(p.t), yaxis(p.mean));
    svg += fmt::format(
        "<polyline class=\"series\" data-algorithm=\"{}\" points=\"{}\" fill=\"none\" stroke=\"{}\" "
        "stroke-width=\"1.5\"/>\n",
        escape_xml(series[i].algorithm), points, kPalette[i % kPalette.size()]);
  }
  if (spec.reference) {
    const auto [t0, y0] = *spec.reference;
    // a straight line in log-log coordinates; sampled densely otherwise
    const int n = spec.loglog ? 2 : 200;
    std::string points;
    for (int k = 0; k < n; ++k) {
      const double t = spec.loglog ? (k == 0 ? tmin : tmax) : tmin + (tmax - tmin) * k / (n - 1);
      append_point(points, xaxis(t), yaxis(y0 * std::sqrt(t0 / t)));
    }
    svg += fmt::format(
        "<polyline class=\"reference\" points=\"{}\" fill=\"none\" stroke=\"black\" "
        "stroke-dasharray=\"6,4\"/>\n",
        points);
  }
  svg += "</g>\n";

  svg += "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 20.0 * static_cast<double>(i);
    svg += fmt::format(
        "<g class=\"legend-entry\"><line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\" "
        "stroke-width=\"2\"/><text x=\"{:.2f}\" y=\"{:.2f}\">{}</text></g>\n",
        kRight + 15, y, kRight + 40, y, kPalette[i % kPalette.size()], kRight + 46, y + 4, escape_xml(series[i].algorithm));
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

}  // namespace ep::cli
