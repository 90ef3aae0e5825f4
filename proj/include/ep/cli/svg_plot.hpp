#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "ep/harness/aggregate.hpp"

namespace ep::cli {

enum class PlotKind { ep, regret };

struct ReferenceLine {
  double t0 = 1.0;
  double y0 = 1.0;  // the line is y0 * (t / t0)^(-1/2)
};

struct PlotSpec {
  PlotKind kind = PlotKind::ep;
  bool loglog = false;
  bool band = false;
  std::optional<ReferenceLine> reference;
};

class PlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kSvgWidth = 800.0;
inline constexpr double kSvgHeight = 500.0;

/// Self-contained 800x500 SVG: one polyline per series (class "series"),
/// optional +-1 std band polygons, optional dashed t^(-1/2) reference
/// polyline (class "reference") and a legend. Throws PlotError on empty
/// input or nonpositive data in log-log mode.
std::string render_svg(std::span<const harness::AggregateSeries> series, const PlotSpec& spec);

}  // namespace ep::cli
