#pragma once

#include <cstddef>

namespace ep {

/// An exploration-potential value together with its Monte-Carlo standard
/// error. Exact computations report std_error == 0 and sample_count == 0.
struct EPEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t sample_count = 0;
};

}  // namespace ep
