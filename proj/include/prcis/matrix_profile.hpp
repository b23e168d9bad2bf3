#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace prcis {

class TimeSeries;

/// Self-join matrix profile: for every window, the distance to its nearest
/// neighbor outside the exclusion zone and that neighbor's start.
struct MatrixProfile {
  std::size_t window = 0;
  std::size_t exclusion_zone = 0;
  std::vector<double> values;
  std::vector<std::size_t> indices;
};

/// ceil(w / 2).
std::size_t exclusion_zone_for(std::size_t window);

/// One MASS query per window; O(n^2 log n). Requires 2 <= w <= n / 2.
/// Ties resolve to the lowest neighbor index.
MatrixProfile matrix_profile(std::span<const double> t, std::size_t window,
                             std::size_t workers = 1);
MatrixProfile matrix_profile(const TimeSeries& t, std::size_t window,
                             std::size_t workers = 1);

}  // namespace prcis
