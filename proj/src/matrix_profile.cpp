#include "prcis/matrix_profile.hpp"

#include <limits>
#include <stdexcept>
#include <string>

#include "prcis/parallel.hpp"
#include "prcis/series.hpp"
#include "prcis/similarity.hpp"

namespace prcis {

std::size_t exclusion_zone_for(std::size_t window) {
  return (window + 1) / 2;
}

MatrixProfile matrix_profile(std::span<const double> t, std::size_t window,
                             std::size_t workers) {
  const std::size_t n = t.size();
  if (window < 2 || window > n / 2) {
    throw std::invalid_argument("matrix profile window " +
                                std::to_string(window) +
                                " outside [2, n/2] for n = " +
                                std::to_string(n));
  }
  const std::size_t count = n - window + 1;
  const std::size_t zone = exclusion_zone_for(window);
  const MassIndex index(t, window);

  MatrixProfile mp;
  mp.window = window;
  mp.exclusion_zone = zone;
  mp.values.assign(count, std::numeric_limits<double>::infinity());
  mp.indices.assign(count, 0);

  parallel_for(count, workers, [&](std::size_t i) {
    const auto dp = index.profile(t.subspan(i, window));
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = count;
    for (std::size_t j = 0; j < count; ++j) {
      const std::size_t gap = j > i ? j - i : i - j;
      if (gap < zone) continue;
      if (dp.distances[j] < best) {
        best = dp.distances[j];
        best_j = j;
      }
    }
    mp.values[i] = best;
    mp.indices[i] = best_j;
  });
  return mp;
}

MatrixProfile matrix_profile(const TimeSeries& t, std::size_t window,
                             std::size_t workers) {
  return matrix_profile(t.values(), window, workers);
}

}  // namespace prcis
