#include "prcis/dictionary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "prcis/matrix_profile.hpp"
#include "prcis/series.hpp"
#include "prcis/similarity.hpp"

namespace prcis {

std::string_view to_string(DictionaryMethod method) {
  switch (method) {
    case DictionaryMethod::yeh:
      return "yeh";
    case DictionaryMethod::random:
      return "random";
    case DictionaryMethod::manual:
      return "manual";
  }
  return "unknown";
}

DictionaryMethod parse_dictionary_method(std::string_view name) {
  if (name == "yeh") return DictionaryMethod::yeh;
  if (name == "random") return DictionaryMethod::random;
  if (name == "manual") return DictionaryMethod::manual;
  throw std::invalid_argument("unknown dictionary method '" +
                              std::string(name) + "'");
}

namespace {

Pattern slice_pattern(const TimeSeries& t, std::size_t start,
                      std::size_t length) {
  const Subsequence sub(t, start, length);
  const auto v = sub.values();
  return Pattern{{v.begin(), v.end()}, start, t.id()};
}

// Uniform integer in [0, bound] from raw 64-bit draws. Rejecting the top
// partial bucket keeps it exact and independent of the standard library's
// distribution implementation.
std::uint64_t uniform_below_inclusive(std::mt19937_64& rng,
                                      std::uint64_t bound) {
  if (bound == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % range;
  }
}

}  // namespace

Dictionary yeh_dictionary(const TimeSeries& t, std::size_t size,
                          std::size_t length, double delta_factor,
                          YehTrace* trace, std::size_t workers) {
  if (length < 2 || length > t.size() / 2) {
    throw std::invalid_argument("Yeh dictionary length " +
                                std::to_string(length) +
                                " outside [2, n/2] for n = " +
                                std::to_string(t.size()));
  }
  const auto mp = matrix_profile(t, length, workers);
  return yeh_dictionary(t, mp, size, delta_factor, trace);
}

Dictionary yeh_dictionary(const TimeSeries& t, const MatrixProfile& mp,
                          std::size_t size, double delta_factor,
                          YehTrace* trace) {
  const std::size_t length = mp.window;
  if (size < 1) throw std::invalid_argument("dictionary size must be >= 1");
  if (!(delta_factor > 0.0 && delta_factor < 1.0)) {
    throw std::invalid_argument("delta factor must lie in (0, 1)");
  }
  if (length < 2 || length > t.size() / 2 ||
      mp.values.size() != t.size() - length + 1) {
    throw std::invalid_argument("matrix profile does not match series '" +
                                t.id() + "'");
  }

  const std::size_t count = mp.values.size();
  const std::size_t band = exclusion_zone_for(length);
  // Exactly repeating data yields matrix-profile values that differ only by
  // rounding; those count as ties and go to the lowest index.
  const double tie_tolerance = 1e-6 * std::sqrt(static_cast<double>(length));
  const MassIndex index(t.values(), length);

  std::vector<bool> removed(count, false);
  std::size_t removed_count = 0;
  auto remove = [&](std::size_t j) {
    if (!removed[j]) {
      removed[j] = true;
      ++removed_count;
    }
  };

  YehTrace local;
  std::vector<std::size_t> picks;
  for (std::size_t iter = 0; iter < size && removed_count < count; ++iter) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < count; ++j) {
      if (!removed[j]) best = std::min(best, mp.values[j]);
    }
    std::size_t pick = 0;
    while (removed[pick] || mp.values[pick] > best + tie_tolerance) ++pick;

    const auto dp = index.profile(t.values().subspan(pick, length));
    const double delta =
        delta_factor *
        *std::max_element(dp.distances.begin(), dp.distances.end());
    for (std::size_t j = 0; j < count; ++j) {
      if (dp.distances[j] <= delta) remove(j);
    }
    const std::size_t lo = pick > band ? pick - band : 0;
    const std::size_t hi = std::min(count - 1, pick + band);
    for (std::size_t j = lo; j <= hi; ++j) remove(j);

    picks.push_back(pick);
    local.steps.push_back({pick, delta, removed_count});
  }
  local.exhausted = removed_count == count;
  local.removed = removed;

  std::sort(picks.begin(), picks.end());
  Dictionary dict;
  dict.source_id = t.id();
  dict.method = DictionaryMethod::yeh;
  dict.requested_size = size;
  dict.requested_length = length;
  dict.label = t.label();
  std::size_t run_start = picks.front();
  std::size_t run_end = picks.front() + length;
  for (std::size_t k = 1; k < picks.size(); ++k) {
    if (picks[k] < run_end) {
      run_end = std::max(run_end, picks[k] + length);
    } else {
      dict.patterns.push_back(slice_pattern(t, run_start, run_end - run_start));
      run_start = picks[k];
      run_end = picks[k] + length;
    }
  }
  dict.patterns.push_back(slice_pattern(t, run_start, run_end - run_start));

  if (trace) *trace = std::move(local);
  return dict;
}

Dictionary random_dictionary(const TimeSeries& t, std::size_t size,
                             std::size_t length, std::uint64_t seed) {
  if (length < 1 || length > t.size()) {
    throw std::invalid_argument("random dictionary length " +
                                std::to_string(length) +
                                " outside [1, n] for n = " +
                                std::to_string(t.size()));
  }
  if (size < 1) throw std::invalid_argument("dictionary size must be >= 1");

  const std::size_t k = std::min(size, t.size() / length);
  const std::size_t slack = t.size() - k * length;

  // Disjoint placements of k windows correspond one-to-one with sorted
  // k-tuples of leading gaps in [0, slack].
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> offsets(k);
  for (auto& o : offsets) o = uniform_below_inclusive(rng, slack);
  std::sort(offsets.begin(), offsets.end());

  Dictionary dict;
  dict.source_id = t.id();
  dict.method = DictionaryMethod::random;
  dict.requested_size = size;
  dict.requested_length = length;
  dict.label = t.label();
  for (std::size_t i = 0; i < k; ++i) {
    dict.patterns.push_back(slice_pattern(t, offsets[i] + i * length, length));
  }
  return dict;
}

Dictionary manual_dictionary(
    const TimeSeries& t,
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges) {
  if (ranges.empty()) {
    throw std::invalid_argument("manual dictionary needs at least one range");
  }
  Dictionary dict;
  dict.source_id = t.id();
  dict.method = DictionaryMethod::manual;
  dict.requested_size = ranges.size();
  dict.requested_length = t.size();
  dict.label = t.label();
  for (const auto& [start, length] : ranges) {
    dict.patterns.push_back(slice_pattern(t, start, length));
    dict.requested_length = std::min(dict.requested_length, length);
  }
  return dict;
}

}  // namespace prcis
