#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prcis {

class TimeSeries;
struct MatrixProfile;

/// One dictionary word: a raw slice of its source series.
struct Pattern {
  std::vector<double> values;
  std::size_t source_start = 0;
  std::string source_id;

  std::size_t size() const { return values.size(); }
};

enum class DictionaryMethod { yeh, random, manual };

std::string_view to_string(DictionaryMethod method);
DictionaryMethod parse_dictionary_method(std::string_view name);

/// A small set of patterns summarizing one long series. `requested_size` (S)
/// bounds the pattern count from above; `requested_length` (L) is the
/// construction length, a lower bound for Yeh dictionaries after merging.
struct Dictionary {
  std::string source_id;
  DictionaryMethod method = DictionaryMethod::yeh;
  std::size_t requested_size = 0;
  std::size_t requested_length = 0;
  std::vector<Pattern> patterns;
  std::optional<std::string> label;

  const std::string& id() const { return source_id; }
  bool empty() const { return patterns.empty(); }
};

inline constexpr double kDefaultDeltaFactor = 0.3;

/// Per-iteration record of the greedy Yeh loop, for inspection and tests.
struct YehTrace {
  struct Step {
    std::size_t start;        ///< chosen motif position
    double threshold;         ///< delta = delta_factor * max(DP)
    std::size_t removed;      ///< positions removed so far, inclusive
  };
  std::vector<Step> steps;
  std::vector<bool> removed;  ///< final removal mask over window positions
  bool exhausted = false;     ///< loop stopped because nothing was left
};

/// Greedy motif-coverage dictionary. Picks the lowest matrix-profile value
/// among surviving positions, masks every position whose distance to that
/// motif is at most delta_factor * max(DP) plus a +/-ceil(L/2) band around
/// it, and repeats up to S times. Raw picks whose index ranges overlap are
/// merged into one pattern spanning the union.
Dictionary yeh_dictionary(const TimeSeries& t, std::size_t size,
                          std::size_t length,
                          double delta_factor = kDefaultDeltaFactor,
                          YehTrace* trace = nullptr, std::size_t workers = 1);

/// Same, reusing a matrix profile of window `length` computed earlier.
Dictionary yeh_dictionary(const TimeSeries& t, const MatrixProfile& mp,
                          std::size_t size,
                          double delta_factor = kDefaultDeltaFactor,
                          YehTrace* trace = nullptr);

/// Up to S pairwise disjoint length-L windows, placed uniformly at random.
/// When fewer than S windows fit, as many as fit (floor(|t| / L)) are taken.
/// Deterministic in (t, S, L, seed) on every platform.
Dictionary random_dictionary(const TimeSeries& t, std::size_t size,
                             std::size_t length, std::uint64_t seed);

/// One pattern per (start, length) range, in the given order.
Dictionary manual_dictionary(
    const TimeSeries& t,
    const std::vector<std::pair<std::size_t, std::size_t>>& ranges);

}  // namespace prcis
