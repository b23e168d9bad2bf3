#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prcis {

/// Standard deviation below which a window is treated as flat.
inline constexpr double kFlatEpsilon = 1e-8;

/// Raised when a series or manifest file cannot be turned into a TimeSeries.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A named, gap-free sequence of real samples with an optional class label.
class TimeSeries {
 public:
  TimeSeries(std::string id, std::vector<double> values,
             std::optional<std::string> label = std::nullopt,
             std::string sample_note = {});

  const std::string& id() const { return id_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const std::optional<std::string>& label() const { return label_; }
  const std::string& sample_note() const { return sample_note_; }

  TimeSeries with_label(std::optional<std::string> label) const;

 private:
  std::string id_;
  std::vector<double> values_;
  std::optional<std::string> label_;
  std::string sample_note_;
};

/// A contiguous slice of a TimeSeries, 0-based.
class Subsequence {
 public:
  Subsequence(const TimeSeries& parent, std::size_t start, std::size_t length);

  const std::string& parent_id() const { return parent_id_; }
  std::size_t start() const { return start_; }
  std::size_t length() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

 private:
  std::string parent_id_;
  std::size_t start_;
  std::vector<double> values_;
};

struct IngestOptions {
  /// Longest interior run of missing samples that is repaired by linear
  /// interpolation. Longer runs reject the load.
  std::size_t max_gap = 10;
  /// Overrides the file stem as series id.
  std::optional<std::string> id;
  std::optional<std::string> label;
};

/// Reads one sample per line. Lines starting with '#' are comments; empty
/// lines and "NaN" mark missing samples.
TimeSeries load_series(const std::filesystem::path& path,
                       const IngestOptions& options = {});

/// Parses in-memory text with the same rules as load_series.
TimeSeries parse_series(std::string_view text, std::string id,
                        const IngestOptions& options = {});

/// Writes one value per line using the shortest round-trip representation.
void write_series(const std::filesystem::path& path, const TimeSeries& series);

/// Reads a `path<TAB>label` manifest. Relative paths resolve against the
/// manifest's directory. Series ids are file stems and must be unique.
std::vector<TimeSeries> load_manifest(const std::filesystem::path& path,
                                      const IngestOptions& options = {});

/// Mean 0, population standard deviation 1. Flat input maps to zeros.
std::vector<double> znormalize(std::span<const double> x);

double mean(std::span<const double> x);
double population_stddev(std::span<const double> x);

}  // namespace prcis
