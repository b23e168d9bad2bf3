#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prcis/analytics.hpp"
#include "prcis/dictionary.hpp"

namespace prcis::cli {

namespace fs = std::filesystem;

struct DictOptions {
  std::optional<fs::path> manifest;
  std::optional<fs::path> series;
  fs::path out_dir;
  std::size_t size = 0;
  std::size_t length = 0;
  DictionaryMethod method = DictionaryMethod::yeh;
  std::optional<std::uint64_t> seed;
  double delta_factor = kDefaultDeltaFactor;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  std::size_t workers = 1;
};

struct DistOptions {
  fs::path dict_dir;
  fs::path out;
  std::size_t workers = 1;
};

struct ClusterOptions {
  fs::path matrix;
  fs::path out;
  Linkage linkage = Linkage::complete;
};

struct ClassifyOptions {
  fs::path matrix;
  fs::path manifest;
  fs::path out;
};

struct AnomalyOptions {
  fs::path dict;
  fs::path series;
  fs::path out;
  std::optional<std::size_t> smooth_window;
  std::size_t workers = 1;
};

struct SweepOptions {
  fs::path manifest;
  std::vector<std::size_t> sizes;
  std::size_t length = 0;
  DictionaryMethod method = DictionaryMethod::yeh;
  std::optional<std::uint64_t> seed;
  double delta_factor = kDefaultDeltaFactor;
  fs::path out;
  std::size_t workers = 1;
};

/// Thrown for parameter combinations the commands reject before doing work.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Writes `<id>.dict.json` per series plus `run_summary.json`; returns the
/// dictionary paths in input order.
std::vector<fs::path> cmd_dict(const DictOptions& opts);
void cmd_dist(const DistOptions& opts);
void cmd_cluster(const ClusterOptions& opts);
void cmd_classify(const ClassifyOptions& opts);
void cmd_anomaly(const AnomalyOptions& opts);
void cmd_sweep(const SweepOptions& opts);

/// Builds one dictionary with the options' method and parameters.
Dictionary build_dictionary(const TimeSeries& series, const DictOptions& opts);

/// Parses "start:length,start:length,...".
std::vector<std::pair<std::size_t, std::size_t>> parse_ranges(
    const std::string& text);

/// Full command-line entry point. Returns the process exit code.
int run(int argc, const char* const* argv);

}  // namespace prcis::cli
