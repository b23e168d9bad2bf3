#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prcis/dictionary.hpp"
#include "prcis/distance.hpp"

namespace prcis {

class TimeSeries;

// ---------------------------------------------------------------------------
// Hierarchical agglomerative clustering

enum class Linkage { single, complete, average };

std::string_view to_string(Linkage linkage);
Linkage parse_linkage(std::string_view name);

/// Merge history in the usual numbering: leaves are clusters 0..m-1 and the
/// k-th merge creates cluster m + k.
struct Dendrogram {
  struct Merge {
    std::size_t cluster_a;  ///< smaller cluster id of the pair
    std::size_t cluster_b;
    double height;
    std::size_t size;  ///< leaves under the new cluster
  };
  std::vector<std::string> leaf_ids;
  std::vector<Merge> merges;

  /// Newick string with branch lengths equal to height differences.
  std::string newick() const;
};

/// Agglomerative clustering with Lance-Williams updates. At each step the
/// pair with minimal linkage distance merges; ties go to the lexicographically
/// smallest (cluster_a, cluster_b) pair of cluster ids.
Dendrogram hac(const DistanceMatrix& matrix, Linkage linkage);

// ---------------------------------------------------------------------------
// Leave-one-out 1NN classification

struct ClassificationReport {
  double accuracy = 0.0;
  std::map<std::string, double> per_class;
  /// confusion[true][predicted] = count
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
  struct Prediction {
    std::string id;
    std::string truth;
    std::string predicted;
    std::size_t neighbor;
    double distance;
  };
  std::vector<Prediction> predictions;
};

/// Predicts each item from its nearest other item (ties: lowest index).
ClassificationReport loo_1nn(const DistanceMatrix& matrix,
                             std::span<const std::string> labels);

/// Builds the PRCIS matrix over labeled dictionaries, then classifies.
ClassificationReport loo_1nn(std::span<const Dictionary> dicts,
                             std::size_t workers = 1);

// ---------------------------------------------------------------------------
// Dictionary-to-series anomaly profile

struct AnomalyProfile {
  std::vector<double> scores;
  /// Unsmoothed mean of the length-normalized pattern profiles.
  std::vector<double> meta_profile;
  std::size_t smoothing_window = 1;
  std::string dictionary_id;
};

/// Centered moving mean; even windows take one more sample on the left.
/// Edge windows average only the samples that exist.
std::vector<double> moving_mean(std::span<const double> x, std::size_t window);

/// Slides every pattern across `t`, divides each distance profile by
/// sqrt(2 |p|), truncates to the shortest profile, averages elementwise and
/// smooths with a moving mean. Window defaults to the dictionary's L.
AnomalyProfile prcis_dist_prof(const Dictionary& dict, const TimeSeries& t,
                               std::optional<std::size_t> smoothing_window =
                                   std::nullopt,
                               std::size_t workers = 1);

}  // namespace prcis
