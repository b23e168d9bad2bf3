#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "prcis/dictionary.hpp"

namespace prcis {

/// Symmetric matrix of PRCIS distances, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::vector<std::string> ids);
  DistanceMatrix(std::vector<std::string> ids, std::vector<double> values);

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> values() const { return values_; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * ids_.size() + j];
  }
  /// Sets both (i, j) and (j, i).
  void set_pair(std::size_t i, std::size_t j, double value);

  /// Throws if the matrix is not square, symmetric within 1e-12, zero on the
  /// diagonal within 1e-9 and non-negative.
  void validate() const;

 private:
  std::vector<std::string> ids_;
  std::vector<double> values_;
};

/// Rotation-invariant distance between two patterns. The longer pattern (the
/// first one on equal length) is concatenated with itself and searched with
/// the shorter one; the minimum over the first |longer| offsets covers every
/// rotation once.
double rotation_distance(std::span<const double> p, std::span<const double> q);
double rotation_distance(const Pattern& p, const Pattern& q);

/// For each pattern of `a`, in order, its rotation distance to the nearest
/// pattern of `b`.
std::vector<double> prcis_atob(const Dictionary& a, const Dictionary& b);

/// Median of a non-empty list; even lengths average the two middle values.
double median(std::vector<double> values);

/// Squared median of the nearest-neighbor distances in both directions.
/// Values below 1e-12 are reported as exactly 0.
double prcis(const Dictionary& a, const Dictionary& b);

/// All pairwise PRCIS distances. Each unordered pair is computed once and
/// mirrored; the result does not depend on `workers`.
DistanceMatrix distance_matrix(std::span<const Dictionary> dicts,
                               std::size_t workers = 1);

}  // namespace prcis
