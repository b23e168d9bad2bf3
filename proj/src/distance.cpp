#include "prcis/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "prcis/parallel.hpp"
#include "prcis/similarity.hpp"

namespace prcis {

namespace {
constexpr double kZeroClamp = 1e-12;
}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids)
    : ids_(std::move(ids)), values_(ids_.size() * ids_.size(), 0.0) {}

DistanceMatrix::DistanceMatrix(std::vector<std::string> ids,
                               std::vector<double> values)
    : ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.size() != ids_.size() * ids_.size()) {
    throw std::invalid_argument("distance matrix needs " +
                                std::to_string(ids_.size() * ids_.size()) +
                                " values, got " +
                                std::to_string(values_.size()));
  }
}

void DistanceMatrix::set_pair(std::size_t i, std::size_t j, double value) {
  values_[i * ids_.size() + j] = value;
  values_[j * ids_.size() + i] = value;
}

void DistanceMatrix::validate() const {
  const std::size_t m = size();
  if (values_.size() != m * m) {
    throw std::invalid_argument("distance matrix is not square");
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (std::abs((*this)(i, i)) > 1e-9) {
      throw std::invalid_argument("distance matrix diagonal entry " +
                                  ids_[i] + " is not zero");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("distance matrix entry (" + ids_[i] +
                                    ", " + ids_[j] +
                                    ") is negative or not finite");
      }
      if (std::abs(v - (*this)(j, i)) > 1e-12) {
        throw std::invalid_argument("distance matrix is not symmetric at (" +
                                    ids_[i] + ", " + ids_[j] + ")");
      }
    }
  }
}

double rotation_distance(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) {
    throw std::invalid_argument("rotation_distance needs non-empty patterns");
  }
  const auto longer = q.size() > p.size() ? q : p;
  const auto shorter = q.size() > p.size() ? p : q;
  if (shorter.size() < 2) {
    throw std::invalid_argument("rotation_distance needs patterns of length >= 2");
  }
  std::vector<double> doubled(longer.begin(), longer.end());
  doubled.insert(doubled.end(), longer.begin(), longer.end());
  const auto dp = mass(doubled, shorter);
  return *std::min_element(
      dp.distances.begin(),
      dp.distances.begin() + static_cast<std::ptrdiff_t>(longer.size()));
}

double rotation_distance(const Pattern& p, const Pattern& q) {
  return rotation_distance(std::span<const double>(p.values),
                           std::span<const double>(q.values));
}

std::vector<double> prcis_atob(const Dictionary& a, const Dictionary& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("PRCIS needs non-empty dictionaries (" +
                                a.source_id + ", " + b.source_id + ")");
  }
  std::vector<double> dists;
  dists.reserve(a.patterns.size());
  for (const auto& pa : a.patterns) {
    double nn = std::numeric_limits<double>::infinity();
    for (const auto& pb : b.patterns) {
      nn = std::min(nn, rotation_distance(pa, pb));
    }
    dists.push_back(nn);
  }
  return dists;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty list");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

double prcis(const Dictionary& a, const Dictionary& b) {
  auto all = prcis_atob(a, b);
  const auto back = prcis_atob(b, a);
  all.insert(all.end(), back.begin(), back.end());
  const double med = median(std::move(all));
  const double d = med * med;
  return d < kZeroClamp ? 0.0 : d;
}

DistanceMatrix distance_matrix(std::span<const Dictionary> dicts,
                               std::size_t workers) {
  if (dicts.size() < 2) {
    throw std::invalid_argument("distance matrix needs at least 2 dictionaries");
  }
  std::vector<std::string> ids;
  std::set<std::string> seen;
  for (const auto& d : dicts) {
    if (!seen.insert(d.id()).second) {
      throw std::invalid_argument("duplicate dictionary id '" + d.id() + "'");
    }
    ids.push_back(d.id());
  }

  const std::size_t m = dicts.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> results(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    results[k] = prcis(dicts[pairs[k].first], dicts[pairs[k].second]);
  });

  DistanceMatrix matrix(std::move(ids));
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    matrix.set_pair(pairs[k].first, pairs[k].second, results[k]);
  }
  return matrix;
}

}  // namespace prcis
