#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace prcis {

/// z-normalized Euclidean distances of one query against every window of a
/// series. Entries lie in [0, 2*sqrt(m)].
struct DistanceProfile {
  std::size_t query_length = 0;
  std::vector<double> distances;
};

/// out[i] = sum_j q[j] * t[i + j], for i in [0, |t| - |q|], via FFT.
std::vector<double> sliding_dot_product(std::span<const double> q,
                                        std::span<const double> t);

/// Rolling mean and population standard deviation of every length-m window.
struct WindowStats {
  std::vector<double> mean;
  std::vector<double> stddev;
};

WindowStats window_stats(std::span<const double> t, std::size_t m);

/// Distance from two standard deviations and a normalized correlation, with
/// the flat-window conventions applied: one flat side gives sqrt(2m), both
/// flat gives 0.
double znorm_distance_from_stats(double dot, std::size_t m, double mean_q,
                                 double std_q, double mean_t, double std_t);

/// Precomputed FFT of a series for repeated MASS queries of one length.
///
/// The series is centered by its global mean before transforming; the
/// z-normalized distance is invariant to that shift and the smaller
/// magnitudes keep the convolution error low. Near-exact matches are
/// recomputed directly from the stored series.
class MassIndex {
 public:
  MassIndex(std::span<const double> t, std::size_t query_length);

  std::size_t series_length() const { return n_; }
  std::size_t query_length() const { return m_; }

  DistanceProfile profile(std::span<const double> q) const;

 private:
  std::size_t n_;
  std::size_t m_;
  std::size_t fft_size_;
  double offset_;
  std::vector<double> centered_;
  std::vector<std::complex<double>> series_fft_;
  WindowStats stats_;
};

/// MASS distance profile of q against every window of t.
DistanceProfile mass(std::span<const double> t, std::span<const double> q);

/// Direct-loop oracle for mass: distances[i] = ||z(q) - z(t[i..i+m))||.
DistanceProfile brute_force_distance_profile(std::span<const double> t,
                                             std::span<const double> q);

/// z-normalized Euclidean distance of two equal-length sequences, with the
/// same flat-window conventions as mass.
double znorm_distance(std::span<const double> a, std::span<const double> b);

}  // namespace prcis
