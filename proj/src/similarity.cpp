#include "prcis/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "prcis/series.hpp"

namespace prcis {

namespace {

void check_sizes(std::size_t m, std::size_t n, std::size_t min_m) {
  if (m < min_m) {
    throw std::invalid_argument("query length " + std::to_string(m) +
                                " is below the minimum of " +
                                std::to_string(min_m));
  }
  if (m > n) {
    throw std::invalid_argument("query length " + std::to_string(m) +
                                " exceeds series length " + std::to_string(n));
  }
}

// Windows whose prefix-sum variance falls below this fraction of the series
// variance are recomputed with a two-pass sum; the prefix difference loses
// too many digits there to decide flatness reliably.
constexpr double kRefineRatio = 1e-4;

// Near an exact match the correlation form cancels catastrophically: an
// error e in corr becomes sqrt(2 m e) in the distance. Windows with
// 1 - corr below this are recomputed directly.
constexpr double kNearMatch = 1e-6;

double exact_window_std(std::span<const double> w) {
  return population_stddev(w);
}

}  // namespace

std::vector<double> sliding_dot_product(std::span<const double> q,
                                        std::span<const double> t) {
  check_sizes(q.size(), t.size(), 1);
  const std::size_t n = t.size();
  const std::size_t m = q.size();
  const std::size_t size = detail::next_pow2(n);
  auto tf = detail::rfft(t, size);
  const auto qf = detail::rfft(q, size);
  for (std::size_t k = 0; k < tf.size(); ++k) tf[k] *= std::conj(qf[k]);
  const auto raw = detail::irfft_unscaled(tf, size);
  std::vector<double> out(n - m + 1);
  const double scale = 1.0 / static_cast<double>(size);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = raw[i] * scale;
  return out;
}

WindowStats window_stats(std::span<const double> t, std::size_t m) {
  check_sizes(m, t.size(), 1);
  const std::size_t n = t.size();
  const std::size_t count = n - m + 1;
  const double offset = mean(t);

  std::vector<long double> sum(n + 1, 0.0L);
  std::vector<long double> sq(n + 1, 0.0L);
  long double global_sq = 0.0L;
  for (std::size_t i = 0; i < n; ++i) {
    const long double v = static_cast<long double>(t[i]) - offset;
    sum[i + 1] = sum[i] + v;
    sq[i + 1] = sq[i] + v * v;
    global_sq += v * v;
  }
  const double global_var =
      static_cast<double>(global_sq / static_cast<long double>(n));

  WindowStats stats;
  stats.mean.resize(count);
  stats.stddev.resize(count);
  const long double lm = static_cast<long double>(m);
  for (std::size_t i = 0; i < count; ++i) {
    const long double mu = (sum[i + m] - sum[i]) / lm;
    long double var = (sq[i + m] - sq[i]) / lm - mu * mu;
    if (var < 0.0L) var = 0.0L;
    stats.mean[i] = static_cast<double>(mu) + offset;
    const double v = static_cast<double>(var);
    if (global_var == 0.0) {
      stats.stddev[i] = 0.0;
    } else if (v < kRefineRatio * global_var) {
      stats.stddev[i] = exact_window_std(t.subspan(i, m));
    } else {
      stats.stddev[i] = std::sqrt(v);
    }
  }
  return stats;
}

double znorm_distance_from_stats(double dot, std::size_t m, double mean_q,
                                 double std_q, double mean_t, double std_t) {
  const bool flat_q = std_q < kFlatEpsilon;
  const bool flat_t = std_t < kFlatEpsilon;
  const double dm = static_cast<double>(m);
  if (flat_q && flat_t) return 0.0;
  if (flat_q || flat_t) return std::sqrt(2.0 * dm);
  double corr = (dot - dm * mean_q * mean_t) / (dm * std_q * std_t);
  corr = std::clamp(corr, -1.0, 1.0);
  return std::sqrt(std::max(0.0, 2.0 * dm * (1.0 - corr)));
}

MassIndex::MassIndex(std::span<const double> t, std::size_t query_length)
    : n_(t.size()), m_(query_length) {
  check_sizes(m_, n_, 2);
  fft_size_ = detail::next_pow2(n_);
  offset_ = mean(t);
  std::vector<double> centered(t.begin(), t.end());
  for (double& v : centered) v -= offset_;
  series_fft_ = detail::rfft(centered, fft_size_);
  stats_ = window_stats(centered, m_);
  centered_ = std::move(centered);
}

DistanceProfile MassIndex::profile(std::span<const double> q) const {
  if (q.size() != m_) {
    throw std::invalid_argument("query length " + std::to_string(q.size()) +
                                " does not match index length " +
                                std::to_string(m_));
  }
  const double q_mean = mean(q);
  std::vector<double> qc(q.begin(), q.end());
  for (double& v : qc) v -= q_mean;
  const double q_std = population_stddev(qc);
  const double qc_mean = mean(qc);

  auto prod = detail::rfft(qc, fft_size_);
  for (std::size_t k = 0; k < prod.size(); ++k) {
    prod[k] = series_fft_[k] * std::conj(prod[k]);
  }
  const auto raw = detail::irfft_unscaled(prod, fft_size_);
  const double scale = 1.0 / static_cast<double>(fft_size_);

  DistanceProfile dp;
  dp.query_length = m_;
  dp.distances.resize(n_ - m_ + 1);
  const double near = 2.0 * static_cast<double>(m_) * kNearMatch;
  const std::span<const double> series(centered_);
  for (std::size_t i = 0; i < dp.distances.size(); ++i) {
    double d = znorm_distance_from_stats(raw[i] * scale, m_, qc_mean, q_std,
                                         stats_.mean[i], stats_.stddev[i]);
    if (d * d < near && q_std >= kFlatEpsilon &&
        stats_.stddev[i] >= kFlatEpsilon) {
      d = znorm_distance(qc, series.subspan(i, m_));
    }
    dp.distances[i] = d;
  }
  return dp;
}

DistanceProfile mass(std::span<const double> t, std::span<const double> q) {
  check_sizes(q.size(), t.size(), 2);
  return MassIndex(t, q.size()).profile(q);
}

double znorm_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("znorm_distance needs equal, non-zero lengths");
  }
  const bool flat_a = population_stddev(a) < kFlatEpsilon;
  const bool flat_b = population_stddev(b) < kFlatEpsilon;
  if (flat_a && flat_b) return 0.0;
  if (flat_a || flat_b) return std::sqrt(2.0 * static_cast<double>(a.size()));
  const auto za = znormalize(a);
  const auto zb = znormalize(b);
  double acc = 0.0;
  for (std::size_t i = 0; i < za.size(); ++i) {
    const double d = za[i] - zb[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

DistanceProfile brute_force_distance_profile(std::span<const double> t,
                                             std::span<const double> q) {
  check_sizes(q.size(), t.size(), 2);
  const std::size_t m = q.size();
  DistanceProfile dp;
  dp.query_length = m;
  dp.distances.resize(t.size() - m + 1);
  for (std::size_t i = 0; i < dp.distances.size(); ++i) {
    dp.distances[i] = znorm_distance(q, t.subspan(i, m));
  }
  return dp;
}

}  // namespace prcis
