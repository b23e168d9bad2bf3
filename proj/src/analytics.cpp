#include "prcis/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "prcis/io.hpp"
#include "prcis/parallel.hpp"
#include "prcis/series.hpp"
#include "prcis/similarity.hpp"

namespace prcis {

std::string_view to_string(Linkage linkage) {
  switch (linkage) {
    case Linkage::single:
      return "single";
    case Linkage::complete:
      return "complete";
    case Linkage::average:
      return "average";
  }
  return "unknown";
}

Linkage parse_linkage(std::string_view name) {
  if (name == "single") return Linkage::single;
  if (name == "complete") return Linkage::complete;
  if (name == "average") return Linkage::average;
  throw std::invalid_argument("unknown linkage '" + std::string(name) + "'");
}

namespace {

std::string newick_label(const std::string& id) {
  if (id.find_first_of("()[]':;, \t\n") == std::string::npos) return id;
  std::string out = "'";
  for (char c : id) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

}  // namespace

std::string Dendrogram::newick() const {
  const std::size_t m = leaf_ids.size();
  if (m == 0) return ";";
  std::vector<std::string> text(m + merges.size());
  std::vector<double> height(m + merges.size(), 0.0);
  for (std::size_t i = 0; i < m; ++i) text[i] = newick_label(leaf_ids[i]);
  for (std::size_t k = 0; k < merges.size(); ++k) {
    const auto& mg = merges[k];
    const std::size_t id = m + k;
    height[id] = mg.height;
    text[id] = "(" + text[mg.cluster_a] + ":" +
               format_double(mg.height - height[mg.cluster_a]) + "," +
               text[mg.cluster_b] + ":" +
               format_double(mg.height - height[mg.cluster_b]) + ")";
    text[mg.cluster_a].clear();
    text[mg.cluster_b].clear();
  }
  return text.back() + ";";
}

Dendrogram hac(const DistanceMatrix& matrix, Linkage linkage) {
  matrix.validate();
  const std::size_t m = matrix.size();
  if (m < 2) throw std::invalid_argument("clustering needs at least 2 items");

  // Slot-indexed working copy; slot s currently holds cluster cluster_of[s].
  std::vector<double> d(matrix.values().begin(), matrix.values().end());
  std::vector<std::size_t> cluster_of(m);
  std::vector<std::size_t> members(m, 1);
  std::vector<bool> active(m, true);
  for (std::size_t s = 0; s < m; ++s) cluster_of[s] = s;

  Dendrogram out;
  out.leaf_ids = matrix.ids();
  for (std::size_t step = 0; step + 1 < m; ++step) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = m, bj = m;
    std::pair<std::size_t, std::size_t> best_ids{m * 2, m * 2};
    for (std::size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < m; ++j) {
        if (!active[j]) continue;
        const double v = d[i * m + j];
        const std::pair<std::size_t, std::size_t> ids{
            std::min(cluster_of[i], cluster_of[j]),
            std::max(cluster_of[i], cluster_of[j])};
        if (v < best || (v == best && ids < best_ids)) {
          best = v;
          bi = i;
          bj = j;
          best_ids = ids;
        }
      }
    }

    const std::size_t ni = members[bi];
    const std::size_t nj = members[bj];
    for (std::size_t x = 0; x < m; ++x) {
      if (!active[x] || x == bi || x == bj) continue;
      const double dix = d[bi * m + x];
      const double djx = d[bj * m + x];
      double v = 0.0;
      switch (linkage) {
        case Linkage::single:
          v = std::min(dix, djx);
          break;
        case Linkage::complete:
          v = std::max(dix, djx);
          break;
        case Linkage::average:
          v = (static_cast<double>(ni) * dix + static_cast<double>(nj) * djx) /
              static_cast<double>(ni + nj);
          break;
      }
      d[bi * m + x] = v;
      d[x * m + bi] = v;
    }
    active[bj] = false;
    members[bi] = ni + nj;
    out.merges.push_back({best_ids.first, best_ids.second, best, ni + nj});
    cluster_of[bi] = m + step;
  }
  return out;
}

ClassificationReport loo_1nn(const DistanceMatrix& matrix,
                             std::span<const std::string> labels) {
  const std::size_t m = matrix.size();
  if (m < 2) throw std::invalid_argument("classification needs at least 2 items");
  if (labels.size() != m) {
    throw std::invalid_argument("label count does not match matrix size");
  }

  ClassificationReport report;
  std::map<std::string, std::size_t> totals;
  std::map<std::string, std::size_t> hits;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t nn = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      if (matrix(i, j) < best || nn == m) {
        best = matrix(i, j);
        nn = j;
      }
    }
    const std::string& truth = labels[i];
    const std::string& predicted = labels[nn];
    ++totals[truth];
    ++report.confusion[truth][predicted];
    if (truth == predicted) {
      ++correct;
      ++hits[truth];
    }
    report.predictions.push_back({matrix.ids()[i], truth, predicted, nn, best});
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(m);
  for (const auto& [label, total] : totals) {
    report.per_class[label] =
        static_cast<double>(hits[label]) / static_cast<double>(total);
  }
  return report;
}

ClassificationReport loo_1nn(std::span<const Dictionary> dicts,
                             std::size_t workers) {
  if (dicts.size() < 2) {
    throw std::invalid_argument("classification needs at least 2 items");
  }
  std::vector<std::string> labels;
  for (const auto& d : dicts) {
    if (!d.label) {
      throw std::invalid_argument("dictionary '" + d.id() + "' has no label");
    }
    labels.push_back(*d.label);
  }
  return loo_1nn(distance_matrix(dicts, workers), labels);
}

std::vector<double> moving_mean(std::span<const double> x, std::size_t window) {
  if (window == 0) throw std::invalid_argument("smoothing window must be >= 1");
  if (window == 1) return {x.begin(), x.end()};
  const std::size_t n = x.size();
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + x[i];
  const std::size_t left = window / 2;
  const std::size_t right = window - 1 - left;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i > left ? i - left : 0;
    const std::size_t hi = std::min(n, i + right + 1);
    out[i] = static_cast<double>((prefix[hi] - prefix[lo]) /
                                 static_cast<long double>(hi - lo));
  }
  return out;
}

AnomalyProfile prcis_dist_prof(const Dictionary& dict, const TimeSeries& t,
                               std::optional<std::size_t> smoothing_window,
                               std::size_t workers) {
  if (dict.empty()) {
    throw std::invalid_argument("dictionary '" + dict.id() + "' is empty");
  }
  for (const auto& p : dict.patterns) {
    if (p.size() > t.size()) {
      throw std::invalid_argument(
          "pattern of length " + std::to_string(p.size()) +
          " is longer than series '" + t.id() + "'");
    }
  }
  const std::size_t window =
      smoothing_window.value_or(std::max<std::size_t>(1, dict.requested_length));

  std::vector<std::vector<double>> profiles(dict.patterns.size());
  parallel_for(profiles.size(), workers, [&](std::size_t k) {
    const auto& p = dict.patterns[k];
    auto dp = mass(t.values(), p.values).distances;
    const double norm = std::sqrt(2.0 * static_cast<double>(p.size()));
    for (double& v : dp) v /= norm;
    profiles[k] = std::move(dp);
  });

  std::size_t len = profiles.front().size();
  for (const auto& p : profiles) len = std::min(len, p.size());

  AnomalyProfile out;
  out.dictionary_id = dict.id();
  out.smoothing_window = window;
  out.meta_profile.assign(len, 0.0);
  const double count = static_cast<double>(profiles.size());
  for (std::size_t i = 0; i < len; ++i) {
    double sum = 0.0;
    for (const auto& p : profiles) sum += p[i];
    out.meta_profile[i] = sum / count;
  }
  out.scores = moving_mean(out.meta_profile, window);
  return out;
}

}  // namespace prcis
