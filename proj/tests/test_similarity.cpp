#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "prcis/parallel.hpp"
#include "prcis/similarity.hpp"
#include "synthetic.hpp"

using namespace prcis;

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

std::vector<double> affine(std::vector<double> x, double a, double b) {
  for (double& v : x) v = a * v + b;
  return x;
}

}  // namespace

TEST_CASE("sliding_dot_product small cases") {
  const auto unit = sliding_dot_product(std::vector<double>{1},
                                        std::vector<double>{3, 1, 4});
  REQUIRE(unit.size() == 3);
  CHECK(unit[0] == doctest::Approx(3));
  CHECK(unit[1] == doctest::Approx(1));
  CHECK(unit[2] == doctest::Approx(4));

  const auto pair = sliding_dot_product(std::vector<double>{1, 1},
                                        std::vector<double>{1, 2, 3});
  REQUIRE(pair.size() == 2);
  CHECK(pair[0] == doctest::Approx(3));
  CHECK(pair[1] == doctest::Approx(5));

  CHECK_THROWS_AS(sliding_dot_product(std::vector<double>{1, 2, 3},
                                      std::vector<double>{1, 2}),
                  std::invalid_argument);
}

TEST_CASE("sliding_dot_product matches the naive loop on random input") {
  synth::Rng rng(101);
  std::uniform_int_distribution<std::size_t> len(1, 700);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = len(rng) + 10;
    const std::size_t m = std::min(n, len(rng));
    const auto t = synth::white_noise(n, rng);
    const auto q = synth::white_noise(m, rng);
    const auto fast = sliding_dot_product(q, t);
    const auto slow = oracle::sliding_dot(q, t);
    REQUIRE(fast.size() == slow.size());
    double scale = 0.0;
    for (double v : slow) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(std::abs(fast[i] - slow[i]) <= 1e-9 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("mass self-match and affine copies hit zero") {
  synth::Rng rng(7);
  const auto t = synth::random_walk(1000, rng);
  for (std::size_t m : {8u, 64u, 200u}) {
    for (std::size_t k : {0u, 123u, 1000u - 200u}) {
      std::vector<double> q(t.begin() + k, t.begin() + k + m);
      const double tol = 1e-6 * std::sqrt(static_cast<double>(m));
      CHECK(mass(t, q).distances[k] <= tol);
      CHECK(mass(t, affine(q, 3.0, 7.0)).distances[k] <= tol);
    }
  }
}

TEST_CASE("near-exact matches keep full precision") {
  // A long walk with a large offset: windows are small wiggles on a big level.
  synth::Rng rng(8);
  auto t = synth::random_walk(5000, rng);
  for (double& v : t) v += 1e4;
  for (std::size_t m : {64u, 512u}) {
    for (std::size_t k : {17u, 2500u, 5000u - 512u}) {
      std::vector<double> q(t.begin() + k, t.begin() + k + m);
      auto near = q;
      for (std::size_t i = 0; i < m; ++i) near[i] += 1e-5 * std::sin(0.1 * i);
      const auto dp = mass(t, q);
      CHECK(dp.distances[k] <= 1e-9);
      const std::span<const double> ts(t);
      CHECK(std::abs(mass(t, near).distances[k] - oracle::zdist(near, ts.subspan(k, m))) <=
            1e-9);
    }
  }
}

TEST_CASE("mass matches the brute-force oracle") {
  synth::Rng rng(2024);
  SUBCASE("n = 500, m = 32") {
    const auto t = synth::random_walk(500, rng);
    const auto q = synth::white_noise(32, rng);
    const auto fast = mass(t, q);
    const auto slow = brute_force_distance_profile(t, q);
    CHECK(fast.distances.size() == 500 - 32 + 1);
    CHECK(max_abs_diff(fast.distances, slow.distances) <= 1e-6);
  }
  SUBCASE("library oracle agrees with the test-only oracle") {
    const auto t = synth::white_noise(300, rng);
    const auto q = synth::white_noise(20, rng);
    const auto lib = brute_force_distance_profile(t, q);
    for (std::size_t i = 0; i < lib.distances.size(); ++i) {
      CHECK(lib.distances[i] ==
            doctest::Approx(oracle::zdist(q, std::span<const double>(t).subspan(i, 20)))
                .epsilon(1e-12));
    }
  }
  SUBCASE("larger sizes") {
    for (auto [n, m] : {std::pair<std::size_t, std::size_t>{10000, 1000},
                        {4096, 4}, {777, 777}, {2048, 513}}) {
      const auto t = synth::random_walk(n, rng);
      const auto q = synth::random_walk(m, rng);
      CHECK(max_abs_diff(mass(t, q).distances,
                         brute_force_distance_profile(t, q).distances) <= 1e-6);
    }
  }
}

TEST_CASE("flat-window conventions") {
  const std::vector<double> flat(10, 2.5);
  SUBCASE("q = t, m = n gives a single zero") {
    synth::Rng rng(1);
    const auto t = synth::white_noise(16, rng);
    const auto dp = brute_force_distance_profile(t, t);
    REQUIRE(dp.distances.size() == 1);
    CHECK(dp.distances[0] == 0.0);
    CHECK(mass(t, t).distances[0] <= 1e-6 * 4);
  }
  SUBCASE("both flat is zero") {
    CHECK(brute_force_distance_profile(flat, std::vector<double>{1, 1, 1})
              .distances[0] == 0.0);
    CHECK(mass(flat, std::vector<double>{1, 1, 1}).distances[0] == 0.0);
  }
  SUBCASE("exactly one flat side is maximal sqrt(2m)") {
    std::vector<double> t = {0, 0, 0, 0, 0, 1, 2, 3};
    const std::vector<double> q = {1, 2, 3};
    const auto fast = mass(t, q);
    const auto slow = brute_force_distance_profile(t, q);
    CHECK(fast.distances[0] == doctest::Approx(std::sqrt(6.0)));
    CHECK(slow.distances[0] == doctest::Approx(std::sqrt(6.0)));
    CHECK(fast.distances[5] <= 1e-6);
    const auto flat_q = mass(t, std::vector<double>{4, 4, 4});
    CHECK(flat_q.distances[0] == 0.0);
    CHECK(flat_q.distances[5] == doctest::Approx(std::sqrt(6.0)));
  }
  SUBCASE("flat stretch inside a large-offset series") {
    synth::Rng rng(5);
    auto t = synth::white_noise(4000, rng);
    for (auto& v : t) v += 1e4;
    std::fill(t.begin() + 1000, t.begin() + 1100, 1e4 + 3.0);
    const auto q = synth::white_noise(50, rng);
    const auto fast = mass(t, q);
    for (std::size_t i = 1000; i + 50 <= 1100; ++i) {
      CHECK(fast.distances[i] == doctest::Approx(10.0));
    }
    CHECK(max_abs_diff(fast.distances,
                       brute_force_distance_profile(t, q).distances) <= 1e-6);
  }
}

TEST_CASE("mass preconditions") {
  const std::vector<double> t = {1, 2, 3};
  CHECK_THROWS_AS(mass(t, std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(mass(t, std::vector<double>{1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_distance_profile(t, std::vector<double>{1}),
                  std::invalid_argument);
}

TEST_CASE("distance profile properties on random input") {
  synth::Rng rng(77);
  std::uniform_int_distribution<std::size_t> len(2, 300);
  std::uniform_real_distribution<double> scale(0.1, 50.0), shift(-100.0, 100.0);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = len(rng);
    const std::size_t n = m + len(rng);
    const auto t = synth::random_walk(n, rng);
    const auto q = synth::white_noise(m, rng);
    const auto dp = mass(t, q);
    CHECK(dp.distances.size() == n - m + 1);
    const double bound = 2.0 * std::sqrt(static_cast<double>(m)) * (1.0 + 1e-6);
    for (double d : dp.distances) {
      CHECK(d >= 0.0);
      CHECK(d <= bound);
    }
    const auto moved = mass(affine(t, scale(rng), shift(rng)),
                            affine(q, scale(rng), shift(rng)));
    CHECK(max_abs_diff(dp.distances, moved.distances) <= 1e-6);
  }
}

TEST_CASE("MassIndex reuses one transform across queries") {
  synth::Rng rng(9);
  const auto t = synth::random_walk(800, rng);
  const MassIndex index(t, 40);
  for (int k = 0; k < 5; ++k) {
    const auto q = synth::white_noise(40, rng);
    CHECK(index.profile(q).distances == mass(t, q).distances);
  }
  CHECK_THROWS_AS(index.profile(std::vector<double>(41, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("results do not depend on concurrent use") {
  synth::Rng rng(13);
  const auto t = synth::random_walk(3000, rng);
  std::vector<std::vector<double>> queries;
  for (int k = 0; k < 16; ++k) queries.push_back(synth::white_noise(64 + k, rng));
  std::vector<std::vector<double>> serial(16), threaded(16);
  parallel_for(16, 1, [&](std::size_t k) { serial[k] = mass(t, queries[k]).distances; });
  parallel_for(16, 8, [&](std::size_t k) { threaded[k] = mass(t, queries[k]).distances; });
  CHECK(serial == threaded);
}
