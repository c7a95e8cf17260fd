#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rasdoa/errors.hpp"
#include "rasdoa/signal_model.hpp"

using namespace rasdoa;
using doctest::Approx;

namespace {

SourceSet unit_sources(std::vector<double> angles, std::vector<double> freqs, std::vector<double> phases = {}) {
  const std::size_t L = angles.size();
  if (phases.empty()) phases.assign(L, 0.0);
  return {std::move(angles), std::vector<double>(L, 1.0), std::move(freqs), std::move(phases)};
}

}  // namespace

TEST_CASE("uniform_angles") {
  CHECK(uniform_angles(1) == std::vector<double>{0.0});
  CHECK(uniform_angles(2) == std::vector<double>{-50.0, 50.0});
  CHECK(uniform_angles(3) == std::vector<double>{-50.0, 0.0, 50.0});
  const auto a = uniform_angles(26);
  REQUIRE(a.size() == 26);
  for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i] - a[i - 1] == Approx(4.0).epsilon(1e-12));
  CHECK(a.back() == 50.0);
  CHECK_THROWS_AS((void)uniform_angles(0), InvalidParameters);
}

TEST_CASE("default_frequencies sit on the lag grid and stay distinct") {
  for (int K : {32, 64, 150}) {
    for (int L = 1; L <= 30; ++L) {
      const auto f = default_frequencies(L, K);
      REQUIRE(f.size() == static_cast<std::size_t>(L));
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i] > 0.0);
        CHECK(f[i] < 0.5);
        if (i) CHECK(f[i] > f[i - 1]);
      }
      if (L <= K / 4) {
        for (double v : f) CHECK(std::abs(v * K - std::round(v * K)) < 1e-9);
      }
    }
  }
  // Too many sources for the grid: falls back to the even [0.05, 0.45) layout.
  const auto f = default_frequencies(40, 64);
  CHECK(f.front() == Approx(0.05));
  CHECK(f[1] - f[0] == Approx(0.01));
}

TEST_CASE("steering_vector") {
  const SensorArray ula({0, 1, 2, 3});
  const auto a0 = steering_vector(ula, 0.0);
  for (Eigen::Index i = 0; i < a0.size(); ++i) CHECK(std::abs(a0(i) - 1.0) < 1e-15);

  const auto a30 = steering_vector(SensorArray({0, 1}), 30.0);
  CHECK(std::abs(a30(0) - std::complex<double>(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(a30(1) - std::complex<double>(0.0, -1.0)) < 1e-12);

  const SensorArray sparse({0, 5, 10, 15, 16, 17, 18, 19});
  for (double th : {-80.0, -33.3, 7.0, 61.0})
    for (Eigen::Index i = 0; i < 8; ++i) CHECK(std::abs(steering_vector(sparse, th)(i)) == Approx(1.0));
}

TEST_CASE("generate_snapshots") {
  const SensorArray array({0, 5, 10, 15, 16, 17, 18, 19});

  SUBCASE("broadside source without noise gives identical rows") {
    const auto x = generate_snapshots(array, unit_sources({0.0}, {0.1}), {0.0}, 64, 3);
    for (Eigen::Index m = 1; m < x.entries.rows(); ++m) CHECK((x.entries.row(m) - x.entries.row(0)).norm() < 1e-12);
  }

  SUBCASE("deterministic for a fixed seed") {
    const auto src = unit_sources({-20.0, 35.0}, {0.1, 0.3}, {0.4, 2.0});
    const auto a = generate_snapshots(array, src, {0.5}, 200, 77);
    const auto b = generate_snapshots(array, src, {0.5}, 200, 77);
    const auto c = generate_snapshots(array, src, {0.5}, 200, 78);
    CHECK(a.entries == b.entries);
    CHECK(a.entries != c.entries);
  }

  SUBCASE("noise-only variance") {
    const auto x = generate_snapshots(array, SourceSet{}, {1.0}, 100000, 5);
    for (Eigen::Index m = 0; m < x.entries.rows(); ++m) {
      const double var = x.entries.row(m).squaredNorm() / static_cast<double>(x.entries.cols());
      CHECK(var == Approx(1.0).epsilon(0.05));
    }
  }

  SUBCASE("per-sensor power is source power plus noise") {
    SourceSet src{{-30.0, 10.0, 45.0}, {1.0, 2.0, 0.5}, {0.07, 0.21, 0.33}, {0.1, 1.1, 2.9}};
    const auto x = generate_snapshots(array, src, {0.8}, 100000, 9);
    for (Eigen::Index m = 0; m < x.entries.rows(); ++m) {
      const double p = x.entries.row(m).squaredNorm() / static_cast<double>(x.entries.cols());
      CHECK(p == Approx(1.0 + 2.0 + 0.5 + 0.8).epsilon(0.03));
    }
  }

  SUBCASE("sources are uncorrelated over long windows") {
    const std::vector<double> f{0.05, 0.1, 0.2};
    const int S = 10000;
    for (std::size_t k = 0; k < f.size(); ++k)
      for (std::size_t l = k + 1; l < f.size(); ++l) {
        std::complex<double> acc = 0.0;
        for (int t = 1; t <= S; ++t)
          acc += std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * (f[k] - f[l]) * t));
        CHECK(std::abs(acc) / S < 0.05);
      }
  }

  SUBCASE("snr convention") {
    CHECK(noise_variance_for_snr(0.0) == Approx(1.0));
    CHECK(noise_variance_for_snr(10.0) == Approx(0.1));
    CHECK(noise_variance_for_snr(-10.0) == Approx(10.0));
  }

  SUBCASE("invalid sources") {
    CHECK_THROWS_AS((void)generate_snapshots(array, unit_sources({10.0, 10.0}, {0.1, 0.2}), {0.0}, 10, 1),
                    InvalidParameters);
    CHECK_THROWS_AS((void)generate_snapshots(array, unit_sources({10.0, 20.0}, {0.1, 0.1}), {0.0}, 10, 1),
                    InvalidParameters);
    CHECK_THROWS_AS((void)generate_snapshots(array, unit_sources({95.0}, {0.1}), {0.0}, 10, 1), InvalidParameters);
    CHECK_THROWS_AS((void)generate_snapshots(array, unit_sources({0.0}, {0.1}), {0.0}, 0, 1), InvalidParameters);
  }
}

TEST_CASE("draw_phases") {
  const auto a = draw_phases(20, 4);
  CHECK(a == draw_phases(20, 4));
  CHECK(a != draw_phases(20, 5));
  for (double p : a) {
    CHECK(p >= 0.0);
    CHECK(p < 2.0 * std::numbers::pi);
  }
}
