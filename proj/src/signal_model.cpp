#include "rasdoa/signal_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rasdoa/errors.hpp"

namespace rasdoa {

namespace {

constexpr double kPi = std::numbers::pi;

double deg2rad(double deg) { return deg * kPi / 180.0; }

bool pairwise_distinct(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

void SourceSet::validate() const {
  const std::size_t L = angles_deg.size();
  if (powers.size() != L || frequencies.size() != L || phases.size() != L)
    throw InvalidParameters("source set: angles, powers, frequencies and phases must have equal length");
  for (double a : angles_deg)
    if (!(a > -90.0 && a < 90.0)) throw InvalidParameters("source set: angles must lie in (-90, 90)");
  for (double p : powers)
    if (!(p > 0.0)) throw InvalidParameters("source set: powers must be positive");
  for (double f : frequencies)
    if (!(f > 0.0 && f < 0.5)) throw InvalidParameters("source set: frequencies must lie in (0, 0.5)");
  if (!pairwise_distinct(angles_deg)) throw InvalidParameters("source set: angles must be distinct");
  if (!pairwise_distinct(frequencies)) throw InvalidParameters("source set: frequencies must be distinct");
}

std::vector<double> uniform_angles(int L) {
  if (L < 1) throw InvalidParameters("uniform_angles needs L >= 1");
  if (L == 1) return {0.0};
  std::vector<double> out(static_cast<std::size_t>(L));
  for (int l = 0; l < L; ++l) out[static_cast<std::size_t>(l)] = -50.0 + 100.0 * l / (L - 1);
  return out;
}

std::vector<double> default_frequencies(int L, int K) {
  if (L < 1) throw InvalidParameters("default_frequencies needs L >= 1");
  std::vector<double> out(static_cast<std::size_t>(L));
  if (K >= 1) {
    const long k0 = std::lround(0.05 * K);
    const long step = std::max(1L, static_cast<long>(std::floor(0.4 * K / L)));
    if (k0 >= 1 && 2 * (k0 + step * (L - 1)) < K) {
      for (int l = 0; l < L; ++l)
        out[static_cast<std::size_t>(l)] = static_cast<double>(k0 + step * l) / K;
      return out;
    }
  }
  for (int l = 0; l < L; ++l) out[static_cast<std::size_t>(l)] = 0.05 + 0.4 * l / L;
  return out;
}

std::vector<double> draw_phases(int L, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x9e37u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  std::vector<double> out(static_cast<std::size_t>(std::max(L, 0)));
  for (double& p : out) p = dist(rng);
  return out;
}

double noise_variance_for_snr(double snr_db, double source_power) {
  return source_power * std::pow(10.0, -snr_db / 10.0);
}

Eigen::VectorXcd steering_vector(const SensorArray& array, double theta_deg) {
  const double s = std::sin(deg2rad(theta_deg));
  const auto& pos = array.positions();
  Eigen::VectorXcd a(static_cast<Eigen::Index>(pos.size()));
  for (std::size_t t = 0; t < pos.size(); ++t)
    a(static_cast<Eigen::Index>(t)) = std::polar(1.0, -kPi * pos[t] * s);
  return a;
}

SnapshotMatrix generate_snapshots(const SensorArray& array, const SourceSet& sources, const NoiseSpec& noise,
                                  int S, std::uint64_t seed) {
  if (S < 1) throw InvalidParameters("snapshot count must be at least 1");
  if (!(noise.variance >= 0.0)) throw InvalidParameters("noise variance must be non-negative");
  sources.validate();

  const auto T = static_cast<Eigen::Index>(array.size());
  const auto L = static_cast<Eigen::Index>(sources.size());

  Eigen::MatrixXcd A(T, L);
  for (Eigen::Index l = 0; l < L; ++l)
    A.col(l) = steering_vector(array, sources.angles_deg[static_cast<std::size_t>(l)]);

  Eigen::MatrixXcd s(L, S);
  for (Eigen::Index l = 0; l < L; ++l) {
    const auto li = static_cast<std::size_t>(l);
    const double amp = std::sqrt(sources.powers[li]);
    for (int t = 1; t <= S; ++t)
      s(l, t - 1) = std::polar(amp, 2.0 * kPi * sources.frequencies[li] * t + sources.phases[li]);
  }

  SnapshotMatrix out{A * s, array};
  if (noise.variance > 0.0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x51edu};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise.variance / 2.0));
    // Column-major fill, sample by sample.
    for (Eigen::Index t = 0; t < S; ++t)
      for (Eigen::Index m = 0; m < T; ++m) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        out.entries(m, t) += std::complex<double>(re, im);
      }
  }
  return out;
}

}  // namespace rasdoa
