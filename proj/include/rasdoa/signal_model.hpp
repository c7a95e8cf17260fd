#pragma once

// Narrowband far-field snapshots x(t) = A s(t) + e(t) on a sparse linear array
// with half-wavelength unit spacing.
//
// Sources are complex exponentials sigma_l exp(j(2 pi f_l t + phi_l)) with
// distinct normalized frequencies. Distinct frequencies keep the sources
// temporally separable, which the lag-correlation front end in vcam.hpp
// relies on.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rasdoa/coarray.hpp"

namespace rasdoa {

struct SourceSet {
  std::vector<double> angles_deg;   // in (-90, 90), pairwise distinct
  std::vector<double> powers;       // sigma_l^2 > 0
  std::vector<double> frequencies;  // in (0, 0.5), pairwise distinct
  std::vector<double> phases;       // in [0, 2 pi)

  [[nodiscard]] std::size_t size() const noexcept { return angles_deg.size(); }
  // Throws InvalidParameters on length mismatch or out-of-range values.
  void validate() const;
};

struct NoiseSpec {
  double variance = 0.0;
};

struct SnapshotMatrix {
  Eigen::MatrixXcd entries;  // sensors x time samples
  SensorArray array;
};

// L angles equally spaced over [-50, 50] degrees, endpoints included; {0} for L = 1.
[[nodiscard]] std::vector<double> uniform_angles(int L);

// Default temporal frequencies for L sources when K correlation lags are used.
// Frequencies sit on the 1/K grid, f_l = (k0 + m l) / K with k0 = round(0.05 K)
// and m = max(1, floor(0.4 K / L)), so that distinct sources are orthogonal
// over lags 1..K. Falls back to 0.05 + 0.4 l / L when the grid cannot hold
// L frequencies below 0.5.
[[nodiscard]] std::vector<double> default_frequencies(int L, int K);

// Uniform phases in [0, 2 pi), determined by seed.
[[nodiscard]] std::vector<double> draw_phases(int L, std::uint64_t seed);

// Power 10^(-snr_db/10) for unit-power sources.
[[nodiscard]] double noise_variance_for_snr(double snr_db, double source_power = 1.0);

// exp(-j pi p_t sin(theta)) for every sensor position p_t.
[[nodiscard]] Eigen::VectorXcd steering_vector(const SensorArray& array, double theta_deg);

// S snapshots at t = 1..S. Noise is circularly-symmetric complex Gaussian with
// per-sensor variance noise.variance, white over sensors and time, seeded by
// `seed` alone.
[[nodiscard]] SnapshotMatrix generate_snapshots(const SensorArray& array, const SourceSet& sources,
                                                const NoiseSpec& noise, int S, std::uint64_t seed);

}  // namespace rasdoa
