#pragma once

// Virtual-ULA construction over the difference-and-sum co-array.
//
// Pipeline (sample mode):
//   snapshots -> lag correlations r(±tau) against the sensor at position 0
//             -> conjugate-augmented pseudo snapshots v(tau) = [r(tau); conj(r(-tau))]
//             -> R_v = mean_k v v^H
//             -> redundancy-averaged virtual snapshot z(u), u in [-U, U]
//             -> spatially smoothed (U+1)x(U+1) covariance.
//
// Entry (i, j) of R_v carries co-array lag g_i - g_j where g = [P; -P], so the
// entries of R_v cover exactly (P+P) ∪ -(P+P) ∪ (P-P).

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rasdoa/coarray.hpp"
#include "rasdoa/signal_model.hpp"

namespace rasdoa {

struct PseudoSnapshotSet {
  Eigen::MatrixXcd vectors;  // 2T x K, one conjugate-augmented vector per column
  std::vector<int> lags;     // strictly increasing, >= 1
};

struct VirtualSnapshot {
  Eigen::VectorXcd values;  // index i holds lag segment.lo + i
  Segment segment;

  [[nodiscard]] std::complex<double> at(int lag) const { return values(lag - segment.lo); }
};

struct SmoothedCovariance {
  Eigen::MatrixXcd matrix;
};

// r(m, k) = 1/(S-|tau_k|) sum_t x_m(t + tau_k) conj(x_ref(t)), over the t for
// which both samples exist; x_ref is the sensor at position 0. Lags may be
// negative. Throws LagTooLarge when |tau| >= S or tau == 0, and
// InvalidParameters if the array has no sensor at 0.
[[nodiscard]] Eigen::MatrixXcd temporal_correlations(const SnapshotMatrix& x, std::span<const int> lags);

// Columns of `forward` are r(+tau_k), columns of `backward` are r(-tau_k).
[[nodiscard]] PseudoSnapshotSet augment(const Eigen::MatrixXcd& forward, const Eigen::MatrixXcd& backward,
                                        std::vector<int> lags);

// Lags 1..K, correlations, augmentation.
[[nodiscard]] PseudoSnapshotSet pseudo_snapshots(const SnapshotMatrix& x, int K);

[[nodiscard]] Eigen::MatrixXcd pseudo_covariance(const PseudoSnapshotSet& v);

// Mean of all R_v entries per lag, over the central DSCA segment of `array`.
[[nodiscard]] VirtualSnapshot select_virtual_ula(const Eigen::MatrixXcd& r_v, const SensorArray& array);

// Subvectors z_i = [z(i), z(i-1), ..., z(i-U)] for i = 0..U, averaged as
// z_i z_i^H. Requires a symmetric segment [-U, U].
[[nodiscard]] SmoothedCovariance spatial_smoothing(const VirtualSnapshot& z);

// z(u) = sum_l sigma_l^4 exp(-j pi u sin(theta_l)) + pseudo_noise * [u == 0]
// over the central DSCA segment of `array`. What sample mode converges to.
[[nodiscard]] VirtualSnapshot ideal_virtual_snapshot(const SensorArray& array, const SourceSet& sources,
                                                     double pseudo_noise = 0.0);
[[nodiscard]] SmoothedCovariance ideal_virtual_covariance(const SensorArray& array, const SourceSet& sources,
                                                          double pseudo_noise = 0.0);

// Full sample-mode chain from snapshots to the virtual snapshot.
[[nodiscard]] VirtualSnapshot sample_virtual_snapshot(const SnapshotMatrix& x, int K);

}  // namespace rasdoa
