#include "rasdoa/vcam.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rasdoa/errors.hpp"

namespace rasdoa {

namespace {

Eigen::Index reference_row(const SensorArray& array) {
  const auto& pos = array.positions();
  if (pos.front() != 0) throw InvalidParameters("lag correlations need a sensor at position 0");
  return 0;  // positions are sorted
}

}  // namespace

Eigen::MatrixXcd temporal_correlations(const SnapshotMatrix& x, std::span<const int> lags) {
  const Eigen::Index S = x.entries.cols();
  const Eigen::Index T = x.entries.rows();
  const Eigen::Index ref = reference_row(x.array);

  Eigen::MatrixXcd r(T, static_cast<Eigen::Index>(lags.size()));
  for (std::size_t k = 0; k < lags.size(); ++k) {
    const int tau = lags[k];
    if (tau == 0 || std::abs(tau) >= S)
      throw LagTooLarge("lag " + std::to_string(tau) + " outside 0 < |tau| < S=" + std::to_string(S));
    const Eigen::Index n = S - std::abs(tau);
    // x_m(t + tau) against x_ref(t); both windows have length n.
    const Eigen::Index lead = tau > 0 ? tau : 0;
    const Eigen::Index base = tau > 0 ? 0 : -tau;
    auto shifted = x.entries.middleCols(lead, n);
    auto reference = x.entries.row(ref).segment(base, n).transpose();
    r.col(static_cast<Eigen::Index>(k)) = shifted * reference.conjugate() / static_cast<double>(n);
  }
  return r;
}

PseudoSnapshotSet augment(const Eigen::MatrixXcd& forward, const Eigen::MatrixXcd& backward,
                          std::vector<int> lags) {
  if (forward.rows() != backward.rows() || forward.cols() != backward.cols() ||
      forward.cols() != static_cast<Eigen::Index>(lags.size()))
    throw LengthMismatch("augment: forward/backward correlations and lag list disagree in shape");
  for (std::size_t k = 0; k < lags.size(); ++k)
    if (lags[k] < 1 || (k > 0 && lags[k] <= lags[k - 1]))
      throw InvalidParameters("augment: lags must be positive and strictly increasing");

  const Eigen::Index T = forward.rows();
  PseudoSnapshotSet out;
  out.vectors.resize(2 * T, forward.cols());
  out.vectors.topRows(T) = forward;
  out.vectors.bottomRows(T) = backward.conjugate();
  out.lags = std::move(lags);
  return out;
}

PseudoSnapshotSet pseudo_snapshots(const SnapshotMatrix& x, int K) {
  if (K < 1) throw InvalidParameters("pseudo-snapshot count K must be at least 1");
  std::vector<int> lags(static_cast<std::size_t>(K));
  std::vector<int> negative(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    lags[static_cast<std::size_t>(k)] = k + 1;
    negative[static_cast<std::size_t>(k)] = -(k + 1);
  }
  const Eigen::MatrixXcd forward = temporal_correlations(x, lags);
  const Eigen::MatrixXcd backward = temporal_correlations(x, negative);
  return augment(forward, backward, std::move(lags));
}

Eigen::MatrixXcd pseudo_covariance(const PseudoSnapshotSet& v) {
  const Eigen::Index K = v.vectors.cols();
  if (K < 1) throw InvalidParameters("pseudo_covariance needs at least one pseudo snapshot");
  Eigen::MatrixXcd r = v.vectors * v.vectors.adjoint() / static_cast<double>(K);
  // Exact Hermitian symmetry; the product is Hermitian up to rounding.
  return (r + r.adjoint()) * 0.5;
}

VirtualSnapshot select_virtual_ula(const Eigen::MatrixXcd& r_v, const SensorArray& array) {
  const auto& pos = array.positions();
  const auto T = static_cast<Eigen::Index>(pos.size());
  if (r_v.rows() != 2 * T || r_v.cols() != 2 * T)
    throw LengthMismatch("select_virtual_ula: R_v must be 2T x 2T for a " + std::to_string(T) + "-sensor array");

  const Segment seg = central_segment(dsca(array));
  std::vector<int> signature(static_cast<std::size_t>(2 * T));
  for (Eigen::Index i = 0; i < T; ++i) {
    signature[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)];
    signature[static_cast<std::size_t>(i + T)] = -pos[static_cast<std::size_t>(i)];
  }

  const auto n = static_cast<Eigen::Index>(seg.count());
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(n);
  std::vector<int> hits(static_cast<std::size_t>(n), 0);
  for (Eigen::Index i = 0; i < 2 * T; ++i)
    for (Eigen::Index j = 0; j < 2 * T; ++j) {
      const int lag = signature[static_cast<std::size_t>(i)] - signature[static_cast<std::size_t>(j)];
      if (!seg.contains(lag)) continue;
      sum(lag - seg.lo) += r_v(i, j);
      ++hits[static_cast<std::size_t>(lag - seg.lo)];
    }

  VirtualSnapshot z{Eigen::VectorXcd(n), seg};
  for (Eigen::Index u = 0; u < n; ++u) {
    const int h = hits[static_cast<std::size_t>(u)];
    if (h == 0) throw InternalError("virtual lag " + std::to_string(seg.lo + u) + " has no contributing entry");
    z.values(u) = sum(u) / static_cast<double>(h);
  }
  return z;
}

SmoothedCovariance spatial_smoothing(const VirtualSnapshot& z) {
  const Segment& seg = z.segment;
  if (seg.lo != -seg.hi || z.values.size() != seg.count())
    throw InvalidParameters("spatial_smoothing needs a virtual snapshot over a symmetric segment [-U, U]");
  const int U = seg.hi;
  const Eigen::Index dim = U + 1;

  // Row i of Z is z_i^T, so R = Z^T conj(Z) / (U+1).
  Eigen::MatrixXcd Z(dim, dim);
  for (int i = 0; i <= U; ++i)
    for (int k = 0; k <= U; ++k) Z(i, k) = z.at(i - k);
  Eigen::MatrixXcd r = Z.transpose() * Z.conjugate() / static_cast<double>(dim);
  return {(r + r.adjoint()) * 0.5};
}

VirtualSnapshot ideal_virtual_snapshot(const SensorArray& array, const SourceSet& sources, double pseudo_noise) {
  const Segment seg = central_segment(dsca(array));
  VirtualSnapshot z{Eigen::VectorXcd::Zero(seg.count()), seg};
  for (std::size_t l = 0; l < sources.angles_deg.size(); ++l) {
    const double q = sources.powers[l] * sources.powers[l];
    const double s = std::sin(sources.angles_deg[l] * std::numbers::pi / 180.0);
    for (int u = seg.lo; u <= seg.hi; ++u) z.values(u - seg.lo) += std::polar(q, -std::numbers::pi * u * s);
  }
  z.values(-seg.lo) += pseudo_noise;
  return z;
}

SmoothedCovariance ideal_virtual_covariance(const SensorArray& array, const SourceSet& sources,
                                            double pseudo_noise) {
  return spatial_smoothing(ideal_virtual_snapshot(array, sources, pseudo_noise));
}

VirtualSnapshot sample_virtual_snapshot(const SnapshotMatrix& x, int K) {
  return select_virtual_ula(pseudo_covariance(pseudo_snapshots(x, K)), x.array);
}

}  // namespace rasdoa
