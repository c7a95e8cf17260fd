#include "rasdoa/music.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "rasdoa/errors.hpp"

namespace rasdoa {

void AngleGrid::validate() const {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw InvalidParameters("angle grid needs lo < hi");
  if (!(step > 0.0)) throw InvalidParameters("angle grid step must be positive");
  if (lo <= -90.0 || hi >= 90.0) throw InvalidParameters("angle grid must stay inside (-90, 90)");
}

std::size_t AngleGrid::size() const {
  validate();
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

std::vector<double> AngleGrid::values() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i);
  return out;
}

double hermitian_defect(const Eigen::MatrixXcd& r) {
  const double norm = r.norm();
  if (norm == 0.0) return 0.0;
  return (r - r.adjoint()).norm() / norm;
}

EigenDecomposition hermitian_eig(const Eigen::MatrixXcd& r) {
  if (r.rows() != r.cols()) throw NonHermitian("hermitian_eig: matrix is not square");
  if (hermitian_defect(r) > 1e-8) throw NonHermitian("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r);
  if (solver.info() != Eigen::Success) throw ConvergenceFailure("hermitian_eig: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

MusicSpectrum music_spectrum(const SmoothedCovariance& r_ss, int L, const AngleGrid& grid) {
  const Eigen::Index dim = r_ss.matrix.rows();
  if (L < 1) throw InvalidParameters("MUSIC needs at least one source");
  if (L >= dim)
    throw TooManySources("insufficient noise subspace dimension: " + std::to_string(L) + " sources, covariance dim " +
                         std::to_string(dim));
  grid.validate();

  const EigenDecomposition eig = hermitian_eig(r_ss.matrix);
  // Eigenvalues ascending: the first dim-L columns span the noise subspace.
  const Eigen::MatrixXcd noise_adj = eig.vectors.leftCols(dim - L).adjoint();

  MusicSpectrum out{grid, std::vector<double>(grid.size())};
  constexpr std::size_t kChunk = 512;
  const std::size_t n = out.values.size();
  Eigen::MatrixXcd steering(dim, static_cast<Eigen::Index>(std::min(kChunk, n)));
  for (std::size_t first = 0; first < n; first += kChunk) {
    const auto cols = static_cast<Eigen::Index>(std::min(kChunk, n - first));
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double s = std::sin(grid.at(first + static_cast<std::size_t>(c)) * std::numbers::pi / 180.0);
      const std::complex<double> w = std::polar(1.0, std::numbers::pi * s);
      std::complex<double> phase = 1.0;
      for (Eigen::Index k = 0; k < dim; ++k) {
        steering(k, c) = phase;
        phase *= w;
      }
    }
    const Eigen::VectorXd denom = (noise_adj * steering.leftCols(cols)).colwise().squaredNorm().transpose();
    for (Eigen::Index c = 0; c < cols; ++c)
      out.values[first + static_cast<std::size_t>(c)] = 1.0 / std::max(denom(c), std::numeric_limits<double>::min());
  }
  return out;
}

DoaEstimates find_peaks(const MusicSpectrum& spectrum, int L) {
  if (L < 1) throw InvalidParameters("find_peaks needs L >= 1");
  const auto& v = spectrum.values;
  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < v.size();) {
    if (!(v[i] > v[i - 1])) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < v.size() && v[end + 1] == v[i]) ++end;
    if (end + 1 < v.size() && v[end + 1] < v[i]) peaks.push_back(i);
    i = end + 1;
  }

  // Stable so equal heights keep angle order.
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });
  DoaEstimates out;
  out.shortfall = peaks.size() < static_cast<std::size_t>(L);
  peaks.resize(std::min(peaks.size(), static_cast<std::size_t>(L)));
  std::sort(peaks.begin(), peaks.end());
  for (std::size_t i : peaks) out.angles_deg.push_back(spectrum.grid.at(i));
  return out;
}

double rmse(std::vector<double> estimates, std::vector<double> truth) {
  if (estimates.size() != truth.size() || truth.empty())
    throw LengthMismatch("rmse: " + std::to_string(estimates.size()) + " estimates for " +
                         std::to_string(truth.size()) + " true angles");
  std::sort(estimates.begin(), estimates.end());
  std::sort(truth.begin(), truth.end());
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) acc += (estimates[i] - truth[i]) * (estimates[i] - truth[i]);
  return std::sqrt(acc / static_cast<double>(truth.size()));
}

}  // namespace rasdoa
