#pragma once

#include <vector>

#include <Eigen/Dense>

#include "rasdoa/vcam.hpp"

namespace rasdoa {

// Arithmetic angle grid lo, lo+step, ..., up to hi (inclusive within 1e-9 step).
struct AngleGrid {
  double lo = -60.0;
  double hi = 60.0;
  double step = 0.02;

  void validate() const;
  [[nodiscard]] std::size_t size() const;
  [[nodiscard]] double at(std::size_t i) const { return lo + step * static_cast<double>(i); }
  [[nodiscard]] std::vector<double> values() const;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // orthonormal columns, paired with values
};

// Relative Hermitian defect ||R - R^H||_F / ||R||_F (0 for the zero matrix).
[[nodiscard]] double hermitian_defect(const Eigen::MatrixXcd& r);

// Self-adjoint eigendecomposition. Throws NonHermitian when the relative
// defect exceeds 1e-8 and ConvergenceFailure if the solver does not converge.
[[nodiscard]] EigenDecomposition hermitian_eig(const Eigen::MatrixXcd& r);

struct MusicSpectrum {
  AngleGrid grid;
  std::vector<double> values;  // finite, >= 0, one per grid point
};

// P(theta) = 1 / ||E_n^H b(theta)||^2 with E_n the dim-L noise eigenvectors and
// b_k(theta) = exp(+j pi k sin(theta)), k = 0..U. The sign follows the
// subvector order of spatial_smoothing, whose element k sits at relative
// lag -k. Throws TooManySources when L >= dim.
[[nodiscard]] MusicSpectrum music_spectrum(const SmoothedCovariance& r_ss, int L, const AngleGrid& grid);

struct DoaEstimates {
  std::vector<double> angles_deg;  // sorted ascending
  bool shortfall = false;          // fewer than L local maxima were found
};

// Interior local maxima (strictly above both neighbours; a plateau counts
// once, at its leftmost index). Keeps the L largest and returns them sorted by
// angle.
[[nodiscard]] DoaEstimates find_peaks(const MusicSpectrum& spectrum, int L);

// sqrt(mean((est - truth)^2)) after sorting both. Throws LengthMismatch.
[[nodiscard]] double rmse(std::vector<double> estimates, std::vector<double> truth);

}  // namespace rasdoa
