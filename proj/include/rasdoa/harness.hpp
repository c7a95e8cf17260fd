#pragma once

// Declarative experiments: geometry reports, DOF comparisons, MUSIC spectra
// and Monte Carlo RMSE sweeps, each rendered as CSV plus a JSON sidecar.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rasdoa/coarray.hpp"
#include "rasdoa/music.hpp"

namespace rasdoa {

[[nodiscard]] std::string_view version() noexcept;

enum class Mode { Ideal, Sample };

[[nodiscard]] std::string_view to_string(Mode m) noexcept;
[[nodiscard]] Mode parse_mode(std::string_view s);

struct ExperimentConfig {
  std::vector<GeometrySpec> geometries{{Family::RASNA, 4, 4}};
  int sources = 26;
  std::vector<double> snr_db{0.0};
  int snapshots = 300;
  int pseudo_snapshots = 64;
  int runs = 100;
  std::uint64_t base_seed = 1;
  AngleGrid grid{-60.0, 60.0, 0.02};
  Mode mode = Mode::Sample;
  double source_power = 1.0;
  double pseudo_noise = 0.0;  // ideal mode only
  // Overrides for the uniform [-50, 50] layout and the default frequencies.
  std::optional<std::vector<double>> angles_deg;
  std::optional<std::vector<double>> frequencies;

  // Single geometry, 26 sources at 0 dB, grid step 0.02.
  [[nodiscard]] static ExperimentConfig spectrum_defaults();
  // NA/RASNA(4,4), 20 sources, SNR {-10,-6,-2,2,6,10}, grid step 0.01.
  [[nodiscard]] static ExperimentConfig rmse_defaults();

  // Throws InvalidParameters.
  void validate() const;

  [[nodiscard]] std::vector<double> truth_angles() const;
  [[nodiscard]] std::vector<double> source_frequencies() const;
};

// Fields present in `doc` override `defaults`; unknown keys are rejected.
[[nodiscard]] ExperimentConfig parse_config(const nlohmann::json& doc, ExperimentConfig defaults);
[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& cfg);

// Smoothed virtual covariance for one trial. Phases and noise are drawn from
// `seed`; ideal mode ignores both.
[[nodiscard]] SmoothedCovariance trial_covariance(const SensorArray& array, const ExperimentConfig& cfg,
                                                  double snr_db, std::uint64_t seed);

// ---------------------------------------------------------------------------
// geometry

struct GeometryReport {
  GeometrySpec spec;
  std::vector<int> positions;
  Segment dca_segment;   // central run of P - P
  Segment sca_segment;   // longest run of P + P
  Segment dsca_segment;  // central run of the DSCA
  std::optional<int> predicted;

  [[nodiscard]] int u() const noexcept { return dsca_segment.count(); }
  [[nodiscard]] bool matches_prediction() const noexcept { return predicted && *predicted == u(); }
};

[[nodiscard]] GeometryReport analyse_geometry(const GeometrySpec& spec);
[[nodiscard]] std::string to_text(const GeometryReport& r);
[[nodiscard]] std::string to_csv(const GeometryReport& r);

// ---------------------------------------------------------------------------
// compare

struct CompareRow {
  int T = 0;
  GeometrySpec spec;
  int u = 0;
};

struct CompareTable {
  std::vector<CompareRow> rows;
  std::vector<std::string> notes;  // infeasible (T, family) combinations
};

// `base` is NA or CPA; each feasible T gets a row for the base family and
// for its reversed-and-shifted counterpart.
[[nodiscard]] CompareTable compare_families(Family base, int t_lo, int t_hi);
[[nodiscard]] std::string to_csv(const CompareTable& t);

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumResult {
  GeometrySpec geometry;
  MusicSpectrum spectrum;
  std::vector<double> truth;
  DoaEstimates estimates;

  // Sorted pairing; empty when the peak search fell short.
  [[nodiscard]] std::vector<double> abs_errors() const;
};

// First geometry, first SNR, seed = base_seed. Throws TooManySources when the
// virtual array cannot hold cfg.sources.
[[nodiscard]] SpectrumResult run_spectrum(const ExperimentConfig& cfg);
[[nodiscard]] std::string spectrum_csv(const SpectrumResult& r);
[[nodiscard]] std::string peaks_csv(const SpectrumResult& r);

// ---------------------------------------------------------------------------
// rmse

struct RmseRow {
  std::string geometry;
  double snr_db = 0.0;
  double mean_rmse = 0.0;  // NaN when every run failed
  int runs = 0;
  int failures = 0;
};

struct RmseReport {
  std::vector<RmseRow> rows;  // sorted by geometry name, then SNR
};

// Run r uses seed base_seed + r for every geometry and SNR. Runs execute on
// `threads` workers (0 = hardware concurrency); the result does not depend on
// the worker count.
[[nodiscard]] RmseReport run_rmse(const ExperimentConfig& cfg, unsigned threads = 0);
[[nodiscard]] std::string to_csv(const RmseReport& r);

// ---------------------------------------------------------------------------

// Sidecar metadata: config, seeds, version and the fixed processing choices.
[[nodiscard]] nlohmann::json metadata(std::string_view command, const ExperimentConfig& cfg);

// "%.6g".
[[nodiscard]] std::string format_number(double v);

}  // namespace rasdoa
