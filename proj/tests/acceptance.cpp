// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//
//   acceptance            all criteria
//   acceptance 6 8        selected criteria

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rasdoa/errors.hpp"
#include "rasdoa/harness.hpp"

using namespace rasdoa;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int brute_u(const std::vector<int>& p) { return 2 * oracle::central_half_width(oracle::dsca(p)) + 1; }

// ---------------------------------------------------------------------------

Outcome c1_reference_counts() {
  struct Case {
    GeometrySpec spec;
    int expected;
  };
  const Case cases[] = {{{Family::NA, 4, 4}, 47},
                        {{Family::RASNA, 4, 4}, 77},
                        {{Family::CPA, 3, 4}, 53},
                        {{Family::RASCPA, 3, 4}, 69}};
  Outcome o{true, ""};
  for (const auto& c : cases) {
    const std::vector<int> p = build_geometry(c.spec).positions();
    const int brute = brute_u(p);
    const int lib = consecutive_dsca_count(build_geometry(c.spec));
    o.detail += c.spec.name() + "=" + std::to_string(brute) + " ";
    if (brute != c.expected || lib != c.expected) o.pass = false;
  }
  // The RAS arrays are reflections of the base arrays.
  if (build_geometry({Family::RASNA, 4, 4}).positions() != oracle::reflect(oracle::nested(4, 4))) o.pass = false;
  if (build_geometry({Family::RASCPA, 3, 4}).positions() != oracle::reflect(oracle::coprime(3, 4))) o.pass = false;
  return o;
}

Outcome c2_rasna_closed_form() {
  int bad = 0;
  for (int N = 1; N <= 10; ++N)
    for (int M = 1; M <= 10; ++M) {
      const int brute = brute_u(oracle::reflect(oracle::nested(N, M)));
      if (brute != 4 * M * N + 4 * M - 3 || predicted_count({Family::RASNA, N, M}) != brute) ++bad;
    }
  return {bad == 0, fmt("%d/100 mismatches", bad)};
}

Outcome c3_prop1() {
  int bad = 0;
  for (int N = 2; N <= 10; ++N) {
    const int M = N + 1;
    const auto p = oracle::coprime(N, M);
    const int lo = (N - 1) * N, hi = 2 * N + (2 * N - 1) * M;
    const Segment seg = prop1_segment(N, M);
    if (!oracle::consecutive(oracle::sums(p, p), lo, hi) || seg != Segment{lo, hi}) ++bad;
  }
  return {bad == 0, fmt("N=2..10, %d failures", bad)};
}

Outcome c4_prop2() {
  int bad = 0;
  for (int N = 2; N <= 10; ++N) {
    const int M = N + 1;
    const auto d = oracle::dsca(oracle::reflect(oracle::coprime(N, M)));
    const int h = 4 * M * N - 2 * M - N * (N - 1);
    const int central = 2 * oracle::central_half_width(d) + 1;
    if (!oracle::consecutive(d, -h, h) || central < 8 * M * N - 4 * M - 2 * N * (N - 1) + 1 ||
        prop2_segment(N, M) != Segment{-h, h})
      ++bad;
  }
  return {bad == 0, fmt("N=2..10, %d failures", bad)};
}

Outcome c5_comparison() {
  std::string losses;
  auto check = [&](Family base, const std::vector<int>& Ts) {
    const auto table = compare_families(base, Ts.front(), Ts.back());
    for (int T : Ts) {
      int u_base = -1, u_ras = -1;
      for (const auto& r : table.rows)
        if (r.T == T) (r.spec.family == base ? u_base : u_ras) = brute_u(build_geometry(r.spec).positions());
      if (u_base < 0 || u_ras <= u_base) losses += fmt("%s T=%d (%d vs %d) ", to_string(base).data(), T, u_ras, u_base);
    }
  };
  std::vector<int> na_T;
  for (int T = 6; T <= 24; ++T) na_T.push_back(T);
  check(Family::NA, na_T);
  check(Family::CPA, {9, 12, 15, 18, 21});
  return {losses.empty(), losses.empty() ? "NA T=6..24, CPA T=9..21 step 3" : losses};
}

Outcome c6_resolution() {
  auto cfg = ExperimentConfig::spectrum_defaults();
  int ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    cfg.base_seed = seed;
    const auto errors = run_spectrum(cfg).abs_errors();
    if (errors.size() != 26) continue;
    const double m = *std::max_element(errors.begin(), errors.end());
    if (m <= 1.0) {
      ++ok;
      worst = std::max(worst, m);
    }
  }
  return {ok >= 90, fmt("%d/100 seeds resolve all 26 within 1 deg (worst passing error %.3f deg)", ok, worst)};
}

Outcome c7_na_infeasible() {
  auto cfg = ExperimentConfig::spectrum_defaults();
  cfg.geometries = {{Family::NA, 4, 4}};
  try {
    (void)run_spectrum(cfg);
  } catch (const TooManySources& e) {
    return {true, e.what()};
  }
  return {false, "no TooManySources raised"};
}

Outcome c8_rmse_trend() {
  auto cfg = ExperimentConfig::rmse_defaults();
  cfg.runs = 100;
  Outcome o{true, ""};
  const std::pair<GeometrySpec, GeometrySpec> pairs[] = {{{Family::NA, 4, 4}, {Family::RASNA, 4, 4}},
                                                         {{Family::CPA, 3, 4}, {Family::RASCPA, 3, 4}}};
  // Cells where every run failed count as infinitely bad.
  auto mean = [](const RmseRow& r) {
    return std::isnan(r.mean_rmse) ? std::numeric_limits<double>::infinity() : r.mean_rmse;
  };
  for (const auto& [base, ras] : pairs) {
    cfg.geometries = {base, ras};
    const auto rep = run_rmse(cfg);
    auto rows_of = [&](const GeometrySpec& g) {
      std::vector<RmseRow> out;
      for (const auto& r : rep.rows)
        if (r.geometry == g.name()) out.push_back(r);
      return out;
    };
    const auto b = rows_of(base), r = rows_of(ras);
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::printf("      %-12s %+5.0f dB  %.4f (%d failed)   %-12s %.4f (%d failed)\n", base.name().c_str(), b[i].snr_db,
                  b[i].mean_rmse, b[i].failures, ras.name().c_str(), r[i].mean_rmse, r[i].failures);
      if (mean(r[i]) > mean(b[i])) {
        o.pass = false;
        o.detail += fmt("%s worse at %g dB; ", ras.name().c_str(), r[i].snr_db);
      }
    }
    for (const auto* rows : {&b, &r})
      if (!(mean(rows->back()) < mean(rows->front()))) {
        o.pass = false;
        o.detail += rows->front().geometry + " does not improve from -10 to +10 dB; ";
      }
  }
  if (o.pass) o.detail = "L=20, S=300, R=100; RAS <= base at every SNR, +10 dB < -10 dB";
  return o;
}

std::vector<double> sine_spaced(int L, int U) {
  std::vector<double> out;
  for (int l = 0; l < L; ++l)
    out.push_back(std::asin(static_cast<double>(2 * l - (L - 1)) / (U + 1)) * 180.0 / std::numbers::pi);
  return out;
}

Outcome c9_oracle_equivalence() {
  const SensorArray array = build_geometry({Family::RASNA, 4, 4});
  const int U = central_segment(dsca(array)).hi;
  int failed = 0;
  double worst = 0.0;
  for (int L = 1; L <= U; ++L) {
    // Past 36 sources the [-50, 50] layout packs sines closer than the
    // virtual aperture separates; spread them over the visible region instead.
    const bool wide = L > 36;
    const auto truth = wide ? sine_spaced(L, U) : uniform_angles(L);
    const AngleGrid grid = wide ? AngleGrid{-89.0, 89.0, 0.02} : AngleGrid{-60.0, 60.0, 0.02};
    SourceSet src{truth, std::vector<double>(L, 1.0), default_frequencies(L, 64), std::vector<double>(L, 0.0)};
    const auto est = find_peaks(music_spectrum(ideal_virtual_covariance(array, src), L, grid), L);
    if (est.shortfall) {
      ++failed;
      continue;
    }
    double m = 0.0;
    for (int l = 0; l < L; ++l) m = std::max(m, std::abs(est.angles_deg[l] - truth[l]));
    worst = std::max(worst, m);
    if (m > 0.02 + 1e-9) ++failed;
  }

  // Sample mode against the ideal snapshot, noiseless.
  const int L = 26, K = 64, S = 20000;
  SourceSet src{uniform_angles(L), std::vector<double>(L, 1.0), default_frequencies(L, K), draw_phases(L, 7)};
  const auto ideal = ideal_virtual_snapshot(array, src);
  const auto sample = sample_virtual_snapshot(generate_snapshots(array, src, {0.0}, S, 7), K);
  const double peak = ideal.values.cwiseAbs().maxCoeff();
  const double dev = (sample.values - ideal.values).cwiseAbs().maxCoeff() / peak;

  return {failed == 0 && dev <= 0.05,
          fmt("L=1..%d: %d failures, worst error %.4f deg; sample deviation %.2f%% of peak", U, failed, worst,
              100.0 * dev)};
}

Outcome c10_properties() {
  std::mt19937_64 rng(2024);
  int bad = 0;

  for (int trial = 0; trial < 300; ++trial) {
    const auto p = oracle::random_positions(rng, 12, 60);
    const SensorArray a(p);
    const auto d = dsca(a).members();
    const std::set<int> ds(d.begin(), d.end());
    for (int v : ds)
      if (!ds.count(-v)) ++bad;
    if (std::set<int>(d.begin(), d.end()) != oracle::dsca(p)) ++bad;
    if (dca(reverse(a)) != dca(a)) ++bad;
  }

  for (Eigen::Index n : {2, 8, 39, 64}) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
    const Eigen::MatrixXcd r = (m + m.adjoint()) * 0.5;
    const auto e = hermitian_eig(r);
    if ((r * e.vectors - e.vectors * e.values.asDiagonal()).norm() > 1e-8 * r.norm()) ++bad;
    if ((e.vectors.adjoint() * e.vectors - Eigen::MatrixXcd::Identity(n, n)).norm() > 1e-8) ++bad;
  }

  auto cfg = ExperimentConfig::rmse_defaults();
  cfg.runs = 4;
  cfg.snr_db = {0.0};
  cfg.grid.step = 0.05;
  if (to_csv(run_rmse(cfg, 1)) != to_csv(run_rmse(cfg, 2))) ++bad;
  const auto s = ExperimentConfig::spectrum_defaults();
  const auto s1 = run_spectrum(s), s2 = run_spectrum(s);
  if (spectrum_csv(s1) != spectrum_csv(s2) || peaks_csv(s1) != peaks_csv(s2)) ++bad;

  return {bad == 0, fmt("%d violations (DSCA symmetry, DCA reversal, eig bounds, re-run bytes)", bad)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria = {
      c1_reference_counts, c2_rasna_closed_form, c3_prop1, c4_prop2, c5_comparison,
      c6_resolution,   c7_na_infeasible,     c8_rmse_trend, c9_oracle_equivalence, c10_properties};
  const char* names[] = {"u-values",        "RAS-NA closed form", "sum co-array segment", "RAS-CPA DSCA segment",
                         "DOF comparison",  "26-source resolution", "NA too many sources", "RMSE trend",
                         "ideal equivalence", "property suites"};

  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= 10; ++i) selected.push_back(i);

  int failures = 0;
  for (int id : selected) {
    if (id < 1 || id > 10) {
      std::fprintf(stderr, "unknown criterion %d\n", id);
      return 2;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[id - 1]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %2d  %-22s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, names[id - 1], secs,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
