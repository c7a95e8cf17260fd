#include "rasdoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "rasdoa/errors.hpp"
#include "rasdoa/signal_model.hpp"
#include "rasdoa/vcam.hpp"

#ifndef RASDOA_VERSION
#define RASDOA_VERSION "0.0.0"
#endif

namespace rasdoa {

using nlohmann::json;

std::string_view version() noexcept { return RASDOA_VERSION; }

std::string_view to_string(Mode m) noexcept { return m == Mode::Ideal ? "ideal" : "sample"; }

Mode parse_mode(std::string_view s) {
  if (s == "ideal") return Mode::Ideal;
  if (s == "sample") return Mode::Sample;
  throw InvalidParameters("mode must be 'ideal' or 'sample', got '" + std::string(s) + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::spectrum_defaults() { return {}; }

ExperimentConfig ExperimentConfig::rmse_defaults() {
  ExperimentConfig cfg;
  cfg.geometries = {{Family::NA, 4, 4}, {Family::RASNA, 4, 4}};
  cfg.sources = 20;
  cfg.snr_db = {-10.0, -6.0, -2.0, 2.0, 6.0, 10.0};
  cfg.grid.step = 0.01;
  return cfg;
}

void ExperimentConfig::validate() const {
  if (geometries.empty()) throw InvalidParameters("config: at least one geometry is required");
  for (const auto& g : geometries) g.validate();
  if (sources < 1) throw InvalidParameters("config: sources must be at least 1");
  if (snr_db.empty()) throw InvalidParameters("config: snr_db must not be empty");
  if (pseudo_snapshots < 1) throw InvalidParameters("config: pseudo_snapshots must be at least 1");
  if (snapshots <= pseudo_snapshots)
    throw InvalidParameters("config: snapshots must exceed the largest lag (pseudo_snapshots)");
  if (runs < 1) throw InvalidParameters("config: runs must be at least 1");
  if (!(source_power > 0.0)) throw InvalidParameters("config: source_power must be positive");
  if (!(pseudo_noise >= 0.0)) throw InvalidParameters("config: pseudo_noise must be non-negative");
  grid.validate();
  if (angles_deg && static_cast<int>(angles_deg->size()) != sources)
    throw InvalidParameters("config: angles_deg must list one angle per source");
  if (frequencies && static_cast<int>(frequencies->size()) != sources)
    throw InvalidParameters("config: frequencies must list one frequency per source");

  SourceSet probe{truth_angles(), std::vector<double>(static_cast<std::size_t>(sources), source_power),
                  source_frequencies(), std::vector<double>(static_cast<std::size_t>(sources), 0.0)};
  probe.validate();
}

std::vector<double> ExperimentConfig::truth_angles() const {
  if (angles_deg) {
    auto a = *angles_deg;
    std::sort(a.begin(), a.end());
    return a;
  }
  return uniform_angles(sources);
}

std::vector<double> ExperimentConfig::source_frequencies() const {
  return frequencies ? *frequencies : default_frequencies(sources, pseudo_snapshots);
}

namespace {

template <typename T>
void read_if(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

ExperimentConfig parse_config(const json& doc, ExperimentConfig cfg) {
  if (!doc.is_object()) throw InvalidParameters("config: top level must be a JSON object");
  static const std::vector<std::string> known{"geometries",   "sources", "snr_db",       "snapshots",
                                              "pseudo_snapshots", "runs", "seed",        "grid",
                                              "mode",         "source_power", "pseudo_noise", "angles_deg",
                                              "frequencies"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidParameters("config: unknown key '" + key + "'");

  try {
    if (doc.contains("geometries")) {
      cfg.geometries.clear();
      for (const auto& g : doc.at("geometries"))
        cfg.geometries.push_back(
            {parse_family(g.at("family").get<std::string>()), g.at("N").get<int>(), g.at("M").get<int>()});
    }
    read_if(doc, "sources", cfg.sources);
    if (doc.contains("snr_db")) {
      const auto& s = doc.at("snr_db");
      cfg.snr_db = s.is_array() ? s.get<std::vector<double>>() : std::vector<double>{s.get<double>()};
    }
    read_if(doc, "snapshots", cfg.snapshots);
    read_if(doc, "pseudo_snapshots", cfg.pseudo_snapshots);
    read_if(doc, "runs", cfg.runs);
    read_if(doc, "seed", cfg.base_seed);
    if (doc.contains("grid")) {
      const auto& g = doc.at("grid");
      read_if(g, "lo", cfg.grid.lo);
      read_if(g, "hi", cfg.grid.hi);
      read_if(g, "step", cfg.grid.step);
    }
    if (doc.contains("mode")) cfg.mode = parse_mode(doc.at("mode").get<std::string>());
    read_if(doc, "source_power", cfg.source_power);
    read_if(doc, "pseudo_noise", cfg.pseudo_noise);
    if (doc.contains("angles_deg")) cfg.angles_deg = doc.at("angles_deg").get<std::vector<double>>();
    if (doc.contains("frequencies")) cfg.frequencies = doc.at("frequencies").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw InvalidParameters(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  json geoms = json::array();
  for (const auto& g : cfg.geometries)
    geoms.push_back({{"family", std::string(to_string(g.family))}, {"N", g.N}, {"M", g.M}});
  json out = {
      {"geometries", geoms},
      {"sources", cfg.sources},
      {"snr_db", cfg.snr_db},
      {"snapshots", cfg.snapshots},
      {"pseudo_snapshots", cfg.pseudo_snapshots},
      {"runs", cfg.runs},
      {"seed", cfg.base_seed},
      {"grid", {{"lo", cfg.grid.lo}, {"hi", cfg.grid.hi}, {"step", cfg.grid.step}}},
      {"mode", std::string(to_string(cfg.mode))},
      {"source_power", cfg.source_power},
      {"pseudo_noise", cfg.pseudo_noise},
      {"angles_deg", cfg.truth_angles()},
      {"frequencies", cfg.source_frequencies()},
  };
  return out;
}

json metadata(std::string_view command, const ExperimentConfig& cfg) {
  return {
      {"tool", "rasdoa"},
      {"version", std::string(version())},
      {"command", std::string(command)},
      {"config", to_json(cfg)},
      {"frequency_layout", cfg.frequencies ? "explicit" : "lag-grid (k0 + m*l)/K"},
      {"seed_derivation", "run r uses base_seed + r; phases and noise drawn from that seed"},
      {"correlation_lags", "1..K against the sensor at position 0, both signs"},
      {"redundancy_averaging", "arithmetic mean over equal-lag entries"},
      {"spatial_smoothing", "z_i = [z(i), ..., z(i-U)], i = 0..U"},
      {"ideal_pseudo_power", "sigma^4"},
      {"peak_rule", "interior strict local maxima, leftmost on plateaus, L largest, sorted by angle"},
      {"rmse_pairing", "sorted order; runs with a peak shortfall are excluded and counted"},
  };
}

// ---------------------------------------------------------------------------
// Trials

SmoothedCovariance trial_covariance(const SensorArray& array, const ExperimentConfig& cfg, double snr_db,
                                    std::uint64_t seed) {
  const auto L = static_cast<std::size_t>(cfg.sources);
  SourceSet src{cfg.truth_angles(), std::vector<double>(L, cfg.source_power), cfg.source_frequencies(),
                std::vector<double>(L, 0.0)};
  if (cfg.mode == Mode::Ideal) return ideal_virtual_covariance(array, src, cfg.pseudo_noise);

  src.phases = draw_phases(cfg.sources, seed);
  const NoiseSpec noise{noise_variance_for_snr(snr_db, cfg.source_power)};
  const SnapshotMatrix x = generate_snapshots(array, src, noise, cfg.snapshots, seed);
  return spatial_smoothing(sample_virtual_snapshot(x, cfg.pseudo_snapshots));
}

// ---------------------------------------------------------------------------
// geometry

GeometryReport analyse_geometry(const GeometrySpec& spec) {
  const SensorArray array = build_geometry(spec);
  GeometryReport r;
  r.spec = spec;
  r.positions = array.positions();
  r.dca_segment = central_segment(dca(array));
  r.sca_segment = longest_run(sca(array));
  r.dsca_segment = central_segment(dsca(array));
  if (has_prediction(spec)) r.predicted = predicted_count(spec);
  return r;
}

namespace {

std::string join(const std::vector<int>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string seg_text(const Segment& s) {
  return "[" + std::to_string(s.lo) + ", " + std::to_string(s.hi) + "] (" + std::to_string(s.count()) + ")";
}

}  // namespace

std::string to_text(const GeometryReport& r) {
  std::ostringstream os;
  os << r.spec.name() << ", T=" << r.positions.size() << "\n"
     << "  positions:     {" << join(r.positions, ", ") << "}\n"
     << "  DCA central:   " << seg_text(r.dca_segment) << "\n"
     << "  SCA longest:   " << seg_text(r.sca_segment) << "\n"
     << "  DSCA central:  " << seg_text(r.dsca_segment) << "\n"
     << "  u=" << r.u();
  if (r.predicted)
    os << ", predicted " << *r.predicted << ", match=" << (r.matches_prediction() ? "true" : "false");
  os << "\n";
  return os.str();
}

std::string to_csv(const GeometryReport& r) {
  std::ostringstream os;
  os << "family,N,M,T,positions,dca_lo,dca_hi,sca_lo,sca_hi,dsca_lo,dsca_hi,u,predicted_u,match\n"
     << to_string(r.spec.family) << ',' << r.spec.N << ',' << r.spec.M << ',' << r.positions.size() << ','
     << join(r.positions, " ") << ',' << r.dca_segment.lo << ',' << r.dca_segment.hi << ',' << r.sca_segment.lo
     << ',' << r.sca_segment.hi << ',' << r.dsca_segment.lo << ',' << r.dsca_segment.hi << ',' << r.u() << ','
     << (r.predicted ? std::to_string(*r.predicted) : "") << ','
     << (r.predicted ? (r.matches_prediction() ? "true" : "false") : "") << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// compare

CompareTable compare_families(Family base, int t_lo, int t_hi) {
  if (base != Family::NA && base != Family::CPA)
    throw InvalidParameters("compare: family pair is selected by NA or CPA");
  if (t_lo > t_hi) throw InvalidParameters("compare: empty T range");
  const Family ras = base == Family::NA ? Family::RASNA : Family::RASCPA;

  CompareTable out;
  for (int T = t_lo; T <= t_hi; ++T) {
    for (Family f : {base, ras}) {
      try {
        const GeometrySpec s = best_split(T, f);
        out.rows.push_back({T, s, consecutive_dsca_count(build_geometry(s))});
      } catch (const NoValidSplit&) {
        out.notes.push_back("T=" + std::to_string(T) + " infeasible for " + std::string(to_string(f)));
      }
    }
  }
  return out;
}

std::string to_csv(const CompareTable& t) {
  std::ostringstream os;
  os << "T,family,N,M,u\n";
  for (const auto& r : t.rows)
    os << r.T << ',' << to_string(r.spec.family) << ',' << r.spec.N << ',' << r.spec.M << ',' << r.u << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// spectrum

std::vector<double> SpectrumResult::abs_errors() const {
  if (estimates.shortfall || estimates.angles_deg.size() != truth.size()) return {};
  auto t = truth;
  std::sort(t.begin(), t.end());
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = std::abs(estimates.angles_deg[i] - t[i]);
  return out;
}

SpectrumResult run_spectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  const GeometrySpec& spec = cfg.geometries.front();
  const SensorArray array = build_geometry(spec);
  const SmoothedCovariance r_ss = trial_covariance(array, cfg, cfg.snr_db.front(), cfg.base_seed);
  SpectrumResult out{spec, music_spectrum(r_ss, cfg.sources, cfg.grid), cfg.truth_angles(), {}};
  out.estimates = find_peaks(out.spectrum, cfg.sources);
  return out;
}

std::string spectrum_csv(const SpectrumResult& r) {
  std::string out = "angle_deg,spectrum_value\n";
  for (std::size_t i = 0; i < r.spectrum.values.size(); ++i)
    out += format_number(r.spectrum.grid.at(i)) + ',' + format_number(r.spectrum.values[i]) + '\n';
  return out;
}

std::string peaks_csv(const SpectrumResult& r) {
  std::string out = "source,truth_deg,estimate_deg,abs_error_deg\n";
  auto truth = r.truth;
  std::sort(truth.begin(), truth.end());
  const auto errors = r.abs_errors();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool paired = !errors.empty();
    out += std::to_string(i + 1) + ',' + format_number(truth[i]) + ',' +
           (paired ? format_number(r.estimates.angles_deg[i]) : "nan") + ',' +
           (paired ? format_number(errors[i]) : "nan") + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// rmse

RmseReport run_rmse(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();

  auto geoms = cfg.geometries;
  std::stable_sort(geoms.begin(), geoms.end(),
                   [](const GeometrySpec& a, const GeometrySpec& b) { return a.name() < b.name(); });
  auto snrs = cfg.snr_db;
  std::sort(snrs.begin(), snrs.end());

  struct Cell {
    SensorArray array;
    double snr;
    bool feasible;
  };
  std::vector<Cell> cells;
  for (const auto& g : geoms) {
    SensorArray array = build_geometry(g);
    const int U = central_segment(dsca(array)).hi;
    for (double snr : snrs) cells.push_back({array, snr, cfg.sources < U + 1});
  }

  const auto R = static_cast<std::size_t>(cfg.runs);
  const auto truth = cfg.truth_angles();
  constexpr double kFailed = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> per_run(cells.size() * R, kFailed);

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t task = next++; task < per_run.size(); task = next++) {
      const Cell& cell = cells[task / R];
      if (!cell.feasible) continue;
      try {
        const std::uint64_t seed = cfg.base_seed + task % R;
        const auto r_ss = trial_covariance(cell.array, cfg, cell.snr, seed);
        const auto est = find_peaks(music_spectrum(r_ss, cfg.sources, cfg.grid), cfg.sources);
        if (!est.shortfall) per_run[task] = rmse(est.angles_deg, truth);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };

  const unsigned n_workers =
      std::max(1u, std::min(threads ? threads : std::thread::hardware_concurrency(), static_cast<unsigned>(per_run.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
  }
  if (error) std::rethrow_exception(error);

  RmseReport report;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    RmseRow row{geoms[c / snrs.size()].name(), cells[c].snr, kFailed, cfg.runs, 0};
    double sum = 0.0;
    int ok = 0;
    for (std::size_t r = 0; r < R; ++r) {
      const double v = per_run[c * R + r];
      if (std::isnan(v)) {
        ++row.failures;
      } else {
        sum += v;
        ++ok;
      }
    }
    if (ok > 0) row.mean_rmse = sum / ok;
    report.rows.push_back(row);
  }
  return report;
}

std::string to_csv(const RmseReport& r) {
  std::string out = "geometry,snr_db,mean_rmse_deg,runs,failures\n";
  for (const auto& row : r.rows)
    out += row.geometry + ',' + format_number(row.snr_db) + ',' + format_number(row.mean_rmse) + ',' +
           std::to_string(row.runs) + ',' + std::to_string(row.failures) + '\n';
  return out;
}

}  // namespace rasdoa
