// rasdoa: sparse-array DOF analysis and DOA experiments from the command line.
//
//   rasdoa geometry RASNA 4 4
//   rasdoa compare NA --tmin 6 --tmax 24
//   rasdoa spectrum --config fig3.json --out results/
//   rasdoa rmse --config rmse.json --out results/ --seed 7
//
// Exit codes: 0 success, 2 invalid parameters, 3 estimation infeasible.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "rasdoa/errors.hpp"
#include "rasdoa/harness.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitInfeasible = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rasdoa::InvalidParameters("cannot write " + path.string());
  out << content;
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

struct ExperimentFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string mode;
  unsigned threads = 0;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON experiment config; every field optional");
  cmd->add_option("--out", f.out_dir, "Output directory (CSV + metadata JSON); stdout when omitted");
  cmd->add_option("--seed", f.seed, "Base seed, overrides the config");
  cmd->add_option("--mode", f.mode, "ideal | sample, overrides the config")->check(CLI::IsMember({"ideal", "sample"}));
  cmd->add_option("--threads", f.threads, "Worker threads for Monte Carlo runs (0 = all cores)");
}

rasdoa::ExperimentConfig load_config(const ExperimentFlags& f, rasdoa::ExperimentConfig defaults) {
  json doc = json::object();
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw rasdoa::InvalidParameters("cannot read config " + f.config_path);
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw rasdoa::InvalidParameters(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (f.seed) doc["seed"] = *f.seed;
  if (!f.mode.empty()) doc["mode"] = f.mode;
  return rasdoa::parse_config(doc, std::move(defaults));
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

int cmd_geometry(const std::string& family, int N, int M, const std::string& out_dir) {
  const rasdoa::GeometrySpec spec{rasdoa::parse_family(family), N, M};
  const auto report = rasdoa::analyse_geometry(spec);
  std::cout << rasdoa::to_text(report);
  if (!out_dir.empty()) {
    const auto dir = prepare_out(out_dir);
    write_file(dir / "geometry.csv", rasdoa::to_csv(report));
    write_json(dir / "geometry.json", {{"tool", "rasdoa"},
                                       {"version", std::string(rasdoa::version())},
                                       {"command", "geometry"},
                                       {"family", std::string(rasdoa::to_string(spec.family))},
                                       {"N", N},
                                       {"M", M}});
  } else {
    std::cout << "\n" << rasdoa::to_csv(report);
  }
  return 0;
}

int cmd_compare(const std::string& family, int t_lo, int t_hi, const std::string& out_dir) {
  const auto table = rasdoa::compare_families(rasdoa::parse_family(family), t_lo, t_hi);
  for (const auto& note : table.notes) std::cerr << "note: " << note << "\n";
  const std::string csv = rasdoa::to_csv(table);
  if (out_dir.empty()) {
    std::cout << csv;
    return 0;
  }
  const auto dir = prepare_out(out_dir);
  write_file(dir / "compare.csv", csv);
  write_json(dir / "compare.json", {{"tool", "rasdoa"},
                                    {"version", std::string(rasdoa::version())},
                                    {"command", "compare"},
                                    {"family", family},
                                    {"t_min", t_lo},
                                    {"t_max", t_hi},
                                    {"split_rule", "max enumerated u; ties -> smaller M, then smaller N; CPA M=N+1"},
                                    {"notes", table.notes}});
  return 0;
}

int cmd_spectrum(const ExperimentFlags& f) {
  const auto cfg = load_config(f, rasdoa::ExperimentConfig::spectrum_defaults());
  json meta = rasdoa::metadata("spectrum", cfg);
  std::optional<fs::path> dir;
  if (!f.out_dir.empty()) dir = prepare_out(f.out_dir);

  rasdoa::SpectrumResult result;
  try {
    result = rasdoa::run_spectrum(cfg);
  } catch (const rasdoa::TooManySources& e) {
    std::cerr << cfg.geometries.front().name() << ": " << e.what() << "\n";
    if (dir) {
      meta["status"] = "too_many_sources";
      meta["message"] = e.what();
      write_json(*dir / "spectrum.json", meta);
    }
    return kExitInfeasible;
  }

  meta["status"] = result.estimates.shortfall ? "peak_shortfall" : "ok";
  meta["detected_peaks_deg"] = result.estimates.angles_deg;
  const auto errors = result.abs_errors();
  if (!errors.empty()) meta["max_abs_error_deg"] = *std::max_element(errors.begin(), errors.end());

  if (dir) {
    write_file(*dir / "spectrum.csv", rasdoa::spectrum_csv(result));
    write_file(*dir / "peaks.csv", rasdoa::peaks_csv(result));
    write_json(*dir / "spectrum.json", meta);
  } else {
    std::cout << rasdoa::peaks_csv(result);
  }
  return 0;
}

int cmd_rmse(const ExperimentFlags& f) {
  const auto cfg = load_config(f, rasdoa::ExperimentConfig::rmse_defaults());
  const auto report = rasdoa::run_rmse(cfg, f.threads);
  const std::string csv = rasdoa::to_csv(report);
  if (f.out_dir.empty()) {
    std::cout << csv;
    return 0;
  }
  const auto dir = prepare_out(f.out_dir);
  write_file(dir / "rmse.csv", csv);
  write_json(dir / "rmse.json", rasdoa::metadata("rmse", cfg));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversed-and-shift sparse arrays: co-array analysis and DOA experiments"};
  app.set_version_flag("--version", std::string(rasdoa::version()));
  app.require_subcommand(1);

  std::string family;
  int N = 0;
  int M = 0;
  std::string geometry_out;
  auto* geometry = app.add_subcommand("geometry", "Positions, co-array segments and u for one array");
  geometry->add_option("family", family, "NA | SNA | RASNA | CPA | RASCPA")->required();
  geometry->add_option("N", N)->required();
  geometry->add_option("M", M)->required();
  geometry->add_option("--out", geometry_out, "Output directory");

  std::string pair;
  int t_lo = 6;
  int t_hi = 24;
  std::string compare_out;
  auto* compare = app.add_subcommand("compare", "u versus sensor count T, base family vs RAS variant");
  compare->add_option("family", pair, "NA or CPA")->required();
  compare->add_option("--tmin", t_lo, "Smallest T");
  compare->add_option("--tmax", t_hi, "Largest T");
  compare->add_option("--out", compare_out, "Output directory");

  ExperimentFlags spectrum_flags;
  auto* spectrum = app.add_subcommand("spectrum", "MUSIC spectrum and detected peaks for one trial");
  add_experiment_flags(spectrum, spectrum_flags);

  ExperimentFlags rmse_flags;
  auto* rmse = app.add_subcommand("rmse", "Monte Carlo RMSE versus SNR");
  add_experiment_flags(rmse, rmse_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*geometry) return cmd_geometry(family, N, M, geometry_out);
    if (*compare) return cmd_compare(pair, t_lo, t_hi, compare_out);
    if (*spectrum) return cmd_spectrum(spectrum_flags);
    if (*rmse) return cmd_rmse(rmse_flags);
  } catch (const rasdoa::InvalidParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const rasdoa::TooManySources& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
