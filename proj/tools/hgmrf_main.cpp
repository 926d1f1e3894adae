#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "hgmrf/experiments.hpp"

namespace {

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path,
                    binary ? std::ios::out | std::ios::binary : std::ios::out);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + path + "'");
  }
  return out;
}

// "-" routes to stdout so commands compose in pipelines.
int with_stream(const std::string& path, bool binary, auto&& fn) {
  if (path == "-") {
    return fn(std::cout);
  }
  std::ofstream out = open_out(path, binary);
  const int status = fn(out);
  if (!out) {
    throw std::runtime_error("write failed for output file '" + path + "'");
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hidden Gauss-Markov field detection and efficiency toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a config file");

  hgmrf::ExponentSweepConfig sweep_cfg;
  std::string sweep_out = "exponent_sweep.csv";
  auto* sweep = app.add_subcommand(
      "exponent-sweep", "Error-exponent sweep over zeta for a list of SNRs");
  sweep->add_option("--snr-db", sweep_cfg.snr_db, "SNR values in dB")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--zeta-step", sweep_cfg.zeta_step, "zeta grid step")
      ->capture_default_str();
  sweep->add_option("--zeta-max", sweep_cfg.zeta_max, "last zeta value (< 1/4)")
      ->capture_default_str();
  sweep->add_option("--grid", sweep_cfg.grid, "quadrature points per axis")
      ->capture_default_str();
  sweep->add_option("-o,--out", sweep_out, "output CSV path, - for stdout")
      ->capture_default_str();

  hgmrf::ValidateConfig val_cfg;
  std::string val_out = "-";
  auto* validate = app.add_subcommand(
      "validate", "Self-averaging and miss-trend checks; exit 1 on failure");
  validate->add_option("--n-list", val_cfg.n_list, "lattice sides")
      ->delimiter(',')
      ->capture_default_str();
  validate->add_option("--trials", val_cfg.trials, "trials per lattice side")
      ->capture_default_str();
  validate->add_option("--snr", val_cfg.snr, "linear SNR")
      ->capture_default_str();
  validate->add_option("--zeta", val_cfg.zeta, "correlation parameter")
      ->capture_default_str();
  validate->add_option("--sigma2", val_cfg.sigma2, "noise variance")
      ->capture_default_str();
  validate->add_option("--seed", val_cfg.seed, "RNG seed")
      ->capture_default_str();
  validate
      ->add_option("--pm-n-list", val_cfg.pm_n_list,
                   "lattice sides for the miss-probability trend")
      ->delimiter(',')
      ->capture_default_str();
  validate
      ->add_option("--pm-cal-trials", val_cfg.pm_cal_trials,
                   "calibration trials per side")
      ->capture_default_str();
  validate
      ->add_option("--pm-est-trials", val_cfg.pm_est_trials,
                   "estimation trials per side")
      ->capture_default_str();
  validate->add_option("--pm-alpha", val_cfg.pm_alpha, "false-alarm level")
      ->capture_default_str();
  validate->add_option("--grid", val_cfg.grid, "quadrature points per axis")
      ->capture_default_str();
  validate->add_option("-o,--out", val_out, "output JSON path, - for stdout")
      ->capture_default_str();

  hgmrf::EfficiencyConfig eff_cfg;
  std::string eff_csv = "efficiency.csv";
  std::string eff_json = "efficiency_verdict.json";
  auto* eff = app.add_subcommand(
      "efficiency", "Energy-efficiency sweep in the area or density regime");
  eff->add_option("--regime", eff_cfg.regime, "area | density")
      ->capture_default_str();
  eff->add_option("--n-list", eff_cfg.n_list,
                  "grid half-widths (empty: regime default)")
      ->delimiter(',');
  eff->add_option("--spacing", eff_cfg.spacing, "sensor spacing (area regime)")
      ->capture_default_str();
  eff->add_option("--extent", eff_cfg.extent,
                  "physical extent (density regime)")
      ->capture_default_str();
  eff->add_option("--delta", eff_cfg.delta, "propagation loss factor (>= 2)")
      ->capture_default_str();
  eff->add_option("--snr", eff_cfg.snr, "linear SNR")->capture_default_str();
  eff->add_option("--map", eff_cfg.map, "exponential | constant | file")
      ->capture_default_str();
  eff->add_option("--r0", eff_cfg.r0, "decay length of the exponential map")
      ->capture_default_str();
  eff->add_option("--zeta-const", eff_cfg.zeta_const,
                  "value of the constant map")
      ->capture_default_str();
  eff->add_option("--map-file", eff_cfg.map_file,
                  "CSV of r,zeta points for map=file");
  eff->add_option("--grid", eff_cfg.grid, "quadrature points per axis")
      ->capture_default_str();
  eff->add_option("--window-fraction", eff_cfg.window_fraction,
                  "tail fraction of the sweep used for the verdict fit")
      ->capture_default_str();
  eff->add_option("--slope-tolerance", eff_cfg.slope_tolerance,
                  "half-width of the threshold band around (1-delta)/2")
      ->capture_default_str();
  eff->add_option("--csv-out", eff_csv, "sweep table path, - for stdout")
      ->capture_default_str();
  eff->add_option("--json-out", eff_json, "verdict path, - for stdout")
      ->capture_default_str();

  hgmrf::SampleConfig sample_cfg;
  std::string sample_out;
  auto* sample =
      app.add_subcommand("sample", "Draw one field and write it out");
  sample->add_option("--kind", sample_cfg.kind, "signal | observation")
      ->capture_default_str();
  sample->add_option("--hypothesis", sample_cfg.hypothesis,
                     "h0 | h1 (observation kind only)")
      ->capture_default_str();
  sample->add_option("--side", sample_cfg.side, "lattice side N")
      ->capture_default_str();
  sample->add_option("--snr", sample_cfg.snr, "linear SNR")
      ->capture_default_str();
  sample->add_option("--zeta", sample_cfg.zeta, "correlation parameter")
      ->capture_default_str();
  sample->add_option("--sigma2", sample_cfg.sigma2, "noise variance")
      ->capture_default_str();
  sample->add_option("--kappa", sample_cfg.kappa,
                     "precision scale; overrides --snr when positive")
      ->capture_default_str();
  sample->add_option("--seed", sample_cfg.seed, "RNG seed")
      ->capture_default_str();
  sample->add_option("--format", sample_cfg.format, "csv | binary")
      ->capture_default_str();
  sample->add_option("-o,--out", sample_out,
                     "output path (default field.csv / field.bin)");

  hgmrf::DetectConfig det_cfg;
  std::string det_out = "-";
  auto* detect = app.add_subcommand(
      "detect", "Calibrate a threshold and estimate both error probabilities");
  detect->add_option("--side", det_cfg.side, "lattice side N")
      ->capture_default_str();
  detect->add_option("--alpha", det_cfg.alpha, "false-alarm level")
      ->capture_default_str();
  detect->add_option("--cal-trials", det_cfg.cal_trials, "calibration trials")
      ->capture_default_str();
  detect->add_option("--est-trials", det_cfg.est_trials, "estimation trials")
      ->capture_default_str();
  detect->add_option("--snr", det_cfg.snr, "linear SNR")->capture_default_str();
  detect->add_option("--zeta", det_cfg.zeta, "correlation parameter")
      ->capture_default_str();
  detect->add_option("--sigma2", det_cfg.sigma2, "noise variance")
      ->capture_default_str();
  detect->add_option("--seed", det_cfg.seed, "RNG seed")
      ->capture_default_str();
  detect->add_option("--format", det_cfg.format, "json | csv")
      ->capture_default_str();
  detect->add_option("-o,--out", det_out, "output path, - for stdout")
      ->capture_default_str();

  // Lets --config follow the subcommand name; unmatched subcommand options
  // climb to the app, where the config option lives.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sweep->parsed()) {
      return with_stream(sweep_out, false, [&](std::ostream& out) {
        hgmrf::run_exponent_sweep(sweep_cfg, out);
        return 0;
      });
    }
    if (validate->parsed()) {
      return with_stream(val_out, false, [&](std::ostream& out) {
        return hgmrf::run_validate(val_cfg, out);
      });
    }
    if (eff->parsed()) {
      int status = 0;
      status = with_stream(eff_csv, false, [&](std::ostream& csv) {
        return with_stream(eff_json, false, [&](std::ostream& json_out) {
          return hgmrf::run_efficiency(eff_cfg, csv, json_out);
        });
      });
      return status;
    }
    if (sample->parsed()) {
      const bool binary = sample_cfg.format == "binary";
      if (sample_out.empty()) {
        sample_out = binary ? "field.bin" : "field.csv";
      }
      return with_stream(sample_out, binary, [&](std::ostream& out) {
        hgmrf::run_sample(sample_cfg, out);
        return 0;
      });
    }
    if (detect->parsed()) {
      return with_stream(det_out, false, [&](std::ostream& out) {
        hgmrf::run_detect(det_cfg, out);
        return 0;
      });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
