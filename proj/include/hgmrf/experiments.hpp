#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hgmrf {

// Reproducible experiment drivers behind the CLI subcommands. All write
// deterministic output: CSV floats use shortest round-trip formatting and
// every stochastic path is seeded.

struct ExponentSweepConfig {
  std::vector<double> snr_db = {10.0, 0.0, -3.0, -5.0};
  double zeta_step = 0.005;
  double zeta_max = 0.2499;
  int grid = 256;
};

// CSV columns: snr_db, zeta, K_s, grid, err_est, argmax (1 on the per-snr
// maximizing row).
void run_exponent_sweep(const ExponentSweepConfig& cfg, std::ostream& out);

struct ValidateConfig {
  std::vector<int> n_list = {16, 32, 64};
  long long trials = 200;
  double snr = 1.0;
  double zeta = 0.1;
  double sigma2 = 1.0;
  std::uint64_t seed = 1;
  // Small-lattice miss-probability trend check.
  std::vector<int> pm_n_list = {6, 8, 10};
  long long pm_cal_trials = 20000;
  long long pm_est_trials = 20000;
  double pm_alpha = 0.1;
  int grid = 256;
};

// Emits a JSON report with one pass/fail entry per check; returns 0 when all
// checks pass, 1 otherwise.
int run_validate(const ValidateConfig& cfg, std::ostream& out);

struct EfficiencyConfig {
  std::string regime = "area";  // area | density
  std::vector<int> n_list;      // empty -> regime default
  double spacing = 1.0;
  double extent = 16.0;
  double delta = 2.0;
  double snr = 1.0;
  std::string map = "exponential";  // exponential | constant | file
  double r0 = 1.0;
  double zeta_const = 0.0;
  std::string map_file;
  int grid = 256;
  double window_fraction = 0.5;
  double slope_tolerance = 0.1;
};

// CSV columns: n, r_n, zeta, K_s, I_t, E_t, eta. The JSON stream gets the
// fitted slopes and, for the density regime, the verdict block. Returns 0.
int run_efficiency(const EfficiencyConfig& cfg, std::ostream& csv,
                   std::ostream& json_out);

struct SampleConfig {
  std::string kind = "signal";  // signal | observation
  std::string hypothesis = "h1";
  int side = 16;
  double snr = 1.0;
  double zeta = 0.1;
  double sigma2 = 1.0;
  double kappa = 0.0;  // > 0 overrides the snr-derived value
  std::uint64_t seed = 1;
  std::string format = "csv";  // csv | binary
};

void run_sample(const SampleConfig& cfg, std::ostream& out);

struct DetectConfig {
  int side = 8;
  double alpha = 0.1;
  long long cal_trials = 20000;
  long long est_trials = 20000;
  double snr = 1.0;
  double zeta = 0.1;
  double sigma2 = 1.0;
  std::uint64_t seed = 1;
  std::string format = "json";  // json | csv
};

void run_detect(const DetectConfig& cfg, std::ostream& out);

// Shortest round-trip decimal formatting, used for all CSV numerics.
std::string fmt(double v);

}  // namespace hgmrf
