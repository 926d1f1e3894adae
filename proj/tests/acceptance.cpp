// Release gate: ten numbered end-to-end checks, one verdict line each.
// Tolerances are pinned in the bodies on purpose. A red line prints the
// numbers behind it and the process exit status is the tally; nothing here
// throws past its own criterion.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <Eigen/Dense>

#include "hgmrf/detector.hpp"
#include "hgmrf/experiments.hpp"
#include "hgmrf/exponent.hpp"
#include "hgmrf/field_sim.hpp"
#include "hgmrf/network_energy.hpp"
#include "hgmrf/rng.hpp"
#include "hgmrf/spectrum.hpp"

#include "oracles.hpp"

namespace {

int failures = 0;
std::vector<std::string> notes;

std::string num(double v) { return hgmrf::fmt(v); }

double stein(double snr) {
  return 0.5 * std::log1p(snr) + 0.5 / (1.0 + snr) - 0.5;
}

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": "
            << name << " (" << detail << ")\n";
  if (!pass) ++failures;
  for (const auto& n : notes) {
    std::cout << "       note: " << n << "\n";
  }
  notes.clear();
}

template <typename Body>
void run(int idx, const char* name, Body&& body) {
  try {
    const auto [pass, detail] = body();
    report(idx, name, pass, detail);
  } catch (const std::exception& e) {
    notes.clear();
    report(idx, name, false, std::string("unexpected exception: ") + e.what());
  }
}

std::pair<bool, std::string> uncorrelated_limit() {
  double worst = 0.0;
  for (const double snr : {0.1, 1.0, 10.0, 100.0}) {
    const double got = hgmrf::sfar_error_exponent(snr, 0.0).value;
    worst = std::max(worst, std::abs(got - stein(snr)));
  }
  return {worst <= 1e-10,
          "max deviation from the closed form " + num(worst) +
              ", tolerance 1e-10"};
}

std::pair<bool, std::string> critical_collapse() {
  const double near = hgmrf::sfar_error_exponent(1.0, 0.2499, 512).value;
  const double flat = hgmrf::sfar_error_exponent(1.0, 0.0, 512).value;
  const bool pass = near < 0.01 * flat;
  if (!pass) {
    notes.push_back(
        "the exponent collapses to 0 at the critical coupling, but only "
        "logarithmically in the distance to it; at 1e-4 away the ratio is "
        "still " +
        num(near / flat) + ", far above the 0.01 demanded here");
  }
  return {pass, "K_s(0.2499) = " + num(near) + " vs bound 0.01 K_s(0) = " +
                    num(0.01 * flat) + ", ratio " + num(near / flat)};
}

std::pair<bool, std::string> coupling_sweep_shape() {
  std::vector<double> zs;
  for (int k = 0; k <= 249; ++k) zs.push_back(k * 0.001);
  zs.push_back(0.2499);

  std::vector<double> high, low;
  const double low_snr = std::pow(10.0, -0.5);
  for (const double z : zs) {
    high.push_back(hgmrf::sfar_error_exponent(10.0, z).value);
    low.push_back(hgmrf::sfar_error_exponent(low_snr, z).value);
  }
  double worst_rise = -1e300;
  for (std::size_t i = 0; i + 1 < high.size(); ++i) {
    worst_rise = std::max(worst_rise, high[i + 1] - high[i]);
  }
  const std::size_t arg = static_cast<std::size_t>(
      std::max_element(low.begin(), low.end()) - low.begin());
  const bool mono = worst_rise <= 0.0;
  const bool interior = zs[arg] > 0.2 && low[arg] > low[0];
  return {mono && interior,
          "largest step change at snr 10 is " + num(worst_rise) +
              "; low-snr argmax at zeta = " + num(zs[arg]) + " with K_s " +
              num(low[arg]) + " vs " + num(low[0]) + " at zeta 0"};
}

std::pair<bool, std::string> high_snr_growth() {
  const double a = hgmrf::sfar_error_exponent(1e3, 0.1).value;
  const double b = hgmrf::sfar_error_exponent(1e4, 0.1).value;
  const double slope = (b - a) / std::log(10.0);
  return {slope >= 0.45 && slope <= 0.55,
          "decade growth " + num(slope) + ", band [0.45, 0.55]"};
}

std::pair<bool, std::string> lattice_rate_convergence() {
  const auto params = hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0);
  const auto spectrum = hgmrf::sfar_spectrum(params);
  const double ref = hgmrf::sfar_error_exponent(1.0, 0.1, 1024).value;
  std::vector<double> gaps;
  std::string listing;
  for (const int N : {16, 32, 64, 128, 256}) {
    const double rate = hgmrf::finite_lattice_kl_rate(spectrum, 1.0, N).value;
    gaps.push_back(std::abs(rate - ref));
    listing += (listing.empty() ? "" : ", ") + num(gaps.back());
  }
  const bool close = gaps.back() <= 1e-3;
  bool shrinking = true;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    shrinking = shrinking && gaps[i + 1] <= gaps[i];
  }
  if (!shrinking) {
    notes.push_back(
        "the finite-size gap is already at the double-precision floor by "
        "N = 32; ulp-level jitter there breaks the monotone decrease");
  }
  return {close && shrinking,
          "gaps to the quadrature reference over N = 16..256: {" + listing +
              "}, final tolerance 1e-3"};
}

std::pair<bool, std::string> spectral_vs_dense_llr() {
  const auto params = hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0);
  double worst = 0.0;
  for (int N = 2; N <= 6; ++N) {
    for (int t = 0; t < 100; ++t) {
      hgmrf::CounterRng rng(hgmrf::seed_fold(
          hgmrf::seed_fold(424242, static_cast<std::uint64_t>(N)),
          static_cast<std::uint64_t>(t)));
      Eigen::MatrixXd m(N, N);
      for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) m(r, c) = rng.next_normal();
      }
      const hgmrf::TorusField field{N, hgmrf::FieldKind::observation, 0, m};
      const double a = hgmrf::llr(field, params).value;
      const double b = oracles::dense_llr(m, params);
      worst = std::max(worst, std::abs(a - b) /
                                  std::max({1.0, std::abs(a), std::abs(b)}));
    }
  }
  return {worst <= 1e-9, "500 random fields, worst relative gap " +
                             num(worst) + ", tolerance 1e-9"};
}

std::pair<bool, std::string> normalized_llr_mean() {
  const auto params = hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0);
  const auto rows =
      hgmrf::normalized_llr_convergence(params, {64}, 200, 2026);
  const auto& row = rows.front();
  const double rate =
      hgmrf::finite_lattice_kl_rate(hgmrf::sfar_spectrum(params), 1.0, 64)
          .value;
  const double band = 3.0 * row.std_normalized_llr / std::sqrt(200.0);
  const double gap = std::abs(row.mean_minus_normalized_llr - rate);
  return {gap <= band, "MC mean " + num(row.mean_minus_normalized_llr) +
                           " vs rate " + num(rate) + ", |gap| " + num(gap) +
                           " within 3 SE = " + num(band)};
}

std::pair<bool, std::string> miss_probability_slope() {
  const auto params = hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0);
  const double ks = hgmrf::sfar_error_exponent(1.0, 0.1).value;
  const int sides[] = {8, 12, 16};
  const long long est_trials[] = {1000000, 4000000, 4000000};
  std::vector<double> v;
  std::string miss_listing, v_listing;
  for (int i = 0; i < 3; ++i) {
    const int N = sides[i];
    const std::uint64_t sub =
        hgmrf::seed_fold(97, static_cast<std::uint64_t>(N));
    const double threshold =
        hgmrf::calibrate_threshold(params, N, 0.1, 100000, sub);
    const auto rep = hgmrf::estimate_error_probabilities(
        params, N, 0.1, threshold, est_trials[i], sub);
    const long long hits = std::llround(rep.p_miss * est_trials[i]);
    v.push_back(-std::log(rep.p_miss) / (static_cast<double>(N) * N));
    miss_listing += (i ? ", " : "") + std::to_string(hits) + "/" +
                    std::to_string(est_trials[i]);
    v_listing += (i ? ", " : "") + num(v.back());
  }
  const bool increasing = v[0] < v[1] && v[1] < v[2];
  const bool within_factor_two = v[2] >= 0.5 * ks && v[2] <= 2.0 * ks;
  const bool pass = increasing && within_factor_two;
  if (!pass) {
    const double one_hit_slope = std::log(4e6) / 256.0;
    notes.push_back(
        "at this budget the N = 16 estimate is either 0 misses (slope +inf, "
        "outside the factor-2 band) or >= 1/4e6 (slope <= " +
        num(one_hit_slope) + ", below the N = 12 value " + num(v[1]) +
        "); resolving the true tail there needs on the order of 1e9 trials");
  }
  return {pass, "slope estimates {" + v_listing + "} vs K_s = " + num(ks) +
                    ", miss counts {" + miss_listing + "}"};
}

std::pair<bool, std::string> area_efficiency_falloff() {
  const hgmrf::EnergyScenario base{8,   1.0, 2.0, hgmrf::CorrMap::exponential(1.0),
                                   1.0, 256};
  const auto sweep =
      hgmrf::area_regime_sweep(base, {8, 16, 32, 64, 128, 256, 512});
  bool hops_ok = true;
  for (int n = 0; n <= 50; ++n) {
    long long brute = 0;
    for (int i = -n; i <= n; ++i) {
      for (int j = -n; j <= n; ++j) brute += std::abs(i) + std::abs(j);
    }
    hops_ok = hops_ok && hgmrf::total_hops(n) == brute;
  }
  const bool slope_ok = std::abs(sweep.fitted_slope + 0.5) <= 0.02;
  return {slope_ok && hops_ok,
          "fitted eta-vs-area slope " + num(sweep.fitted_slope) +
              ", band [-0.52, -0.48]; hop formula " +
              (hops_ok ? "matches" : "diverges from") +
              " brute force through n = 50"};
}

std::pair<bool, std::string> cli_reproducibility(const char* cli) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path out1 = dir / "hgmrf_acceptance_run1.json";
  const fs::path out2 = dir / "hgmrf_acceptance_run2.json";
  const auto invoke = [&](const fs::path& out) {
    std::ostringstream cmd;
    cmd << '"' << cli << "\" validate --seed 7 --out \"" << out.string()
        << '"';
    const int raw = std::system(cmd.str().c_str());
    if (raw == -1) return -1;
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -2;
  };
  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  const int rc1 = invoke(out1);
  const int rc2 = invoke(out2);
  const std::string a = slurp(out1);
  const std::string b = slurp(out2);
  fs::remove(out1);
  fs::remove(out2);
  const bool pass = !a.empty() && a == b;
  return {pass, "two seeded runs: exit codes " + std::to_string(rc1) + "/" +
                    std::to_string(rc2) + ", " + std::to_string(a.size()) +
                    "/" + std::to_string(b.size()) + " bytes, byte-identical " +
                    (pass ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  run(1, "uncorrelated exponent matches the closed form", uncorrelated_limit);
  run(2, "near-critical coupling collapses the exponent", critical_collapse);
  run(3, "coupling sweep shape at high and low snr", coupling_sweep_shape);
  run(4, "half-nat growth per snr decade", high_snr_growth);
  run(5, "finite-lattice rate converges to the quadrature", lattice_rate_convergence);
  run(6, "spectral detector agrees with the dense form", spectral_vs_dense_llr);
  run(7, "normalized statistic centers on the finite rate", normalized_llr_mean);
  run(8, "miss-probability decay tracks the exponent", miss_probability_slope);
  run(9, "fixed-density efficiency falls as 1/sqrt(area)", area_efficiency_falloff);
  if (argc >= 2) {
    run(10, "seeded CLI runs are byte-identical", [&] {
      return cli_reproducibility(argv[1]);
    });
  } else {
    report(10, "seeded CLI runs are byte-identical", false,
           "usage: acceptance <cli-path>");
  }
  std::cout << "result: " << (10 - failures) << "/10 criteria pass\n";
  return failures == 0 ? 0 : 1;
}
