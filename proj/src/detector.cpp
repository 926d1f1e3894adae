#include "hgmrf/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "hgmrf/dft.hpp"
#include "hgmrf/rng.hpp"

namespace hgmrf {

namespace {

// Precomputed frequency-domain form of the LLR; one instance serves every
// draw at a fixed (params, N).
//
// value(y) evaluates the statistic on a spatial field. simulate() draws the
// statistic directly in frequency space: the DFT of the observation has
// independent Hermitian-paired bins with variance sigma2 (H0) or
// s_kl = sigma2 + 1/Lambda_kl (H1), so the quadratic form can be sampled
// without forming the field. Same law, no transforms.
struct LlrKernel {
  int side;
  double constant;         // 0.5 sum log(sigma2 / s_kl)
  Eigen::ArrayXXd weight;  // 0.5 (1/sigma2 - 1/s_kl)
  // Per-bin weight * variance products, self-conjugate bins first, then one
  // entry per Hermitian pair (the factor 2 is folded in).
  std::vector<double> self_h0, self_h1, pair_h0, pair_h1;

  LlrKernel(const SfarParams& params, int N) : side(N) {
    const TorusPrecisionSpectrum spec = torus_precision_spectrum(params, N);
    if (spec.singular()) {
      throw std::domain_error("llr: signal covariance is singular (zeta = 1/4)");
    }
    const double sigma2 = params.sigma2();
    const Eigen::ArrayXXd s = sigma2 + spec.eigenvalues.array().inverse();
    constant = 0.5 * (sigma2 / s).log().sum();
    weight = 0.5 * (1.0 / sigma2 - s.inverse());
    for (int k = 0; k < N; ++k) {
      for (int l = 0; l < N; ++l) {
        const int pk = (N - k) % N;
        const int pl = (N - l) % N;
        if (pk == k && pl == l) {
          self_h0.push_back(weight(k, l) * sigma2);
          self_h1.push_back(weight(k, l) * s(k, l));
        } else if (std::tie(k, l) < std::tie(pk, pl)) {
          pair_h0.push_back(weight(k, l) * sigma2);
          pair_h1.push_back(weight(k, l) * s(k, l));
        }
      }
    }
  }

  double value(const Eigen::MatrixXd& y) const {
    const Eigen::MatrixXcd yhat = cached_dft(side).forward(y);
    return constant + (yhat.array().abs2() * weight).sum();
  }

  double simulate(Hypothesis hypothesis, CounterRng& rng) const {
    const bool h0 = hypothesis == Hypothesis::h0;
    const auto& self = h0 ? self_h0 : self_h1;
    const auto& pair = h0 ? pair_h0 : pair_h1;
    double acc = 0.0;
    for (const double c : self) {
      const double g = rng.next_normal();
      acc += c * g * g;
    }
    // A pair bin and its mirror carry the same squared magnitude; the two
    // unit normals split it, so the pair contributes c (a^2 + b^2).
    for (const double c : pair) {
      const auto [a, b] = rng.next_normal_pair();
      acc += c * (a * a + b * b);
    }
    return constant + acc;
  }
};

void check_trials(long long trials, long long min, const char* fn) {
  if (trials < min) {
    throw std::invalid_argument(std::string(fn) + ": too few trials");
  }
}

void check_alpha(double alpha, const char* fn) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument(std::string(fn) + ": alpha must be in (0, 1)");
  }
}

}  // namespace

LlrStatistic llr(const TorusField& observation, const SfarParams& params) {
  const int N = observation.side;
  if (N < 1 || observation.values.rows() != N || observation.values.cols() != N) {
    throw std::invalid_argument("llr: field side and value shape disagree");
  }
  const LlrKernel kernel(params, N);
  LlrStatistic stat;
  stat.value = kernel.value(observation.values);
  stat.normalized = stat.value / (static_cast<double>(N) * N);
  return stat;
}

double calibrate_threshold(const SfarParams& params, int N, double alpha,
                           long long trials, std::uint64_t seed) {
  check_alpha(alpha, "calibrate_threshold");
  check_trials(trials, 100, "calibrate_threshold");
  const LlrKernel kernel(params, N);
  const std::uint64_t base = seed_fold(seed, kStreamCalibration);
  std::vector<double> values(static_cast<std::size_t>(trials));
  for (long long i = 0; i < trials; ++i) {
    CounterRng rng(seed_fold(base, static_cast<std::uint64_t>(i)));
    values[static_cast<std::size_t>(i)] = kernel.simulate(Hypothesis::h0, rng);
  }
  // Empirical (1 - alpha) quantile as the k-th order statistic.
  long long k = static_cast<long long>(std::ceil((1.0 - alpha) * trials));
  k = std::clamp(k, 1ll, trials);
  auto nth = values.begin() + (k - 1);
  std::nth_element(values.begin(), nth, values.end());
  return *nth;
}

DetectionReport estimate_error_probabilities(const SfarParams& params, int N,
                                             double alpha, double threshold,
                                             long long trials,
                                             std::uint64_t seed) {
  check_alpha(alpha, "estimate_error_probabilities");
  check_trials(trials, 1, "estimate_error_probabilities");
  const LlrKernel kernel(params, N);
  const std::uint64_t base0 = seed_fold(seed, kStreamEstimateH0);
  const std::uint64_t base1 = seed_fold(seed, kStreamEstimateH1);
  long long false_alarms = 0;
  long long misses = 0;
  for (long long i = 0; i < trials; ++i) {
    CounterRng rng0(seed_fold(base0, static_cast<std::uint64_t>(i)));
    if (kernel.simulate(Hypothesis::h0, rng0) > threshold) ++false_alarms;
    CounterRng rng1(seed_fold(base1, static_cast<std::uint64_t>(i)));
    if (kernel.simulate(Hypothesis::h1, rng1) <= threshold) ++misses;
  }
  DetectionReport report;
  report.side = N;
  report.alpha = alpha;
  report.threshold = threshold;
  report.trials = trials;
  report.seed = seed;
  report.p_false_alarm = static_cast<double>(false_alarms) / trials;
  report.p_false_alarm_halfwidth = wilson_halfwidth(false_alarms, trials);
  report.p_miss = static_cast<double>(misses) / trials;
  report.p_miss_halfwidth = wilson_halfwidth(misses, trials);
  return report;
}

std::vector<ConvergenceRow> normalized_llr_convergence(
    const SfarParams& params, const std::vector<int>& n_list, long long trials,
    std::uint64_t seed) {
  if (n_list.empty()) {
    throw std::invalid_argument("normalized_llr_convergence: empty n_list");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 2 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument(
          "normalized_llr_convergence: n_list must be ascending with N >= 2");
    }
  }
  check_trials(trials, 2, "normalized_llr_convergence");
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_list.size());
  const std::uint64_t base = seed_fold(seed, kStreamConvergence);
  for (const int N : n_list) {
    const LlrKernel kernel(params, N);
    const std::uint64_t base_n = seed_fold(base, static_cast<std::uint64_t>(N));
    const double n2 = static_cast<double>(N) * N;
    double sum = 0.0;
    double sumsq = 0.0;
    for (long long i = 0; i < trials; ++i) {
      CounterRng rng(seed_fold(base_n, static_cast<std::uint64_t>(i)));
      const double x = -kernel.simulate(Hypothesis::h0, rng) / n2;
      sum += x;
      sumsq += x * x;
    }
    ConvergenceRow row;
    row.side = N;
    row.mean_minus_normalized_llr = sum / trials;
    const double var =
        (sumsq - sum * sum / trials) / static_cast<double>(trials - 1);
    row.std_normalized_llr = std::sqrt(std::max(var, 0.0));
    rows.push_back(row);
  }
  return rows;
}

double wilson_halfwidth(long long successes, long long trials, double z) {
  if (trials < 1 || successes < 0 || successes > trials || !(z > 0.0)) {
    throw std::invalid_argument("wilson_halfwidth: invalid arguments");
  }
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
}

}  // namespace hgmrf
