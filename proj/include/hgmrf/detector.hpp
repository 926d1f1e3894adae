#pragma once

#include <cstdint>
#include <vector>

#include "hgmrf/field_sim.hpp"

namespace hgmrf {

struct LlrStatistic {
  double value;       // log p1(y) - log p0(y)
  double normalized;  // value / N^2 exactly
};

struct DetectionReport {
  int side;
  double alpha;
  double threshold;
  double p_false_alarm;
  double p_false_alarm_halfwidth;
  double p_miss;
  double p_miss_halfwidth;
  long long trials;   // per hypothesis
  std::uint64_t seed;
};

// Frequency-domain log-likelihood ratio:
// value = 0.5 sum_{kl} [log(sigma2/s_kl) + |y_hat_kl|^2 (1/sigma2 - 1/s_kl)]
// with s_kl = sigma2 + 1/Lambda_kl and y_hat the orthonormal 2D DFT of y.
// Equals the dense-matrix LLR (same circulant diagonalization).
// zeta = 1/4 is a domain error (singular H1 covariance).
LlrStatistic llr(const TorusField& observation, const SfarParams& params);

// Empirical (1 - alpha) quantile of the H0 LLR over `trials` independent
// draws (k-th order statistic, k = ceil((1 - alpha) trials)). trials >= 100.
// Monte-Carlo draws here and below sample the statistic in frequency space,
// which has the same law as evaluating llr() on sampled fields.
double calibrate_threshold(const SfarParams& params, int N, double alpha,
                           long long trials, std::uint64_t seed);

// P_F = fraction of H0 draws with LLR > threshold; P_M = fraction of H1 draws
// with LLR <= threshold; `trials` draws per hypothesis, Wilson half-widths at
// the 95% level. alpha is carried through for reporting only.
DetectionReport estimate_error_probabilities(const SfarParams& params, int N,
                                             double alpha, double threshold,
                                             long long trials,
                                             std::uint64_t seed);

struct ConvergenceRow {
  int side;
  double mean_minus_normalized_llr;  // MC mean of -(1/N^2) log LR under H0
  double std_normalized_llr;         // sample std of the normalized statistic
};

// Self-averaging table: the mean converges to finite_lattice_kl_rate(N) (it
// is exactly that rate in expectation) and the std shrinks as 1/N.
// n_list must be ascending; trials >= 2.
std::vector<ConvergenceRow> normalized_llr_convergence(
    const SfarParams& params, const std::vector<int>& n_list, long long trials,
    std::uint64_t seed);

// Wilson score interval half-width for `successes` out of `trials`.
double wilson_halfwidth(long long successes, long long trials, double z = 1.96);

}  // namespace hgmrf
