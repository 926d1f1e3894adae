#pragma once

#include "hgmrf/spectrum.hpp"

namespace hgmrf {

// Per-frequency KL contribution of the detection problem:
// 0.5 log((sigma2 + 4 pi^2 f)/sigma2) + 0.5 sigma2/(sigma2 + 4 pi^2 f) - 0.5.
// Nonnegative; +infinity exactly when spectrum_value is.
double integrand(double spectrum_value, double sigma2);

struct ExponentResult {
  double value;               // nats per sample; >= 0
  int grid_points_per_axis;
  double error_estimate;      // |value(grid) - value(grid/2)|
};

// Tensor-product midpoint rule over (-pi, pi]^2 at grid^2 nodes. grid must be
// even and >= 8. Midpoints never hit the origin, so the zeta = 1/4 pole is
// never sampled.
ExponentResult error_exponent(const SpectrumFn& spectrum, double sigma2,
                              int grid = 256);

// SFAR exponent with SNR and correlation separated:
// bin argument x(w) = snr / ((2/pi) K(4 zeta) (1 - 2 zeta cos w1 - 2 zeta cos w2)).
// Agrees with error_exponent over sfar_params_for_snr(snr, zeta, 1) to 1e-12
// for zeta < 1/4; at zeta = 1/4 exactly, K = +infinity zeroes every midpoint
// and the result is 0.
ExponentResult sfar_error_exponent(double snr, double zeta, int grid = 256);

struct FiniteRate {
  int lattice_side;
  double value;      // KL rate per sample on the N x N torus; +inf if degenerate
  bool degenerate;   // spectrum infinite at a sampled frequency
};

// (1/N^2) sum of the integrand over the N x N DFT frequencies 2 pi k / N,
// mapped into (-pi, pi]. Converges to the quadrature value as N grows.
FiniteRate finite_lattice_kl_rate(const SpectrumFn& spectrum, double sigma2,
                                  int N);

}  // namespace hgmrf
