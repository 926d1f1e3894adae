#include "hgmrf/exponent.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgmrf/elliptic.hpp"
#include "hgmrf/spectrum.hpp"

namespace hgmrf {

namespace {

// Compensated accumulator; callers must keep non-finite terms out.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

void check_grid(int grid) {
  // The error estimate compares against the half grid, which must stay even.
  if (grid < 8 || grid % 4 != 0) {
    throw std::invalid_argument(
        "error_exponent: grid must be a multiple of 4 and >= 8");
  }
}

// Per-bin KL divergence between N(0, sigma2(1+x)) and N(0, sigma2) in the
// likelihood direction used for the miss exponent.
double kl_bin(double x) {
  if (std::isinf(x)) {
    return std::numeric_limits<double>::infinity();
  }
  return 0.5 * std::log1p(x) + 0.5 / (1.0 + x) - 0.5;
}

}  // namespace

double integrand(double spectrum_value, double sigma2) {
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("integrand: sigma2 must be positive");
  }
  return kl_bin(4.0 * M_PI * M_PI * spectrum_value / sigma2);
}

ExponentResult error_exponent(const SpectrumFn& spectrum, double sigma2,
                              int grid) {
  check_grid(grid);
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("error_exponent: sigma2 must be positive");
  }
  // Midpoint rule never lands on (0, 0), so a pole there integrates cleanly.
  auto midpoint = [&](int g) {
    const double step = 2.0 * M_PI / g;
    KahanSum acc;
    for (int i = 0; i < g; ++i) {
      const double w1 = -M_PI + (i + 0.5) * step;
      for (int j = 0; j < g; ++j) {
        const double w2 = -M_PI + (j + 0.5) * step;
        const double v = integrand(spectrum(w1, w2), sigma2);
        if (std::isfinite(v)) {
          acc.add(v);
        }
      }
    }
    return acc.sum * step * step / (4.0 * M_PI * M_PI);
  };
  ExponentResult r;
  r.grid_points_per_axis = grid;
  r.value = midpoint(grid);
  r.error_estimate = std::abs(r.value - midpoint(grid / 2));
  return r;
}

ExponentResult sfar_error_exponent(double snr, double zeta, int grid) {
  check_grid(grid);
  if (!(snr >= 0.0)) {
    throw std::invalid_argument("sfar_error_exponent: snr must be >= 0");
  }
  if (!(zeta >= 0.0) || zeta > 0.25) {
    throw std::invalid_argument("sfar_error_exponent: zeta must be in [0, 1/4]");
  }
  // Normalized form: x(w) = snr / (c d(w)), c = (2/pi) K(4 zeta),
  // d(w) = 1 - 2 zeta cos w1 - 2 zeta cos w2. At zeta = 1/4 the elliptic
  // factor diverges, x -> 0 everywhere, and the exponent is 0.
  const double c = 2.0 / M_PI * elliptic_k(4.0 * zeta);
  auto midpoint = [&](int g) {
    const double step = 2.0 * M_PI / g;
    KahanSum acc;
    for (int i = 0; i < g; ++i) {
      const double w1 = -M_PI + (i + 0.5) * step;
      for (int j = 0; j < g; ++j) {
        const double w2 = -M_PI + (j + 0.5) * step;
        const double d = 1.0 - 2.0 * zeta * std::cos(w1) - 2.0 * zeta * std::cos(w2);
        const double v = kl_bin(snr / (c * d));
        if (std::isfinite(v)) {
          acc.add(v);
        }
      }
    }
    return acc.sum * step * step / (4.0 * M_PI * M_PI);
  };
  ExponentResult r;
  r.grid_points_per_axis = grid;
  r.value = midpoint(grid);
  r.error_estimate = std::abs(r.value - midpoint(grid / 2));
  return r;
}

FiniteRate finite_lattice_kl_rate(const SpectrumFn& spectrum, double sigma2,
                                  int N) {
  if (N < 2) {
    throw std::invalid_argument("finite_lattice_kl_rate: N must be >= 2");
  }
  if (!(sigma2 > 0.0)) {
    throw std::invalid_argument("finite_lattice_kl_rate: sigma2 must be positive");
  }
  FiniteRate r;
  r.lattice_side = N;
  r.degenerate = false;
  KahanSum acc;
  for (int k = 0; k < N; ++k) {
    double w1 = 2.0 * M_PI * k / N;
    if (w1 > M_PI) w1 -= 2.0 * M_PI;
    for (int l = 0; l < N; ++l) {
      double w2 = 2.0 * M_PI * l / N;
      if (w2 > M_PI) w2 -= 2.0 * M_PI;
      const double v = integrand(spectrum(w1, w2), sigma2);
      if (std::isfinite(v)) {
        acc.add(v);
      } else {
        // The DC bin hits the spectral pole when the symbol is singular;
        // the finite-lattice divergence is genuinely infinite there.
        r.degenerate = true;
      }
    }
  }
  r.value = r.degenerate ? std::numeric_limits<double>::infinity()
                         : acc.sum / (static_cast<double>(N) * N);
  return r;
}

}  // namespace hgmrf
