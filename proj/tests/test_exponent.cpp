#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hgmrf/elliptic.hpp"
#include "hgmrf/exponent.hpp"
#include "hgmrf/spectrum.hpp"

using hgmrf::SfarParams;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double stein(double snr) {
  return 0.5 * std::log1p(snr) + 0.5 / (1.0 + snr) - 0.5;
}

// Per-bin divergence evaluated from its definition.
double kl_reference(double x) {
  return 0.5 * std::log1p(x) + 0.5 / (1.0 + x) - 0.5;
}

}  // namespace

TEST_CASE("integrand evaluates the per-bin divergence") {
  // x = 4 pi^2 f / sigma2 = 1
  const double f1 = 1.0 / (4.0 * M_PI * M_PI);
  CHECK(hgmrf::integrand(f1, 1.0) == doctest::Approx(kl_reference(1.0)).epsilon(1e-15));
  CHECK(hgmrf::integrand(0.0, 1.0) == 0.0);
  CHECK(hgmrf::integrand(kInf, 1.0) == kInf);
  CHECK(hgmrf::integrand(f1, 2.0) == doctest::Approx(kl_reference(0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(hgmrf::integrand(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::integrand(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("zero coupling reduces to the closed form") {
  for (const double snr : {0.1, 1.0, 10.0, 100.0}) {
    const auto r = hgmrf::sfar_error_exponent(snr, 0.0, 64);
    CHECK(r.value == doctest::Approx(stein(snr)).epsilon(1e-12));
    CHECK(r.error_estimate <= 1e-15);
  }
  // Quadratic small-snr behavior survives the log1p cancellation.
  const auto tiny = hgmrf::sfar_error_exponent(1e-6, 0.0, 64);
  CHECK(tiny.value == doctest::Approx(2.5002222514558525e-13).epsilon(1e-9));
}

TEST_CASE("normalized and generic routes agree") {
  for (const double snr : {0.3, 1.0, 10.0}) {
    for (const double zeta : {0.0, 0.1, 0.2, 0.24}) {
      const SfarParams params = hgmrf::sfar_params_for_snr(snr, zeta, 1.7);
      const auto generic =
          hgmrf::error_exponent(hgmrf::sfar_spectrum(params), 1.7, 128);
      const auto direct = hgmrf::sfar_error_exponent(snr, zeta, 128);
      CHECK(generic.value == doctest::Approx(direct.value).epsilon(1e-12));
      CHECK(generic.grid_points_per_axis == 128);
    }
  }
}

TEST_CASE("critical coupling collapses the exponent to zero") {
  const auto r = hgmrf::sfar_error_exponent(1.0, 0.25, 64);
  CHECK(r.value == 0.0);
  CHECK(r.error_estimate == 0.0);
}

TEST_CASE("exponent input validation") {
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(1.0, 0.1, 7), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(1.0, 0.1, 9), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(1.0, 0.1, 0), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(-1.0, 0.1, 64), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(1.0, 0.26, 64), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::sfar_error_exponent(1.0, -0.1, 64), std::invalid_argument);
  const auto f = hgmrf::sfar_spectrum(SfarParams(1.0, 0.1, 1.0));
  CHECK_THROWS_AS(hgmrf::error_exponent(f, 0.0, 64), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::error_exponent(f, 1.0, 10), std::invalid_argument);
}

TEST_CASE("exponent properties: nonnegative, monotone in snr, log-snr growth") {
  double prev = 0.0;
  for (const double snr : {0.1, 0.5, 1.0, 5.0, 20.0}) {
    const double v = hgmrf::sfar_error_exponent(snr, 0.12, 64).value;
    CHECK(v >= 0.0);
    CHECK(v > prev);
    prev = v;
  }
  const double k3 = hgmrf::sfar_error_exponent(1e3, 0.1, 128).value;
  const double k4 = hgmrf::sfar_error_exponent(1e4, 0.1, 128).value;
  CHECK((k4 - k3) / std::log(10.0) > 0.45);
  CHECK((k4 - k3) / std::log(10.0) < 0.55);
}

TEST_CASE("exponent is nonincreasing in the coupling at high snr") {
  double prev = kInf;
  for (const double zeta : {0.0, 0.05, 0.1, 0.15, 0.2, 0.24}) {
    const double v = hgmrf::sfar_error_exponent(10.0, zeta, 128).value;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("finite-lattice rate on the 2x2 torus from first principles") {
  const double snr = 1.0;
  const double zeta = 0.1;
  const SfarParams params = hgmrf::sfar_params_for_snr(snr, zeta, 1.0);
  // Four torus frequencies; cos factors are +-1, so the lattice divergence
  // is an explicit four-term average.
  const double c = 2.0 / M_PI * hgmrf::elliptic_k(4.0 * zeta);
  const double expected = 0.25 * (kl_reference(snr / (c * 0.6)) +
                                  2.0 * kl_reference(snr / (c * 1.0)) +
                                  kl_reference(snr / (c * 1.4)));
  CHECK(expected == doctest::Approx(0.1024362304375909).epsilon(1e-13));
  const auto rate =
      hgmrf::finite_lattice_kl_rate(hgmrf::sfar_spectrum(params), 1.0, 2);
  CHECK(rate.lattice_side == 2);
  CHECK_FALSE(rate.degenerate);
  CHECK(rate.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("finite-lattice rate at zero coupling equals the closed form") {
  const SfarParams params = hgmrf::sfar_params_for_snr(2.0, 0.0, 1.0);
  for (const int n : {2, 5, 16}) {
    const auto rate =
        hgmrf::finite_lattice_kl_rate(hgmrf::sfar_spectrum(params), 1.0, n);
    CHECK(rate.value == doctest::Approx(stein(2.0)).epsilon(1e-13));
  }
}

TEST_CASE("finite-lattice rate approaches the quadrature limit") {
  const SfarParams params = hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0);
  const auto rate =
      hgmrf::finite_lattice_kl_rate(hgmrf::sfar_spectrum(params), 1.0, 256);
  const auto limit = hgmrf::sfar_error_exponent(1.0, 0.1, 256);
  CHECK(std::abs(rate.value - limit.value) <= 1e-3);
}

TEST_CASE("finite-lattice rate flags the singular symbol") {
  // Fixed kappa at critical coupling: the DC eigenvalue vanishes and the
  // divergence is genuinely infinite.
  const auto f = hgmrf::sfar_spectrum(SfarParams(1.0, 0.25, 1.0));
  const auto rate = hgmrf::finite_lattice_kl_rate(f, 1.0, 8);
  CHECK(rate.degenerate);
  CHECK(rate.value == kInf);
  CHECK_THROWS_AS(hgmrf::finite_lattice_kl_rate(f, 1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(hgmrf::finite_lattice_kl_rate(f, 0.0, 8), std::invalid_argument);
}

TEST_CASE("finite-lattice rate grows with snr") {
  const auto f1 = hgmrf::sfar_spectrum(hgmrf::sfar_params_for_snr(1.0, 0.1, 1.0));
  const auto f2 = hgmrf::sfar_spectrum(hgmrf::sfar_params_for_snr(2.0, 0.1, 1.0));
  CHECK(hgmrf::finite_lattice_kl_rate(f2, 1.0, 16).value >
        hgmrf::finite_lattice_kl_rate(f1, 1.0, 16).value);
}

TEST_CASE("frozen sweep values stay put") {
  CHECK(hgmrf::sfar_error_exponent(10.0, 0.15, 256).value ==
        doctest::Approx(0.7246626015118343).epsilon(1e-10));
}
