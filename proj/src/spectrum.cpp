#include "hgmrf/spectrum.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hgmrf/elliptic.hpp"

namespace hgmrf {

CarCoefficients::CarCoefficients(Support theta, int positivity_grid)
    : theta_(std::move(theta)) {
  const auto it00 = theta_.find({0, 0});
  if (it00 == theta_.end() || !(it00->second > 0.0)) {
    throw std::invalid_argument("CarCoefficients: theta(0,0) must be positive");
  }
  for (const auto& [ij, v] : theta_) {
    const auto mirror = theta_.find({-ij.first, -ij.second});
    if (mirror == theta_.end() || mirror->second != v) {
      std::ostringstream msg;
      msg << "CarCoefficients: coefficient (" << ij.first << ", " << ij.second
          << ") has no matching mirror entry";
      throw std::invalid_argument(msg.str());
    }
  }
  if (positivity_grid < 2) {
    throw std::invalid_argument("CarCoefficients: positivity_grid must be >= 2");
  }
  // Midpoint grid over (-pi, pi]^2; rejects symbols that dip nonpositive.
  const double h = 2.0 * M_PI / positivity_grid;
  for (int i = 0; i < positivity_grid; ++i) {
    const double w1 = -M_PI + (i + 0.5) * h;
    for (int j = 0; j < positivity_grid; ++j) {
      const double w2 = -M_PI + (j + 0.5) * h;
      if (!(symbol(w1, w2) > 0.0)) {
        std::ostringstream msg;
        msg << "CarCoefficients: symbol is nonpositive at (" << w1 << ", " << w2
            << ")";
        throw std::invalid_argument(msg.str());
      }
    }
  }
}

double CarCoefficients::theta00() const { return theta_.at({0, 0}); }

double CarCoefficients::symbol(double w1, double w2) const {
  double s = 0.0;
  for (const auto& [ij, v] : theta_) {
    s += v * std::cos(ij.first * w1 + ij.second * w2);
  }
  return s;
}

double SpectrumFn::operator()(double w1, double w2) const {
  // f = 1 / (4 pi^2 symbol); a vanishing symbol maps to an infinite spectrum.
  double sym;
  if (const auto* p = std::get_if<SfarParams>(&params_)) {
    sym = p->kappa() *
          (1.0 - 2.0 * p->zeta() * std::cos(w1) - 2.0 * p->zeta() * std::cos(w2));
  } else {
    sym = std::get<CarCoefficients>(params_).symbol(w1, w2);
  }
  if (!(sym > 0.0)) {
    return std::numeric_limits<double>::infinity();
  }
  return 1.0 / (4.0 * M_PI * M_PI * sym);
}

SpectrumKind SpectrumFn::kind() const noexcept {
  return std::holds_alternative<SfarParams>(params_) ? SpectrumKind::sfar
                                                     : SpectrumKind::general_car;
}

const SfarParams* SpectrumFn::sfar() const noexcept {
  return std::get_if<SfarParams>(&params_);
}

const CarCoefficients* SpectrumFn::car() const noexcept {
  return std::get_if<CarCoefficients>(&params_);
}

SpectrumFn sfar_spectrum(const SfarParams& params) { return SpectrumFn(params); }

SpectrumFn car_spectrum(const CarCoefficients& coeffs) {
  return SpectrumFn(coeffs);
}

double signal_power(const SfarParams& params) {
  // gamma(0,0) = (2/pi) K(4 zeta) / kappa; diverges as zeta -> 1/4.
  return 2.0 / M_PI * elliptic_k(4.0 * params.zeta()) / params.kappa();
}

double snr(const SfarParams& params) {
  return signal_power(params) / params.sigma2();
}

SfarParams sfar_params_for_snr(double target_snr, double zeta, double sigma2) {
  if (!(target_snr > 0.0)) {
    throw std::invalid_argument("sfar_params_for_snr: snr must be positive");
  }
  if (!(zeta < 0.25)) {
    throw std::invalid_argument(
        "sfar_params_for_snr: signal power is unbounded at zeta = 1/4");
  }
  // Power scales as 1/kappa, so kappa follows in closed form.
  const double kappa =
      2.0 / M_PI * elliptic_k(4.0 * zeta) / (target_snr * sigma2);
  return SfarParams(kappa, zeta, sigma2);
}

}  // namespace hgmrf
