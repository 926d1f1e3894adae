#pragma once

#include <map>
#include <utility>
#include <variant>

#include "hgmrf/params.hpp"

namespace hgmrf {

// General CAR neighbor weights theta_{ij} on a finite symmetric support.
// The induced spectral density is 1/(4 pi^2 * symbol(w1, w2)) with
// symbol(w1, w2) = sum_{ij} theta_{ij} cos(i w1 + j w2).
class CarCoefficients {
 public:
  using Support = std::map<std::pair<int, int>, double>;

  // Requires theta00 > 0, theta_{ij} = theta_{-i,-j}, and a strictly positive
  // symbol, checked numerically on a positivity_grid^2 midpoint grid; throws
  // std::invalid_argument naming the violating entry or frequency.
  explicit CarCoefficients(Support theta, int positivity_grid = 256);

  double theta00() const;
  const Support& theta() const noexcept { return theta_; }
  double symbol(double w1, double w2) const;

 private:
  Support theta_;
};

enum class SpectrumKind { sfar, general_car };

// Evaluable 2D spectral density on (-pi, pi]^2. Even under joint sign flip of
// the frequency pair; may be +infinity at isolated points (SFAR with
// zeta = 1/4 at the origin). Value type: cheap to copy, immutable.
class SpectrumFn {
 public:
  double operator()(double w1, double w2) const;
  SpectrumKind kind() const noexcept;
  // Parameter record access; nullptr when the kind does not match.
  const SfarParams* sfar() const noexcept;
  const CarCoefficients* car() const noexcept;

 private:
  friend SpectrumFn sfar_spectrum(const SfarParams& params);
  friend SpectrumFn car_spectrum(const CarCoefficients& coeffs);
  explicit SpectrumFn(std::variant<SfarParams, CarCoefficients> params)
      : params_(std::move(params)) {}

  std::variant<SfarParams, CarCoefficients> params_;
};

// f(w1, w2) = 1 / (4 pi^2 kappa (1 - 2 zeta cos w1 - 2 zeta cos w2)).
SpectrumFn sfar_spectrum(const SfarParams& params);
SpectrumFn car_spectrum(const CarCoefficients& coeffs);

// P_s = gamma_00 = 2 K(4 zeta) / (pi kappa); +infinity at zeta = 1/4.
double signal_power(const SfarParams& params);

// signal_power / sigma2.
double snr(const SfarParams& params);

// Inverts the SNR relation at fixed zeta and sigma2:
// kappa = 2 K(4 zeta) / (pi sigma2 target_snr), so snr(result) == target_snr.
// zeta = 1/4 is a domain error (signal power diverges).
SfarParams sfar_params_for_snr(double target_snr, double zeta, double sigma2);

}  // namespace hgmrf
