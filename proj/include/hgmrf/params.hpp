#pragma once

#include <stdexcept>

namespace hgmrf {

// SFAR model parameters: conditional precision kappa, edge dependence factor
// zeta = lambda/kappa in [0, 1/4], measurement noise variance sigma2.
// Immutable after construction; fully determines both hypotheses
// (H0: white noise only, H1: field plus noise).
class SfarParams {
 public:
  SfarParams(double kappa, double zeta, double sigma2)
      : kappa_(kappa), zeta_(zeta), sigma2_(sigma2) {
    if (!(kappa > 0.0))
      throw std::invalid_argument("SfarParams: kappa must be positive");
    if (!(zeta >= 0.0 && zeta <= 0.25))
      throw std::invalid_argument("SfarParams: zeta must be in [0, 1/4]");
    if (!(sigma2 > 0.0))
      throw std::invalid_argument("SfarParams: sigma2 must be positive");
  }

  double kappa() const noexcept { return kappa_; }
  double zeta() const noexcept { return zeta_; }
  double sigma2() const noexcept { return sigma2_; }
  // Neighbor coupling; 0 <= lambda <= kappa/4 by construction.
  double lambda() const noexcept { return zeta_ * kappa_; }

 private:
  double kappa_;
  double zeta_;
  double sigma2_;
};

}  // namespace hgmrf
