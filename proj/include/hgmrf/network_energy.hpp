#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hgmrf/exponent.hpp"

namespace hgmrf {

// Physical correlation map r -> zeta: nonincreasing in the sensor spacing r
// with range in [0, 1/4]. The asymptotic model leaves the concrete map open;
// this is the pluggable stand-in, and every verdict downstream is conditional
// on the chosen map.
class CorrMap {
 public:
  CorrMap(std::string name, std::function<double(double)> map);

  // Evaluates and validates the output range; out-of-range maps are a
  // domain error at the offending r.
  double operator()(double r) const;
  const std::string& name() const noexcept { return name_; }

  // zeta(r) = exp(-r/r0) / 4; satisfies the monotone endpoint conditions.
  static CorrMap exponential(double r0);
  // Diagnostic map; deliberately violates the endpoint limits.
  static CorrMap constant(double zeta);
  // Piecewise-linear interpolation through (r, zeta) points, clamped at the
  // ends. Points must be sorted in r with nonincreasing zeta in [0, 1/4].
  static CorrMap tabulated(std::vector<std::pair<double, double>> points);

 private:
  std::string name_;
  std::function<double(double)> map_;
};

struct EnergyScenario {
  int half_width;    // grid [-n..n]^2, (2n+1)^2 sensors
  double spacing;    // r_n, meters
  double delta;      // propagation loss factor, >= 2; E_link = r^delta
  CorrMap corr_map;
  double snr;
  int grid = 256;    // quadrature resolution for the exponent
};

struct EfficiencyPoint {
  int half_width;
  double spacing;
  double zeta;
  double exponent;      // K_s at this point
  double total_info;    // (2n+1)^2 K_s, nats
  double total_energy;  // total_hops(n) r^delta, joule-units
  double eta;           // total_info / total_energy
};

// Minimum-hop routing cost sum over the grid: 2 n (n+1) (2n+1).
long long total_hops(long long n);

// n >= 1 (n = 0 has no transmissions and is a usage error).
EfficiencyPoint efficiency(const EnergyScenario& scenario);

struct AreaSweepResult {
  std::vector<EfficiencyPoint> points;
  double fitted_slope;  // log eta vs log area, least squares over all points
};

// Fixed spacing (density held constant): the area regime. n_list ascending.
AreaSweepResult area_regime_sweep(const EnergyScenario& base,
                                  const std::vector<int>& n_list);

struct DensityVerdict {
  double fitted_ks_slope;   // log K_s vs log density over the fit window
  double reference_slope;   // (1 - delta)/2
  double tolerance;
  int window_points;
  int excluded_points;      // nonpositive K_s values dropped from the fit
  std::string classification;  // vanishing | constant | growing | degenerate
  std::string caveat;          // conditional-on-map disclaimer
};

struct DensitySweepResult {
  std::vector<EfficiencyPoint> points;
  DensityVerdict verdict;
};

// Fixed physical extent: r_n = extent/(2n+1), density grows as n^2. The
// verdict compares the fitted log K_s vs log density slope (least squares
// over the last max(2, ceil(len * window_fraction)) points) against
// (1 - delta)/2: above + tolerance -> eta growing, below - tolerance ->
// eta -> 0, otherwise the threshold/constant classification.
DensitySweepResult density_regime_sweep(const EnergyScenario& base,
                                        const std::vector<int>& n_list,
                                        double extent,
                                        double window_fraction = 0.5,
                                        double slope_tolerance = 0.1);

}  // namespace hgmrf
