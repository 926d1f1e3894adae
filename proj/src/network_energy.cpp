#include "hgmrf/network_energy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hgmrf {

namespace {

// Least-squares slope of log y vs log x; entries must be positive.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  return sxy / sxx;
}

void check_n_list(const std::vector<int>& n_list, const char* fn) {
  if (n_list.empty()) {
    throw std::invalid_argument(std::string(fn) + ": empty n_list");
  }
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1 || (i > 0 && n_list[i] <= n_list[i - 1])) {
      throw std::invalid_argument(std::string(fn) +
                                  ": n_list must be ascending with n >= 1");
    }
  }
}

void check_scenario(const EnergyScenario& s) {
  if (s.half_width < 1) {
    throw std::invalid_argument("efficiency: half_width must be >= 1");
  }
  if (!(s.spacing > 0.0)) {
    throw std::invalid_argument("efficiency: spacing must be positive");
  }
  if (!(s.delta >= 2.0)) {
    throw std::invalid_argument("efficiency: delta must be >= 2");
  }
  if (!(s.snr > 0.0)) {
    throw std::invalid_argument("efficiency: snr must be positive");
  }
}

}  // namespace

CorrMap::CorrMap(std::string name, std::function<double(double)> map)
    : name_(std::move(name)), map_(std::move(map)) {
  if (!map_) {
    throw std::invalid_argument("CorrMap: null map function");
  }
}

double CorrMap::operator()(double r) const {
  const double zeta = map_(r);
  if (!(zeta >= 0.0) || !(zeta <= 0.25)) {
    std::ostringstream msg;
    msg << "CorrMap '" << name_ << "': value " << zeta << " at spacing " << r
        << " is outside [0, 1/4]";
    throw std::domain_error(msg.str());
  }
  return zeta;
}

CorrMap CorrMap::exponential(double r0) {
  if (!(r0 > 0.0)) {
    throw std::invalid_argument("CorrMap::exponential: r0 must be positive");
  }
  std::ostringstream name;
  name << "exponential(r0=" << r0 << ")";
  return CorrMap(name.str(),
                 [r0](double r) { return 0.25 * std::exp(-r / r0); });
}

CorrMap CorrMap::constant(double zeta) {
  if (!(zeta >= 0.0) || !(zeta <= 0.25)) {
    throw std::invalid_argument("CorrMap::constant: zeta must be in [0, 1/4]");
  }
  std::ostringstream name;
  name << "constant(zeta=" << zeta << ")";
  return CorrMap(name.str(), [zeta](double) { return zeta; });
}

CorrMap CorrMap::tabulated(std::vector<std::pair<double, double>> points) {
  if (points.empty()) {
    throw std::invalid_argument("CorrMap::tabulated: no points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& [r, zeta] = points[i];
    if (!(zeta >= 0.0) || !(zeta <= 0.25)) {
      throw std::invalid_argument("CorrMap::tabulated: zeta outside [0, 1/4]");
    }
    if (i > 0 && (points[i].first <= points[i - 1].first ||
                  points[i].second > points[i - 1].second)) {
      throw std::invalid_argument(
          "CorrMap::tabulated: points must increase in r with nonincreasing zeta");
    }
  }
  return CorrMap("tabulated", [pts = std::move(points)](double r) {
    if (r <= pts.front().first) return pts.front().second;
    if (r >= pts.back().first) return pts.back().second;
    std::size_t hi = 1;
    while (pts[hi].first < r) ++hi;
    const auto& [r0, z0] = pts[hi - 1];
    const auto& [r1, z1] = pts[hi];
    return z0 + (z1 - z0) * (r - r0) / (r1 - r0);
  });
}

long long total_hops(long long n) {
  if (n < 0) {
    throw std::invalid_argument("total_hops: n must be >= 0");
  }
  return 2 * n * (n + 1) * (2 * n + 1);
}

EfficiencyPoint efficiency(const EnergyScenario& scenario) {
  check_scenario(scenario);
  EfficiencyPoint p;
  p.half_width = scenario.half_width;
  p.spacing = scenario.spacing;
  p.zeta = scenario.corr_map(scenario.spacing);
  p.exponent = sfar_error_exponent(scenario.snr, p.zeta, scenario.grid).value;
  const double sensors = static_cast<double>(2 * scenario.half_width + 1) *
                         (2 * scenario.half_width + 1);
  p.total_info = sensors * p.exponent;
  p.total_energy = static_cast<double>(total_hops(scenario.half_width)) *
                   std::pow(scenario.spacing, scenario.delta);
  p.eta = p.total_info / p.total_energy;
  return p;
}

AreaSweepResult area_regime_sweep(const EnergyScenario& base,
                                  const std::vector<int>& n_list) {
  check_n_list(n_list, "area_regime_sweep");
  AreaSweepResult result;
  result.points.reserve(n_list.size());
  // Spacing is fixed, so zeta and the exponent are shared across the sweep.
  EnergyScenario scenario = base;
  scenario.half_width = n_list.front();
  const EfficiencyPoint first = efficiency(scenario);
  for (const int n : n_list) {
    EfficiencyPoint p = first;
    p.half_width = n;
    const double sensors = static_cast<double>(2 * n + 1) * (2 * n + 1);
    p.total_info = sensors * p.exponent;
    p.total_energy = static_cast<double>(total_hops(n)) *
                     std::pow(base.spacing, base.delta);
    p.eta = p.total_info / p.total_energy;
    result.points.push_back(p);
  }
  std::vector<double> area, eta;
  for (const auto& p : result.points) {
    const double side = (2.0 * p.half_width + 1.0) * p.spacing;
    if (p.eta > 0.0) {
      area.push_back(side * side);
      eta.push_back(p.eta);
    }
  }
  result.fitted_slope = area.size() >= 2
                            ? loglog_slope(area, eta)
                            : std::numeric_limits<double>::quiet_NaN();
  return result;
}

DensitySweepResult density_regime_sweep(const EnergyScenario& base,
                                        const std::vector<int>& n_list,
                                        double extent, double window_fraction,
                                        double slope_tolerance) {
  check_n_list(n_list, "density_regime_sweep");
  if (!(extent > 0.0)) {
    throw std::invalid_argument("density_regime_sweep: extent must be positive");
  }
  if (!(window_fraction > 0.0) || window_fraction > 1.0) {
    throw std::invalid_argument(
        "density_regime_sweep: window_fraction must be in (0, 1]");
  }
  if (!(slope_tolerance > 0.0)) {
    throw std::invalid_argument(
        "density_regime_sweep: slope_tolerance must be positive");
  }
  DensitySweepResult result;
  result.points.reserve(n_list.size());
  for (const int n : n_list) {
    EnergyScenario scenario = base;
    scenario.half_width = n;
    scenario.spacing = extent / (2.0 * n + 1.0);
    result.points.push_back(efficiency(scenario));
  }

  DensityVerdict& v = result.verdict;
  v.reference_slope = 0.5 * (1.0 - base.delta);
  v.tolerance = slope_tolerance;
  v.excluded_points = 0;
  std::ostringstream caveat;
  caveat << "verdict is conditional on the supplied correlation map '"
         << base.corr_map.name()
         << "'; a different spacing-to-correlation law can change the regime";
  v.caveat = caveat.str();

  // Asymptotic readout from the tail of the sweep: the fit window is the
  // last max(2, ceil(len * window_fraction)) points with positive exponent.
  const std::size_t len = result.points.size();
  const std::size_t window = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(len * window_fraction)));
  const std::size_t start = len > window ? len - window : 0;
  std::vector<double> density, ks;
  for (std::size_t i = start; i < len; ++i) {
    const auto& p = result.points[i];
    if (p.exponent > 0.0) {
      const double side = 2.0 * p.half_width + 1.0;
      density.push_back(side * side / (extent * extent));
      ks.push_back(p.exponent);
    } else {
      ++v.excluded_points;
    }
  }
  v.window_points = static_cast<int>(density.size());
  if (density.size() < 2) {
    v.fitted_ks_slope = std::numeric_limits<double>::quiet_NaN();
    v.classification = "degenerate";
    return result;
  }
  v.fitted_ks_slope = loglog_slope(density, ks);
  // eta scales as K_s * density^{(delta-1)/2}; the exponent's density slope
  // decides the limit against the breakeven value (1 - delta)/2.
  if (v.fitted_ks_slope > v.reference_slope + slope_tolerance) {
    v.classification = "growing";
  } else if (v.fitted_ks_slope < v.reference_slope - slope_tolerance) {
    v.classification = "vanishing";
  } else {
    v.classification = "constant";
  }
  return result;
}

}  // namespace hgmrf
