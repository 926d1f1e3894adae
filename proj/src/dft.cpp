#include "hgmrf/dft.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>

namespace hgmrf {

UnitaryDft::UnitaryDft(int n) : n_(n) {
  if (n < 1) {
    throw std::invalid_argument("UnitaryDft: n must be >= 1");
  }
  f_.resize(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      // Reduce jk mod n before forming the angle; keeps phases exact for
      // aliased entries.
      const long long jk = static_cast<long long>(j) * k % n;
      f_(j, k) = std::polar(scale, -2.0 * M_PI * static_cast<double>(jk) / n);
    }
  }
  f_conj_ = f_.conjugate();
}

Eigen::MatrixXcd UnitaryDft::forward(const Eigen::MatrixXd& x) const {
  return f_ * x * f_.transpose();
}

Eigen::MatrixXcd UnitaryDft::forward(const Eigen::MatrixXcd& x) const {
  return f_ * x * f_.transpose();
}

Eigen::MatrixXcd UnitaryDft::inverse(const Eigen::MatrixXcd& x) const {
  return f_conj_ * x * f_conj_.transpose();
}

const UnitaryDft& cached_dft(int n) {
  thread_local std::map<int, UnitaryDft> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, UnitaryDft(n)).first;
  }
  return it->second;
}

}  // namespace hgmrf
