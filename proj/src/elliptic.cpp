#include "hgmrf/elliptic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hgmrf {

double elliptic_k(double modulus) {
  if (!(modulus >= 0.0) || modulus > 1.0) {
    throw std::domain_error("elliptic_k: modulus must be in [0, 1]");
  }
  if (modulus == 1.0) {
    return std::numeric_limits<double>::infinity();
  }
  // AGM: a_{n+1} = (a+b)/2, b_{n+1} = sqrt(a b); K = pi / (2 agm(1, k')).
  double a = 1.0;
  double b = std::sqrt(1.0 - modulus * modulus);
  while (a - b > 1e-15 * a) {
    const double am = 0.5 * (a + b);
    const double gm = std::sqrt(a * b);
    a = am;
    b = gm;
  }
  return M_PI / (2.0 * a);
}

}  // namespace hgmrf
