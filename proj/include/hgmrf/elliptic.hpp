#pragma once

namespace hgmrf {

// Complete elliptic integral of the first kind in the modulus convention:
// K(0) = pi/2, K(1) = +infinity. Arithmetic-geometric-mean iteration,
// relative tolerance 1e-15. Throws std::domain_error outside [0, 1].
double elliptic_k(double modulus);

}  // namespace hgmrf
