#pragma once

#include <Eigen/Dense>

namespace hgmrf {

// Orthonormal 2D DFT on N x N grids via the cached unitary matrix
// F_{jk} = exp(-2 pi i j k / N) / sqrt(N). F is symmetric, so
// forward: X_hat = F X F^T, inverse: X = conj(F) X_hat conj(F)^T.
class UnitaryDft {
 public:
  explicit UnitaryDft(int n);

  int size() const noexcept { return n_; }
  Eigen::MatrixXcd forward(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXcd forward(const Eigen::MatrixXcd& x) const;
  Eigen::MatrixXcd inverse(const Eigen::MatrixXcd& xhat) const;

 private:
  int n_;
  Eigen::MatrixXcd f_;
  Eigen::MatrixXcd f_conj_;
};

// Per-thread transform cache keyed by size; no shared mutable state.
const UnitaryDft& cached_dft(int n);

}  // namespace hgmrf
