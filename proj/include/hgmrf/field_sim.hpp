#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include <Eigen/Dense>

#include "hgmrf/params.hpp"

namespace hgmrf {

enum class FieldKind { signal, noise, observation };
enum class Hypothesis { h0, h1 };

// An N x N real-valued lattice sample with periodic (torus) geometry.
struct TorusField {
  int side;
  FieldKind kind;
  std::uint64_t seed;
  Eigen::MatrixXd values;
};

// Eigenvalues of the torus precision operator, indexed by frequency pair:
// Lambda_{kl} = kappa (1 - 2 zeta cos(2 pi k/N) - 2 zeta cos(2 pi l/N)).
// Strictly positive for zeta < 1/4; Lambda_00 = kappa (1 - 4 zeta).
struct TorusPrecisionSpectrum {
  int side;
  Eigen::MatrixXd eigenvalues;
  // zeta = 1/4: the (0,0) eigenvalue vanishes and the precision is singular.
  bool singular() const { return eigenvalues(0, 0) <= 0.0; }
};

TorusPrecisionSpectrum torus_precision_spectrum(const SfarParams& params, int N);

// Draws the torus GMRF by scaling Hermitian-paired complex normals with
// Lambda^{-1/2} and applying the inverse orthonormal 2D DFT. Deterministic
// given seed; zeta = 1/4 is a domain error (singular precision).
TorusField sample_signal(const SfarParams& params, int N, std::uint64_t seed);

// H0: i.i.d. N(0, sigma2) noise field. H1: sample_signal plus independent
// N(0, sigma2) noise; the two streams use decorrelated sub-seeds.
TorusField sample_observation(const SfarParams& params, int N,
                              Hypothesis hypothesis, std::uint64_t seed);

// Dense torus covariances for tiny lattices: Sigma0 = sigma2 I and
// Sigma1 = sigma2 I + Q^{-1} with Q the block-circulant SFAR precision.
// N > 8 violates the dense-size guard.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dense_covariances(
    const SfarParams& params, int N);

// Field export for external inspection: a header carrying N, kind, seed and
// the model parameters, then the N^2 values row-major.
void write_field_csv(std::ostream& out, const TorusField& field,
                     const SfarParams& params);
void write_field_binary(std::ostream& out, const TorusField& field,
                        const SfarParams& params);
// Round-trip reader for the binary layout.
TorusField read_field_binary(std::istream& in, SfarParams* params_out = nullptr);

}  // namespace hgmrf
