#include "hgmrf/field_sim.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "hgmrf/dft.hpp"
#include "hgmrf/rng.hpp"
#include "internal/format.hpp"

namespace hgmrf {

namespace {

constexpr char kMagic[4] = {'H', 'G', 'R', 'F'};
constexpr std::uint32_t kVersion = 1;

const char* kind_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::signal: return "signal";
    case FieldKind::noise: return "noise";
    case FieldKind::observation: return "observation";
  }
  return "unknown";
}

void check_side(int N, const char* fn) {
  if (N < 1) {
    throw std::invalid_argument(std::string(fn) + ": N must be >= 1");
  }
}

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
void get(std::istream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) {
    throw std::runtime_error("read_field_binary: truncated stream");
  }
}

}  // namespace

TorusPrecisionSpectrum torus_precision_spectrum(const SfarParams& params,
                                                int N) {
  check_side(N, "torus_precision_spectrum");
  TorusPrecisionSpectrum s;
  s.side = N;
  s.eigenvalues.resize(N, N);
  for (int k = 0; k < N; ++k) {
    const double ck = std::cos(2.0 * M_PI * k / N);
    for (int l = 0; l < N; ++l) {
      const double cl = std::cos(2.0 * M_PI * l / N);
      s.eigenvalues(k, l) =
          params.kappa() * (1.0 - 2.0 * params.zeta() * (ck + cl));
    }
  }
  return s;
}

TorusField sample_signal(const SfarParams& params, int N, std::uint64_t seed) {
  check_side(N, "sample_signal");
  const TorusPrecisionSpectrum spec = torus_precision_spectrum(params, N);
  if (spec.singular()) {
    throw std::domain_error("sample_signal: precision is singular (zeta = 1/4)");
  }
  CounterRng rng(seed_fold(seed, kStreamSignal));
  // Hermitian-paired unit normals in frequency space; the pairing partner of
  // (k, l) is (-k, -l) mod N. Draw order is row-major over the lexicographic
  // leader of each pair, so the stream layout is fixed.
  Eigen::MatrixXcd zhat(N, N);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < N; ++k) {
    for (int l = 0; l < N; ++l) {
      const int pk = (N - k) % N;
      const int pl = (N - l) % N;
      if (pk == k && pl == l) {
        zhat(k, l) = rng.next_normal();
      } else if (std::tie(k, l) < std::tie(pk, pl)) {
        const auto [a, b] = rng.next_normal_pair();
        zhat(k, l) = std::complex<double>(a * inv_sqrt2, b * inv_sqrt2);
        zhat(pk, pl) = std::conj(zhat(k, l));
      }
    }
  }
  zhat.array() *= spec.eigenvalues.array().rsqrt();
  const Eigen::MatrixXcd x = cached_dft(N).inverse(zhat);
  // Hermitian input keeps the inverse transform real up to rounding.
  if (x.imag().cwiseAbs().maxCoeff() > 1e-10) {
    throw std::logic_error("sample_signal: imaginary residue exceeds tolerance");
  }
  TorusField field;
  field.side = N;
  field.kind = FieldKind::signal;
  field.seed = seed;
  field.values = x.real();
  return field;
}

TorusField sample_observation(const SfarParams& params, int N,
                              Hypothesis hypothesis, std::uint64_t seed) {
  check_side(N, "sample_observation");
  TorusField field;
  field.side = N;
  field.kind = FieldKind::observation;
  field.seed = seed;
  CounterRng noise(seed_fold(seed, kStreamNoise));
  const double sigma = std::sqrt(params.sigma2());
  if (hypothesis == Hypothesis::h1) {
    field.values = sample_signal(params, N, seed).values;
  } else {
    field.values = Eigen::MatrixXd::Zero(N, N);
  }
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      field.values(i, j) += sigma * noise.next_normal();
    }
  }
  return field;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> dense_covariances(
    const SfarParams& params, int N) {
  check_side(N, "dense_covariances");
  if (N > 8) {
    throw std::invalid_argument(
        "dense_covariances: N > 8 exceeds the dense-size guard");
  }
  if (params.zeta() >= 0.25) {
    throw std::domain_error(
        "dense_covariances: zeta = 1/4 makes the precision singular");
  }
  const int m = N * N;
  auto idx = [N](int i, int j) { return i * N + j; };
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  // += rather than =: on tiny tori distinct neighbor offsets alias to the
  // same site and their couplings accumulate.
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const int r = idx(i, j);
      q(r, r) += params.kappa();
      q(r, idx((i + 1) % N, j)) += -params.lambda();
      q(r, idx((i + N - 1) % N, j)) += -params.lambda();
      q(r, idx(i, (j + 1) % N)) += -params.lambda();
      q(r, idx(i, (j + N - 1) % N)) += -params.lambda();
    }
  }
  const Eigen::MatrixXd sigma0 =
      params.sigma2() * Eigen::MatrixXd::Identity(m, m);
  Eigen::MatrixXd qinv = q.ldlt().solve(Eigen::MatrixXd::Identity(m, m));
  qinv = 0.5 * (qinv + qinv.transpose()).eval();
  return {sigma0, sigma0 + qinv};
}

void write_field_csv(std::ostream& out, const TorusField& field,
                     const SfarParams& params) {
  out << "N,kind,seed,kappa,zeta,sigma2\n"
      << field.side << ',' << kind_name(field.kind) << ',' << field.seed << ','
      << detail::format_double(params.kappa()) << ','
      << detail::format_double(params.zeta()) << ','
      << detail::format_double(params.sigma2()) << '\n';
  for (int i = 0; i < field.side; ++i) {
    for (int j = 0; j < field.side; ++j) {
      if (j > 0) out << ',';
      out << detail::format_double(field.values(i, j));
    }
    out << '\n';
  }
}

void write_field_binary(std::ostream& out, const TorusField& field,
                        const SfarParams& params) {
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(field.side));
  put(out, static_cast<std::uint32_t>(field.kind));
  put(out, field.seed);
  put(out, params.kappa());
  put(out, params.zeta());
  put(out, params.sigma2());
  for (int i = 0; i < field.side; ++i) {
    for (int j = 0; j < field.side; ++j) {
      put(out, field.values(i, j));
    }
  }
}

TorusField read_field_binary(std::istream& in, SfarParams* params_out) {
  char magic[4];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
    throw std::runtime_error("read_field_binary: bad magic");
  }
  std::uint32_t version;
  get(in, version);
  if (version != kVersion) {
    throw std::runtime_error("read_field_binary: unsupported version");
  }
  std::uint32_t side, kind;
  get(in, side);
  get(in, kind);
  if (side < 1 || side > 65536 || kind > 2) {
    throw std::runtime_error("read_field_binary: corrupt header");
  }
  TorusField field;
  field.side = static_cast<int>(side);
  field.kind = static_cast<FieldKind>(kind);
  get(in, field.seed);
  double kappa, zeta, sigma2;
  get(in, kappa);
  get(in, zeta);
  get(in, sigma2);
  if (params_out != nullptr) {
    *params_out = SfarParams(kappa, zeta, sigma2);
  }
  field.values.resize(field.side, field.side);
  for (int i = 0; i < field.side; ++i) {
    for (int j = 0; j < field.side; ++j) {
      get(in, field.values(i, j));
    }
  }
  return field;
}

}  // namespace hgmrf
