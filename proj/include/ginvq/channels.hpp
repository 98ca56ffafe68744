// Copyright 2026 The ginvq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * Linear maps on operator space ("channels" even when they are not CPTP).
 *
 * Vectorization is column-stacking, so the conjugation rho -> K rho K^† has
 * superoperator conj(K) (x) K, and a channel with Kraus operators {K_i} is
 * TP iff sum K_i^† K_i = I and unital iff sum K_i K_i^† = I.
 */

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "ginvq/errors.hpp"
#include "ginvq/linalg.hpp"

namespace ginvq {

/// Column-stacking vectorization; result is (rows*cols) x 1.
inline CMatrix vec(const CMatrix& m) {
  CMatrix v(m.rows() * m.cols(), 1);
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) v(j * m.rows() + i, 0) = m(i, j);
  return v;
}

inline CMatrix unvec(const CMatrix& v, std::size_t rows, std::size_t cols) {
  if (v.cols() != 1 && v.rows() != 1) throw DimensionError("unvec: not a vector: " + v.shape_str());
  if (v.size() != rows * cols)
    throw DimensionError("unvec: length " + std::to_string(v.size()) + " for " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  CMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v.entries()[j * rows + i];
  return m;
}

/// A linear map L(C^d_in) -> L(C^d_out) stored as its d_out^2 x d_in^2
/// superoperator. Kraus operators are cached when the map was built from them.
class Channel {
 public:
  static Channel from_super(std::size_t d_in, std::size_t d_out, CMatrix super) {
    if (d_in == 0 || d_out == 0) throw DimensionError("channel dimensions must be positive");
    if (super.rows() != d_out * d_out || super.cols() != d_in * d_in)
      throw DimensionError("superoperator shape " + super.shape_str() + " does not match d_in=" +
                           std::to_string(d_in) + ", d_out=" + std::to_string(d_out));
    Channel ch;
    ch.d_in_ = d_in;
    ch.d_out_ = d_out;
    ch.super_ = std::move(super);
    return ch;
  }

  static Channel from_kraus(std::vector<CMatrix> kraus) {
    if (kraus.empty()) throw InvalidArgument("Kraus list is empty");
    const std::size_t d_out = kraus.front().rows();
    const std::size_t d_in = kraus.front().cols();
    CMatrix s(d_out * d_out, d_in * d_in);
    for (const auto& k : kraus) {
      if (k.rows() != d_out || k.cols() != d_in)
        throw DimensionError("Kraus operator shape " + k.shape_str() + " differs from " +
                             kraus.front().shape_str());
      s += kron(conj(k), k);
    }
    Channel ch = from_super(d_in, d_out, std::move(s));
    ch.kraus_ = std::move(kraus);
    return ch;
  }

  std::size_t d_in() const noexcept { return d_in_; }
  std::size_t d_out() const noexcept { return d_out_; }
  const CMatrix& super() const noexcept { return super_; }
  const std::optional<std::vector<CMatrix>>& kraus() const noexcept { return kraus_; }
  bool is_endo() const noexcept { return d_in_ == d_out_; }

 private:
  Channel() = default;
  std::size_t d_in_ = 0;
  std::size_t d_out_ = 0;
  CMatrix super_;
  std::optional<std::vector<CMatrix>> kraus_;
};

inline Channel kraus_to_channel(std::vector<CMatrix> kraus) {
  return Channel::from_kraus(std::move(kraus));
}

inline CMatrix apply(const Channel& ch, const CMatrix& rho) {
  if (rho.rows() != ch.d_in() || rho.cols() != ch.d_in())
    throw DimensionError("apply: state " + rho.shape_str() + " for d_in=" + std::to_string(ch.d_in()));
  return unvec(ch.super() * vec(rho), ch.d_out(), ch.d_out());
}

/// `second` after `first`.
inline Channel compose(const Channel& second, const Channel& first) {
  if (second.d_in() != first.d_out())
    throw DimensionError("compose: d_out=" + std::to_string(first.d_out()) +
                         " feeds d_in=" + std::to_string(second.d_in()));
  if (first.kraus() && second.kraus()) {
    std::vector<CMatrix> ks;
    for (const auto& b : *second.kraus())
      for (const auto& a : *first.kraus()) ks.push_back(b * a);
    return Channel::from_kraus(std::move(ks));
  }
  return Channel::from_super(first.d_in(), second.d_out(), second.super() * first.super());
}

/// Superoperator adjoint; swaps input and output systems.
inline Channel adjoint_channel(const Channel& ch) {
  if (ch.kraus()) {
    std::vector<CMatrix> ks;
    for (const auto& k : *ch.kraus()) ks.push_back(dagger(k));
    return Channel::from_kraus(std::move(ks));
  }
  return Channel::from_super(ch.d_out(), ch.d_in(), dagger(ch.super()));
}

struct ChoiMatrix {
  CMatrix matrix;  ///< (d_in*d_out) x (d_in*d_out), input factor first
  std::size_t d_in = 0;
  std::size_t d_out = 0;
};

/// J = sum_ij |i><j| (x) Phi(|i><j|).
inline ChoiMatrix choi(const Channel& ch) {
  const std::size_t di = ch.d_in(), dout = ch.d_out();
  const CMatrix& s = ch.super();
  ChoiMatrix j{CMatrix(di * dout, di * dout), di, dout};
  // Phi(|i><j|)_{b,c} = S(c*dout + b, j*di + i)
  for (std::size_t i = 0; i < di; ++i)
    for (std::size_t jj = 0; jj < di; ++jj)
      for (std::size_t b = 0; b < dout; ++b)
        for (std::size_t c = 0; c < dout; ++c)
          j.matrix(i * dout + b, jj * dout + c) = s(c * dout + b, jj * di + i);
  return j;
}

/// Kraus operators from the spectral decomposition of a PSD Choi matrix.
inline std::vector<CMatrix> choi_to_kraus(const ChoiMatrix& j, const Tolerances& tol = {}) {
  const EighResult e = eigh(j.matrix, tol);
  if (!e.eigenvalues.empty() && e.eigenvalues.front() < -tol.psd_atol) throw NotCP(e.eigenvalues.front());
  std::vector<CMatrix> kraus;
  const std::size_t n = j.matrix.rows();
  for (std::size_t idx = n; idx-- > 0;) {
    const double lambda = e.eigenvalues[idx];
    if (lambda <= tol.psd_atol) break;
    // eigenvector entry (i*d_out + b) -> K(b, i)
    CMatrix k(j.d_out, j.d_in);
    const double w = std::sqrt(lambda);
    for (std::size_t i = 0; i < j.d_in; ++i)
      for (std::size_t b = 0; b < j.d_out; ++b) k(b, i) = w * e.eigenvectors(i * j.d_out + b, idx);
    kraus.push_back(std::move(k));
  }
  if (kraus.empty()) kraus.push_back(CMatrix(j.d_out, j.d_in));
  return kraus;
}

struct CpVerdict {
  bool verdict = false;
  double min_choi_eigenvalue = 0.0;
  double hermiticity_residual = 0.0;
};

struct ResidualVerdict {
  bool verdict = false;
  double residual = 0.0;
};

struct PropertyReport {
  CpVerdict cp;
  ResidualVerdict tp;
  ResidualVerdict unital;

  bool cptp() const noexcept { return cp.verdict && tp.verdict; }
  bool ucptp() const noexcept { return cp.verdict && tp.verdict && unital.verdict; }
};

/// CP iff the Choi matrix is Hermitian and its smallest eigenvalue is >= -psd_atol.
/// A non-Hermitian Choi matrix is reported not CP; its eigenvalue field then
/// describes the Hermitian part.
inline CpVerdict is_cp(const Channel& ch, const Tolerances& tol = {}) {
  const ChoiMatrix j = choi(ch);
  CpVerdict v;
  v.hermiticity_residual = hermiticity_residual(j.matrix);
  const CMatrix herm = (j.matrix + dagger(j.matrix)) * cplx{0.5};
  v.min_choi_eigenvalue = eigh(herm, tol).eigenvalues.front();
  v.verdict = v.hermiticity_residual <= tol.residual_atol && v.min_choi_eigenvalue >= -tol.psd_atol;
  return v;
}

/// ||S^† vec(I_out) - vec(I_in)||: trace preservation of every input.
inline double tp_residual(const CMatrix& super, std::size_t d_in, std::size_t d_out) {
  return fro_dist(dagger(super) * vec(CMatrix::identity(d_out)), vec(CMatrix::identity(d_in)));
}

/// ||S vec(I_in) - vec(I_out)||: the identity is mapped to the identity.
inline double unital_residual(const CMatrix& super, std::size_t d_in, std::size_t d_out) {
  return fro_dist(super * vec(CMatrix::identity(d_in)), vec(CMatrix::identity(d_out)));
}

inline ResidualVerdict is_tp(const Channel& ch, const Tolerances& tol = {}) {
  const double r = tp_residual(ch.super(), ch.d_in(), ch.d_out());
  return {r <= tol.residual_atol, r};
}

inline ResidualVerdict is_unital(const Channel& ch, const Tolerances& tol = {}) {
  const double r = unital_residual(ch.super(), ch.d_in(), ch.d_out());
  return {r <= tol.residual_atol, r};
}

inline PropertyReport properties(const Channel& ch, const Tolerances& tol = {}) {
  return {is_cp(ch, tol), is_tp(ch, tol), is_unital(ch, tol)};
}

/// rho -> (1-a) rho + (a/d) Tr(rho) I.
inline Channel depolarizing(std::size_t d, double a) {
  if (d == 0) throw InvalidArgument("depolarizing: d must be >= 1");
  const CMatrix v = vec(CMatrix::identity(d));
  CMatrix s = CMatrix::identity(d * d) * cplx{1.0 - a} + (v * dagger(v)) * cplx{a / static_cast<double>(d)};
  return Channel::from_super(d, d, std::move(s));
}

/// Upper end of the CP range 0 <= a <= 1 + 1/(d^2 - 1), read off the Choi
/// eigenvalues (1-a)d + a/d and a/d. Infinite for d = 1.
inline double depolarizing_cp_upper_bound(std::size_t d) {
  if (d <= 1) return std::numeric_limits<double>::infinity();
  const double dd = static_cast<double>(d);
  return 1.0 + 1.0 / (dd * dd - 1.0);
}

/// rho -> F rho F^†, the pure map induced by f.
inline Channel conjugation_channel(const CMatrix& f) { return Channel::from_kraus({f}); }

inline double unitarity_residual(const CMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity: non-square " + u.shape_str());
  return fro_dist(dagger(u) * u, CMatrix::identity(u.rows()));
}

inline Channel mixed_unitary(const std::vector<CMatrix>& unitaries, const std::vector<double>& probs,
                             const Tolerances& tol = {}) {
  if (unitaries.empty() || unitaries.size() != probs.size())
    throw InvalidArgument("mixed_unitary: need one probability per unitary");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw InvalidArgument("mixed_unitary: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol.residual_atol)
    throw InvalidArgument("mixed_unitary: probabilities sum to " + std::to_string(total));
  std::vector<CMatrix> kraus;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    const CMatrix& u = unitaries[i];
    if (!u.is_square() || u.rows() != unitaries.front().rows())
      throw DimensionError("mixed_unitary: unitaries must share one square shape");
    if (unitarity_residual(u) > tol.residual_atol)
      throw InvalidArgument("mixed_unitary: member " + std::to_string(i) + " is not unitary");
    kraus.push_back(u * cplx{std::sqrt(probs[i])});
  }
  return Channel::from_kraus(std::move(kraus));
}

/// Orthogonal block projectors e_i of a direct sum; the channel sum_i e_i rho e_i.
inline std::vector<CMatrix> block_projectors(const std::vector<std::size_t>& block_dims) {
  if (block_dims.empty()) throw InvalidArgument("projector_channel: no blocks");
  std::size_t d = 0;
  for (auto b : block_dims) {
    if (b == 0) throw InvalidArgument("projector_channel: empty block");
    d += b;
  }
  std::vector<CMatrix> es;
  std::size_t offset = 0;
  for (auto b : block_dims) {
    CMatrix e(d, d);
    for (std::size_t i = 0; i < b; ++i) e(offset + i, offset + i) = 1.0;
    es.push_back(std::move(e));
    offset += b;
  }
  return es;
}

inline Channel projector_channel(const std::vector<std::size_t>& block_dims) {
  return Channel::from_kraus(block_projectors(block_dims));
}

/// Trace out factor `which` (1 or 2) of a (d1*d2) x (d1*d2) operator.
inline CMatrix partial_trace(const CMatrix& m, std::size_t d1, std::size_t d2, int which) {
  if (m.rows() != d1 * d2 || m.cols() != d1 * d2)
    throw DimensionError("partial_trace: " + m.shape_str() + " is not (d1*d2)^2 for d1=" +
                         std::to_string(d1) + ", d2=" + std::to_string(d2));
  if (which == 1) {
    CMatrix out(d2, d2);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t b = 0; b < d2; ++b)
        for (std::size_t c = 0; c < d2; ++c) out(b, c) += m(a * d2 + b, a * d2 + c);
    return out;
  }
  if (which == 2) {
    CMatrix out(d1, d1);
    for (std::size_t a = 0; a < d1; ++a)
      for (std::size_t c = 0; c < d1; ++c)
        for (std::size_t b = 0; b < d2; ++b) out(a, c) += m(a * d2 + b, c * d2 + b);
    return out;
  }
  throw InvalidArgument("partial_trace: which must be 1 or 2");
}

// ---------------------------------------------------------------------------
// Seeded random instances.

inline CMatrix ginibre(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  CMatrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (auto& z : g.entries()) {
    const double re = n01(rng);
    const double im = n01(rng);
    z = cplx{re * s, im * s};
  }
  return g;
}

/// Haar unitary: Gram-Schmidt of a Ginibre matrix. Gram-Schmidt leaves R
/// with a positive real diagonal, which is the phase fix.
inline CMatrix haar_unitary(std::size_t d, std::mt19937_64& rng) {
  return orthonormalize_columns(ginibre(d, d, rng));
}

/// Stinespring sample: isometry V of shape (env*d_out) x d_in, K_i = (<i| (x) I) V.
inline Channel random_cptp(std::size_t d_in, std::size_t d_out, std::size_t env_dim, std::uint64_t seed) {
  if (d_in == 0 || d_out == 0 || env_dim == 0) throw InvalidArgument("random_cptp: dimensions must be positive");
  if (env_dim * d_out < d_in)
    throw InvalidArgument("random_cptp: env_dim*d_out must be >= d_in for an isometry");
  std::mt19937_64 rng(seed);
  const CMatrix v = orthonormalize_columns(ginibre(env_dim * d_out, d_in, rng));
  std::vector<CMatrix> kraus;
  for (std::size_t e = 0; e < env_dim; ++e) {
    CMatrix k(d_out, d_in);
    for (std::size_t b = 0; b < d_out; ++b)
      for (std::size_t i = 0; i < d_in; ++i) k(b, i) = v(e * d_out + b, i);
    kraus.push_back(std::move(k));
  }
  return Channel::from_kraus(std::move(kraus));
}

/// Mixed-unitary sample with Dirichlet(1,...,1) weights.
inline Channel random_ucptp(std::size_t d, std::size_t n_unitaries, std::uint64_t seed) {
  if (d == 0 || n_unitaries == 0) throw InvalidArgument("random_ucptp: dimensions must be positive");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<CMatrix> us;
  std::vector<double> ps;
  double total = 0.0;
  for (std::size_t i = 0; i < n_unitaries; ++i) {
    us.push_back(haar_unitary(d, rng));
    ps.push_back(expo(rng));
    total += ps.back();
  }
  for (auto& p : ps) p /= total;
  return mixed_unitary(us, ps);
}

/// Complete dephasing in a Haar-random basis; an idempotent UCPTP map of rank d.
inline Channel random_dephasing(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CMatrix u = haar_unitary(d, rng);
  std::vector<CMatrix> kraus;
  for (std::size_t i = 0; i < d; ++i) {
    CMatrix p(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) p(a, b) = u(a, i) * std::conj(u(b, i));
    kraus.push_back(std::move(p));
  }
  return Channel::from_kraus(std::move(kraus));
}

/// Kraus {[[1,0],[0,sqrt(1-g)]], [[0,sqrt(g)],[0,0]]}.
inline Channel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("amplitude_damping: gamma outside [0,1]");
  return Channel::from_kraus({CMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}},
                              CMatrix{{0.0, std::sqrt(gamma)}, {0.0, 0.0}}});
}

}  // namespace ginvq
