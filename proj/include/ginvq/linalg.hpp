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
 * Dense complex matrices and the two factorizations everything else rests on.
 *
 * Composition convention: a linear map is a matrix acting on column vectors,
 * so "first f, then g" is the product G * F. Every formula in this library
 * that is usually written in diagrammatic order is transcribed through this
 * rule.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ginvq/errors.hpp"

namespace ginvq {

using cplx = std::complex<double>;

/// Numerical policy threaded through every inexact decision.
struct Tolerances {
  double rank_rtol = 1e-10;     ///< singular-value cutoff relative to max(rows,cols)*sigma_max
  double residual_atol = 1e-8;  ///< absolute Frobenius tolerance for identities
  double psd_atol = 1e-8;       ///< eigenvalue floor for positive semidefiniteness

  void validate() const {
    if (!(rank_rtol > 0) || !(residual_atol > 0) || !(psd_atol > 0))
      throw InvalidArgument("tolerances must be strictly positive");
  }
};

/// Dense row-major complex matrix. 0x0 is allowed and denotes the empty map.
class CMatrix {
 public:
  CMatrix() = default;

  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw DimensionError("CMatrix: " + std::to_string(data_.size()) +
                           " entries for shape " + std::to_string(rows_) + "x" +
                           std::to_string(cols_));
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError("CMatrix: non-finite entry");
  }

  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("CMatrix: ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
    for (const auto& z : data_)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw NumericError("CMatrix: non-finite entry");
  }

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static CMatrix diag(std::span<const cplx> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  static CMatrix diag(std::initializer_list<cplx> d) {
    return diag(std::span<const cplx>(d.begin(), d.size()));
  }
  static CMatrix diag(std::span<const double> d) {
    CMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static CMatrix column(std::span<const cplx> v) {
    return CMatrix(v.size(), 1, std::vector<cplx>(v.begin(), v.end()));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const cplx> entries() const noexcept { return data_; }
  std::span<cplx> entries() noexcept { return data_; }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o, "+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o, "-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CMatrix& operator*=(cplx s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator-(CMatrix a) { return a *= -1.0; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }

  // Exact entrywise equality.
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

  void require_same_shape(const CMatrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionError(std::string(what) + ": shape " + shape_str() + " vs " +
                           o.shape_str());
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

inline std::ostream& operator<<(std::ostream& os, const CMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "]";
}

/// Conjugate transpose.
inline CMatrix dagger(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline CMatrix transpose(const CMatrix& m) {
  CMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

inline CMatrix conj(const CMatrix& m) {
  CMatrix out = m;
  for (auto& z : out.entries()) z = std::conj(z);
  return out;
}

inline CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionError("matmul: " + a.shape_str() + " * " + b.shape_str());
  CMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

inline CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

inline double fro_norm(const CMatrix& m) {
  double s = 0.0;
  for (const auto& z : m.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double fro_dist(const CMatrix& a, const CMatrix& b) {
  a.require_same_shape(b, "fro_dist");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

inline cplx trace(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace: non-square " + m.shape_str());
  cplx t{};
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// a^k by repeated squaring; a^0 = I.
inline CMatrix matpow(const CMatrix& a, std::size_t k) {
  if (!a.is_square()) throw DimensionError("matpow: non-square " + a.shape_str());
  CMatrix result = CMatrix::identity(a.rows());
  CMatrix base = a;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

/// ||m - m^dagger||_F
inline double hermiticity_residual(const CMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermiticity: non-square " + m.shape_str());
  return fro_dist(m, dagger(m));
}

struct SvdFactors {
  CMatrix u;                            ///< rows x r, orthonormal columns
  std::vector<double> singular_values;  ///< non-increasing, length r = min(rows, cols)
  CMatrix v;                            ///< cols x r, orthonormal columns

  CMatrix reconstruct() const {
    CMatrix us = u;
    for (std::size_t i = 0; i < us.rows(); ++i)
      for (std::size_t j = 0; j < us.cols(); ++j) us(i, j) *= singular_values[j];
    return us * dagger(v);
  }
};

namespace detail {

inline double column_norm2(const CMatrix& m, std::size_t c) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += std::norm(m(i, c));
  return s;
}

// Make columns [first, end) of q orthonormal to each other and to columns
// [0, first); columns with negligible norm are replaced from the standard basis.
inline void complete_orthonormal(CMatrix& q, std::size_t first) {
  const std::size_t n = q.rows();
  auto project_out = [&](std::vector<cplx>& v, std::size_t upto) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t c = 0; c < upto; ++c) {
        cplx dot{};
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, c)) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q(i, c);
      }
  };
  for (std::size_t c = first; c < q.cols(); ++c) {
    std::vector<cplx> best;
    double best_norm = -1.0;
    for (std::size_t e = 0; e < n; ++e) {
      std::vector<cplx> v(n, cplx{});
      v[e] = 1.0;
      project_out(v, c);
      double nv = 0.0;
      for (const auto& z : v) nv += std::norm(z);
      if (nv > best_norm) {
        best_norm = nv;
        best = std::move(v);
      }
      if (best_norm > 0.5) break;
    }
    const double s = 1.0 / std::sqrt(best_norm);
    for (std::size_t i = 0; i < n; ++i) q(i, c) = best[i] * s;
  }
}

// One-sided Jacobi on a tall (rows >= cols) matrix.
inline SvdFactors svd_tall(const CMatrix& m, int max_sweeps) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  CMatrix w = m;
  CMatrix v = CMatrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double ortho_tol = eps * static_cast<double>(std::max<std::size_t>(rows, 1));
  // Columns below this squared norm are roundoff; rotating them never converges.
  const double negligible = std::pow(eps * fro_norm(m), 2);

  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= ortho_tol * std::sqrt(alpha * beta) || std::min(alpha, beta) <= negligible) continue;
        converged = false;
        const cplx phase = gamma / g;  // e^{i phi}
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        auto rotate = [&](CMatrix& a, std::size_t nrows) {
          for (std::size_t i = 0; i < nrows; ++i) {
            const cplx ap = a(i, p), aq = a(i, q);
            a(i, p) = c * ap + jqp * aq;
            a(i, q) = s * ap + jqq * aq;
          }
        };
        rotate(w, rows);
        rotate(v, n);
      }
  }
  if (!converged) throw NumericError("svd: one-sided Jacobi did not converge");

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_norm2(w, j));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sigma[a] > sigma[b]; });

  SvdFactors f{CMatrix(rows, n), std::vector<double>(n), CMatrix(n, n)};
  const double smax = n ? sigma[order[0]] : 0.0;
  const double floor = smax * eps * static_cast<double>(std::max(rows, n));
  std::size_t good = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    f.singular_values[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) f.v(i, k) = v(i, j);
    if (sigma[j] > floor && sigma[j] > 0.0) {
      for (std::size_t i = 0; i < rows; ++i) f.u(i, k) = w(i, j) / sigma[j];
      ++good;
    }
  }
  // Columns with negligible singular value get an arbitrary orthonormal completion.
  if (good < n) complete_orthonormal(f.u, good);
  return f;
}

}  // namespace detail

/// Thin SVD m = u diag(s) v^dagger via one-sided Jacobi.
inline SvdFactors svd(const CMatrix& m, int max_sweeps = 100) {
  if (m.rows() >= m.cols()) return detail::svd_tall(m, max_sweeps);
  SvdFactors t = detail::svd_tall(dagger(m), max_sweeps);
  return {std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

struct EighResult {
  std::vector<double> eigenvalues;  ///< ascending
  CMatrix eigenvectors;             ///< unitary, columns match eigenvalues
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
inline EighResult eigh(const CMatrix& h, const Tolerances& tol = {}, int max_sweeps = 100) {
  if (!h.is_square()) throw DimensionError("eigh: non-square " + h.shape_str());
  const double herm = hermiticity_residual(h);
  if (herm > tol.residual_atol) throw NotHermitian(herm);

  const std::size_t n = h.rows();
  CMatrix a = (h + dagger(h)) * cplx{0.5};
  CMatrix v = CMatrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const double scale = fro_norm(a);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  int sweep = 0;
  for (; sweep < max_sweeps && off_norm() > eps * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double g = std::abs(a(p, q));
        if (g <= eps * eps * scale) continue;
        const cplx phase = a(p, q) / g;
        const double zeta = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const cplx jqp = -s * std::conj(phase);
        const cplx jqq = c * std::conj(phase);
        // a <- a J
        for (std::size_t k = 0; k < n; ++k) {
          const cplx ap = a(k, p), aq = a(k, q);
          a(k, p) = c * ap + jqp * aq;
          a(k, q) = s * ap + jqq * aq;
        }
        // a <- J^dagger a
        for (std::size_t k = 0; k < n; ++k) {
          const cplx ap = a(p, k), aq = a(q, k);
          a(p, k) = c * ap + std::conj(jqp) * aq;
          a(q, k) = s * ap + std::conj(jqq) * aq;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vp = v(k, p), vq = v(k, q);
          v(k, p) = c * vp + jqp * vq;
          v(k, q) = s * vp + jqq * vq;
        }
      }
  }
  if (off_norm() > eps * scale * 10.0)
    throw NumericError("eigh: Jacobi iteration did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  EighResult r{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    r.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) r.eigenvectors(i, k) = v(i, order[k]);
  }
  return r;
}

/// Cutoff below which a singular value counts as zero.
inline double rank_cutoff(const CMatrix& m, double sigma_max, const Tolerances& tol) {
  return tol.rank_rtol * static_cast<double>(std::max(m.rows(), m.cols())) * sigma_max;
}

inline std::size_t rank(const CMatrix& m, const Tolerances& tol = {}) {
  if (m.empty()) return 0;
  const auto f = svd(m);
  const double smax = f.singular_values.front();
  if (smax == 0.0) return 0;
  const double cut = rank_cutoff(m, smax, tol);
  return static_cast<std::size_t>(std::count_if(f.singular_values.begin(), f.singular_values.end(),
                                                [&](double s) { return s > cut; }));
}

/// Orthonormalize the columns of a full-column-rank matrix (modified Gram-Schmidt,
/// two passes). Used to turn Ginibre samples into isometries and unitaries.
inline CMatrix orthonormalize_columns(const CMatrix& m) {
  if (m.cols() > m.rows())
    throw DimensionError("orthonormalize_columns: more columns than rows in " + m.shape_str());
  CMatrix q = m;
  const std::size_t n = q.rows();
  for (std::size_t c = 0; c < q.cols(); ++c) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t p = 0; p < c; ++p) {
        cplx dot{};
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, p)) * q(i, c);
        for (std::size_t i = 0; i < n; ++i) q(i, c) -= dot * q(i, p);
      }
    const double nrm = std::sqrt(detail::column_norm2(q, c));
    if (nrm < 1e-12) throw NumericError("orthonormalize_columns: rank-deficient input");
    for (std::size_t i = 0; i < n; ++i) q(i, c) /= nrm;
  }
  return q;
}

}  // namespace ginvq
