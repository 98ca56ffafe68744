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
 * Generalized inverses of complex matrices: Moore-Penrose, Drazin, group and
 * dagger-Drazin. Every public routine returns the inverse together with the
 * Frobenius residual of each defining axiom, and refuses to return an inverse
 * whose residuals exceed Tolerances::residual_atol.
 *
 * Axiom labels (matrices act on column vectors, G is the candidate inverse):
 *   MP1  F G F = F          MP2  G F G = G
 *   MP3  (F G)^† = F G      MP4  (G F)^† = G F
 *   D1   G A^{k+1} = A^k for some k (smallest passing k is the witness)
 *   D2   G A G = G          D3   A G = G A
 *   G1   A G A = A          G2   G A G = G        G3  A G = G A
 *   Dd1  G F (F^†F)^k = (F^†F)^k  and  (F F^†)^k F G = (F F^†)^k
 *   Dd2  G F G = G          Dd3  (G F)^† = G F   Dd4 (F G)^† = F G
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ginvq/errors.hpp"
#include "ginvq/linalg.hpp"

namespace ginvq {

enum class InverseKind { moore_penrose, drazin, group, dagger_drazin };

inline std::string_view to_string(InverseKind k) {
  switch (k) {
    case InverseKind::moore_penrose: return "moore_penrose";
    case InverseKind::drazin: return "drazin";
    case InverseKind::group: return "group";
    case InverseKind::dagger_drazin: return "dagger_drazin";
  }
  return "unknown";
}

/// Accepts the CLI spellings (mp, drazin, group, dagger-drazin) and the report spellings.
inline InverseKind parse_inverse_kind(std::string_view s) {
  if (s == "mp" || s == "moore_penrose" || s == "moore-penrose") return InverseKind::moore_penrose;
  if (s == "drazin") return InverseKind::drazin;
  if (s == "group") return InverseKind::group;
  if (s == "dagger-drazin" || s == "dagger_drazin") return InverseKind::dagger_drazin;
  throw InvalidArgument("unknown inverse kind '" + std::string(s) + "'");
}

using ResidualMap = std::map<std::string, double>;

inline double max_residual(const ResidualMap& r) {
  double m = 0.0;
  for (const auto& [_, v] : r) m = std::max(m, v);
  return m;
}

struct AxiomCheck {
  ResidualMap residuals;
  std::optional<std::size_t> k;  ///< witness exponent for D1 / Dd1
};

struct DrazinResult {
  CMatrix inverse;
  std::size_t index = 0;
  ResidualMap residuals;  ///< D1, D2, D3
};

struct GinvReport {
  InverseKind kind = InverseKind::moore_penrose;
  CMatrix inverse;
  ResidualMap residuals;
  std::optional<std::size_t> index;      ///< Drazin index (drazin, group)
  std::optional<std::size_t> witness_k;  ///< exponent satisfying D1 / Dd1
  std::optional<double> double_inverse_residual;  ///< group: ||(A^D)^D - A||
  std::optional<double> formula_gap;  ///< dagger_drazin: ||(F^†F)^D F^† - F^†(FF^†)^D||

  double max_residual() const { return ginvq::max_residual(residuals); }
};

namespace detail {

inline void require_square(const CMatrix& a, const char* what) {
  if (!a.is_square()) throw DimensionError(std::string(what) + ": non-square " + a.shape_str());
}

inline void enforce(const ResidualMap& r, const Tolerances& tol) {
  for (const auto& [label, v] : r)
    if (!(v <= tol.residual_atol)) throw ResidualError(label, v);
}

}  // namespace detail

/// Uncertified Moore-Penrose inverse: V diag(1/sigma) U^† over singular values above the rank cutoff.
inline CMatrix pinv(const CMatrix& m, const Tolerances& tol = {}) {
  if (m.rows() == 0 || m.cols() == 0) return CMatrix(m.cols(), m.rows());
  const SvdFactors f = svd(m);
  const double smax = f.singular_values.front();
  CMatrix out(m.cols(), m.rows());
  if (smax == 0.0) return out;
  const double cut = rank_cutoff(m, smax, tol);
  for (std::size_t r = 0; r < f.singular_values.size(); ++r) {
    const double s = f.singular_values[r];
    if (s <= cut) break;
    for (std::size_t i = 0; i < m.cols(); ++i) {
      const cplx vi = f.v(i, r) / s;
      for (std::size_t j = 0; j < m.rows(); ++j) out(i, j) += vi * std::conj(f.u(j, r));
    }
  }
  return out;
}

/// Residuals of every defining axiom of `kind` for the candidate pair (f, g),
/// without thresholding. D1 and Dd1 search k = 0..dim and report the smallest
/// passing k (or the best one when none passes).
inline AxiomCheck verify_axioms(InverseKind kind, const CMatrix& f, const CMatrix& g,
                                const Tolerances& tol = {}) {
  if (g.rows() != f.cols() || g.cols() != f.rows())
    throw DimensionError("verify_axioms: inverse shape " + g.shape_str() + " does not match " +
                         f.shape_str());
  AxiomCheck out;
  auto& r = out.residuals;
  switch (kind) {
    case InverseKind::moore_penrose: {
      const CMatrix fg = f * g, gf = g * f;
      r["MP1"] = fro_dist(fg * f, f);
      r["MP2"] = fro_dist(gf * g, g);
      r["MP3"] = hermiticity_residual(fg);
      r["MP4"] = hermiticity_residual(gf);
      break;
    }
    case InverseKind::group: {
      detail::require_square(f, "verify_axioms(group)");
      const CMatrix fg = f * g, gf = g * f;
      r["G1"] = fro_dist(fg * f, f);
      r["G2"] = fro_dist(gf * g, g);
      r["G3"] = fro_dist(fg, gf);
      break;
    }
    case InverseKind::drazin: {
      detail::require_square(f, "verify_axioms(drazin)");
      const std::size_t n = f.rows();
      CMatrix power = CMatrix::identity(n);  // f^k
      double best = 0.0;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k <= n; ++k) {
        const CMatrix next = power * f;
        const double res = fro_dist(g * next, power);
        if (k == 0 || res < best) {
          best = res;
          best_k = k;
        }
        if (res <= tol.residual_atol) {
          best = res;
          best_k = k;
          break;
        }
        power = next;
      }
      r["D1"] = best;
      out.k = best_k;
      r["D2"] = fro_dist(g * f * g, g);
      r["D3"] = fro_dist(f * g, g * f);
      break;
    }
    case InverseKind::dagger_drazin: {
      const CMatrix fd = dagger(f);
      const CMatrix gram_in = fd * f;   // f ; f^†   (acts on the domain)
      const CMatrix gram_out = f * fd;  // f^† ; f   (acts on the codomain)
      const CMatrix gf = g * f, fg = f * g;
      const std::size_t dim = std::max(f.rows(), f.cols());
      CMatrix p = CMatrix::identity(gram_in.rows());
      CMatrix q = CMatrix::identity(gram_out.rows());
      double best = 0.0;
      std::size_t best_k = 0;
      for (std::size_t k = 0; k <= dim; ++k) {
        const double res = std::max(fro_dist(gf * p, p), fro_dist(q * fg, q));
        if (k == 0 || res < best) {
          best = res;
          best_k = k;
        }
        if (res <= tol.residual_atol) {
          best = res;
          best_k = k;
          break;
        }
        p = p * gram_in;
        q = q * gram_out;
      }
      r["Dd1"] = best;
      out.k = best_k;
      r["Dd2"] = fro_dist(gf * g, g);
      r["Dd3"] = hermiticity_residual(gf);
      r["Dd4"] = hermiticity_residual(fg);
      break;
    }
  }
  return out;
}

/// Certified Moore-Penrose inverse.
inline GinvReport mp_inverse(const CMatrix& m, const Tolerances& tol = {}) {
  GinvReport rep;
  rep.kind = InverseKind::moore_penrose;
  rep.inverse = pinv(m, tol);
  rep.residuals = verify_axioms(InverseKind::moore_penrose, m, rep.inverse, tol).residuals;
  detail::enforce(rep.residuals, tol);
  return rep;
}

namespace detail {

// Rank of a^k measured against ||a||^k rather than ||a^k||: once a power has
// collapsed to roundoff its own largest singular value is meaningless.
inline std::size_t power_rank(const SvdFactors& f, std::size_t n, double ref, const Tolerances& tol) {
  const double cut = tol.rank_rtol * static_cast<double>(n) * ref;
  return static_cast<std::size_t>(
      std::count_if(f.singular_values.begin(), f.singular_values.end(), [&](double s) { return s > cut; }));
}

inline double spectral_norm(const CMatrix& a) {
  if (a.empty()) return 0.0;
  return svd(a).singular_values.front();
}

}  // namespace detail

/// Smallest k >= 0 with rank(a^k) == rank(a^{k+1}); 0 means invertible.
/// Ranks of powers use the cutoff rank_rtol * n * ||a||^k.
inline std::size_t drazin_index(const CMatrix& a, const Tolerances& tol = {}) {
  detail::require_square(a, "drazin_index");
  const std::size_t n = a.rows();
  const double norm = detail::spectral_norm(a);
  std::size_t prev = n;  // rank(a^0)
  CMatrix power = a;
  double ref = norm;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = detail::power_rank(svd(power), n, ref, tol);
    if (r == prev) return k;
    prev = r;
    power = power * a;
    ref *= norm;
  }
  return n;
}

namespace detail {

// With a^k = U_r S V_r^† (thin SVD, rank r), a^D = U_r (V_r^† a U_r)^{-1} V_r^†.
// Algebraically equal to a^k (a^{2k+1})^+ a^k but only inverts the r x r core,
// which avoids squaring the condition number.
inline CMatrix drazin_matrix(const CMatrix& a, std::size_t k, const Tolerances& tol) {
  if (k == 0) return pinv(a, tol);
  const std::size_t n = a.rows();
  const SvdFactors f = svd(matpow(a, k));
  const std::size_t r = power_rank(f, n, std::pow(spectral_norm(a), static_cast<double>(k)), tol);
  if (r == 0) return CMatrix(n, n);
  CMatrix ur(n, r), vr(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      ur(i, j) = f.u(i, j);
      vr(i, j) = f.v(i, j);
    }
  const CMatrix core = dagger(vr) * a * ur;
  return ur * pinv(core, tol) * dagger(vr);
}

}  // namespace detail

/// Certified Drazin inverse via the rank-stabilization index and the
/// core of A^k (equal to A^k (A^{2k+1})^+ A^k).
inline DrazinResult drazin_inverse(const CMatrix& a, const Tolerances& tol = {}) {
  detail::require_square(a, "drazin_inverse");
  DrazinResult out;
  out.index = drazin_index(a, tol);
  out.inverse = detail::drazin_matrix(a, out.index, tol);
  out.residuals = verify_axioms(InverseKind::drazin, a, out.inverse, tol).residuals;
  detail::enforce(out.residuals, tol);
  return out;
}

inline GinvReport drazin_report(const CMatrix& a, const Tolerances& tol = {}) {
  DrazinResult d = drazin_inverse(a, tol);
  GinvReport rep;
  rep.kind = InverseKind::drazin;
  rep.index = d.index;
  rep.witness_k = verify_axioms(InverseKind::drazin, a, d.inverse, tol).k;
  rep.inverse = std::move(d.inverse);
  rep.residuals = std::move(d.residuals);
  return rep;
}

/// Group inverse: the Drazin inverse when the index is at most 1.
/// Throws IndexTooLarge otherwise.
inline GinvReport group_inverse(const CMatrix& a, const Tolerances& tol = {}) {
  detail::require_square(a, "group_inverse");
  const std::size_t k = drazin_index(a, tol);
  if (k > 1) throw IndexTooLarge(k);
  GinvReport rep;
  rep.kind = InverseKind::group;
  rep.index = k;
  rep.inverse = detail::drazin_matrix(a, k, tol);
  rep.residuals = verify_axioms(InverseKind::group, a, rep.inverse, tol).residuals;
  detail::enforce(rep.residuals, tol);
  const CMatrix twice = detail::drazin_matrix(rep.inverse, drazin_index(rep.inverse, tol), tol);
  rep.double_inverse_residual = fro_dist(twice, a);
  if (*rep.double_inverse_residual > tol.residual_atol)
    throw ResidualError("GDD", *rep.double_inverse_residual);
  return rep;
}

/// Dagger-Drazin inverse (F^†F)^D F^†, cross-checked against F^†(FF^†)^D.
inline GinvReport dagger_drazin(const CMatrix& f, const Tolerances& tol = {}) {
  GinvReport rep;
  rep.kind = InverseKind::dagger_drazin;
  if (f.rows() == 0 || f.cols() == 0) {
    rep.inverse = CMatrix(f.cols(), f.rows());
    rep.residuals = {{"Dd1", 0.0}, {"Dd2", 0.0}, {"Dd3", 0.0}, {"Dd4", 0.0}};
    rep.witness_k = 0;
    rep.formula_gap = 0.0;
    return rep;
  }
  const CMatrix fd = dagger(f);
  const CMatrix gram_in = fd * f;
  const CMatrix gram_out = f * fd;
  const CMatrix left = detail::drazin_matrix(gram_in, drazin_index(gram_in, tol), tol) * fd;
  const CMatrix right = fd * detail::drazin_matrix(gram_out, drazin_index(gram_out, tol), tol);
  rep.formula_gap = fro_dist(left, right);
  if (*rep.formula_gap > tol.residual_atol) throw ResidualError("Dd-formulas", *rep.formula_gap);
  rep.inverse = left;
  AxiomCheck chk = verify_axioms(InverseKind::dagger_drazin, f, rep.inverse, tol);
  rep.residuals = std::move(chk.residuals);
  rep.witness_k = chk.k;
  detail::enforce(rep.residuals, tol);
  return rep;
}

/// Dispatch on kind.
inline GinvReport generalized_inverse(InverseKind kind, const CMatrix& m, const Tolerances& tol = {}) {
  switch (kind) {
    case InverseKind::moore_penrose: return mp_inverse(m, tol);
    case InverseKind::drazin: return drazin_report(m, tol);
    case InverseKind::group: return group_inverse(m, tol);
    case InverseKind::dagger_drazin: return dagger_drazin(m, tol);
  }
  throw InvalidArgument("unknown inverse kind");
}

struct MpDaggerCheck {
  bool holds = false;
  double involution_residual = 0.0;  ///< ||f^{dd} - f||
  double mp_agreement = 0.0;         ///< ||f^d - f^o||
};

/// Whether f is its own double dagger-Drazin inverse, and if so that the
/// dagger-Drazin and Moore-Penrose inverses coincide. Always true for
/// finite matrices; false means numerical trouble.
inline MpDaggerCheck is_mp_of_dagger_drazin(const CMatrix& f, const Tolerances& tol = {}) {
  MpDaggerCheck out;
  try {
    const GinvReport once = dagger_drazin(f, tol);
    const GinvReport twice = dagger_drazin(once.inverse, tol);
    out.involution_residual = fro_dist(twice.inverse, f);
    out.mp_agreement = fro_dist(once.inverse, pinv(f, tol));
    out.holds = out.involution_residual <= tol.residual_atol && out.mp_agreement <= tol.residual_atol;
  } catch (const ResidualError& e) {
    out.holds = false;
    out.involution_residual = e.residual();
  }
  return out;
}

}  // namespace ginvq
