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


#include <cmath>
#include <random>

#include "test_util.hpp"

namespace ginvq {
namespace {

using testing::random_matrix;

const CMatrix kNil{{0.0, 1.0}, {0.0, 0.0}};

// P diag(N, D) P^{-1} with N strictly upper triangular (nilpotent) and D an
// invertible diagonal; its Drazin inverse is P diag(0, D^{-1}) P^{-1}. P is
// U diag(s) V^† so P^{-1} = V diag(1/s) U^† is exact.
struct Planted {
  CMatrix a, drazin;
  std::size_t index;
};

Planted planted(std::size_t nil, std::size_t core, std::mt19937_64& rng) {
  const std::size_t n = nil + core;
  std::uniform_real_distribution<double> mag(0.5, 1.5), ph(0.0, 6.283185307179586);
  const CMatrix u = haar_unitary(n, rng), v = haar_unitary(n, rng);
  std::vector<double> s(n), sinv(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = mag(rng);
    sinv[i] = 1.0 / s[i];
  }
  const CMatrix p = u * CMatrix::diag(std::span<const double>(s)) * dagger(v);
  const CMatrix pinv_exact = v * CMatrix::diag(std::span<const double>(sinv)) * dagger(u);
  CMatrix mid(n, n), mid_d(n, n);
  for (std::size_t i = 0; i + 1 < nil; ++i) mid(i, i + 1) = std::polar(mag(rng), ph(rng));
  for (std::size_t i = nil; i < n; ++i) {
    const cplx lam = std::polar(mag(rng), ph(rng));
    mid(i, i) = lam;
    mid_d(i, i) = 1.0 / lam;
  }
  return {p * mid * pinv_exact, p * mid_d * pinv_exact, nil == 0 ? 0 : nil};
}

TEST(ParseInverseKind, Spellings) {
  EXPECT_EQ(parse_inverse_kind("mp"), InverseKind::moore_penrose);
  EXPECT_EQ(parse_inverse_kind("moore_penrose"), InverseKind::moore_penrose);
  EXPECT_EQ(parse_inverse_kind("drazin"), InverseKind::drazin);
  EXPECT_EQ(parse_inverse_kind("group"), InverseKind::group);
  EXPECT_EQ(parse_inverse_kind("dagger-drazin"), InverseKind::dagger_drazin);
  EXPECT_THROW(parse_inverse_kind("inverse"), InvalidArgument);
}

TEST(MpInverse, Examples) {
  EXPECT_MAT_NEAR(mp_inverse(CMatrix::diag({2.0, 0.0})).inverse, CMatrix::diag({0.5, 0.0}), 1e-15);
  std::mt19937_64 rng(1);
  const CMatrix u = haar_unitary(3, rng);
  EXPECT_MAT_NEAR(mp_inverse(u).inverse, dagger(u), 1e-12);
  const GinvReport col = mp_inverse(CMatrix{{1.0}, {1.0}});
  EXPECT_MAT_NEAR(col.inverse, (CMatrix{{0.5, 0.5}}), 1e-15);
}

TEST(MpInverse, LeastSquaresClosedForm) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    const CMatrix m = random_matrix(5, 3, rng);
    // (m^† m)^{-1} m^†, with the Gram inverse taken from its eigendecomposition.
    const CMatrix g = dagger(m) * m;
    const EighResult e = eigh(g);
    std::vector<double> inv_l(3);
    for (int i = 0; i < 3; ++i) inv_l[i] = 1.0 / e.eigenvalues[i];
    const CMatrix g_inv = e.eigenvectors * CMatrix::diag(std::span<const double>(inv_l)) * dagger(e.eigenvectors);
    EXPECT_MAT_NEAR(mp_inverse(m).inverse, g_inv * dagger(m), 1e-10);
  }
}

#ifdef GINVQ_HAVE_EIGEN
TEST(MpInverse, MatchesEigenOracle) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t r = 1 + t % 6, c = 1 + (t / 6) % 6;
    const CMatrix m = testing::random_rank(r, c, t % 4, rng);
    EXPECT_MAT_NEAR(mp_inverse(m).inverse, testing::eigen_pinv(m, 1e-9), 1e-9) << r << "x" << c;
  }
}
#endif

TEST(MpInverse, AxiomsAndInvolution) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const CMatrix m = testing::random_rank(4, 3, t % 4, rng);
    const GinvReport r = mp_inverse(m);
    EXPECT_EQ(r.residuals.size(), 4u);
    EXPECT_LE(r.max_residual(), 1e-10);
    EXPECT_MAT_NEAR(mp_inverse(r.inverse).inverse, m, 1e-10);
  }
}

TEST(DrazinIndex, Examples) {
  EXPECT_EQ(drazin_index(CMatrix::diag({2.0, 3.0})), 0u);
  EXPECT_EQ(drazin_index(kNil), 2u);
  EXPECT_EQ(drazin_index(CMatrix::diag({1.0, 0.0})), 1u);
  EXPECT_EQ(drazin_index(CMatrix(3, 3)), 1u);
  EXPECT_THROW(drazin_index(CMatrix(2, 3)), DimensionError);
}

TEST(DrazinInverse, Examples) {
  const DrazinResult id = drazin_inverse(CMatrix::identity(3));
  EXPECT_EQ(id.index, 0u);
  EXPECT_MAT_NEAR(id.inverse, CMatrix::identity(3), 1e-15);

  const DrazinResult nil = drazin_inverse(kNil);
  EXPECT_EQ(nil.index, 2u);
  EXPECT_EQ(fro_norm(nil.inverse), 0.0);
  EXPECT_LE(max_residual(nil.residuals), 1e-15);

  const DrazinResult d = drazin_inverse(CMatrix::diag({2.0, 0.0}));
  EXPECT_EQ(d.index, 1u);
  EXPECT_MAT_NEAR(d.inverse, CMatrix::diag({0.5, 0.0}), 1e-15);
  EXPECT_THROW(drazin_inverse(CMatrix(2, 1)), DimensionError);
}

TEST(DrazinInverse, ZeroAndEmpty) {
  EXPECT_EQ(drazin_inverse(CMatrix(4, 4)).inverse, CMatrix(4, 4));
  const DrazinResult e = drazin_inverse(CMatrix());
  EXPECT_TRUE(e.inverse.empty());
}

TEST(DrazinInverse, PlantedCoreNilpotentOracle) {
  std::mt19937_64 rng(5);
  for (std::size_t nil = 0; nil <= 4; ++nil)
    for (std::size_t core = 0; core <= 4; ++core) {
      if (nil + core == 0) continue;
      const Planted p = planted(nil, core, rng);
      const DrazinResult r = drazin_inverse(p.a);
      EXPECT_EQ(r.index, p.index) << nil << "+" << core;
      EXPECT_MAT_NEAR(r.inverse, p.drazin, 1e-8) << nil << "+" << core;
      EXPECT_EQ(r.residuals.size(), 3u);
    }
}

TEST(DrazinInverse, UniquenessUnderPerturbation) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const Planted p = planted(1 + t % 3, 1 + t % 4, rng);
    const DrazinResult r = drazin_inverse(p.a);
    const CMatrix bumped = r.inverse + random_matrix(p.a.rows(), p.a.cols(), rng) * cplx{1e-6};
    EXPECT_GT(max_residual(verify_axioms(InverseKind::drazin, p.a, bumped).residuals), 1e-10);
  }
}

TEST(DrazinInverse, DoubleDrazinLaw) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 10; ++t) {
    const Planted p = planted(t % 4, 1 + t % 3, rng);
    const CMatrix ad = drazin_inverse(p.a).inverse;
    EXPECT_MAT_NEAR(drazin_inverse(ad).inverse, p.a * ad * p.a, 1e-8);
  }
}

TEST(DrazinInverse, UnitaryConjugation) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const Planted p = planted(t % 3, 2, rng);
    const CMatrix u = haar_unitary(p.a.rows(), rng);
    EXPECT_MAT_NEAR(drazin_inverse(u * p.a * dagger(u)).inverse, u * drazin_inverse(p.a).inverse * dagger(u), 1e-8);
  }
}

TEST(GroupInverse, Examples) {
  EXPECT_MAT_NEAR(group_inverse(CMatrix::diag({1.0, 0.0})).inverse, CMatrix::diag({1.0, 0.0}), 1e-15);
  try {
    group_inverse(kNil);
    FAIL() << "expected IndexTooLarge";
  } catch (const IndexTooLarge& e) {
    EXPECT_EQ(e.index(), 2u);
  }
  const CMatrix a{{2.0, 1.0}, {0.0, 4.0}};
  const GinvReport g = group_inverse(a);
  EXPECT_MAT_NEAR(g.inverse, (CMatrix{{0.5, -0.125}, {0.0, 0.25}}), 1e-14);
  EXPECT_EQ(g.index, std::optional<std::size_t>(0));
  EXPECT_TRUE(g.residuals.count("G1") && g.residuals.count("G2") && g.residuals.count("G3"));
  EXPECT_LE(*g.double_inverse_residual, 1e-12);
}

TEST(DaggerDrazin, Examples) {
  std::mt19937_64 rng(9);
  const CMatrix u = haar_unitary(3, rng);
  EXPECT_MAT_NEAR(dagger_drazin(u).inverse, dagger(u), 1e-12);
  for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}, {3, 2}, {0, 0}, {0, 2}}) {
    const GinvReport z = dagger_drazin(CMatrix(r, c));
    EXPECT_EQ(z.inverse, CMatrix(c, r));
  }
  const CMatrix d = CMatrix::diag({2.0, 0.0});
  EXPECT_MAT_NEAR(dagger_drazin(d).inverse, CMatrix::diag({0.5, 0.0}), 1e-15);
}

TEST(DaggerDrazin, AgreesWithMpAndFormulas) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const CMatrix f = testing::random_rank(1 + t % 4, 1 + (t / 4) % 4, t % 3, rng) * cplx{0.7};
    const GinvReport r = dagger_drazin(f);
    EXPECT_LE(*r.formula_gap, 1e-8);
    EXPECT_EQ(r.residuals.size(), 4u);
    EXPECT_MAT_NEAR(r.inverse, mp_inverse(f).inverse, 1e-8);
  }
}

TEST(Hermitian, AllInversesCoincide) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + t % 5;
    const CMatrix u = haar_unitary(n, rng);
    std::vector<double> lam(n);
    for (std::size_t i = 0; i < n; ++i) lam[i] = i % 2 ? 0.0 : 0.5 + 0.25 * static_cast<double>(i);
    const CMatrix h = u * CMatrix::diag(std::span<const double>(lam)) * dagger(u);
    const CMatrix mp = mp_inverse(h).inverse;
    EXPECT_MAT_NEAR(mp, drazin_inverse(h).inverse, 1e-8);
    EXPECT_MAT_NEAR(mp, dagger_drazin(h).inverse, 1e-8);
  }
}

TEST(DaggerDrazin, GramIdentities) {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const CMatrix f = testing::random_rank(3, 2 + t % 3, 1 + t % 2, rng) * cplx{0.5};
    const CMatrix fd = dagger(f);
    const CMatrix a = dagger_drazin(f).inverse, b = dagger_drazin(fd).inverse;
    EXPECT_MAT_NEAR(drazin_inverse(fd * f).inverse, a * b, 1e-8);
    EXPECT_MAT_NEAR(drazin_inverse(f * fd).inverse, b * a, 1e-8);
  }
}

TEST(VerifyAxioms, Examples) {
  const AxiomCheck mp = verify_axioms(InverseKind::moore_penrose, CMatrix::diag({2.0, 0.0}), CMatrix::diag({0.5, 0.0}));
  for (const auto& [label, v] : mp.residuals) EXPECT_EQ(v, 0.0) << label;
  const AxiomCheck dz = verify_axioms(InverseKind::drazin, CMatrix::identity(2), CMatrix::identity(2));
  EXPECT_EQ(dz.k, std::optional<std::size_t>(0));
  for (const auto& [label, v] : dz.residuals) EXPECT_EQ(v, 0.0) << label;
  const AxiomCheck pi = verify_axioms(InverseKind::moore_penrose, kNil, dagger(kNil));
  for (const auto& [label, v] : pi.residuals) EXPECT_EQ(v, 0.0) << label;
  EXPECT_THROW(verify_axioms(InverseKind::moore_penrose, CMatrix(2, 3), CMatrix(2, 3)), DimensionError);
}

TEST(VerifyAxioms, LabelsMatchKind) {
  const CMatrix a = CMatrix::diag({1.0, 0.0});
  auto labels = [&](InverseKind k) {
    std::vector<std::string> out;
    for (const auto& [l, _] : verify_axioms(k, a, a).residuals) out.push_back(l);
    return out;
  };
  EXPECT_EQ(labels(InverseKind::moore_penrose), (std::vector<std::string>{"MP1", "MP2", "MP3", "MP4"}));
  EXPECT_EQ(labels(InverseKind::drazin), (std::vector<std::string>{"D1", "D2", "D3"}));
  EXPECT_EQ(labels(InverseKind::group), (std::vector<std::string>{"G1", "G2", "G3"}));
  EXPECT_EQ(labels(InverseKind::dagger_drazin), (std::vector<std::string>{"Dd1", "Dd2", "Dd3", "Dd4"}));
}

TEST(IsMpOfDaggerDrazin, Examples) {
  std::mt19937_64 rng(13);
  const MpDaggerCheck u = is_mp_of_dagger_drazin(haar_unitary(3, rng));
  EXPECT_TRUE(u.holds);
  EXPECT_LE(u.involution_residual, 1e-12);
  EXPECT_TRUE(is_mp_of_dagger_drazin(random_matrix(3, 2, rng)).holds);
  const MpDaggerCheck n = is_mp_of_dagger_drazin(kNil);
  EXPECT_TRUE(n.holds);
  EXPECT_MAT_NEAR(dagger_drazin(kNil).inverse, dagger(kNil), 1e-15);
}

TEST(GeneralizedInverse, Dispatch) {
  const CMatrix a = CMatrix::diag({2.0, 0.0});
  for (InverseKind k : {InverseKind::moore_penrose, InverseKind::drazin, InverseKind::group, InverseKind::dagger_drazin}) {
    const GinvReport r = generalized_inverse(k, a);
    EXPECT_EQ(r.kind, k);
    EXPECT_MAT_NEAR(r.inverse, CMatrix::diag({0.5, 0.0}), 1e-15);
  }
}

}  // namespace
}  // namespace ginvq
