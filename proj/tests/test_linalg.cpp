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
const cplx I1{0.0, 1.0};

TEST(CMatrix, ConstructionAndShape) {
  const CMatrix m{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  EXPECT_EQ(m.rows(), 2u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m(1, 2), cplx(6.0));
  EXPECT_FALSE(m.is_square());
  EXPECT_TRUE(CMatrix().empty());
  EXPECT_THROW(CMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
  EXPECT_THROW(CMatrix(1, 1, {cplx{std::nan(""), 0.0}}), NumericError);
  EXPECT_THROW((CMatrix{{1.0, 2.0}, {3.0}}), DimensionError);
}

TEST(Dagger, Examples) {
  EXPECT_EQ(dagger(CMatrix{{I1}}), CMatrix{{-I1}});
  EXPECT_EQ(dagger(CMatrix::identity(3)), CMatrix::identity(3));
  EXPECT_EQ(dagger(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), (CMatrix{{0.0, 0.0}, {1.0, 0.0}}));
}

TEST(Dagger, InvolutionAndAntihomomorphismExact) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const CMatrix a = random_matrix(3, 4, rng), b = random_matrix(4, 2, rng);
    EXPECT_EQ(dagger(dagger(a)), a);
    EXPECT_MAT_NEAR(dagger(a * b), dagger(b) * dagger(a), 1e-13);
  }
}

TEST(Matmul, Examples) {
  std::mt19937_64 rng(2);
  const CMatrix m = random_matrix(3, 3, rng);
  EXPECT_EQ(CMatrix::identity(3) * m, m);
  const CMatrix n{{0.0, 1.0}, {0.0, 0.0}};
  EXPECT_EQ(n * n, CMatrix(2, 2));
  EXPECT_EQ(CMatrix::diag({2.0, 3.0}) * CMatrix::diag({5.0, 7.0}), CMatrix::diag({10.0, 21.0}));
  EXPECT_THROW(CMatrix(2, 3) * CMatrix(2, 3), DimensionError);
}

TEST(Kron, Examples) {
  EXPECT_EQ(kron(CMatrix::identity(2), CMatrix::identity(3)), CMatrix::identity(6));
  EXPECT_EQ(kron(CMatrix::diag({1.0, 2.0}), CMatrix::diag({1.0, 3.0})), CMatrix::diag({1.0, 3.0, 2.0, 6.0}));
  const CMatrix k = kron(CMatrix(2, 2), CMatrix(2, 2));
  EXPECT_EQ(k.rows(), 4u);
  EXPECT_EQ(k.cols(), 4u);
}

TEST(Kron, MixedProduct) {
  std::mt19937_64 rng(3);
  const CMatrix a = random_matrix(2, 3, rng), b = random_matrix(3, 2, rng);
  const CMatrix c = random_matrix(3, 2, rng), d = random_matrix(2, 4, rng);
  EXPECT_MAT_NEAR(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12);
}

TEST(FroDist, Examples) {
  std::mt19937_64 rng(4);
  const CMatrix m = random_matrix(3, 2, rng);
  EXPECT_EQ(fro_dist(m, m), 0.0);
  EXPECT_DOUBLE_EQ(fro_dist(CMatrix::identity(2), CMatrix(2, 2)), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(fro_dist(CMatrix::diag({1.0, 0.0}), CMatrix::diag({0.0, 1.0})), std::sqrt(2.0));
  EXPECT_THROW(fro_dist(CMatrix(2, 2), CMatrix(2, 3)), DimensionError);
}

TEST(Matpow, Examples) {
  std::mt19937_64 rng(5);
  const CMatrix a = random_matrix(3, 3, rng);
  EXPECT_EQ(matpow(a, 0), CMatrix::identity(3));
  EXPECT_EQ(matpow(CMatrix{{0.0, 1.0}, {0.0, 0.0}}, 2), CMatrix(2, 2));
  EXPECT_EQ(matpow(CMatrix::diag({2.0}), 10), CMatrix::diag({1024.0}));
  EXPECT_MAT_NEAR(matpow(a, 5), a * a * a * a * a, 1e-10 * fro_norm(matpow(a, 5)));
  EXPECT_THROW(matpow(CMatrix(2, 3), 2), DimensionError);
}

TEST(Svd, Examples) {
  const SvdFactors f = svd(CMatrix::diag({3.0, 0.0}));
  EXPECT_DOUBLE_EQ(f.singular_values[0], 3.0);
  EXPECT_DOUBLE_EQ(f.singular_values[1], 0.0);

  std::mt19937_64 rng(6);
  for (double s : svd(haar_unitary(4, rng)).singular_values) EXPECT_NEAR(s, 1.0, 1e-12);

  const SvdFactors n = svd(CMatrix{{0.0, 1.0}, {0.0, 0.0}});
  EXPECT_NEAR(n.singular_values[0], 1.0, 1e-15);
  EXPECT_NEAR(n.singular_values[1], 0.0, 1e-15);
}

TEST(Svd, ReconstructionUpTo64) {
  std::mt19937_64 rng(7);
  for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{
           {1, 1}, {5, 3}, {3, 5}, {8, 8}, {16, 9}, {33, 64}, {64, 64}}) {
    const CMatrix m = random_matrix(r, c, rng);
    const SvdFactors f = svd(m);
    EXPECT_LE(fro_dist(f.reconstruct(), m), 1e-8) << r << "x" << c;
    EXPECT_LE(fro_dist(dagger(f.u) * f.u, CMatrix::identity(f.u.cols())), 1e-10);
    EXPECT_LE(fro_dist(dagger(f.v) * f.v, CMatrix::identity(f.v.cols())), 1e-10);
    EXPECT_TRUE(std::is_sorted(f.singular_values.rbegin(), f.singular_values.rend()));
  }
}

TEST(Svd, RankDeficientAndZero) {
  std::mt19937_64 rng(8);
  const CMatrix m = testing::random_rank(6, 5, 2, rng);
  const SvdFactors f = svd(m);
  EXPECT_LE(fro_dist(f.reconstruct(), m), 1e-10);
  EXPECT_LE(fro_dist(dagger(f.u) * f.u, CMatrix::identity(5)), 1e-10);
  const SvdFactors z = svd(CMatrix(3, 2));
  for (double s : z.singular_values) EXPECT_EQ(s, 0.0);
  EXPECT_LE(fro_dist(dagger(z.u) * z.u, CMatrix::identity(2)), 1e-12);
}

#ifdef GINVQ_HAVE_EIGEN
TEST(Svd, MatchesEigenOracle) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t) {
    const CMatrix m = random_matrix(2 + t % 5, 1 + t % 7, rng);
    Eigen::JacobiSVD<testing::EMat> oracle(testing::to_eigen(m));
    const auto mine = svd(m).singular_values;
    ASSERT_EQ(static_cast<Eigen::Index>(mine.size()), oracle.singularValues().size());
    for (std::size_t i = 0; i < mine.size(); ++i) EXPECT_NEAR(mine[i], oracle.singularValues()(i), 1e-10);
  }
}

TEST(Eigh, MatchesEigenOracle) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    const CMatrix h = testing::random_hermitian(1 + t % 9, rng);
    Eigen::SelfAdjointEigenSolver<testing::EMat> oracle(testing::to_eigen(h));
    const auto mine = eigh(h).eigenvalues;
    for (std::size_t i = 0; i < mine.size(); ++i) EXPECT_NEAR(mine[i], oracle.eigenvalues()(i), 1e-10);
  }
}
#endif

TEST(Eigh, Examples) {
  const auto d = eigh(CMatrix::diag({1.0, 2.0})).eigenvalues;
  EXPECT_EQ(d, (std::vector<double>{1.0, 2.0}));
  const auto x = eigh(CMatrix{{0.0, 1.0}, {1.0, 0.0}}).eigenvalues;
  EXPECT_NEAR(x[0], -1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
  const CMatrix omega = vec(CMatrix::identity(2)) * cplx{1.0 / std::sqrt(2.0)};
  const auto p = eigh(omega * dagger(omega)).eigenvalues;
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(p[i], 0.0, 1e-15);
  EXPECT_NEAR(p[3], 1.0, 1e-15);
}

TEST(Eigh, RecoversPlantedSpectrum) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {2u, 5u, 8u, 12u}) {
    const CMatrix u = haar_unitary(n, rng);
    std::vector<double> lam(n);
    std::uniform_real_distribution<double> ud(-3.0, 3.0);
    for (auto& l : lam) l = ud(rng);
    const CMatrix h = u * CMatrix::diag(std::span<const double>(lam)) * dagger(u);
    const EighResult r = eigh(h);
    std::sort(lam.begin(), lam.end());
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(r.eigenvalues[i], lam[i], 1e-8);
    EXPECT_LE(fro_dist(dagger(r.eigenvectors) * r.eigenvectors, CMatrix::identity(n)), 1e-10);
    std::vector<double> sorted = r.eigenvalues;
    EXPECT_LE(fro_dist(r.eigenvectors * CMatrix::diag(std::span<const double>(sorted)) * dagger(r.eigenvectors), h),
              1e-8);
  }
}

TEST(Eigh, RejectsNonHermitian) {
  EXPECT_THROW(eigh(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), NotHermitian);
  EXPECT_THROW(eigh(CMatrix(2, 3)), DimensionError);
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(CMatrix(3, 4)), 0u);
  EXPECT_EQ(rank(CMatrix::identity(5)), 5u);
  EXPECT_EQ(rank(CMatrix{{1.0, 1.0}, {1.0, 1.0}}), 1u);
  EXPECT_EQ(rank(CMatrix()), 0u);
}

TEST(Rank, InvariantUnderUnitaries) {
  std::mt19937_64 rng(12);
  for (std::size_t n = 2; n <= 16; n += 2) {
    for (std::size_t k : {std::size_t{0}, n / 2, n}) {
      const CMatrix m = testing::random_rank(n, n, k, rng);
      const CMatrix u = haar_unitary(n, rng), v = haar_unitary(n, rng);
      EXPECT_EQ(rank(m), k);
      EXPECT_EQ(rank(u * m * v), k);
    }
  }
}

TEST(Tolerances, Validate) {
  EXPECT_NO_THROW(Tolerances{}.validate());
  Tolerances t;
  t.psd_atol = 0.0;
  EXPECT_THROW(t.validate(), InvalidArgument);
}

TEST(Trace, Basics) {
  EXPECT_EQ(trace(CMatrix::identity(4)), cplx(4.0));
  EXPECT_THROW(trace(CMatrix(2, 3)), DimensionError);
}

}  // namespace
}  // namespace ginvq
