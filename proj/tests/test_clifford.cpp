#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "knomial/clifford.hpp"

using namespace knomial;

namespace {

Vector random_vector(long long N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(N);
  for (long long i = 0; i < N; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

// c with a = c b, read off the largest entry of b.
cplx proportionality(const Matrix& a, const Matrix& b) {
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  return a(r, c) / b(r, c);
}

SL2 coprime_beta_sample(long long nbar, std::mt19937_64& rng) {
  for (;;) {
    const SL2 f = random_symplectic(nbar, rng);
    if (coprime(f.beta(), nbar)) return f;
  }
}

double covariance_error(const Dim& d, const SL2& f, const Matrix& u) {
  double worst = 0.0;
  for (long long p1 = 0; p1 < d.N; ++p1)
    for (long long p2 = 0; p2 < d.N; ++p2) {
      const Matrix lhs = u * displacement(d, {p1, p2}).mat * u.adjoint();
      worst = std::max(worst, max_abs_diff(lhs, displacement(d, f * PVec{p1, p2}).mat));
    }
  return worst;
}

}  // namespace

TEST(SymplecticUnitary, FourierAtN2) {
  const Dim d = make_dim(2);
  const Matrix u = symplectic_unitary(d, SL2(0, -1, 1, 0, 4)).mat;
  // beta^{-1} = 3 mod 4, alpha = delta = 0: entries tau^{-6 u v} / sqrt 2.
  Matrix expect(2, 2);
  expect << 1, 1, 1, -1;
  EXPECT_LT(max_abs_diff(u, expect / std::sqrt(2.0)), 1e-15);
}

TEST(SymplecticUnitary, IdentityIsScalar) {
  for (long long N : {2, 3, 6, 8, 12}) {
    const Dim d = make_dim(N);
    const Matrix u = symplectic_unitary(d, SL2::identity(d.Nbar)).mat;
    const cplx c = u(0, 0);
    EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
    EXPECT_LT(max_abs_diff(u, c * Matrix::Identity(N, N)), 1e-12) << N;
  }
}

TEST(SymplecticUnitary, Errors) {
  const Dim d = make_dim(8);
  EXPECT_THROW(symplectic_unitary(d, SL2::J(16)), InvalidArgument);
  EXPECT_THROW(symplectic_unitary(d, zauner_matrix(8)), DimMismatch);
  EXPECT_THROW(antisymplectic_antiunitary(d, zauner_matrix(16)), NotAntisymplectic);
}

TEST(SymplecticUnitary, HadamardModuli) {
  std::mt19937_64 rng(4);
  for (long long N : {3, 5, 8, 12, 16}) {
    const Dim d = make_dim(N);
    for (int i = 0; i < 20; ++i) {
      SL2 f = random_symplectic(d.Nbar, rng);
      if (!coprime(f.beta(), d.Nbar)) continue;
      const Matrix u = symplectic_unitary(d, f).mat;
      EXPECT_LT((u.cwiseAbs().array() - 1.0 / std::sqrt(static_cast<double>(N))).abs().maxCoeff(), 1e-12);
    }
  }
}

TEST(SymplecticUnitary, Covariance) {
  std::mt19937_64 rng(6);
  for (long long N : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 16, 28}) {
    const Dim d = make_dim(N);
    int non_coprime = 0;
    for (int i = 0; i < 30; ++i) {
      // Every third sample is pushed to a non-unit beta.
      SL2 f = random_symplectic(d.Nbar, rng);
      if (i % 3 == 0) f = SL2(1, 0, f.gamma(), 1, d.Nbar);
      non_coprime += !coprime(f.beta(), d.Nbar);
      const Matrix u = symplectic_unitary(d, f).mat;
      EXPECT_TRUE(is_unitary(u, 1e-10));
      ASSERT_LT(covariance_error(d, f, u), 1e-9) << N << " " << f.str();
    }
    EXPECT_GT(non_coprime, 0);
  }
}

TEST(AntiUnitary, Examples) {
  const Dim d = make_dim(8);
  const AntiU j = antisymplectic_antiunitary(d, SL2::J(16));
  EXPECT_TRUE(j.conj);
  EXPECT_LT(max_abs_diff(j.mat, j.mat(0, 0) * Matrix::Identity(8, 8)), 1e-12);

  const SL2 K{0, 1, 1, 0, 16};
  EXPECT_EQ(K * SL2::J(16), SL2(0, -1, 1, 0, 16));
  const AntiU uk = antisymplectic_antiunitary(d, K);
  EXPECT_LT(max_abs_diff(uk.mat, symplectic_unitary(d, SL2(0, -1, 1, 0, 16)).mat), 1e-15);

  std::mt19937_64 rng(8);
  const Vector v = random_vector(8, rng);
  const Vector twice = uk.apply(uk.apply(v));
  const cplx c = v.dot(twice);
  EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
  EXPECT_LT((twice - c * v).norm(), 1e-12);
}

TEST(AntiUnitary, CompositionAndInverse) {
  std::mt19937_64 rng(10);
  const Dim d = make_dim(6);
  for (int i = 0; i < 10; ++i) {
    const AntiU a = clifford_operator(d, random_antisymplectic(d.Nbar, rng));
    const AntiU b = clifford_operator(d, random_symplectic(d.Nbar, rng));
    const Vector v = random_vector(6, rng);
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}, std::pair{a, a}}) {
      const AntiU xy = x.compose(y);
      EXPECT_EQ(xy.conj, x.conj != y.conj);
      EXPECT_LT((xy.apply(v) - x.apply(y.apply(v))).norm(), 1e-12);
    }
    EXPECT_LT((a.inverse().apply(a.apply(v)) - v).norm(), 1e-12);
    EXPECT_LT((b.inverse().apply(b.apply(v)) - v).norm(), 1e-12);
  }
}

TEST(AntiUnitary, AntiCovariance) {
  std::mt19937_64 rng(12);
  for (long long N : {2, 5, 8, 12}) {
    const Dim d = make_dim(N);
    for (int i = 0; i < 30; ++i) {
      const SL2 f = random_antisymplectic(d.Nbar, rng);
      const AntiU a = antisymplectic_antiunitary(d, f);
      const AntiU ainv = a.inverse();
      std::uniform_int_distribution<long long> u(0, d.Nbar - 1);
      const PVec p{u(rng), u(rng)};
      const Matrix dp = displacement(d, p).mat, dfp = displacement(d, f * p).mat;
      const Vector v = random_vector(N, rng);
      const Vector lhs = a.apply(dp * ainv.apply(v));
      const Vector rhs = dfp * v;
      const cplx c = rhs.dot(lhs);
      EXPECT_NEAR(std::abs(c), 1.0, 1e-10);
      EXPECT_LT((lhs - c * rhs).norm(), 1e-10);
    }
  }
}

TEST(KnomialIndex, AntiUnitaryAction) {
  const Dim d2 = make_dim(8), d3 = make_dim(9);
  EXPECT_EQ(antiunitary_on_knomial_index(d2, {0, 1, 1}), (KIndex{0, 1, 1}));
  EXPECT_EQ(antiunitary_on_knomial_index(d2, {1, 0, 1}), (KIndex{1, 0, 1}));
  EXPECT_EQ(antiunitary_on_knomial_index(d3, {1, 2, 0}), (KIndex{2, 2, 0}));
  // Cross-check: complex conjugation of |r,s,j> in the standard basis.
  const Dim d = make_dim(18);
  for (long long i = 0; i < d.N; ++i) {
    const KIndex idx = kindex_from_linear(d, i);
    EXPECT_LT((knomial_vector(d, idx).vec.conjugate() -
               knomial_vector(d, antiunitary_on_knomial_index(d, idx)).vec)
                  .norm(),
              1e-14);
  }
}

TEST(BlockFormula, MonomialWhenKIsOne) {
  const Dim d = make_dim(9);
  const Matrix b = block_matrix_formula(d, SL2(2, 1, 1, 1, 9), {1, 2});
  ASSERT_EQ(b.rows(), 1);
  EXPECT_NEAR(std::abs(b(0, 0)), 1.0, 1e-15);
  EXPECT_THROW(block_matrix_formula(d, SL2::identity(9), {0, 0}), BetaNotCoprime);
}

TEST(BlockFormula, MatchesRealizedBlocks) {
  std::mt19937_64 rng(14);
  for (long long N : {8, 12, 18}) {
    const Dim d = make_dim(N);
    const double ik = 1.0 / std::sqrt(static_cast<double>(d.k));
    for (int i = 0; i < 20; ++i) {
      const SL2 f = coprime_beta_sample(d.Nbar, rng);
      const BlockMap bm = block_structure(to_knomial(symplectic_unitary(d, f), d), d);
      for (long long b = 0; b < d.n * d.n; ++b) {
        const RS src = block_label(d, b);
        const Matrix formula = block_matrix_formula(d, f, src);
        EXPECT_LT((formula.cwiseAbs().array() - ik).abs().maxCoeff(), 1e-12);
        // Realized blocks are indexed (target j', source j).
        const Matrix realized = bm.block(src);
        const cplx c = proportionality(realized, formula.transpose());
        EXPECT_NEAR(std::abs(c), 1.0, 1e-12);
        EXPECT_LT(max_abs_diff(realized, c * formula.transpose()), 1e-12);
        // With the fixed phase convention the scalar is the same for all
        // blocks, and equals 1.
        EXPECT_LT(std::abs(c - 1.0), 1e-12) << N << " " << f.str();
      }
    }
  }
}

TEST(BlockFormula, ZaunerBlocksAreHadamard) {
  const Dim d = make_dim(8);
  const SL2 fz = zauner_matrix(16);
  for (long long b = 0; b < 4; ++b) {
    const Matrix m = block_matrix_formula(d, fz, block_label(d, b)) * std::sqrt(2.0);
    EXPECT_LT((m.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-14);
    EXPECT_LT(unitarity_defect(m / std::sqrt(2.0)), 1e-14);
  }
}

TEST(Assemble, MatchesRealizedOperator) {
  std::mt19937_64 rng(15);
  for (long long N : {4, 8, 12, 18}) {
    const Dim d = make_dim(N);
    for (int i = 0; i < 20; ++i) {
      const SL2 f = random_symplectic(d.Nbar, rng);
      const CMat a = assemble_knomial(d, f);
      EXPECT_EQ(a.basis, Basis::knomial);
      EXPECT_TRUE(is_unitary(a.mat, 1e-10));
      const CMat realized = to_knomial(symplectic_unitary(d, f), d);
      EXPECT_LT(max_abs_diff(a.mat, realized.mat), 1e-10) << N << " " << f.str();
      EXPECT_EQ(block_structure(a, d).perm, block_structure(realized, d).perm);
    }
  }
}

TEST(Assemble, IdentityIsBlockScalar) {
  const Dim d = make_dim(12);
  const CMat a = assemble_knomial(d, SL2::identity(24));
  const BlockMap bm = block_structure(a, d);
  for (long long b = 0; b < 4; ++b) {
    EXPECT_EQ(bm.perm[static_cast<std::size_t>(b)], block_label(d, b));
    const Matrix& blk = bm.blocks[static_cast<std::size_t>(b)];
    EXPECT_LT(max_abs_diff(blk, blk(0, 0) * Matrix::Identity(3, 3)), 1e-12);
  }
}

TEST(Assemble, ProjectiveProduct) {
  std::mt19937_64 rng(16);
  for (long long N : {8, 12}) {
    const Dim d = make_dim(N);
    for (int i = 0; i < 10; ++i) {
      const SL2 f = random_symplectic(d.Nbar, rng), g = random_symplectic(d.Nbar, rng);
      const Matrix lhs = assemble_knomial(d, f).mat * assemble_knomial(d, g).mat;
      const Matrix rhs = assemble_knomial(d, f * g).mat;
      const cplx c = proportionality(lhs, rhs);
      EXPECT_NEAR(std::abs(c), 1.0, 1e-10);
      EXPECT_LT(max_abs_diff(lhs, c * rhs), 1e-10);
    }
  }
}

TEST(ProjectiveOrder, Examples) {
  EXPECT_EQ(projective_order(Matrix::Identity(5, 5)), 1);
  for (long long N = 2; N <= 12; ++N) {
    const Dim d = make_dim(N);
    EXPECT_EQ(projective_order(symplectic_unitary(d, zauner_matrix(d.Nbar)).mat), 3) << N;
  }
  const Dim d8 = make_dim(8);
  const AntiU ua = antisymplectic_antiunitary(d8, SL2(1, 5, -5, 6, 16));
  EXPECT_EQ(projective_order(ua), 12);
  EXPECT_THROW(projective_order(ua, 11), CapExceeded);
  EXPECT_EQ(projective_order(antisymplectic_antiunitary(d8, SL2::J(16))), 2);
}

TEST(ProjectiveOrder, PhaseIndependent) {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  const Dim d = make_dim(8);
  for (int i = 0; i < 10; ++i) {
    const AntiU u = clifford_operator(d, random_antisymplectic(16, rng));
    const cplx ph = std::polar(1.0, ang(rng));
    EXPECT_EQ(projective_order(u), projective_order(AntiU{ph * u.mat, u.conj}));
    const Matrix s = symplectic_unitary(d, random_symplectic(16, rng)).mat;
    EXPECT_EQ(projective_order(s), projective_order(Matrix(ph * s)));
  }
}

TEST(UnitaryCache, ConcurrentReaders) {
  UnitaryCache cache;
  const Dim d = make_dim(12);
  const SL2 fz = zauner_matrix(24);
  std::vector<std::shared_ptr<const Matrix>> got(8);
  {
    std::vector<std::jthread> ts;
    for (int i = 0; i < 8; ++i) ts.emplace_back([&, i] { got[static_cast<std::size_t>(i)] = cache.get(d, fz); });
  }
  EXPECT_EQ(cache.size(), 1u);
  for (const auto& g : got) EXPECT_EQ(g, got[0]);
  EXPECT_LT(max_abs_diff(*got[0], symplectic_unitary(d, fz).mat), 1e-300);
}
