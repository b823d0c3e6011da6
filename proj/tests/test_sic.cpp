#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "knomial/sic_data.hpp"

using namespace knomial;

namespace {

Vector random_unit(long long N, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(N);
  for (long long i = 0; i < N; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

// Bloch vector (1,1,1)/sqrt3: <sigma_x>, <sigma_y>, <sigma_z> all 1/sqrt3.
Vector qubit_fiducial() {
  const double theta = std::acos(1.0 / std::sqrt(3.0));
  Vector v(2);
  v << std::cos(theta / 2), std::polar(std::sin(theta / 2), std::numbers::pi / 4);
  return v;
}

// Eigenvalue of the Zauner unitary on psi, or NaN when psi is not an
// eigenvector.
cplx zauner_eigenvalue(const Dim& d, const Vector& psi) {
  const auto [c, res] = eigen_residual(zauner_unitary(d).mat, psi);
  return res < 1e-9 ? c : cplx(std::nan(""), 0.0);
}

int eigenspace_containing(const std::vector<Eigenspace>& es, const Vector& psi) {
  for (std::size_t q = 0; q < es.size(); ++q) {
    if (es[q].dim() == 0) continue;
    const Vector proj = es[q].basis * (es[q].basis.adjoint() * psi);
    if ((proj - psi).norm() < 1e-9) return static_cast<int>(q);
  }
  return -1;
}

}  // namespace

TEST(SicDefect, Examples) {
  Vector e0 = Vector::Zero(8);
  e0(0) = 1.0;
  const FidCand f = sic_defect(e0);
  EXPECT_NEAR(f.defect, 8.0 / 9.0, 1e-15);
  EXPECT_EQ(f.overlaps.size(), 64u);
  EXPECT_NEAR(f.overlaps[1], 1.0, 1e-15);  // p = (0, 1)
  EXPECT_LT(sic_defect(qubit_fiducial()).defect, 1e-12);
}

TEST(SicDefect, Errors) {
  EXPECT_THROW(sic_defect(Vector(Vector::Ones(3))), NotNormalized);
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  EXPECT_THROW(sic_defect(CVec{v, Basis::knomial}), InvalidArgument);
  EXPECT_THROW(sic_defect(Vector(0)), InvalidArgument);
}

TEST(SicDefect, InvariantUnderDisplacement) {
  std::mt19937_64 rng(21);
  for (long long N : {3, 6, 8}) {
    const Dim d = make_dim(N);
    const Vector psi = random_unit(N, rng);
    const double base = sic_defect(psi).defect;
    std::uniform_int_distribution<long long> u(0, d.Nbar - 1);
    for (int i = 0; i < 10; ++i) {
      const Vector moved = displacement(d, {u(rng), u(rng)}).mat * psi;
      EXPECT_NEAR(sic_defect(moved).defect, base, 1e-12);
    }
  }
  const Vector fid = dim8_fiducial(Dim8Selector::s1_branch(1, 1, 1)).psi.vec;
  EXPECT_LT(sic_defect(Vector(displacement(8, 3, 5).mat * fid)).defect, 1e-12);
}

TEST(PovmResolution, AnyVectorResolvesIdentity) {
  std::mt19937_64 rng(22);
  EXPECT_LT(povm_resolution_check(CVec{qubit_fiducial(), Basis::standard}), 1e-10);
  EXPECT_LT(povm_resolution_check(CVec{random_unit(7, rng), Basis::standard}), 1e-12);
  EXPECT_LT(povm_resolution_check(dim8_fiducial(Dim8Selector::s0_branch(0)).psi), 1e-9);
}

TEST(Zauner, EigenspacesAtEight) {
  const Dim d = make_dim(8);
  const auto es = zauner_eigenspaces(d);
  ASSERT_EQ(es.size(), 3u);
  std::vector<long long> dims{es[0].dim(), es[1].dim(), es[2].dim()};
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<long long>{2, 3, 3}));
  for (int q = 0; q < 3; ++q) {
    const cplx ratio = es[static_cast<std::size_t>((q + 1) % 3)].eigenvalue / es[static_cast<std::size_t>(q)].eigenvalue;
    EXPECT_LT(std::abs(ratio - std::polar(1.0, 2 * std::numbers::pi / 3)), 1e-10);
  }
}

TEST(Zauner, EigenspacesGeneral) {
  for (long long N = 2; N <= 12; ++N) {
    const Dim d = make_dim(N);
    const Matrix u = zauner_unitary(d).mat;
    EXPECT_EQ(projective_order(u), 3);
    const auto es = zauner_eigenspaces(d);
    long long total = 0;
    for (const auto& e : es) {
      total += e.dim();
      if (e.dim() == 0) continue;
      const Matrix gram = e.basis.adjoint() * e.basis;
      EXPECT_LT(max_abs_diff(gram, Matrix::Identity(e.dim(), e.dim())), 1e-11);
      EXPECT_LT(max_abs(u * e.basis - e.eigenvalue * e.basis), 1e-10);
      const Matrix proj = e.basis * e.basis.adjoint();
      EXPECT_LT(max_abs(u * proj - proj * u), 1e-10);
    }
    EXPECT_EQ(total, N);
  }
  EXPECT_EQ(zauner_matrix(3).trace(), 2);
  EXPECT_THROW(zauner_eigenspaces(make_dim(65)), CapExceeded);
}

TEST(Dim8, SelectorValidation) {
  EXPECT_THROW(Dim8Selector::s1_branch(1, 0, 1), InvalidArgument);
  EXPECT_THROW(Dim8Selector::s0_branch(4), InvalidArgument);
  EXPECT_EQ(all_dim8_selectors().size(), 12u);
  EXPECT_THROW(dim8_orbit_S2(Dim8Selector::s0_branch(0)), InvalidArgument);
  EXPECT_EQ(Dim8Selector::s1_branch(1, 1, -1).str(), "S1(1,1,-1)");
}

TEST(Dim8, MatrixConstants) {
  EXPECT_EQ(sl2_pow(dim8_matrix_A(), 8), zauner_matrix(16));
  EXPECT_EQ(matrix_order(dim8_matrix_A()), 24);
  EXPECT_LT(std::abs(eta_pow(48 + 1) - std::exp(cplx(0, std::numbers::pi / 24))), 1e-15);
}

TEST(Dim8, AllFiducialsAreSics) {
  const double target = 1.0 / 9.0;
  for (const auto& sel : all_dim8_selectors()) {
    const FidCand f = dim8_fiducial(sel);
    EXPECT_LT(f.defect, 1e-9) << sel.str();
    EXPECT_EQ(f.meta.at("orbit"), sel.orbit == Dim8Orbit::S1 ? "8a" : "8b");
    for (std::size_t i = 1; i < f.overlaps.size(); ++i) EXPECT_NEAR(f.overlaps[i], target, 1e-9);
    if (sel.orbit == Dim8Orbit::S1) {
      const FidCand g = dim8_orbit_S2(sel);
      EXPECT_LT(g.defect, 1e-9) << sel.str();
      EXPECT_EQ(g.meta.at("eigenspace"), "S2");
    }
  }
}

TEST(Dim8, EigenspaceMembership) {
  const Dim d = make_dim(8);
  const auto es = zauner_eigenspaces(d);
  const Vector s0 = dim8_fiducial(Dim8Selector::s0_branch(0)).psi.vec;
  const cplx mu0 = zauner_eigenvalue(d, s0);
  ASSERT_FALSE(std::isnan(mu0.real()));
  EXPECT_EQ(es[static_cast<std::size_t>(eigenspace_containing(es, s0))].dim(), 2);

  const cplx eta16 = eta_pow(16);
  for (const auto& sel : all_dim8_selectors()) {
    const Vector psi = dim8_fiducial(sel).psi.vec;
    const cplx mu = zauner_eigenvalue(d, psi);
    ASSERT_FALSE(std::isnan(mu.real())) << sel.str();
    const int q = eigenspace_containing(es, psi);
    ASSERT_GE(q, 0);
    if (sel.orbit == Dim8Orbit::S0) {
      EXPECT_LT(std::abs(mu - mu0), 1e-9);
      continue;
    }
    EXPECT_EQ(es[static_cast<std::size_t>(q)].dim(), 3);
    EXPECT_LT(std::abs(mu / mu0 - eta16), 1e-9) << sel.str();
    const Vector img = dim8_orbit_S2(sel).psi.vec;
    const cplx mu2 = zauner_eigenvalue(d, img);
    ASSERT_FALSE(std::isnan(mu2.real()));
    EXPECT_LT(std::abs(mu2 / mu0 - eta16 * eta16), 1e-9) << sel.str();
    EXPECT_EQ(es[static_cast<std::size_t>(eigenspace_containing(es, img))].dim(), 3);

    // U_A twice lands back on an S1 ray.
    const AntiU ua = antisymplectic_antiunitary(d, dim8_matrix_A());
    const Vector back = ua.apply(ua.apply(psi));
    EXPECT_LT(std::abs(zauner_eigenvalue(d, back) / mu0 - eta16), 1e-9);
    EXPECT_LT(sic_defect(Vector(back.normalized())).defect, 1e-9);
  }
}

TEST(Dim8, S1FiducialsAreDistinctRays) {
  std::vector<Vector> s1;
  for (const auto& sel : all_dim8_selectors())
    if (sel.orbit == Dim8Orbit::S1) s1.push_back(dim8_fiducial(sel).psi.vec);
  ASSERT_EQ(s1.size(), 8u);
  for (std::size_t a = 0; a < s1.size(); ++a)
    for (std::size_t b = a + 1; b < s1.size(); ++b) EXPECT_LT(std::abs(s1[a].dot(s1[b])), 1.0 - 1e-6);
}

TEST(Dim8, OverlapMagnitudesAreFlat) {
  const FidCand f = dim8_fiducial(Dim8Selector::s0_branch(3));
  const auto [lo, hi] = std::minmax_element(f.overlaps.begin() + 1, f.overlaps.end());
  EXPECT_LT((std::sqrt(*hi) - std::sqrt(*lo)) / std::sqrt(*lo), 1e-6);
  EXPECT_NEAR(std::sqrt(*lo), 1.0 / 3.0, 1e-9);
}

TEST(Dim12, GeneratorAlgebra) {
  const Matrix x = dim12_X(), z = dim12_Z();
  // omega_12 = omega_24^2 in the same embedding.
  const cplx w12 = dim12_omega24() * dim12_omega24();
  EXPECT_LT(max_abs_diff(z * x, w12 * x * z), 1e-12);
  // The printed (row-vector) matrices satisfy the inverse relation.
  const Matrix xr = x.transpose(), zr = z.transpose();
  EXPECT_LT(max_abs_diff(zr * xr, std::conj(w12) * xr * zr), 1e-12);
  EXPECT_LT(max_abs_diff(matrix_power(x, 12), Matrix::Identity(12, 12)), 1e-12);
  EXPECT_LT(max_abs_diff(matrix_power(z, 12), Matrix::Identity(12, 12)), 1e-12);
  EXPECT_TRUE(is_unitary(x));
  EXPECT_TRUE(is_unitary(z));
  EXPECT_LT(std::abs(dim12_omega24() - std::exp(cplx(0, 7 * std::numbers::pi / 12))), 1e-15);
}

TEST(Dim12, RootsSolveTheCubic) {
  const auto t = dim12_t1_roots();
  for (double r : t) EXPECT_NEAR(r * r * r - 12 * r - 10, 0.0, 1e-12);
  EXPECT_LT(t[0], t[1]);
  EXPECT_LT(t[1], t[2]);
}

TEST(Dim12, SomeRootGivesAFiducial) {
  double best = 1.0;
  for (int r = 0; r < 3; ++r) {
    const FidCand f = dim12_fiducial_numeric(r);
    EXPECT_NEAR(f.psi.vec.norm(), 1.0, 1e-12);
    best = std::min(best, f.defect);
  }
  EXPECT_LT(best, 1e-8);
  EXPECT_THROW(dim12_fiducial_numeric(3), InvalidArgument);
}
