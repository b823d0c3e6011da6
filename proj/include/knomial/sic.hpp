#pragma once

// SIC fiducial verification and the eigenspaces of the Zauner unitary.
//
// A unit vector psi is a Weyl-Heisenberg SIC fiducial when
//   |<psi| D_p |psi>|^2 = 1/(N+1)   for every p != 0 (mod N).

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "knomial/clifford.hpp"
#include "knomial/heisenberg.hpp"

namespace knomial {

inline constexpr double kNormTolerance = 1e-12;

/// Candidate fiducial with its defect diagnostics.
struct FidCand {
  CVec psi;
  double defect = 0.0;
  PVec worst_p;
  /// |<psi|D_p psi>|^2 at index p1 * N + p2, p in Z_N^2.
  std::vector<double> overlaps;
  std::map<std::string, std::string> meta;

  long long dim() const { return psi.dim(); }
};

/// Overlap table and defect of psi. p ranges over Z_N^2.
inline FidCand sic_defect(const CVec& psi) {
  if (psi.basis != Basis::standard) throw InvalidArgument("sic_defect expects a standard-basis vector");
  const long long N = psi.dim();
  if (N < 1) throw InvalidArgument("empty vector");
  const double norm = psi.vec.norm();
  if (std::abs(norm - 1.0) >= kNormTolerance) {
    throw NotNormalized("vector norm " + std::to_string(norm) + " is not 1");
  }
  const Dim d = make_dim(N);
  const DisplacementAction act(d);
  const double target = 1.0 / static_cast<double>(N + 1);
  FidCand out;
  out.psi = psi;
  out.overlaps.assign(static_cast<std::size_t>(N * N), 0.0);
  for (long long p1 = 0; p1 < N; ++p1)
    for (long long p2 = 0; p2 < N; ++p2) {
      const double o = std::norm(act.expectation({p1, p2}, psi.vec));
      out.overlaps[static_cast<std::size_t>(p1 * N + p2)] = o;
      if (p1 == 0 && p2 == 0) continue;
      if (const double dev = std::abs(o - target); dev > out.defect) {
        out.defect = dev;
        out.worst_p = {p1, p2};
      }
    }
  return out;
}

inline FidCand sic_defect(const Vector& psi) { return sic_defect(CVec{psi, Basis::standard}); }

/// Defect against an arbitrary pair of Weyl-Heisenberg generators, with
/// displacements X^{p1} Z^{p2} (phases do not affect the moduli).
inline FidCand sic_defect_with_generators(const Vector& psi, const Matrix& x, const Matrix& z) {
  const long long N = psi.size();
  if (x.rows() != N || z.rows() != N) throw DimMismatch("generator size differs from vector length");
  if (std::abs(psi.norm() - 1.0) >= kNormTolerance) throw NotNormalized("vector is not normalized");
  std::vector<Matrix> zpow(static_cast<std::size_t>(N));
  zpow[0] = Matrix::Identity(N, N);
  for (long long b = 1; b < N; ++b) zpow[static_cast<std::size_t>(b)] = z * zpow[static_cast<std::size_t>(b - 1)];
  const double target = 1.0 / static_cast<double>(N + 1);
  FidCand out;
  out.psi = {psi, Basis::standard};
  out.overlaps.assign(static_cast<std::size_t>(N * N), 0.0);
  Matrix xpow = Matrix::Identity(N, N);
  for (long long a = 0; a < N; ++a) {
    for (long long b = 0; b < N; ++b) {
      const Vector dpsi = xpow * (zpow[static_cast<std::size_t>(b)] * psi);
      const double o = std::norm(psi.dot(dpsi));
      out.overlaps[static_cast<std::size_t>(a * N + b)] = o;
      if (a == 0 && b == 0) continue;
      if (const double dev = std::abs(o - target); dev > out.defect) {
        out.defect = dev;
        out.worst_p = {a, b};
      }
    }
    xpow = x * xpow;
  }
  return out;
}

/// max |(1/N) sum_p D_p |psi><psi| D_p^dagger - I| over p in Z_N^2.
inline double povm_resolution_check(const CVec& psi) {
  if (psi.basis != Basis::standard) throw InvalidArgument("expects a standard-basis vector");
  const long long N = psi.dim();
  const Dim d = make_dim(N);
  const DisplacementAction act(d);
  Matrix acc = Matrix::Zero(N, N);
  for (long long p1 = 0; p1 < N; ++p1)
    for (long long p2 = 0; p2 < N; ++p2) {
      const Vector v = act.apply({p1, p2}, psi.vec);
      acc += v * v.adjoint();
    }
  acc /= static_cast<double>(N);
  return max_abs(acc - Matrix::Identity(N, N));
}

/// U_{F_Z} under the library phase convention.
inline CMat zauner_unitary(const Dim& d) { return symplectic_unitary(d, zauner_matrix(d.Nbar)); }

struct Eigenspace {
  cplx eigenvalue;
  /// Orthonormal columns spanning the eigenspace (possibly zero columns).
  Matrix basis;
  long long dim() const { return basis.cols(); }
};

inline constexpr long long kMaxEigensolverDim = 64;

/// The three eigenspaces of the Zauner unitary U. Since U^3 = c I, the
/// eigenvalues are mu_q = c^{1/3} e^{2 pi i q/3} and
///   P_q = (I + U/mu_q + U^2/mu_q^2) / 3
/// is the Hermitian projector onto the mu_q eigenspace; its range is read
/// off a self-adjoint eigensolver. Ordered by q = 0, 1, 2.
inline std::vector<Eigenspace> zauner_eigenspaces(const Dim& d) {
  if (d.N > kMaxEigensolverDim) {
    throw CapExceeded("zauner_eigenspaces supports N <= " + std::to_string(kMaxEigensolverDim));
  }
  const Matrix u = zauner_unitary(d).mat;
  const long long N = d.N;
  const Matrix u2 = u * u;
  const Matrix u3 = u2 * u;
  const cplx c = u3(0, 0);
  if (max_abs(u3 - c * Matrix::Identity(N, N)) > 1e-9) {
    throw Error("Zauner unitary is not of projective order 3");
  }
  const cplx root = std::polar(1.0, std::arg(c) / 3.0);
  std::vector<Eigenspace> out;
  for (int q = 0; q < 3; ++q) {
    const cplx mu = root * unit_root(q, 3);
    const Matrix proj = (Matrix::Identity(N, N) + u / mu + u2 / (mu * mu)) / 3.0;
    const Matrix herm = 0.5 * (proj + proj.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(herm);
    const auto& evals = es.eigenvalues();  // ascending, each ~0 or ~1
    long long rank = 0;
    for (Eigen::Index i = 0; i < evals.size(); ++i)
      if (evals(i) > 0.5) ++rank;
    out.push_back({mu, es.eigenvectors().rightCols(rank)});
  }
  return out;
}

/// Rayleigh quotient c = <v|U v>/<v|v> and the residual |U v - c v|.
inline std::pair<cplx, double> eigen_residual(const Matrix& u, const Vector& v) {
  const Vector uv = u * v;
  const cplx c = v.dot(uv) / v.squaredNorm();
  return {c, (uv - c * v).norm()};
}

}  // namespace knomial
