#pragma once

// Standard-basis Weyl-Heisenberg group: shift X, clock Z, displacement
// operators D_p = tau^{p1 p2} X^{p1} Z^{p2} and their phases.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "knomial/errors.hpp"
#include "knomial/numtheory.hpp"

namespace knomial {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Basis { standard, knomial };

inline const char* basis_name(Basis b) { return b == Basis::standard ? "standard" : "knomial"; }

/// Dense operator tagged with the basis its entries refer to.
struct CMat {
  Matrix mat;
  Basis basis = Basis::standard;
  long long dim() const { return mat.rows(); }
};

struct CVec {
  Vector vec;
  Basis basis = Basis::standard;
  long long dim() const { return vec.size(); }
};

/// Default tolerance for complex scalar comparisons.
inline double& default_tolerance() {
  static double tol = 1e-12;
  return tol;
}

/// exp(2 pi i num / den) with num reduced mod den first. Quarter turns are
/// returned exactly.
inline cplx unit_root(long long num, long long den) {
  const long long r = mod(num, den);
  if (r == 0) return {1.0, 0.0};
  if (4 * r == den) return {0.0, 1.0};
  if (2 * r == den) return {-1.0, 0.0};
  if (4 * r == 3 * den) return {0.0, -1.0};
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(den);
  return {std::cos(theta), std::sin(theta)};
}

/// The three phases of dimension N: omega = e^{2 pi i/N},
/// tau = -e^{pi i/N}, lambda = e^{2 pi i/n}.
struct Phases {
  long long N;
  long long n;

  explicit Phases(const Dim& d) : N(d.N), n(d.n) {}

  cplx omega() const { return unit_root(1, N); }
  cplx tau() const { return tau_pow(1); }
  cplx lambda() const { return unit_root(1, n); }

  cplx omega_pow(long long e) const { return unit_root(e, N); }
  cplx lambda_pow(long long e) const { return unit_root(e, n); }
  /// tau = e^{i pi (N+1)/N}, so tau^e = exp(2 pi i e (N+1) / 2N).
  cplx tau_pow(long long e) const { return unit_root(mod(e, 2 * N) * (N + 1), 2 * N); }
};

/// Table of tau^e for e in [0, Nbar); tau has order exactly Nbar.
inline std::vector<cplx> tau_table(const Dim& d) {
  const Phases ph(d);
  std::vector<cplx> t(static_cast<std::size_t>(d.Nbar));
  for (long long e = 0; e < d.Nbar; ++e) t[static_cast<std::size_t>(e)] = ph.tau_pow(e);
  return t;
}

inline CMat build_X(long long N) {
  if (N < 1) throw InvalidArgument("dimension must be >= 1");
  Matrix x = Matrix::Zero(N, N);
  for (long long u = 0; u < N; ++u) x(mod(u + 1, N), u) = 1.0;
  return {std::move(x), Basis::standard};
}

inline CMat build_Z(long long N) {
  if (N < 1) throw InvalidArgument("dimension must be >= 1");
  Matrix z = Matrix::Zero(N, N);
  for (long long u = 0; u < N; ++u) z(u, u) = unit_root(u, N);
  return {std::move(z), Basis::standard};
}

/// D_p as a dense matrix. Column u carries tau^{p1 p2 + 2 p2 u} in row
/// u + p1 (mod N), using omega = tau^2.
inline CMat displacement(const Dim& d, const PVec& p) {
  const Phases ph(d);
  const long long N = d.N;
  const long long p1 = mod(p.p1, d.Nbar), p2 = mod(p.p2, d.Nbar);
  Matrix m = Matrix::Zero(N, N);
  for (long long u = 0; u < N; ++u) m(mod(u + p1, N), u) = ph.tau_pow(p1 * p2 + 2 * p2 * u);
  return {std::move(m), Basis::standard};
}

inline CMat displacement(long long N, long long p1, long long p2) {
  const Dim d = make_dim(N);
  return displacement(d, make_pvec(p1, p2, d.Nbar));
}

/// Applies D_p to a standard-basis vector without forming the matrix.
class DisplacementAction {
 public:
  explicit DisplacementAction(const Dim& d) : d_(d), tau_(tau_table(d)) {}

  const Dim& dim() const { return d_; }

  void apply(const PVec& p, const Vector& in, Vector& out) const {
    const long long N = d_.N;
    const long long p1 = mod(p.p1, d_.Nbar), p2 = mod(p.p2, d_.Nbar);
    out.resize(N);
    for (long long u = 0; u < N; ++u)
      out(mod(u + p1, N)) = phase(p1 * p2 + 2 * p2 * u) * in(u);
  }

  Vector apply(const PVec& p, const Vector& in) const {
    Vector out;
    apply(p, in, out);
    return out;
  }

  /// <psi| D_p |psi>.
  cplx expectation(const PVec& p, const Vector& psi) const {
    const long long N = d_.N;
    const long long p1 = mod(p.p1, d_.Nbar), p2 = mod(p.p2, d_.Nbar);
    cplx acc = 0.0;
    for (long long u = 0; u < N; ++u)
      acc += std::conj(psi(mod(u + p1, N))) * phase(p1 * p2 + 2 * p2 * u) * psi(u);
    return acc;
  }

  cplx phase(long long e) const { return tau_[static_cast<std::size_t>(mod(e, d_.Nbar))]; }

 private:
  Dim d_;
  std::vector<cplx> tau_;
};

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimMismatch("matrix shapes differ");
  return max_abs(a - b);
}

inline double unitarity_defect(const Matrix& u) {
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

inline bool is_unitary(const Matrix& u, double tol = 1e-10) { return unitarity_defect(u) < tol; }

/// Matrix power by repeated squaring.
inline Matrix matrix_power(const Matrix& m, long long e) {
  Matrix acc = Matrix::Identity(m.rows(), m.cols());
  Matrix base = m;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace knomial
