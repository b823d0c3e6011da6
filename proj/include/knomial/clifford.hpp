#pragma once

// Symplectic unitaries U_F, anti-unitaries for anti-symplectic F, and the
// closed-form k x k blocks of U_F in the k-nomial basis.
//
// Phase convention: the arbitrary global phase in the U_F formula is fixed
// to 1. When beta is not a unit mod Nbar, U_F = U_{F1} U_{F2} with the
// factors from sl2_decompose_coprime_beta, so the phase of U_F follows that
// deterministic choice.

#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>

#include "knomial/heisenberg.hpp"
#include "knomial/imprimitivity.hpp"

namespace knomial {

namespace detail {

inline Matrix coprime_beta_unitary(const Dim& d, const SL2& f) {
  const long long N = d.N, m = d.Nbar;
  const long long binv = mod_inverse(f.beta(), m);
  const auto tau = tau_table(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(N));
  Matrix u(N, N);
  for (long long r = 0; r < N; ++r)
    for (long long c = 0; c < N; ++c) {
      const long long e = mod(binv * mod(f.delta() * r * r - 2 * r * c + f.alpha() * c * c, m), m);
      u(r, c) = norm * tau[static_cast<std::size_t>(e)];
    }
  return u;
}

}  // namespace detail

/// U_F with U_F D_p U_F^dagger = D_{F p} for every p.
inline CMat symplectic_unitary(const Dim& d, const SL2& f) {
  if (f.nbar() != d.Nbar) throw DimMismatch("matrix modulus differs from Nbar");
  if (!f.symplectic()) throw InvalidArgument("symplectic_unitary expects det +1, got " + f.str());
  if (coprime(f.beta(), d.Nbar)) return {detail::coprime_beta_unitary(d, f), Basis::standard};
  const auto [f1, f2] = sl2_decompose_coprime_beta(f);
  return {detail::coprime_beta_unitary(d, f1) * detail::coprime_beta_unitary(d, f2),
          Basis::standard};
}

/// Unitary (conj = false) or anti-unitary (conj = true) operator
/// v -> mat * (conj ? conj(v) : v).
struct AntiU {
  Matrix mat;
  bool conj = false;

  Vector apply(const Vector& v) const { return conj ? Vector(mat * v.conjugate()) : Vector(mat * v); }

  /// (this o other)(v) = this(other(v)).
  AntiU compose(const AntiU& other) const {
    return {conj ? Matrix(mat * other.mat.conjugate()) : Matrix(mat * other.mat), conj != other.conj};
  }

  AntiU inverse() const {
    return conj ? AntiU{mat.transpose(), true} : AntiU{mat.adjoint(), false};
  }

  AntiU pow(long long e) const {
    AntiU acc{Matrix::Identity(mat.rows(), mat.cols()), false};
    for (long long i = 0; i < e; ++i) acc = acc.compose(*this);
    return acc;
  }
};

/// Anti-unitary for det F = -1, built from F = F~ J as U_{F~} U_J.
inline AntiU antisymplectic_antiunitary(const Dim& d, const SL2& f) {
  if (f.nbar() != d.Nbar) throw DimMismatch("matrix modulus differs from Nbar");
  if (f.det_sign() != -1) throw NotAntisymplectic("expected det -1, got " + f.str());
  const SL2 ftilde = f * SL2::J(d.Nbar);
  return {symplectic_unitary(d, ftilde).mat, true};
}

/// Extended Clifford element for any F in ESL(2, Z_Nbar).
inline AntiU clifford_operator(const Dim& d, const SL2& f) {
  if (f.symplectic()) return {symplectic_unitary(d, f).mat, false};
  return antisymplectic_antiunitary(d, f);
}

/// U_J |r,s,j> = |-r,s,j>.
inline KIndex antiunitary_on_knomial_index(const Dim& d, const KIndex& idx) {
  return {mod(-idx.r, d.n), idx.s, idx.j};
}

/// (M_{F,rs})_{j j'} = k^{-1/2} tau^{beta^{-1}(delta (s'+j'n)^2 - 2 (s'+j'n)(s+jn)
/// + alpha (s+jn)^2)}, the coefficient of |r',s',j'> in U_F |r,s,j>.
/// Requires beta to be a unit mod Nbar.
inline Matrix block_matrix_formula(const Dim& d, const SL2& f, const RS& src) {
  if (f.nbar() != d.Nbar) throw DimMismatch("matrix modulus differs from Nbar");
  if (!coprime(f.beta(), d.Nbar)) throw BetaNotCoprime("beta = " + std::to_string(f.beta()) +
                                                       " is not a unit mod " + std::to_string(d.Nbar));
  const long long k = d.k, n = d.n, m = d.Nbar;
  const long long binv = mod_inverse(f.beta(), m);
  const long long sp = eigenspace_map(f, d, src).s;  // already in [0, n)
  const Phases ph(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(k));
  Matrix out(k, k);
  for (long long j = 0; j < k; ++j)
    for (long long jp = 0; jp < k; ++jp) {
      const long long a = sp + jp * n, b = src.s + j * n;
      const long long q = mod(f.delta() * a * a - 2 * a * b + f.alpha() * b * b, m);
      out(j, jp) = norm * ph.tau_pow(mod(binv * q, m));
    }
  return out;
}

/// U_F in the k-nomial basis assembled block by block from the closed form;
/// non-unit beta goes through the coprime decomposition.
inline CMat assemble_knomial(const Dim& d, const SL2& f) {
  if (f.nbar() != d.Nbar) throw DimMismatch("matrix modulus differs from Nbar");
  if (!f.symplectic()) throw InvalidArgument("assemble_knomial expects det +1, got " + f.str());
  if (!coprime(f.beta(), d.Nbar)) {
    const auto [f1, f2] = sl2_decompose_coprime_beta(f);
    return {assemble_knomial(d, f1).mat * assemble_knomial(d, f2).mat, Basis::knomial};
  }
  const long long k = d.k;
  Matrix out = Matrix::Zero(d.N, d.N);
  for (long long i = 0; i < d.n * d.n; ++i) {
    const RS src = block_label(d, i);
    const RS dst = eigenspace_map(f, d, src);
    // Rows are indexed by the target j', columns by the source j.
    out.block(block_index(d, dst) * k, i * k, k, k) = block_matrix_formula(d, f, src).transpose();
  }
  return {std::move(out), Basis::knomial};
}

inline constexpr long long kProjectiveOrderCap = 96;
inline constexpr double kProjectiveOrderTolerance = 1e-9;

namespace detail {

inline bool proportional_to_identity(const Matrix& m, double tol) {
  const cplx c = m(0, 0);
  if (std::abs(std::abs(c) - 1.0) > tol) return false;
  return max_abs(m - c * Matrix::Identity(m.rows(), m.cols())) < tol;
}

}  // namespace detail

/// Least m >= 1 with U^m = c I for a unit scalar c. Anti-unitary powers
/// only qualify when they are linear (even m).
inline long long projective_order(const AntiU& u, long long cap = kProjectiveOrderCap,
                                  double tol = kProjectiveOrderTolerance) {
  AntiU acc = u;
  for (long long m = 1; m <= cap; ++m) {
    if (!acc.conj && detail::proportional_to_identity(acc.mat, tol)) return m;
    acc = acc.compose(u);
  }
  throw CapExceeded("projective order exceeds " + std::to_string(cap));
}

inline long long projective_order(const Matrix& u, long long cap = kProjectiveOrderCap,
                                  double tol = kProjectiveOrderTolerance) {
  return projective_order(AntiU{u, false}, cap, tol);
}

/// Memo of U_F keyed by (N, F). Concurrent readers, one writer at a time.
class UnitaryCache {
 public:
  std::shared_ptr<const Matrix> get(const Dim& d, const SL2& f) {
    const Key key{d.N, f.entries()};
    {
      std::shared_lock lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto u = std::make_shared<const Matrix>(symplectic_unitary(d, f).mat);
    std::unique_lock lock(mu_);
    return cache_.try_emplace(key, std::move(u)).first->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return cache_.size();
  }

 private:
  using Key = std::pair<long long, std::array<long long, 4>>;
  mutable std::shared_mutex mu_;
  std::map<Key, std::shared_ptr<const Matrix>> cache_;
};

}  // namespace knomial
