#pragma once

// Integer and modular-matrix substrate: square-free decomposition, the
// doubled modulus N-bar, modular inverses and 2x2 matrices over Z_Nbar with
// determinant +1 or -1 (the extended symplectic group ESL(2, Z_Nbar)).

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "knomial/errors.hpp"

namespace knomial {

/// Canonical representative of a modulo m, always in [0, m).
constexpr long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

/// Pair (k, n) with N = k n^2 and k square-free.
struct SquareFree {
  long long k;
  long long n;
  friend bool operator==(const SquareFree&, const SquareFree&) = default;
};

inline SquareFree squarefree_decompose(long long N) {
  if (N < 1) throw InvalidArgument("dimension must be >= 1, got " + std::to_string(N));
  long long k = 1, n = 1, rest = N;
  for (long long p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) n *= p;
    if (e % 2 == 1) k *= p;
  }
  k *= rest;  // leftover prime (exponent 1) or 1
  return {k, n};
}

constexpr long long nbar(long long N) { return N % 2 == 0 ? 2 * N : N; }

/// Validated dimension record: N = k n^2 with k square-free, Nbar as above.
struct Dim {
  long long N = 1;
  long long k = 1;
  long long n = 1;
  long long Nbar = 1;

  friend bool operator==(const Dim&, const Dim&) = default;

  /// Offset used by the eigenspace permutation: n/2 when k is odd and n is
  /// even, otherwise 0.
  long long m_shift() const { return (k % 2 == 1 && n % 2 == 0) ? n / 2 : 0; }
};

inline Dim make_dim(long long N) {
  const auto [k, n] = squarefree_decompose(N);
  return Dim{N, k, n, nbar(N)};
}

/// Extended Euclid; returns b in [0, m) with a*b = 1 (mod m).
inline long long mod_inverse(long long a, long long m) {
  if (m < 1) throw InvalidArgument("modulus must be >= 1");
  if (m == 1) return 0;
  long long old_r = mod(a, m), r = m;
  long long old_s = 1, s = 0;
  while (r != 0) {
    const long long q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  if (old_r != 1) throw NotCoprime(a, m);
  return mod(old_s, m);
}

inline bool coprime(long long a, long long m) { return std::gcd(mod(a, m), m) == 1; }

/// Column vector p = (p1, p2) over Z_Nbar.
struct PVec {
  long long p1 = 0;
  long long p2 = 0;
  friend bool operator==(const PVec&, const PVec&) = default;
};

inline PVec make_pvec(long long p1, long long p2, long long nbar) {
  return {mod(p1, nbar), mod(p2, nbar)};
}

/// <p, q> = p2 q1 - p1 q2 reduced mod nbar.
inline long long symplectic_form(const PVec& p, const PVec& q, long long nbar) {
  return mod(p.p2 * q.p1 - p.p1 * q.p2, nbar);
}

/// 2x2 matrix [[alpha, beta], [gamma, delta]] over Z_Nbar with determinant
/// congruent to det_sign (+1 symplectic, -1 anti-symplectic).
class SL2 {
 public:
  /// Infers det_sign from the entries; +1 wins when +1 and -1 coincide
  /// (Nbar <= 2).
  SL2(long long alpha, long long beta, long long gamma, long long delta, long long nbar)
      : nbar_(checked_modulus(nbar)),
        e_{mod(alpha, nbar), mod(beta, nbar), mod(gamma, nbar), mod(delta, nbar)} {
    const long long det = raw_det();
    if (det == mod(1, nbar_)) {
      det_sign_ = 1;
    } else if (det == mod(-1, nbar_)) {
      det_sign_ = -1;
    } else {
      throw InvalidArgument("determinant " + std::to_string(det) + " is not +-1 mod " +
                            std::to_string(nbar_));
    }
  }

  SL2(long long alpha, long long beta, long long gamma, long long delta, long long nbar,
      int det_sign)
      : SL2(alpha, beta, gamma, delta, nbar) {
    if (det_sign != 1 && det_sign != -1) throw InvalidArgument("det_sign must be +-1");
    if (raw_det() != mod(det_sign, nbar_)) {
      throw InvalidArgument("determinant does not match det_sign " + std::to_string(det_sign));
    }
    det_sign_ = det_sign;
  }

  static SL2 identity(long long nbar) { return {1, 0, 0, 1, nbar}; }
  /// J = diag(1, -1), the canonical anti-symplectic element.
  static SL2 J(long long nbar) { return {1, 0, 0, -1, nbar, -1}; }

  long long alpha() const { return e_[0]; }
  long long beta() const { return e_[1]; }
  long long gamma() const { return e_[2]; }
  long long delta() const { return e_[3]; }
  long long nbar() const { return nbar_; }
  int det_sign() const { return det_sign_; }
  bool symplectic() const { return det_sign_ == 1; }
  long long trace() const { return mod(e_[0] + e_[3], nbar_); }
  const std::array<long long, 4>& entries() const { return e_; }

  PVec operator*(const PVec& p) const {
    return make_pvec(e_[0] * p.p1 + e_[1] * p.p2, e_[2] * p.p1 + e_[3] * p.p2, nbar_);
  }

  // Equality is on the residues only; det_sign is a function of them except
  // when +1 = -1.
  friend bool operator==(const SL2& a, const SL2& b) {
    return a.nbar_ == b.nbar_ && a.e_ == b.e_;
  }
  friend bool operator<(const SL2& a, const SL2& b) {
    return std::tie(a.nbar_, a.e_) < std::tie(b.nbar_, b.e_);
  }

  std::string str() const {
    return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" +
           std::to_string(e_[2]) + "," + std::to_string(e_[3]) + "]] mod " +
           std::to_string(nbar_);
  }

 private:
  static long long checked_modulus(long long m) {
    if (m < 1) throw InvalidArgument("modulus must be >= 1");
    return m;
  }
  long long raw_det() const { return mod(e_[0] * e_[3] - e_[1] * e_[2], nbar_); }

  long long nbar_;
  std::array<long long, 4> e_;
  int det_sign_ = 1;
};

inline SL2 sl2_mul(const SL2& f, const SL2& g) {
  if (f.nbar() != g.nbar()) throw DimMismatch("SL2 moduli differ");
  const long long m = f.nbar();
  return {f.alpha() * g.alpha() + f.beta() * g.gamma(),
          f.alpha() * g.beta() + f.beta() * g.delta(),
          f.gamma() * g.alpha() + f.delta() * g.gamma(),
          f.gamma() * g.beta() + f.delta() * g.delta(),
          m,
          f.det_sign() * g.det_sign()};
}

inline SL2 operator*(const SL2& f, const SL2& g) { return sl2_mul(f, g); }

inline SL2 sl2_inverse(const SL2& f) {
  // det = s with s^2 = 1, so the inverse is s * adj(F).
  const long long s = f.det_sign();
  return {s * f.delta(), -s * f.beta(), -s * f.gamma(), s * f.alpha(), f.nbar(), f.det_sign()};
}

inline SL2 sl2_pow(SL2 f, long long e) {
  if (e < 0) {
    f = sl2_inverse(f);
    e = -e;
  }
  SL2 acc = SL2::identity(f.nbar());
  while (e > 0) {
    if (e & 1) acc = acc * f;
    f = f * f;
    e >>= 1;
  }
  return acc;
}

/// Least m >= 1 with F^m = I.
inline long long matrix_order(const SL2& f) {
  const SL2 id = SL2::identity(f.nbar());
  SL2 acc = f;
  long long m = 1;
  while (!(acc == id)) {
    acc = acc * f;
    ++m;
  }
  return m;
}

/// F_Z = [[0, -1], [1, -1]].
inline SL2 zauner_matrix(long long nbar) { return {0, -1, 1, -1, nbar}; }

/// Splits a symplectic F into F1 * F2 with both beta entries units mod Nbar.
///
/// F2(x) = [[x, -1], [1, 0]] has beta = -1; F1 = F F2(x)^{-1} has beta
/// alpha + beta x. The scan over x terminates because gcd(alpha, beta, Nbar)
/// = 1: for each prime p | Nbar at most one residue of x mod p is bad.
inline std::pair<SL2, SL2> sl2_decompose_coprime_beta(const SL2& f) {
  if (!f.symplectic()) throw InvalidArgument("decomposition needs det +1, got " + f.str());
  const long long m = f.nbar();
  for (long long x = 0; x < m; ++x) {
    if (!coprime(f.alpha() + f.beta() * x, m)) continue;
    const SL2 f2{x, -1, 1, 0, m};
    const SL2 f1 = f * sl2_inverse(f2);
    return {f1, f2};
  }
  // Unreachable for a genuine det +1 matrix.
  throw InvalidArgument("no coprime-beta decomposition for " + f.str());
}

inline constexpr long long kDefaultEnumerationCap = 48;

/// Every matrix mod Nbar with determinant +1 or -1, in lexicographic entry
/// order.
inline std::vector<SL2> enumerate_esl2(long long nbar, long long cap = kDefaultEnumerationCap) {
  if (nbar < 1) throw InvalidArgument("modulus must be >= 1");
  if (nbar > cap) {
    throw CapExceeded("enumeration modulus " + std::to_string(nbar) + " exceeds cap " +
                      std::to_string(cap));
  }
  const long long plus = mod(1, nbar), minus = mod(-1, nbar);
  std::vector<SL2> out;
  for (long long a = 0; a < nbar; ++a)
    for (long long b = 0; b < nbar; ++b)
      for (long long c = 0; c < nbar; ++c)
        for (long long d = 0; d < nbar; ++d) {
          const long long det = mod(a * d - b * c, nbar);
          if (det == plus || det == minus) out.emplace_back(a, b, c, d, nbar);
        }
  return out;
}

/// All G in ESL(2, Z_Nbar) with G F_Z = F_Z^r G for r in {1, 2}.
inline std::vector<SL2> normalizer_of_zauner(long long nbar,
                                             long long cap = kDefaultEnumerationCap) {
  const SL2 fz = zauner_matrix(nbar);
  const SL2 fz2 = fz * fz;
  std::vector<SL2> out;
  for (const SL2& g : enumerate_esl2(nbar, cap)) {
    const SL2 lhs = g * fz;
    if (lhs == fz * g || lhs == fz2 * g) out.push_back(g);
  }
  return out;
}

/// Closure of a generating set under multiplication (a finite group).
inline std::vector<SL2> generated_subgroup(const std::vector<SL2>& gens) {
  if (gens.empty()) return {};
  std::set<SL2> seen{SL2::identity(gens.front().nbar())};
  std::vector<SL2> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<SL2> next;
    for (const SL2& x : frontier)
      for (const SL2& g : gens) {
        SL2 y = x * g;
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Uniform sample from SL(2, Z_Nbar) by rejection.
template <class Rng>
SL2 random_symplectic(long long nbar, Rng& rng) {
  std::uniform_int_distribution<long long> entry(0, nbar - 1);
  for (;;) {
    const long long a = entry(rng), b = entry(rng), c = entry(rng), d = entry(rng);
    if (mod(a * d - b * c, nbar) == mod(1, nbar)) return {a, b, c, d, nbar, 1};
  }
}

/// Uniform sample from the anti-symplectic coset SL(2, Z_Nbar) J.
template <class Rng>
SL2 random_antisymplectic(long long nbar, Rng& rng) {
  return random_symplectic(nbar, rng) * SL2::J(nbar);
}

}  // namespace knomial
