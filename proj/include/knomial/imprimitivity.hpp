#pragma once

// The k-nomial basis |r,s,j> that jointly diagonalizes X^{kn} and Z^{kn},
// the change of basis T into it, and a verifier for k-nomial block structure.
//
// Basis order is lexicographic in (r, s, j) with j fastest:
//   linear index = (r n + s) k + j.

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "knomial/heisenberg.hpp"

namespace knomial {

struct KIndex {
  long long r = 0;
  long long s = 0;
  long long j = 0;
  friend bool operator==(const KIndex&, const KIndex&) = default;
};

/// An (r, s) eigenspace label, i.e. one k-dimensional block.
struct RS {
  long long r = 0;
  long long s = 0;
  friend bool operator==(const RS&, const RS&) = default;
  friend auto operator<=>(const RS&, const RS&) = default;
};

inline long long linear_index(const Dim& d, const KIndex& i) { return (i.r * d.n + i.s) * d.k + i.j; }
inline long long block_index(const Dim& d, const RS& b) { return b.r * d.n + b.s; }
inline RS block_label(const Dim& d, long long idx) { return {idx / d.n, idx % d.n}; }

inline KIndex kindex_from_linear(const Dim& d, long long idx) {
  return {idx / (d.n * d.k), (idx / d.k) % d.n, idx % d.k};
}

/// |r,s,j> = n^{-1/2} sum_t lambda^{-r t} |(s + j n) + t k n>, in the
/// standard basis.
inline CVec knomial_vector(const Dim& d, const KIndex& idx) {
  if (idx.r < 0 || idx.r >= d.n || idx.s < 0 || idx.s >= d.n || idx.j < 0 || idx.j >= d.k) {
    throw InvalidArgument("k-nomial index out of range");
  }
  const Phases ph(d);
  Vector v = Vector::Zero(d.N);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d.n));
  for (long long t = 0; t < d.n; ++t)
    v(idx.s + idx.j * d.n + t * d.k * d.n) = norm * ph.lambda_pow(-idx.r * t);
  return {std::move(v), Basis::standard};
}

namespace detail {

inline Matrix build_change_of_basis(const Dim& d) {
  Matrix t = Matrix::Zero(d.N, d.N);
  for (long long c = 0; c < d.N; ++c) t.col(c) = knomial_vector(d, kindex_from_linear(d, c)).vec;
  return t;
}

// Read-mostly cache of T per dimension.
class BasisCache {
 public:
  std::shared_ptr<const Matrix> get(const Dim& d) {
    {
      std::shared_lock lock(mu_);
      if (auto it = cache_.find(d.N); it != cache_.end()) return it->second;
    }
    auto t = std::make_shared<const Matrix>(build_change_of_basis(d));
    std::unique_lock lock(mu_);
    return cache_.try_emplace(d.N, std::move(t)).first->second;
  }

 private:
  std::shared_mutex mu_;
  std::map<long long, std::shared_ptr<const Matrix>> cache_;
};

inline BasisCache& basis_cache() {
  static BasisCache cache;
  return cache;
}

}  // namespace detail

/// T whose column at linear_index(r,s,j) is |r,s,j>. Unitary.
inline CMat change_of_basis(const Dim& d) { return {*detail::basis_cache().get(d), Basis::standard}; }

/// T^dagger M T.
inline CMat to_knomial(const CMat& m, const Dim& d) {
  if (m.mat.rows() != d.N || m.mat.cols() != d.N) throw DimMismatch("operator is not N x N");
  if (m.basis != Basis::standard) throw InvalidArgument("to_knomial expects a standard-basis operator");
  const auto t = detail::basis_cache().get(d);
  return {t->adjoint() * m.mat * *t, Basis::knomial};
}

/// T M T^dagger.
inline CMat to_standard(const CMat& m, const Dim& d) {
  if (m.mat.rows() != d.N || m.mat.cols() != d.N) throw DimMismatch("operator is not N x N");
  if (m.basis != Basis::knomial) throw InvalidArgument("to_standard expects a k-nomial operator");
  const auto t = detail::basis_cache().get(d);
  return {*t * m.mat * t->adjoint(), Basis::standard};
}

inline CVec to_knomial(const CVec& v, const Dim& d) {
  if (v.vec.size() != d.N) throw DimMismatch("vector length is not N");
  if (v.basis != Basis::standard) throw InvalidArgument("to_knomial expects a standard-basis vector");
  return {detail::basis_cache().get(d)->adjoint() * v.vec, Basis::knomial};
}

inline CVec to_standard(const CVec& v, const Dim& d) {
  if (v.vec.size() != d.N) throw DimMismatch("vector length is not N");
  if (v.basis != Basis::knomial) throw InvalidArgument("to_standard expects a k-nomial vector");
  return {*detail::basis_cache().get(d) * v.vec, Basis::standard};
}

/// Result of a successful k-nomial check. perm[i] maps source block
/// block_label(i) to its target block; blocks[i] is the k x k submatrix in
/// rows of the target block and columns of the source block.
struct BlockMap {
  long long n = 1;
  long long k = 1;
  std::vector<RS> perm;
  std::vector<Matrix> blocks;
  /// Largest entry outside the selected blocks, relative to max |M|.
  double off_block_max = 0.0;

  RS target(const RS& src) const { return perm[static_cast<std::size_t>(src.r * n + src.s)]; }
  const Matrix& block(const RS& src) const { return blocks[static_cast<std::size_t>(src.r * n + src.s)]; }
};

inline constexpr double kBlockTolerance = 1e-10;

/// Partitions a k-nomial-basis operator into an n^2 x n^2 grid of k x k
/// blocks and checks that each block row and column holds exactly one block
/// above tol * max|M|.
inline BlockMap block_structure(const CMat& m, const Dim& d, double tol = kBlockTolerance) {
  if (m.mat.rows() != d.N || m.mat.cols() != d.N) throw DimMismatch("operator is not N x N");
  if (m.basis != Basis::knomial) throw InvalidArgument("block_structure expects a k-nomial operator");
  const long long nb = d.n * d.n, k = d.k;
  const double scale = max_abs(m.mat);
  if (scale == 0.0) throw NotKNomial("operator is zero", -1, -1);
  const double thr = tol * scale;

  BlockMap out;
  out.n = d.n;
  out.k = k;
  out.perm.resize(static_cast<std::size_t>(nb));
  out.blocks.resize(static_cast<std::size_t>(nb));
  std::vector<int> hits(static_cast<std::size_t>(nb), 0);
  double off = 0.0;

  for (long long c = 0; c < nb; ++c) {
    long long found = -1;
    for (long long r = 0; r < nb; ++r) {
      const double bmax = max_abs(m.mat.block(r * k, c * k, k, k));
      if (bmax <= thr) {
        off = std::max(off, bmax);
        continue;
      }
      if (found >= 0) {
        throw NotKNomial("block column " + std::to_string(c) + " has several non-zero blocks",
                         static_cast<int>(r), static_cast<int>(c));
      }
      found = r;
    }
    if (found < 0) {
      throw NotKNomial("block column " + std::to_string(c) + " is zero", -1, static_cast<int>(c));
    }
    if (++hits[static_cast<std::size_t>(found)] > 1) {
      throw NotKNomial("block row " + std::to_string(found) + " has several non-zero blocks",
                       static_cast<int>(found), static_cast<int>(c));
    }
    out.perm[static_cast<std::size_t>(c)] = block_label(d, found);
    out.blocks[static_cast<std::size_t>(c)] = m.mat.block(found * k, c * k, k, k);
  }
  out.off_block_max = off / scale;
  return out;
}

/// Target eigenspace (r', s') of U_F applied to the (r, s) eigenspace:
///   r' = delta r - gamma s + m gamma delta,
///   s' = -beta r + alpha s + m alpha beta   (mod n).
inline RS eigenspace_map(const SL2& f, const Dim& d, const RS& src) {
  if (f.nbar() != d.Nbar) throw DimMismatch("matrix modulus differs from Nbar");
  if (!f.symplectic()) throw InvalidArgument("eigenspace_map expects a symplectic matrix");
  const long long n = d.n, m = d.m_shift();
  const long long a = f.alpha(), b = f.beta(), c = f.gamma(), dl = f.delta();
  return {mod(dl * src.r - c * src.s + m * mod(c * dl, n), n),
          mod(-b * src.r + a * src.s + m * mod(a * b, n), n)};
}

/// The permutation of all n^2 blocks induced by F, indexed like BlockMap.
inline std::vector<RS> eigenspace_permutation(const SL2& f, const Dim& d) {
  std::vector<RS> out;
  out.reserve(static_cast<std::size_t>(d.n * d.n));
  for (long long i = 0; i < d.n * d.n; ++i) out.push_back(eigenspace_map(f, d, block_label(d, i)));
  return out;
}

}  // namespace knomial
