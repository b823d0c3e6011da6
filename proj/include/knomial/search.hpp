#pragma once

// Numerical SIC fiducial search. Minimizes
//   f(psi) = sum_{p != 0 in Z_N^2} (|<psi|D_p psi>|^2 - 1/(N+1))^2
// over unit vectors, optionally restricted to psi = V y for an orthonormal V,
// with L-BFGS on the unit sphere and random restarts.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "knomial/sic.hpp"

namespace knomial {

/// Objective and its Euclidean gradient with respect to the real and
/// imaginary parts of psi (returned as one complex vector g, so that
/// df = Re <g, dpsi>). psi need not be normalized.
class SicObjective {
 public:
  explicit SicObjective(const Dim& d) : act_(d), target_(1.0 / static_cast<double>(d.N + 1)) {}

  const Dim& dim() const { return act_.dim(); }

  double value(const Vector& psi, double* max_residual = nullptr) const {
    return eval(psi, nullptr, max_residual);
  }

  double value_grad(const Vector& psi, Vector& grad, double* max_residual = nullptr) const {
    return eval(psi, &grad, max_residual);
  }

 private:
  // The p and -p terms of the gradient coincide, so
  //   g = 8 sum_p r_p conj(o_p) D_p psi,  r_p = |o_p|^2 - 1/(N+1).
  double eval(const Vector& psi, Vector* grad, double* max_residual) const {
    const long long N = act_.dim().N;
    if (psi.size() != N) throw DimMismatch("vector length is not N");
    double f = 0.0, worst = 0.0;
    Vector dpsi(N);
    if (grad) grad->setZero(N);
    for (long long p1 = 0; p1 < N; ++p1)
      for (long long p2 = 0; p2 < N; ++p2) {
        if (p1 == 0 && p2 == 0) continue;
        act_.apply({p1, p2}, psi, dpsi);
        const cplx o = psi.dot(dpsi);
        const double r = std::norm(o) - target_;
        f += r * r;
        worst = std::max(worst, std::abs(r));
        if (grad) *grad += (8.0 * r * std::conj(o)) * dpsi;
      }
    if (max_residual) *max_residual = worst;
    return f;
  }

  DisplacementAction act_;
  double target_;
};

struct SearchCfg {
  int restarts = 10;
  int max_iters = 5000;
  double tol = 1e-10;
  std::uint64_t rng_seed = 0;
  /// Orthonormal columns; psi = subspace * y when set.
  std::optional<Matrix> subspace;
  int threads = 1;

  void validate(long long N) const {
    if (restarts < 1) throw InvalidArgument("restarts must be >= 1");
    if (max_iters < 1) throw InvalidArgument("max_iters must be >= 1");
    if (!(tol > 0.0)) throw InvalidArgument("tol must be > 0");
    if (threads < 1) throw InvalidArgument("threads must be >= 1");
    if (subspace) {
      if (subspace->rows() != N) throw DimMismatch("subspace rows differ from N");
      if (subspace->cols() < 1) throw InvalidArgument("subspace is empty");
      const Matrix gram = subspace->adjoint() * *subspace;
      if (max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > 1e-10) {
        throw InvalidArgument("subspace columns are not orthonormal");
      }
    }
  }
};

struct SearchLogRecord {
  int restart = 0;
  int iter = 0;
  double objective = 0.0;
  friend bool operator==(const SearchLogRecord&, const SearchLogRecord&) = default;
};

/// Thrown when no restart reaches cfg.tol; carries the best candidate.
class NoConvergence : public Error {
 public:
  explicit NoConvergence(FidCand best)
      : Error("search did not converge, best defect " + std::to_string(best.defect)), best_(std::move(best)) {}
  const FidCand& best() const { return best_; }

 private:
  FidCand best_;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(restart));
}

inline double rdot(const Vector& a, const Vector& b) { return a.dot(b).real(); }

struct RestartResult {
  Vector psi;
  double max_residual = 0.0;
  int iters = 0;
  std::vector<SearchLogRecord> log;
};

/// One L-BFGS run on the unit sphere of C^m, where psi = V y (V = I when
/// no subspace is given).
class SphereLbfgs {
 public:
  SphereLbfgs(const SicObjective& obj, const std::optional<Matrix>& sub) : obj_(obj), sub_(sub) {}

  RestartResult run(Vector y, int restart, int max_iters, double stop_residual) const {
    static constexpr int kMemory = 8;
    static constexpr double kArmijo = 1e-4;
    RestartResult out;
    y.normalize();
    Vector grad;
    double res = 0.0;
    double f = eval(y, grad, res);
    project(y, grad);
    std::deque<std::pair<Vector, Vector>> mem;  // (s, y) pairs

    int it = 0;
    for (; it < max_iters; ++it) {
      out.log.push_back({restart, it, f});
      if (res < stop_residual) break;
      const double gnorm = grad.norm();
      if (gnorm < 1e-300) break;

      Vector dir = direction(grad, mem);
      project(y, dir);
      double slope = rdot(grad, dir);
      if (!(slope < 0.0)) {
        dir = -grad;
        slope = -gnorm * gnorm;
        mem.clear();
      }
      double t = mem.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;

      Vector y_new, grad_new;
      double f_new = 0.0, res_new = 0.0;
      bool accepted = false;
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        y_new = (y + t * dir).normalized();
        f_new = eval(y_new, grad_new, res_new);
        if (f_new <= f + kArmijo * t * slope) {
          accepted = true;
          break;
        }
      }
      if (!accepted) break;

      project(y_new, grad_new);
      Vector s = y_new - y;
      project(y_new, s);
      Vector moved = grad;
      project(y_new, moved);
      Vector dy = grad_new - moved;
      if (rdot(s, dy) > 1e-16 * s.norm() * dy.norm()) {
        for (auto& [ms, my] : mem) {
          project(y_new, ms);
          project(y_new, my);
        }
        mem.emplace_back(std::move(s), std::move(dy));
        if (static_cast<int>(mem.size()) > kMemory) mem.pop_front();
      }
      y = std::move(y_new);
      grad = std::move(grad_new);
      f = f_new;
      res = res_new;
    }
    out.iters = it;
    out.psi = sub_ ? Vector(*sub_ * y) : y;
    out.psi.normalize();
    out.max_residual = res;
    return out;
  }

 private:
  double eval(const Vector& y, Vector& grad, double& res) const {
    if (!sub_) return obj_.value_grad(y, grad, &res);
    Vector g;
    const double f = obj_.value_grad(*sub_ * y, g, &res);
    grad = sub_->adjoint() * g;
    return f;
  }

  // Tangent-space projection at x: v - Re<x, v> x.
  static void project(const Vector& x, Vector& v) { v -= rdot(x, v) * x; }

  static Vector direction(const Vector& grad, const std::deque<std::pair<Vector, Vector>>& mem) {
    Vector q = grad;
    std::vector<double> alpha(mem.size());
    for (std::size_t i = mem.size(); i-- > 0;) {
      const auto& [s, y] = mem[i];
      alpha[i] = rdot(s, q) / rdot(y, s);
      q -= alpha[i] * y;
    }
    if (!mem.empty()) {
      const auto& [s, y] = mem.back();
      q *= rdot(s, y) / rdot(y, y);
    }
    for (std::size_t i = 0; i < mem.size(); ++i) {
      const auto& [s, y] = mem[i];
      const double beta = rdot(y, q) / rdot(y, s);
      q += (alpha[i] - beta) * s;
    }
    return -q;
  }

  const SicObjective& obj_;
  const std::optional<Matrix>& sub_;
};

inline Vector random_start(long long m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector y(m);
  for (long long i = 0; i < m; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    y(i) = cplx(re, im);
  }
  return y;
}

}  // namespace detail

/// Best candidate over cfg.restarts independent runs. The first restart (in
/// index order) that reaches cfg.tol wins; otherwise NoConvergence carries
/// the lowest-defect candidate. Results do not depend on cfg.threads.
inline FidCand search_fiducial(const Dim& d, const SearchCfg& cfg,
                               std::vector<SearchLogRecord>* log = nullptr) {
  cfg.validate(d.N);
  const SicObjective obj(d);
  const detail::SphereLbfgs opt(obj, cfg.subspace);
  const long long m = cfg.subspace ? cfg.subspace->cols() : d.N;
  // Iterate well past tol so the reported defect has margin.
  const double stop = std::min(cfg.tol * 1e-2, 1e-13);

  std::vector<detail::RestartResult> results(static_cast<std::size_t>(cfg.restarts));
  auto work = [&](int i) {
    results[static_cast<std::size_t>(i)] =
        opt.run(detail::random_start(m, detail::restart_seed(cfg.rng_seed, i)), i, cfg.max_iters, stop);
  };
  if (cfg.threads == 1) {
    for (int i = 0; i < cfg.restarts; ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < cfg.threads; ++w)
      pool.emplace_back([&, w] {
        for (int i = w; i < cfg.restarts; i += cfg.threads) work(i);
      });
  }

  if (log)
    for (const auto& r : results) log->insert(log->end(), r.log.begin(), r.log.end());

  std::optional<FidCand> best;
  for (int i = 0; i < cfg.restarts; ++i) {
    const auto& r = results[static_cast<std::size_t>(i)];
    FidCand cand = sic_defect(r.psi);
    cand.meta["restart"] = std::to_string(i);
    cand.meta["iterations"] = std::to_string(r.iters);
    cand.meta["seed"] = std::to_string(cfg.rng_seed);
    cand.meta["subspace_dim"] = std::to_string(m);
    if (cand.defect < cfg.tol) return cand;
    if (!best || cand.defect < best->defect) best = std::move(cand);
  }
  throw NoConvergence(std::move(*best));
}

/// Search restricted to the Zauner eigenspaces, largest dimension first
/// (ties by eigenvalue index). Returns the first success; otherwise
/// NoConvergence with the best candidate seen.
inline FidCand search_fiducial_zauner(const Dim& d, SearchCfg cfg,
                                      std::vector<SearchLogRecord>* log = nullptr) {
  auto spaces = zauner_eigenspaces(d);
  std::vector<int> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spaces[static_cast<std::size_t>(a)].dim() > spaces[static_cast<std::size_t>(b)].dim();
  });
  std::optional<FidCand> best;
  for (int q : order) {
    const Eigenspace& es = spaces[static_cast<std::size_t>(q)];
    if (es.dim() == 0) continue;
    cfg.subspace = es.basis;
    try {
      FidCand out = search_fiducial(d, cfg, log);
      out.meta["eigenspace"] = "q=" + std::to_string(q);
      return out;
    } catch (const NoConvergence& e) {
      if (!best || e.best().defect < best->defect) {
        best = e.best();
        best->meta["eigenspace"] = "q=" + std::to_string(q);
      }
    }
  }
  if (!best) throw InvalidArgument("no non-empty Zauner eigenspace");
  throw NoConvergence(std::move(*best));
}

}  // namespace knomial
