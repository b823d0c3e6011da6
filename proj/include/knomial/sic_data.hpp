#pragma once

// Closed-form fiducials in dimension 8 and the numeric dimension-12
// fiducial with its adapted Weyl-Heisenberg generators.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "knomial/clifford.hpp"
#include "knomial/imprimitivity.hpp"
#include "knomial/sic.hpp"

namespace knomial {

// ---------------------------------------------------------------- dim 8 --

enum class Dim8Orbit { S1, S0 };

/// Picks one of the 8 + 4 closed-form fiducials. S1 uses the three signs,
/// S0 uses r in [0, 4).
struct Dim8Selector {
  Dim8Orbit orbit = Dim8Orbit::S1;
  int s1 = 1;
  int s2 = 1;
  int s3 = 1;
  int r = 0;

  static Dim8Selector s1_branch(int s1, int s2, int s3) {
    Dim8Selector sel{Dim8Orbit::S1, s1, s2, s3, 0};
    sel.validate();
    return sel;
  }
  static Dim8Selector s0_branch(int r) {
    Dim8Selector sel{Dim8Orbit::S0, 1, 1, 1, r};
    sel.validate();
    return sel;
  }

  void validate() const {
    auto sign = [](int s) { return s == 1 || s == -1; };
    if (orbit == Dim8Orbit::S1 && !(sign(s1) && sign(s2) && sign(s3))) {
      throw InvalidArgument("S1 selector needs s1, s2, s3 in {+1, -1}");
    }
    if (orbit == Dim8Orbit::S0 && (r < 0 || r > 3)) throw InvalidArgument("S0 selector needs r in [0, 4)");
  }

  std::string str() const {
    if (orbit == Dim8Orbit::S1) {
      return "S1(" + std::to_string(s1) + "," + std::to_string(s2) + "," + std::to_string(s3) + ")";
    }
    return "S0(r=" + std::to_string(r) + ")";
  }
};

/// All eight S1 selectors followed by the four S0 selectors.
inline std::vector<Dim8Selector> all_dim8_selectors() {
  std::vector<Dim8Selector> out;
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1}) out.push_back(Dim8Selector::s1_branch(a, b, c));
  for (int r = 0; r < 4; ++r) out.push_back(Dim8Selector::s0_branch(r));
  return out;
}

/// eta = e^{i pi/24}; exponents reduced mod 48.
inline cplx eta_pow(long long e) { return unit_root(e, 48); }

/// A = [[1, 5], [-5, 6]] mod 16: order 24, anti-symplectic, A^8 = F_Z.
inline SL2 dim8_matrix_A() { return {1, 5, -5, 6, 16}; }
inline SL2 dim8_matrix_K() { return {0, 1, 1, 0, 16}; }
inline SL2 dim8_matrix_P() { return {-1, 0, 0, -1, 16}; }

namespace detail {

using Vec8 = std::array<cplx, 8>;

inline Vector vec8(const Vec8& a) {
  Vector v(8);
  for (int i = 0; i < 8; ++i) v(i) = a[static_cast<std::size_t>(i)];
  return v;
}

/// Components in the lexicographic k-nomial basis |0,0,0>, |0,0,1>, ...
inline Vector dim8_knomial_components(const Dim8Selector& sel) {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
  const double r6 = std::sqrt(6.0), r30 = std::sqrt(30.0);
  if (sel.orbit == Dim8Orbit::S1) {
    const Vector head = vec8({eta_pow(7) * std::sqrt(3.0 - r3), eta_pow(37) * std::sqrt(3.0 + r3),
                              0, 0, 0, 0, 0, 0}) /
                        (2.0 * r3);
    const Vector u = vec8({0, 0, eta_pow(17), eta_pow(17), r2 * eta_pow(31), 0, -1.0, 1.0});
    const Vector w = vec8({0, 0, eta_pow(11), eta_pow(35), 0, r2 * eta_pow(1), eta_pow(6), eta_pow(6)});
    // e^{i chi} = (sqrt(8 + sqrt6 - sqrt30) + i sqrt(8 - sqrt6 + sqrt30)) / 4
    const cplx echi = cplx(std::sqrt(8.0 + r6 - r30), std::sqrt(8.0 - r6 + r30)) / 4.0;
    const cplx phase = sel.s1 == 1 ? echi : std::conj(echi);
    const cplx shift = std::polar(1.0, -sel.s1 * std::numbers::pi / 12.0);
    return head + (sel.s2 / 2.0) * std::sqrt((3.0 - r5) / 6.0) * phase * u +
           (sel.s3 / 2.0) * std::sqrt((r5 - 1.0) / 6.0) * phase * shift * w;
  }
  const Vector u = vec8({0, 0, eta_pow(33), eta_pow(33), r2 * eta_pow(15), 0, -1.0, 1.0});
  const Vector w = vec8({0, 0, eta_pow(33), eta_pow(9), 0, r2 * eta_pow(39), eta_pow(12), eta_pow(12)});
  const cplx ir = unit_root(sel.r, 4);
  return 0.5 * std::sqrt((3.0 - r5) / 6.0) * u + (ir / 2.0) * std::sqrt((1.0 + r5) / 6.0) * w;
}

}  // namespace detail

/// Closed-form dimension-8 fiducial, mapped to the standard basis and
/// normalized. meta carries the Scott-Grassl orbit label (8a for S1 and
/// S2, 8b for S0).
inline FidCand dim8_fiducial(const Dim8Selector& sel) {
  sel.validate();
  const Dim d = make_dim(8);
  CVec kn{detail::dim8_knomial_components(sel), Basis::knomial};
  CVec std_vec = to_standard(kn, d);
  std_vec.vec.normalize();
  FidCand out = sic_defect(std_vec);
  out.meta["orbit"] = sel.orbit == Dim8Orbit::S1 ? "8a" : "8b";
  out.meta["eigenspace"] = sel.orbit == Dim8Orbit::S1 ? "S1" : "S0";
  out.meta["selector"] = sel.str();
  return out;
}

/// The S1 fiducial pushed into S2 by the anti-unitary U_A.
inline FidCand dim8_orbit_S2(const Dim8Selector& sel) {
  sel.validate();
  if (sel.orbit != Dim8Orbit::S1) throw InvalidArgument("dim8_orbit_S2 expects an S1 selector");
  const Dim d = make_dim(8);
  const AntiU ua = antisymplectic_antiunitary(d, dim8_matrix_A());
  Vector img = ua.apply(dim8_fiducial(sel).psi.vec);
  img.normalize();
  FidCand out = sic_defect(img);
  out.meta["orbit"] = "8a";
  out.meta["eigenspace"] = "S2";
  out.meta["selector"] = sel.str();
  return out;
}

// --------------------------------------------------------------- dim 12 --

/// omega_24 = (sqrt2/4)((1 - sqrt3) + (sqrt3 + 1) i), i.e. e^{7 pi i/12}.
inline cplx dim12_omega24() { return std::sqrt(2.0) / 4.0 * cplx(1.0 - std::sqrt(3.0), std::sqrt(3.0) + 1.0); }

namespace detail {

// Nonzero entries (row, col, exponent of omega_24) of the printed
// dimension-12 generators.
inline constexpr std::array<std::array<int, 3>, 12> kDim12X{{{0, 1, 9},
                                                            {1, 2, 23},
                                                            {2, 3, 1},
                                                            {3, 4, 15},
                                                            {4, 5, 17},
                                                            {5, 0, 7},
                                                            {6, 7, 9},
                                                            {7, 8, 11},
                                                            {8, 9, 17},
                                                            {9, 10, 11},
                                                            {10, 11, 1},
                                                            {11, 6, 11}}};
inline constexpr std::array<std::array<int, 3>, 12> kDim12Z{{{0, 6, 15},
                                                            {1, 7, 17},
                                                            {2, 8, 7},
                                                            {3, 9, 1},
                                                            {4, 10, 23},
                                                            {5, 11, 9},
                                                            {6, 0, 9},
                                                            {7, 1, 11},
                                                            {8, 2, 1},
                                                            {9, 3, 11},
                                                            {10, 4, 17},
                                                            {11, 5, 11}}};

inline Matrix dim12_printed(const std::array<std::array<int, 3>, 12>& entries) {
  const cplx w = dim12_omega24();
  Matrix m = Matrix::Zero(12, 12);
  for (const auto& [r, c, e] : entries) m(r, c) = std::pow(w, e);
  return m;
}

}  // namespace detail

/// The printed generators act on row vectors (psi -> psi M); as operators
/// on column vectors they are the transposes returned here.
inline Matrix dim12_X() { return detail::dim12_printed(detail::kDim12X).transpose(); }
inline Matrix dim12_Z() { return detail::dim12_printed(detail::kDim12Z).transpose(); }

/// The three real roots of t^3 - 12 t - 10, increasing.
inline std::array<double, 3> dim12_t1_roots() {
  // Trigonometric form for t^3 + p t + q with p = -12, q = -10.
  const double p = -12.0, q = -10.0;
  const double amp = 2.0 * std::sqrt(-p / 3.0);
  const double phi = std::acos((3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p)) / 3.0;
  std::array<double, 3> t{};
  for (int i = 0; i < 3; ++i) t[static_cast<std::size_t>(i)] = amp * std::cos(phi - 2.0 * std::numbers::pi * i / 3.0);
  std::sort(t.begin(), t.end());
  return t;
}

/// Un-normalized coefficients x_0..x_11 for a given real root t1.
inline Vector dim12_coefficients(double t) {
  const double r3 = std::sqrt(3.0), r13 = std::sqrt(13.0), r39 = std::sqrt(39.0);
  const double s1 = std::sqrt((r13 - 1.0) / 2.0);
  const double s2 = std::sqrt((3.0 * r13 + 9.0) / 2.0);
  const double t2 = t * t;
  const cplx I(0.0, 1.0);
  Vector x(12);
  x(0) = ((-30 * r13 - 312) * s1 + (24 * r13 * t2 - 102 * r13 * t - 309 * r13 - 92 * t2 - 158 * t - 5)) * I +
         (26 * r39 - 364 * r3) * s1 + 28 * r39 * t2 - 58 * r39 * t - 147 * r39 + 96 * r3 * t2 -
         42 * r3 * t - 443 * r3;
  x(1) = (24 * r13 * t2 - 102 * r13 * t - 540 * r13 - 92 * t2 - 158 * t - 980) * I + 28 * r39 * t2 -
         58 * r39 * t - 264 * r39 + 96 * r3 * t2 - 42 * r3 * t - 1184 * r3;
  x(2) = ((24 * r13 - 702) * s1 - 54 * r13 * t2 + 138 * r13 * t + 375 * r13 - 98 * t2 + 142 * t + 667) * I +
         (28 * r39 - 26 * r3) * s1 - 2 * r39 * t2 - 22 * r39 * t - 81 * r39 - 94 * r3 * t2 - 58 * r3 * t +
         219 * r3;
  x(3) = ((-30 * r13 - 312) * s1 - 54 * r13 * t2 + 138 * r13 * t + 315 * r13 - 98 * t2 + 142 * t + 43) * I +
         (26 * r39 - 364 * r3) * s1 - 2 * r39 * t2 - 22 * r39 * t + 93 * r39 - 94 * r3 * t2 - 58 * r3 * t +
         1077 * r3;
  x(4) = (30 * r13 * t2 - 36 * r13 * t - 588 * r13 + 190 * t2 + 16 * t - 3236) * I - 26 * r39 * t2 +
         80 * r39 * t + 168 * r39 - 2 * r3 * t2 + 100 * r3 * t - 400 * r3;
  x(5) = ((24 * r13 - 702) * s1 + (30 * r13 * t2 - 36 * r13 * t - 297 * r13 + 190 * t2 + 16 * t - 1637)) * I +
         (28 * r39 - 26 * r3) * s1 - 26 * r39 * t2 + 80 * r39 * t + 111 * r39 - 2 * r3 * t2 + 100 * r3 * t -
         517 * r3;
  x(6) = ((-30 * r13 - 312) * s1 + (30 * r13 * t2 - 36 * r13 * t - 357 * r13 + 190 * t2 + 16 * t - 2261)) * I +
         (26 * r39 - 364 * r3) * s1 - 26 * r39 * t2 + 80 * r39 * t + 285 * r39 - 2 * r3 * t2 + 100 * r3 * t +
         341 * r3;
  x(7) = 488 * r13 * s2;
  x(8) = ((24 * r13 - 702) * s1 + (24 * r13 * t2 - 102 * r13 * t - 249 * r13 - 92 * t2 - 158 * t + 619)) * I +
         (28 * r39 - 26 * r3) * s1 + 28 * r39 * t2 - 58 * r39 * t - 321 * r39 + 96 * r3 * t2 - 42 * r3 * t -
         1301 * r3;
  x(9) = ((85 * r39 + 91 * r3) * s1 * s2 - 122 * r39 * s2) * I + (23 * r13 - 871) * s1 * s2 + 122 * r13 * s2;
  x(10) = (-54 * r13 * t2 + 138 * r13 * t + 84 * r13 - 98 * t2 + 142 * t - 932) * I - 2 * r39 * t2 -
          22 * r39 * t - 24 * r39 - 94 * r3 * t2 - 58 * r3 * t + 336 * r3;
  x(11) = ((31 * r39 + 481 * r3) * s1 * s2 + 122 * r39 * s2) * I + (139 * r13 - 299) * s1 * s2 + 122 * r13 * s2;
  return x;
}

/// Normalized dimension-12 candidate for the root_choice-th real root of
/// t^3 = 12 t + 10, with its defect against the adapted generators.
inline FidCand dim12_fiducial_numeric(int root_choice) {
  if (root_choice < 0 || root_choice > 2) throw InvalidArgument("root_choice must be 0, 1 or 2");
  const double t = dim12_t1_roots()[static_cast<std::size_t>(root_choice)];
  Vector psi = dim12_coefficients(t);
  psi.normalize();
  FidCand out = sic_defect_with_generators(psi, dim12_X(), dim12_Z());
  // Components refer to the adapted basis of the generators above, which is
  // neither the standard basis nor the library's k-nomial basis.
  out.meta["root_choice"] = std::to_string(root_choice);
  out.meta["t1"] = std::to_string(t);
  out.meta["basis"] = "dim12-adapted";
  return out;
}

}  // namespace knomial
