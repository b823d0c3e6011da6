// Builds U_F for the Zauner matrix in dimension 12, shows its 3-nomial block
// permutation, then checks a closed-form dimension-8 fiducial.

#include <cstdio>

#include "knomial/knomial.hpp"

int main() {
  using namespace knomial;

  const Dim d = make_dim(12);
  const SL2 fz = zauner_matrix(d.Nbar);
  const CMat u = symplectic_unitary(d, fz);
  const BlockMap bm = block_structure(to_knomial(u, d), d);
  std::printf("N=%lld k=%lld n=%lld, F=%s\n", d.N, d.k, d.n, fz.str().c_str());
  for (long long i = 0; i < d.n * d.n; ++i) {
    const RS src = block_label(d, i), dst = bm.target(src);
    std::printf("  block (%lld,%lld) -> (%lld,%lld)\n", src.r, src.s, dst.r, dst.s);
  }

  const FidCand f = dim8_fiducial(Dim8Selector::s1_branch(1, 1, 1));
  std::printf("dimension-8 fiducial %s: defect %.2e, orbit %s\n", f.meta.at("selector").c_str(), f.defect,
              f.meta.at("orbit").c_str());
  return 0;
}
