"""
Equi-isoclinic tight fusion frames
==================================

Builds the half-dimension projection families that drive every quantum
mechanism in this package, and certifies their defining identities.
"""

import numpy as np

from qldp import build_eitff, clifford_generators, radon_hurwitz, simplex_vectors, verify_eitff

# A family of n rank-r projections on C^d is a tight fusion frame when the
# projections sum to (nr/d) I; it is equi-isoclinic when additionally
# P_j P_i P_j = c P_j for every pair, with c = (nr - d)/(d (n - 1)).
# At d = 2r the family exists exactly when n <= radon_hurwitz(r) + 2.
for r in (1, 2, 4, 8):
    print(f"rank {r}: families of up to n = {radon_hurwitz(r) + 2} projections exist at d = {2 * r}")

# The construction: regular-simplex weights on anticommuting generators.
vs = simplex_vectors(4)
print("\nsimplex Gram matrix (n = 4):")
print(np.round(vs @ vs.T, 12))

gens = clifford_generators(2)
print(f"\n{len(gens)} anticommuting generators on C^4; worst anticommutator:")
worst = max(
    np.linalg.norm(gens[i] @ gens[j] + gens[j] @ gens[i], 2)
    for i in range(len(gens))
    for j in range(i + 1, len(gens))
)
print(f"  {worst:.2e}")

# Build and certify the whole family n = 2..10.
print("\n n   d   r      c        tight  ectff  eitff   residual")
for n in range(2, 11):
    frame = build_eitff(n)
    cert = verify_eitff(frame.projections, tol=1e-10)
    print(
        f"{n:2d}  {frame.d:2d}  {frame.r:2d}  {frame.c:.6f}   "
        f"{cert.is_tight!s:5}  {cert.is_ectff!s:5}  {cert.is_eitff!s:5}   {cert.max_residual:.1e}"
    )

# The three-projection family in dimension 2 pairwise overlaps at Tr PiPj = 1/4.
frame = build_eitff(3)
p1, p2 = frame.projections[:2]
print(f"\nn=3 overlap Tr P1 P2 = {np.trace(p1 @ p2).real:.6f} (expected 0.25)")
