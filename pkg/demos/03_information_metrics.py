"""
Monotone metrics, divergences, and channel information
======================================================

The quantum information toolbox: Petz monotone metrics (sld, rld, bkm,
wyd families), spectral F-divergences, relative entropy, Chernoff
information, and Holevo information, with their classical reductions.
"""

import math

import numpy as np

from qldp import (
    BKM,
    KL,
    RLD,
    SLD,
    chernoff_information,
    classical_chernoff,
    holevo_information,
    petz_f_divergence,
    petz_metric,
    relative_entropy,
    sigma_star,
    wyd,
)
from qldp.sampling import random_density, random_hermitian

rng = np.random.default_rng(0)

# Every normalized metric is sandwiched between the sld and rld forms.
rho0 = random_density(rng, 3)
x = random_hermitian(rng, 3)
print("metric sandwich on a random direction:")
for kind in (SLD, BKM, wyd(0.5), RLD):
    print(f"  {kind.tag:4s}{'' if kind.s is None else f'({kind.s})'}: {petz_metric(rho0, x, x, kind):.6f}")

# The KL instance of the spectral F-divergence is the Umegaki relative entropy.
a, b = random_density(rng, 3), random_density(rng, 3)
print(f"\nD_KL spectral sum: {petz_f_divergence(a, b, KL):.12f}")
print(f"relative entropy : {relative_entropy(a, b):.12f}")

# Chernoff information of commuting states equals its classical value.
p = np.array([0.75, 0.25])
print(f"\nclassical Chernoff of (3/4,1/4) vs (1/4,3/4): {classical_chernoff(p, p[::-1]):.9f}")
print(f"matrix route on diagonal embeddings        : "
      f"{chernoff_information(np.diag(p).astype(complex), np.diag(p[::-1]).astype(complex)):.9f}")
print(f"closed form ln(2/sqrt(3))                  : {math.log(2 / math.sqrt(3)):.9f}")

# Holevo information of sigma* approaches (n-1)/(4n) eps^2 in the
# high-privacy limit.
print("\nHolevo information of sigma* at eps = 1e-3:")
for n in (3, 6, 10):
    mech = sigma_star(n, 1e-3)
    chi = holevo_information(np.full(n, 1.0 / n), mech.states)
    print(f"  n={n:2d}: chi/eps^2 = {chi / 1e-6:.6f} vs (n-1)/(4n) = {(n - 1) / (4 * n):.6f}")
