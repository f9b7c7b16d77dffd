"""Equi-isoclinic tight fusion frames in the half-dimension regime d = 2r.

A fusion frame here is a family of n rank-r orthogonal projections on C^d
summing to (nr/d) I.  The family is equi-chordal when Tr P_i P_j = r*c for
all i != j and equi-isoclinic when additionally P_j P_i P_j = c P_j, with
the common constant forced to c = (nr - d) / (d (n - 1)).

The constructive route: take n unit vectors v_1..v_n in R^{n-1} forming a
regular simplex (pairwise inner product -1/(n-1), zero sum) and n - 1
pairwise anticommuting Hermitian unitaries G_1..G_{n-1} on C^{2^{a+1}}
from the Jordan-Wigner chain.  Then A_i = sum_k v_i(k) G_k satisfies
A_i^2 = I and {A_i, A_j} = 2 <v_i, v_j> I, so P_i = (I + A_i)/2 are rank-r
projections with P_j P_i P_j = ((1 + <v_i, v_j>)/2) P_j = ((n-2)/(2n-2)) P_j
and sum_i P_i = (n/2) I.  Such families exist in dimension d = 2r, r = 2^a,
exactly when n <= 2a + 4 (Radon-Hurwitz bound).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ExistenceError, ValidationError
from .linalg import as_matrix, matrix_from_json, matrix_to_json, operator_norm, validate_hermitian

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class FusionFrame:
    """n rank-r orthogonal projections on C^d with isoclinicity constant c."""

    d: int
    r: int
    n: int
    projections: tuple
    c: float

    @property
    def u(self) -> float:
        """Rank-to-dimension ratio r/d."""
        return self.r / self.d


@dataclass(frozen=True)
class FrameCertificate:
    is_tight: bool
    is_ectff: bool
    is_eitff: bool
    c_observed: float
    max_residual: float


def frame_constant(d: int, r: int, n: int) -> float:
    """c = (nr - d) / (d (n - 1)), computed in exact rational arithmetic."""
    return float(Fraction(n * r - d, d * (n - 1)))


def radon_hurwitz(r: int) -> int:
    """2a + 2, where 2^a is the largest power of two dividing r."""
    if r < 1:
        raise ValidationError("rank must be a positive integer")
    a = 0
    while r % 2 == 0:
        r //= 2
        a += 1
    return 2 * a + 2


def clifford_generators(m: int) -> list[np.ndarray]:
    """2m + 1 pairwise anticommuting Hermitian unitaries on C^{2^m}.

    Jordan-Wigner chain, qubit by qubit: X(1), Y(1), Z(1)X(2), Z(1)Y(2), ...,
    Z(1)...Z(m).  Each generator squares to the identity and is traceless.
    """
    if m < 1:
        raise ValidationError("need at least one qubit")
    gens = []
    for site in range(m):
        prefix = np.eye(1, dtype=complex)
        for _ in range(site):
            prefix = np.kron(prefix, PAULI_Z)
        tail = np.eye(2 ** (m - site - 1), dtype=complex)
        gens.append(np.kron(np.kron(prefix, PAULI_X), tail))
        gens.append(np.kron(np.kron(prefix, PAULI_Y), tail))
    z_all = np.eye(1, dtype=complex)
    for _ in range(m):
        z_all = np.kron(z_all, PAULI_Z)
    gens.append(z_all)
    return gens


def simplex_vectors(n: int) -> np.ndarray:
    """n unit vectors in R^{n-1} with pairwise inner product -1/(n-1) and zero sum.

    Rows of the returned (n, n-1) array.  Built as a square root of the
    simplex Gram matrix (n I - J) / (n - 1) restricted to the complement of
    the all-ones direction, so the construction is deterministic.
    """
    if n < 2:
        raise ValidationError("need at least two vectors")
    gram = (n * np.eye(n) - np.ones((n, n))) / (n - 1)
    lam, vecs = np.linalg.eigh(gram)
    keep = lam > 1e-9
    return vecs[:, keep] * np.sqrt(lam[keep])


def build_eitff(n: int, a: int | None = None) -> FusionFrame:
    """Equi-isoclinic tight fusion frame with d = 2^{a+1}, r = 2^a.

    ``a`` defaults to the minimal admissible value max(0, ceil(n/2) - 2).
    Raises :class:`ExistenceError` when n > 2a + 4.
    """
    if n < 2:
        raise ValidationError("need at least two projections")
    if a is None:
        a = max(0, -(-n // 2) - 2)
    if a < 0:
        raise ValidationError("a must be non-negative")
    if n > 2 * a + 4:
        raise ExistenceError(f"no equi-isoclinic family with n={n} at rank 2^{a}: need n <= {2 * a + 4}")
    m = a + 1
    d = 2**m
    r = 2**a
    if d > 64:
        raise ValidationError(f"dimension {d} exceeds the supported dense-matrix range (<= 64)")
    gens = clifford_generators(m)[: n - 1]
    vs = simplex_vectors(n)
    eye = np.eye(d, dtype=complex)
    projections = []
    for i in range(n):
        anchor = sum(vs[i, k] * gens[k] for k in range(n - 1))
        projections.append(0.5 * (eye + anchor))
    return FusionFrame(d=d, r=r, n=n, projections=tuple(projections), c=frame_constant(d, r, n))


def verify_eitff(projections, tol: float = 1e-10) -> FrameCertificate:
    """Certify tightness, equi-chordality, and equi-isoclinicity of a projection family.

    The rank is inferred by rounding Tr P_1; tolerance violations show up as
    certificate failures rather than exceptions.  Mixed dimensions or inputs
    far from projections (||P^2 - P|| > 100 tol) are rejected.
    """
    ps = [validate_hermitian(p) for p in projections]
    n = len(ps)
    if n < 2:
        raise ValidationError("need at least two projections")
    d = ps[0].shape[0]
    if any(p.shape[0] != d for p in ps):
        raise ValidationError("projections have mixed dimensions")
    for p in ps:
        if operator_norm(p @ p - p) > 100 * tol:
            raise ValidationError("input is not close to an orthogonal projection")
    r = int(round(np.trace(ps[0]).real))
    c = frame_constant(d, r, n)

    tight_res = operator_norm(sum(ps) - (n * r / d) * np.eye(d))
    residuals = [tight_res]
    is_tight = bool(tight_res <= tol)

    chordal_res = 0.0
    isoclinic_res = 0.0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            chordal_res = max(chordal_res, abs(np.trace(ps[i] @ ps[j]).real - r * c))
            isoclinic_res = max(isoclinic_res, operator_norm(ps[j] @ ps[i] @ ps[j] - c * ps[j]))
    residuals += [chordal_res, isoclinic_res]

    is_ectff = bool(is_tight and chordal_res <= tol)
    is_eitff = bool(is_ectff and isoclinic_res <= tol)
    return FrameCertificate(
        is_tight=is_tight,
        is_ectff=is_ectff,
        is_eitff=is_eitff,
        c_observed=c,
        max_residual=float(max(residuals)),
    )


def frame_to_json(frame: FusionFrame) -> dict:
    return {
        "d": frame.d,
        "r": frame.r,
        "n": frame.n,
        "c": frame.c,
        "projections": [matrix_to_json(p) for p in frame.projections],
    }


def frame_from_json(obj: dict) -> FusionFrame:
    projections = tuple(as_matrix(matrix_from_json(p)) for p in obj["projections"])
    d, r, n = int(obj["d"]), int(obj["r"]), int(obj["n"])
    if any(p.shape[0] != d for p in projections) or len(projections) != n:
        raise ValidationError("frame JSON is inconsistent")
    return FusionFrame(d=d, r=r, n=n, projections=projections, c=frame_constant(d, r, n))
