"""Quantum and classical information quantities.

Monotone metrics: for a full-rank state rho_0 with spectrum {lambda_i} and an
operator monotone kernel function f (normalized so f(1) = 1 where noted),

    J[X, Y] = sum_{ij} <j|X|i><i|Y|j> / (lambda_j f(lambda_i / lambda_j)).

F-divergences: for an operator convex F,

    D_F(rho_1 || rho_2) = sum_{ij} lambda_{2j} F(lambda_{1i}/lambda_{2j}) |<u_i|v_j>|^2,

which reduces to sum_j q_j F(p_j / q_j) for commuting (classical) inputs and
to the Umegaki relative entropy for F(t) = t ln t.  Chernoff information is
-ln min_{s in [0,1]} Tr A^s B^{1-s}, computed by golden-section search on the
convex overlap curve with both spectra cached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SupportMismatchError, ValidationError
from .linalg import RANK_TOL, eigh, validate_density, validate_hermitian

DEGENERACY_RTOL = 1e-12
GOLDEN_TOL = 1e-12
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class MetricKind:
    """Kernel family tag: one of sld, rld, bkm, or wyd with a parameter s in (0, 1)."""

    tag: str
    s: float | None = None

    def __post_init__(self):
        if self.tag not in ("sld", "rld", "bkm", "wyd"):
            raise ValidationError(f"unknown metric kind {self.tag!r}")
        if self.tag == "wyd":
            if self.s is None or not 0.0 < self.s < 1.0:
                raise ValidationError("wyd needs a parameter s in (0, 1)")
        elif self.s is not None:
            raise ValidationError(f"{self.tag} takes no parameter")


SLD = MetricKind("sld")
RLD = MetricKind("rld")
BKM = MetricKind("bkm")


def wyd(s: float) -> MetricKind:
    return MetricKind("wyd", s)


def _metric_kernel(kind: MetricKind, lam: np.ndarray) -> np.ndarray:
    """Matrix K[i, j] = 1 / (lambda_j f(lambda_i / lambda_j)) on the spectrum grid."""
    li = lam[:, None]
    lj = lam[None, :]
    if kind.tag == "sld":
        return 2.0 / (li + lj)
    if kind.tag == "rld":
        return (li + lj) / (2.0 * li * lj)
    near = np.abs(li - lj) <= DEGENERACY_RTOL * lam[-1]
    diag = 1.0 / np.where(near, li, 1.0)
    if kind.tag == "bkm":
        with np.errstate(all="ignore"):
            k = (np.log(li) - np.log(lj)) / (li - lj)
        return np.where(near, diag, k)
    s = kind.s
    with np.errstate(all="ignore"):
        k = (li**s - lj**s) * (li ** (1 - s) - lj ** (1 - s)) / (s * (1 - s) * (li - lj) ** 2)
    return np.where(near, diag, k)


def petz_metric(rho0, x, y, kind: MetricKind) -> float:
    """Monotone metric J[X, Y] of two Hermitian directions at a full-rank state."""
    r0, full = validate_density(rho0)
    if not full:
        raise DomainError("metric undefined at a rank-deficient state")
    xm = validate_hermitian(x)
    ym = validate_hermitian(y)
    if xm.shape != r0.shape or ym.shape != r0.shape:
        raise ValidationError("dimension mismatch")
    lam, u = eigh(r0)
    xb = u.conj().T @ xm @ u
    yb = u.conj().T @ ym @ u
    kernel = _metric_kernel(kind, lam)
    value = np.sum(kernel * xb.T * yb)
    if abs(value.imag) > 1e-10 * (1.0 + abs(value.real)):
        raise ValidationError(f"metric value has a large imaginary part {value.imag:.3e}")
    return float(value.real)


@dataclass(frozen=True)
class OperatorConvexF:
    """Operator convex scalar function tag: kl, square, squared_diff, or neg_ratio(s)."""

    tag: str
    s: float | None = None

    def __post_init__(self):
        if self.tag not in ("kl", "square", "squared_diff", "neg_ratio"):
            raise ValidationError(f"unknown F tag {self.tag!r}")
        if self.tag == "neg_ratio":
            if self.s is None or self.s < 0:
                raise ValidationError("neg_ratio needs a parameter s >= 0")
        elif self.s is not None:
            raise ValidationError(f"{self.tag} takes no parameter")

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.tag == "kl":
            return t * np.log(t)
        if self.tag == "square":
            return t * t
        if self.tag == "squared_diff":
            return (t - 1.0) ** 2
        return -t / (t + self.s)

    def second_derivative_at_one(self) -> float:
        if self.tag == "kl":
            return 1.0
        if self.tag in ("square", "squared_diff"):
            return 2.0
        return 2.0 * self.s / (1.0 + self.s) ** 3

    def induced_kernel(self, lam: np.ndarray) -> np.ndarray:
        """Metric kernel of the induced f(t) = (t-1)^2 / (F(t) + t F(1/t)).

        K[i, j] = (lambda_j F(lambda_i/lambda_j) + lambda_i F(lambda_j/lambda_i))
        / (lambda_i - lambda_j)^2, with limit F''(1)/lambda on the diagonal.
        """
        li = lam[:, None]
        lj = lam[None, :]
        near = np.abs(li - lj) <= DEGENERACY_RTOL * lam[-1]
        safe_li = np.where(near, 1.0, li)
        safe_lj = np.where(near, 1.0, lj)
        with np.errstate(all="ignore"):
            k = (safe_lj * self(safe_li / safe_lj) + safe_li * self(safe_lj / safe_li)) / (safe_li - safe_lj) ** 2
        return np.where(near, self.second_derivative_at_one() / li, k)


KL = OperatorConvexF("kl")
SQUARE = OperatorConvexF("square")
SQUARED_DIFF = OperatorConvexF("squared_diff")


def neg_ratio(s: float) -> OperatorConvexF:
    return OperatorConvexF("neg_ratio", s)


def induced_metric(rho0, x, y, f: OperatorConvexF) -> float:
    """Metric with the kernel induced by an operator convex F (not normalized)."""
    r0, full = validate_density(rho0)
    if not full:
        raise DomainError("metric undefined at a rank-deficient state")
    lam, u = eigh(r0)
    xb = u.conj().T @ validate_hermitian(x) @ u
    yb = u.conj().T @ validate_hermitian(y) @ u
    value = np.sum(f.induced_kernel(lam) * xb.T * yb)
    return float(value.real)


def _full_rank_spectrum(rho) -> tuple[np.ndarray, np.ndarray]:
    mat, full = validate_density(rho)
    if not full:
        raise SupportMismatchError("state is rank deficient")
    return eigh(mat)


def _overlap_weights(rho1, rho2) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spectra (a, b) of both states and W[i, j] = |<u_i|v_j>|^2."""
    a, ua = _full_rank_spectrum(rho1)
    b, ub = _full_rank_spectrum(rho2)
    if ua.shape != ub.shape:
        raise ValidationError("dimension mismatch")
    w = np.abs(ua.conj().T @ ub) ** 2
    return a, b, w


def petz_f_divergence(rho1, rho2, f: OperatorConvexF) -> float:
    """Spectral double sum sum_{ij} b_j F(a_i / b_j) |<u_i|v_j>|^2."""
    a, b, w = _overlap_weights(rho1, rho2)
    return float(np.sum(b[None, :] * f(a[:, None] / b[None, :]) * w))


def relative_entropy(rho1, rho2) -> float:
    """Umegaki relative entropy Tr rho_1 (ln rho_1 - ln rho_2) for full-rank states."""
    a, b, w = _overlap_weights(rho1, rho2)
    return float(np.sum(a * np.log(a)) - np.sum((a[:, None] * np.log(b)[None, :]) * w))


def von_neumann_entropy(rho) -> float:
    """-Tr rho ln rho; eigenvalues within rank tolerance of 0 contribute nothing."""
    mat, _ = validate_density(rho)
    lam = np.linalg.eigvalsh(mat)
    lam = lam[lam > RANK_TOL]
    return float(-np.sum(lam * np.log(lam)))


def holevo_information(prior, states) -> float:
    """H(sum_x p(x) rho_x) - sum_x p(x) H(rho_x) for a prior over the states."""
    p = np.asarray(prior, dtype=float)
    mats = [validate_hermitian(s) for s in states]
    if len(mats) != p.size:
        raise ValidationError("prior length must match the number of states")
    if abs(p.sum() - 1.0) > 1e-10 or np.any(p < 0):
        raise ValidationError("prior must be a probability vector")
    if any(m.shape != mats[0].shape for m in mats):
        raise ValidationError("dimension mismatch")
    barycenter = sum(w * m for w, m in zip(p, mats))
    value = float(von_neumann_entropy(barycenter) - sum(w * von_neumann_entropy(m) for w, m in zip(p, mats)))
    if value < -1e-10:
        raise ValidationError(f"negative information {value:.3e}")
    return value


def _golden_min(fn, lo: float, hi: float, tol: float = GOLDEN_TOL) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function; returns (argmin, min)."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = fn(c), fn(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = fn(d)
    s = 0.5 * (a + b)
    return s, fn(s)


def overlap(rho1, rho2, s: float) -> float:
    """Tr rho_1^s rho_2^{1-s} for full-rank states and s in [0, 1]."""
    a, b, w = _overlap_weights(rho1, rho2)
    return float(a**s @ w @ b ** (1.0 - s))


def chernoff_information(rho1, rho2) -> float:
    """-ln min_{s in [0,1]} Tr rho_1^s rho_2^{1-s}.

    Both eigendecompositions are computed once; the overlap is then a cheap
    function of s, convex on [0, 1], minimized by golden-section search.
    """
    a, b, w = _overlap_weights(rho1, rho2)
    ln_a, ln_b = np.log(a), np.log(b)

    def objective(s: float) -> float:
        return float(np.exp(s * ln_a) @ w @ np.exp((1.0 - s) * ln_b))

    _, best = _golden_min(objective, 0.0, 1.0)
    best = min(best, objective(0.0), objective(1.0))
    value = -math.log(best)
    return max(value, 0.0)


def depolarize(rho, t: float) -> np.ndarray:
    """Depolarizing channel t (Tr rho) I/d + (1 - t) rho."""
    mat = validate_hermitian(rho)
    d = mat.shape[0]
    return t * np.trace(mat) / d * np.eye(d, dtype=complex) + (1.0 - t) * mat


# Classical counterparts.  Each has a direct scalar implementation; applying
# the quantum operation to diag(p) must agree within 1e-10.


def _positive_vector(p) -> np.ndarray:
    v = np.asarray(p, dtype=float)
    if np.any(v <= 0):
        raise SupportMismatchError("distribution has a zero or negative entry")
    return v


def classical_relative_entropy(p, q) -> float:
    pv, qv = _positive_vector(p), _positive_vector(q)
    return float(np.sum(pv * (np.log(pv) - np.log(qv))))


def classical_f_divergence(p, q, f: OperatorConvexF) -> float:
    pv, qv = _positive_vector(p), _positive_vector(q)
    return float(np.sum(qv * f(pv / qv)))


def classical_chernoff(p, q) -> float:
    pv, qv = _positive_vector(p), _positive_vector(q)
    ln_p, ln_q = np.log(pv), np.log(qv)

    def objective(s: float) -> float:
        return float(np.sum(np.exp(s * ln_p + (1.0 - s) * ln_q)))

    _, best = _golden_min(objective, 0.0, 1.0)
    best = min(best, objective(0.0), objective(1.0))
    return max(-math.log(best), 0.0)


def classical_metric(p0, x, y, kind: MetricKind) -> float:
    """Fisher-type form sum_i x_i y_i / p_i via the diagonal kernel."""
    pv = _positive_vector(p0)
    xv = np.asarray(x, dtype=float)
    yv = np.asarray(y, dtype=float)
    kernel = _metric_kernel(kind, pv)
    return float(np.sum(np.diag(kernel) * xv * yv))
