import math

import numpy as np
import pytest

from qldp.errors import DomainError, SupportMismatchError, ValidationError
from qldp.metrics import (
    BKM,
    KL,
    RLD,
    SLD,
    SQUARE,
    SQUARED_DIFF,
    MetricKind,
    chernoff_information,
    classical_chernoff,
    classical_f_divergence,
    classical_metric,
    classical_relative_entropy,
    depolarize,
    holevo_information,
    neg_ratio,
    overlap,
    petz_f_divergence,
    petz_metric,
    relative_entropy,
    von_neumann_entropy,
    wyd,
)
from qldp.sampling import random_density, random_hermitian, random_unitary

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
ALL_KINDS = [SLD, RLD, BKM, wyd(0.3), wyd(0.5), wyd(0.7)]


def xlogx(t):
    return t * math.log(t)


def test_metric_kind_validation():
    with pytest.raises(ValidationError):
        MetricKind("fisher")
    with pytest.raises(ValidationError):
        wyd(1.5)
    with pytest.raises(ValidationError):
        MetricKind("sld", 0.5)


def test_petz_metric_classical_fisher_case():
    # commuting inputs reduce to sum x_i^2 / lambda_i for every normalized kind
    rho0 = np.eye(2) / 2
    x = np.diag([0.5, -0.5]).astype(complex)
    for kind in ALL_KINDS:
        assert petz_metric(rho0, x, x, kind) == pytest.approx(1.0, abs=1e-12)


def test_petz_metric_flat_state_off_diagonal():
    rho0 = np.eye(2) / 2
    x = PAULI_X / 4
    # degenerate spectrum: every kernel entry is 1/lambda = 2, so J = 2 Tr X^2
    assert petz_metric(rho0, x, x, BKM) == pytest.approx(0.25, abs=1e-12)


def test_petz_metric_commuting_reduction():
    rng = np.random.default_rng(0)
    for _ in range(25):
        p = rng.uniform(0.2, 1.0, size=3)
        p /= p.sum()
        x = rng.normal(size=3)
        rho0 = np.diag(p).astype(complex)
        xm = np.diag(x).astype(complex)
        reference = float(np.sum(x * x / p))
        for kind in ALL_KINDS:
            assert petz_metric(rho0, xm, xm, kind) == pytest.approx(reference, abs=1e-10)
            assert classical_metric(p, x, x, kind) == pytest.approx(reference, abs=1e-10)


def test_metric_sandwich_property():
    rng = np.random.default_rng(1)
    for _ in range(50):
        rho0 = random_density(rng, 3)
        x = random_hermitian(rng, 3)
        lo = petz_metric(rho0, x, x, SLD)
        hi = petz_metric(rho0, x, x, RLD)
        for kind in (BKM, wyd(0.3), wyd(0.5), wyd(0.7)):
            mid = petz_metric(rho0, x, x, kind)
            assert lo <= mid + 1e-9 * (1 + abs(mid))
            assert mid <= hi + 1e-9 * (1 + abs(hi))


def test_petz_metric_rejects_singular_state():
    with pytest.raises(DomainError):
        petz_metric(np.diag([1.0, 0.0]), PAULI_X, PAULI_X, BKM)


def test_fdiv_equal_states_kl_zero():
    rng = np.random.default_rng(2)
    rho = random_density(rng, 3)
    assert petz_f_divergence(rho, rho, KL) == pytest.approx(0.0, abs=1e-12)


def test_fdiv_commuting_kl_matches_scalar():
    p = np.diag([0.75, 0.25]).astype(complex)
    q = np.diag([0.5, 0.5]).astype(complex)
    expected = 0.75 * math.log(1.5) + 0.25 * math.log(0.5)
    assert petz_f_divergence(p, q, KL) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.130812035, abs=1e-9)


def test_fdiv_equal_states_value_is_f_at_one():
    # D_F(rho || rho) = F(1) Tr rho for every tag
    rng = np.random.default_rng(30)
    rho = random_density(rng, 4)
    for f, f_at_one in [
        (KL, 0.0),
        (SQUARE, 1.0),
        (SQUARED_DIFF, 0.0),
        (neg_ratio(1.0), -0.5),
        (neg_ratio(3.0), -0.25),
    ]:
        assert petz_f_divergence(rho, rho, f) == pytest.approx(f_at_one, abs=1e-10)


def test_fdiv_square_equal_states():
    # D_{t^2}(rho || rho) = F(1) Tr rho = 1, and in general the square
    # divergence equals the trace form Tr rho1^2 rho2^{-1}
    rng = np.random.default_rng(3)
    rho = random_density(rng, 3)
    assert petz_f_divergence(rho, rho, SQUARE) == pytest.approx(1.0, abs=1e-10)
    rho2 = random_density(rng, 3)
    direct = float(np.trace(rho @ rho @ np.linalg.inv(rho2)).real)
    assert petz_f_divergence(rho, rho2, SQUARE) == pytest.approx(direct, abs=1e-10)


def test_relative_entropy_matches_fdiv_kl():
    rng = np.random.default_rng(4)
    for _ in range(100):
        a = random_density(rng, 3)
        b = random_density(rng, 3)
        assert relative_entropy(a, b) == pytest.approx(petz_f_divergence(a, b, KL), abs=1e-10)


def test_relative_entropy_basics():
    rng = np.random.default_rng(5)
    rho = random_density(rng, 4)
    assert relative_entropy(rho, rho) == pytest.approx(0.0, abs=1e-12)
    assert von_neumann_entropy(np.eye(4) / 4) == pytest.approx(math.log(4.0), abs=1e-12)
    with pytest.raises(SupportMismatchError):
        relative_entropy(np.diag([1.0, 0.0]), np.eye(2) / 2)


def test_holevo_equal_states_zero():
    rng = np.random.default_rng(6)
    rho = random_density(rng, 3)
    assert holevo_information([0.3, 0.7], [rho, rho]) == pytest.approx(0.0, abs=1e-12)


def test_holevo_randomized_response_binary_mi():
    # diagonal embedding of randomized response with e^eps = 3 gives the
    # binary mutual information ln 2 - H_b(1/4)
    states = [np.diag([0.75, 0.25]).astype(complex), np.diag([0.25, 0.75]).astype(complex)]
    expected = math.log(2.0) + 0.75 * math.log(0.75) + 0.25 * math.log(0.25)
    assert holevo_information([0.5, 0.5], states) == pytest.approx(expected, abs=1e-12)
    assert expected == pytest.approx(0.130812035, abs=1e-9)


def test_holevo_sigma_star_small_eps_coefficient():
    from qldp.mechanisms import sigma_star

    epsilon = 1e-3
    for n in (3, 5):
        mech = sigma_star(n, epsilon)
        chi = holevo_information(np.full(n, 1.0 / n), mech.states)
        assert chi / epsilon**2 == pytest.approx((n - 1) / (4 * n), rel=0.01)


def test_holevo_validation():
    rho = np.eye(2) / 2
    with pytest.raises(ValidationError):
        holevo_information([0.6, 0.6], [rho, rho])
    with pytest.raises(ValidationError):
        holevo_information([0.5, 0.5], [rho, np.eye(3) / 3])


def test_chernoff_equal_states():
    rng = np.random.default_rng(7)
    rho = random_density(rng, 3)
    assert chernoff_information(rho, rho) == pytest.approx(0.0, abs=1e-12)


def test_chernoff_commuting_value():
    a = np.diag([0.75, 0.25]).astype(complex)
    b = np.diag([0.25, 0.75]).astype(complex)
    # symmetric pair: minimum at s = 1/2 with value 2 sqrt(3)/4
    expected = -math.log(2.0 * math.sqrt(3.0) / 4.0)
    assert chernoff_information(a, b) == pytest.approx(expected, abs=1e-11)
    assert expected == pytest.approx(math.log(2.0 / math.sqrt(3.0)), abs=1e-15)


def test_chernoff_symmetry():
    rng = np.random.default_rng(8)
    for _ in range(20):
        a = random_density(rng, 3)
        b = random_density(rng, 3)
        assert chernoff_information(a, b) == pytest.approx(chernoff_information(b, a), abs=1e-10)


def test_chernoff_against_dense_grid():
    rng = np.random.default_rng(9)
    a = random_density(rng, 3)
    b = random_density(rng, 3)
    lam_a, u_a = np.linalg.eigh(a)
    lam_b, u_b = np.linalg.eigh(b)
    w = np.abs(u_a.conj().T @ u_b) ** 2
    grid = np.linspace(0.0, 1.0, 20001)
    values = [float(lam_a**s @ w @ lam_b ** (1.0 - s)) for s in grid]
    assert chernoff_information(a, b) == pytest.approx(-math.log(min(values)), abs=1e-9)


def test_classical_quantum_agreement():
    rng = np.random.default_rng(10)
    for _ in range(100):
        p = rng.uniform(0.05, 1.0, size=3)
        p /= p.sum()
        q = rng.uniform(0.05, 1.0, size=3)
        q /= q.sum()
        dp, dq = np.diag(p).astype(complex), np.diag(q).astype(complex)
        assert classical_relative_entropy(p, q) == pytest.approx(relative_entropy(dp, dq), abs=1e-10)
        assert classical_chernoff(p, q) == pytest.approx(chernoff_information(dp, dq), abs=1e-10)
        for f in (KL, SQUARE, SQUARED_DIFF, neg_ratio(1.0)):
            assert classical_f_divergence(p, q, f) == pytest.approx(petz_f_divergence(dp, dq, f), abs=1e-10)


def test_classical_chernoff_identical():
    p = np.array([0.4, 0.6])
    assert classical_chernoff(p, p) == pytest.approx(0.0, abs=1e-12)


def test_classical_kl_half_vs_three_quarters():
    value = classical_relative_entropy([0.5, 0.5], [0.75, 0.25])
    assert value == pytest.approx(0.5 * math.log(2.0 / 3.0) + 0.5 * math.log(2.0), abs=1e-12)
    assert value == pytest.approx(0.5 * math.log(4.0 / 3.0), abs=1e-12)


def test_unitary_invariance():
    rng = np.random.default_rng(11)
    a = random_density(rng, 3)
    b = random_density(rng, 3)
    u = random_unitary(rng, 3)
    ua = u @ a @ u.conj().T
    ub = u @ b @ u.conj().T
    assert relative_entropy(ua, ub) == pytest.approx(relative_entropy(a, b), abs=1e-9)
    assert chernoff_information(ua, ub) == pytest.approx(chernoff_information(a, b), abs=1e-9)
    prior = [0.5, 0.5]
    assert holevo_information(prior, [ua, ub]) == pytest.approx(holevo_information(prior, [a, b]), abs=1e-9)


def test_data_processing_spot_check():
    rng = np.random.default_rng(12)
    for _ in range(50):
        a = random_density(rng, 3)
        b = random_density(rng, 3)
        for t in (0.1, 0.5):
            da, db = depolarize(a, t), depolarize(b, t)
            assert relative_entropy(da, db) <= relative_entropy(a, b) + 1e-9
            assert chernoff_information(da, db) <= chernoff_information(a, b) + 1e-9
            for f in (KL, SQUARE, SQUARED_DIFF, neg_ratio(1.0)):
                assert petz_f_divergence(da, db, f) <= petz_f_divergence(a, b, f) + 1e-9


def test_overlap_at_endpoints_and_equal_states():
    rng = np.random.default_rng(13)
    a = random_density(rng, 3)
    b = random_density(rng, 3)
    assert overlap(a, b, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert overlap(a, b, 1.0) == pytest.approx(1.0, abs=1e-12)
    assert overlap(a, a, 0.5) == pytest.approx(1.0, abs=1e-12)
