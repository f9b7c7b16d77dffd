import itertools
import math

import numpy as np
import pytest

from qldp.errors import ValidationError
from qldp.exponents import classical_opt_asym
from qldp.mechanisms import LdpMechanism, binary_mechanism, sigma_star
from qldp.metrics import holevo_information
from qldp.optimal import (
    asymptotic_prediction,
    estimate_beta0,
    kairouz_lp,
    kairouz_lp_symmetric,
    mutual_information_utility,
    pairwise_sqrt_utility,
    utility_of_mechanism,
)


def xlogx(t):
    return t * math.log(t)


@pytest.mark.parametrize("factory", [mutual_information_utility, pairwise_sqrt_utility])
def test_utility_kernel_invariants(factory):
    rng = np.random.default_rng(0)
    for n in (2, 4):
        utility = factory(n)
        for _ in range(50):
            z = rng.uniform(0.1, 3.0, size=n)
            alpha = float(rng.uniform(0.1, 5.0))
            value = utility.evaluate(z)
            assert utility.evaluate(alpha * z) == pytest.approx(alpha * value, abs=1e-8 * (1 + abs(value)))
            z2 = rng.uniform(0.1, 3.0, size=n)
            assert utility.evaluate(z + z2) <= utility.evaluate(z) + utility.evaluate(z2) + 1e-8
            perm = rng.permutation(n)
            assert utility.evaluate(z[perm]) == pytest.approx(value, abs=1e-10)
        assert utility.evaluate(np.ones(n)) == pytest.approx(utility.value_at_ones, abs=1e-12)


@pytest.mark.parametrize("factory", [mutual_information_utility, pairwise_sqrt_utility])
def test_beta0_matches_finite_difference(factory):
    for n in (2, 3, 6):
        utility = factory(n)
        numeric = estimate_beta0(utility.evaluate, n)
        assert numeric == pytest.approx(utility.beta0, rel=1e-6)


def test_constant_column_mechanism_gives_value_at_ones():
    q = np.array([[0.3, 0.3, 0.3], [0.7, 0.7, 0.7]])
    mech = LdpMechanism(q=q, epsilon=1.0)
    assert utility_of_mechanism(mech, mutual_information_utility(3)) == pytest.approx(0.0, abs=1e-12)
    assert utility_of_mechanism(mech, pairwise_sqrt_utility(3)) == pytest.approx(-1.0, abs=1e-12)


def test_mi_of_randomized_response():
    mech = binary_mechanism(2, math.log(3.0))
    expected = math.log(2.0) + 0.75 * math.log(0.75) + 0.25 * math.log(0.25)
    assert utility_of_mechanism(mech, mutual_information_utility(2)) == pytest.approx(expected, abs=1e-12)


def test_mi_utility_equals_holevo_of_diagonal_embedding():
    rng = np.random.default_rng(1)
    for n, outputs in [(2, 3), (3, 4)]:
        q = rng.uniform(0.1, 1.0, size=(outputs, n))
        q /= q.sum(axis=0, keepdims=True)
        mech = LdpMechanism(q=q, epsilon=10.0)
        states = [np.diag(mech.column(x).astype(complex)) for x in range(n)]
        chi = holevo_information(np.full(n, 1.0 / n), states)
        assert utility_of_mechanism(mech, mutual_information_utility(n)) == pytest.approx(chi, abs=1e-10)


def test_lp_two_inputs_reference_value():
    utility = mutual_information_utility(2)
    sol = kairouz_lp(2, math.log(2.0), utility)
    assert sol.status == "optimal"
    assert sol.value == pytest.approx(0.0566330122, abs=1e-9)
    assert sol.value == pytest.approx(kairouz_lp_symmetric(2, math.log(2.0), utility), abs=1e-9)
    assert sol.value == pytest.approx(classical_opt_asym(2, math.log(2.0)), abs=1e-9)


def test_lp_weights_are_feasible():
    utility = mutual_information_utility(3)
    sol = kairouz_lp(3, 0.8, utility)
    theta = math.exp(0.8) - 1.0
    total = np.zeros(3)
    for z, alpha in sol.weights.items():
        assert alpha >= -1e-10
        total += alpha * (1.0 + theta * np.array(z))
    assert np.allclose(total, 1.0, atol=1e-9)


@pytest.mark.parametrize("factory", [mutual_information_utility, pairwise_sqrt_utility])
def test_lp_dominates_binary_mechanism(factory):
    for n in (2, 3, 4):
        utility = factory(n)
        for epsilon in (0.3, 1.0):
            mech = binary_mechanism(n, epsilon)
            assert kairouz_lp(n, epsilon, utility).value >= utility_of_mechanism(mech, utility) - 1e-9


def test_symmetric_reduction_matches_full_lp():
    for factory in (mutual_information_utility, pairwise_sqrt_utility):
        for n in (2, 3, 4, 5):
            utility = factory(n)
            for epsilon in (0.1, 0.5, 1.0):
                full = kairouz_lp(n, epsilon, utility).value
                reduced = kairouz_lp_symmetric(n, epsilon, utility)
                assert full == pytest.approx(reduced, abs=1e-9)


def test_symmetric_reduction_equals_asym_optimum_for_mi():
    for n in (2, 3, 5, 8):
        for epsilon in (0.2, 0.9, 2.0):
            assert kairouz_lp_symmetric(n, epsilon, mutual_information_utility(n)) == pytest.approx(
                classical_opt_asym(n, epsilon), abs=1e-12
            )


def test_symmetric_reduction_covers_flat_pattern():
    # the all-zeros pattern contributes phi(1)/1, so the optimum never falls below it
    for factory in (mutual_information_utility, pairwise_sqrt_utility):
        utility = factory(3)
        assert kairouz_lp_symmetric(3, 0.4, utility) >= utility.value_at_ones - 1e-12


def test_lp_small_eps_coefficient():
    epsilon = 1e-2
    for n in (2, 3, 4):
        value = kairouz_lp(n, epsilon, mutual_information_utility(n)).value
        coeff = (n // 2) * ((n + 1) // 2) / (2.0 * n * n)
        assert value / epsilon**2 == pytest.approx(coeff, rel=0.02)


def test_lp_nondecreasing_in_eps():
    utility = mutual_information_utility(3)
    values = [kairouz_lp(3, e, utility).value for e in np.linspace(0.1, 2.0, 12)]
    assert all(b >= a - 1e-10 for a, b in zip(values, values[1:]))


def test_quantum_dominance():
    for n in (3, 4, 5, 6):
        utility = mutual_information_utility(n)
        for epsilon in (0.1, 0.3, 0.5):
            mech = sigma_star(n, epsilon)
            chi = holevo_information(np.full(n, 1.0 / n), mech.states)
            assert chi >= kairouz_lp(n, epsilon, utility).value - 1e-9


def test_binary_gap_vanishes_faster_than_quadratic():
    epsilon = 1e-2
    for n in (2, 3, 4, 5):
        utility = mutual_information_utility(n)
        gap = kairouz_lp(n, epsilon, utility).value - utility_of_mechanism(binary_mechanism(n, epsilon), utility)
        assert gap >= -1e-12
        assert gap / epsilon**2 < 0.02


def test_asymptotic_prediction_values():
    classical, quantum, ratio = asymptotic_prediction(3, 0.0, 1.0)
    assert ratio == pytest.approx(1.5)
    assert asymptotic_prediction(4, 0.0, 1.0)[2] == pytest.approx(1.5)
    assert asymptotic_prediction(2, 0.0, 1.0)[2] == pytest.approx(1.0)
    mi4 = mutual_information_utility(4)
    classical, quantum, _ = asymptotic_prediction(4, mi4.value_at_ones, mi4.beta0)
    assert classical == pytest.approx(1.0 / 8.0)
    assert quantum == pytest.approx(3.0 / 16.0)
    with pytest.raises(ValidationError):
        asymptotic_prediction(3, 0.0, -1.0)


def test_lp_rejects_mismatched_arity():
    with pytest.raises(ValidationError):
        kairouz_lp(3, 0.5, mutual_information_utility(4))
    with pytest.raises(ValidationError):
        kairouz_lp_symmetric(3, 0.5, mutual_information_utility(4))


def test_full_lp_vertex_structure():
    # at the optimum the mass sits on a single weight class plus possibly the
    # flat pattern; verify the support patterns share one weight k > 0
    sol = kairouz_lp(4, 0.7, mutual_information_utility(4))
    weights = {sum(z) for z, a in sol.weights.items() if a > 1e-8 and sum(z) > 0}
    assert len(weights) == 1


def test_brute_force_lp_on_coarse_grid():
    # tiny n: compare the LP against direct enumeration of feasible two-class
    # combinations on a fine weight grid
    n, epsilon = 2, 0.6
    theta = math.exp(epsilon) - 1.0
    utility = mutual_information_utility(n)
    patterns = list(itertools.product((0, 1), repeat=n))
    values = [utility.evaluate(1.0 + theta * np.array(z)) for z in patterns]
    best = 0.0
    # all pairs of patterns (i, j): solve the 2x2 feasibility exactly by symmetry
    for i, zi in enumerate(patterns):
        for j, zj in enumerate(patterns):
            a = np.array([1.0 + theta * np.array(zi), 1.0 + theta * np.array(zj)]).T
            try:
                alpha = np.linalg.solve(a, np.ones(n))
            except np.linalg.LinAlgError:
                continue
            if np.all(alpha >= -1e-12):
                best = max(best, float(alpha[0] * values[i] + alpha[1] * values[j]))
    assert kairouz_lp(n, epsilon, utility).value == pytest.approx(best, abs=1e-9)
