"""Full-scale runs of the algebraic identities; deselect with ``-m "not slow"``."""

from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engine.intervals import (
    Interval,
    cone,
    direct_sum,
    dual,
    is_interval,
    join,
    random_interval,
    reduce,
    shift_by_set,
    skeleton,
    skeleton_split,
)
from engine.laplacian import betti, boundary_matrix, circeq, spectrum
from engine.shifted import random_shifted_interval
from engine.spectrum import (
    check_recursion_all_vertices,
    satisfies_recursion,
    specialization_checks,
    spectrum_polynomial,
)
from modules.fuzz import fuzz_conjecture
from modules.serialization import FuzzConfig
from tests.strategies import intervals, shifted_intervals

pytestmark = pytest.mark.slow


def assert_chain_complex(phi):
    for i in range(0, phi.n):
        assert (boundary_matrix(phi, i) @ boundary_matrix(phi, i + 1)).is_zero()


def assert_zero_eigenvalues_count_homology(phi):
    report = spectrum(phi)
    for i, b in zip(range(-1, phi.n), betti(phi)):
        assert sum(1 for lam in report[i] if lam == 0) == b


def test_every_interval_on_four_vertices_is_a_chain_complex():
    n = 4
    universe = list(range(1 << n))
    seen = 0
    for bits in product((False, True), repeat=len(universe)):
        family = [f for f, keep in zip(universe, bits) if keep]
        if not is_interval(family, n):
            continue
        phi = Interval(n, family)
        assert_chain_complex(phi)
        assert betti(reduce(phi, 1)) == betti(phi)
        seen += 1
    assert seen > 1 << n


def test_random_intervals_are_chain_complexes():
    rng = np.random.default_rng(2024)
    for k in range(1000):
        n = 5 + k % 3
        phi = random_interval(n, rng)
        assert_chain_complex(phi)
        assert_zero_eigenvalues_count_homology(phi)
        assert betti(reduce(phi, int(rng.integers(1, n + 1)))) == betti(phi)


def test_specializations_at_every_vertex():
    rng = np.random.default_rng(500)
    for _ in range(500):
        phi = random_interval(int(rng.integers(1, 7)), rng)
        for e in range(1, phi.n + 1):
            assert specialization_checks(phi, e).passed


def test_shifted_intervals_are_integral_and_recursive():
    for seed in range(200):
        phi = random_shifted_interval(1 + seed % 7, seed)
        assert spectrum(phi).integral
        verdicts = check_recursion_all_vertices(phi)
        assert all(v.holds and v.rigorous for v in verdicts.values())


# -- closure ----------------------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(shifted_intervals(max_n=5))
def test_recursion_closed_under_dual_cone_and_shift(phi):
    assert satisfies_recursion(dual(phi))
    assert satisfies_recursion(cone(phi, phi.n + 1))
    assert satisfies_recursion(shift_by_set(phi, [phi.n + 1, phi.n + 2]))


@settings(max_examples=100, deadline=None)
@given(shifted_intervals(max_n=4), shifted_intervals(max_n=4))
def test_recursion_closed_under_direct_sum(first, second):
    n = max(first.n, second.n)
    a, b = 1 << n, 1 << (n + 1)
    left = Interval(n + 2, (f | a for f in first.faces))
    right = Interval(n + 2, (f | b for f in second.faces))
    assert satisfies_recursion(direct_sum(left, right))


@settings(max_examples=100, deadline=None)
@given(shifted_intervals(max_n=4), intervals(max_n=3))
def test_recursion_closed_under_join(phi, other):
    k = phi.n
    theta = Interval(k + other.n, (f << k for f in other.faces))
    assert satisfies_recursion(join(phi, theta), vertices=range(1, k + 1))


@settings(max_examples=100, deadline=None)
@given(shifted_intervals(max_n=6))
def test_recursion_closed_under_every_skeleton(phi):
    for i in range(-1, phi.n):
        for j in range(i, phi.n):
            assert satisfies_recursion(skeleton(phi, i, j))
    for i in range(0, phi.n):
        assert satisfies_recursion(skeleton_split(phi, i))


# -- spectral identities ------------------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(intervals(max_n=6), st.data())
def test_spectral_identities(phi, data):
    assert spectrum_polynomial(dual(phi)) == spectrum_polynomial(phi).t_reversal(phi.n)
    i = data.draw(st.integers(-1, phi.n - 1))
    lower, upper = spectrum(skeleton(phi, i - 1, i)), spectrum(skeleton(phi, i, i + 1))
    assert circeq(spectrum(phi)[i], lower[i] + upper[i], tolerance=1e-5)
    if i >= 0:
        assert circeq(lower[i - 1], lower[i], tolerance=1e-5)


# -- matroid campaigns --------------------------------------------------------------------------

def test_single_element_strong_maps_always_pass():
    config = FuzzConfig(n_min=2, n_max=7, rank_gaps=[1], trials=200, seed=1)
    report = fuzz_conjecture(config, jobs=1)
    assert report.tallies[1].pass_rate == 1.0


def test_two_element_strong_maps_are_tallied():
    config = FuzzConfig(n_min=2, n_max=7, rank_gaps=[2], trials=200, seed=2)
    report = fuzz_conjecture(config, jobs=1)
    tally = report.tallies[2]
    assert tally.trials == 200
    assert tally.both <= min(tally.integral, tally.recursion_holds)
    for result in report.counterexamples:
        assert result.seed == (2, result.trial)
