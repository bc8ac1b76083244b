import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zalcman.errors import CoefficientRangeError, ValidationError
from zalcman.measures import (AtomicMeasure, canonical_angle, livingston_gap, livingston_gap_batch,
                              moment, random_measure, theoremA_measure)


def direct_moment(mu, k):
    # plain-python complex sum, no numpy
    import cmath
    return 2 * sum(w * cmath.exp(1j * k * th) for th, w in mu.atoms)


def test_moment_examples():
    assert moment(AtomicMeasure.point_mass(0.0), 5) == 2
    mu = random_measure(4, seed=3)
    assert abs(moment(mu, 0) - 2) < 1e-12
    two = AtomicMeasure(((3 * math.pi / 2, 0.5), (math.pi / 2, 0.5)))
    assert abs(moment(two, 1)) < 1e-15
    assert abs(moment(two, 1) - direct_moment(two, 1)) < 1e-15


def test_moment_negative_index():
    with pytest.raises(CoefficientRangeError):
        moment(AtomicMeasure.point_mass(), -1)


def test_measure_validation():
    with pytest.raises(ValidationError):
        AtomicMeasure(())
    with pytest.raises(ValidationError):
        AtomicMeasure(((0.0, 0.6), (1.0, 0.6)))
    with pytest.raises(ValidationError):
        AtomicMeasure(((0.0, 1.5), (1.0, -0.5)))


def test_angles_canonical_and_zero_weights_pruned():
    mu = AtomicMeasure(((5 * math.pi / 2, 0.5), (-math.pi / 2, 0.5), (1.0, 0.0)))
    assert len(mu) == 2
    assert mu.atoms[0][0] == pytest.approx(math.pi / 2)
    assert mu.atoms[1][0] == pytest.approx(3 * math.pi / 2)
    assert canonical_angle(-1e-17) < 2 * math.pi
    assert canonical_angle(2 * math.pi) == 0.0


def test_json_round_trip():
    mu = random_measure(3, seed=11)
    again = AtomicMeasure.from_json(json.loads(json.dumps(mu.to_json())))
    assert again == mu
    with pytest.raises(ValidationError):
        AtomicMeasure.from_json({"atomz": []})


def test_livingston_examples():
    for th in (0.0, 1.3, 5.0):
        for n, m in ((2, 2), (3, 5), (6, 4)):
            assert livingston_gap(AtomicMeasure.point_mass(th), n, m) == pytest.approx(2, abs=1e-12)
    mu = AtomicMeasure(((0.0, 0.5), (math.pi, 0.5)))
    assert livingston_gap(mu, 2, 2) == pytest.approx(2, abs=1e-15)


def test_livingston_batch_matches_scalar():
    rng = np.random.default_rng(5)
    for K in (1, 3, 6):
        mus = [random_measure(K, seed=int(s)) for s in rng.integers(0, 10**6, 20)]
        A = np.array([mu.angles for mu in mus])
        W = np.array([mu.weights for mu in mus])
        for n, m in ((2, 3), (4, 4), (6, 5)):
            batch = livingston_gap_batch(A, W, n, m)
            scalar = [livingston_gap(mu, n, m) for mu in mus]
            np.testing.assert_allclose(batch, scalar, atol=1e-13)


@settings(max_examples=200)
@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.integers(2, 6), st.integers(2, 6))
def test_livingston_inequality(K, seed, n, m):
    assert livingston_gap(random_measure(K, seed), n, m) <= 2 + 1e-12


@given(st.integers(1, 8), st.integers(0, 2**32 - 1), st.integers(0, 30))
def test_moment_bounded(K, seed, k):
    assert abs(moment(random_measure(K, seed), k)) <= 2 + 1e-12


def test_theoremA_measure_n2():
    mu = theoremA_measure(2, [0.5], [0.5])
    assert len(mu) == 2
    (t1, w1), (t2, w2) = mu.atoms
    assert t1 == pytest.approx(3 * math.pi / 2) and w1 == 0.5
    assert t2 == pytest.approx(math.pi / 2) and w2 == 0.5


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_theoremA_measure_structure(n):
    rng = np.random.default_rng(n)
    even = rng.dirichlet(np.ones(n - 1)) / 2
    odd = rng.dirichlet(np.ones(n - 1)) / 2
    mu = theoremA_measure(n, even, odd)
    assert len(mu) == 2 * n - 2
    assert math.fsum(mu.weights) == pytest.approx(1, abs=1e-12)
    # construction forces a_n = b_{n-1}/2 = 0 and |a_{2n-1}| = 1
    assert abs(moment(mu, n - 1)) < 1e-12
    assert abs(moment(mu, 2 * n - 2)) == pytest.approx(2, abs=1e-12)


def test_theoremA_measure_validation():
    with pytest.raises(ValidationError):
        theoremA_measure(3, [0.25, 0.3], [0.25, 0.25])
    with pytest.raises(ValidationError):
        theoremA_measure(3, [0.5], [0.25, 0.25])
    with pytest.raises(ValidationError):
        theoremA_measure(1)


def test_random_measure_contract():
    assert random_measure(1, seed=99).atoms[0][1] == 1.0
    assert random_measure(5, seed=4) == random_measure(5, seed=4)
    assert random_measure(5, seed=4) != random_measure(5, seed=5)
    mu = random_measure(3, seed=1)
    assert len(mu) == 3 and all(0 <= t < 2 * math.pi for t, _ in mu.atoms)
    with pytest.raises(ValidationError):
        random_measure(0, seed=1)
