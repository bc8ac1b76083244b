import cmath
import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, strategies as st

from zalcman.errors import CoefficientRangeError, ValidationError
from zalcman.functionals import FunctionalSpec, zalcman
from zalcman.measures import AtomicMeasure, moment, theoremA_measure
from zalcman.series import (PowerSeries, Rotation, coeff, convex_combination, default_order,
                            half_plane_kernel, koebe_series, rotate, slit_log_series,
                            theoremB_transform)

z, t = sp.symbols("z t")


def sympy_coeffs(expr, N):
    """Taylor coefficients a_1..a_N of a sympy expression in z."""
    ser = sp.series(expr, z, 0, N + 1).removeO()
    return [complex(sp.N(ser.coeff(z, k))) for k in range(1, N + 1)]


def test_coeff_examples():
    assert coeff(koebe_series(5), 3) == 3
    assert coeff(half_plane_kernel(0.0, 5), 4) == 1
    assert coeff(slit_log_series(0.0, 5), 4) == pytest.approx(0.5)


def test_coeff_out_of_range():
    s = koebe_series(3)
    with pytest.raises(CoefficientRangeError):
        s.coeff(0)
    with pytest.raises(CoefficientRangeError):
        s.coeff(4)


@pytest.mark.parametrize("beta", [sp.Integer(0), sp.Rational(1, 4), sp.Rational(1, 2), sp.Rational(9, 10)])
def test_slit_log_matches_symbolic_expansion(beta):
    N = 9
    expr = -2 * (1 - beta) * sp.log(1 - z) - z * (1 - 2 * beta)
    expected = sympy_coeffs(expr, N)
    got = slit_log_series(float(beta), N).coeffs
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-14)


def test_slit_log_examples():
    assert slit_log_series(0.0, 5).coeff(3) == pytest.approx(2 / 3, abs=1e-15)
    assert slit_log_series(0.5, 5).coeff(2) == pytest.approx(0.5, abs=1e-15)
    for beta in (0.0, 0.3, 0.99):
        assert slit_log_series(beta, 4).coeff(1) == 1


@pytest.mark.parametrize("beta", [-0.1, 1.0, 2.0])
def test_slit_log_rejects_beta(beta):
    with pytest.raises(ValidationError):
        slit_log_series(beta, 4)


def test_half_plane_kernel_examples():
    np.testing.assert_allclose(half_plane_kernel(0.0, 3).coeffs, [1, 1, 1])
    np.testing.assert_allclose(half_plane_kernel(math.pi, 3).coeffs, [1, -1, 1], atol=1e-15)
    np.testing.assert_allclose(half_plane_kernel(math.pi / 2, 3).coeffs, [1, 1j, -1], atol=1e-15)


def test_half_plane_kernel_matches_geometric_series():
    theta = 0.7
    expected = sympy_coeffs(z / (1 - sp.exp(sp.I * theta) * z), 6)
    np.testing.assert_allclose(half_plane_kernel(theta, 6).coeffs, expected, atol=1e-14)


def test_koebe():
    assert koebe_series(2).coeffs == (1, 2)
    assert koebe_series(5).coeff(5) == 5
    assert abs(zalcman(koebe_series(5), FunctionalSpec(1.0, 3, 3))) == 4
    np.testing.assert_allclose(koebe_series(7).coeffs, sympy_coeffs(z / (1 - z) ** 2, 7))


def test_rotate_examples():
    s = slit_log_series(0.2, 5)
    assert rotate(s, 1) == s
    assert rotate(koebe_series(4), -1).coeffs == (1, -2, 3, -4)
    assert rotate(PowerSeries.normalized([1, 0]), 1j).coeff(2) == 1j


def test_rotate_rejects_non_unit():
    with pytest.raises(ValidationError):
        rotate(koebe_series(3), 1.01)
    with pytest.raises(ValidationError):
        Rotation(0.5j)


def test_rotation_is_conj_c_f_cz():
    # compare against direct evaluation of conj(c) f(c z) at a few points
    c = cmath.exp(0.9j)
    s = half_plane_kernel(0.3, 12)
    r = rotate(s, c)
    for zz in (0.1, 0.05j, -0.07 + 0.02j):
        direct = c.conjugate() * sum(a * (c * zz) ** k for k, a in enumerate(s.coeffs, start=1))
        via = sum(a * zz ** k for k, a in enumerate(r.coeffs, start=1))
        assert abs(direct - via) < 1e-15


angles = st.floats(min_value=0, max_value=2 * math.pi, allow_nan=False)


@given(angles, angles)
def test_rotate_round_trip(theta, phi):
    s = half_plane_kernel(theta, 8)
    c = Rotation.by_angle(phi)
    back = rotate(rotate(s, c), c.inverse())
    np.testing.assert_allclose(back.coeffs, s.coeffs, rtol=0, atol=1e-12)


@given(angles)
def test_kernel_coefficients_unimodular(theta):
    s = half_plane_kernel(theta, 10)
    np.testing.assert_allclose(np.abs(s.as_array()), 1.0, atol=1e-12)


def test_convex_combination_examples():
    s = koebe_series(4)
    assert convex_combination([(1.0, s)]) == s
    half = convex_combination([(0.5, half_plane_kernel(0.0, 3)), (0.5, half_plane_kernel(math.pi, 3))])
    assert abs(half.coeff(2)) < 1e-15


def test_convex_combination_theoremA_n2():
    mu = theoremA_measure(2, [0.5], [0.5])
    parts = [(w, half_plane_kernel(th, 3)) for th, w in mu.atoms]
    f = convex_combination(parts)
    # oracle: moment formula a_k = b_{k-1} / 2
    for k in (2, 3):
        assert abs(f.coeff(k) - moment(mu, k - 1) / 2) < 1e-15
    assert abs(f.coeff(2)) < 1e-15
    assert abs(f.coeff(3) - (-1)) < 1e-15


def test_convex_combination_validation():
    s = koebe_series(3)
    with pytest.raises(ValidationError):
        convex_combination([(0.5, s), (0.4, s)])
    with pytest.raises(ValidationError):
        convex_combination([(1.5, s), (-0.5, s)])
    with pytest.raises(ValidationError):
        convex_combination([(0.5, s), (0.5, koebe_series(4))])


weights3 = st.lists(st.floats(min_value=0.01, max_value=1.0), min_size=3, max_size=3)


@given(weights3, st.lists(angles, min_size=3, max_size=3))
def test_convex_combination_is_linear(ws, thetas):
    total = sum(ws)
    ws = [w / total for w in ws]
    ws[-1] = 1.0 - sum(ws[:-1])
    parts = [(w, half_plane_kernel(th, 6)) for w, th in zip(ws, thetas)]
    f = convex_combination(parts)
    for k in range(1, 7):
        expected = sum(w * s.coeff(k) for w, s in parts)
        assert abs(f.coeff(k) - expected) < 1e-12


def test_theoremB_transform_matches_termwise_integration():
    N = 7
    f_poly = sum(sp.Rational(1, k) * sp.Integer(k % 3 - 1) * z ** k for k in range(2, N + 1)) + z
    F = -z + 2 * sp.integrate((f_poly / z).subs(z, t), (t, 0, z))
    f = PowerSeries(sympy_coeffs(f_poly, N))
    np.testing.assert_allclose(theoremB_transform(f).coeffs, sympy_coeffs(F, N), atol=1e-14)


def test_theoremB_transform_examples():
    F = theoremB_transform(half_plane_kernel(0.0, 8))
    assert F.coeff(1) == 1
    for k in range(2, 9):
        assert abs(F.coeff(k) - 2 / k) < 1e-12
    G = theoremB_transform(PowerSeries.normalized([0.0, -1.0]))
    assert G.coeffs[1] == 0 and abs(G.coeff(3) + 2 / 3) < 1e-15
    ident = PowerSeries.identity(5)
    assert theoremB_transform(ident) == ident


def test_default_order_covers_top_index():
    for n in range(2, 7):
        for m in range(2, 7):
            assert default_order(n, m) >= n + m - 1
