import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univalent import series as ps
from univalent.errors import (
    ConstantTermNotOne,
    ConstantTermNotZero,
    InnerConstantTermNotZero,
    NonzeroConstantTerm,
    ZeroConstantTerm,
)
from univalent.series import PowerSeries

unit = st.floats(-1.0, 1.0, allow_nan=False)
cplx = st.builds(complex, unit, unit)


def coeff_lists(min_size=3, max_size=13):
    return st.lists(cplx, min_size=min_size, max_size=max_size)


def damped(draw_list, c0=None):
    c = np.array(draw_list, dtype=complex) * 0.4 ** np.arange(len(draw_list))
    if c0 is not None:
        c[0] = c0
    return PowerSeries(c)


def maxdiff(a, b):
    return float(np.max(np.abs(a.coeffs - b.coeffs)))


# examples --------------------------------------------------------------------

def test_product_examples():
    a = PowerSeries.from_coeffs([1, 1], 10)
    b = PowerSeries.from_coeffs([1, -1], 10)
    assert np.allclose((a * b).coeffs, PowerSeries.from_coeffs([1, 0, -1], 10).coeffs)
    g = PowerSeries.geometric(10)
    # independent convolution oracle: coefficient n of 1/(1-z)^2 is n+1
    assert np.array_equal((g * g).coeffs.real, np.arange(1, 12))
    assert maxdiff(g * PowerSeries.one(10), g) == 0


def test_product_truncates_to_smaller_order():
    assert (PowerSeries.one(5) * PowerSeries.one(9)).order == 5


def test_reciprocal_examples():
    one_minus_z = PowerSeries.from_coeffs([1, -1], 20)
    assert maxdiff(ps.reciprocal(one_minus_z), PowerSeries.geometric(20)) < 1e-15
    lam = 0.5
    q = PowerSeries.from_coeffs([1, -(1 + lam), lam], 10)
    partial = [sum(lam ** j for j in range(n + 1)) for n in range(11)]
    assert np.allclose(ps.reciprocal(q).coeffs.real[:4], [1, 1.5, 1.75, 1.875], atol=1e-15)
    assert np.allclose(ps.reciprocal(q).coeffs, partial, atol=1e-14)


def test_reciprocal_rejects_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        ps.reciprocal(PowerSeries.from_coeffs([0, 1], 5))


def test_log_exp_examples():
    assert maxdiff(ps.log_unit(PowerSeries.one(8)), PowerSeries.zero(8)) == 0
    g = PowerSeries.geometric(30)
    expected = np.concatenate([[0], 1.0 / np.arange(1, 31)])
    assert np.allclose(ps.log_unit(g).coeffs, expected, atol=1e-14)
    assert maxdiff(ps.exp_series(PowerSeries.zero(8)), PowerSeries.one(8)) == 0
    assert maxdiff(ps.exp_series(ps.log_unit(g)), g) < 1e-13
    squared = ps.exp_series(2 * ps.log_unit(g))
    assert np.allclose(squared.coeffs.real, np.arange(1, 32), atol=1e-12)


def test_log_exp_domain_errors():
    with pytest.raises(ConstantTermNotOne):
        ps.log_unit(PowerSeries.from_coeffs([2, 1], 4))
    with pytest.raises(ConstantTermNotZero):
        ps.exp_series(PowerSeries.from_coeffs([1, 1], 4))


def test_differentiation_examples():
    z2 = PowerSeries.from_coeffs([0, 0, 1], 5)
    assert np.array_equal(ps.differentiate(z2).coeffs[:3], [0, 2, 0])
    anti = ps.antidifferentiate(PowerSeries.geometric(6))
    assert np.allclose(anti.coeffs, np.concatenate([[0], 1 / np.arange(1, 8)]))
    assert anti.order == 7


def test_shift_examples():
    k = PowerSeries(np.arange(12, dtype=complex))  # Koebe coefficients a_n = n
    q = ps.div_by_z(k)
    assert q[0] == 1 and np.array_equal(q.coeffs.real, np.arange(1, 12))
    assert maxdiff(ps.mul_by_z(q), k) == 0
    with pytest.raises(NonzeroConstantTerm):
        ps.div_by_z(PowerSeries.one(4))


def test_compose_examples():
    g = PowerSeries.geometric(12)
    assert maxdiff(ps.compose(g, PowerSeries.z(12)), g) < 1e-15
    z2 = PowerSeries.from_coeffs([0, 0, 1], 12)
    expected = np.array([1.0 if n % 2 == 0 else 0.0 for n in range(13)])
    assert np.allclose(ps.compose(g, z2).coeffs, expected)
    const = ps.compose(g, PowerSeries.zero(12))
    assert const[0] == 1 and np.all(const.coeffs[1:] == 0)
    with pytest.raises(InnerConstantTermNotZero):
        ps.compose(g, PowerSeries.one(12))


def test_evaluate_examples():
    assert abs(ps.evaluate(PowerSeries.geometric(80), 0.5) - 2.0) < 1e-15
    k = PowerSeries(np.arange(80, dtype=complex))
    assert abs(ps.evaluate(k, 0.5) - 2.0) < 1e-15
    a = PowerSeries.from_coeffs([3, 1, 4, 1, 5], 6)
    for m in range(5):
        assert ps.evaluate(a, 0.0, m) == math.factorial(m) * a[m]


def test_evaluate_derivative_of_koebe():
    k = PowerSeries(np.arange(300, dtype=complex))
    z = 0.3 + 0.2j
    assert abs(ps.evaluate(k, z, 1) - (1 + z) / (1 - z) ** 3) < 1e-12


def test_json_roundtrip():
    a = PowerSeries.from_coeffs([0, 1, 0.5 - 2j], 4)
    data = a.to_dict()
    assert data["coeffs"][2] == [0.5, -2.0]
    assert maxdiff(PowerSeries.from_dict(data), a) == 0


def test_immutable_and_finite():
    a = PowerSeries.one(3)
    with pytest.raises(ValueError):
        a.coeffs[0] = 5
    with pytest.raises(ValueError):
        PowerSeries([1, float("nan")])


# properties ------------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(coeff_lists(), coeff_lists(), coeff_lists())
def test_product_commutative_associative(a, b, c):
    a, b, c = PowerSeries(a), PowerSeries(b), PowerSeries(c)
    assert maxdiff(a * b, b * a) <= 1e-12
    assert maxdiff((a * b) * c, a * (b * c)) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_size=13))
def test_exp_log_roundtrip_unit_coefficients(c):
    a = PowerSeries([1.0] + c[1:])
    assert maxdiff(ps.exp_series(ps.log_unit(a)), a) <= 1e-10
    b = PowerSeries([0.0] + c[1:])
    assert maxdiff(ps.log_unit(ps.exp_series(b)), b) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(coeff_lists(min_size=65, max_size=65), st.floats(0, 2 * math.pi))
def test_reciprocal_involution_zero_free(c, phase):
    # tail below 1 in sum of moduli: zero-free on the closed disk
    a = damped(c, c0=complex(math.cos(phase), math.sin(phase)))
    assert maxdiff(ps.reciprocal(ps.reciprocal(a)), a) <= 1e-12
    assert maxdiff(a * ps.reciprocal(a), PowerSeries.one(a.order)) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(coeff_lists(min_size=65, max_size=65))
def test_exp_log_roundtrip_order_64(c):
    a = damped(c, c0=1.0)
    assert maxdiff(ps.exp_series(ps.log_unit(a)), a) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(coeff_lists(max_size=65))
def test_inverse_pairs(c):
    a = PowerSeries(c)
    assert maxdiff(ps.differentiate(ps.antidifferentiate(a)), a) <= 1e-10
    assert maxdiff(ps.div_by_z(ps.mul_by_z(a)), a) == 0
    z0 = PowerSeries([0.0] + c[1:])
    assert maxdiff(ps.antidifferentiate(ps.differentiate(z0)), z0) <= 1e-10
    assert maxdiff(ps.mul_by_z(ps.div_by_z(z0)), z0) == 0


@settings(max_examples=200, deadline=None)
@given(coeff_lists(min_size=3, max_size=65), st.floats(0, 0.9), st.floats(0, 2 * math.pi))
def test_evaluate_matches_div_by_z(c, rho, t):
    f = PowerSeries([0.0, 1.0] + c[2:])
    z = rho * complex(math.cos(t), math.sin(t))
    if z == 0:
        z = 1e-3
    assert abs(ps.evaluate(f, z) / z - ps.evaluate(ps.div_by_z(f), z)) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(coeff_lists(min_size=6, max_size=6), coeff_lists(min_size=6, max_size=6))
def test_compose_matches_pointwise(a, w):
    a = PowerSeries(a).truncate(40)
    w = PowerSeries([0.0] + [x * 0.2 for x in w[1:]]).truncate(40)
    z = 0.3 + 0.1j
    direct = ps.evaluate(a, ps.evaluate(w, z))
    assert abs(ps.evaluate(ps.compose(a, w), z) - direct) < 1e-10
