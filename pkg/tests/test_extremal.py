import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univalent import extremal as ex
from univalent import families as fm
from univalent.errors import NearZeroIntegrand, NotNormalized
from univalent.series import PowerSeries


def test_identity_means():
    for r in (0.2, 0.5, 0.9):
        assert ex.integral_mean(fm.identity(), 0, 2, r).value == pytest.approx(r * r, rel=1e-14)
        assert ex.integral_mean(fm.identity(), 1, 3, r).value == pytest.approx(1.0, rel=1e-14)
        assert ex.arc_length(fm.identity(), r) == pytest.approx(2 * math.pi * r, rel=1e-14)


def test_koebe_mean_square():
    r = 0.5
    closed = r * r * (1 + r * r) / (1 - r * r) ** 3
    assert closed == pytest.approx(0.74074074, abs=1e-8)
    assert ex.integral_mean(fm.Koebe(), 0, 2, r).value == pytest.approx(closed, rel=1e-12)
    assert ex.parseval_mean(fm.series_of(fm.Koebe(), 200), r) == pytest.approx(closed, rel=1e-12)


def test_mean_p_zero_and_negative():
    assert ex.integral_mean(fm.Koebe(), 0, 0, 0.5).value == 1.0
    # |z|^-1 on the circle is 1/r
    assert ex.integral_mean(fm.identity(), 0, -1, 0.25).value == pytest.approx(4.0)
    with pytest.raises(ValueError):
        ex.integral_mean(fm.identity(), 1, -1, 0.5)


def test_near_zero_integrand():
    # z(1 - 2z) vanishes on |z| = 1/2 at z = 1/2
    f = fm.SeriesSpec(PowerSeries.from_coeffs([0, 1, -2]))
    with pytest.raises(NearZeroIntegrand):
        ex.integral_mean(f, 0, -1, 0.5, M=256)


@pytest.mark.parametrize("M", [100, 255, 3000])
def test_bad_node_counts(M):
    with pytest.raises(ValueError):
        ex.integral_mean(fm.Koebe(), 0, 2, 0.5, M=M)
    with pytest.raises(ValueError):
        ex.arc_length(fm.Koebe(), 0.5, M=M)


def test_bad_radius():
    for r in (0.0, 1.0, -0.3):
        with pytest.raises(ValueError):
            ex.integral_mean(fm.Koebe(), 0, 2, r)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2047), st.floats(0.1, 0.95))
def test_mean_rotation_invariance(k, r):
    x = cmath.exp(2j * math.pi * k / 2048)
    f = fm.KLambda(0.6)
    a = ex.integral_mean(f, 1, 1.5, r).value
    b = ex.integral_mean(fm.rotate(f, x), 1, 1.5, r).value
    assert b == pytest.approx(a, rel=1e-12)


@pytest.mark.parametrize("lam", [0.3, 1.0])
def test_arc_length_convergence(lam):
    f = fm.KLambda(lam)
    ref = ex.arc_length(f, 0.9, M=16384)
    assert abs(ex.arc_length(f, 0.9) - ref) <= 1e-9 * ref
    assert abs(ex.arc_length(f, 0.9, M=2048) - ex.arc_length(f, 0.9, M=4096)) < 1e-10


def test_star_function_examples():
    x = np.zeros(256)
    x[:64] = 1.0
    s = ex.star_function(x)
    w = 2 * np.pi / 256
    assert s.star[0] == 0 and s.star[64] == pytest.approx(64 * w)
    assert s.star[-1] == pytest.approx(64 * w)
    assert s.is_concave()
    assert s.thetas[-1] == pytest.approx(math.pi)
    with pytest.raises(ValueError):
        ex.star_function(np.zeros(255))
    with pytest.raises(ValueError):
        ex.star_function(np.zeros(100))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=256, max_size=256))
def test_star_function_is_concave_and_permutation_invariant(values):
    v = np.array(values)
    s = ex.star_function(v)
    assert s.is_concave(tol=1e-9)
    assert np.allclose(ex.star_function(v[::-1]).star, s.star, atol=1e-12)
    assert s.star[-1] == pytest.approx(2 * np.pi / 256 * math.fsum(v), abs=1e-9)


@pytest.mark.parametrize("sign", [1, -1])
def test_star_equality_for_klambda_and_rotations(sign):
    lam = 0.6
    ok, viol = ex.star_dominance(fm.KLambda(lam), lam, 0.8, sign)
    assert ok and abs(viol) < 1e-12
    x = cmath.exp(2j * math.pi * 37 / ex.STAR_NODES)  # grid-aligned rotation
    ok, viol = ex.star_dominance(fm.rotate(fm.KLambda(lam), x), lam, 0.8, sign)
    assert ok and abs(viol) < 1e-10


@pytest.mark.parametrize("sign", [1, -1])
def test_star_dominance_rational_member(sign):
    ok, viol = ex.star_dominance(fm.RationalMember(0.5), 0.5, 0.9, sign)
    assert ok and viol <= 1e-8


def test_star_sign_validation():
    with pytest.raises(ValueError):
        ex.star_samples(fm.Koebe(), 0.5, sign=0)


@pytest.mark.parametrize("lam", [0.4, 0.9])
def test_hinge_dominance_for_members(lam):
    for f in fm.generate_members(lam, 5, seed=8):
        for sign in (1, -1):
            ok, viol = ex.hinge_dominance(f, lam, 0.7, sign)
            assert ok, viol


def test_convex_mean_check():
    lam = 0.7
    for f in fm.generate_members(lam, 5, seed=4):
        for p in (-1.0, 0.5, 2.0, 4.0):
            ok, gap = ex.convex_mean_check(f, lam, 0.8, p)
            assert ok and gap >= -1e-9
    assert ex.convex_mean_check(fm.Koebe(), lam, 0.8, 0) == (True, 0.0)
    ok, gap = ex.convex_mean_check(fm.Koebe(), lam, 0.8, 2.0)
    assert not ok and gap < 0


def test_schwarz_residual_examples():
    lam = 0.5
    r = ex.schwarz_residual(fm.series_of(fm.KLambda(lam), 20))
    expected = np.zeros(r.order + 1, dtype=complex)
    expected[2] = -lam  # residual of k_lam is -lam z^2
    assert np.allclose(r.coeffs, expected, atol=1e-13)
    r = ex.schwarz_residual(fm.series_of(fm.RationalMember(lam), 20))
    assert np.allclose(r.coeffs, expected * -1, atol=1e-13)
    ident = ex.schwarz_residual(PowerSeries.from_coeffs([0, 1], 10))
    assert np.allclose(ident.coeffs, 0)
    with pytest.raises(NotNormalized):
        ex.schwarz_residual(PowerSeries.one(5))


def test_residual_leading_term():
    f = PowerSeries.from_coeffs([0, 1, 0.3 - 0.2j, 0.1 + 0.5j, 0.7], 12)
    r = ex.schwarz_residual(f)
    assert abs(r[0]) < 1e-15 and abs(r[1]) < 1e-15
    assert r[2] == pytest.approx(f[3] - f[2] ** 2)


def test_fekete_szego_values():
    k = fm.series_of(fm.Koebe(), 10)
    assert ex.fekete_szego_value(k, 0) == 3
    assert ex.fekete_szego_value(k, 1) == 1
    lam = 0.4
    kl = fm.series_of(fm.KLambda(lam), 10)
    assert ex.fekete_szego_value(kl, 0) == pytest.approx(1 + lam + lam * lam)


@pytest.mark.parametrize("lam", [0.2, 0.5, 1.0])
def test_fs_bound_examples(lam):
    s = 1 + lam
    a3 = 1 + lam + lam * lam
    assert ex.fs_bound(lam, 0) == pytest.approx(a3)  # k_lam attains this
    center = a3 / s ** 2
    assert ex.fs_bound(lam, center) == pytest.approx(s)  # inner disk
    far = center + 2 / s
    assert ex.fs_bound(lam, far) == pytest.approx(abs(a3 - far * s * s))


@pytest.mark.parametrize("lam", [0.3, 0.8])
@pytest.mark.parametrize("mu", [-1, 0.5, 0.7 + 0.3j, 2])
def test_fs_search_matches_bound(lam, mu):
    assert ex.fs_search(lam, mu) == pytest.approx(ex.fs_bound(lam, mu), rel=1e-4)
    assert ex.fs_search(lam, mu) <= ex.fs_bound(lam, mu) + 1e-12


def test_fs_bound_continuous_on_boundary():
    lam = 0.5
    s = 1 + lam
    center = (1 + lam + lam * lam) / s ** 2
    on = center + 1 / s
    assert ex.fs_bound(lam, on) == pytest.approx(s)
    assert ex.fs_bound(lam, on - 1e-9) == pytest.approx(s)


@pytest.mark.parametrize("lam", [0.3, 0.7, 1.0])
def test_members_respect_fs_bound(lam):
    for f in fm.generate_members(lam, 10, seed=2):
        s = f.series(6)
        for mu in (0, 0.5, 1, 1 + 1j):
            assert ex.fekete_szego_value(s, mu) <= ex.fs_bound(lam, mu) + 1e-9


def test_fs_search_resolution_guard():
    with pytest.raises(ValueError):
        ex.fs_search(0.5, 0, resolution=10)


def test_coeff_bound_check():
    assert ex.coeff_bound_check(fm.series_of(fm.Koebe(), 40)) == pytest.approx(1.0)
    assert ex.coeff_bound_check(PowerSeries.from_coeffs([0, 1], 1)) == 0.0
    assert ex.coeff_bound_check(fm.series_of(fm.KLambda(0.5), 40)) < 1
    with pytest.raises(NotNormalized):
        ex.coeff_bound_check(PowerSeries.from_coeffs([0, 2, 1]))
