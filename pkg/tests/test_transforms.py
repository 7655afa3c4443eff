import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univalent import families as fm
from univalent import series as ps
from univalent import transforms as tr
from univalent.errors import NotNormalized, VanishingDerivative
from univalent.series import PowerSeries


def test_alexander_examples():
    j = tr.alexander(fm.series_of(fm.Koebe(), 30))
    assert np.allclose(j.coeffs[1:], 1.0)
    ident = PowerSeries.from_coeffs([0, 1], 10)
    assert np.allclose(tr.alexander(ident).coeffs[:3], [0, 1, 0])
    lam = 0.6
    j = tr.alexander(fm.series_of(fm.KLambda(lam), 20))
    n = np.arange(1, 21)
    partial = np.array([sum(lam ** i for i in range(k)) for k in n])  # A_{n-1}
    assert np.allclose(j.coeffs[1:21], partial / n, atol=1e-14)


def test_j_alpha_examples():
    f = fm.series_of(fm.KLambda(0.3), 40)
    assert tr.j_alpha(f, 1).allclose(tr.alexander(f), 1e-14)
    zero = tr.j_alpha(f, 0)
    assert np.allclose(zero.coeffs[:3], [0, 1, 0]) and np.allclose(zero.coeffs[2:], 0)
    d = ps.differentiate(tr.j_alpha(fm.series_of(fm.Koebe(), 30), 2))
    binom = np.array([math.comb(n + 3, 3) for n in range(d.order + 1)], dtype=float)
    assert np.allclose(d.coeffs.real, binom, rtol=1e-13)
    with pytest.raises(NotNormalized):
        tr.j_alpha(PowerSeries.one(5), 1)


def test_pre_schwarzian_examples():
    assert tr.pre_schwarzian(fm.identity(), 0.3) == 0
    lam = 0.4
    assert tr.pre_schwarzian(fm.JAlpha(fm.KLambda(lam)), 0.0) == pytest.approx(1 + lam, abs=1e-12)
    assert tr.pre_schwarzian(fm.Koebe(), 0.0) == pytest.approx(4.0, abs=1e-12)
    z = 0.3 - 0.5j
    expected = 1 / (1 - z) + lam / (1 - lam * z)
    assert tr.pre_schwarzian(fm.JAlpha(fm.KLambda(lam)), z) == pytest.approx(expected, abs=1e-12)
    assert tr.pre_schwarzian(fm.Koebe(), z) == pytest.approx((4 + 2 * z) / ((1 - z) * (1 + z)), abs=1e-12)


def test_pre_schwarzian_jalpha_matches_series():
    f = fm.JAlpha(fm.SchwarzMember(0.5, 0.3, PowerSeries.from_coeffs([0.5j])), 0.8)
    s = f.series(200)
    for z in (0.2, -0.4j, 0.5 + 0.3j):
        assert tr.pre_schwarzian(f, z) == pytest.approx(ps.evaluate(s, z, 2) / ps.evaluate(s, z, 1), abs=1e-10)


def test_vanishing_derivative():
    # f = z + z^2 has f'(-1/2) = 0 inside the disk
    f = fm.SeriesSpec(PowerSeries.from_coeffs([0, 1, 1]))
    with pytest.raises(VanishingDerivative):
        tr.pre_schwarzian(f, -0.5)


def test_phi_profile_examples():
    for lam in (0.1, 0.5, 0.99):
        assert tr.phi_profile(lam, 0.0) == pytest.approx(1 + lam)
        assert tr.phi_profile(lam, 1.0) == pytest.approx(2.0)
    r = np.linspace(0, 0.99, 7)
    assert np.allclose(tr.phi_profile(1.0, r), 2 + 2 * r)
    assert tr.phi_profile(1.0, 1.0) == 4.0


def test_phi_profile_equals_weighted_pre_schwarzian():
    lam = 0.7
    f = fm.JAlpha(fm.KLambda(lam))
    for r in (0.1, 0.5, 0.9):
        assert (1 - r * r) * abs(tr.pre_schwarzian(f, r)) == pytest.approx(tr.phi_profile(lam, r), rel=1e-12)


def test_closed_norm_examples():
    assert tr.norm_J_klambda_closed(0.2, 1) == 2
    assert tr.norm_J_klambda_closed(1.0, 1) == pytest.approx(4.0, abs=1e-15)
    assert tr.norm_J_klambda_closed(0.5, 1) == pytest.approx(2.1010206, abs=1e-7)
    assert tr.norm_J_klambda_closed(0.5, 1) == pytest.approx((3.5 - 2 * math.sqrt(1.5)) / 0.5, abs=1e-15)
    assert tr.norm_J_klambda_closed(0.5, 3 + 4j) == pytest.approx(5 * tr.norm_J_klambda_closed(0.5, 1))


def test_closed_norm_continuity_at_one_third():
    third = 1 / 3
    left = tr.norm_J_klambda_closed(third - 1e-12, 1)
    right = tr.norm_J_klambda_closed(third + 1e-12, 1)
    assert left == 2 and abs(right - 2) < 1e-10


def test_profile_max_matches_closed_form_on_grid():
    for lam in np.linspace(0.01, 1.0, 100):
        _, best = tr.golden_section_max(lambda r: tr.phi_profile(lam, r), 0.0, 1.0, 1e-12)
        assert abs(best - tr.norm_J_klambda_closed(lam, 1)) <= 1e-8


def test_argmax_is_corrected_stationary_point():
    lam = 0.5
    est = tr.norm_numeric(fm.JAlpha(fm.KLambda(lam)))
    assert est.method == "profile_max"
    assert est.value == pytest.approx(2.1010206, abs=1e-6)
    assert est.argmax == pytest.approx((2 - math.sqrt(2 * (1 - lam * lam))) / (2 * lam), abs=1e-6)
    # the other root of phi' = 0 lies outside [0, 1]
    assert (2 + math.sqrt(2 * (1 - lam * lam))) / (2 * lam) > 1


def test_norm_numeric_examples():
    assert tr.norm_numeric(fm.identity()).value == 0
    koebe = tr.norm_numeric(fm.Koebe())
    assert koebe.value == pytest.approx(6.0, abs=1e-6)
    assert tr.norm_numeric(fm.Rotation(1j, fm.Koebe())).value == pytest.approx(6.0, abs=1e-6)


def test_grid_norm_of_klambda_member_form():
    lam = 0.5
    k = fm.member_from_schwarz(lam, 1 + lam, PowerSeries.from_coeffs([-1.0]))
    est = tr.norm_numeric(fm.JAlpha(k))
    assert est.method == "grid_sup"
    assert est.value == pytest.approx(tr.norm_J_klambda_closed(lam, 1), abs=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.1, 2.0), st.floats(0, 2 * math.pi))
def test_alpha_scaling(mod, arg):
    alpha = mod * cmath.exp(1j * arg)
    f = fm.generate_members(0.8, 1, seed=17)[0]
    base = tr.norm_numeric(fm.JAlpha(f, 1.0)).value
    scaled = tr.norm_numeric(fm.JAlpha(f, alpha)).value
    assert scaled == pytest.approx(abs(alpha) * base, abs=1e-9)


@pytest.mark.parametrize("lam", [0.3, 0.7, 1.0])
def test_member_norm_below_closed_form(lam):
    bound = tr.norm_J_klambda_closed(lam, 1)
    for f in fm.generate_members(lam, 10, seed=21):
        assert tr.norm_numeric(fm.JAlpha(f)).value <= bound + 1e-6


def test_golden_section_endpoint():
    r, v = tr.golden_section_max(lambda x: x, 0.0, 1.0)
    assert r == 1.0 and v == 1.0


def test_norm_estimate_json():
    d = tr.NormEstimate(1.5, "grid_sup", 0.5 + 0.25j).to_dict()
    assert d == {"value": 1.5, "method": "grid_sup", "argmax": [0.5, 0.25]}
