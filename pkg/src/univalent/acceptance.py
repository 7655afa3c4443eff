"""The acceptance suite: ten numbered criteria with pinned tolerances.

Each criterion returns a :class:`CriterionResult` holding a pass flag and the
measured quantities behind it, so a failure shows by how much it missed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Tuple

import numpy as np

from . import extremal as ex
from . import families as fm
from . import meromorphic as me
from . import oracles as orc
from . import series as ps
from . import transforms as tr
from .errors import LambdaIsOne

MEMBER_LAMBDAS = (0.3, 0.7, 1.0)
MEMBERS_PER_LAMBDA = 50
DOMINANCE_MEMBERS = 200
FS_LAMBDAS = (0.2, 0.4, 0.6, 0.8, 1.0)
FS_MUS = (-1.0, -0.25 + 0.5j, 0.0, 0.5, 0.75, 1.0, 1.0 + 0.25j, 1.5, 2.0 + 1.0j)
CURVE_DPS = 40


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: Dict[str, object] = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title}"

    def to_dict(self) -> dict:
        return {"number": self.number, "title": self.title, "passed": self.passed, "detail": self.detail}


@lru_cache(maxsize=None)
def members(lam: float, count: int, seed: int) -> Tuple[fm.SchwarzMember, ...]:
    return tuple(fm.generate_members(lam, count, seed))


def member_sets(seed: int) -> Dict[float, Tuple[fm.SchwarzMember, ...]]:
    return {lam: members(lam, MEMBERS_PER_LAMBDA, seed) for lam in MEMBER_LAMBDAS}


# 1 ---------------------------------------------------------------------------

def norm_formula(seed: int = 0) -> CriterionResult:
    lams = [round(0.05 * k, 10) for k in range(1, 21)]
    worst, worst_argmax = 0.0, 0.0
    for alpha in (1.0, 0.5 + 0.5j):
        for lam in lams:
            est = tr.norm_numeric(fm.JAlpha(fm.KLambda(lam), alpha))
            worst = max(worst, abs(est.value - tr.norm_J_klambda_closed(lam, alpha)))
            if lam > 1.0 / 3.0:
                # interior stationary point of the profile
                r_stat = (2.0 - math.sqrt(2.0 * (1.0 - lam * lam))) / (2.0 * lam)
                worst_argmax = max(worst_argmax, abs(est.argmax - r_stat))
    at_one = tr.norm_numeric(fm.JAlpha(fm.KLambda(1.0), 1.0)).value
    third = 1.0 / 3.0
    second_branch = (3.0 + third - 2.0 * math.sqrt(2.0 * (1.0 - third * third))) / third
    first_branch = tr.norm_J_klambda_closed(third, 1.0)
    ok = (worst <= 1e-6 and abs(at_one - 4.0) <= 1e-6
          and abs(second_branch - 2.0) <= 1e-12 and abs(first_branch - 2.0) <= 1e-12
          and worst_argmax <= 1e-4)
    return CriterionResult(1, "closed-form norm of J_alpha[k_lambda]", ok, {
        "max_abs_error": worst, "tol": 1e-6, "value_at_lambda_1": at_one,
        "branches_at_one_third": [first_branch, second_branch],
        "max_argmax_offset_from_stationary_point": worst_argmax,
    })


# 2 ---------------------------------------------------------------------------

def norm_dominance(seed: int = 0) -> CriterionResult:
    worst_excess = -math.inf
    count = 0
    for lam, fs in member_sets(seed).items():
        bound = tr.norm_J_klambda_closed(lam, 1.0)
        for f in fs:
            value = tr.norm_numeric(fm.JAlpha(f)).value
            worst_excess = max(worst_excess, value - bound)
            count += 1
    return CriterionResult(2, "norm of J[f] below the k_lambda value", worst_excess <= 1e-6, {
        "members": count, "max_excess": worst_excess, "tol": 1e-6,
    })


# 3 ---------------------------------------------------------------------------

def integral_means(seed: int = 0) -> CriterionResult:
    parseval_err = 0.0
    for spec in (fm.Koebe(), fm.KLambda(0.3), fm.KLambda(0.5), fm.KLambda(0.8)):
        big = fm.series_of(spec, 1024)
        for r in (0.3, 0.6, 0.9):
            quad = ex.integral_mean(spec, 0, 2, r, 2048).value
            parseval_err = max(parseval_err, abs(quad - ex.parseval_mean(big, r)))

    k = fm.Koebe()
    cases = [(n, p) for n in (0, 1, 2) for p in (1.0, 2.0, 3.0)] + [(0, -1.0), (0, 0.5)]
    radii = (0.5, 0.9)
    ref = {(n, p, r): ex.integral_mean(k, n, p, r).value for n, p in cases for r in radii}
    worst, failures = -math.inf, 0
    for f in members(1.0, DOMINANCE_MEMBERS, seed):
        for n, p in cases:
            for r in radii:
                kval = ref[(n, p, r)]
                fval = ex.integral_mean(f, n, p, r).value
                excess = fval / kval - 1.0
                worst = max(worst, excess)
                failures += excess > 1e-8
    ok = parseval_err <= 1e-9 and failures == 0
    return CriterionResult(3, "integral means", ok, {
        "parseval_max_error": parseval_err, "parseval_tol": 1e-9,
        "members": DOMINANCE_MEMBERS, "max_relative_excess": worst, "slack": 1e-8, "failures": failures,
    })


# 4 ---------------------------------------------------------------------------

def arc_length(seed: int = 0) -> CriterionResult:
    k = fm.Koebe()
    ref = {r: ex.arc_length(k, r) for r in (0.5, 0.9)}
    worst = -math.inf
    for f in members(1.0, DOMINANCE_MEMBERS, seed):
        for r, lk in ref.items():
            worst = max(worst, ex.arc_length(f, r) / lk - 1.0)
    return CriterionResult(4, "arc length below Koebe", worst <= 1e-8, {
        "members": DOMINANCE_MEMBERS, "max_relative_excess": worst, "slack": 1e-8,
    })


# 5 ---------------------------------------------------------------------------

def star_dominance(seed: int = 0) -> CriterionResult:
    worst, concave = -math.inf, True
    for lam, fs in member_sets(seed).items():
        k = fm.KLambda(lam)
        for r in (0.5, 0.9):
            for sign in (1, -1):
                sk = ex.star_samples(k, r, sign)
                concave &= sk.is_concave()
                for f in fs:
                    sf = ex.star_samples(f, r, sign)
                    concave &= sf.is_concave()
                    worst = max(worst, float(np.max(sf.star - sk.star)))
    ok = worst <= ex.STAR_SLACK and concave
    return CriterionResult(5, "star-function dominance", ok, {
        "max_violation": worst, "slack": ex.STAR_SLACK, "all_concave": bool(concave), "nodes": ex.STAR_NODES,
    })


# 6 ---------------------------------------------------------------------------

def fekete_szego(seed: int = 0) -> CriterionResult:
    search_gap, search_excess = 0.0, -math.inf
    regimes = set()
    for lam in FS_LAMBDAS:
        centre = (1 + lam + lam * lam) / (1 + lam) ** 2
        for mu in FS_MUS:
            regimes.add(abs(mu - centre) >= 1 / (1 + lam))
            bound = ex.fs_bound(lam, mu)
            found = ex.fs_search(lam, mu, 512)
            search_gap = max(search_gap, bound - found)
            search_excess = max(search_excess, found - bound)

    grid = np.linspace(-2.0, 2.0, 21)
    mus = list(FS_MUS) + [complex(a, b) for a in grid for b in grid]
    member_excess, schwarz_excess = -math.inf, -math.inf
    for lam, fs in member_sets(seed).items():
        for f in fs:
            s = f.series(8)
            for mu in mus:
                member_excess = max(member_excess, ex.fekete_szego_value(s, mu) - ex.fs_bound(lam, mu))
            schwarz_excess = max(schwarz_excess, abs(s[3] - s[2] ** 2) - lam)
    test_g = {lam: orc.u_deviation(fm.TestG(lam)) for lam in MEMBER_LAMBDAS}
    witnesses = all(rep.verdict == "nonmember" and rep.sup_estimate > lam for lam, rep in test_g.items())
    ok = (search_gap <= 1e-3 and search_excess <= 1e-8 and regimes == {True, False}
          and member_excess <= 1e-9 and schwarz_excess <= 1e-9 and witnesses)
    return CriterionResult(6, "Fekete-Szego bound", ok, {
        "max_bound_minus_search": search_gap, "max_search_minus_bound": search_excess,
        "both_regimes": regimes == {True, False}, "max_member_excess": member_excess,
        "max_a3_minus_a2sq_excess": schwarz_excess,
        "test_g_sup": {str(lam): rep.sup_estimate for lam, rep in test_g.items()},
    })


# 7 ---------------------------------------------------------------------------

def hull_representation(seed: int = 0) -> CriterionResult:
    rng = np.random.default_rng([seed, 7])
    worst = 0.0
    for _ in range(100):
        f = fm.hull_from_measure(fm.random_measure(rng, 20))
        worst = max(worst, ex.coeff_bound_check(fm.series_of(f, 64)))
    atom_err = 0.0
    xs = [1.0, -1.0, 1j] + list(np.exp(2j * np.pi * rng.random(7)))
    for x in xs:
        hull = fm.hull_from_measure(fm.DiscreteCircleMeasure(((complex(x), 1.0),)))
        rot = fm.rotate(fm.Koebe(), complex(x))
        diff = fm.series_of(hull, 64).coeffs - fm.series_of(rot, 64).coeffs
        atom_err = max(atom_err, float(np.max(np.abs(diff))))
    ok = worst <= 1 + 1e-12 and atom_err <= 1e-12
    return CriterionResult(7, "hull representation", ok, {
        "max_coeff_ratio": worst, "single_atom_max_error": atom_err,
    })


# 8 ---------------------------------------------------------------------------

def geometry(seed: int = 0) -> CriterionResult:
    thetas = 2 * np.pi * (np.arange(720) + 0.5) / 720
    mp_worst, double_worst, value_err = 0.0, 0.0, 0.0
    for lam in (0.3, 0.5, 0.9, 1.0):
        for th in thetas:
            u, v = orc.phi_boundary(lam, float(th), dps=CURVE_DPS)
            mp_worst = max(mp_worst, orc.curve_residual(lam, u, v, dps=CURVE_DPS))
        u, v = orc.phi_boundary(lam, thetas)
        double_worst = max(double_worst, float(np.max(orc.curve_residual(lam, u, v))))
        z = np.exp(1j * thetas)
        w = fm.KLambda(lam).value(z) / z
        value_err = max(value_err, float(np.max(np.abs(w - (u + 1j * v)) / np.maximum(1.0, np.abs(w)))))

    asym_ok, approach = True, 0.0
    for lam in (0.3, 0.5, 0.9):
        asym_ok &= orc.asymptote(lam) == (1 - 3 * lam) / (2 * (1 - lam) ** 2)
        approach = max(approach, abs(orc.phi_boundary(lam, 1e-7)[0] - orc.asymptote(lam)))
    try:
        orc.asymptote(1.0)
        asym_ok = False
    except LambdaIsOne:
        pass

    found = {lam: orc.nonconvexity_witness(lam, 10**6) is not None for lam in (0.3, 0.5, 0.9)}
    absent_at_one = orc.nonconvexity_witness(1.0, 10**6) is None
    ok = mp_worst < 1e-9 and value_err <= 1e-10 and asym_ok and approach < 1e-6 and all(found.values()) and absent_at_one
    return CriterionResult(8, "boundary curve geometry", ok, {
        "max_curve_residual": mp_worst, "working_digits": CURVE_DPS,
        "max_curve_residual_double": double_worst, "boundary_value_max_rel_error": value_err,
        "asymptote_exact": bool(asym_ok), "asymptote_approach": approach,
        "witness_found": {str(k): v for k, v in found.items()}, "witness_absent_at_1": absent_at_one,
    })


# 9 ---------------------------------------------------------------------------

def meromorphic(seed: int = 0) -> CriterionResult:
    ident_err, gprime, area_fail, mdev_fail = 0.0, 0.0, 0, 0
    ring = np.concatenate([r * np.exp(2j * np.pi * np.arange(64) / 64) for r in np.linspace(0.2, 0.9, 8)])
    for lam, fs in member_sets(seed).items():
        for f in fs:
            s = f.series(64)
            g = me.from_disk(s)
            ident_err = max(ident_err, abs(g[0] + s[2]), abs(g[1] - (s[2] ** 2 - s[3])))
            gprime = max(gprime, me.gprime_identity_check(f, ring))
            area_fail += not me.coefficient_area_bound(g, lam)[0]
            mdev_fail += orc.m_deviation(g, lam=lam).verdict != "member"
    for spec in (fm.Koebe(), fm.KLambda(0.5)):
        gprime = max(gprime, me.gprime_identity_check(spec, ring))

    area_exact = all(me.area_omitted(me.MeromorphicSeries([0.0, -lam])) == math.pi * (1 - lam * lam)
                     for lam in MEMBER_LAMBDAS)
    lam = 0.7
    phases = 2 * np.pi * np.arange(8) / 8
    candidates = all(me.is_extreme_candidate(me.extreme_candidate(lam, ph), lam) for ph in phases)
    rejects = not me.is_extreme_candidate(me.MeromorphicSeries([0.0]), lam) and \
        not me.is_extreme_candidate(me.MeromorphicSeries([0.0, -lam / 2]), lam)

    rng = np.random.default_rng([seed, 9])
    mixing_ok, pairs, worst_identity = True, 0, 0.0
    while pairs < 50:
        lam = float(rng.uniform(0.05, 1.0))
        p1, p2 = rng.uniform(0, 2 * np.pi, 2)
        if abs(np.exp(1j * p1) - np.exp(1j * p2)) < 1e-6:
            continue
        g1, g2 = me.extreme_candidate(lam, p1), me.extreme_candidate(lam, p2)
        c, d = g1.b, g2.b
        spread = math.fsum(np.arange(c.size) * np.abs(c - d) ** 2)
        for t in np.arange(1, 10) / 10:
            mixed = me.convex_combine(g1, g2, t).area_sum()
            expected = lam * lam - t * (1 - t) * spread
            worst_identity = max(worst_identity, abs(mixed - expected))
            mixing_ok &= mixed < lam * lam - 1e-12 * lam * lam
        pairs += 1
    mixing_ok &= worst_identity <= 1e-12
    ok = (ident_err <= 1e-12 and gprime < 1e-8 and area_fail == 0 and mdev_fail == 0 and area_exact
          and candidates and rejects and mixing_ok)
    return CriterionResult(9, "meromorphic companion class", ok, {
        "identity_max_error": ident_err, "gprime_max_residual": gprime, "area_bound_failures": area_fail,
        "m_deviation_failures": mdev_fail, "area_exact": area_exact, "candidates_accepted": candidates,
        "non_candidates_rejected": rejects, "mixing_pairs": pairs, "mixing_identity_max_error": worst_identity,
        "strict_mixing": bool(mixing_ok),
    })


# 10 --------------------------------------------------------------------------

def _series_failures(rng: np.random.Generator, order: int, damping: float) -> Dict[str, int]:
    """Count property failures on one random draw; ``damping`` scales c_k by damping**k."""
    w = damping ** np.arange(order + 1)

    def draw(c0=None):
        s = ps.random_series(rng, order)
        c = s.coeffs * w
        if c0 is not None:
            c = c.copy()
            c[0] = c0
        return ps.PowerSeries(c)

    fails: Dict[str, int] = {}

    def check(name, cond):
        fails[name] = fails.get(name, 0) + (not cond)

    def close(a, b, tol):
        return float(np.max(np.abs(a.coeffs - b.coeffs))) <= tol

    a, b, c = draw(), draw(), draw()
    check("commutative", close(a * b, b * a, 1e-12))
    check("associative", close((a * b) * c, a * (b * c), 1e-12))
    unit = draw(c0=np.exp(2j * np.pi * rng.random()))
    inv = ps.reciprocal(unit)
    # 1e-12 relative to the largest coefficient met along the way
    scale = max(1.0, float(np.max(np.abs(inv.coeffs))))
    check("reciprocal_product", close(unit * inv, ps.PowerSeries.one(order), 1e-12 * scale))
    check("reciprocal_involution", close(ps.reciprocal(inv), unit, 1e-12 * scale))
    one = draw(c0=1.0)
    check("exp_log", close(ps.exp_series(ps.log_unit(one)), one, 1e-10))
    zero = draw(c0=0.0)
    check("log_exp", close(ps.log_unit(ps.exp_series(zero)), zero, 1e-10))
    check("diff_antidiff", close(ps.differentiate(ps.antidifferentiate(a)), a, 1e-10))
    check("antidiff_diff", close(ps.antidifferentiate(ps.differentiate(zero)), zero, 1e-10))
    check("div_mul_z", close(ps.div_by_z(ps.mul_by_z(a)), a, 1e-10))
    check("mul_div_z", close(ps.mul_by_z(ps.div_by_z(zero)), zero, 1e-10))
    f = ps.PowerSeries(np.concatenate([[0.0, 1.0], zero.coeffs[2:]]))
    z = 0.9 * np.sqrt(rng.random(8)) * np.exp(2j * np.pi * rng.random(8))
    err = np.max(np.abs(ps.evaluate(f, z) / z - ps.evaluate(ps.div_by_z(f), z)))
    check("evaluate_div_by_z", err <= 1e-12)
    return fails


def series_engine(seed: int = 0) -> CriterionResult:
    """Random series: order 12 with unit coefficients, and order 64 with damped ones.

    Unit-size coefficients at order 64 place zeros deep inside the disk, where
    reciprocal and logarithm coefficients grow like ``|z_0|^{-n}``; round trips
    then lose all digits, so the undamped draw stays at order 12.  The order-64
    draw uses ``|c_k| <= sqrt(2) 0.4^k``, whose tail sums to less than 1, so a
    unimodular constant term keeps the series zero-free on the closed disk
    (as ``z/f`` is for every family here).
    """
    rng = np.random.default_rng([seed, 10])
    totals: Dict[str, int] = {}
    for order, damping in ((12, 1.0), (64, 0.4)):
        for _ in range(1000):
            for k, v in _series_failures(rng, order, damping).items():
                totals[k] = totals.get(k, 0) + v
    failures = sum(totals.values())
    return CriterionResult(10, "series engine properties", failures == 0, {
        "draws": 2000, "failures": failures, "by_property": totals,
    })


CRITERIA: List[Callable[[int], CriterionResult]] = [
    norm_formula, norm_dominance, integral_means, arc_length, star_dominance,
    fekete_szego, hull_representation, geometry, meromorphic, series_engine,
]


def run_all(seed: int = 0) -> List[CriterionResult]:
    return [crit(seed) for crit in CRITERIA]
