"""Meromorphic functions ``g(zeta) = zeta + sum b_n zeta^{-n}`` on ``|zeta| > 1``.

Disk functions transfer through ``g(zeta) = 1/f(1/zeta)``, under which
``|g' - 1| < lam`` is the same inequality as ``|f'(z/f)^2 - 1| < lam``.

Within ``M_0(lam)`` the sufficient extreme-point condition
``sum n|b_n|^2 = lam^2`` forces ``g(zeta) = zeta + lam e^{i phi}/zeta``: writing
``g'(zeta) - 1 = -lam w^2 psi(w)`` with ``w = 1/zeta`` and ``|psi| <= 1`` gives
``sum n|b_n|^2 = lam^2 sum |psi_k|^2/(k+1)``, which reaches ``lam^2`` only
for a unimodular constant ``psi``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import series as ps
from .errors import AreaNegative, NotSigmaZeroNormalized, TOutOfRange, ZeroOfF
from .families import FunctionSpec
from .grids import DiskGrid, winding_number
from .series import DEFAULT_ORDER, PowerSeries

AREA_SLACK = 1e-9
EXTREME_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class MeromorphicSeries:
    """Tail coefficients ``b_0 .. b_N``."""

    b: np.ndarray

    def __post_init__(self):
        b = np.array(self.b, dtype=complex).reshape(-1)
        if b.size == 0 or not np.all(np.isfinite(b)):
            raise ValueError("coefficients must be a nonempty finite sequence")
        b.setflags(write=False)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_coeffs(cls, b) -> "MeromorphicSeries":
        return cls(np.asarray(list(b), dtype=complex))

    @property
    def order(self) -> int:
        return self.b.size - 1

    def __getitem__(self, n: int) -> complex:
        return complex(self.b[n]) if n < self.b.size else 0j

    def value(self, zeta):
        zeta = np.asarray(zeta, dtype=complex)
        w = 1.0 / zeta
        out = zeta + np.polyval(self.b[::-1], w)
        return complex(out) if out.ndim == 0 else out

    def derivative(self, zeta):
        """``g'(zeta) = 1 - sum n b_n zeta^{-n-1}``."""
        zeta = np.asarray(zeta, dtype=complex)
        w = 1.0 / zeta
        n = np.arange(self.b.size)
        # sum n b_n w^{n+1} as a polynomial in w
        poly = np.concatenate([[0.0], n * self.b])
        out = 1.0 - np.polyval(poly[::-1], w)
        return complex(out) if out.ndim == 0 else out

    def area_sum(self) -> float:
        """``sum_{n >= 1} n |b_n|^2``."""
        n = np.arange(1, self.b.size)
        return math.fsum(n * np.abs(self.b[1:]) ** 2)

    def to_dict(self) -> dict:
        return {"b": [[float(c.real), float(c.imag)] for c in self.b]}

    @classmethod
    def from_dict(cls, data: dict) -> "MeromorphicSeries":
        return cls(np.array([complex(re, im) for re, im in data["b"]], dtype=complex))


def _check_zero_free(f: PowerSeries, radius: float) -> None:
    h = ps.div_by_z(f)
    pts = DiskGrid.default(rmax=radius).points()
    if np.min(np.abs(ps.evaluate(h, pts))) < 1e-12:
        raise ZeroOfF("f vanishes at a grid point")
    try:
        turns = winding_number(lambda z: ps.evaluate(h, z), radius)
    except ZeroDivisionError:
        raise ZeroOfF("f vanishes on the check circle") from None
    if turns:
        raise ZeroOfF(f"f has {turns} zero(s) in the punctured disk")


def from_disk(f: PowerSeries, order: Optional[int] = None, check_radius: float = 0.9) -> MeromorphicSeries:
    """Coefficients of ``g(zeta) = 1/f(1/zeta)``.

    With ``q = z/f = sum q_k z^k`` one has ``g = zeta + sum q_{n+1} zeta^{-n}``,
    so ``b_0 = -a_2`` and ``b_1 = a_2^2 - a_3``.  The nonvanishing of ``f`` is
    checked on ``|z| <= check_radius``, where the truncated series is reliable.
    """
    if not f.is_normalized():
        raise ValueError("expected a normalized series")
    _check_zero_free(f, check_radius)
    q = ps.reciprocal(ps.div_by_z(f))
    b = q.coeffs[1:]
    if order is not None:
        b = ps.fit(b, order)
    return MeromorphicSeries(b)


def to_disk(g: MeromorphicSeries, order: Optional[int] = None) -> PowerSeries:
    """Inverse of :func:`from_disk`: ``f(z) = 1/g(1/z) = z/(1 + sum b_n z^{n+1})``."""
    q = PowerSeries(np.concatenate([[1.0], g.b]))
    if order is not None:
        q = q.truncate(order - 1)
    return ps.mul_by_z(ps.reciprocal(q))


def gprime_identity_check(f: FunctionSpec, samples, order: int = DEFAULT_ORDER) -> float:
    """Max over ``samples`` of ``|g'(1/z) - (z/f(z))^2 f'(z)|`` with ``g`` truncated."""
    z = np.asarray(samples, dtype=complex).ravel()
    g = from_disk(f.series(order))
    lhs = g.derivative(1.0 / z)
    rhs = (z / f.value(z)) ** 2 * f.value(z, 1)
    return float(np.max(np.abs(lhs - rhs)))


def area_omitted(g: MeromorphicSeries) -> float:
    """``pi (1 - sum n|b_n|^2)``, the area of the omitted set."""
    s = g.area_sum()
    if s > 1.0 + 1e-12:
        raise AreaNegative(f"sum n|b_n|^2 = {s} exceeds 1")
    return math.pi * (1.0 - s)


def coefficient_area_bound(g: MeromorphicSeries, lam: float, slack: float = AREA_SLACK) -> Tuple[bool, float]:
    """Check ``sum n|b_n|^2 <= lam^2`` and ``pi(1 - lam^2) <= area <= pi``."""
    s = g.area_sum()
    ok = s <= lam * lam + slack
    if s <= 1.0 + 1e-12:
        area = area_omitted(g)
        ok = ok and math.pi * (1.0 - lam * lam) - slack <= area <= math.pi + slack
    else:
        ok = False
    return ok, s


def is_extreme_candidate(g: MeromorphicSeries, lam: float, tol: float = EXTREME_TOL) -> bool:
    """Whether ``g`` meets the area condition ``sum n|b_n|^2 = lam^2``.

    This is a sufficient condition only; ``False`` does not mean "not extreme".
    """
    if abs(g.b[0]) > 1e-12:
        raise NotSigmaZeroNormalized("b_0 must vanish")
    return abs(g.area_sum() - lam * lam) <= tol


def convex_combine(g1: MeromorphicSeries, g2: MeromorphicSeries, t: float) -> MeromorphicSeries:
    """Coefficientwise mix ``t g1 + (1 - t) g2``."""
    if not 0.0 < t < 1.0:
        raise TOutOfRange("t must lie strictly between 0 and 1")
    for g in (g1, g2):
        if abs(g.b[0]) > 1e-12:
            raise NotSigmaZeroNormalized("both functions need b_0 = 0")
    n = max(g1.b.size, g2.b.size)
    c, d = ps.fit(g1.b, n - 1), ps.fit(g2.b, n - 1)
    return MeromorphicSeries(t * c + (1.0 - t) * d)


def mixing_identity_residual(c: np.ndarray, d: np.ndarray, t: float) -> float:
    """Max of ``| |tc+(1-t)d|^2 - (t|c|^2 + (1-t)|d|^2 - t(1-t)|c-d|^2) |``."""
    c, d = np.asarray(c, dtype=complex), np.asarray(d, dtype=complex)
    lhs = np.abs(t * c + (1 - t) * d) ** 2
    rhs = t * np.abs(c) ** 2 + (1 - t) * np.abs(d) ** 2 - t * (1 - t) * np.abs(c - d) ** 2
    return float(np.max(np.abs(lhs - rhs)))


def extreme_candidate(lam: float, phase: float) -> MeromorphicSeries:
    """``zeta + lam e^{i phase}/zeta``."""
    return MeromorphicSeries(np.array([0.0, lam * np.exp(1j * phase)]))
