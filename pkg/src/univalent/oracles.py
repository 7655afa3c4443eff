"""Grid oracles for class membership and the boundary geometry of k_lam(z)/z.

Suprema are taken over a finite polar grid.  They certify membership only at
grid resolution; they are not interval-arithmetic proofs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import mpmath
import numpy as np

from . import series as ps
from .errors import DenominatorZero, LambdaIsOne, ThetaAtSingularity, WIsZero, ZeroOfF
from .families import FunctionSpec
from .grids import DiskGrid, winding_number

VERDICT_TOL = 1e-6
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class DeviationReport:
    sup_estimate: float
    witness: complex
    grid: DiskGrid
    verdict: str
    lam: float
    tol: float = VERDICT_TOL

    def to_dict(self) -> dict:
        return {
            "sup": self.sup_estimate,
            "witness": [self.witness.real, self.witness.imag],
            "verdict": self.verdict,
            "grid": self.grid.describe(),
        }


def verdict(sup: float, lam: float, tol: float = VERDICT_TOL) -> str:
    if sup < lam - tol:
        return "member"
    if sup > lam + tol:
        return "nonmember"
    return "inconclusive"


def _check_nonvanishing(spec: FunctionSpec, pts: np.ndarray, rmax: float) -> None:
    f_over_z = spec.value(pts) / pts
    if np.min(np.abs(f_over_z)) < ZERO_TOL:
        raise ZeroOfF("f vanishes at a grid point of the punctured disk")
    try:
        turns = winding_number(lambda z: spec.value(z) / z, rmax)
    except ZeroDivisionError:
        raise ZeroOfF("f vanishes on the outer grid circle") from None
    if turns != 0:
        raise ZeroOfF(f"f has {turns} zero(s) in the punctured disk")


def class_residual(spec: FunctionSpec, z) -> np.ndarray:
    """``f'(z)(z/f(z))^2 - 1`` evaluated at the points ``z``.

    Kinds with a polynomial ``q = z/f`` use the equivalent ``q - z q' - 1``.
    """
    z = np.asarray(z, dtype=complex)
    q = spec.z_over_f()
    if q is not None:
        return ps.evaluate(q, z) - z * ps.evaluate(q, z, 1) - 1.0
    f = spec.value(z)
    return spec.value(z, 1) * (z / f) ** 2 - 1.0


def _sup_report(values: np.ndarray, pts: np.ndarray, grid: DiskGrid, lam: float, tol: float) -> DeviationReport:
    flat = np.abs(values).ravel()
    k = int(np.argmax(flat))  # first maximum in radius-major order
    sup = float(flat[k])
    return DeviationReport(sup, complex(pts.ravel()[k]), grid, verdict(sup, lam, tol), lam, tol)


def u_deviation(spec: FunctionSpec, grid: Optional[DiskGrid] = None, lam: Optional[float] = None,
                tol: float = VERDICT_TOL) -> DeviationReport:
    """Grid supremum of ``|f'(z)(z/f(z))^2 - 1|`` with a membership verdict.

    ``lam`` defaults to the spec's own parameter (1 when it has none).
    """
    grid = grid or DiskGrid.default()
    lam = lam if lam is not None else (spec.lam if spec.lam is not None else 1.0)
    pts = grid.points()
    if spec.z_over_f() is None:
        _check_nonvanishing(spec, pts, grid.rmax)
    return _sup_report(class_residual(spec, pts), pts, grid, lam, tol)


def starlike_min_re(spec: FunctionSpec, grid: Optional[DiskGrid] = None) -> float:
    """Minimum of ``Re(z f'/f)`` over the grid."""
    grid = grid or DiskGrid.default()
    pts = grid.points()
    q = spec.z_over_f()
    if q is not None:
        vals = 1.0 - pts * ps.evaluate(q, pts, 1) / ps.evaluate(q, pts)
    else:
        _check_nonvanishing(spec, pts, grid.rmax)
        vals = pts * spec.value(pts, 1) / spec.value(pts)
    return float(np.min(vals.real))


def m_deviation(g, grid: Optional[DiskGrid] = None, lam: float = 1.0, tol: float = VERDICT_TOL) -> DeviationReport:
    """Grid supremum of ``|g'(zeta) - 1|`` on ``|zeta| > 1``.

    ``g`` is a :class:`~univalent.meromorphic.MeromorphicSeries` or a disk
    spec ``f``, in which case ``g(zeta) = 1/f(1/zeta)`` and
    ``g'(zeta) = (z/f)^2 f'(z)`` with ``z = 1/zeta``.
    """
    grid = grid or DiskGrid.exterior()
    if min(grid.radii) <= 1.0:
        raise ValueError("exterior grid radii must exceed 1")
    pts = grid.points()
    if isinstance(g, FunctionSpec):
        values = class_residual(g, 1.0 / pts)
    else:
        values = g.derivative(pts) - 1.0
    return _sup_report(values, pts, grid, lam, tol)


# boundary geometry of phi_lam = k_lam(z)/z ---------------------------------

def _image_mask(lam: float, w: np.ndarray) -> np.ndarray:
    """Vectorized ``preimage_in_disk``."""
    w = np.asarray(w, dtype=complex)
    c = 1.0 - 1.0 / w
    b = 1.0 + lam
    s = np.sqrt(b * b - 4.0 * lam * c + 0j)
    s = np.where((b * s).real >= 0, s, -s)  # avoid cancellation in b + s
    z1 = (b + s) / (2.0 * lam)
    z2 = c / (lam * z1)
    return np.minimum(np.abs(z1), np.abs(z2)) < 1.0 - 1e-12


def preimage_in_disk(lam: float, w: complex) -> bool:
    """Whether ``w`` is a value of ``k_lam(z)/z`` for some ``|z| < 1``.

    Solves ``lam z^2 - (1+lam) z + (1 - 1/w) = 0``; no univalence is assumed.
    """
    w = complex(w)
    if abs(w) < 1e-300:
        raise WIsZero("w = 0 is never attained")
    return bool(_image_mask(lam, np.array([w]))[0])


def phi_boundary(lam: float, theta, dps: Optional[int] = None):
    """Boundary point ``(u, v)`` of ``k_lam(e^{i theta})/e^{i theta}``.

    With ``dps`` set, a scalar ``theta`` is evaluated in mpmath at that many
    digits and ``(u, v)`` are returned as ``mpf``.
    """
    if dps is not None:
        with mpmath.workdps(dps):
            lam_, th = mpmath.mpf(lam), mpmath.mpf(theta)
            if abs(mpmath.sin(th / 2)) < 1e-14:
                raise ThetaAtSingularity("theta must avoid multiples of 2 pi")
            c = mpmath.cos(th)
            d = 2 * (1 + lam_ * lam_ - 2 * lam_ * c)
            return (1 - lam_ - 2 * lam_ * c) / d, (1 + lam_ - 2 * lam_ * c) * mpmath.cot(th / 2) / d
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(np.sin(theta / 2)) < 1e-14):
        raise ThetaAtSingularity("theta must avoid multiples of 2 pi")
    c = np.cos(theta)
    d = 2.0 * (1.0 + lam * lam - 2.0 * lam * c)
    u = (1.0 - lam - 2.0 * lam * c) / d
    v = (1.0 + lam - 2.0 * lam * c) / np.tan(theta / 2) / d
    if u.ndim == 0:
        return float(u), float(v)
    return u, v


def curve_residual(lam: float, u, v, dps: Optional[int] = None):
    """``|v^2 + (1+(lam-1)u)^2 (2(lam+1)u - 1) / ((lam+1)(2(lam-1)^2 u + 3 lam - 1))|``.

    Near the asymptote the expression is ill-conditioned in ``u`` (one ulp
    of ``u`` moves it by about ``v^2/(u - asymptote)`` ulps), so doubles
    from :func:`phi_boundary` leave residuals up to ~1e-7 for small theta.
    Pass ``dps`` together with extended-precision ``(u, v)`` to remove this.
    """
    if dps is not None:
        with mpmath.workdps(dps):
            lam_, u, v = mpmath.mpf(lam), mpmath.mpf(u), mpmath.mpf(v)
            den = (lam_ + 1) * (2 * (lam_ - 1) ** 2 * u + 3 * lam_ - 1)
            if abs(den) < 1e-14:
                raise DenominatorZero("curve equation denominator vanishes")
            return float(abs(v * v + (1 + (lam_ - 1) * u) ** 2 * (2 * (lam_ + 1) * u - 1) / den))
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    den = (lam + 1.0) * (2.0 * (lam - 1.0) ** 2 * u + 3.0 * lam - 1.0)
    if np.any(np.abs(den) < 1e-14):
        raise DenominatorZero("curve equation denominator vanishes")
    out = np.abs(v * v + (1.0 + (lam - 1.0) * u) ** 2 * (2.0 * (lam + 1.0) * u - 1.0) / den)
    return float(out) if out.ndim == 0 else out


def asymptote(lam: float) -> float:
    if abs(1.0 - lam) < 1e-14:
        raise LambdaIsOne("no vertical asymptote at lambda = 1")
    return (1.0 - 3.0 * lam) / (2.0 * (1.0 - lam) ** 2)


def nonconvexity_witness(lam: float, budget: int = 200_000, v_max: float = 50.0
                         ) -> Optional[Tuple[complex, complex, complex]]:
    """Two points outside ``phi_lam(D)`` whose midpoint lies inside.

    Half of ``budget`` classifies a grid over ``[u_lo, u_hi] x [-v_max, v_max]``
    (denser near the asymptote); the rest tests midpoints of the per-row
    boundary points.  The u-range spans the asymptote and the curve vertex
    ``1/(2(1+lam))`` with a margin of 2, so the bend of the curve is covered
    even when the asymptote lies far to the left.  Returns ``None`` when no
    witness is found within the budget.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    vertex = 1.0 / (2.0 * (1.0 + lam))
    if abs(1.0 - lam) < 1e-14:
        centre = vertex
        u_lo, u_hi = centre - 2.0, centre + 2.0
    else:
        centre = asymptote(lam)
        u_lo, u_hi = min(centre, vertex) - 2.0, max(centre, vertex) + 2.0

    n_grid = max(4, budget // 2)
    n_rows = max(2, math.isqrt(n_grid))
    n_cols = max(2, n_grid // n_rows)
    n_fine = n_cols // 4
    offsets = np.geomspace(1e-4, 2.0, max(n_fine, 1))
    u = np.concatenate([np.linspace(u_lo, u_hi, n_cols - 2 * n_fine), centre - offsets, centre + offsets])
    u = np.unique(u[(u >= u_lo) & (u <= u_hi)])
    v = np.linspace(-v_max, v_max, n_rows)
    # rows x cols may slightly exceed n_grid only through the unique() trimming
    inside = _image_mask(lam, u[None, :] + 1j * v[:, None])
    used = inside.size

    first_in = np.where(inside.any(axis=1), inside.argmax(axis=1), -1)
    rows = np.where(first_in >= 1)[0]
    if rows.size < 2:
        return None
    cand = u[first_in[rows] - 1] + 1j * v[rows]

    i, j = np.triu_indices(rows.size, k=1)
    remaining = max(0, budget - used)
    i, j = i[:remaining], j[:remaining]
    if i.size == 0:
        return None
    mid = 0.5 * (cand[i] + cand[j])
    hits = np.where(_image_mask(lam, mid))[0]
    if hits.size == 0:
        return None
    k = hits[0]
    w1, w2, wm = complex(cand[i[k]]), complex(cand[j[k]]), complex(mid[k])
    if preimage_in_disk(lam, w1) or preimage_in_disk(lam, w2) or not preimage_in_disk(lam, wm):
        return None
    return w1, w2, wm
