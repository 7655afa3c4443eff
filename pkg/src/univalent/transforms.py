"""Alexander transform, J_alpha, pre-Schwarzian derivative and norm."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from . import series as ps
from .errors import NotNormalized, VanishingDerivative
from .families import FunctionSpec, JAlpha, KLambda, Koebe, Rotation
from .grids import DiskGrid, geometric_radii
from .series import PowerSeries

INV_PHI = (math.sqrt(5) - 1) / 2


def _require_normalized(f: PowerSeries) -> None:
    if not f.is_normalized():
        raise NotNormalized("expected f(0) = 0 and f'(0) = 1")


def alexander(f: PowerSeries) -> PowerSeries:
    """``J[f](z) = \\int_0^z f(t)/t dt``: coefficient ``n`` becomes ``a_n/n``."""
    _require_normalized(f)
    return ps.antidifferentiate(ps.div_by_z(f))


def j_alpha(f: PowerSeries, alpha: complex) -> PowerSeries:
    """``\\int_0^z (f(t)/t)^alpha dt`` on the formal branch equal to 1 at 0."""
    _require_normalized(f)
    g = ps.div_by_z(f)
    return ps.antidifferentiate(ps.exp_series(complex(alpha) * ps.log_unit(g)))


def _log_derivative_over_z(spec: FunctionSpec, z: np.ndarray) -> np.ndarray:
    """``(log(f(z)/z))'``, the pre-Schwarzian derivative of ``J[f]``."""
    q = spec.z_over_f()
    if q is not None:
        # f/z = 1/q
        return -ps.evaluate(q, z, 1) / ps.evaluate(q, z)
    out = np.empty_like(z)
    small = np.abs(z) < 1e-8
    if np.any(small):
        log_g = ps.log_unit(ps.div_by_z(spec.series(ps.DEFAULT_ORDER)))
        out[small] = ps.evaluate(log_g, z[small], 1)
    big = ~small
    zb = z[big]
    out[big] = spec.value(zb, 1) / spec.value(zb) - 1.0 / zb
    return out


def pre_schwarzian(spec: FunctionSpec, z):
    """``T_f = f''/f'``; for a :class:`JAlpha` spec uses ``alpha (log f(z)/z)'``."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    if isinstance(spec, JAlpha):
        out = spec.alpha * _log_derivative_over_z(spec.base, zz)
    else:
        d1 = np.asarray(spec.value(zz, 1))
        if np.any(np.abs(d1) < 1e-14):
            raise VanishingDerivative("f' vanishes at an evaluation point")
        out = np.asarray(spec.value(zz, 2)) / d1
    return complex(out[0]) if np.ndim(z) == 0 else out


def phi_profile(lam: float, r):
    """``1 + r + lam (1 - r^2)/(1 - lam r)`` on ``[0, 1]``.

    At ``lam = 1`` the expression simplifies to ``2 + 2r``, which also gives
    the continuous extension 4 at ``r = 1``.
    """
    r = np.asarray(r, dtype=float)
    if lam == 1.0:
        out = 2.0 + 2.0 * r
    else:
        out = 1.0 + r + lam * (1.0 - r * r) / (1.0 - lam * r)
    return float(out) if out.ndim == 0 else out


def norm_J_klambda_closed(lam: float, alpha: complex = 1.0) -> float:
    """Pre-Schwarzian norm of ``J_alpha[k_lam]`` in closed form."""
    a = abs(complex(alpha))
    if lam <= 1.0 / 3.0:
        return 2.0 * a
    return a * (3.0 + lam - 2.0 * math.sqrt(2.0 * (1.0 - lam * lam))) / lam


def golden_section_max(func: Callable[[float], float], a: float, b: float, tol: float = 1e-10):
    """Maximize a unimodal ``func`` on ``[a, b]``; endpoints are also compared.

    Returns ``(argmax, max)``.
    """
    lo, hi = a, b
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = func(c), func(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = func(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = func(d)
    best = max(((c, fc), (d, fd), (a, func(a)), (b, func(b))), key=lambda t: t[1])
    return best


@dataclass(frozen=True)
class NormEstimate:
    value: float
    method: str  # closed_form | profile_max | grid_sup
    argmax: Union[float, complex]

    def to_dict(self) -> dict:
        if isinstance(self.argmax, complex):
            arg = [self.argmax.real, self.argmax.imag]
        else:
            arg = float(self.argmax)
        return {"value": self.value, "method": self.method, "argmax": arg}


def _radial_profile(spec: FunctionSpec) -> Optional[Callable[[float], float]]:
    """Profile ``r -> (1 - r^2)|T(r)|`` on the ray carrying the supremum.

    Only kinds where the maximizing ray is known in closed form qualify; the
    profile is continuously extended to ``r = 1``.
    """
    while isinstance(spec, Rotation):  # the norm is rotation invariant
        spec = spec.base
    if isinstance(spec, Koebe):
        return lambda r: 4.0 + 2.0 * r
    if isinstance(spec, JAlpha):
        base = spec.base
        while isinstance(base, Rotation):
            base = base.base
        if isinstance(base, (Koebe, KLambda)):
            lam, a = base.lam, abs(spec.alpha)
            return lambda r: a * phi_profile(lam, r)
    return None


def norm_numeric(spec: FunctionSpec, grid: Optional[DiskGrid] = None, tol: float = 1e-10) -> NormEstimate:
    """Pre-Schwarzian norm ``sup (1 - |z|^2)|T_f(z)|``.

    Kinds with a known extremal ray are maximized by golden section on the
    closed interval ``[0, 1]``.  Anything else gets a grid supremum refined
    along the best ray; that value is a lower bound for the norm.
    """
    profile = _radial_profile(spec)
    if profile is not None:
        r, value = golden_section_max(profile, 0.0, 1.0, tol)
        return NormEstimate(float(value), "profile_max", float(r))

    grid = grid or DiskGrid(geometric_radii(0.0, 1 - 1e-6, 48), 720)
    pts = grid.points()
    vals = (1.0 - np.abs(pts) ** 2) * np.abs(pre_schwarzian(spec, pts.ravel()).reshape(pts.shape))
    k = int(np.argmax(vals))
    best_val, best_pt = float(vals.ravel()[k]), complex(pts.ravel()[k])

    # refine along the best ray, then in angle at the refined radius
    theta = float(np.angle(best_pt))
    ray = np.exp(1j * theta)

    def along(r: float) -> float:
        return float((1 - r * r) * abs(pre_schwarzian(spec, r * ray)))

    radii = np.asarray(grid.radii)
    i = int(np.argmin(np.abs(radii - abs(best_pt))))
    lo = float(radii[max(i - 1, 0)])
    hi = float(radii[min(i + 1, radii.size - 1)])
    r_star, v_star = golden_section_max(along, lo, hi, tol)
    if v_star > best_val:
        best_val, best_pt = v_star, complex(r_star * ray)

    step = 2 * np.pi / grid.angles
    rr = abs(best_pt)

    def around(t: float) -> float:
        return float((1 - rr * rr) * abs(pre_schwarzian(spec, rr * np.exp(1j * t))))

    t_star, v_star = golden_section_max(around, theta - step, theta + step, tol)
    if v_star > best_val:
        best_val, best_pt = v_star, complex(rr * np.exp(1j * t_star))
    return NormEstimate(best_val, "grid_sup", best_pt)
