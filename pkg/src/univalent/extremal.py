"""Integral means, arc length, star functions and the Fekete-Szego functional."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from . import series as ps
from .errors import NearZeroIntegrand, NearZeroModulus, NotNormalized
from .families import FunctionSpec, KLambda
from .series import PowerSeries

DEFAULT_NODES = 2048
STAR_NODES = 4096
STAR_SLACK = 1e-8
MEAN_SLACK = 1e-9


@dataclass(frozen=True)
class MeanReport:
    value: float
    n: int
    p: float
    r: float
    nodes: int

    def to_dict(self) -> dict:
        return {"value": self.value, "n": self.n, "p": self.p, "r": self.r, "nodes": self.nodes}


def _check_nodes(M: int) -> None:
    if M < 256 or M & (M - 1):
        raise ValueError("node count must be a power of two >= 256")


def circle_values(spec: FunctionSpec, r: float, M: int, n: int = 0, start: float = 0.0) -> np.ndarray:
    theta = start + 2 * np.pi * np.arange(M) / M
    return np.asarray(spec.value(r * np.exp(1j * theta), n))


def integral_mean(spec: FunctionSpec, n: int, p: float, r: float, M: int = DEFAULT_NODES) -> MeanReport:
    """``(1/2pi) \\int |f^(n)(r e^{it})|^p dt`` by the uniform trapezoidal rule."""
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    _check_nodes(M)
    mod = np.abs(circle_values(spec, r, M, n))
    if p < 0:
        if n != 0:
            raise ValueError("negative exponents are only defined for n = 0")
        if np.min(mod) < 1e-12:
            raise NearZeroIntegrand("|f| nearly vanishes on the circle")
    value = float(np.mean(mod ** p)) if p != 0 else 1.0
    return MeanReport(value, n, float(p), float(r), M)


def parseval_mean(f: PowerSeries, r: float) -> float:
    """``sum |a_n|^2 r^(2n)``, the ``p = 2, n = 0`` mean computed from coefficients."""
    c = np.abs(f.coeffs) ** 2
    return math.fsum(c * (r * r) ** np.arange(c.size))


def arc_length(spec: FunctionSpec, r: float, M: int = DEFAULT_NODES) -> float:
    """Length of the image of ``|z| = r``: ``\\int r |f'(r e^{it})| dt``."""
    if not 0 < r < 1:
        raise ValueError("radius must lie in (0, 1)")
    _check_nodes(M)
    return float(r * 2 * np.pi * np.mean(np.abs(circle_values(spec, r, M, 1))))


@dataclass(frozen=True)
class StarSamples:
    values: np.ndarray
    star: np.ndarray

    @property
    def thetas(self) -> np.ndarray:
        M = self.values.size
        return np.pi * np.arange(M + 1) / M

    def is_concave(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.diff(self.star, 2) <= tol))


def star_function(samples: Iterable[float]) -> StarSamples:
    """Discrete star function on a uniform grid over ``[-pi, pi)``.

    ``star[k]`` is ``2 pi/M`` times the sum of the ``k`` largest samples: the
    supremum over unions of ``k`` grid cells, i.e. over sets of measure
    ``2 theta_k`` with ``theta_k = pi k/M``.
    """
    values = np.asarray(list(samples) if not isinstance(samples, np.ndarray) else samples, dtype=float)
    M = values.size
    if M < 256 or M % 2:
        raise ValueError("need an even number of samples, at least 256")
    ordered = np.sort(values)[::-1]
    star = np.concatenate([[0.0], np.cumsum(ordered)]) * (2 * np.pi / M)
    return StarSamples(values, star)


def _log_modulus(spec: FunctionSpec, r: float, M: int) -> np.ndarray:
    mod = np.abs(circle_values(spec, r, M, 0, start=-np.pi))
    if np.min(mod) < 1e-300:
        raise NearZeroModulus("f vanishes on the circle")
    return np.log(mod)


def star_samples(f: FunctionSpec, r: float, sign: int = 1, M: int = STAR_NODES) -> StarSamples:
    """Star function of ``sign log|f(r e^{it})|`` sampled from ``t = -pi``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return star_function(sign * _log_modulus(f, r, M))


def star_dominance(f: FunctionSpec, lam: float, r: float, sign: int = 1, M: int = STAR_NODES,
                   slack: float = STAR_SLACK) -> Tuple[bool, float]:
    """Compare ``(sign log|f|)^*`` with ``(sign log|k_lam|)^*`` on the circle ``|z| = r``.

    Returns ``(holds, max violation)`` where the violation is the largest
    excess of the star function of ``f`` over that of ``k_lam``.
    """
    sf = star_samples(f, r, sign, M)
    sk = star_samples(KLambda(lam), r, sign, M)
    violation = float(np.max(sf.star - sk.star))
    return violation <= slack, violation


def hinge_dominance(f: FunctionSpec, lam: float, r: float, sign: int = 1, M: int = STAR_NODES,
                    levels: Optional[np.ndarray] = None, slack: float = STAR_SLACK) -> Tuple[bool, float]:
    """Check ``\\int [g - t]^+ <= \\int [h - t]^+`` over a grid of levels ``t``.

    ``g = sign log|f|`` and ``h = sign log|k_lam|`` on the circle ``|z| = r``.
    """
    g = sign * _log_modulus(f, r, M)
    h = sign * _log_modulus(KLambda(lam), r, M)
    if levels is None:
        lo, hi = min(g.min(), h.min()), max(g.max(), h.max())
        levels = np.linspace(lo - 1.0, hi + 1.0, 201)
    w = 2 * np.pi / M
    lhs = np.array([w * np.sum(np.maximum(g - t, 0.0)) for t in levels])
    rhs = np.array([w * np.sum(np.maximum(h - t, 0.0)) for t in levels])
    violation = float(np.max(lhs - rhs))
    return violation <= slack, violation


def convex_mean_check(f: FunctionSpec, lam: float, r: float, p: float, M: int = DEFAULT_NODES,
                      slack: float = MEAN_SLACK) -> Tuple[bool, float]:
    """``mean |f|^p <= mean |k_lam|^p`` on ``|z| = r``; returns ``(holds, gap)``.

    The gap is ``mean(k_lam) - mean(f)``.  ``p = 0`` is trivially an equality.
    """
    if p == 0:
        return True, 0.0
    mf = integral_mean(f, 0, p, r, M).value
    mk = integral_mean(KLambda(lam), 0, p, r, M).value
    gap = mk - mf
    return mf <= mk + slack, gap


def schwarz_residual(f: PowerSeries) -> PowerSeries:
    """Series of ``f'(z) (z/f(z))^2 - 1``; it starts with ``(a_3 - a_2^2) z^2``."""
    if not f.is_normalized():
        raise NotNormalized("expected a normalized series")
    q = ps.reciprocal(ps.div_by_z(f))
    out = ps.product(ps.differentiate(f), ps.product(q, q))
    return out - 1.0


def fekete_szego_value(f: PowerSeries, mu: complex) -> float:
    """``|a_3 - mu a_2^2|``."""
    if not f.is_normalized():
        raise NotNormalized("expected a normalized series")
    return abs(f[3] - complex(mu) * f[2] ** 2)


def fs_bound(lam: float, mu: complex) -> float:
    """Upper bound for ``|a_3 - mu a_2^2|`` over the class.

    Equals ``|(1+lam+lam^2) - mu(1+lam)^2|`` when
    ``|mu - (1+lam+lam^2)/(1+lam)^2| >= 1/(1+lam)`` and ``1+lam`` otherwise.
    """
    mu = complex(mu)
    s = 1.0 + lam
    a3 = 1.0 + lam + lam * lam
    if abs(mu - a3 / (s * s)) >= 1.0 / s:
        return abs(a3 - mu * s * s)
    return s


def fs_search(lam: float, mu: complex, resolution: int = 512) -> float:
    """Grid maximum of ``|(1+lam) c_2 + ((1+lam+lam^2) - mu (1+lam)^2) c_1^2|``.

    The maximum is taken over the Schwarz-Pick region ``|c_1| <= 1``,
    ``|c_2| <= 1 - |c_1|^2``.  Two parameters are eliminated without loss:
    the objective is unchanged under ``(c_1, c_2) -> (e^{it} c_1, e^{2it} c_2)``
    (so ``arg c_1 = 0``), and a modulus of an affine function of ``c_2``
    peaks on the boundary circle (so ``|c_2`` is clamped to ``1 - |c_1|^2``).
    The grid covers ``|c_1|`` and ``arg c_2`` with ``resolution`` steps each.
    """
    if resolution < 64:
        raise ValueError("resolution must be at least 64")
    mu = complex(mu)
    s = 1.0 + lam
    b = (1.0 + lam + lam * lam) - mu * s * s
    rho = np.linspace(0.0, 1.0, resolution + 1)
    phase = np.exp(2j * np.pi * np.arange(resolution) / resolution)
    c1sq = (rho * rho)[:, None]
    c2 = (1.0 - rho * rho)[:, None] * phase[None, :]
    return float(np.max(np.abs(s * c2 + b * c1sq)))


def coeff_bound_check(f: PowerSeries) -> float:
    """``max_{2 <= n <= N} |a_n|/n``."""
    if not f.is_normalized():
        raise NotNormalized("expected a normalized series")
    n = np.arange(2, f.order + 1)
    if n.size == 0:
        return 0.0
    return float(np.max(np.abs(f.coeffs[2:]) / n))
