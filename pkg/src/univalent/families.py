"""Closed-form families and generators of class members.

Most functions here are stored through the polynomial ``q = z/f``.  For those
kinds ``f = z/q`` is evaluated exactly, and the class functional
``f'(z/f)^2 - 1`` reduces to ``q - z q' - 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import series as ps
from .errors import (
    InvalidMeasure,
    NotNormalized,
    NotUnitModulus,
    PoleAtPoint,
    PsiUnbounded,
    VanishingDenominator,
)
from .grids import RMAX, DiskGrid, winding_number
from .series import DEFAULT_ORDER, PowerSeries

POLE_TOL = 1e-14
UNIT_TOL = 1e-12


def _cpair(c: complex) -> list:
    c = complex(c)
    return [c.real, c.imag]


def _complex(pair) -> complex:
    if isinstance(pair, (int, float)):
        return complex(pair)
    re, im = pair
    return complex(re, im)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise ValueError(f"lambda must lie in (0, 1], got {lam}")
    return lam


def _value_from_q(q: PowerSeries, z, m: int):
    """m-th derivative of ``z/q(z)`` for a polynomial ``q``."""
    z = np.asarray(z, dtype=complex)
    taylor = ps.taylor_at(q, z, m + 1)
    q0 = np.asarray(taylor[0])
    if np.any(np.abs(q0) < POLE_TOL):
        raise PoleAtPoint("z/f vanishes at an evaluation point")
    # local Taylor coefficients of h = 1/q at z
    h = [1.0 / q0]
    for k in range(1, m + 1):
        h.append(-sum(taylor[j] * h[k - j] for j in range(1, k + 1)) / q0)
    out = z * h[m] * math.factorial(m)
    if m:
        out = out + m * h[m - 1] * math.factorial(m - 1)
    return complex(out) if out.ndim == 0 else out


def _koebe_derivative(z, m: int):
    """m-th derivative of ``z/(1-z)^2 = 1/(1-z)^2 - 1/(1-z)``."""
    w = 1.0 - np.asarray(z, dtype=complex)
    if np.any(np.abs(w) < POLE_TOL):
        raise PoleAtPoint("Koebe function has a pole at z = 1")
    return math.factorial(m + 1) / w ** (m + 2) - math.factorial(m) / w ** (m + 1)


class FunctionSpec:
    """A normalized analytic function on the unit disk.

    Subclasses implement :meth:`value` and :meth:`series`; kinds with an
    exact polynomial ``z/f`` also return it from :meth:`z_over_f`.  Every
    kind exposes ``lam`` (``None`` when no class parameter is attached).
    """

    kind: str = ""

    def value(self, z, m: int = 0):
        raise NotImplementedError

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        raise NotImplementedError

    def z_over_f(self) -> Optional[PowerSeries]:
        return None

    def to_dict(self) -> dict:
        raise NotImplementedError


class _QSpec(FunctionSpec):
    def value(self, z, m: int = 0):
        return _value_from_q(self.z_over_f(), z, m)

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        q = self.z_over_f().truncate(order - 1)
        return ps.mul_by_z(ps.reciprocal(q))


@dataclass(frozen=True)
class Koebe(_QSpec):
    kind = "koebe"
    lam = 1.0

    def value(self, z, m: int = 0):
        out = _koebe_derivative(z, m)
        return complex(out) if np.ndim(out) == 0 else out

    def z_over_f(self) -> PowerSeries:
        return PowerSeries.from_coeffs([1, -2, 1])

    def to_dict(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class KLambda(_QSpec):
    """``z/((1-z)(1-lam z))``; coincides with the Koebe function at ``lam = 1``."""

    lam: float
    kind = "k_lambda"

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    def z_over_f(self) -> PowerSeries:
        lam = self.lam
        return PowerSeries.from_coeffs([1, -(1 + lam), lam])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lambda": self.lam}


@dataclass(frozen=True)
class RationalMember(_QSpec):
    """``z/(1 - lam z^2)``."""

    lam: float
    kind = "rational_member"

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    def z_over_f(self) -> PowerSeries:
        return PowerSeries.from_coeffs([1, 0, -self.lam])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lambda": self.lam}


@dataclass(frozen=True)
class TestG(_QSpec):
    """``z/((1-z^2)(1-lam z^2))``, which has ``a_2 = 0`` but is not in the class."""

    lam: float
    kind = "test_g"
    __test__ = False  # keep pytest from collecting the class

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))

    def z_over_f(self) -> PowerSeries:
        lam = self.lam
        return PowerSeries.from_coeffs([1, 0, -(1 + lam), 0, lam])

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lambda": self.lam}


@dataclass(frozen=True)
class Rotation(FunctionSpec):
    """``x^{-1} base(x z)``."""

    x: complex
    base: FunctionSpec
    kind = "rotation"

    def __post_init__(self):
        x = complex(self.x)
        if abs(abs(x) - 1.0) > UNIT_TOL:
            raise NotUnitModulus(f"rotation factor must have modulus 1, got |x| = {abs(x)}")
        object.__setattr__(self, "x", x)

    @property
    def lam(self) -> Optional[float]:
        return self.base.lam

    def value(self, z, m: int = 0):
        return self.x ** (m - 1) * self.base.value(self.x * np.asarray(z, dtype=complex), m)

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        c = self.base.series(order).coeffs
        n = np.arange(c.size)
        return PowerSeries(c * self.x ** (n - 1.0))

    def z_over_f(self) -> Optional[PowerSeries]:
        q = self.base.z_over_f()
        if q is None:
            return None
        return PowerSeries(q.coeffs * self.x ** np.arange(q.coeffs.size))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "x": _cpair(self.x), "base": self.base.to_dict()}


def _psi_sup(psi: PowerSeries, radius: float = RMAX, angles: int = 720) -> float:
    z = radius * np.exp(2j * np.pi * np.arange(angles) / angles)
    return float(np.max(np.abs(ps.evaluate(psi, z))))


def q_is_zero_free(q: PowerSeries, radius: float = RMAX) -> bool:
    """True when the polynomial ``q`` has no zero in ``|z| <= radius``.

    Combines a grid minimum, the argument principle on the outer circle and a
    companion-matrix root check (roots inside ``1 - 1e-6`` are rejected).
    """
    pts = DiskGrid.default(rmax=radius).points()
    if np.min(np.abs(ps.evaluate(q, pts))) < POLE_TOL:
        return False
    try:
        if winding_number(lambda z: ps.evaluate(q, z), radius) != 0:
            return False
    except ZeroDivisionError:
        return False
    c = np.trim_zeros(q.coeffs, "b")
    if c.size > 1:
        roots = np.roots(c[::-1])
        if roots.size and np.min(np.abs(roots)) < 1.0 - 1e-6:
            return False
    return True


@dataclass(frozen=True)
class SchwarzMember(_QSpec):
    """Member built from ``z/f = 1 - a2 z - lam z \\int_0^z psi``.

    Then ``f'(z/f)^2 - 1 = lam z^2 psi(z)``, so the class inequality holds
    whenever ``|psi| <= 1`` and ``z/f`` has no zero in the disk.
    """

    lam: float
    a2: complex
    psi: PowerSeries
    kind = "schwarz_member"

    def __post_init__(self):
        object.__setattr__(self, "lam", _check_lambda(self.lam))
        object.__setattr__(self, "a2", complex(self.a2))
        sup = _psi_sup(self.psi)
        if sup > 1.0 + 1e-12:
            raise PsiUnbounded(f"sup |psi| = {sup} exceeds 1 on the validation circle")
        if not q_is_zero_free(self.z_over_f()):
            raise VanishingDenominator("z/f has a zero in the disk; candidate rejected")

    def z_over_f(self) -> PowerSeries:
        tail = ps.mul_by_z(ps.antidifferentiate(self.psi))
        c = -self.lam * tail.coeffs
        c[0] += 1.0
        c[1] -= self.a2
        return PowerSeries(c)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "lambda": self.lam, "a2": _cpair(self.a2), "psi": self.psi.to_dict()}


@dataclass(frozen=True)
class DiscreteCircleMeasure:
    """Finitely many atoms ``x_k`` on the unit circle with weights ``w_k``."""

    atoms: Tuple[Tuple[complex, float], ...]

    def __post_init__(self):
        atoms = tuple((complex(x), float(w)) for x, w in self.atoms)
        if not atoms:
            raise InvalidMeasure("measure needs at least one atom")
        for x, w in atoms:
            if w < 0:
                raise InvalidMeasure(f"negative weight {w}")
            if abs(abs(x) - 1.0) > UNIT_TOL:
                raise InvalidMeasure(f"atom {x} is not on the unit circle")
        if abs(math.fsum(w for _, w in atoms) - 1.0) > 1e-12:
            raise InvalidMeasure("weights must sum to 1")
        object.__setattr__(self, "atoms", atoms)

    @property
    def points(self) -> np.ndarray:
        return np.array([x for x, _ in self.atoms])

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self.atoms])

    def to_list(self) -> list:
        return [{"x": _cpair(x), "w": w} for x, w in self.atoms]


def random_measure(rng: np.random.Generator, atoms: int = 20) -> DiscreteCircleMeasure:
    x = np.exp(2j * np.pi * rng.random(atoms))
    w = rng.random(atoms)
    w = w / w.sum()
    w[-1] = 1.0 - math.fsum(w[:-1])
    return DiscreteCircleMeasure(tuple(zip(x, w)))


@dataclass(frozen=True)
class HullMeasure(FunctionSpec):
    """``\\int z/(1 - x z)^2 dmu(x)`` for a discrete probability measure."""

    measure: DiscreteCircleMeasure
    kind = "hull_measure"
    lam = None

    def value(self, z, m: int = 0):
        z = np.asarray(z, dtype=complex)
        out = 0j
        for x, w in self.measure.atoms:
            out = out + w * x ** (m - 1) * _koebe_derivative(x * z, m)
        return complex(out) if np.ndim(out) == 0 else out

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        n = np.arange(order + 1)
        x, w = self.measure.points, self.measure.weights
        moments = (w[None, :] * x[None, :] ** (n[:, None] - 1.0)).sum(axis=1)
        c = n * moments
        c[0] = 0.0
        return PowerSeries(c)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "measure": self.measure.to_list()}


@dataclass(frozen=True)
class SeriesSpec(FunctionSpec):
    """A raw normalized series, evaluated as a polynomial."""

    coeffs: PowerSeries
    kind = "series"
    lam = None

    def __post_init__(self):
        if not self.coeffs.is_normalized():
            raise NotNormalized("series spec must satisfy c_0 = 0, c_1 = 1")

    def value(self, z, m: int = 0):
        return ps.evaluate(self.coeffs, z, m)

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        return self.coeffs.truncate(order)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "series": self.coeffs.to_dict()}


@dataclass(frozen=True)
class JAlpha(FunctionSpec):
    """``\\int_0^z (f(t)/t)^alpha dt`` of a base spec (principal branch)."""

    base: FunctionSpec
    alpha: complex = 1.0
    order: int = 128
    kind = "j_alpha"
    lam = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))

    def series(self, order: int = DEFAULT_ORDER) -> PowerSeries:
        from .transforms import j_alpha

        return j_alpha(self.base.series(order), self.alpha)

    def value(self, z, m: int = 0):
        if m == 0:
            return ps.evaluate(self.series(self.order), z)
        return np.vectorize(lambda t: self._scalar_derivative(complex(t), m), otypes=[complex])(z) \
            if np.ndim(z) else self._scalar_derivative(complex(z), m)

    def _scalar_derivative(self, z: complex, m: int) -> complex:
        if abs(z) < 1e-3:
            return ps.evaluate(self.series(self.order), z, m)
        # local expansion of f(z+t)/(z+t), then the alpha-th power
        k = m
        f_loc = PowerSeries.from_coeffs([self.base.value(z, j) / math.factorial(j) for j in range(k + 1)])
        inv = PowerSeries.from_coeffs([(-1) ** j / z ** (j + 1) for j in range(k + 1)])
        g = ps.product(f_loc, inv)
        g0 = g[0]
        if abs(g0) < POLE_TOL:
            raise PoleAtPoint("f(z)/z vanishes")
        powered = ps.exp_series(self.alpha * ps.log_unit(g * (1.0 / g0))) * np.exp(self.alpha * np.log(g0))
        return powered[m - 1] * math.factorial(m - 1)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "alpha": _cpair(self.alpha), "base": self.base.to_dict()}


# module-level operations --------------------------------------------------

def eval_spec(spec: FunctionSpec, z, m: int = 0):
    """Value of the m-th derivative of ``spec`` at ``z`` (scalar or array)."""
    return spec.value(z, m)


def series_of(spec: FunctionSpec, order: int = DEFAULT_ORDER) -> PowerSeries:
    if order < 2:
        raise ValueError("series order must be >= 2")
    return spec.series(order)


def rotate(spec: FunctionSpec, x: complex) -> FunctionSpec:
    x = complex(x)
    if abs(abs(x) - 1.0) > UNIT_TOL:
        raise NotUnitModulus(f"|x| = {abs(x)}")
    if x == 1:
        return spec
    if isinstance(spec, Rotation):
        combined = spec.x * x
        if abs(combined - 1.0) < 1e-15:
            return spec.base
        return Rotation(combined / abs(combined), spec.base)
    return Rotation(x, spec)


def member_from_schwarz(lam: float, a2: complex, psi: PowerSeries) -> SchwarzMember:
    """Build ``f`` with ``z/f = 1 - a2 z - lam z \\int_0^z psi``.

    Raises ``PsiUnbounded`` if ``|psi| > 1`` on the validation circle and
    ``VanishingDenominator`` if ``z/f`` has a zero in the disk.
    """
    return SchwarzMember(lam, a2, psi)


def hull_from_measure(measure: DiscreteCircleMeasure) -> HullMeasure:
    if not isinstance(measure, DiscreteCircleMeasure):
        raise InvalidMeasure("expected a DiscreteCircleMeasure")
    return HullMeasure(measure)


def identity(lam: float = 1.0) -> SchwarzMember:
    return SchwarzMember(lam, 0.0, PowerSeries.from_coeffs([0.0]))


def random_psi(rng: np.random.Generator, max_degree: int = 4) -> PowerSeries:
    """Polynomial with ``sum |c_j| <= 1``, hence ``|psi| <= 1`` on the closed disk."""
    deg = int(rng.integers(0, max_degree + 1))
    c = rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1)
    scale = 1.0 if rng.random() < 0.3 else rng.random()
    c *= scale / np.sum(np.abs(c))
    return PowerSeries(c)


def random_member(lam: float, rng: np.random.Generator, max_tries: int = 1000) -> SchwarzMember:
    """Sample a member by rejection; the sampler is not a parameterization."""
    for _ in range(max_tries):
        psi = random_psi(rng)
        radius = (1 + lam) * rng.random() ** 0.5
        a2 = radius * np.exp(2j * np.pi * rng.random())
        try:
            return SchwarzMember(lam, a2, psi)
        except VanishingDenominator:
            continue
    raise RuntimeError("could not sample a member")


def generate_members(lam: float, count: int, seed: int = 0) -> List[SchwarzMember]:
    """Deterministic list of certified members for a given ``lam``."""
    rng = np.random.default_rng([seed, int(round(lam * 1e6))])
    return [random_member(lam, rng) for _ in range(count)]


# JSON ------------------------------------------------------------------

def spec_to_dict(spec: FunctionSpec) -> dict:
    return spec.to_dict()


def spec_from_dict(data: dict) -> FunctionSpec:
    kind = data.get("kind")
    if kind == "koebe":
        return Koebe()
    if kind == "k_lambda":
        return KLambda(data["lambda"])
    if kind == "rational_member":
        return RationalMember(data["lambda"])
    if kind == "test_g":
        return TestG(data["lambda"])
    if kind == "rotation":
        return Rotation(_complex(data["x"]), spec_from_dict(data["base"]))
    if kind == "schwarz_member":
        return SchwarzMember(data["lambda"], _complex(data.get("a2", [0, 0])), PowerSeries.from_dict(data["psi"]))
    if kind == "hull_measure":
        atoms = tuple((_complex(a["x"]), float(a["w"])) for a in data["measure"])
        return HullMeasure(DiscreteCircleMeasure(atoms))
    if kind == "series":
        payload = data["series"] if "series" in data else data
        return SeriesSpec(PowerSeries.from_dict(payload))
    if kind == "j_alpha":
        return JAlpha(spec_from_dict(data["base"]), _complex(data.get("alpha", [1, 0])))
    raise ValueError(f"unknown function kind {kind!r}")
