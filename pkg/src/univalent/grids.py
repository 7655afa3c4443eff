"""Sampling grids on the disk and on the exterior of the disk."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

RMAX = 0.999
RMIN = 0.05
N_RADII = 24
N_ANGLES = 720
EXTERIOR_RADII = (1.001, 1.01, 1.1, 2.0, 10.0)


def geometric_radii(rmin: float = RMIN, rmax: float = RMAX, count: int = N_RADII) -> Tuple[float, ...]:
    """Radii whose distance to the unit circle shrinks geometrically."""
    if count == 1:
        return (float(rmax),)
    gaps = np.geomspace(1.0 - rmin, 1.0 - rmax, count)
    return tuple(float(1.0 - g) for g in gaps)


@dataclass(frozen=True)
class DiskGrid:
    """Polar grid ``radii x angles``; points are ordered radius-major."""

    radii: Tuple[float, ...]
    angles: int = N_ANGLES

    @classmethod
    def default(cls, rmax: float = RMAX, n_radii: int = N_RADII, n_angles: int = N_ANGLES) -> "DiskGrid":
        return cls(geometric_radii(min(RMIN, rmax), rmax, n_radii), n_angles)

    @classmethod
    def exterior(cls, radii=EXTERIOR_RADII, n_angles: int = N_ANGLES) -> "DiskGrid":
        return cls(tuple(float(r) for r in radii), n_angles)

    @property
    def rmax(self) -> float:
        return max(self.radii)

    @property
    def rmin(self) -> float:
        return min(self.radii)

    def thetas(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.angles) / self.angles

    def points(self) -> np.ndarray:
        """Complex points with shape ``(len(radii), angles)``."""
        r = np.asarray(self.radii)[:, None]
        return r * np.exp(1j * self.thetas())[None, :]

    def describe(self) -> dict:
        return {"radii": len(self.radii), "angles": self.angles, "rmax": float(self.rmax)}


def winding_number(func: Callable[[np.ndarray], np.ndarray], radius: float,
                   samples: int = 4096, max_samples: int = 1 << 22) -> int:
    """Winding number of ``func`` around 0 along ``|z| = radius``.

    The sampling is doubled until consecutive phase increments are below
    ``pi/4``, so the count is reliable for the smooth closed curves used here.
    Raises ``ZeroDivisionError`` if ``func`` hits zero on the circle.
    """
    n = samples
    while True:
        z = radius * np.exp(2j * np.pi * np.arange(n) / n)
        v = np.asarray(func(z), dtype=complex)
        if np.any(v == 0):
            raise ZeroDivisionError("function vanishes on the contour")
        steps = np.angle(np.roll(v, -1) / v)
        if np.max(np.abs(steps)) < np.pi / 4 or n >= max_samples:
            return int(round(float(np.sum(steps)) / (2 * np.pi)))
        n *= 2
