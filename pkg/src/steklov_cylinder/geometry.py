"""Domain types shared by the root finders, the counting function and the CLI."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class SpectralFamily(str, enum.Enum):
    """The five families of nonzero Steklov eigenvalues of a spherical cylinder.

    ``TANH`` and ``COTH`` are the transversely localised modes
    (``J_nu(alpha r) cosh(alpha z)`` and ``J_nu(alpha r) sinh(alpha z)``),
    ``RADIAL_A`` and ``RADIAL_B`` the radially localised modes
    (``I_nu(alpha r) cos(alpha z)`` and ``I_nu(alpha r) sin(alpha z)``), and
    ``EXCEPTIONAL`` the isolated mode ``r^k Y_k z`` present when ``R/L`` is an
    integer.
    """

    TANH = "tanh"
    COTH = "coth"
    RADIAL_A = "radialA"
    RADIAL_B = "radialB"
    EXCEPTIONAL = "exceptional"


TRANSVERSE = (SpectralFamily.TANH, SpectralFamily.COTH)
RADIAL = (SpectralFamily.RADIAL_A, SpectralFamily.RADIAL_B)


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class CylinderGeometry:
    """Ball of radius ``R`` in R^(n-1) times the interval ``(-L, L)``."""

    n: int = 3
    R: float = 1.0
    L: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise GeometryError(f"dimension n must be an integer >= 3, got {self.n!r}")
        for name in ("R", "L"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise GeometryError(f"{name} must be finite and positive, got {v!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "R", float(self.R))
        object.__setattr__(self, "L", float(self.L))

    @property
    def beta(self) -> float:
        """Order shift: the angular order k enters the Bessel order as k + beta."""
        return (self.n - 3) / 2

    @property
    def aspect(self) -> float:
        """R / L."""
        return self.R / self.L

    def order(self, k: int) -> float:
        return k + self.beta

    def integer_aspect(self, tol: float = 1e-12) -> int | None:
        """R/L when it is a positive integer (to relative tolerance ``tol``), else None."""
        q = self.aspect
        k = round(q)
        if k >= 1 and abs(q - k) <= tol * max(1.0, q):
            return int(k)
        return None


def harmonic_multiplicity(m: int, k: int) -> int:
    """Dimension of the degree-k spherical harmonics on the m-sphere."""
    if int(m) != m or m < 1:
        raise ValueError(f"sphere dimension must be an integer >= 1, got {m!r}")
    if int(k) != k or k < 0:
        raise ValueError(f"harmonic degree must be an integer >= 0, got {k!r}")
    m, k = int(m), int(k)
    if k == 0:
        return 1
    return math.comb(k + m, m) - math.comb(k + m - 2, m)


@dataclass(frozen=True)
class EigenvalueRecord:
    family: SpectralFamily
    k: int
    index: int
    alpha: float
    sigma: float
    multiplicity: int

    def as_row(self) -> dict:
        return {
            "family": self.family.value,
            "k": self.k,
            "index": self.index,
            "alpha": self.alpha,
            "sigma": self.sigma,
            "multiplicity": self.multiplicity,
        }
