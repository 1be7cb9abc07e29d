"""Closed-form constants of the two-term Weyl law for spherical cylinders.

Beta functions, the edge integral I(z; p, 1) and the edge constant G', unit
ball volumes, the boundary measures of the cylinder, and the Weyl
coefficients in two algebraically equivalent forms.

The second Weyl coefficient carries an edge term of size
4 I(1; (n-2)/2, 1) / (pi (n-3)!).  ``edge_sign=+1`` reproduces the closed form
as printed; ``edge_sign=-1`` gives the variant that matches the exact
eigenvalue count (see ``weyl-fit`` in the CLI).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .geometry import CylinderGeometry
from .specfun import DomainError

_QUAD_OPTS = dict(epsabs=0.0, epsrel=1e-13, limit=200)


def beta_fn(x: float, y: float) -> float:
    """Euler Beta function through log-Gamma."""
    if not (x > 0 and y > 0):
        raise DomainError(f"Beta needs positive arguments, got {x!r}, {y!r}")
    return math.exp(special.betaln(x, y))


def incomplete_beta(z: float, x: float, y: float) -> float:
    """Non-regularised incomplete Beta B_z(x, y) = int_0^z t^(x-1) (1-t)^(y-1) dt."""
    if not 0 <= z <= 1:
        raise DomainError(f"incomplete Beta needs z in [0, 1], got {z!r}")
    if z == 1:
        return beta_fn(x, y)
    return float(special.betainc(x, y, z)) * beta_fn(x, y)


def complementary_incomplete_beta(z: float, x: float, y: float) -> float:
    """B(x, y) - B_z(x, y) without cancellation."""
    if not 0 <= z <= 1:
        raise DomainError(f"incomplete Beta needs z in [0, 1], got {z!r}")
    return float(special.betaincc(x, y, z)) * beta_fn(x, y)


def moment_integral(nb: int, beta_low: float, s: float) -> float:
    """int_{beta_low}^{s} x^nb sqrt(s^2 - x^2) dx via incomplete Beta functions.

    Substituting t = x^2/s^2 gives
    (s^(nb+2)/2) (B((nb+1)/2, 3/2) - B_{beta_low^2/s^2}((nb+1)/2, 3/2)).
    """
    if int(nb) != nb or nb < 0:
        raise DomainError(f"moment order must be an integer >= 0, got {nb!r}")
    if not (0 <= beta_low < s):
        raise DomainError(f"need 0 <= beta_low < s, got {beta_low!r}, {s!r}")
    z = (beta_low / s) ** 2
    return 0.5 * s ** (nb + 2) * complementary_incomplete_beta(z, (nb + 1) / 2, 1.5)


def edge_integral(z: float, p: float) -> float:
    """I(z; p, 1) = (1/2) B(1/2, p) int_0^1 (1 + z^2 x)^(-1/2) (1 - x)^(p - 1/2) dx."""
    if not (z >= 0 and p > 0):
        raise DomainError(f"edge integral needs z >= 0 and p > 0, got {z!r}, {p!r}")
    # weight (1-x)^(p-1/2) handled by QUADPACK's algebraic-endpoint rule
    val, _ = integrate.quad(
        lambda x: (1 + z * z * x) ** -0.5, 0.0, 1.0, weight="alg", wvar=(0.0, p - 0.5), **_QUAD_OPTS
    )
    return 0.5 * beta_fn(0.5, p) * val


def edge_integral_step(z: float, p: float, value_at_p: float) -> float:
    """I(z; p+1, 1) from I(z; p, 1) by the three-term recurrence.

    z^2 I(p+1) = p((1 + z^2) I(p) - z^2 I(p+1) - B(p, 3/2)), solved for I(p+1).
    """
    if not (z > 0 and p > 0):
        raise DomainError("the recurrence needs z > 0 and p > 0")
    return p * ((1 + z * z) * value_at_p - beta_fn(p, 1.5)) / (z * z * (1 + p))


def g_prime(n: int) -> float:
    """Edge constant G'_{n,1} = int_0^1 (1+x)^(-1/2) (1-x)^(n/2-1) dx / B(1/2, n/2)."""
    if int(n) != n or n < 2:
        raise DomainError(f"G' needs an integer n >= 2, got {n!r}")
    return _g_integral(n) / beta_fn(0.5, n / 2)


def _g_integral(n: int) -> float:
    val, _ = integrate.quad(
        lambda x: (1 + x) ** -0.5, 0.0, 1.0, weight="alg", wvar=(0.0, n / 2 - 1), **_QUAD_OPTS
    )
    return val


@dataclass(frozen=True)
class MonteCarloComparison:
    lhs: float
    rhs: float
    stderr: float

    @property
    def z_score(self) -> float:
        return abs(self.lhs - self.rhs) / self.stderr if self.stderr > 0 else math.inf


def g_cuboid_equiv(n: int, mc_samples: int, seed: int = 0) -> MonteCarloComparison:
    """Monte Carlo check of the angular form of the cuboid edge constant.

    lhs estimates int over [0, pi/2]^(n-1) of arctan(prod sin t_i) prod sin^i(t_i);
    rhs is Gamma(1/2)^n / (2^n Gamma(n/2)) int_0^1 (1+x)^(-1/2) (1-x)^(n/2-1) dx.
    """
    if int(n) != n or n < 2:
        raise DomainError(f"need an integer n >= 2, got {n!r}")
    if mc_samples < 10_000:
        raise DomainError(f"need at least 10^4 samples, got {mc_samples!r}")
    rng = np.random.default_rng(seed)
    d = n - 1
    theta = rng.uniform(0.0, math.pi / 2, size=(mc_samples, d))
    s = np.sin(theta)
    powers = np.arange(1, d + 1)
    f = np.arctan(np.prod(s, axis=1)) * np.prod(s**powers, axis=1)
    vol = (math.pi / 2) ** d
    lhs = vol * float(f.mean())
    stderr = vol * float(f.std(ddof=1)) / math.sqrt(mc_samples)
    rhs = math.exp(n * math.lgamma(0.5) - n * math.log(2) - math.lgamma(n / 2)) * _g_integral(n)
    return MonteCarloComparison(lhs, rhs, stderr)


def ball_volume(p: int) -> float:
    """Volume of the unit ball in R^p."""
    if int(p) != p or p < 0:
        raise DomainError(f"dimension must be an integer >= 0, got {p!r}")
    return math.exp(0.5 * p * math.log(math.pi) - math.lgamma(p / 2 + 1))


@dataclass(frozen=True)
class BoundaryGeometry:
    area: float
    edge_measure: float
    curvature_integral: float


def geometry(geom: CylinderGeometry) -> BoundaryGeometry:
    """Boundary area, edge measure and integrated mean curvature of the cylinder."""
    n, R, L = geom.n, geom.R, geom.L
    b = ball_volume(n - 1)
    side = 2 * L * (n - 1) * b * R ** (n - 2)
    return BoundaryGeometry(
        area=2 * b * R ** (n - 1) + side,
        edge_measure=2 * (n - 1) * b * R ** (n - 2),
        curvature_integral=(n - 2) / ((n - 1) * R) * side,
    )


@dataclass(frozen=True)
class WeylCoefficients:
    """N(sigma) ~ lead (sigma R)^(n-1) + sub (sigma R)^(n-2), error O(sigma^error_exponent)."""

    lead: float
    sub: float
    error_exponent: float

    def predict(self, geom: CylinderGeometry, sigma: float) -> float:
        t = sigma * geom.R
        return self.lead * t ** (geom.n - 1) + self.sub * t ** (geom.n - 2)


def _check_sign(edge_sign: int) -> int:
    if edge_sign not in (1, -1):
        raise ValueError(f"edge_sign must be +1 or -1, got {edge_sign!r}")
    return edge_sign


def weyl_two_term(geom: CylinderGeometry, edge_sign: int = 1) -> WeylCoefficients:
    """Weyl coefficients from the closed form in Beta functions and I(1; (n-2)/2, 1)."""
    edge_sign = _check_sign(edge_sign)
    n, a = geom.n, geom.L / geom.R
    B = beta_fn(n / 2, 0.5)
    f = math.factorial
    lead = 2 * B / (math.pi * f(n - 1)) + 2 * B * a / (math.pi * f(n - 2))
    sub = (
        (n - 2) * B * a / (math.pi * f(n - 3))
        + 2 * (2 ** (n / 2) - 1) / f(n - 2)
        + edge_sign * 4 * edge_integral(1.0, (n - 2) / 2) / (math.pi * f(n - 3))
    )
    return WeylCoefficients(lead, sub, n - 2.25)


def weyl_geometric_form(geom: CylinderGeometry, edge_sign: int = 1) -> WeylCoefficients:
    """The same coefficients assembled from boundary area, curvature and edge measure."""
    edge_sign = _check_sign(edge_sign)
    n, R = geom.n, geom.R
    g = geometry(geom)
    c1 = ball_volume(n - 1) / (2 * math.pi) ** (n - 1)
    c2 = ball_volume(n - 2) / (2 * math.pi) ** (n - 2)
    lead = c1 * g.area / R ** (n - 1)
    sub = (
        c1 * (n - 2) * (n - 1) / 2 * g.curvature_integral
        + c2 * g.edge_measure * ((2 ** (n / 2) - 1) / 2 + edge_sign * g_prime(n - 1))
    ) / R ** (n - 2)
    return WeylCoefficients(lead, sub, n - 2.25)


def weyl_prediction(geom: CylinderGeometry, sigma: float, edge_sign: int = 1) -> float:
    return weyl_two_term(geom, edge_sign).predict(geom, sigma)
