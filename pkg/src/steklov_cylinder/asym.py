"""Elementary approximations to the root-count phases and sawtooth-sum tooling.

eta1(nu, s) approximates theta + psi + pi/4 for the transverse families at
x = s, and eta2(nu, s) approximates the radial quantization phase
(L/R) xv + arctan(sigma R / xv) at s = sigma R + beta.  Both come with
analytic first and second nu-derivatives.

rho1(x) = floor(x) - x + 1/2 is the sawtooth for which
sum floor(g(j)) = sum g(j) - (count)/2 + sum rho1(g(j)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from scipy import integrate

from .counting import count_phase_argument
from .geometry import CylinderGeometry
from .roots import solve_xv
from .specfun import DomainError


def _check(nu: float, s: float) -> float:
    if not (0 <= nu < s):
        raise DomainError(f"need 0 <= nu < s, got nu={nu!r}, s={s!r}")
    return math.sqrt((s - nu) * (s + nu))


def eta1(nu: float, s: float) -> float:
    """sqrt(s^2 - nu^2) - nu arccos(nu/s) + arctan(s / sqrt(s^2 - nu^2))."""
    d = _check(nu, s)
    return d - nu * math.acos(nu / s) + math.atan2(s, d)


def eta1_dnu(nu: float, s: float) -> float:
    d = _check(nu, s)
    return -math.acos(nu / s) + s * nu / (d * (2 * s * s - nu * nu))


def eta1_dnu2(nu: float, s: float) -> float:
    d = _check(nu, s)
    q = 2 * s * s - nu * nu
    return 1 / d + s * (2 * s**4 + nu * nu * s * s - 2 * nu**4) / (d**3 * q * q)


def eta1_dnu2_scaled(z: float, sigma: float) -> float:
    """Second nu-derivative of eta1 at (z sigma, sigma), in its reduced closed form."""
    w = 1 - z * z
    return 1 / (math.sqrt(w) * sigma) + (-2 * z**4 + z * z + 2) / ((2 - z * z) ** 2 * w**1.5 * sigma**2)


def eta2(nu: float, s: float, geom: CylinderGeometry, c0: float = 0.0) -> float:
    """(L/R)(1 + 1/(2s)) sqrt(s^2 - nu^2) + arctan(s / sqrt(s^2 - nu^2)) + c0."""
    d = _check(nu, s)
    return geom.L / geom.R * (1 + 0.5 / s) * d + math.atan2(s, d) + c0


def eta2_dnu(nu: float, s: float, geom: CylinderGeometry) -> float:
    d = _check(nu, s)
    c = geom.L / geom.R * (1 + 0.5 / s)
    return -c * nu / d + s * nu / (d * (2 * s * s - nu * nu))


def eta2_dnu2(nu: float, s: float, geom: CylinderGeometry) -> float:
    d = _check(nu, s)
    c = geom.L / geom.R * (1 + 0.5 / s)
    q = 2 * s * s - nu * nu
    return -c * s * s / d**3 + s * (2 * s**4 + nu * nu * s * s - 2 * nu**4) / (d**3 * q * q)


def eta2_dnu_scaled(z: float, sigma: float, geom: CylinderGeometry) -> float:
    """First nu-derivative of eta2 at (z sigma, sigma), in its reduced closed form."""
    a = geom.L / geom.R
    return -z / math.sqrt(1 - z * z) * (a - (1 / (2 - z * z) - a / 2) / sigma)


def eta2_dnu2_scaled(z: float, sigma: float, geom: CylinderGeometry) -> float:
    """Second nu-derivative of eta2 at (z sigma, sigma), in its reduced closed form."""
    a = geom.L / geom.R
    r = (-2 * z**4 + z * z + 2) / (2 - z * z) ** 2
    return -(1 - z * z) ** -1.5 / sigma * (a - (r - a / 2) / sigma)


def radial_target(nu: float, sigma: float, geom: CylinderGeometry) -> float:
    """(L/R) xv + arctan(sigma R / xv) with xv solving x I'_nu/I_nu = sigma R + beta."""
    xv = solve_xv(nu, sigma * geom.R + geom.beta)
    return geom.L / geom.R * xv + math.atan(sigma * geom.R / xv)


def eta1_error(nu: float, sigma: float, geom: CylinderGeometry) -> float:
    """eta1(nu, sigma R) - pi/4 - (theta + psi)(nu, sigma R) with right-hand side sigma R + beta."""
    x = sigma * geom.R
    return eta1(nu, x) - math.pi / 4 - count_phase_argument(nu, x, x + geom.beta)


def eta2_error(nu: float, sigma: float, geom: CylinderGeometry, c0: float = 0.0) -> float:
    """eta2(nu, sigma R + beta) minus the radial quantization phase at the cutoff."""
    return eta2(nu, sigma * geom.R + geom.beta, geom, c0) - radial_target(nu, sigma, geom)


# ---------------------------------------------------------------------------
# sawtooth functions and Euler-Maclaurin


def rho1(x: float, left_limit: bool = False) -> float:
    """floor(x) - x + 1/2; with ``left_limit`` the one-sided value rho1(x-)."""
    if left_limit:
        x = x - 1e-12
    return math.floor(x) - x + 0.5


def rho2(x: float) -> float:
    """(rho1(x)^2 - 1/12) / 2."""
    r = rho1(x)
    return 0.5 * (r * r - 1 / 12)


@dataclass(frozen=True)
class FloorSumResult:
    """Exact floor sum against its Euler-Maclaurin reconstruction.

    ``em_approx`` is the integral plus endpoint and count corrections plus the
    sawtooth sum; ``smooth`` leaves the sawtooth sum out.  ``residual`` is
    exact - em_approx, the Euler-Maclaurin remainder.
    """

    exact: float
    em_approx: float
    residual: float
    sawtooth_sum: float

    @property
    def smooth(self) -> float:
        return self.em_approx - self.sawtooth_sum


def em_floor_sum(g: Callable[[float], float], a: int, b: int, weight: str = "unit") -> FloorSumResult:
    """sum_{a<=j<=b} w_j floor(g(j)) and its Euler-Maclaurin approximation.

    ``weight="unit"`` uses w_j = 1; ``weight="omega1"`` uses w_j = omega_{1, j-a},
    i.e. 1 at j = a and 2 after.
    """
    if weight not in ("unit", "omega1"):
        raise ValueError(f"weight must be 'unit' or 'omega1', got {weight!r}")
    if int(a) != a or int(b) != b or b < a:
        raise ValueError(f"need integers a <= b, got {a!r}, {b!r}")
    a, b = int(a), int(b)
    vals = [g(j) for j in range(a, b + 1)]
    w = [1] * len(vals) if weight == "unit" else [1] + [2] * (len(vals) - 1)
    exact = sum(wi * math.floor(v) for wi, v in zip(w, vals))
    saw = math.fsum(wi * rho1(v) for wi, v in zip(w, vals))
    integral = integrate.quad(g, a, b, limit=500, epsabs=1e-11, epsrel=1e-12)[0] if b > a else 0.0
    trapezoid = integral + 0.5 * (vals[0] + vals[-1])
    weighted_sum = trapezoid if weight == "unit" else 2 * trapezoid - vals[0]
    em = weighted_sum - 0.5 * sum(w) + saw
    return FloorSumResult(float(exact), em, exact - em, saw)


def weighted_floor_identity(
    kind: str, geom: CylinderGeometry, sigma: float, k: int = 0, c: float = 0.0
) -> tuple[int, float]:
    """Both sides of sum_{k<=j<sigma} omega_{1,j-k} floor(eta(j)/pi + c) ~ 2 int_k^sigma eta/pi - (1-2c)(sigma-k).

    Returns (exact weighted floor sum, smooth right-hand side).  ``kind`` is
    ``eta1`` (second argument sigma) or ``eta2`` (second argument sigma, the
    geometry supplying L/R).
    """
    f = _eta_of(kind, geom, sigma)
    top = math.ceil(sigma) - 1
    exact = sum((1 if j == k else 2) * math.floor(f(j) / math.pi + c) for j in range(k, top + 1))
    integral = integrate.quad(lambda v: f(v) / math.pi, k, sigma, limit=500)[0]
    return exact, 2 * integral - (1 - 2 * c) * (sigma - k)


def _eta_of(kind: str, geom: CylinderGeometry | None, sigma: float) -> Callable[[float], float]:
    if kind == "eta1":
        return lambda v: eta1(v, sigma)
    if kind == "eta2":
        if geom is None:
            raise ValueError("eta2 needs a geometry")
        return lambda v: eta2(v, sigma, geom)
    raise ValueError(f"kind must be 'eta1' or 'eta2', got {kind!r}")


def vdc_empirical(kind: str, geom: CylinderGeometry | None, sigma: float, a: int, b: int) -> float:
    """|sum_{a<j<=b} rho1(eta(j, sigma)/pi)|, the sawtooth sum controlled by Van der Corput."""
    if b <= a:
        return 0.0
    f = _eta_of(kind, geom, sigma)
    return abs(math.fsum(rho1(f(j) / math.pi) for j in range(a + 1, b + 1)))


def vdc_bound(sigma: float) -> float:
    """(11 pi/2) sigma^(2/3) + 11 sigma^(1/2)."""
    return 5.5 * math.pi * sigma ** (2 / 3) + 11 * math.sqrt(sigma)


def sawtooth_integral(f: Callable[[float], float], a: float, b: float) -> float:
    """int_a^b rho1(x) f(x) dx, integrated cell by cell between integers."""
    pts = [a] + [float(m) for m in range(math.floor(a) + 1, math.ceil(b))] + [b]
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        fl = math.floor(lo)
        total += integrate.quad(lambda x: (fl - x + 0.5) * f(x), lo, hi, epsabs=1e-13, epsrel=1e-12)[0]
    return total
