"""Bessel, modified Bessel and Airy functions with zeros, phase and modulus.

Values of J, Y, I and Ai/Bi come from :mod:`scipy.special`.  On top of that
this module supplies the pieces scipy does not:

* ratios ``J_{nu+1}/J_nu`` and ``I_{nu+1}/I_nu`` by continued fraction, which
  stay accurate where the functions themselves underflow;
* zeros of ``J_nu``, ``Y_nu`` and ``J'_nu`` for real order;
* the Bessel phase ``theta`` with an explicit integer zero count, so it is
  continuous through zeros of ``J_nu`` without unwrapping an arctangent;
* the phase envelope, the Debye and large-order modified-Bessel expansions.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import optimize, special

# Consecutive zeros of J_nu (and of Y_nu) are more than 3 apart for every
# nu >= 0, so a scan with unit step sees each of them as one sign change.
_SCAN_STEP = 1.0
_CF_MAX_TERMS = 1_000_000


class DomainError(ValueError):
    """Argument outside the domain of the requested function."""


@dataclass(frozen=True)
class PhaseEval:
    theta: float
    modulus_sq: float
    dmodulus_sq_dx: float


@dataclass(frozen=True)
class PhaseEnvelope:
    theta_upper: float
    eps_theta: float


def _check_order(nu: float) -> float:
    nu = float(nu)
    if not math.isfinite(nu) or nu < 0:
        raise DomainError(f"order must be finite and >= 0, got {nu!r}")
    # scipy's Y_nu returns 0 for subnormal orders; at that size nu is 0 anyway
    return 0.0 if nu < sys.float_info.min else nu


def _check_finite(value: float, what: str) -> float:
    if math.isinf(value):
        raise OverflowError(f"{what} exceeds the double-precision range")
    return float(value)


# ---------------------------------------------------------------------------
# values


def bessel_j(nu: float, x: float) -> float:
    """J_nu(x) for nu >= 0, x >= 0."""
    nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"bessel_j needs x >= 0, got {x!r}")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    return _check_finite(special.jv(nu, x), "J_nu(x)")


def bessel_y(nu: float, x: float) -> float:
    """Y_nu(x) for nu >= 0, x > 0."""
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_y needs x > 0, got {x!r}")
    return _check_finite(special.yv(nu, x), "Y_nu(x)")


def bessel_i(nu: float, x: float) -> float:
    """I_nu(x); raises OverflowError where only the scaled value is representable."""
    nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"bessel_i needs x >= 0, got {x!r}")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    return _check_finite(special.iv(nu, x), "I_nu(x)")


def bessel_i_scaled(nu: float, x: float) -> float:
    """exp(-x) I_nu(x)."""
    nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"bessel_i_scaled needs x >= 0, got {x!r}")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    return float(special.ive(nu, x))


def j_ratio(nu: float, x: float) -> float:
    """J_{nu+1}(x) / J_nu(x) by the modified Lentz continued fraction.

    Converges for every x > 0 (slowly once x >> nu) and does not suffer from
    underflow of J_nu below the turning point.  At a zero of J_nu the ratio
    is infinite; the value returned there is merely very large.
    """
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"j_ratio needs x > 0, got {x!r}")
    return _lentz(nu, x, -1.0)


def i_ratio(nu: float, x: float) -> float:
    """I_{nu+1}(x) / I_nu(x), in [0, 1)."""
    nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"i_ratio needs x >= 0, got {x!r}")
    if x == 0:
        return 0.0
    den = special.ive(nu, x)
    if den > 1e-280:
        return float(special.ive(nu + 1, x) / den)
    return _lentz(nu, x, 1.0)


def _lentz(nu: float, x: float, sign: float) -> float:
    # 1 / (b1 + sign / (b2 + sign / (b3 + ...))) with b_i = 2(nu + i)/x
    tiny = 1e-300
    f = tiny
    c = f
    d = 0.0
    for i in range(1, _CF_MAX_TERMS):
        a = 1.0 if i == 1 else sign
        b = 2.0 * (nu + i) / x
        d = b + a * d
        if d == 0.0:
            d = tiny
        c = b + a / c
        if c == 0.0:
            c = tiny
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            return f
    raise ArithmeticError(f"continued fraction did not converge at nu={nu}, x={x}")


def bessel_jp(nu: float, x: float) -> float:
    """J'_nu(x).

    Below the turning point the derivative is formed as
    ``J_nu (nu/x - J_{nu+1}/J_nu)``; scipy's ``jvp`` loses several digits
    there for large order.
    """
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_jp needs x > 0, got {x!r}")
    if x < nu:
        j = special.jv(nu, x)
        return float(j * (nu / x - _lentz(nu, x, -1.0)))
    return float(special.jvp(nu, x))


def bessel_yp(nu: float, x: float) -> float:
    """Y'_nu(x)."""
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"bessel_yp needs x > 0, got {x!r}")
    if x < nu:
        return _check_finite(special.yv(nu - 1, x) - nu / x * special.yv(nu, x), "Y'_nu(x)")
    return _check_finite(special.yvp(nu, x), "Y'_nu(x)")


def mod_ratio(nu: float, x: float) -> float:
    """x I'_nu(x) / I_nu(x), written as nu + x I_{nu+1}/I_nu to avoid cancellation."""
    nu = _check_order(nu)
    if x < 0:
        raise DomainError(f"mod_ratio needs x >= 0, got {x!r}")
    return nu + x * i_ratio(nu, x)


# ---------------------------------------------------------------------------
# zeros


def _scan_grid(a: float, b: float) -> np.ndarray:
    m = max(2, int(math.ceil((b - a) / _SCAN_STEP)) + 1)
    return np.linspace(a, b, m)


def _sign_change_cells(values: np.ndarray) -> np.ndarray:
    s = np.sign(values)
    return np.nonzero(s[:-1] * s[1:] < 0)[0]


def _refine(f, a: float, b: float) -> float:
    return optimize.brentq(f, a, b, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


def count_j_zeros_below(nu: float, x: float) -> int:
    """#{k : j_{nu,k} < x}."""
    nu = _check_order(nu)
    if x <= nu:
        return 0
    grid = _scan_grid(nu, x)
    vals = special.jv(nu, grid)
    exact = int(np.count_nonzero(vals[1:-1] == 0.0))
    return int(_sign_change_cells(vals).size) + exact


def zeros_below(nu: float, x: float) -> np.ndarray:
    """All zeros j_{nu,k} < x, increasing."""
    nu = _check_order(nu)
    if x <= nu:
        return np.empty(0)
    grid = _scan_grid(nu, x)
    vals = special.jv(nu, grid)
    out = [grid[i] for i in range(1, grid.size - 1) if vals[i] == 0.0]
    for i in _sign_change_cells(vals):
        out.append(_refine(lambda t: special.jv(nu, t), grid[i], grid[i + 1]))
    return np.array(sorted(out))


@lru_cache(maxsize=4096)
def first_j_zeros(nu: float, k: int) -> tuple:
    """(j_{nu,1}, ..., j_{nu,k})."""
    hi = nu + 2.0 * max(nu, 1.0) ** (1 / 3) + math.pi * (k + 1) + 4.0
    while True:
        z = zeros_below(nu, hi)
        if z.size >= k:
            return tuple(float(v) for v in z[:k])
        hi += math.pi * (k - z.size + 2)


def bessel_j_zero(nu: float, k: int) -> float:
    """k-th positive zero j_{nu,k} of J_nu."""
    nu = _check_order(nu)
    k = _check_index(k)
    return first_j_zeros(nu, k)[-1]


def bessel_y_zero(nu: float, k: int) -> float:
    """k-th positive zero y_{nu,k} of Y_nu; lies in (j_{nu,k-1}, j_{nu,k})."""
    nu = _check_order(nu)
    k = _check_index(k)
    zs = first_j_zeros(nu, k)
    lo = zs[k - 2] if k >= 2 else max(nu, 1e-300)
    if k == 1 and nu == 0:
        lo = 1e-8
    return _refine(lambda t: special.yv(nu, t), lo, zs[k - 1])


def bessel_jp_zero(nu: float, k: int) -> float:
    """k-th zero j'_{nu,k} of J'_nu.

    For nu = 0 the zero at the origin counts as the first one.
    """
    nu = _check_order(nu)
    k = _check_index(k)
    if nu == 0 and k == 1:
        return 0.0
    zs = first_j_zeros(nu, k)
    if nu == 0:
        lo, hi = zs[k - 2], zs[k - 1]
        return _refine(lambda t: special.jvp(0.0, t), lo, hi)
    lo = zs[k - 2] if k >= 2 else nu
    return _refine(lambda t: bessel_jp(nu, t), lo, zs[k - 1])


def _check_index(k) -> int:
    if int(k) != k or k < 1:
        raise DomainError(f"zero index must be a positive integer, got {k!r}")
    return int(k)


def qu_bracket(nu: float, k: int) -> tuple[float, float]:
    """Interval that contains j_{nu,k} for nu > 0, from the Airy zero a_k."""
    nu = _check_order(nu)
    if nu == 0:
        raise DomainError("the bracket is stated for nu > 0")
    a = airy_zero(k)
    lo = nu - a * (nu / 2) ** (1 / 3)
    return lo, lo + 0.15 * a * a * (nu / 2) ** (-1 / 3)


# ---------------------------------------------------------------------------
# phase and modulus


def _fold_half_open_top(a: float) -> float:
    # map an atan2 value into (-pi/2, pi/2]
    if a > math.pi / 2:
        return a - math.pi
    if a <= -math.pi / 2:
        return a + math.pi
    return a


def _fold_half_open_bottom(a: float) -> float:
    # map an atan2 value into [-pi/2, pi/2)
    if a >= math.pi / 2:
        return a - math.pi
    if a < -math.pi / 2:
        return a + math.pi
    return a


def phase(nu: float, x: float) -> PhaseEval:
    """Bessel phase theta, modulus squared m^2 = (pi x/2)(J^2 + Y^2) and its x-derivative.

    theta = (#zeros of J_nu below x) pi + arctan(Y/J), with the arctangent
    branch fixed so that theta is continuous and increasing; theta(nu, 0+) = -pi/2.
    """
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"phase needs x > 0, got {x!r}")
    j = float(special.jv(nu, x))
    y = float(special.yv(nu, x))
    if x <= nu:
        # no zero of J below x; J > 0 and Y < 0 here
        theta = -math.pi / 2 - math.atan(j / y) if y != 0 else math.pi / 2
    else:
        theta = count_j_zeros_below(nu, x) * math.pi + _fold_half_open_top(math.atan2(y, j))
    jp = bessel_jp(nu, x)
    yp = float(special.yvp(nu, x)) if x >= nu else bessel_yp(nu, x)
    m2 = 0.5 * math.pi * x * (j * j + y * y)
    dm2 = 0.5 * math.pi * (j * j + y * y) + math.pi * x * (j * jp + y * yp)
    return PhaseEval(theta, m2, dm2)


def phase_envelope(nu: float, x: float) -> PhaseEnvelope:
    """Upper approximation theta~ to the phase and the width eps of the envelope below it."""
    nu = _check_order(nu)
    if not x > nu:
        raise DomainError(f"phase envelope needs x > nu, got nu={nu!r}, x={x!r}")
    d = math.sqrt((x - nu) * (x + nu))
    upper = d - nu * math.acos(nu / x) - math.pi / 4
    eps = (3 * x * x + 2 * nu * nu) / (24 * d**3)
    return PhaseEnvelope(upper, eps)


def cond_ratio_phase(nu: float, x: float) -> float:
    """phi = arctan(x J'_nu/J_nu) - (#zeros of J_nu below x) pi.

    Continuous and strictly decreasing in x, starting from arctan(nu) at 0+.
    """
    nu = _check_order(nu)
    if not x > 0:
        raise DomainError(f"cond_ratio_phase needs x > 0, got {x!r}")
    if x <= nu:
        return math.atan(nu - x * _lentz(nu, x, -1.0))
    j = float(special.jv(nu, x))
    jp = float(special.jvp(nu, x))
    return _fold_half_open_bottom(math.atan2(x * jp, j)) - count_j_zeros_below(nu, x) * math.pi


# ---------------------------------------------------------------------------
# Airy


def airy_ai(x: float) -> float:
    return float(special.airy(x)[0])


def airy_bi(x: float) -> float:
    return float(special.airy(x)[2])


def airy_zero(k: int) -> float:
    """k-th zero a_k < 0 of Ai."""
    k = _check_index(k)
    return float(special.ai_zeros(k)[0][-1])


def airy_modulus_sq(x: float) -> float:
    """M_A(x)^2 = Ai(x)^2 + Bi(x)^2."""
    ai, _, bi, _ = special.airy(x)
    return float(ai * ai + bi * bi)


def airy_modulus_sq_deriv(x: float) -> float:
    ai, aip, bi, bip = special.airy(x)
    return float(2 * (ai * aip + bi * bip))


# ---------------------------------------------------------------------------
# asymptotic expansions


def debye_j(nu: float, z: float) -> float:
    """Two-term Debye approximation to J_nu(nu z) for 0 < z < 1."""
    nu = _check_order(nu)
    if not 0 < z < 1 or nu == 0:
        raise DomainError("debye_j needs nu > 0 and 0 < z < 1")
    w = math.sqrt(1 - z * z)
    expo = nu * (w - math.acosh(1 / z))
    lead = math.exp(expo) / (math.sqrt(2 * math.pi * nu) * math.sqrt(w))
    return lead * (1 + (3 / w - 5 / w**3) / (24 * nu))


def debye_jp(nu: float, z: float) -> float:
    """Two-term Debye approximation to J'_nu(nu z) for 0 < z < 1."""
    nu = _check_order(nu)
    if not 0 < z < 1 or nu == 0:
        raise DomainError("debye_jp needs nu > 0 and 0 < z < 1")
    w = math.sqrt(1 - z * z)
    expo = nu * (w - math.acosh(1 / z))
    lead = math.exp(expo) * math.sqrt(w) / (math.sqrt(2 * math.pi * nu) * z)
    return lead * (1 + (-9 / w + 7 / w**3) / (24 * nu))


def bessel_i_large_order(nu: float, x: float, scaled: bool = False) -> float:
    """Uniform large-order approximation to I_nu(x) with the first correction term.

    I_nu(nu z) ~ exp(nu eta) / (sqrt(2 pi nu) (1+z^2)^(1/4)) (1 + u1(p)/nu),
    eta = sqrt(1+z^2) + log(z / (1 + sqrt(1+z^2))), p = (1+z^2)^(-1/2),
    u1(p) = (3p - 5p^3)/24.  With ``scaled`` the factor exp(-x) is applied
    inside the exponent.
    """
    nu = _check_order(nu)
    if nu == 0 or not x > 0:
        raise DomainError("bessel_i_large_order needs nu > 0 and x > 0")
    z = x / nu
    q = math.sqrt(1 + z * z)
    p = 1 / q
    eta = q + math.log(z / (1 + q))
    expo = nu * eta - (x if scaled else 0.0)
    u1 = (3 * p - 5 * p**3) / 24
    val = math.exp(expo) / (math.sqrt(2 * math.pi * nu) * math.sqrt(q)) * (1 + u1 / nu)
    return _check_finite(val, "I_nu(x)")
