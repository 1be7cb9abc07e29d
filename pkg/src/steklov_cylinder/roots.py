"""Auxiliary inverse functions and per-(family, k) enumeration of eigenvalues.

For angular order k the Bessel order is nu = k + beta.  Writing x = alpha R,
the four separable families are

* tanh / coth: x J'_nu(x)/J_nu(x) - beta = x tanh(x L/R)  (resp. coth),
  eigenvalue sigma = alpha tanh(alpha L)  (resp. coth);
* radialA / radialB: sigma R + beta = x I'_nu(x)/I_nu(x) together with
  alpha L + arctan(sigma/alpha) = m pi  (radialA, the cos(alpha z) modes)
  or pi/2 + m pi  (radialB, the sin(alpha z) modes).

Every enumeration returns only eigenvalues strictly below ``sigma_max``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import optimize, special

from . import specfun
from .geometry import (
    CylinderGeometry,
    EigenvalueRecord,
    SpectralFamily,
    harmonic_multiplicity,
)
from .specfun import DomainError

_XTOL = 1e-15
_RTOL = 4 * np.finfo(float).eps
_PROBE = 1e-4


def _brentq(f, a, b):
    return optimize.brentq(f, a, b, xtol=_XTOL, rtol=_RTOL, maxiter=300)


def solve_xt(y: float) -> float:
    """The x >= 0 with x tanh(x) = y."""
    if not (y >= 0 and math.isfinite(y)):
        raise DomainError(f"solve_xt needs finite y >= 0, got {y!r}")
    if y == 0:
        return 0.0
    # y <= x tanh(x) + 0.28 so the root sits in [y, y + 1]
    return _brentq(lambda x: x * math.tanh(x) - y, min(y, math.sqrt(y)), y + 1.0)


def solve_xc(y: float) -> float:
    """The x > 0 with x coth(x) = y, defined for y > 1."""
    if not (y > 1 and math.isfinite(y)):
        raise DomainError(f"solve_xc needs finite y > 1, got {y!r}")

    def f(x):
        return x / math.tanh(x) - y

    lo = max(y - 1.0, 1e-300)
    if f(lo) > 0:
        lo = 1e-300
    return _brentq(f, lo, y)


def solve_xv(nu: float, s: float) -> float:
    """The x > 0 with x I'_nu(x)/I_nu(x) = s, defined for s > nu."""
    nu = float(nu)
    if nu < 0:
        raise DomainError(f"order must be >= 0, got {nu!r}")
    if not (s > nu and math.isfinite(s)):
        raise DomainError(f"solve_xv needs s > nu, got nu={nu!r}, s={s!r}")

    def f(x):
        return specfun.mod_ratio(nu, x) - s

    lo = math.sqrt((s - nu) * (s + nu))
    if f(lo) >= 0:
        # only reachable through rounding at the bound itself
        lo = 0.0
    lo = max(lo, 1e-300)
    hi = max(2 * lo, s + 1.0)
    while f(hi) <= 0:
        hi *= 2
    return _brentq(f, lo, hi)


# ---------------------------------------------------------------------------
# transverse families


def _transverse_sigma(alpha: float, geom: CylinderGeometry, family: SpectralFamily) -> float:
    t = math.tanh(alpha * geom.L)
    return alpha * t if family is SpectralFamily.TANH else alpha / t


def transverse_cutoff(geom: CylinderGeometry, family: SpectralFamily, sigma: float) -> float | None:
    """x = alpha R at which the family's eigenvalue map reaches ``sigma``; None if never."""
    family = SpectralFamily(family)
    y = sigma * geom.L
    if family is SpectralFamily.TANH:
        return geom.aspect * solve_xt(y)
    if family is SpectralFamily.COTH:
        return geom.aspect * solve_xc(y) if y > 1 else None
    raise ValueError(f"not a transverse family: {family}")


def _rhs(geom: CylinderGeometry, family: SpectralFamily):
    c = geom.L / geom.R
    b = geom.beta
    if family is SpectralFamily.TANH:
        return lambda x: b + x * math.tanh(c * x)
    return lambda x: b + x / math.tanh(c * x)


def transverse_gap_at_origin(k: int, geom: CylinderGeometry, family: SpectralFamily) -> float:
    """Limit as x -> 0+ of x J'_nu/J_nu - (right-hand side): k for tanh, k - R/L for coth."""
    if family is SpectralFamily.TANH:
        return float(k)
    gap = k - geom.aspect
    return 0.0 if abs(gap) <= 1e-12 * max(1.0, geom.aspect) else gap


def first_root_gap(k: int, geom: CylinderGeometry, family: SpectralFamily, x: float) -> float:
    """x J'_nu(x)/J_nu(x) - rhs(x) on (0, j_{nu,1}), computed without J itself."""
    nu = geom.order(k)
    return nu - x * specfun.j_ratio(nu, x) - _rhs(geom, family)(x)


def has_pre_turning_root(k: int, geom: CylinderGeometry, family: SpectralFamily) -> bool:
    """Whether the matching equation has a root in (0, j_{nu,1}).

    The gap x J'/J - rhs decreases from its value at 0+ to -inf at j_{nu,1},
    so there is a root exactly when that initial value is positive.  A zero
    initial value (tanh with k = 0, coth with k = R/L) is settled by the sign
    just to the right of the origin.
    """
    gap0 = transverse_gap_at_origin(k, geom, family)
    if gap0 != 0:
        return gap0 > 0
    return first_root_gap(k, geom, family, _PROBE) > 0


def _pre_turning_root(k: int, geom: CylinderGeometry, family: SpectralFamily, j1: float) -> float:
    def g(x):
        return first_root_gap(k, geom, family, x)

    lo = _PROBE if transverse_gap_at_origin(k, geom, family) == 0 else 1e-300
    lo = min(lo, 0.5 * j1)
    hi = j1
    # approach j_{nu,1} until the gap is negative
    step = 1e-12 * j1
    while True:
        hi = j1 - step
        if g(hi) < 0:
            break
        step *= 10
    return _brentq(g, lo, hi)


def enumerate_transverse(
    k: int, geom: CylinderGeometry, family, sigma_max: float
) -> list[EigenvalueRecord]:
    """All tanh- or coth-family eigenvalues of angular order k below ``sigma_max``."""
    family = SpectralFamily(family)
    if family not in (SpectralFamily.TANH, SpectralFamily.COTH):
        raise ValueError(f"not a transverse family: {family}")
    if not sigma_max > 0:
        raise DomainError("sigma_max must be positive")
    X = transverse_cutoff(geom, family, sigma_max)
    if X is None or X <= 0:
        return []
    nu = geom.order(k)
    rhs = _rhs(geom, family)
    count_below = specfun.count_j_zeros_below(nu, X)
    zeros = specfun.first_j_zeros(nu, count_below + 1)

    xs = []
    if has_pre_turning_root(k, geom, family) and (zeros[0] <= X or first_root_gap(k, geom, family, X) < 0):
        xs.append(_pre_turning_root(k, geom, family, zeros[0]))

    def h(x):
        return x * special.jvp(nu, x) - rhs(x) * special.jv(nu, x)

    for a, b in zip(zeros[:-1], zeros[1:]):
        xs.append(_brentq(h, a, b))

    return _records(family, k, geom, [x / geom.R for x in xs], sigma_max,
                    lambda a: _transverse_sigma(a, geom, family))


def _records(family, k, geom, alphas, sigma_max, sigma_of) -> list[EigenvalueRecord]:
    mult = harmonic_multiplicity(geom.n - 2, k)
    out = []
    for alpha in sorted(alphas):
        sigma = sigma_of(alpha)
        if sigma < sigma_max:
            out.append(EigenvalueRecord(family, k, len(out) + 1, alpha, sigma, mult))
    return out


# ---------------------------------------------------------------------------
# radial families


def radial_sigma(alpha: float, k: int, geom: CylinderGeometry) -> float:
    """sigma(alpha) = (x I'_nu(x)/I_nu(x) - beta)/R at x = alpha R."""
    return (specfun.mod_ratio(geom.order(k), alpha * geom.R) - geom.beta) / geom.R


def quantization_phase(alpha: float, k: int, geom: CylinderGeometry) -> float:
    """alpha L + arctan(sigma(alpha)/alpha)."""
    x = alpha * geom.R
    nu = geom.order(k)
    # sigma/alpha = k/x + I_{nu+1}/I_nu, no cancellation
    return alpha * geom.L + math.atan(k / x + specfun.i_ratio(nu, x))


def radial_cutoff(k: int, geom: CylinderGeometry, sigma: float) -> float | None:
    """x = alpha R at which the radial eigenvalue map reaches ``sigma``; None if never."""
    s = sigma * geom.R + geom.beta
    nu = geom.order(k)
    if s <= nu:
        return None
    return solve_xv(nu, s)


def has_zeroth_sin_mode(k: int, geom: CylinderGeometry) -> bool:
    """Whether radialB has a root with alpha L + arctan(sigma/alpha) = pi/2.

    For k >= 1 the quantization phase starts at pi/2 and first dips below it
    exactly when k < R/L.  For k = 0 it starts at 0.
    """
    if k == 0:
        return True
    return k < geom.aspect and k != geom.integer_aspect()


def enumerate_radial(
    k: int, geom: CylinderGeometry, family, sigma_max: float
) -> list[EigenvalueRecord]:
    """All radialA- or radialB-family eigenvalues of angular order k below ``sigma_max``."""
    family = SpectralFamily(family)
    if family not in (SpectralFamily.RADIAL_A, SpectralFamily.RADIAL_B):
        raise ValueError(f"not a radial family: {family}")
    if not sigma_max > 0:
        raise DomainError("sigma_max must be positive")
    xv = radial_cutoff(k, geom, sigma_max)
    if xv is None:
        return []
    alpha_max = xv / geom.R
    L = geom.L
    offset = 0.0 if family is SpectralFamily.RADIAL_A else math.pi / 2
    m = 1 if family is SpectralFamily.RADIAL_A else 0

    alphas = []
    while True:
        target = offset + m * math.pi
        # arctan term lies in (0, pi/2], so the root has alpha L in [target - pi/2, target]
        lo = max(0.0, (target - math.pi / 2) / L)
        if lo >= alpha_max:
            break
        hi = target / L
        if target == math.pi / 2 and k >= 1:
            # h(0+) = pi/2 exactly; solve (sigma/alpha) tan(alpha L) = 1 instead
            if has_zeroth_sin_mode(k, geom):
                def f(a, k=k):
                    x = a * geom.R
                    return (k / x + specfun.i_ratio(geom.order(k), x)) * math.tan(a * L) - 1.0

                alphas.append(_brentq(f, 1e-9 * min(1 / L, 1 / geom.R), _below(hi)))
        else:
            a0 = max(lo, 1e-300)
            alphas.append(_brentq(lambda a, t=target: quantization_phase(a, k, geom) - t, a0, hi))
        m += 1

    return _records(family, k, geom, alphas, sigma_max, lambda a: radial_sigma(a, k, geom))


def _below(x: float) -> float:
    return x * (1 - 1e-15)


# ---------------------------------------------------------------------------


def exceptional(geom: CylinderGeometry) -> tuple[float, int, int] | None:
    """(sigma, k, multiplicity) of the mode r^k Y_k z when R/L = k is a positive integer."""
    k = geom.integer_aspect()
    if k is None:
        return None
    return 1.0 / geom.L, k, harmonic_multiplicity(geom.n - 2, k)


def enumerate_family(k: int, geom: CylinderGeometry, family, sigma_max: float) -> list[EigenvalueRecord]:
    family = SpectralFamily(family)
    if family in (SpectralFamily.TANH, SpectralFamily.COTH):
        return enumerate_transverse(k, geom, family, sigma_max)
    if family in (SpectralFamily.RADIAL_A, SpectralFamily.RADIAL_B):
        return enumerate_radial(k, geom, family, sigma_max)
    raise ValueError(f"no per-k enumeration for {family}")
