"""The Steklov counting function N(sigma) and its per-family pieces.

Two independent routes are provided.  ``phase`` counts the roots of each
family from a closed formula: a Bessel phase plus an arctangent correction
for the transverse families, and a floor of the longitudinal quantization
phase for the radial families.  ``enumerate`` locates every root with
:mod:`steklov_cylinder.roots` and counts them.  The two must agree exactly.

N(sigma) counts eigenvalues strictly below sigma with multiplicity, including
the zero eigenvalue of the constant function once.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import roots, specfun
from .geometry import RADIAL, TRANSVERSE, CylinderGeometry, SpectralFamily, harmonic_multiplicity
from .weyl import weyl_prediction

FAMILIES = TRANSVERSE + RADIAL
_NEAR_INTEGER = 1e-9


def multiplicity(m: int, k: int) -> int:
    """omega_{m,k}: multiplicity of degree-k spherical harmonics on S^m."""
    return harmonic_multiplicity(m, k)


def slicing_check(n: int, K: int, a: Sequence[float]) -> float:
    """Difference between the two sides of the harmonic-weight slicing identity.

    sum_{k<=K} omega_{n-2,k} a_k  versus
    sum_{k<=K} C(k+n-4, n-4) sum_{j<=K-k} omega_{1,j} a_{k+j}.
    Evaluated in exact rational arithmetic, so the result is exactly 0.
    """
    if int(n) != n or n < 4:
        raise ValueError(f"slicing needs an integer n >= 4, got {n!r}")
    if int(K) != K or K < 0:
        raise ValueError(f"K must be an integer >= 0, got {K!r}")
    if len(a) < K + 1:
        raise ValueError(f"need at least K+1 = {K + 1} terms, got {len(a)}")
    q = [Fraction(v) for v in a[: K + 1]]
    lhs = sum(multiplicity(n - 2, k) * q[k] for k in range(K + 1))
    rhs = sum(
        math.comb(k + n - 4, n - 4) * sum(multiplicity(1, j) * q[k + j] for j in range(K - k + 1))
        for k in range(K + 1)
    )
    return float(lhs - rhs)


# ---------------------------------------------------------------------------
# transverse families


def phase_correction(nu: float, x: float, F: float, pe: specfun.PhaseEval | None = None) -> float:
    """psi(nu, x, F) = arctan(m^2 (F + 1/2)/x - (1/2) d(m^2)/dx).

    Roots of x J'_nu = F J_nu at fixed F are the points where theta + psi is
    a multiple of pi.
    """
    pe = pe or specfun.phase(nu, x)
    return math.atan(pe.modulus_sq * (F + 0.5) / x - 0.5 * pe.dmodulus_sq_dx)


def count_phase_argument(nu: float, x: float, F: float) -> float:
    """theta(nu, x) + psi(nu, x, F)."""
    pe = specfun.phase(nu, x)
    return pe.theta + phase_correction(nu, x, F, pe)


def _near_integer(v: float) -> bool:
    return abs(v - round(v)) < _NEAR_INTEGER


def count_transverse_phase(k: int, geom: CylinderGeometry, family, sigma: float) -> int:
    """Number of tanh- or coth-family eigenvalues of order k below ``sigma``, by phase."""
    family = SpectralFamily(family)
    if family not in TRANSVERSE:
        raise ValueError(f"not a transverse family: {family}")
    if not sigma > 0:
        return 0
    X = roots.transverse_cutoff(geom, family, sigma)
    if X is None or X <= 0:
        return 0
    nu = geom.order(k)

    first = 0
    if roots.has_pre_turning_root(k, geom, family):
        if specfun.count_j_zeros_below(nu, X) >= 1:
            first = 1
        else:
            gap = roots.first_root_gap(k, geom, family, X)
            if abs(gap) < _NEAR_INTEGER:
                return len(roots.enumerate_transverse(k, geom, family, sigma))
            first = int(gap < 0)

    if X <= nu - nu ** (1 / 3):
        # below the turning point J_nu has no zeros, so no later roots
        return first
    arg = count_phase_argument(nu, X, sigma * geom.R + geom.beta) / math.pi
    if _near_integer(arg):
        return len(roots.enumerate_transverse(k, geom, family, sigma))
    return first + max(0, math.floor(arg))


# ---------------------------------------------------------------------------
# radial families


def count_radial_phase(k: int, geom: CylinderGeometry, family, sigma: float) -> int:
    """Number of radialA- or radialB-family eigenvalues of order k below ``sigma``, by phase.

    With xv solving x I'_nu/I_nu = sigma R + beta, the quantization phase at
    the cutoff is h = (L/R) xv + arctan(sigma R / xv) and the count is
    floor(h/pi) for radialA.  For radialB it is floor((h + pi/2)/pi) when the
    zeroth sin mode exists and floor((h - pi/2)/pi) (at least 0) otherwise.
    """
    family = SpectralFamily(family)
    if family not in RADIAL:
        raise ValueError(f"not a radial family: {family}")
    if not sigma > 0:
        return 0
    xv = roots.radial_cutoff(k, geom, sigma)
    if xv is None:
        return 0
    h = geom.L / geom.R * xv + math.atan(sigma * geom.R / xv)
    if family is SpectralFamily.RADIAL_A:
        arg = h / math.pi
    elif roots.has_zeroth_sin_mode(k, geom):
        arg = h / math.pi + 0.5
    else:
        arg = h / math.pi - 0.5
    if _near_integer(arg):
        return len(roots.enumerate_radial(k, geom, family, sigma))
    return max(0, math.floor(arg))


# ---------------------------------------------------------------------------
# full counting function


@dataclass
class CountBreakdown:
    """N(sigma) split by family and angular order.

    ``per_family_per_k`` holds multiplicity-weighted counts; ``totals`` sums
    them per family (the exceptional mode under its own family, the zero mode
    excluded); ``grand_total`` adds the zero mode when ``includes_zero_mode``.
    """

    sigma: float
    per_family_per_k: dict = field(default_factory=dict)
    totals: dict = field(default_factory=dict)
    grand_total: int = 0
    includes_zero_mode: bool = True
    weyl_prediction: float = math.nan
    k_max: int = -1

    def raw_counts(self, geom: CylinderGeometry) -> dict:
        """Unweighted root counts per (family, k)."""
        out = {}
        for (fam, k), v in self.per_family_per_k.items():
            if fam is SpectralFamily.EXCEPTIONAL:
                out[(fam, k)] = 1 if v else 0
            else:
                out[(fam, k)] = v // harmonic_multiplicity(geom.n - 2, k)
        return out


def _per_k_counts(k: int, geom: CylinderGeometry, sigma: float, mode: str) -> tuple[int, ...]:
    if mode == "phase":
        return tuple(
            count_transverse_phase(k, geom, f, sigma) if f in TRANSVERSE else count_radial_phase(k, geom, f, sigma)
            for f in FAMILIES
        )
    return tuple(len(roots.enumerate_family(k, geom, f, sigma)) for f in FAMILIES)


def _beyond_cutoffs(k: int, geom: CylinderGeometry, sigma: float) -> bool:
    nu = geom.order(k)
    limit = sigma * geom.R + geom.beta
    for fam in TRANSVERSE:
        X = roots.transverse_cutoff(geom, fam, sigma)
        if X is not None:
            limit = max(limit, X)
    return nu > limit


def counting_function(
    geom: CylinderGeometry, sigma: float, mode: str = "phase", threads: int = 1
) -> CountBreakdown:
    """N(sigma): eigenvalues strictly below sigma, with multiplicity."""
    if mode not in ("phase", "enumerate"):
        raise ValueError(f"mode must be 'phase' or 'enumerate', got {mode!r}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma!r}")
    out = CountBreakdown(sigma=sigma)
    totals = {f: 0 for f in FAMILIES + (SpectralFamily.EXCEPTIONAL,)}

    exc = roots.exceptional(geom)
    if exc is not None and exc[0] < sigma:
        out.per_family_per_k[(SpectralFamily.EXCEPTIONAL, exc[1])] = exc[2]
        totals[SpectralFamily.EXCEPTIONAL] = exc[2]

    chunk = max(1, threads) * 8
    k0 = 0
    done = False
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        while not done:
            ks = range(k0, k0 + chunk)
            for k, counts in zip(ks, pool.map(lambda k: _per_k_counts(k, geom, sigma, mode), ks)):
                if not any(counts) and _beyond_cutoffs(k, geom, sigma):
                    done = True
                    break
                w = harmonic_multiplicity(geom.n - 2, k)
                for fam, c in zip(FAMILIES, counts):
                    if c:
                        out.per_family_per_k[(fam, k)] = w * c
                        totals[fam] += w * c
                out.k_max = k
            k0 += chunk

    out.totals = totals
    out.grand_total = 1 + sum(totals.values())
    out.weyl_prediction = weyl_prediction(geom, sigma)
    return out


def truncation_order(geom: CylinderGeometry, sigma: float) -> float:
    """Angular order from which every per-k count is known to vanish."""
    return math.sqrt(2) * (sigma * geom.R + (geom.n - 2) / 4) - geom.beta + 1
