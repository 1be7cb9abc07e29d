"""Invariant suites for each module, run by ``steklov-cylinder validate``.

Each check returns a :class:`CheckResult`; none raises on failure.  The
suites are sized to finish in well under a minute together.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

from . import asym, counting, roots, specfun, weyl
from .geometry import CylinderGeometry, SpectralFamily


@dataclass(frozen=True)
class CheckResult:
    module: str
    name: str
    passed: bool
    detail: str = ""


_CHECKS: list[tuple[str, str, Callable[[int], tuple[bool, str]]]] = []


def check(module: str, name: str):
    def deco(fn):
        _CHECKS.append((module, name, fn))
        return fn

    return deco


def run_all(seed: int = 0, modules: set[str] | None = None) -> list[CheckResult]:
    out = []
    for module, name, fn in _CHECKS:
        if modules and module not in modules:
            continue
        try:
            ok, detail = fn(seed)
        except Exception as exc:  # report, do not abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(module, name, bool(ok), detail))
    return out


# ---------------------------------------------------------------------------
# specfun


@check("specfun", "wronskian")
def _wronskian(seed):
    worst = 0.0
    for nu in np.linspace(0, 100, 11):
        for x in np.geomspace(0.1, 1000, 25):
            w = specfun.bessel_j(nu, x) * specfun.bessel_yp(nu, x) - specfun.bessel_jp(nu, x) * specfun.bessel_y(nu, x)
            worst = max(worst, abs(w - 2 / (math.pi * x)))
    return worst <= 1e-10, f"max |W - 2/(pi x)| = {worst:.2e}"


@check("specfun", "interlacing")
def _interlacing(seed):
    for nu in (0.0, 0.5, 1.0, 5.0, 20.0):
        seq = [nu]
        for k in range(1, 31):
            seq += [specfun.bessel_jp_zero(nu, k), specfun.bessel_y_zero(nu, k), specfun.bessel_j_zero(nu, k)]
        diffs = np.diff(seq)
        # j'_{0,1} = 0 coincides with nu = 0
        if nu == 0:
            diffs = diffs[1:]
        if not np.all(diffs > 0):
            return False, f"order {nu}: sequence not increasing"
    return True, "nu < j'_1 < y_1 < j_1 < j'_2 < ... for k <= 30"


@check("specfun", "qu_bracket")
def _qu(seed):
    for nu in (1.0, 10.0, 50.0, 100.0):
        for k in range(1, 31):
            lo, hi = specfun.qu_bracket(nu, k)
            j = specfun.bessel_j_zero(nu, k)
            if not lo < j:
                return False, f"j_({nu},{k}) = {j} below {lo}"
            if k == 1 and not j <= hi:
                return False, f"j_({nu},1) = {j} above {hi}"
    return True, "lower bound for k <= 30, upper bound for k = 1"


@check("specfun", "phase_at_zeros")
def _phase_zeros(seed):
    worst = 0.0
    for nu in (0.0, 0.5, 3.0, 25.0):
        for k in range(1, 11):
            t = specfun.phase(nu, specfun.bessel_j_zero(nu, k)).theta
            worst = max(worst, abs(t - (k - 0.5) * math.pi))
    return worst <= 1e-8, f"max |theta(j_k) - (k-1/2)pi| = {worst:.2e}"


@check("specfun", "phase_derivative")
def _phase_deriv(seed):
    worst = 0.0
    for nu in (0.0, 2.0, 30.0):
        for x in (nu + 1.3, nu + 7.1, 3 * nu + 11.0):
            h = 1e-5 * x
            fd = (specfun.phase(nu, x + h).theta - specfun.phase(nu, x - h).theta) / (2 * h)
            m2 = specfun.phase(nu, x).modulus_sq
            worst = max(worst, abs(fd * m2 - 1))
    return worst <= 1e-6, f"max |m^2 dtheta/dx - 1| = {worst:.2e}"


@check("specfun", "phase_envelope")
def _envelope(seed):
    for nu in np.linspace(1, 100, 12):
        for r in np.geomspace(1.05, 20, 15):
            x = nu * r
            env = specfun.phase_envelope(nu, x)
            gap = env.theta_upper - specfun.phase(nu, x).theta
            if not (-1e-10 <= gap <= env.eps_theta + 1e-10):
                return False, f"gap {gap:.3e} outside [0, {env.eps_theta:.3e}] at nu={nu:.2f}, x={x:.2f}"
    return True, "0 <= theta~ - theta <= eps on x/nu in [1.05, 20], nu in [1, 100]"


@check("specfun", "debye")
def _debye(seed):
    cs = []
    for nu in (50, 100, 200):
        zs = np.linspace(0.2, 0.8, 13)
        cs.append(max(abs(specfun.debye_j(nu, z) / special.jv(nu, nu * z) - 1) for z in zs) * nu**2)
    return max(cs) / min(cs) < 1.5, "fitted C per order: " + ", ".join(f"{c:.3f}" for c in cs)


@check("specfun", "modulus_approximation")
def _modulus(seed):
    errs = []
    for x in (100.0, 200.0, 400.0, 800.0):
        nus = np.linspace(0, x - x ** (2 / 3), 40)
        errs.append(max(abs(specfun.phase(nu, x).modulus_sq * math.sqrt(1 - (nu / x) ** 2) - 1) for nu in nus))
    return all(a > b for a, b in zip(errs, errs[1:])), "sup errors " + ", ".join(f"{e:.2e}" for e in errs)


@check("specfun", "large_order_modified")
def _large_i(seed):
    cs = []
    for nu in (50.0, 100.0, 200.0):
        cs.append(max(
            abs(specfun.bessel_i_large_order(nu, t * nu, scaled=True) / special.ive(nu, t * nu) - 1) * nu * nu * (1 + t * t)
            for t in (0.5, 1.0, 2.0)
        ))
    return max(cs) / min(cs) < 1.5, "fitted C per order: " + ", ".join(f"{c:.4f}" for c in cs)


@check("specfun", "airy_modulus")
def _airy(seed):
    # beyond x ~ 100 the derivative envelope is narrower than the rounding
    # error of Ai Ai' + Bi Bi' in double precision
    for x in np.geomspace(2, 50, 40):
        a = math.pi * math.sqrt(x) * specfun.airy_modulus_sq(-x)
        b = math.pi * x**1.5 * specfun.airy_modulus_sq_deriv(-x)
        if not (1 - 5 / (32 * x**3) < a < 1):
            return False, f"modulus envelope fails at x={x:.3f}"
        if not (0.5 - 35 / (64 * x**3) < b < 0.5):
            return False, f"derivative envelope fails at x={x:.3f}"
    return True, "both envelopes hold on x in [2, 50]"


# ---------------------------------------------------------------------------
# roots


@check("roots", "record_residuals")
def _residuals(seed):
    worst = 0.0
    for geom in (CylinderGeometry(3, 1, 1), CylinderGeometry(4, 2, 1), CylinderGeometry(5, 1, 2)):
        for k in (0, 1, 3, 8):
            for fam in (SpectralFamily.TANH, SpectralFamily.COTH):
                for r in roots.enumerate_transverse(k, geom, fam, 15):
                    x = r.alpha * geom.R
                    nu = geom.order(k)
                    t = math.tanh(r.alpha * geom.L)
                    rhs = x * (t if fam is SpectralFamily.TANH else 1 / t)
                    lhs = x * specfun.bessel_jp(nu, x) - geom.beta * specfun.bessel_j(nu, x)
                    scale = abs(x * specfun.bessel_jp(nu, x)) + abs(rhs * specfun.bessel_j(nu, x)) + 1e-300
                    worst = max(worst, abs(lhs - rhs * specfun.bessel_j(nu, x)) / scale)
            for fam in (SpectralFamily.RADIAL_A, SpectralFamily.RADIAL_B):
                off = 0.0 if fam is SpectralFamily.RADIAL_A else math.pi / 2
                for r in roots.enumerate_radial(k, geom, fam, 15):
                    q = r.alpha * geom.L + math.atan(r.sigma / r.alpha) - off
                    worst = max(worst, abs(q - math.pi * round(q / math.pi)))
                    worst = max(worst, abs(specfun.mod_ratio(geom.order(k), r.alpha * geom.R)
                                           - (r.sigma * geom.R + geom.beta)) / (r.sigma * geom.R + geom.beta))
    return worst <= 1e-9, f"max residual {worst:.2e}"


@check("roots", "monotone_records")
def _monotone(seed):
    geom = CylinderGeometry(3, 1.5, 1)
    for k in range(6):
        for fam in (SpectralFamily.TANH, SpectralFamily.COTH, SpectralFamily.RADIAL_A, SpectralFamily.RADIAL_B):
            recs = roots.enumerate_family(k, geom, fam, 20)
            if any(b.sigma <= a.sigma or b.alpha <= a.alpha for a, b in zip(recs, recs[1:])):
                return False, f"non-increasing records for {fam.value}, k={k}"
    return True, "sigma and alpha strictly increase within every (family, k)"


@check("roots", "xv_lower_bound")
def _xv(seed):
    rng = np.random.default_rng(seed)
    for _ in range(200):
        nu = rng.uniform(0, 50)
        s = nu + rng.exponential(10) + 1e-6
        if roots.solve_xv(nu, s) < math.sqrt(s * s - nu * nu) * (1 - 1e-14):
            return False, f"bound violated at nu={nu}, s={s}"
    return True, "xv >= sqrt(s^2 - nu^2) on 200 random pairs"


@check("roots", "tanh_coth_totals")
def _tanh_coth(seed):
    geom = CylinderGeometry(3, 1, 1)
    worst = 0
    for sigma in (10, 50, 100, 200):
        bd = counting.counting_function(geom, sigma)
        worst = max(worst, abs(bd.totals[SpectralFamily.TANH] - bd.totals[SpectralFamily.COTH]))
    return worst <= 10, f"max |N_tanh - N_coth| = {worst}"


# ---------------------------------------------------------------------------
# counting


@check("counting", "phase_equals_enumeration")
def _equiv(seed):
    for n in (3, 4, 5):
        for ratio in (0.5, 1.0, 2.0):
            geom = CylinderGeometry(n, ratio, 1.0)
            for sigma in (1, 2, 5, 10):
                a = counting.counting_function(geom, sigma, "phase")
                b = counting.counting_function(geom, sigma, "enumerate")
                if a.per_family_per_k != b.per_family_per_k:
                    return False, f"mismatch at n={n}, R/L={ratio}, sigma={sigma}"
    return True, "exact agreement for n in 3..5, R/L in {0.5, 1, 2}, sigma <= 10"


@check("counting", "monotone_and_increments")
def _increments(seed):
    geom = CylinderGeometry(3, 1, 1)
    rng = np.random.default_rng(seed)
    ev = sorted(r.sigma for r in _all_records(geom, 12.0))
    mult = {r.sigma: r.multiplicity for r in _all_records(geom, 12.0)}
    exc = roots.exceptional(geom)
    for _ in range(10):
        s1, s2 = sorted(rng.uniform(0.1, 12.0, 2))
        n1 = counting.counting_function(geom, s1).grand_total
        n2 = counting.counting_function(geom, s2).grand_total
        inside = sum(mult[s] for s in ev if s1 <= s < s2)
        if exc is not None and s1 <= exc[0] < s2:
            inside += exc[2]
        if n2 < n1 or n2 - n1 != inside:
            return False, f"N({s2}) - N({s1}) = {n2 - n1}, records in between: {inside}"
    return True, "N nondecreasing, increments match enumerated records"


def _all_records(geom, sigma_max):
    k = 0
    out = []
    while True:
        recs = [r for fam in counting.FAMILIES for r in roots.enumerate_family(k, geom, fam, sigma_max)]
        if not recs and geom.order(k) > sigma_max * geom.R + geom.beta + 2:
            return out
        out += recs
        k += 1


@check("counting", "truncation_order")
def _truncation(seed):
    for n in (3, 4, 5):
        geom = CylinderGeometry(n, 1, 1)
        for sigma in (5, 20, 50):
            bd = counting.counting_function(geom, sigma)
            if bd.k_max >= counting.truncation_order(geom, sigma):
                return False, f"nonzero count at k={bd.k_max} for n={n}, sigma={sigma}"
    return True, "all counts vanish from k >= sqrt(2)(sigma R + (n-2)/4) - beta + 1"


@check("counting", "slicing")
def _slicing(seed):
    rng = np.random.default_rng(seed)
    for n in range(4, 9):
        for K in (0, 1, 7, 50, 200):
            for a in (np.ones(K + 1, dtype=int), rng.integers(-1000, 1000, K + 1)):
                if counting.slicing_check(n, K, [int(v) for v in a]) != 0:
                    return False, f"nonzero at n={n}, K={K}"
    return True, "identically zero for n in 4..8, K <= 200"


# ---------------------------------------------------------------------------
# asym


@check("asym", "strong_convexity")
def _convex(seed):
    for sigma in (50.0, 100.0, 400.0):
        for z in np.linspace(0, 0.99, 100):
            if not asym.eta1_dnu2(z * sigma, sigma) > 1 / sigma:
                return False, f"fails at z={z:.3f}, sigma={sigma}"
    return True, "d2 eta1/dnu2 > 1/sigma on z in [0, 0.99]"


@check("asym", "eta1_slope_window")
def _window1(seed):
    for sigma in np.geomspace(1.01, 1e5, 60):
        d = asym.eta1_dnu(sigma - 1, sigma)
        if not -math.pi / 2 < d < 1:
            return False, f"fails at sigma={sigma}"
    return True, "-pi/2 < d eta1/dnu (sigma-1, sigma) < 1"


@check("asym", "eta2_windows")
def _window2(seed):
    for ratio in (0.5, 1.0, 2.0):
        geom = CylinderGeometry(3, ratio, 1.0)
        a = geom.L / geom.R
        sigma = max(100.0, 4 * geom.R / geom.L)
        for z in np.linspace(0, 1 / math.sqrt(2), 60):
            d1 = asym.eta2_dnu(z * sigma, sigma, geom)
            d2 = asym.eta2_dnu2(z * sigma, sigma, geom)
            if not (-a - (a / 2) ** 2 < d1 <= 0 and d2 < -(15 / 32) * a / sigma):
                return False, f"fails at R/L={ratio}, z={z:.3f}"
    return True, "slope and concavity windows hold on z <= 1/sqrt(2)"


@check("asym", "analytic_vs_finite_difference")
def _fd(seed):
    geom = CylinderGeometry(4, 1, 1.5)
    worst = 0.0
    for sigma in np.linspace(20, 400, 20):
        for z in np.linspace(0.02, 0.9, 20):
            nu = z * sigma
            h = 1e-4 * sigma
            pairs = (
                (asym.eta1_dnu(nu, sigma), (asym.eta1(nu + h, sigma) - asym.eta1(nu - h, sigma)) / (2 * h)),
                (asym.eta2_dnu(nu, sigma, geom), (asym.eta2(nu + h, sigma, geom) - asym.eta2(nu - h, sigma, geom)) / (2 * h)),
                (asym.eta1_dnu2(nu, sigma), (asym.eta1_dnu(nu + h, sigma) - asym.eta1_dnu(nu - h, sigma)) / (2 * h)),
                (asym.eta2_dnu2(nu, sigma, geom), (asym.eta2_dnu(nu + h, sigma, geom) - asym.eta2_dnu(nu - h, sigma, geom)) / (2 * h)),
            )
            for exact, fd in pairs:
                worst = max(worst, abs(exact - fd) / max(abs(exact), 1e-3))
    return worst <= 1e-6, f"max relative difference {worst:.2e}"


@check("asym", "eta1_approximation_decay")
def _decay(seed):
    geom = CylinderGeometry(3, 1, 1)
    sups = []
    for sigma in (50.0, 100.0, 200.0, 400.0):
        edge = sigma * geom.R - math.sqrt(sigma * geom.R) / 2
        nus = np.append(np.linspace(0, edge, 200), edge)
        sups.append(max(abs(asym.eta1_error(nu, sigma, geom)) for nu in nus))
    ok = all(a > b for a, b in zip(sups, sups[1:]))
    return ok, "sup over nu <= sigma R - sqrt(sigma R)/2: " + ", ".join(f"{s:.4f}" for s in sups)


# ---------------------------------------------------------------------------
# weyl


@check("weyl", "two_forms_agree")
def _forms(seed):
    for n in range(3, 9):
        for ratio in (0.5, 1.0, 2.0):
            geom = CylinderGeometry(n, ratio, 1.0)
            a, b = weyl.weyl_two_term(geom), weyl.weyl_geometric_form(geom)
            if abs(a.lead - b.lead) > 1e-10 * abs(a.lead) or abs(a.sub - b.sub) > 1e-10 * abs(a.sub):
                return False, f"forms differ at n={n}, R/L={ratio}"
    return True, "closed and geometric forms agree for n in 3..8"


@check("weyl", "edge_constant_identity")
def _gprime(seed):
    worst = max(abs((n - 2) * weyl.edge_integral(1.0, (n - 2) / 2) - math.pi * weyl.g_prime(n - 1)) for n in range(3, 11))
    return worst <= 1e-8, f"max deviation {worst:.2e}"


@check("weyl", "ball_volume_identities")
def _balls(seed):
    worst = 0.0
    for p in range(1, 21):
        b = weyl.ball_volume(p)
        r1 = (2 * math.pi) ** p / math.factorial(p) * weyl.beta_fn(p / 2 + 0.5, 0.5) / math.pi
        r2 = 2 * (2 * math.pi) ** (p - 1) / math.factorial(p)
        worst = max(worst, abs(b * b / r1 - 1), abs(b * weyl.ball_volume(p - 1) / r2 - 1))
    return worst <= 1e-12, f"max relative deviation {worst:.2e}"


@check("weyl", "edge_recurrence")
def _recurrence(seed):
    worst = 0.0
    for z in (0.3, 1.0, 2.5):
        for p in (0.25, 0.5, 1.0, 1.5, 3.0):
            step = weyl.edge_integral_step(z, p, weyl.edge_integral(z, p))
            worst = max(worst, abs(step - weyl.edge_integral(z, p + 1)))
    return worst <= 1e-8, f"max deviation {worst:.2e}"


@check("weyl", "cuboid_constant")
def _cuboid(seed):
    zs = [weyl.g_cuboid_equiv(n, 200_000, seed + n).z_score for n in (2, 3, 4)]
    return max(zs) <= 4, "Monte Carlo z-scores " + ", ".join(f"{z:.2f}" for z in zs)


@check("weyl", "incomplete_beta_small_z")
def _ibeta(seed):
    ks = []
    for x, y in ((1.5, 1.5), (0.5, 2.0), (3.0, 0.5)):
        for z in (1e-2, 1e-3, 1e-4):
            ks.append(abs(weyl.incomplete_beta(z, x, y) * x / z**x - 1) / z)
    return max(ks) < 10, f"max K = {max(ks):.3f}"
