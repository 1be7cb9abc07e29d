import math

import numpy as np
import pytest
from scipy import special

from steklov_cylinder import roots, specfun
from steklov_cylinder.geometry import CylinderGeometry, SpectralFamily

import oracles

F = SpectralFamily
UNIT = CylinderGeometry(3, 1.0, 1.0)


# --- scalar solvers --------------------------------------------------------


def test_solve_xt():
    assert roots.solve_xt(0) == 0
    assert roots.solve_xt(1) == pytest.approx(1.1996786, abs=1e-7)
    assert roots.solve_xt(20) == pytest.approx(20, abs=1e-8)
    with pytest.raises(specfun.DomainError):
        roots.solve_xt(-1)


@pytest.mark.parametrize("y", [1e-8, 0.3, 2.0, 17.0, 400.0])
def test_solve_xt_residual(y):
    x = roots.solve_xt(y)
    assert abs(x * math.tanh(x) - y) <= 1e-12 * max(1, y)


def test_solve_xc():
    assert roots.solve_xc(1 + 1e-10) < 1e-4
    assert roots.solve_xc(2) == pytest.approx(1.91501, abs=1e-5)
    assert roots.solve_xc(20) == pytest.approx(roots.solve_xt(20), abs=1e-8)
    with pytest.raises(specfun.DomainError):
        roots.solve_xc(1.0)


def test_solve_xv():
    assert roots.solve_xv(2, 2 + 1e-9) < 1e-3
    assert roots.solve_xv(0.5, 1.5) == pytest.approx(roots.solve_xc(2), abs=1e-10)
    # x I_1(x)/I_0(x) = 1, frozen from the mpmath oracle
    assert roots.solve_xv(0, 1) == pytest.approx(1.6082794717, abs=1e-9)
    with pytest.raises(specfun.DomainError):
        roots.solve_xv(3, 3)


@pytest.mark.parametrize("nu,s", [(0, 0.5), (3, 3.2), (10, 50), (100, 101), (40, 900)])
def test_solve_xv_bound(nu, s):
    x = roots.solve_xv(nu, s)
    assert x >= math.sqrt(s * s - nu * nu)
    assert specfun.mod_ratio(nu, x) == pytest.approx(s, rel=1e-12)


# --- transverse enumeration -------------------------------------------------


def test_transverse_examples():
    assert roots.enumerate_transverse(0, UNIT, "tanh", 1e-6) == []
    rec = roots.enumerate_transverse(1, UNIT, "tanh", 1)[0]
    assert rec.alpha == pytest.approx(0.97, abs=0.02)
    assert rec.sigma == pytest.approx(0.73, abs=0.02)


def test_transverse_record_residuals():
    for fam in ("tanh", "coth"):
        for k in (0, 1, 4, 11):
            for r in roots.enumerate_transverse(k, UNIT, fam, 25):
                x, nu = r.alpha, float(k)
                t = math.tanh(x) if fam == "tanh" else 1 / math.tanh(x)
                lhs = x * special.jvp(nu, x)
                rhs = x * t * special.jv(nu, x)
                assert abs(lhs - rhs) <= 1e-9 * max(1, abs(lhs))
                assert abs(r.sigma - r.alpha * t) <= 1e-10 * r.sigma


def test_degenerate_tanh_order_zero_has_no_pre_turning_root():
    assert not roots.has_pre_turning_root(0, UNIT, F.TANH)
    assert roots.has_pre_turning_root(1, UNIT, F.TANH)


def test_first_root_offset_tends_to_quarter_minus_half_beta():
    # the pre-turning root sits at nu/sqrt(2) + (4 - n)/4 asymptotically
    for n in (3, 5):
        geom = CylinderGeometry(n, 1.0, 1.0)
        prev = None
        for k in (50, 100, 200):
            nu = geom.order(k)
            x = roots.enumerate_transverse(k, geom, "tanh", 10 * k)[0].alpha
            dev = abs(x - (nu / math.sqrt(2) + (4 - n) / 4))
            assert dev < 0.03
            if prev is not None:
                assert dev < prev
            prev = dev


def test_first_root_large_order_example():
    geom = CylinderGeometry(3, 1.0, 1.0)
    x = roots.enumerate_transverse(100, geom, "tanh", 1000)[0].alpha
    assert abs(x - (100 / math.sqrt(2) + 0.5)) <= 0.05


# --- radial enumeration ------------------------------------------------------


def test_radial_examples():
    assert roots.enumerate_radial(0, UNIT, "radialA", 0.1) == []
    rec = roots.enumerate_radial(0, UNIT, "radialA", 5)[0]
    assert rec.alpha * UNIT.L + math.atan(rec.sigma / rec.alpha) == pytest.approx(math.pi, abs=1e-9)


def test_radial_record_residuals():
    geom = CylinderGeometry(4, 1.3, 0.7)
    for fam, offset in (("radialA", 0.0), ("radialB", math.pi / 2)):
        for k in (0, 1, 3, 8):
            for r in roots.enumerate_radial(k, geom, fam, 20):
                x = r.alpha * geom.R
                assert specfun.mod_ratio(geom.order(k), x) == pytest.approx(r.sigma * geom.R + geom.beta, rel=1e-10)
                h = r.alpha * geom.L + math.atan(r.sigma / r.alpha)
                m = round((h - offset) / math.pi)
                assert abs(h - offset - m * math.pi) <= 1e-9


def test_radial_family_mapping_is_cos_then_sin():
    # radialA solves -alpha sin(alpha L) = sigma cos(alpha L), the cos(alpha z) mode
    for r in roots.enumerate_radial(2, UNIT, "radialA", 15):
        assert abs(r.alpha * math.sin(r.alpha) + r.sigma * math.cos(r.alpha)) < 1e-8
    for r in roots.enumerate_radial(2, UNIT, "radialB", 15):
        assert abs(r.alpha * math.cos(r.alpha) - r.sigma * math.sin(r.alpha)) < 1e-8


# --- brute-force oracle -----------------------------------------------------

GEOMS = [(3, 1.0, 1.0), (3, 2.0, 1.0), (4, 1.0, 1.0), (5, 1.0, 2.0), (3, 1.0, 0.5), (4, 1.7, 0.6)]


@pytest.mark.parametrize("n,R,L", GEOMS)
@pytest.mark.parametrize("sigma", [3.0, 12.0])
def test_enumeration_matches_sign_scan(n, R, L, sigma):
    geom = CylinderGeometry(n, R, L)
    kmax = int(1.5 * sigma * R) + 3
    for k in range(kmax):
        for fam in ("tanh", "coth", "radialA", "radialB"):
            got = len(roots.enumerate_family(k, geom, fam, sigma))
            assert got == oracles.count(k, n, R, L, fam, sigma), (k, fam)


def test_records_strictly_increasing():
    geom = CylinderGeometry(3, 2.0, 1.0)
    for fam in ("tanh", "coth", "radialA", "radialB"):
        for k in range(6):
            recs = roots.enumerate_family(k, geom, fam, 30)
            assert [r.index for r in recs] == list(range(1, len(recs) + 1))
            assert all(b.sigma > a.sigma and b.alpha > a.alpha for a, b in zip(recs, recs[1:]))


def test_bracket_completeness_on_refined_scan():
    rng = np.random.default_rng(3)
    for _ in range(8):
        k = int(rng.integers(0, 12))
        fam = str(rng.choice(["tanh", "coth"]))
        recs = roots.enumerate_transverse(k, UNIT, fam, 20)
        x = np.linspace(1e-6, recs[-1].alpha + 1e-9 if recs else 1.0, 100_000)
        t = np.tanh(x) if fam == "tanh" else 1 / np.tanh(x)
        Fx = x * special.jvp(k, x) - x * t * special.jv(k, x)
        assert int(np.sum(Fx[:-1] * Fx[1:] < 0)) == len(recs)


# --- exceptional mode -------------------------------------------------------


def test_exceptional_mode():
    assert roots.exceptional(CylinderGeometry(3, 2.0, 1.0)) == (1.0, 2, 2)
    assert roots.exceptional(CylinderGeometry(3, 1.0, 0.7)) is None
    assert roots.exceptional(CylinderGeometry(4, 1.0, 1.0)) == (1.0, 1, 3)


def test_exceptional_mode_satisfies_both_conditions():
    # u = r^k Y_k z: d_r u = (k/R) u on the side, d_z u = u/L on the caps
    geom = CylinderGeometry(3, 2.0, 1.0)
    sigma, k, _ = roots.exceptional(geom)
    assert k / geom.R == pytest.approx(sigma)
    assert 1 / geom.L == pytest.approx(sigma)
