import math

import numpy as np
import pytest
from scipy import integrate

from steklov_cylinder import weyl
from steklov_cylinder.geometry import CylinderGeometry
from steklov_cylinder.specfun import DomainError


def test_beta_examples():
    assert weyl.beta_fn(0.5, 0.5) == pytest.approx(math.pi, rel=1e-14)
    assert weyl.incomplete_beta(1, 2.5, 0.7) == weyl.beta_fn(2.5, 0.7)
    assert weyl.incomplete_beta(0.01, 1.5, 1.5) == pytest.approx(0.01**1.5 / 1.5, rel=0.03)
    with pytest.raises(DomainError):
        weyl.incomplete_beta(1.2, 1, 1)
    with pytest.raises(DomainError):
        weyl.beta_fn(0, 1)


@pytest.mark.parametrize("z,x,y", [(0.01, 1.5, 1.5), (0.3, 0.5, 2.0), (0.9, 4.0, 0.5), (0.5, 0.2, 0.3)])
def test_incomplete_beta_against_quadrature(z, x, y):
    ref, _ = integrate.quad(lambda t: t ** (x - 1) * (1 - t) ** (y - 1), 0, z, epsrel=1e-13, limit=200)
    assert weyl.incomplete_beta(z, x, y) == pytest.approx(ref, rel=1e-10)
    assert weyl.incomplete_beta(z, x, y) + weyl.complementary_incomplete_beta(z, x, y) == pytest.approx(
        weyl.beta_fn(x, y), rel=1e-13
    )


def test_incomplete_beta_small_z_law():
    for x, y in ((1.5, 1.5), (2.0, 0.5), (0.7, 3.0)):
        K = [abs(weyl.incomplete_beta(z, x, y) * x / z**x - 1) / z for z in (1e-2, 1e-3, 1e-4)]
        assert max(K) < 1.5 * min(K)


def test_moment_integral_examples():
    assert weyl.moment_integral(0, 0, 1) == pytest.approx(math.pi / 4, rel=1e-13)
    assert weyl.moment_integral(1, 0, 1) == pytest.approx(1 / 3, rel=1e-13)
    ref, _ = integrate.quad(lambda x: x * x * math.sqrt(4 - x * x), 0.3, 2, epsrel=1e-13)
    assert weyl.moment_integral(2, 0.3, 2) == pytest.approx(ref, rel=1e-9)


def test_edge_integral_examples():
    for p in (0.3, 1.0, 2.5):
        assert weyl.edge_integral(0, p) == pytest.approx(weyl.beta_fn(0.5, p) / (2 * p + 1), rel=1e-12)
    i_half = weyl.edge_integral(1, 0.5)
    assert i_half == pytest.approx(math.pi * (math.sqrt(2) - 1), rel=1e-12)
    step = weyl.edge_integral_step(1, 0.5, i_half)
    assert step == pytest.approx(0.5 * (2 * i_half - weyl.beta_fn(0.5, 1.5)) / 1.5, rel=1e-14)
    assert step == pytest.approx(weyl.edge_integral(1, 1.5), abs=1e-8)
    assert step == pytest.approx(0.344, abs=5e-4)


@pytest.mark.parametrize("z", [0.2, 1.0, 3.0])
@pytest.mark.parametrize("p", [0.1, 0.5, 1.0, 2.5, 6.0])
def test_edge_recurrence_against_quadrature(z, p):
    got = weyl.edge_integral_step(z, p, weyl.edge_integral(z, p))
    assert got == pytest.approx(weyl.edge_integral(z, p + 1), abs=1e-8)


def test_g_prime_examples():
    assert weyl.g_prime(2) == pytest.approx(math.sqrt(2) - 1, rel=1e-12)
    assert weyl.edge_integral(1, 0.5) == pytest.approx(math.pi * weyl.g_prime(2), rel=1e-12)
    assert all(0 < weyl.g_prime(n) < 1 for n in range(2, 21))


@pytest.mark.parametrize("n", range(3, 11))
def test_edge_constant_identity(n):
    assert (n - 2) * weyl.edge_integral(1, (n - 2) / 2) == pytest.approx(math.pi * weyl.g_prime(n - 1), abs=1e-8)


def test_cuboid_constant():
    r2 = weyl.g_cuboid_equiv(2, 10_000)
    assert r2.rhs == pytest.approx(math.pi / 2 * (math.sqrt(2) - 1), rel=1e-12)
    r3 = weyl.g_cuboid_equiv(3, 1_000_000, seed=11)
    assert r3.z_score < 4
    with pytest.raises(DomainError):
        weyl.g_cuboid_equiv(3, 100)


def test_ball_volume():
    assert weyl.ball_volume(2) == pytest.approx(math.pi, rel=1e-14)
    assert weyl.ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-14)
    assert weyl.ball_volume(4) * weyl.ball_volume(3) == pytest.approx(2 * (2 * math.pi) ** 3 / 24, rel=1e-13)
    assert weyl.ball_volume(4) * weyl.ball_volume(3) == pytest.approx(20.671, abs=1e-3)


@pytest.mark.parametrize("p", range(1, 21))
def test_ball_volume_identities(p):
    b = weyl.ball_volume
    assert b(p) ** 2 == pytest.approx(
        (2 * math.pi) ** p / math.factorial(p) * weyl.beta_fn(p / 2 + 0.5, 0.5) / math.pi, rel=1e-12
    )
    assert b(p) * b(p - 1) == pytest.approx(2 * (2 * math.pi) ** (p - 1) / math.factorial(p), rel=1e-12)


def test_beta_dimensional_reduction():
    # int over the simplex x1 + x2 <= 1 of f(x1 + x2) equals int_0^1 f(t) t dt
    f = lambda t: 1 + 3 * t**2 - t**5
    two, _ = integrate.dblquad(lambda y, x: f(x + y), 0, 1, 0, lambda x: 1 - x)
    one, _ = integrate.quad(lambda t: f(t) * t, 0, 1)
    assert two == pytest.approx(one, rel=1e-10)
    three, _ = integrate.tplquad(lambda z, y, x: f(x + y + z), 0, 1, 0, lambda x: 1 - x, 0, lambda x, y: 1 - x - y)
    one3, _ = integrate.quad(lambda t: f(t) * t * t / 2, 0, 1)
    assert three == pytest.approx(one3, rel=1e-9)


def test_geometry_examples():
    g = weyl.geometry(CylinderGeometry(3, 1, 1))
    assert (g.area, g.edge_measure, g.curvature_integral) == pytest.approx((6 * math.pi, 4 * math.pi, 2 * math.pi))
    g = weyl.geometry(CylinderGeometry(4, 2, 1))
    assert g.area == pytest.approx(64 * math.pi / 3 + 32 * math.pi)
    for n in (4, 6):
        g = weyl.geometry(CylinderGeometry(n, 1e-9, 1))
        assert max(g.area, g.edge_measure, g.curvature_integral) < 1e-7
    # for n = 3 the side has curvature 1/R and area ~R, so the integral stays 2 pi L
    g = weyl.geometry(CylinderGeometry(3, 1e-9, 1.5))
    assert max(g.area, g.edge_measure) < 1e-7
    assert g.curvature_integral == pytest.approx(3 * math.pi)


def test_weyl_examples():
    w = weyl.weyl_two_term(CylinderGeometry(3, 1, 1))
    assert w.lead == pytest.approx(1.5, rel=1e-14)
    assert w.sub == pytest.approx(8 * math.sqrt(2) - 5.5, rel=1e-12)
    assert w.sub == pytest.approx(5.81371, abs=1e-5)
    assert w.error_exponent == 0.75
    assert weyl.weyl_two_term(CylinderGeometry(3, 1, 2)).lead == pytest.approx(2.5, rel=1e-14)


def test_negated_edge_term():
    assert weyl.weyl_two_term(CylinderGeometry(3, 1, 1), edge_sign=-1).sub == pytest.approx(2.5, rel=1e-12)
    with pytest.raises(ValueError):
        weyl.weyl_two_term(CylinderGeometry(3, 1, 1), edge_sign=0)


@pytest.mark.parametrize("n", range(3, 9))
@pytest.mark.parametrize("aspect", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("edge_sign", [1, -1])
def test_two_forms_agree(n, aspect, edge_sign):
    geom = CylinderGeometry(n, aspect, 1.0)
    a = weyl.weyl_two_term(geom, edge_sign)
    b = weyl.weyl_geometric_form(geom, edge_sign)
    assert a.lead == pytest.approx(b.lead, rel=1e-10)
    assert a.sub == pytest.approx(b.sub, rel=1e-10)


def test_prediction_scales_with_radius():
    geom = CylinderGeometry(4, 2.0, 2.0)
    unit = CylinderGeometry(4, 1.0, 1.0)
    assert weyl.weyl_prediction(geom, 5.0) == pytest.approx(weyl.weyl_prediction(unit, 10.0), rel=1e-13)
    assert np.isfinite(weyl.weyl_prediction(geom, 1e3))
