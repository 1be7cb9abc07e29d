import math

import pytest

from steklov_cylinder.geometry import CylinderGeometry, EigenvalueRecord, GeometryError, SpectralFamily
from steklov_cylinder import validation


def test_defaults_and_beta():
    g = CylinderGeometry()
    assert (g.n, g.R, g.L, g.beta) == (3, 1.0, 1.0, 0.0)
    assert CylinderGeometry(6, 1, 1).beta == 1.5
    assert CylinderGeometry(6, 1, 1).order(2) == 3.5


@pytest.mark.parametrize("n,R,L", [(2, 1, 1), (3.5, 1, 1), (3, 0, 1), (3, 1, -2), (3, math.inf, 1), (3, 1, math.nan)])
def test_invalid_geometry(n, R, L):
    with pytest.raises(GeometryError):
        CylinderGeometry(n, R, L)


def test_integer_aspect():
    assert CylinderGeometry(3, 2, 1).integer_aspect() == 2
    assert CylinderGeometry(3, 0.3 * 3, 0.3).integer_aspect() == 3
    assert CylinderGeometry(3, 1, 0.7).integer_aspect() is None
    assert CylinderGeometry(3, 1, 2).integer_aspect() is None


def test_record_row():
    r = EigenvalueRecord(SpectralFamily.COTH, 2, 1, 1.46, 1.63, 2)
    assert r.as_row() == {"family": "coth", "k": 2, "index": 1, "alpha": 1.46, "sigma": 1.63, "multiplicity": 2}


def test_validation_suite_passes():
    results = validation.run_all(seed=0)
    assert {r.module for r in results} == {"specfun", "roots", "counting", "asym", "weyl"}
    failed = [f"{r.module}.{r.name}: {r.detail}" for r in results if not r.passed]
    assert not failed


def test_validation_module_filter():
    results = validation.run_all(seed=1, modules={"weyl"})
    assert results and all(r.module == "weyl" for r in results)
