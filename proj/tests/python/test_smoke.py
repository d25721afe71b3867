import cmath
import math

import pytest

from excalcpy import ExcalcError, Form, ScalarField, integrate_circle


def test_field_arithmetic_and_eval():
    f = ScalarField("z1^2 + conj(z1)")
    z = 0.3 + 0.4j
    assert abs(f.eval([z]) - (z * z + z.conjugate())) < 1e-12


def test_wirtinger_derivative():
    f = ScalarField("z1^3")
    df = f.derivative("z", 1)
    z = 1.1 - 0.2j
    assert abs(df.eval([z]) - 3 * z * z) < 1e-12
    assert f.derivative("zbar", 1).is_zero()


def test_structural_zero():
    a = ScalarField("(z1+1)^2")
    b = ScalarField("z1^2 + 2*z1 + 1")
    assert (a - b).is_zero()


def test_exterior_derivative_closed():
    w = Form("z1*dz1", 1)
    assert w.d().is_zero()


def test_wedge_degree():
    a = Form("dz1", 2)
    b = Form("dzbar2", 2)
    assert a.wedge(b).degree() == 2


def test_cauchy_integral():
    w = Form("z1^-1 * dz1", 1)
    val = integrate_circle(w, radius=1.0)
    assert abs(val - 2j * math.pi) < 1e-9
    # radius invariance
    assert abs(integrate_circle(w, radius=0.5) - val) < 1e-9


def test_pullback():
    w = Form("z1*dz2", 2)
    pulled = w.pullback(["z1^5", "z1^6+z1^7"], 1)
    z = 0.7 + 0.1j
    # f*(z1 dz2) = z^5 (6 z^5 + 7 z^6) dz
    want = z**5 * (6 * z**5 + 7 * z**6)
    got = pulled.eval([z], [[1.0 + 0j]])
    assert abs(got - want) < 1e-10


def test_error_mapping():
    with pytest.raises(ExcalcError):
        ScalarField("z1 +* 2")
