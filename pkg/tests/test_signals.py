import math
from fractions import Fraction as F

import numpy as np
import pytest
from scipy.integrate import quad as scipy_quad

from nuframes import SignalSpec, catalog, evaluate, hann_bump, indicator_signal
from nuframes.signals import _spot_check
from nuframes.symfunc import Cos, Var


def _numeric_norm_sq(spec, tol=1e-12):
    a, b = float(spec.support[0]), float(spec.support[1])

    def f(x):
        v = evaluate(spec.fhat, x)
        return (v * v.conjugate()).real

    val, err = scipy_quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)
    assert err < 1e-9
    return val


def test_bump_closed_norm_matches_quadrature():
    spec = hann_bump(F(1, 64), F(1, 16))
    assert spec.norm_sq_closed == F(3, 8) * F(3, 64)
    assert abs(_numeric_norm_sq(spec) - float(spec.norm_sq_closed)) < 1e-10


def test_bump_shape():
    a, b = F(1, 4), F(3, 4)
    spec = hann_bump(a, b)
    mid = (float(a) + float(b)) / 2
    assert abs(evaluate(spec.fhat, mid) - 1.0) < 1e-15
    assert evaluate(spec.fhat, float(a)) == 0.0
    assert abs(evaluate(spec.fhat, float(b))) < 1e-15
    # vanishes outside
    assert evaluate(spec.fhat, float(a) - 0.01) == 0.0
    assert evaluate(spec.fhat, float(b) + 0.01) == 0.0
    assert spec.label == "bump(1/4,3/4)"


def test_indicator_signal():
    spec = indicator_signal(F(1, 8), F(1, 2))
    assert spec.norm_sq_closed == F(3, 8)
    assert abs(_numeric_norm_sq(spec) - 0.375) < 1e-10
    assert evaluate(spec.fhat, 0.125) == 0.0
    assert evaluate(spec.fhat, 0.5) == 1.0
    assert spec.label == "ind(1/8,1/2)"


def test_interval_validation():
    with pytest.raises(ValueError, match="a < b"):
        hann_bump(F(1, 2), F(1, 2))
    with pytest.raises(ValueError, match="a < b"):
        indicator_signal(F(1, 2), F(1, 4))


def test_spot_check_rejects_leaky_support():
    bad = SignalSpec(Cos(Var()), (F(0), F(1)), "leaky")
    with pytest.raises(ValueError, match="outside declared support"):
        _spot_check(bad)


def test_negative_frequency_supports_allowed():
    spec = hann_bump(F(-1, 2), F(-1, 4))
    assert spec.support == (F(-1, 2), F(-1, 4))
    assert abs(evaluate(spec.fhat, -0.375) - 1.0) < 1e-15
    assert evaluate(spec.fhat, 0.1) == 0.0


def test_catalog():
    specs = catalog()
    assert len(specs) == 4
    labels = [s.label for s in specs]
    assert labels == [
        "bump(1/64,1/16)",
        "bump(9/64,31/64)",
        "ind(1/8,1/2)",
        "bump(1/4,2)",
    ]
    for s in specs:
        a, b = s.support
        assert 0 < a < b
        assert s.norm_sq_closed is not None
        assert abs(_numeric_norm_sq(s) - float(s.norm_sq_closed)) < 1e-9


def test_bump_peak_normalization_scipy_crosscheck():
    """The closed form (3/8)(b-a) holds for an arbitrary non-dyadic window."""
    spec = hann_bump(F(1, 3), F(6, 7))
    want = float(F(3, 8) * (F(6, 7) - F(1, 3)))
    assert abs(_numeric_norm_sq(spec) - want) < 1e-10
