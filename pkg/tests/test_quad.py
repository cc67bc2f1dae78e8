import math

import numpy as np
import pytest

from ordgap._quad import GAUSS_WEIGHTS, KRONROD_WEIGHTS, NODES, QuadratureError, integrate


def test_rule_weights_sum_to_two():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert np.all(np.diff(NODES) > 0)


@pytest.mark.parametrize("deg", [0, 5, 19, 30])
def test_monomials(deg):
    v, err = integrate(lambda x: x**deg, [0.0, 1.0])
    assert v == pytest.approx(1.0 / (deg + 1), rel=1e-13)
    assert err < 1e-10


def test_peaked_integrand_with_breakpoints():
    v, _ = integrate(lambda x: np.exp(-(x**2) * 1e4), [-1.0, 0.0, 1.0])
    assert v == pytest.approx(math.sqrt(math.pi) / 100, rel=1e-10)


def test_oscillatory():
    v, _ = integrate(np.cos, [0.0, 50.0])
    assert v == pytest.approx(math.sin(50.0), abs=1e-12)


def test_subdivision_limit():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.sin(1.0 / x), [1e-6, 1.0], rel_tol=1e-14, max_subdivisions=30)


def test_nonfinite_integrand_rejected():
    with pytest.raises(QuadratureError):
        integrate(lambda x: np.where(x > 0.3, np.nan, 1.0), [0.0, 1.0])


def test_infinite_limits_rejected():
    with pytest.raises(ValueError):
        integrate(np.exp, [0.0, np.inf])
