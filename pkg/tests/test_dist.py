import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordgap.approx import oscillating_hazard_dist
from ordgap.dist import (
    DistributionDomainError,
    DistributionParseError,
    SupportBounds,
    check_ihr,
    detect_support,
    from_hazard,
    hazard_table,
    make_builtin,
    parse_spec,
    probe,
    quantile_grid,
    weibull,
)

from .conftest import IHR_ZOO, LOG2

ALL_ZOO = IHR_ZOO + ["weibull:shape=0.5", "oscexp:eps=0.5", "oscexp:eps=0.1"]


def test_exp_example():
    d = make_builtin("exp:lambda=1,L=0")
    x = np.linspace(0.0, 30.0, 31)
    np.testing.assert_allclose(d.log_survival(x), x, atol=1e-14)
    np.testing.assert_array_equal(d.inverse_hazard(x), 1.0)
    assert d.bounds == SupportBounds(0.0, math.inf, 0.0)


def test_uniform_example():
    d = make_builtin("uniform:a=0,b=1")
    x = np.linspace(0.0, 0.99, 12)
    np.testing.assert_allclose(d.cdf(x), x, atol=1e-15)
    np.testing.assert_allclose(d.inverse_hazard(x), 1.0 - x, atol=1e-15)
    assert d.bounds == SupportBounds(0.0, 1.0, 0.0)


def test_truncexp_atom():
    d = make_builtin("truncexp:lambda=1,L=0,M=0.693147180559945")
    assert d.bounds.survival_at_M_minus == pytest.approx(0.5, abs=1e-14)
    assert d.bounds.has_atom
    assert d.is_truncated_exponential and not d.is_shifted_exponential
    assert d.quantile(np.array([0.7]))[0] == d.M


@pytest.mark.parametrize("text", ["exp:lambda=0", "exp:lambda=-1", "truncexp:L=1,M=1",
                                  "weibull:shape=0", "weibull:shape=1,scale=-2",
                                  "uniform:a=1,b=0", "gompertz:b=0", "oscexp:eps=0",
                                  "oscexp:eps=1,base=1"])
def test_domain_errors(text):
    with pytest.raises(DistributionDomainError):
        make_builtin(text)


@pytest.mark.parametrize("text", ["", "exp:", "exp:lambda", "exp:lambda=x", "foo:a=1",
                                  "exp:mu=2", "weibull", "exp:lambda=1,,L=0"])
def test_parse_errors(text):
    with pytest.raises(DistributionParseError):
        make_builtin(text)


def test_parse_defaults():
    assert parse_spec("weibull:shape=2") == ("weibull", {"scale": 1.0, "L": 0.0, "shape": 2.0})
    assert parse_spec(" exp ") == ("exp", {"lambda": 1.0, "L": 0.0})


@pytest.mark.parametrize("text", ALL_ZOO)
def test_zoo_invariants(text):
    d = make_builtin(text)
    x = quantile_grid(d, 200)
    F = d.cdf(x)
    assert np.all((F >= 0) & (F <= 1))
    assert np.all(np.diff(F) >= 0)
    phi = d.log_survival(x)
    live = F < 1
    np.testing.assert_allclose(phi[live], -np.log1p(-F[live]), rtol=1e-10, atol=1e-10)
    lam, mu = d.hazard(x), d.inverse_hazard(x)
    fin = np.isfinite(lam) & np.isfinite(mu) & (lam > 0)
    np.testing.assert_allclose((lam * mu)[fin], 1.0, atol=1e-10)
    # survival computed directly, not as 1 - F
    np.testing.assert_allclose(d.survival(x), np.exp(-phi), rtol=1e-14)


@pytest.mark.parametrize("text", ALL_ZOO)
def test_quantile_roundtrip(text):
    d = make_builtin(text)
    p = np.linspace(0.005, 0.995, 100)
    p = p[p < d.cdf_at_M_minus]
    x = d.quantile(p)
    np.testing.assert_allclose(d.quantile(d.cdf(x)), x, atol=1e-8, rtol=1e-8)


@settings(max_examples=40, deadline=None)
@given(shape=st.floats(0.3, 5.0), scale=st.floats(0.1, 10.0), p=st.floats(1e-6, 1 - 1e-6))
def test_weibull_quantile_cdf_property(shape, scale, p):
    # L = 0 keeps x well conditioned; a shift only adds rounding in x
    d = weibull(shape, scale)
    x = d.quantile(np.array([p]))
    assert d.cdf(x)[0] == pytest.approx(p, rel=1e-9, abs=1e-12)


def test_probe_examples(expo, unif, trunc):
    r = probe(expo, 1.0)
    assert r.F == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert r.F == pytest.approx(0.632120558, abs=1e-9)
    assert (r.phi, r.inverse_hazard, r.in_support) == (1.0, 1.0, True)
    r = probe(unif, 0.25)
    assert r.hazard == pytest.approx(1 / 0.75, rel=1e-14)
    assert r.inverse_hazard == pytest.approx(0.75, rel=1e-14)
    r = probe(trunc, 2.0)
    assert r.F == 1.0 and not r.in_support and r.inverse_hazard == 0.0
    r = probe(expo, -1.0)
    assert r.F == 0.0 and not r.in_support and math.isnan(r.hazard)
    with pytest.raises(ValueError):
        probe(expo, math.inf)


def test_from_hazard_constant_matches_exp():
    d = from_hazard(lambda x: 2.0, 0.0)
    ref = make_builtin("exp:lambda=2,L=0")
    x = np.linspace(0.0, 8.0, 41)
    np.testing.assert_allclose(d.cdf(x), ref.cdf(x), atol=1e-10)
    p = np.array([0.1, 0.5, 0.9, 0.999])
    np.testing.assert_allclose(d.quantile(p), ref.quantile(p), atol=1e-10)


def test_from_hazard_linear_is_weibull2():
    d = from_hazard(lambda x: 2.0 * x, 0.0)
    x = np.linspace(0.0, 4.0, 17)
    np.testing.assert_allclose(d.cdf(x), 1.0 - np.exp(-(x**2)), atol=1e-10)
    assert check_ihr(d).is_ihr


def test_from_hazard_recovers_hazard():
    hz = lambda x: 1.0 + np.sin(x) ** 2 + 0.1 * x  # noqa: E731
    d = from_hazard(hz, 0.0)
    for x in (0.1, 1.0, 3.7, 9.0):
        assert probe(d, x).hazard == pytest.approx(hz(x), abs=1e-6)


def test_from_hazard_oscillating_roundtrip():
    eps = 0.5
    osc = oscillating_hazard_dist(eps)
    d = from_hazard(osc.hazard, 0.0)
    for x in (0.5, 3.0, 10.0, 25.0):
        r = probe(d, x)
        assert r.inverse_hazard == pytest.approx(2 + math.cos(eps * math.log1p(-r.F)), abs=1e-6)


def test_from_hazard_finite_M_atom():
    d = from_hazard(lambda x: 1.0, 0.0, LOG2)
    assert d.bounds.survival_at_M_minus == pytest.approx(0.5, abs=1e-12)
    with np.errstate(divide="ignore"):
        u = from_hazard(lambda x: 1.0 / (1.0 - x), 0.0, 1.0)
    assert u.bounds.survival_at_M_minus == 0.0
    np.testing.assert_allclose(u.cdf(np.array([0.2, 0.7])), [0.2, 0.7], atol=1e-10)


def test_from_hazard_rejects_bad_hazard():
    with pytest.raises(DistributionDomainError):
        from_hazard(lambda x: -1.0, 0.0)
    with pytest.raises(DistributionDomainError):
        from_hazard(lambda x: np.exp(-x), 0.0)  # integrable: defective law


@pytest.mark.parametrize("text", IHR_ZOO + ["weibull:shape=1", "gompertz:b=0.5,c=2"])
def test_check_ihr_true(text):
    assert check_ihr(make_builtin(text)).is_ihr


@pytest.mark.parametrize("text", ["weibull:shape=0.5", "weibull:shape=0.9", "oscexp:eps=0.5"])
def test_check_ihr_false(text):
    v = check_ihr(make_builtin(text))
    assert not v.is_ihr
    a, b, viol = v.witness
    assert a < b and viol > v.tolerance


def test_check_ihr_grid_size():
    with pytest.raises(ValueError):
        check_ihr(make_builtin("exp"), grid_size=4)


def test_hazard_table_linear(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("x,hazard\n0,1\n1,2\n3,2.5\n")
    d = make_builtin(f"hazardfile:path={path}")
    # phi(2) = 1.5 + (2 + 2.25)/2
    assert d.log_survival(np.array([2.0]))[0] == pytest.approx(1.5 + 2.125, abs=1e-14)
    assert d.hazard(np.array([0.5]))[0] == pytest.approx(1.5)
    assert d.mu_atoms == ()
    p = np.array([0.1, 0.6, 0.99, 0.9999])
    np.testing.assert_allclose(d.cdf(d.quantile(p)), p, rtol=1e-12)
    assert check_ihr(d).is_ihr


def test_hazard_table_step_atoms():
    d = hazard_table(np.array([0.0, 1.0, 2.0]), np.array([1.0, 2.0, 4.0]), interp="step")
    assert d.mu_atoms == ((1.0, 0.5), (2.0, 0.25))
    assert d.log_survival(np.array([1.5]))[0] == pytest.approx(2.0)


def test_hazard_table_validation(tmp_path):
    with pytest.raises(DistributionDomainError):
        hazard_table(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
    with pytest.raises(DistributionDomainError):
        hazard_table(np.array([0.0, 1.0]), np.array([1.0, -1.0]))
    with pytest.raises(DistributionParseError):
        make_builtin(f"hazardfile:path={tmp_path / 'missing.csv'}")


def test_detect_support():
    L, M = detect_support(make_builtin("uniform:a=-1,b=3").cdf)
    assert L == pytest.approx(-1.0, abs=1e-12) and M == pytest.approx(3.0, abs=1e-12)
    L, M = detect_support(make_builtin("exp:lambda=1,L=0.5").cdf, start=1.0)
    assert L == pytest.approx(0.5, abs=1e-12)
    # 1 - F is only resolved to ~1e-16 absolute near the 1e-14 threshold
    assert M == pytest.approx(-math.log(1e-14) + 0.5, abs=0.05)


def test_spec_is_immutable(expo):
    with pytest.raises(AttributeError):
        expo.name = "other"
