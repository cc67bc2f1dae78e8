from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ordgap.dist import make_builtin
from ordgap.gaps import GapValue, Method, r_direct
from ordgap.monotone import (
    GapSequence,
    Status,
    check_all,
    difference_table,
    strictness_check,
)

from .conftest import IHR_ZOO, LOG2


def seq_of(values, err=0.0, n_min=2):
    return GapSequence(n_min, tuple(values), tuple([err] * len(values)))


# -- difference tables ---------------------------------------------------------


def test_difference_table_constant():
    assert difference_table(seq_of([1, 1, 1, 1]), 2) == [[1, 1, 1, 1], [0, 0, 0], [0, 0]]


def test_difference_table_harmonic():
    rows = difference_table(seq_of([1 / 3, 1 / 4, 1 / 5]), 1)
    np.testing.assert_allclose(rows[1], [-1 / 12, -1 / 20], rtol=1e-15)


def test_difference_table_geometric():
    rows = difference_table(seq_of([1 / 4, 1 / 8, 1 / 16]), 2)
    assert rows[2] == [1 / 16]


def test_difference_table_matches_exact_rationals():
    vals = [Fraction(1, n + 1) for n in range(2, 12)]
    rows = difference_table([float(v) for v in vals], 6)
    exact = [vals]
    for _ in range(6):
        exact.append([b - a for a, b in zip(exact[-1], exact[-1][1:])])
    # absolute rounding bound: each subtraction level at most doubles it
    for k in range(7):
        np.testing.assert_allclose(rows[k], [float(v) for v in exact[k]],
                                   rtol=0, atol=2**k * 2 * np.finfo(float).eps / 3)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=2, max_size=15),
       st.data())
def test_difference_table_row_invariant(values, data):
    order = data.draw(st.integers(0, len(values) - 1))
    rows = difference_table(values, order)
    assert len(rows) == order + 1
    for k in range(1, order + 1):
        assert len(rows[k]) == len(values) - k
        for j, d in enumerate(rows[k]):
            assert d == rows[k - 1][j + 1] - rows[k - 1][j]


@pytest.mark.parametrize("order", [-1, 4])
def test_difference_table_order_bounds(order):
    with pytest.raises(ValueError):
        difference_table([1.0, 2.0, 3.0, 4.0], order)


# -- GapSequence ---------------------------------------------------------------


def test_gap_sequence_validation():
    with pytest.raises(ValueError):
        GapSequence(2, (1.0,), (0.0,))
    with pytest.raises(ValueError):
        GapSequence(2, (1.0, 2.0), (0.0,))
    with pytest.raises(ValueError):
        GapSequence(2, (1.0, 2.0), (0.0, -1.0))


def test_gap_sequence_from_gap_values():
    gaps = [GapValue(n, n - 1, 1 / (n + 1), Method.DIRECT, 1e-12) for n in range(3, 7)]
    seq = GapSequence.from_gap_values(gaps)
    assert seq.n_min == 3 and seq.ns == [3, 4, 5, 6] and len(seq) == 4
    with pytest.raises(ValueError):
        GapSequence.from_gap_values([gaps[0], gaps[2]])


# -- check_all -----------------------------------------------------------------


def test_constant_sequence_passes_everything():
    rep = check_all(seq_of([1.0] * 5))
    assert rep.decreasing.status is Status.PASS
    assert rep.decreasing.worst_margin == 0.0
    assert all(v.status is Status.PASS for v in rep.cm_orders)
    assert rep.completely_monotone_to_order == 4
    assert not rep.any_fail


def test_uniform_sequence_log_convex():
    rep = check_all(seq_of([1 / 3, 1 / 4, 1 / 5, 1 / 6]))
    assert rep.log_convex.status is Status.PASS
    # tightest triple is (1/4, 1/5, 1/6)
    assert rep.log_convex.worst_margin == pytest.approx(1 / 24 - 1 / 25, rel=1e-12)
    assert rep.decreasing.status is Status.PASS
    assert rep.ratio_monotone.status is Status.PASS


def test_increase_beyond_floor_fails_with_witness():
    rep = check_all(seq_of([1.0, 0.9, 0.95, 0.8], err=1e-6))
    assert rep.decreasing.status is Status.FAIL
    assert rep.decreasing.witness == {"n": 3, "R_n": 0.9, "R_n_plus_1": 0.95}
    assert rep.any_fail


def test_increase_within_floor_is_inconclusive():
    rep = check_all(seq_of([1.0, 0.9, 0.9 + 1e-7, 0.8], err=1e-6))
    assert rep.decreasing.status is Status.INCONCLUSIVE
    assert rep.decreasing.witness["n"] == 3
    assert rep.decreasing.ok


def test_floors_double_per_order():
    rep = check_all(seq_of([1.0, 0.5, 0.3, 0.2, 0.15], err=1e-9), max_order=4)
    assert rep.error_floor_per_order == tuple(2**k * 1e-9 for k in range(5))


def test_floor_never_below_rounding():
    v = [0.5, 0.25, 0.125]
    rep = check_all(seq_of(v, err=0.0))
    assert rep.error_floor_per_order[0] == pytest.approx(4 * np.finfo(float).eps * 0.5)


def test_max_order_clipped_to_length():
    rep = check_all(seq_of([1.0, 0.5, 0.25]), max_order=8)
    assert len(rep.cm_orders) == 3


def test_cm_order_reported_before_first_fail():
    # convex-violating but decreasing: order 2 fails
    rep = check_all(seq_of([1.0, 0.9, 0.7, 0.4, 0.0]))
    assert rep.cm_orders[1].status is Status.PASS
    assert rep.cm_orders[2].status is Status.FAIL
    assert rep.completely_monotone_to_order == 1
    assert rep.difference_monotone.status is Status.FAIL


def test_exploratory_flag_for_n1():
    rep = check_all(seq_of([1.0, 0.5, 0.3], n_min=1))
    assert rep.exploratory and rep.notes
    assert not check_all(seq_of([1.0, 0.5, 0.3])).exploratory


def test_ratio_check_with_nonpositive_terms_is_inconclusive():
    rep = check_all(seq_of([1.0, 0.0, 0.0]))
    assert rep.ratio_monotone.status is Status.INCONCLUSIVE


def test_report_json_round_trip():
    rep = check_all(seq_of([1.0, 0.9, 0.95, 0.8], err=1e-6), max_order=3)
    d = json.loads(rep.to_json())
    assert d["decreasing"]["status"] == "fail"
    assert d["decreasing"]["witness"]["n"] == 3
    assert [c["order"] for c in d["cm_orders"]] == [0, 1, 2, 3]
    assert d["error_floor_per_order"] == list(rep.error_floor_per_order)


def test_json_replaces_nonfinite_with_null():
    rep = check_all(seq_of([1.0, 0.5]))
    d = json.loads(rep.to_json())
    assert d["log_convex"]["worst_margin"] is None


def test_ihr_zoo_sequences_never_fail(ihr_dist):
    gaps = [r_direct(ihr_dist, n) for n in range(2, 21)]
    rep = check_all(GapSequence.from_gap_values(gaps), max_order=8)
    assert not rep.any_fail, rep.to_json()


# -- strictness ----------------------------------------------------------------


def _seq(spec, ns):
    d = make_builtin(spec)
    return d, GapSequence.from_gap_values([r_direct(d, n) for n in ns])


def test_exponential_is_not_strict():
    d, seq = _seq("exp:lambda=1", range(2, 10))
    rep = strictness_check(seq, d.is_shifted_exponential, d.is_truncated_exponential)
    assert not rep.strict_decrease.observed_strict
    assert rep.strict_decrease.observed_equal
    assert rep.consistent


def test_weibull_is_strict():
    d, seq = _seq("weibull:shape=2", range(3, 16))
    rep = strictness_check(seq, d.is_shifted_exponential, d.is_truncated_exponential)
    assert rep.strict_decrease.observed_strict
    assert rep.strict_ratio_decrease.observed_strict
    assert rep.strict_difference_decrease.observed_strict
    assert rep.consistent


def test_truncated_exponential_ratios_constant():
    d, seq = _seq(f"truncexp:lambda=1,L=0,M={LOG2!r}", range(2, 15))
    rep = strictness_check(seq, d.is_shifted_exponential, d.is_truncated_exponential)
    assert rep.strict_decrease.observed_strict
    assert rep.strict_ratio_decrease.observed_equal
    assert rep.consistent
    ratios = np.asarray(seq.values[:-1]) / np.asarray(seq.values[1:])
    np.testing.assert_allclose(ratios, 2.0, rtol=1e-9)


def test_misclassified_family_is_inconsistent():
    _, seq = _seq("weibull:shape=2", range(3, 10))
    assert not strictness_check(seq, True, False).consistent


def test_strictness_needs_three_terms():
    with pytest.raises(ValueError):
        strictness_check(seq_of([1.0, 0.5]), False, False)


@pytest.mark.parametrize("spec", IHR_ZOO)
def test_strictness_consistent_across_zoo(spec):
    d, seq = _seq(spec, range(2, 15))
    assert strictness_check(seq, d.is_shifted_exponential, d.is_truncated_exponential).consistent


def test_nan_free_margins_for_exact_sequences():
    rep = check_all(seq_of([2.0**-n for n in range(2, 12)]))
    for v in (rep.decreasing, rep.ratio_monotone, rep.log_convex, *rep.cm_orders):
        assert math.isfinite(v.worst_margin)
        assert v.status is not Status.FAIL
