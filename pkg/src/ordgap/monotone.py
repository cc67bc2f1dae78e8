"""Shape checks on computed gap sequences.

Numerical values carry quadrature or sampling error, and forward differences
of order ``k`` amplify it by up to ``2^k``.  Each check therefore returns a
tri-state verdict: ``pass`` when the inequality holds outright, ``fail`` only
when it is violated by more than the error floor, ``inconclusive`` in between.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .gaps import GapValue, Method

__all__ = [
    "GapSequence",
    "MonotonicityReport",
    "Status",
    "StrictnessReport",
    "Verdict",
    "check_all",
    "difference_table",
    "strictness_check",
]

DEFAULT_MAX_ORDER = 8
_EPS = np.finfo(float).eps


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class GapSequence:
    """``R_{n_min}, R_{n_min+1}, ...`` with matching error estimates."""

    n_min: int
    values: tuple[float, ...]
    err_estimates: tuple[float, ...]
    source: Method | str = Method.DIRECT

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        object.__setattr__(self, "err_estimates", tuple(float(e) for e in self.err_estimates))
        if len(self.values) != len(self.err_estimates):
            raise ValueError("values and err_estimates differ in length")
        if len(self.values) < 2:
            raise ValueError("a gap sequence needs at least two terms")
        if any(e < 0 for e in self.err_estimates):
            raise ValueError("error estimates must be nonnegative")

    @classmethod
    def from_gap_values(cls, gaps: Sequence[GapValue]) -> "GapSequence":
        ns = [g.n for g in gaps]
        if ns != list(range(int(ns[0]), int(ns[0]) + len(ns))):
            raise ValueError("gap values must be for consecutive n")
        return cls(int(ns[0]), tuple(g.value for g in gaps),
                   tuple(g.err_estimate for g in gaps), gaps[0].method)

    @property
    def ns(self) -> list[int]:
        return list(range(self.n_min, self.n_min + len(self.values)))

    def __len__(self) -> int:
        return len(self.values)


def difference_table(seq: GapSequence | Sequence[float], max_order: int) -> list[list[float]]:
    """Rows ``Delta^0 .. Delta^max_order`` of forward differences.

    Row ``k`` has ``len(seq) - k`` entries and row ``k`` entry ``j`` is
    exactly ``row[k-1][j+1] - row[k-1][j]``.

    >>> difference_table([1.0, 1.0, 1.0, 1.0], 2)
    [[1.0, 1.0, 1.0, 1.0], [0.0, 0.0, 0.0], [0.0, 0.0]]
    """
    values = list(seq.values if isinstance(seq, GapSequence) else map(float, seq))
    if not 0 <= max_order < len(values):
        raise ValueError(f"max_order must be in [0, {len(values) - 1}], got {max_order}")
    rows = [values]
    for _ in range(max_order):
        prev = rows[-1]
        rows.append([prev[j + 1] - prev[j] for j in range(len(prev) - 1)])
    return rows


@dataclass(frozen=True)
class Verdict:
    status: Status
    worst_margin: float
    floor: float
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.status is not Status.FAIL


def _verdict(margins: np.ndarray, floors: np.ndarray, witness_of) -> Verdict:
    """Margins are ``>= 0`` when the inequality holds."""
    if margins.size == 0:
        return Verdict(Status.INCONCLUSIVE, math.nan, math.nan)
    scaled = margins + floors
    j = int(np.argmin(margins))
    worst = float(margins[j])
    if np.any(scaled < 0):
        jf = int(np.argmin(scaled))
        return Verdict(Status.FAIL, float(margins[jf]), float(floors[jf]), witness_of(jf))
    if worst < 0:
        return Verdict(Status.INCONCLUSIVE, worst, float(floors[j]), witness_of(j))
    return Verdict(Status.PASS, worst, float(floors[j]))


@dataclass(frozen=True)
class MonotonicityReport:
    n_min: int
    length: int
    decreasing: Verdict
    difference_monotone: Verdict
    ratio_monotone: Verdict
    log_convex: Verdict
    cm_orders: tuple[Verdict, ...]
    completely_monotone_to_order: int
    error_floor_per_order: tuple[float, ...]
    exploratory: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def any_fail(self) -> bool:
        checks = (self.decreasing, self.difference_monotone, self.ratio_monotone,
                  self.log_convex, *self.cm_orders)
        return any(v.status is Status.FAIL for v in checks)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["cm_orders"] = [dict(order=k, **asdict(v)) for k, v in enumerate(self.cm_orders)]

        def clean(o):
            if isinstance(o, dict):
                return {k: clean(v) for k, v in o.items()}
            if isinstance(o, (list, tuple)):
                return [clean(v) for v in o]
            if isinstance(o, Enum):
                return o.value
            if isinstance(o, float) and not math.isfinite(o):
                return None
            return o

        return clean(d)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _noise(seq: GapSequence) -> np.ndarray:
    v = np.asarray(seq.values)
    return np.maximum(np.asarray(seq.err_estimates), 4 * _EPS * np.abs(v))


def check_all(seq: GapSequence, max_order: int = DEFAULT_MAX_ORDER) -> MonotonicityReport:
    """Run decrease, convexity, log-convexity and complete-monotonicity checks.

    The floor for order-``k`` differences is ``2^k`` times the largest
    per-term error.  Ratio and log-convexity floors propagate the three
    per-term errors involved to first order.
    """
    v = np.asarray(seq.values)
    e = _noise(seq)
    ns = seq.ns
    max_order = min(max_order, len(v) - 1)
    base = float(e.max())
    floors = tuple(float(2**k * base) for k in range(max_order + 1))
    rows = difference_table(seq, max_order)

    def triple(j):
        return {"n": ns[j + 1], "R_prev": float(v[j]), "R_n": float(v[j + 1]),
                "R_next": float(v[j + 2])}

    d1 = -np.asarray(rows[1]) if max_order >= 1 else np.diff(v) * -1
    decreasing = _verdict(
        d1, np.full(d1.size, 2 * base),
        lambda j: {"n": ns[j], "R_n": float(v[j]), "R_n_plus_1": float(v[j + 1])},
    )
    if len(v) >= 3:
        d2 = v[:-2] - 2 * v[1:-1] + v[2:]
        difference_monotone = _verdict(d2, np.full(d2.size, 4 * base), triple)
        a, b, c = v[:-2], v[1:-1], v[2:]
        ea, eb, ec = e[:-2], e[1:-1], e[2:]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio_margin = a / b - b / c
            ratio_floor = np.abs(a / b) * (ea / np.abs(a) + eb / np.abs(b)) + \
                np.abs(b / c) * (eb / np.abs(b) + ec / np.abs(c))
        positive = (a > 0) & (b > 0) & (c > 0)
        if np.all(positive):
            ratio_monotone = _verdict(ratio_margin, ratio_floor, triple)
        else:
            ratio_monotone = Verdict(Status.INCONCLUSIVE, math.nan, math.nan,
                                     {"reason": "nonpositive terms"})
        lc_margin = a * c - b * b
        lc_floor = ea * np.abs(c) + np.abs(a) * ec + 2 * np.abs(b) * eb + 4 * _EPS * np.abs(b * b)
        log_convex = _verdict(lc_margin, lc_floor, triple)
    else:
        none = Verdict(Status.INCONCLUSIVE, math.nan, math.nan, {"reason": "need >= 3 terms"})
        difference_monotone = ratio_monotone = log_convex = none

    cm = []
    for k in range(max_order + 1):
        row = (-1) ** k * np.asarray(rows[k])
        cm.append(_verdict(row, np.full(row.size, floors[k]),
                           lambda j, k=k: {"order": k, "n": ns[j], "value": float(row[j])}))
    cm_to = -1
    for k, verdict in enumerate(cm):
        if verdict.status is Status.FAIL:
            break
        cm_to = k

    notes = []
    exploratory = seq.n_min < 2
    if exploratory:
        notes.append("sequence starts below n=2; results including R_1 are exploratory")
    return MonotonicityReport(
        n_min=seq.n_min,
        length=len(v),
        decreasing=decreasing,
        difference_monotone=difference_monotone,
        ratio_monotone=ratio_monotone,
        log_convex=log_convex,
        cm_orders=tuple(cm),
        completely_monotone_to_order=cm_to,
        error_floor_per_order=floors,
        exploratory=exploratory,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class StrictCheck:
    expected_strict: bool
    observed_strict: bool
    observed_equal: bool

    @property
    def consistent(self) -> bool:
        if self.expected_strict:
            return self.observed_strict
        return self.observed_equal


@dataclass(frozen=True)
class StrictnessReport:
    strict_decrease: StrictCheck
    strict_difference_decrease: StrictCheck
    strict_ratio_decrease: StrictCheck

    @property
    def consistent(self) -> bool:
        return (self.strict_decrease.consistent and self.strict_difference_decrease.consistent
                and self.strict_ratio_decrease.consistent)


def strictness_check(seq: GapSequence, dist_is_shifted_exponential: bool,
                     dist_is_truncated_exponential: bool) -> StrictnessReport:
    """Compare observed strictness with the exact-family dichotomy.

    Constant sequences belong exactly to shifted exponentials and geometric
    ones exactly to truncated exponentials; every other IHR law must show
    strict decrease, strictly shrinking differences and strictly shrinking
    ratios.  A strict inequality is "observed" when every margin exceeds
    its floor; "equal" when every margin is within its floor.
    """
    if len(seq) < 3:
        raise ValueError("strictness checks need at least three terms")
    v = np.asarray(seq.values)
    e = _noise(seq)
    base = float(e.max())

    def obs(margins, floors):
        return StrictCheck(False, bool(np.all(margins > floors)),
                           bool(np.all(np.abs(margins) <= floors)))

    dec = obs(v[:-1] - v[1:], np.full(len(v) - 1, 2 * base))
    d2 = v[:-2] - 2 * v[1:-1] + v[2:]
    diff = obs(d2, np.full(d2.size, 4 * base))
    a, b, c = v[:-2], v[1:-1], v[2:]
    ea, eb, ec = e[:-2], e[1:-1], e[2:]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = obs(a / b - b / c,
                    np.abs(a / b) * (ea / np.abs(a) + eb / np.abs(b))
                    + np.abs(b / c) * (eb / np.abs(b) + ec / np.abs(c)) + 8 * _EPS * np.abs(a / b))
    shifted = dist_is_shifted_exponential
    geometric = shifted or dist_is_truncated_exponential
    return StrictnessReport(
        StrictCheck(not shifted, dec.observed_strict, dec.observed_equal),
        StrictCheck(not shifted, diff.observed_strict, diff.observed_equal),
        StrictCheck(not geometric, ratio.observed_strict, ratio.observed_equal),
    )
