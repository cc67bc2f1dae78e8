"""Continuous lifetime-type distributions described through their hazard rate.

Every distribution is a :class:`DistributionSpec`: a frozen bundle of
vectorized callables for the CDF ``F``, the survival ``1 - F``, the log
survival ``phi = -log(1 - F)``, the hazard ``lambda = phi'`` and its
reciprocal, the inverse hazard ``mu``, plus a quantile function and the
support ``(L, M)``.

The callables evaluate their closed-form expressions on the closure of
``(L, M)``.  Conventions outside the support (``F = 0`` left of ``L``,
``F = 1`` from ``M`` on, ``mu(M) = 0``) are applied by :func:`probe`.
"""

from __future__ import annotations

import csv
import functools
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

import numpy as np
from scipy import integrate, optimize

__all__ = [
    "DistributionSpec",
    "DistributionError",
    "DistributionParseError",
    "DistributionDomainError",
    "IhrVerdict",
    "ProbeRecord",
    "SupportBounds",
    "ZOO",
    "check_ihr",
    "detect_support",
    "exponential",
    "from_hazard",
    "gompertz",
    "hazard_table",
    "make_builtin",
    "parse_spec",
    "probe",
    "truncated_exponential",
    "uniform",
    "weibull",
]

ArrayFn = Callable[[np.ndarray], np.ndarray]

SHIFTED_EXPONENTIAL = "shifted_exponential"
TRUNCATED_EXPONENTIAL = "truncated_exponential"


class DistributionError(ValueError):
    """Base class for distribution construction failures."""


class DistributionParseError(DistributionError):
    """Malformed distribution mini-language text."""


class DistributionDomainError(DistributionError):
    """Parameters outside the admissible domain."""


@dataclass(frozen=True)
class SupportBounds:
    """Support ``(L, M)`` and the survival mass ``1 - F(M-)`` sitting at ``M``."""

    L: float
    M: float
    survival_at_M_minus: float = 0.0

    def __post_init__(self) -> None:
        if not self.L < self.M:
            raise DistributionDomainError(f"need L < M, got L={self.L}, M={self.M}")
        s = self.survival_at_M_minus
        if not 0.0 <= s < 1.0:
            raise DistributionDomainError(f"survival at M- must lie in [0, 1), got {s}")
        if s > 0 and math.isinf(self.M):
            raise DistributionDomainError("an atom at M requires finite M")

    @property
    def has_atom(self) -> bool:
        return self.survival_at_M_minus > 0.0


@dataclass(frozen=True, eq=False)
class DistributionSpec:
    """Immutable evaluable model of a distribution on ``(L, M]``.

    Attributes
    ----------
    name : str
        Identification string, e.g. ``"weibull:shape=2,scale=1,L=0"``.
    cdf, survival, log_survival, hazard, inverse_hazard, quantile : callable
        Vectorized functions of a float array.
    bounds : SupportBounds
    inverse_hazard_slope : callable or None
        Analytic ``mu'``; ``None`` means callers differentiate numerically.
    mu_atoms : tuple of (x, mass)
        Interior atoms of the measure ``d(-mu)``, i.e. jumps of ``mu`` at
        kinks of ``phi``.
    kinks : tuple of float
        Points where ``mu'`` may jump; used as quadrature panel edges.
    family : str
        ``"shifted_exponential"``, ``"truncated_exponential"`` or ``"other"``;
        the exact-form classification used for strictness checks.
    params : mapping
        Parsed parameters, for reporting.
    """

    name: str
    cdf: ArrayFn
    survival: ArrayFn
    log_survival: ArrayFn
    hazard: ArrayFn
    inverse_hazard: ArrayFn
    quantile: ArrayFn
    bounds: SupportBounds
    inverse_hazard_slope: ArrayFn | None = None
    mu_atoms: tuple[tuple[float, float], ...] = ()
    kinks: tuple[float, ...] = ()
    family: str = "other"
    params: Mapping[str, float | str] = field(default_factory=dict)

    @property
    def L(self) -> float:
        return self.bounds.L

    @property
    def M(self) -> float:
        return self.bounds.M

    @property
    def cdf_at_M_minus(self) -> float:
        return 1.0 - self.bounds.survival_at_M_minus

    def mu_at_M_minus(self, tail_mass: float = 1e-12) -> float:
        """``mu(M-)``; for ``M = inf`` the proxy ``mu(Q(1 - tail_mass))``."""
        if math.isinf(self.M):
            x = float(self.quantile(np.array([1.0 - tail_mass]))[0])
        else:
            x = float(np.nextafter(self.M, -np.inf))
        return float(self.inverse_hazard(np.array([x]))[0])

    @property
    def is_shifted_exponential(self) -> bool:
        return self.family == SHIFTED_EXPONENTIAL

    @property
    def is_truncated_exponential(self) -> bool:
        return self.family == TRUNCATED_EXPONENTIAL

    def __repr__(self) -> str:
        return f"DistributionSpec({self.name!r})"


def _arr(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _from_phi(
    name: str,
    phi: ArrayFn,
    hazard: ArrayFn,
    inverse_hazard: ArrayFn,
    quantile: ArrayFn,
    bounds: SupportBounds,
    slope: ArrayFn | None,
    **kw,
) -> DistributionSpec:
    """Assemble a spec from ``phi`` given on ``(L, M)``."""
    L, M = bounds.L, bounds.M

    def log_survival(x):
        x = _arr(x)
        with np.errstate(all="ignore"):
            out = np.where(x <= L, 0.0, phi(np.clip(x, L, M)))
        return np.where(x >= M, np.inf, out)

    def survival(x):
        return np.exp(-log_survival(x))

    def cdf(x):
        return -np.expm1(-log_survival(x))

    return DistributionSpec(
        name=name,
        cdf=cdf,
        survival=survival,
        log_survival=log_survival,
        hazard=hazard,
        inverse_hazard=inverse_hazard,
        quantile=quantile,
        bounds=bounds,
        inverse_hazard_slope=slope,
        **kw,
    )


def _check_p(p) -> np.ndarray:
    p = _arr(p)
    if np.any((p < 0) | (p > 1)):
        raise ValueError("probabilities must lie in [0, 1]")
    return p


# ---------------------------------------------------------------------------
# built-in zoo


def exponential(lam: float = 1.0, L: float = 0.0) -> DistributionSpec:
    """Shifted exponential: constant hazard ``lam`` on ``[L, inf)``."""
    if not lam > 0 or not math.isfinite(lam):
        raise DistributionDomainError(f"exp requires 0 < lambda < inf, got {lam}")
    if not math.isfinite(L):
        raise DistributionDomainError("exp requires finite L")

    def quantile(p):
        return L - np.log1p(-_check_p(p)) / lam

    return _from_phi(
        f"exp:lambda={lam!r},L={L!r}",
        phi=lambda x: lam * (x - L),
        hazard=lambda x: np.full_like(_arr(x), lam),
        inverse_hazard=lambda x: np.full_like(_arr(x), 1.0 / lam),
        quantile=quantile,
        bounds=SupportBounds(L, math.inf),
        slope=lambda x: np.zeros_like(_arr(x)),
        family=SHIFTED_EXPONENTIAL,
        params={"lambda": lam, "L": L},
    )


def truncated_exponential(lam: float, L: float, M: float) -> DistributionSpec:
    """Law of ``min(M, L + Y / lam)`` with ``Y`` standard exponential."""
    if not lam > 0 or not math.isfinite(lam):
        raise DistributionDomainError(f"truncexp requires 0 < lambda < inf, got {lam}")
    if not (math.isfinite(L) and math.isfinite(M)) or not L < M:
        raise DistributionDomainError(f"truncexp requires finite L < M, got L={L}, M={M}")
    tail = math.exp(-lam * (M - L))
    f_m = -math.expm1(-lam * (M - L))

    def quantile(p):
        p = _check_p(p)
        with np.errstate(divide="ignore"):
            x = L - np.log1p(-p) / lam
        return np.where(p >= f_m, M, np.minimum(x, M))

    return _from_phi(
        f"truncexp:lambda={lam!r},L={L!r},M={M!r}",
        phi=lambda x: lam * (x - L),
        hazard=lambda x: np.full_like(_arr(x), lam),
        inverse_hazard=lambda x: np.full_like(_arr(x), 1.0 / lam),
        quantile=quantile,
        bounds=SupportBounds(L, M, tail),
        slope=lambda x: np.zeros_like(_arr(x)),
        family=TRUNCATED_EXPONENTIAL,
        params={"lambda": lam, "L": L, "M": M},
    )


def uniform(a: float = 0.0, b: float = 1.0) -> DistributionSpec:
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DistributionDomainError(f"uniform requires finite a < b, got a={a}, b={b}")
    w = b - a

    def phi(x):
        return -np.log((b - x) / w)

    def hazard(x):
        with np.errstate(divide="ignore"):
            return 1.0 / (b - _arr(x))

    return _from_phi(
        f"uniform:a={a!r},b={b!r}",
        phi=phi,
        hazard=hazard,
        inverse_hazard=lambda x: b - _arr(x),
        quantile=lambda p: a + w * _check_p(p),
        bounds=SupportBounds(a, b),
        slope=lambda x: np.full_like(_arr(x), -1.0),
        params={"a": a, "b": b},
    )


def weibull(shape: float, scale: float = 1.0, L: float = 0.0) -> DistributionSpec:
    """Weibull with ``phi(x) = ((x - L) / scale) ** shape``."""
    if not shape > 0 or not scale > 0 or not math.isfinite(shape * scale):
        raise DistributionDomainError(
            f"weibull requires shape > 0 and scale > 0, got shape={shape}, scale={scale}"
        )
    if not math.isfinite(L):
        raise DistributionDomainError("weibull requires finite L")
    k, s = shape, scale

    def z(x):
        return np.maximum(_arr(x) - L, 0.0) / s

    def hazard(x):
        with np.errstate(divide="ignore"):
            return (k / s) * z(x) ** (k - 1.0)

    def inverse_hazard(x):
        with np.errstate(divide="ignore"):
            return (s / k) * z(x) ** (1.0 - k)

    def slope(x):
        with np.errstate(divide="ignore"):
            return ((1.0 - k) / k) * z(x) ** (-k)

    def quantile(p):
        return L + s * (-np.log1p(-_check_p(p))) ** (1.0 / k)

    return _from_phi(
        f"weibull:shape={k!r},scale={s!r},L={L!r}",
        phi=lambda x: z(x) ** k,
        hazard=hazard,
        inverse_hazard=inverse_hazard,
        quantile=quantile,
        bounds=SupportBounds(L, math.inf),
        slope=slope,
        family=SHIFTED_EXPONENTIAL if k == 1.0 else "other",
        params={"shape": k, "scale": s, "L": L},
    )


def gompertz(b: float = 1.0, c: float = 1.0, L: float = 0.0) -> DistributionSpec:
    """Gompertz law: hazard ``b * exp(c (x - L))`` on ``[L, inf)``."""
    if not b > 0 or not c > 0 or not math.isfinite(b * c):
        raise DistributionDomainError(f"gompertz requires b > 0 and c > 0, got b={b}, c={c}")
    if not math.isfinite(L):
        raise DistributionDomainError("gompertz requires finite L")

    def t(x):
        return c * (np.maximum(_arr(x), L) - L)

    def quantile(p):
        return L + np.log1p(-c * np.log1p(-_check_p(p)) / b) / c

    return _from_phi(
        f"gompertz:b={b!r},c={c!r},L={L!r}",
        phi=lambda x: (b / c) * np.expm1(t(x)),
        hazard=lambda x: b * np.exp(t(x)),
        inverse_hazard=lambda x: np.exp(-t(x)) / b,
        quantile=quantile,
        bounds=SupportBounds(L, math.inf),
        slope=lambda x: -(c / b) * np.exp(-t(x)),
        params={"b": b, "c": c, "L": L},
    )


def hazard_table(
    x: np.ndarray, hazard: np.ndarray, interp: str = "linear", name: str | None = None
) -> DistributionSpec:
    """Distribution from a tabulated hazard on ``[x[0], inf)``.

    ``interp="linear"`` joins the nodes linearly; ``interp="step"`` treats the
    table as right-continuous step data, so every node where the hazard jumps
    carries an atom of ``d(-mu)``.  Beyond the last node the hazard is held
    constant.
    """
    x = _arr(x)
    lam = _arr(hazard)
    if x.ndim != 1 or x.shape != lam.shape or x.size < 2:
        raise DistributionDomainError("hazard table needs two equal-length columns with >= 2 rows")
    if not np.all(np.diff(x) > 0) or not np.all(np.isfinite(x)):
        raise DistributionDomainError("hazard table x column must be strictly increasing")
    if not np.all(lam > 0) or not np.all(np.isfinite(lam)):
        raise DistributionDomainError("hazard table values must be positive and finite")
    if interp not in ("linear", "step"):
        raise DistributionDomainError(f"interp must be 'linear' or 'step', got {interp!r}")
    L = float(x[0])
    dx = np.diff(x)
    if interp == "linear":
        slopes = np.append(np.diff(lam) / dx, 0.0)
    else:
        slopes = np.zeros_like(lam)
    phi_nodes = np.concatenate([[0.0], np.cumsum(lam[:-1] * dx + 0.5 * slopes[:-1] * dx**2)])

    def seg(t):
        return np.clip(np.searchsorted(x, t, side="right") - 1, 0, x.size - 1)

    def hazard_fn(t):
        t = np.maximum(_arr(t), L)
        i = seg(t)
        return lam[i] + slopes[i] * (t - x[i])

    def phi(t):
        t = np.maximum(_arr(t), L)
        i = seg(t)
        d = t - x[i]
        return phi_nodes[i] + lam[i] * d + 0.5 * slopes[i] * d**2

    def quantile(p):
        target = -np.log1p(-_check_p(p))
        i = np.clip(np.searchsorted(phi_nodes, target, side="right") - 1, 0, x.size - 1)
        r = target - phi_nodes[i]
        with np.errstate(invalid="ignore", divide="ignore"):
            d = 2.0 * r / (lam[i] + np.sqrt(np.maximum(lam[i] ** 2 + 2.0 * slopes[i] * r, 0.0)))
        return np.where(np.isinf(target), np.inf, x[i] + d)

    atoms: tuple[tuple[float, float], ...] = ()
    if interp == "step":
        jumps = 1.0 / lam[:-1] - 1.0 / lam[1:]
        atoms = tuple((float(xi), float(j)) for xi, j in zip(x[1:], jumps) if j != 0.0)

    return _from_phi(
        name or f"hazardtable:interp={interp},rows={x.size}",
        phi=phi,
        hazard=hazard_fn,
        inverse_hazard=lambda t: 1.0 / hazard_fn(t),
        quantile=quantile,
        bounds=SupportBounds(L, math.inf),
        slope=lambda t: -slopes[seg(np.maximum(_arr(t), L))] / hazard_fn(t) ** 2,
        mu_atoms=atoms,
        kinks=tuple(float(t) for t in x[1:]),
        params={"interp": interp, "rows": int(x.size)},
    )


def _read_hazard_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    xs, hs = [], []
    try:
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].lstrip().startswith("#"):
                    continue
                try:
                    xs.append(float(row[0]))
                    hs.append(float(row[1]))
                except (ValueError, IndexError):
                    if xs:
                        raise DistributionParseError(f"{path}: bad row {row!r}") from None
                    # header line
    except OSError as exc:
        raise DistributionParseError(f"cannot read hazard file: {exc}") from exc
    return np.array(xs), np.array(hs)


# ---------------------------------------------------------------------------
# hazard-defined constructor


def _vectorize(fn: Callable) -> ArrayFn:
    try:
        out = np.asarray(fn(np.array([0.5, 1.0])), dtype=float)
        if out.shape == (2,):
            return lambda x: np.asarray(fn(_arr(x)), dtype=float) * np.ones_like(_arr(x))
    except Exception:
        pass
    vec = np.vectorize(lambda t: float(fn(t)), otypes=[float])
    return lambda x: vec(_arr(x))


def from_hazard(
    hazard_fn: Callable,
    L: float = 0.0,
    M: float = math.inf,
    name: str | None = None,
    inverse_hazard_slope: ArrayFn | None = None,
) -> DistributionSpec:
    """Build a distribution whose hazard is ``hazard_fn`` on ``(L, M)``.

    ``phi(x)`` is the integral of the hazard from ``L``; it is tabulated at
    checkpoints once, at construction, and refined between checkpoints by
    adaptive quadrature on demand.  If ``phi(M-)`` is finite the remaining
    mass ``exp(-phi(M-))`` becomes an atom at ``M``.
    """
    if not math.isfinite(L) or not L < M:
        raise DistributionDomainError(f"from_hazard needs finite L < M, got L={L}, M={M}")
    lam = _vectorize(hazard_fn)
    finite_m = math.isfinite(M)

    if finite_m:
        frac = np.concatenate([np.linspace(0.0, 0.5, 33), 1.0 - np.geomspace(0.25, 1e-12, 39)])
        nodes = L + (M - L) * frac
    else:
        nodes = L + 0.01 * np.expm1(np.arange(0, 400) * (math.log(2.0) / 4.0))
    def seg_integral(a: float, b: float) -> float:
        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                v, _ = integrate.quad(
                    lambda t: float(lam(np.array([t]))[0]), a, b,
                    epsabs=1e-14, epsrel=1e-13, limit=200,
                )
            except integrate.IntegrationWarning as exc:
                raise DistributionDomainError(
                    f"hazard not integrable on [{a!r}, {b!r}]: {exc}"
                ) from exc
        if not math.isfinite(v) or v < 0:
            raise DistributionDomainError(f"hazard not integrable on [{a!r}, {b!r}]")
        return v

    cps = [L]
    cum = [0.0]
    phi_stop = 60.0
    for a, b in zip(nodes[:-1], nodes[1:]):
        m = np.array([0.5 * (a + b)])
        lm = float(lam(m)[0])
        if not (math.isfinite(lm) and lm > 0):
            if finite_m and b > L + (M - L) * 0.75 and math.isinf(lm):
                break
            raise DistributionDomainError(
                f"hazard must be positive and finite, fails at x={m[0]!r}"
            )
        try:
            v = seg_integral(a, b)
        except DistributionDomainError:
            if finite_m and b > L + (M - L) * 0.75:
                break  # hazard blows up towards M: treat phi(M-) as infinite
            raise
        cps.append(float(b))
        cum.append(cum[-1] + v)
        if cum[-1] > phi_stop:
            break
    else:
        if not finite_m:
            raise DistributionDomainError(
                "integrated hazard stays bounded: survival does not vanish at infinity"
            )
    cps_a = np.array(cps)
    cum_a = np.array(cum)

    survival_at_m = 0.0
    if finite_m and cum_a[-1] <= phi_stop:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            rest, err = integrate.quad(
                lambda t: float(lam(np.array([t]))[0]), cps_a[-1], M,
                epsabs=1e-14, epsrel=1e-13, limit=200,
            )
        phi_m = cum_a[-1] + rest
        if math.isfinite(phi_m) and err < 1e-6 * max(1.0, phi_m) and phi_m < 700:
            survival_at_m = math.exp(-phi_m)

    def phi_scalar(t: float) -> float:
        i = int(np.searchsorted(cps_a, t, side="right") - 1)
        i = min(max(i, 0), cps_a.size - 1)
        if t == cps_a[i]:
            return float(cum_a[i])
        try:
            return float(cum_a[i] + seg_integral(float(cps_a[i]), t))
        except DistributionDomainError:
            # far tail where the survival has already underflowed
            if i == cps_a.size - 1 and cum_a[i] > phi_stop:
                return math.inf
            raise

    def phi(x):
        x = _arr(x)
        flat = np.array([phi_scalar(float(t)) for t in x.ravel()])
        return flat.reshape(x.shape)

    f_m = 1.0 - survival_at_m

    def quantile_scalar(p: float) -> float:
        if p <= 0.0:
            return L
        if p >= f_m:
            return M
        target = -math.log1p(-p)
        i = int(np.searchsorted(cum_a, target, side="right"))
        if i < cum_a.size:
            lo, hi = float(cps_a[i - 1]), float(cps_a[i])
        else:
            lo = hi = float(cps_a[-1])
            step = max(1.0, abs(hi))
            while phi_scalar(hi) < target:
                lo, hi = hi, (hi + step if not finite_m else 0.5 * (hi + M))
                step *= 2.0
        return optimize.brentq(
            lambda t: phi_scalar(t) - target, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps
        )

    def quantile(p):
        p = _check_p(p)
        flat = np.array([quantile_scalar(float(q)) for q in p.ravel()])
        return flat.reshape(p.shape)

    def inverse_hazard(x):
        with np.errstate(divide="ignore"):
            return 1.0 / lam(x)

    return _from_phi(
        name or f"hazard:{getattr(hazard_fn, '__name__', 'fn')},L={L!r},M={M!r}",
        phi=phi,
        hazard=lam,
        inverse_hazard=inverse_hazard,
        quantile=quantile,
        bounds=SupportBounds(L, M, survival_at_m),
        slope=inverse_hazard_slope,
        params={"L": L, "M": M},
    )


def detect_support(cdf: Callable, start: float = 0.0, level: float = 1e-14) -> tuple[float, float]:
    """Locate ``(L, M)`` of a black-box CDF.

    Brackets expand geometrically from ``start``; bisection then returns the
    points where ``F`` crosses ``level`` and ``1 - level``.  An endpoint is
    reported infinite if no crossing appears within ``|x| < 1e300``.
    """

    def F(t: float) -> float:
        return float(np.asarray(cdf(np.array([t])), dtype=float).ravel()[0])

    if not level < F(start) < 1.0 - level:
        raise DistributionDomainError(f"start={start!r} must lie strictly inside the support")

    def crossing(target: float, direction: float) -> float:
        # invariant: `inside` is on the start side of the crossing
        inside, step = start, 1.0
        outside = start + direction * step
        while (F(outside) > target) if direction < 0 else (F(outside) < target):
            inside = outside
            step *= 2.0
            outside = start + direction * step
            if abs(outside) > 1e300:
                return direction * math.inf
        lo, hi = sorted((inside, outside))
        while True:
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if F(mid) <= target:
                lo = mid
            else:
                hi = mid
        return hi if direction < 0 else lo

    return crossing(level, -1.0), crossing(1.0 - level, 1.0)


# ---------------------------------------------------------------------------
# mini-language


def _osc(eps: float, base: float = 2.0) -> DistributionSpec:
    from .approx import oscillating_hazard_dist

    return oscillating_hazard_dist(eps, base)


def _hazardfile(path: str, interp: str = "linear") -> DistributionSpec:
    xs, hs = _read_hazard_csv(path)
    return hazard_table(xs, hs, interp=interp, name=f"hazardfile:path={path},interp={interp}")


@dataclass(frozen=True)
class _ZooEntry:
    build: Callable[..., DistributionSpec]
    keys: Mapping[str, str]  # spec key -> builder kwarg
    defaults: Mapping[str, float | str]
    required: tuple[str, ...]
    text_keys: tuple[str, ...] = ()
    doc: str = ""


ZOO: dict[str, _ZooEntry] = {
    "exp": _ZooEntry(
        exponential, {"lambda": "lam", "L": "L"}, {"lambda": 1.0, "L": 0.0}, (),
        doc="shifted exponential, constant hazard lambda on [L, inf)",
    ),
    "truncexp": _ZooEntry(
        truncated_exponential, {"lambda": "lam", "L": "L", "M": "M"},
        {"lambda": 1.0, "L": 0.0}, ("M",),
        doc="exponential truncated at M with an atom at M",
    ),
    "uniform": _ZooEntry(uniform, {"a": "a", "b": "b"}, {"a": 0.0, "b": 1.0}, (),
                         doc="uniform on [a, b]"),
    "weibull": _ZooEntry(
        weibull, {"shape": "shape", "scale": "scale", "L": "L"},
        {"scale": 1.0, "L": 0.0}, ("shape",),
        doc="Weibull, phi(x) = ((x - L)/scale)^shape",
    ),
    "gompertz": _ZooEntry(
        gompertz, {"b": "b", "c": "c", "L": "L"}, {"b": 1.0, "c": 1.0, "L": 0.0}, (),
        doc="Gompertz, hazard b*exp(c (x - L))",
    ),
    "oscexp": _ZooEntry(
        _osc, {"eps": "eps", "base": "base"}, {"base": 2.0}, ("eps",),
        doc="oscillating inverse hazard base + cos(eps*log(1 - F(x))) on (0, inf)",
    ),
    "hazardfile": _ZooEntry(
        _hazardfile, {"path": "path", "interp": "interp"}, {"interp": "linear"}, ("path",),
        text_keys=("path", "interp"),
        doc="hazard tabulated in a CSV with columns x,hazard",
    ),
}


def parse_spec(text: str) -> tuple[str, dict[str, float | str]]:
    """Split ``name:key=val,...`` into the zoo name and typed parameters."""
    text = text.strip()
    name, sep, rest = text.partition(":")
    name = name.strip()
    if name not in ZOO:
        raise DistributionParseError(
            f"unknown distribution {name!r}; expected one of {', '.join(ZOO)}"
        )
    entry = ZOO[name]
    params: dict[str, float | str] = dict(entry.defaults)
    if sep and not rest.strip():
        raise DistributionParseError(f"{text!r}: empty parameter list after ':'")
    for item in rest.split(",") if rest.strip() else []:
        key, eq, val = item.partition("=")
        key, val = key.strip(), val.strip()
        if not eq or not key or not val:
            raise DistributionParseError(f"{text!r}: expected key=value, got {item!r}")
        if key not in entry.keys:
            raise DistributionParseError(
                f"{name} does not take {key!r}; allowed: {', '.join(entry.keys)}"
            )
        if key in entry.text_keys:
            params[key] = val
        else:
            try:
                params[key] = float(val)
            except ValueError:
                raise DistributionParseError(f"{text!r}: {key}={val!r} is not a number") from None
    missing = [k for k in entry.required if k not in params]
    if missing:
        raise DistributionParseError(f"{name} requires {', '.join(missing)}")
    return name, params


@functools.lru_cache(maxsize=128)
def make_builtin(spec_string: str) -> DistributionSpec:
    """Build a zoo distribution from mini-language text.

    >>> make_builtin("uniform:a=0,b=1").bounds
    SupportBounds(L=0.0, M=1.0, survival_at_M_minus=0.0)
    """
    name, params = parse_spec(spec_string)
    entry = ZOO[name]
    return entry.build(**{entry.keys[k]: v for k, v in params.items()})


# ---------------------------------------------------------------------------
# evaluation helpers


@dataclass(frozen=True)
class ProbeRecord:
    x: float
    F: float
    survival: float
    phi: float
    hazard: float
    inverse_hazard: float
    in_support: bool


def probe(dist: DistributionSpec, x: float) -> ProbeRecord:
    """Evaluate every function of ``dist`` at ``x`` with out-of-support conventions.

    Left of ``L`` the hazard is undefined (NaN); from ``M`` on the hazard is
    undefined and ``mu = 0``.
    """
    if not math.isfinite(x):
        raise ValueError("probe point must be finite")
    L, M = dist.bounds.L, dist.bounds.M
    xs = np.array([x])
    if x <= L:
        return ProbeRecord(x, 0.0, 1.0, 0.0, math.nan, math.nan, False)
    if x >= M:
        return ProbeRecord(x, 1.0, 0.0, math.inf, math.nan, 0.0, False)
    return ProbeRecord(
        x,
        float(dist.cdf(xs)[0]),
        float(dist.survival(xs)[0]),
        float(dist.log_survival(xs)[0]),
        float(dist.hazard(xs)[0]),
        float(dist.inverse_hazard(xs)[0]),
        True,
    )


@dataclass(frozen=True)
class IhrVerdict:
    is_ihr: bool
    witness: tuple[float, float, float] | None
    grid_size: int
    tolerance: float
    worst_violation: float = 0.0


def quantile_grid(dist: DistributionSpec, grid_size: int, lo_mass: float = 1e-8,
                  hi_mass: float = 1e-12) -> np.ndarray:
    """Interior support points: uniform in ``p`` plus geometric in both tails."""
    g = max(grid_size, 8)
    p = np.concatenate([
        np.linspace(lo_mass, 1.0 - hi_mass, g),
        np.geomspace(lo_mass, 0.5, g // 2),
        1.0 - np.geomspace(0.5, hi_mass, g // 2),
    ])
    p = p[p < dist.cdf_at_M_minus]
    x = np.unique(dist.quantile(np.sort(p)))
    return x[(x > dist.L) & (x < dist.M) & np.isfinite(x)]


@functools.lru_cache(maxsize=256)
def check_ihr(dist: DistributionSpec, grid_size: int = 64, tol: float = 1e-9) -> IhrVerdict:
    """Test convexity of ``phi`` by midpoint inequalities on a quantile grid.

    Pairs ``(x_i, x_{i+s})`` for dyadic ``s`` are tested against
    ``phi((a+b)/2) <= (phi(a) + phi(b))/2 + tol * max(1, (phi(a)+phi(b))/2)``.
    """
    if grid_size < 8:
        raise ValueError("grid_size must be at least 8")
    x = quantile_grid(dist, grid_size)
    with np.errstate(all="ignore"):
        phx = dist.log_survival(x)
    if not np.all(np.isfinite(phx)):
        raise DistributionError(f"{dist.name}: log survival not finite on the IHR grid")
    worst = -math.inf
    witness = None
    s = 1
    while s < x.size:
        a, b = x[:-s], x[s:]
        fa, fb = phx[:-s], phx[s:]
        mid = dist.log_survival(0.5 * (a + b))
        avg = 0.5 * (fa + fb)
        excess = (mid - avg) - tol * np.maximum(1.0, np.abs(avg))
        j = int(np.argmax(excess))
        if excess[j] > worst:
            worst = float(excess[j])
            witness = (float(a[j]), float(b[j]), float(mid[j] - avg[j]))
        s *= 2
    ok = worst <= 0.0
    return IhrVerdict(
        is_ihr=ok,
        witness=None if ok else witness,
        grid_size=grid_size,
        tolerance=tol,
        worst_violation=max(0.0, witness[2]) if witness else 0.0,
    )
