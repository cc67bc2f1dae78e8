"""Quantile-hazard approximation ``R_n ~ mu(x_n)`` and the oscillating-hazard family."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .dist import DistributionDomainError, DistributionSpec, SupportBounds, _check_p, _from_phi
from .gaps import DEFAULT_CONFIG, QuadratureConfig, r_direct

__all__ = ["ApproxResult", "oscillating_hazard_dist", "quantile_hazard_approx"]


@dataclass(frozen=True)
class ApproxResult:
    n: int
    x_n: float
    inv_hazard_at_xn: float
    r_quadrature: float
    abs_gap: float
    r_err_estimate: float = 0.0


def quantile_hazard_approx(dist: DistributionSpec, n: int,
                           cfg: QuadratureConfig = DEFAULT_CONFIG) -> ApproxResult:
    """Compare ``R_n`` with the inverse hazard at the ``(n-1)/n`` quantile.

    When the atom at ``M`` exceeds ``1/n`` the quantile sits at ``M`` and
    ``mu(M-)`` is used.
    """
    if int(n) != n or n < 2:
        raise ValueError(f"need integer n >= 2, got {n!r}")
    n = int(n)
    if dist.bounds.survival_at_M_minus >= 1.0 / n:
        x_n = dist.M
        mu = dist.mu_at_M_minus(cfg.tail_mass)
    else:
        x_n = float(dist.quantile(np.array([1.0 - 1.0 / n]))[0])
        mu = float(dist.inverse_hazard(np.array([x_n]))[0])
    r = r_direct(dist, n, cfg)
    return ApproxResult(n, x_n, mu, r.value, abs(r.value - mu), r.err_estimate)


def oscillating_hazard_dist(eps: float, base_level: float = 2.0,
                            phi_max: float = 80.0) -> DistributionSpec:
    """Distribution on ``(0, inf)`` with ``1/lambda(x) = base + cos(eps * log(1 - F(x)))``.

    Since ``log(1 - F) = -phi``, the log survival solves the autonomous ODE
    ``phi' = 1 / (base + cos(eps * phi))``, ``phi(0) = 0``; it is integrated
    with DOP853 and evaluated through its dense output.  Along the solution
    ``x(phi) = base * phi + sin(eps * phi) / eps``, which gives the quantile
    in closed form.  Beyond the integrated range ``phi`` is recovered from
    that relation by Newton steps.
    """
    if not eps > 0 or not math.isfinite(eps):
        raise DistributionDomainError(f"oscexp requires eps > 0, got {eps}")
    if not base_level > 1 or not math.isfinite(base_level):
        raise DistributionDomainError(f"oscexp requires base > 1, got {base_level}")
    c, e = float(base_level), float(eps)

    def x_of_phi(t):
        return c * t + np.sin(e * t) / e

    x_end = float(x_of_phi(phi_max))
    sol = solve_ivp(
        lambda x, y: 1.0 / (c + np.cos(e * y)),
        (0.0, x_end),
        [0.0],
        method="DOP853",
        dense_output=True,
        rtol=1e-13,
        atol=1e-14,
    )
    if not sol.success:
        raise ArithmeticError(f"oscillating-hazard ODE failed: {sol.message}")
    dense = sol.sol

    def newton_phi(x):
        t = x / c
        for _ in range(60):
            step = (x_of_phi(t) - x) / (c + np.cos(e * t))
            t = t - step
            if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(t))):
                break
        return t

    def phi(x):
        x = np.asarray(x, dtype=float)
        inside = x <= x_end
        out = np.empty_like(x)
        if np.any(inside):
            out[inside] = dense(np.clip(x[inside], 0.0, x_end)).reshape(-1)
        if np.any(~inside):
            out[~inside] = newton_phi(x[~inside])
        return out

    def inverse_hazard(x):
        return c + np.cos(e * phi(np.maximum(x, 0.0)))

    def hazard(x):
        return 1.0 / inverse_hazard(x)

    def slope(x):
        t = phi(np.maximum(x, 0.0))
        mu = c + np.cos(e * t)
        return -e * np.sin(e * t) / mu

    def quantile(p):
        with np.errstate(divide="ignore"):
            t = -np.log1p(-_check_p(p))
        return np.where(np.isinf(t), np.inf, x_of_phi(np.where(np.isinf(t), 0.0, t)))

    return _from_phi(
        f"oscexp:eps={e!r},base={c!r}",
        phi=phi,
        hazard=hazard,
        inverse_hazard=inverse_hazard,
        quantile=quantile,
        bounds=SupportBounds(0.0, math.inf),
        slope=slope,
        params={"eps": e, "base": c},
    )
