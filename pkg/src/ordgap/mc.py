"""Seeded Monte Carlo estimates of order-statistic spacings.

Uniform variates come from Philox, a counter-based generator.  Samples are
grouped in fixed blocks of ``BLOCK`` draws; block ``b`` reads the Philox
stream keyed by ``seed`` starting at counter ``(0, 0, b, 0)``.  Shards own
whole blocks and per-block accumulators are merged in block order, so the
result does not depend on how many shards ran or in which order they
finished.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .dist import DistributionSpec

__all__ = [
    "BLOCK",
    "MCEstimate",
    "mc_all_gaps",
    "mc_extreme_range",
    "mc_gap",
    "survival_integral_check",
]

BLOCK = 1 << 16


@dataclass(frozen=True)
class MCEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    shards: int


def _block_uniforms(seed: int, block: int, size: int, n: int) -> np.ndarray:
    bitgen = np.random.Philox(key=seed, counter=[0, 0, block, 0])
    return np.random.Generator(bitgen).random((size, n))


def _merge(a, b):
    na, ma, m2a = a
    nb, mb, m2b = b
    tot = na + nb
    d = mb - ma
    return tot, ma + d * (nb / tot), m2a + m2b + d * d * (na * nb / tot)


def _simulate(
    dist: DistributionSpec,
    n: int,
    statistic: Callable[[np.ndarray], np.ndarray],
    samples: int,
    seed: int,
    shards: int,
) -> list[MCEstimate]:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    if not 0 <= seed < 1 << 128:
        raise ValueError("seed must be a nonnegative integer below 2**128")
    n_blocks = -(-samples // BLOCK)
    sizes = [BLOCK] * (n_blocks - 1) + [samples - BLOCK * (n_blocks - 1)]

    def run_block(b: int):
        u = _block_uniforms(seed, b, sizes[b], n)
        x = dist.quantile(u)
        if not np.all(np.isfinite(x)):
            raise ArithmeticError(f"{dist.name}: quantile returned non-finite values")
        v = statistic(x)
        # one contiguous row per statistic, so every column is reduced with the
        # same summation order whether it is computed alone or with others
        v = np.ascontiguousarray(v.reshape(v.shape[0], -1).T)
        mean = v.mean(axis=1)
        return sizes[b], mean, ((v - mean[:, None]) ** 2).sum(axis=1)

    bounds = np.linspace(0, n_blocks, min(shards, n_blocks) + 1).astype(int)

    def run_shard(i: int):
        return [run_block(b) for b in range(bounds[i], bounds[i + 1])]

    if len(bounds) > 2:
        with ThreadPoolExecutor(max_workers=len(bounds) - 1) as pool:
            per_shard = list(pool.map(run_shard, range(len(bounds) - 1)))
    else:
        per_shard = [run_shard(0)]
    blocks = [acc for shard in per_shard for acc in shard]

    acc = blocks[0]
    for nxt in blocks[1:]:
        acc = _merge(acc, nxt)
    count, mean, m2 = acc
    if count > 1:
        stderr = np.sqrt(m2 / (count - 1) / count)
    else:
        stderr = np.full_like(mean, math.inf)
    return [MCEstimate(float(m), float(s), samples, seed, shards)
            for m, s in zip(np.atleast_1d(mean), np.atleast_1d(stderr))]


def _gap_statistic(n: int, k: int):
    if k == n - 1:
        def stat(x):
            top = np.partition(x, [n - 2, n - 1], axis=1)
            return top[:, n - 1] - top[:, n - 2]
    elif k == 1:
        def stat(x):
            bottom = np.partition(x, [0, 1], axis=1)
            return bottom[:, 1] - bottom[:, 0]
    else:
        def stat(x):
            s = np.sort(x, axis=1)
            return s[:, k] - s[:, k - 1]
    return stat


def mc_gap(dist: DistributionSpec, n: int, k: int, samples: int = 1_000_000,
           seed: int = 0, shards: int = 1) -> MCEstimate:
    """Estimate ``E(X_{k+1:n} - X_{k:n})`` from ``samples`` iid n-tuples."""
    if n < 2 or not 1 <= k <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    return _simulate(dist, n, _gap_statistic(n, k), samples, seed, shards)[0]


def mc_all_gaps(dist: DistributionSpec, n: int, samples: int = 1_000_000,
                seed: int = 0, shards: int = 1) -> list[MCEstimate]:
    """All ``n - 1`` consecutive spacings from one simulation, ``k = 1 .. n-1``.

    Entry ``k - 1`` is bitwise equal to ``mc_gap(dist, n, k, ...)``.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return _simulate(dist, n, lambda x: np.diff(np.sort(x, axis=1), axis=1),
                     samples, seed, shards)


def mc_extreme_range(dist: DistributionSpec, n: int, samples: int = 1_000_000,
                     seed: int = 0, shards: int = 1) -> MCEstimate:
    """Estimate ``E(X_{n:n} - X_{1:n})``."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return _simulate(dist, n, lambda x: x.max(axis=1) - x.min(axis=1),
                     samples, seed, shards)[0]


def survival_integral_check(dist: DistributionSpec, n: int, k: int, grid: int = 10_000,
                            tail: float = 1e-10) -> float:
    """Trapezoidal value of ``integral of P(K_x = k) dx`` with ``K_x ~ Binomial(n, F(x))``.

    The abscissae are ``grid + 1`` equispaced points between the support
    endpoints, or the ``tail`` / ``1 - tail`` quantiles where those are
    infinite.  Meant as a crude, independent cross-check only.
    """
    if n < 2 or not 1 <= k <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= k <= n-1, got n={n}, k={k}")
    if grid < 1:
        raise ValueError("grid must be >= 1")
    lo = dist.L if math.isfinite(dist.L) else float(dist.quantile(np.array([tail]))[0])
    hi = dist.M if math.isfinite(dist.M) else float(dist.quantile(np.array([1.0 - tail]))[0])
    x = np.linspace(lo, hi, grid + 1)
    F = dist.cdf(x)
    # at a finite M the integrand is evaluated at M- rather than at the atom
    if math.isfinite(dist.M):
        F[-1] = dist.cdf_at_M_minus
    pk = math.comb(n, k) * F**k * (1.0 - F) ** (n - k)
    return float(np.trapezoid(pk, x))
