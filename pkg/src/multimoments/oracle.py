"""Independent checks: exact support enumeration and a seeded sampler.

Nothing here touches Stirling numbers.  ``oracle_moment`` computes
E[g(xi)] straight from the probability mass function, so agreement with
:mod:`multimoments.numeric` is a genuine cross-check.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import _core
from .combinatorics import falling_factorial
from .numeric import (
    MultinomialParams,
    _check,
    central_moment,
    factorial_moment,
    noncentral_moment,
    pmf,
)

__all__ = [
    "MODES",
    "ENUMERATION_LIMIT",
    "DEFAULT_GRID",
    "EnumerationTooLarge",
    "SupportIterator",
    "oracle_moment",
    "MonteCarloEstimate",
    "sample_counts",
    "sample_moment",
    "OracleReport",
    "grid_points",
    "multi_indices",
    "verify_sweep",
]

MODES = ("noncentral", "central", "factorial")
ENUMERATION_LIMIT = 10**7
DEFAULT_GRID = (Fraction(0), Fraction(1, 6), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2))


class EnumerationTooLarge(RuntimeError):
    """The support is too large to enumerate; use sampling instead."""


class SupportIterator:
    """Lattice points {k in N_0^d : sum(k) <= m} in lexicographic order."""

    def __init__(self, m: int, d: int) -> None:
        if m < 0 or d < 0:
            raise ValueError(f"need m, d >= 0, got m={m}, d={d}")
        self.m = m
        self.d = d

    def __len__(self) -> int:
        return math.comb(self.m + self.d, self.d)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        def walk(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == self.d:
                yield prefix
                return
            for k in range(remaining + 1):
                yield from walk(i + 1, remaining - k, prefix + (k,))

        return walk(0, self.m, ())


def _g(mode: str, k: int, p: int, mk: Fraction) -> Fraction | int:
    if mode == "noncentral":
        return k**p
    if mode == "central":
        return (k - mk) ** p
    return falling_factorial(k, p)


def _check_mode(mode: str, allowed: Sequence[str] = MODES) -> None:
    if mode not in allowed:
        raise ValueError(f"mode must be one of {', '.join(allowed)}; got {mode!r}")


def _guard(params: MultinomialParams) -> None:
    size = math.comb(params.m + params.d, params.d)
    if size > ENUMERATION_LIMIT:
        raise EnumerationTooLarge(
            f"support has {size} points (limit {ENUMERATION_LIMIT}); use sample_moment"
        )


def _direct(params: MultinomialParams, p: tuple[int, ...], mode: str) -> Fraction:
    centers = [params.m * xi for xi in params.x]
    total = Fraction(0)
    for k in SupportIterator(params.m, params.d):
        weight = 1
        for ki, pi, c in zip(k, p, centers):
            weight *= _g(mode, ki, pi, c)
        if weight:
            total += weight * pmf(params, k)
    return total


def oracle_moment(
    params: MultinomialParams, p: Sequence[int], mode: str = "noncentral", *, direct: bool = False
) -> Fraction:
    """E[g(xi)] by summing g(k) P(xi = k) over the whole support.

    g is prod k_i^p_i (noncentral), prod (k_i - m x_i)^p_i (central) or
    prod k_i^(p_i) (factorial).  The default path scales every probability
    by the common denominator D so the kernel works in integers only;
    ``direct=True`` sums Fractions with :func:`~multimoments.numeric.pmf`.
    """
    _check_mode(mode)
    p = _check(params, p)
    _guard(params)
    if direct:
        return _direct(params, p, mode)

    m = params.m
    scale = math.lcm(*(xi.denominator for xi in params.x))
    weights = [xi.numerator * (scale // xi.denominator) for xi in params.x]
    rest = scale - sum(weights)
    tables = []
    for a, pi in zip(weights, p):
        if mode == "central":
            shift = m * a
            tables.append([a**k * (scale * k - shift) ** pi for k in range(m + 1)])
        elif mode == "factorial":
            tables.append([a**k * falling_factorial(k, pi) for k in range(m + 1)])
        else:
            tables.append([a**k * k**pi for k in range(m + 1)])
    rest_pows = [rest**r for r in range(m + 1)]
    binom = [[math.comb(r, k) for k in range(r + 1)] for r in range(m + 1)]
    total = _core.support_sum(m, tables, rest_pows, binom)
    denom = scale**m
    if mode == "central":
        denom *= scale ** sum(p)
    return Fraction(total, denom)


@dataclass(frozen=True)
class MonteCarloEstimate:
    mean: float
    standard_error: float
    n_samples: int
    seed: int

    def within(self, exact, n_se: float = 5.0) -> bool:
        return abs(self.mean - float(exact)) <= n_se * self.standard_error


def _rng(seed: int) -> np.random.Generator:
    if seed < 0 or seed >= 2**64:
        raise ValueError(f"seed must be a uint64, got {seed}")
    return np.random.Generator(np.random.PCG64(seed))


def _conditional_probs(params: MultinomialParams) -> list[float]:
    """P(coordinate i | not coordinates < i), computed exactly then rounded once."""
    probs = []
    mass = Fraction(1)
    for xi in params.x:
        probs.append(float(min(Fraction(1), xi / mass)) if mass else 0.0)
        mass -= xi
    return probs


def _draw(rng: np.random.Generator, m: int, probs: list[float], n: int) -> np.ndarray:
    out = np.empty((n, len(probs)), dtype=np.int64)
    remaining = np.full(n, m, dtype=np.int64)
    for i, q in enumerate(probs):
        out[:, i] = rng.binomial(remaining, q)
        remaining -= out[:, i]
    return out


def sample_counts(params: MultinomialParams, n: int, seed: int) -> np.ndarray:
    """n multinomial draws as an (n, d) int array, by sequential conditional binomials."""
    if n < 1:
        raise ValueError(f"need n >= 1 draws, got {n}")
    return _draw(_rng(seed), params.m, _conditional_probs(params), n)


_CHUNK = 1 << 20


def sample_moment(
    params: MultinomialParams,
    p: Sequence[int],
    mode: str = "noncentral",
    n: int = 10**6,
    seed: int = 0,
) -> MonteCarloEstimate:
    """Monte Carlo estimate of E[g(xi)]; central mode centres at the exact mean m x."""
    _check_mode(mode, ("noncentral", "central"))
    p = _check(params, p)
    if n < 2:
        raise ValueError(f"need n >= 2 samples for a standard error, got {n}")
    rng = _rng(seed)
    probs = _conditional_probs(params)
    centers = np.array([float(params.m * xi) for xi in params.x])
    powers = np.array(p, dtype=np.float64)

    # Chan et al. pairwise update of (count, mean, M2) across chunks
    count, mu, m2 = 0, 0.0, 0.0
    done = 0
    while done < n:
        size = min(_CHUNK, n - done)
        draws = _draw(rng, params.m, probs, size).astype(np.float64)
        if mode == "central":
            draws -= centers
        values = np.prod(draws**powers, axis=1)
        c_mu = float(values.mean())
        c_m2 = float(((values - c_mu) ** 2).sum())
        total = count + size
        delta = c_mu - mu
        mu += delta * size / total
        m2 += c_m2 + delta * delta * count * size / total
        count = total
        done += size
    std = math.sqrt(m2 / (count - 1))
    return MonteCarloEstimate(mean=mu, standard_error=std / math.sqrt(count), n_samples=count, seed=seed)


@dataclass(frozen=True)
class OracleReport:
    m: int
    x: tuple[Fraction, ...]
    p: tuple[int, ...]
    mode: str
    formula: Fraction
    oracle: Fraction

    @property
    def passed(self) -> bool:
        return self.formula == self.oracle

    def key(self) -> tuple:
        return (self.m, len(self.x), self.x, self.p, MODES.index(self.mode))

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "x": [str(v) for v in self.x],
            "p": list(self.p),
            "mode": self.mode,
            "formula": str(self.formula),
            "oracle": str(self.oracle),
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


_FORMULAS = {
    "noncentral": noncentral_moment,
    "central": central_moment,
    "factorial": factorial_moment,
}


def grid_points(d: int, grid: Iterable = DEFAULT_GRID) -> list[tuple[Fraction, ...]]:
    """All d-tuples over ``grid`` whose sum is at most 1."""
    values = sorted({Fraction(v) for v in grid})
    out = []

    def walk(prefix: tuple[Fraction, ...], budget: Fraction) -> None:
        if len(prefix) == d:
            out.append(prefix)
            return
        for v in values:
            if v <= budget:
                walk(prefix + (v,), budget - v)

    walk((), Fraction(1))
    return out


def multi_indices(d: int, max_order: int) -> list[tuple[int, ...]]:
    """All p in N_0^d with sum(p) <= max_order, zero included."""
    return list(SupportIterator(max_order, d))


def _sweep_one_m(m: int, dims: tuple[int, ...], max_order: int, grid: tuple, modes: tuple) -> list:
    reports = []
    for d in dims:
        indices = multi_indices(d, max_order)
        for x in grid_points(d, grid):
            params = MultinomialParams(m, x)
            for p in indices:
                for mode in modes:
                    reports.append(
                        OracleReport(
                            m=m,
                            x=params.x,
                            p=p,
                            mode=mode,
                            formula=_FORMULAS[mode](params, p),
                            oracle=oracle_moment(params, p, mode),
                        )
                    )
    return reports


def verify_sweep(
    max_m: int,
    dims: Iterable[int],
    max_order: int,
    grid: Iterable = DEFAULT_GRID,
    modes: Sequence[str] = MODES,
    workers: int = 1,
) -> list[OracleReport]:
    """Cross-check every closed form against enumeration over a parameter sweep.

    Sweeps m in 0..max_m, each d in ``dims``, every grid point on the simplex
    and every multi-index of total order <= max_order.  Reports come back
    sorted by instance, whatever ``workers`` is.
    """
    dims = tuple(sorted(set(dims)))
    grid = tuple(sorted({Fraction(v) for v in grid}))
    modes = tuple(modes)
    for mode in modes:
        _check_mode(mode)
    if not dims:
        return []
    if any(d < 1 for d in dims):
        raise ValueError(f"dimensions must be >= 1, got {dims}")
    largest = math.comb(max_m + max(dims), max(dims))
    if largest > ENUMERATION_LIMIT:
        raise EnumerationTooLarge(f"support of {largest} points exceeds {ENUMERATION_LIMIT}")

    jobs = [(m, dims, max_order, grid, modes) for m in range(max_m + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_one_m, *zip(*jobs)))
    else:
        chunks = [_sweep_one_m(*job) for job in jobs]
    reports = [r for chunk in chunks for r in chunk]
    reports.sort(key=OracleReport.key)
    return reports
