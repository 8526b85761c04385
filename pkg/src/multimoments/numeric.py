"""Exact moments of Multinomial(m, x) for concrete parameters.

``x`` holds the d free probabilities; the remaining category has mass
1 - sum(x).  Every quantity is a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .combinatorics import binomial, falling_factorial, stirling2

__all__ = [
    "DimensionError",
    "SimplexError",
    "MultinomialParams",
    "to_rational",
    "pmf",
    "mean",
    "factorial_moment",
    "noncentral_moment",
    "central_moment",
]


class DimensionError(ValueError):
    """A multi-index does not match the dimension of the parameters."""


class SimplexError(ValueError):
    """The probability vector lies outside the unit simplex."""


_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def to_rational(value) -> Fraction:
    """Convert an int, Fraction, or "a" / "a/b" string to a Fraction.

    Floats and decimal strings are refused: the exact path never rounds.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a Fraction or 'a/b' string")
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.fullmatch(text):
            raise ValueError(f"cannot parse rational {value!r}; expected 'a' or 'a/b'")
        return Fraction(text)
    return Fraction(value)


@dataclass(frozen=True)
class MultinomialParams:
    m: int
    x: tuple[Fraction, ...]

    def __init__(self, m: int, x: Iterable) -> None:
        if isinstance(m, bool) or not isinstance(m, int) or m < 0:
            raise ValueError(f"trial count must be a non-negative int, got {m!r}")
        probs = tuple(to_rational(v) for v in x)
        if not probs:
            raise ValueError("need at least one probability (d >= 1)")
        for i, v in enumerate(probs):
            if not 0 <= v <= 1:
                raise SimplexError(f"x[{i}] = {v} is outside [0, 1]")
        total = sum(probs, Fraction(0))
        if total > 1:
            raise SimplexError(f"probabilities must lie on the simplex: sum(x) = {total} > 1")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "x", probs)

    @property
    def d(self) -> int:
        return len(self.x)

    @property
    def rest(self) -> Fraction:
        """Probability of the implicit last category."""
        return 1 - sum(self.x, Fraction(0))


def _check(params: MultinomialParams, index: Sequence[int]) -> tuple[int, ...]:
    index = tuple(index)
    if len(index) != params.d:
        raise DimensionError(
            f"multi-index {index} has length {len(index)}, parameters have d = {params.d}"
        )
    for v in index:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise ValueError(f"multi-index entries must be non-negative ints, got {index}")
    return index


def pmf(params: MultinomialParams, k: Sequence[int]) -> Fraction:
    """P(xi = k); zero outside the support."""
    k = _check(params, k)
    m = params.m
    total = sum(k)
    if total > m:
        return Fraction(0)
    coeff = math.factorial(m) // (
        math.factorial(m - total) * math.prod(math.factorial(v) for v in k)
    )
    prob = Fraction(coeff) * params.rest ** (m - total)
    for xi, ki in zip(params.x, k):
        prob *= xi**ki
    return prob


def mean(params: MultinomialParams) -> tuple[Fraction, ...]:
    return tuple(params.m * xi for xi in params.x)


def factorial_moment(params: MultinomialParams, k: Sequence[int]) -> Fraction:
    """E[prod xi_i^(k_i)] = m^(sum k) prod x_i^k_i."""
    k = _check(params, k)
    out = Fraction(falling_factorial(params.m, sum(k)))
    if out == 0:
        return out
    for xi, ki in zip(params.x, k):
        out *= xi**ki
    return out


def _integer_scale(x: Sequence[Fraction]) -> tuple[int, list[int]]:
    """Common denominator D and integer numerators a_i with x_i = a_i / D."""
    scale = math.lcm(*(xi.denominator for xi in x))
    return scale, [xi.numerator * (scale // xi.denominator) for xi in x]


def noncentral_moment(params: MultinomialParams, p: Sequence[int]) -> Fraction:
    """E[prod xi_i^p_i] as a Stirling-weighted sum of factorial moments.

    Each term m^(sum k) prod S2(p_i, k_i) x_i^k_i is accumulated as an integer
    over the common denominator D^(sum p).
    """
    p = _check(params, p)
    m = params.m
    scale, nums = _integer_scale(params.x)
    # factor[i][k] = S2(p_i, k) a_i^k D^(p_i - k)
    factor = [
        [stirling2(pi, k) * a**k * scale ** (pi - k) for k in range(pi + 1)]
        for pi, a in zip(p, nums)
    ]
    falling = [falling_factorial(m, j) for j in range(sum(p) + 1)]
    total = 0
    # S2(p, 0) = 0 for p >= 1, so those k_i start at 1
    for ks in itertools.product(*(range(min(pi, 1), pi + 1) for pi in p)):
        weight = falling[sum(ks)]
        if weight == 0:
            continue
        for f, ki in zip(factor, ks):
            weight *= f[ki]
        total += weight
    return Fraction(total, scale ** sum(p))


def central_moment(params: MultinomialParams, p: Sequence[int]) -> Fraction:
    """E[prod (xi_i - m x_i)^p_i].

    Evaluates the double sum over l <= p and k <= l term by term:
    m^(sum k) (-m)^(sum(p - l)) prod C(p_i, l_i) S2(l_i, k_i) x_i^(p_i - l_i + k_i),
    each term scaled to an integer over D^(sum p).
    """
    p = _check(params, p)
    m = params.m
    scale, nums = _integer_scale(params.x)
    # factor[i][l][k] = C(p_i, l) S2(l, k) a_i^e D^(p_i - e), e = p_i - l + k
    factor = [
        [
            [
                binomial(pi, l) * stirling2(l, k) * a ** (pi - l + k) * scale ** (l - k)
                for k in range(l + 1)
            ]
            for l in range(pi + 1)
        ]
        for pi, a in zip(p, nums)
    ]
    order = sum(p)
    falling = [falling_factorial(m, j) for j in range(order + 1)]
    shifts = [(-m) ** j for j in range(order + 1)]
    total = 0
    for ls in itertools.product(*(range(pi + 1) for pi in p)):
        shift = shifts[order - sum(ls)]
        if shift == 0:
            continue
        rows = [f[li] for f, li in zip(factor, ls)]
        for ks in itertools.product(*(range(li + 1) for li in ls)):
            weight = falling[sum(ks)] * shift
            if weight == 0:
                continue
            for row, ki in zip(rows, ks):
                weight *= row[ki]
            total += weight
    return Fraction(total, scale**order)
