"""Closed-form moment polynomials in symbolic m and x.

A :class:`MomentPoly` is a sparse map ``(m_degree, monomial) -> coeff``.
In the falling basis ``m_degree = k`` stands for the falling factorial
m^(k); in the ordinary basis it stands for the power m^k.  ``monomial``
holds one x exponent per pattern coordinate.

Patterns are canonical non-increasing exponent tuples over distinct
coordinates, e.g. ``(2, 1, 1)`` for E[xi_1^2 xi_2 xi_3].
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .combinatorics import binomial, falling_factorial, stirling2, stirling_row
from .numeric import MultinomialParams

__all__ = [
    "FALLING",
    "ORDINARY",
    "MomentPoly",
    "canonical_pattern",
    "partitions",
    "symbolic_noncentral",
    "symbolic_central",
    "to_ordinary",
    "to_falling",
    "evaluate",
    "render",
    "from_json",
    "catalog",
]

FALLING = "falling"
ORDINARY = "ordinary"

Key = tuple[int, tuple[int, ...]]


def canonical_pattern(exponents: Sequence[int]) -> tuple[int, ...]:
    pattern = tuple(exponents)
    if not pattern:
        raise ValueError("pattern must be non-empty")
    if any(isinstance(e, bool) or not isinstance(e, int) or e < 1 for e in pattern):
        raise ValueError(f"pattern entries must be positive ints, got {pattern}")
    return tuple(sorted(pattern, reverse=True))


def _canonical_terms(terms: Mapping[Key, int]) -> dict[Key, int]:
    return {key: c for key, c in sorted(terms.items()) if c != 0}


@dataclass(frozen=True)
class MomentPoly:
    pattern: tuple[int, ...]
    central: bool
    terms: dict[Key, int] = field(default_factory=dict)
    basis: str = FALLING

    def __post_init__(self) -> None:
        if self.basis not in (FALLING, ORDINARY):
            raise ValueError(f"unknown basis {self.basis!r}")
        arity = len(self.pattern)
        for deg, mono in self.terms:
            if deg < 0 or len(mono) != arity or min(mono, default=0) < 0:
                raise ValueError(f"bad term key {(deg, mono)} for pattern {self.pattern}")
        object.__setattr__(self, "terms", _canonical_terms(self.terms))

    def __iter__(self) -> Iterator[tuple[int, tuple[int, ...], int]]:
        for (deg, mono), coeff in self.terms.items():
            yield deg, mono, coeff

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def arity(self) -> int:
        return len(self.pattern)

    def to_dict(self) -> dict:
        return {
            "pattern": list(self.pattern),
            "central": self.central,
            "basis": self.basis,
            "terms": [
                {"m_degree": deg, "monomial": list(mono), "coeff": str(coeff)}
                for deg, mono, coeff in self
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def from_json(text: str | Mapping) -> MomentPoly:
    data = json.loads(text) if isinstance(text, str) else text
    terms: dict[Key, int] = {}
    for t in data["terms"]:
        key = (int(t["m_degree"]), tuple(int(e) for e in t["monomial"]))
        if key in terms:
            raise ValueError(f"duplicate term {key}")
        terms[key] = int(t["coeff"])
    return MomentPoly(
        pattern=tuple(int(p) for p in data["pattern"]),
        central=bool(data["central"]),
        terms=terms,
        basis=data.get("basis", FALLING),
    )


def symbolic_noncentral(pattern: Sequence[int]) -> MomentPoly:
    """Expansion of E[prod xi_ji^p_i] in the falling basis; zero-Stirling terms dropped."""
    pattern = canonical_pattern(pattern)
    terms: dict[Key, int] = {}
    for ks in itertools.product(*(range(1, p + 1) for p in pattern)):
        coeff = 1
        for p, k in zip(pattern, ks):
            coeff *= stirling2(p, k)
        terms[(sum(ks), ks)] = coeff
    return MomentPoly(pattern, central=False, terms=terms)


def _times_m_power(deg: int, power: int) -> dict[int, int]:
    """m^power * m^(deg) in the falling basis, via m * m^(a) = m^(a+1) + a m^(a)."""
    vec = {deg: 1}
    for _ in range(power):
        nxt: dict[int, int] = defaultdict(int)
        for a, c in vec.items():
            nxt[a + 1] += c
            if a:
                nxt[a] += a * c
        vec = nxt
    return vec


def symbolic_central(pattern: Sequence[int]) -> MomentPoly:
    """Fully combined expansion of E[prod (xi_ji - m x_ji)^p_i] in the falling basis."""
    pattern = canonical_pattern(pattern)
    acc: dict[Key, int] = defaultdict(int)
    for ls in itertools.product(*(range(p + 1) for p in pattern)):
        shift = sum(p - l for p, l in zip(pattern, ls))
        sign = -1 if shift % 2 else 1
        for ks in itertools.product(*(range(l + 1) for l in ls)):
            coeff = sign
            for p, l, k in zip(pattern, ls, ks):
                coeff *= binomial(p, l) * stirling2(l, k)
            if coeff == 0:
                continue
            mono = tuple(p - l + k for p, l, k in zip(pattern, ls, ks))
            for deg, c in _times_m_power(sum(ks), shift).items():
                acc[(deg, mono)] += coeff * c
    return MomentPoly(pattern, central=True, terms=acc)


def _falling_coeffs(k: int) -> list[int]:
    """Ordinary-power coefficients of m^(k), lowest degree first."""
    coeffs = [1]
    for j in range(k):
        # multiply by (m - j)
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= j * c
        coeffs = nxt
    return coeffs


def to_ordinary(poly: MomentPoly) -> MomentPoly:
    if poly.basis == ORDINARY:
        return poly
    acc: dict[Key, int] = defaultdict(int)
    for deg, mono, coeff in poly:
        for power, c in enumerate(_falling_coeffs(deg)):
            if c:
                acc[(power, mono)] += coeff * c
    return MomentPoly(poly.pattern, poly.central, acc, basis=ORDINARY)


def to_falling(poly: MomentPoly) -> MomentPoly:
    if poly.basis == FALLING:
        return poly
    acc: dict[Key, int] = defaultdict(int)
    for power, mono, coeff in poly:
        for deg, s in enumerate(stirling_row(power)):
            if s:
                acc[(deg, mono)] += coeff * s
    return MomentPoly(poly.pattern, poly.central, acc, basis=FALLING)


def evaluate(poly: MomentPoly, params: MultinomialParams, coords: Sequence[int]) -> Fraction:
    """Substitute m and x[coords[i]] for the i-th pattern coordinate.

    ``coords`` are 0-based indices into ``params.x`` and must be distinct.
    """
    coords = tuple(coords)
    if len(coords) != poly.arity:
        raise ValueError(f"pattern {poly.pattern} needs {poly.arity} coordinates, got {coords}")
    if len(set(coords)) != len(coords):
        raise ValueError(f"coordinates must be distinct, got {coords}")
    for c in coords:
        if not 0 <= c < params.d:
            raise IndexError(f"coordinate {c} out of range for d = {params.d}")
    xs = [params.x[c] for c in coords]
    m = params.m
    total = Fraction(0)
    for deg, mono, coeff in poly:
        mdeg = falling_factorial(m, deg) if poly.basis == FALLING else m**deg
        if mdeg == 0:
            continue
        term = Fraction(coeff * mdeg)
        for xv, e in zip(xs, mono):
            term *= xv**e
        total += term
    return total


def _mfactor(deg: int, basis: str, latex: bool) -> str:
    if deg == 0:
        return ""
    if deg == 1:
        return "m"
    if basis == FALLING:
        return f"m^{{({deg})}}" if latex else f"m^({deg})"
    return f"m^{{{deg}}}" if latex else f"m^{deg}"


def _xfactor(i: int, e: int, latex: bool) -> str:
    if latex:
        return f"x_{{{i}}}" if e == 1 else f"x_{{{i}}}^{{{e}}}"
    return f"x{i}" if e == 1 else f"x{i}^{e}"


def _render_terms(poly: MomentPoly, latex: bool) -> str:
    if not poly:
        return "0"
    parts = []
    for n, (deg, mono, coeff) in enumerate(poly):
        factors = [_mfactor(deg, poly.basis, latex)]
        factors += [_xfactor(i, e, latex) for i, e in enumerate(mono, start=1) if e]
        body = " ".join(f for f in factors if f)
        mag = abs(coeff)
        if not body:
            body = str(mag)
        elif mag != 1:
            body = f"{mag} {body}"
        if n == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def render(poly: MomentPoly, fmt: str = "text") -> str:
    if fmt == "text":
        return _render_terms(poly, latex=False)
    if fmt == "latex":
        return _render_terms(poly, latex=True)
    if fmt == "json":
        return poly.to_json()
    raise ValueError(f"unknown format {fmt!r}; expected text, latex or json")


def partitions(n: int) -> list[tuple[int, ...]]:
    """Integer partitions of n as non-increasing tuples, reverse-lexicographic."""
    if n == 0:
        return [()]
    out = []

    def walk(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(cap, remaining), 0, -1):
            walk(remaining - part, part, prefix + (part,))

    walk(n, n, ())
    return out


def catalog(max_order: int, central: bool = False) -> list[tuple[tuple[int, ...], MomentPoly]]:
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    build = symbolic_central if central else symbolic_noncentral
    return [(pat, build(pat)) for n in range(1, max_order + 1) for pat in partitions(n)]
