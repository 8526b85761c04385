"""Known misprints in the published order-8 non-central moment table.

The library always emits the Stirling expansion; these entries document
where the printed table departs from it.  Terms are written with the
common prefactor multiplied in, coordinates numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass

__all__ = ["Erratum", "ERRATA", "format_errata"]


@dataclass(frozen=True)
class Erratum:
    pattern: tuple[int, ...]
    printed: str
    corrected: str
    note: str


ERRATA: tuple[Erratum, ...] = (
    Erratum(
        pattern=(8,),
        printed="966 m^(3) x1 x2^2",
        corrected="966 m^(3) x1^3",
        note="subscript j2 printed where j1 belongs",
    ),
    Erratum(
        pattern=(7, 1),
        printed="m x1 x2",
        corrected="m^(2) x1 x2",
        note="leading falling factorial printed as plain m",
    ),
    Erratum(
        pattern=(5, 3),
        printed="m^(6) x1 x2 x4^4",
        corrected="m^(6) x1^5 x2",
        note="subscript j4 printed where j1 belongs",
    ),
    Erratum(
        pattern=(3, 2, 2, 1),
        printed="(term missing)",
        corrected="m^(6) x1^3 x2 x3 x4",
        note="x1^2 term absent from the m^(6) bracket",
    ),
)


def format_errata() -> str:
    lines = []
    for e in ERRATA:
        label = " ".join(f"xi{i}^{p}" if p > 1 else f"xi{i}" for i, p in enumerate(e.pattern, 1))
        lines.append(f"E[{label}]: printed {e.printed}; correct {e.corrected} ({e.note})")
    return "\n".join(lines)
