"""Size and color-discrepancy lower bounds, batch and streaming.

For a color ``c`` give every ``c``-item weight +1 and every other item
weight -1. The color discrepancy of a sequence is the largest segment sum
over all colors; the current discrepancy of ``c`` is the best segment sum
among segments ending at the last item (the empty segment counts, so it is
never negative).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .core import Instance


def _colors(seq) -> list[int]:
    if isinstance(seq, Instance):
        return list(seq.colors)
    return [it if isinstance(it, int) else it.color for it in seq]


def lb1(inst: Instance | Iterable) -> int:
    """Ceiling of the total item size."""
    total = sum((it.size for it in inst), 0)
    return math.ceil(total)


def lb2(seq) -> int:
    """Maximal color discrepancy, by a running max-segment-sum per color.

    Accepts an :class:`Instance`, a sequence of items or a sequence of color ids.
    """
    colors = _colors(seq)
    best = 0
    for c in set(colors):
        run = 0
        for x in colors:
            run = run + 1 if x == c else max(run - 1, 0)
            if run > best:
                best = run
    return best


def lb2_oracle(seq) -> int:
    """Maximal color discrepancy by enumerating every segment and color."""
    colors = _colors(seq)
    n = len(colors)
    best = 0
    for c in set(colors):
        for i in range(n):
            s = 0
            for j in range(i, n):
                s += 1 if colors[j] == c else -1
                best = max(best, s)
    return best


def lb2_by_color(seq) -> dict[int, int]:
    colors = _colors(seq)
    out = {}
    for c in set(colors):
        run = best = 0
        for x in colors:
            run = run + 1 if x == c else max(run - 1, 0)
            best = max(best, run)
        out[c] = best
    return out


def current_discrepancy(seq, color: int) -> int:
    """Best segment sum for ``color`` among segments ending at the last item (definitional)."""
    colors = _colors(seq)
    best = s = 0
    for x in reversed(colors):
        s += 1 if x == color else -1
        best = max(best, s)
    return best


@dataclass(frozen=True)
class DiscrepancyState:
    """Streaming ``(CD_c, D)``; colors never seen have implicit CD 0."""

    cd: Mapping[int, int] = field(default_factory=lambda: MappingProxyType({}))
    d: int = 0
    n_seen: int = 0

    def cd_of(self, color: int) -> int:
        return self.cd.get(color, 0)

    def update(self, color: int) -> "DiscrepancyState":
        return ds_update(self, color)


def ds_update(state: DiscrepancyState, color: int) -> DiscrepancyState:
    cd = {c: max(v - 1, 0) for c, v in state.cd.items() if c != color}
    cd[color] = state.cd.get(color, 0) + 1
    return DiscrepancyState(MappingProxyType(cd), max(state.d, cd[color]), state.n_seen + 1)


def ds_replay(colors: Sequence[int]) -> DiscrepancyState:
    state = DiscrepancyState()
    for c in colors:
        state = ds_update(state, c)
    return state
