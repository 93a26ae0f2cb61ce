"""Shared oracles and strategies.

The oracles here are deliberately naive and share no code with the package:
exhaustive packing enumeration, textbook Any Fit loops, segment enumeration.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from colorpack.core import make_instance

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_opt(colors, sizes) -> int:
    """Fewest bins over every order-preserving packing, by plain enumeration."""
    n = len(colors)
    best = [n]

    def go(pos, tops, levels):
        if len(tops) >= best[0]:
            return
        if pos == n:
            best[0] = len(tops)
            return
        c, s = colors[pos], sizes[pos]
        for b in range(len(tops)):
            if tops[b] != c and levels[b] + s <= 1:
                old = tops[b], levels[b]
                tops[b], levels[b] = c, levels[b] + s
                go(pos + 1, tops, levels)
                tops[b], levels[b] = old
        go(pos + 1, tops + [c], levels + [s])

    if n == 0:
        return 0
    go(0, [], [])
    return best[0]


def reference_fit(policy, colors, sizes) -> list[int]:
    """Bin index per item under nf/ff/bf/wf, written from the textbook definitions."""
    tops, levels, out = [], [], []
    current = None
    for c, s in zip(colors, sizes):
        ok = [k for k in range(len(tops)) if tops[k] != c and levels[k] + s <= 1]
        if policy == "nf":
            k = current if current in ok else None
        elif not ok:
            k = None
        elif policy == "ff":
            k = ok[0]
        elif policy == "bf":
            k = max(ok, key=lambda j: (levels[j], -j))
        else:
            k = min(ok, key=lambda j: (levels[j], j))
        if k is None:
            tops.append(c)
            levels.append(Fraction(0))
            k = len(tops) - 1
        tops[k] = c
        levels[k] += s
        current = k
        out.append(k)
    return out


def segment_discrepancy(colors) -> int:
    """max over colors and non-empty segments of (#c - #other), floored at 0."""
    best = 0
    for c in set(colors):
        for i in range(len(colors)):
            for j in range(i + 1, len(colors) + 1):
                seg = colors[i:j]
                best = max(best, 2 * seg.count(c) - len(seg))
    return best


def renumber(colors):
    """Color ids in first-appearance order, as the text format produces them."""
    order = {}
    for c in colors:
        order.setdefault(c, len(order))
    return [order[c] for c in colors]


SIZES = st.sampled_from([Fraction(0), Fraction(1, 8), Fraction(1, 4), Fraction(1, 3),
                         Fraction(1, 2), Fraction(2, 3), Fraction(3, 4), Fraction(1)])


@st.composite
def instances(draw, max_n=8, max_colors=3, zero=False, min_n=0):
    n = draw(st.integers(min_n, max_n))
    colors = renumber(draw(st.lists(st.integers(0, max_colors - 1), min_size=n, max_size=n)))
    sizes = [Fraction(0)] * n if zero else draw(st.lists(SIZES, min_size=n, max_size=n))
    return make_instance(zip(colors, sizes))


@pytest.fixture
def tmp_instance(tmp_path):
    def write(text, name="inst.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write
