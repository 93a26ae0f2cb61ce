"""Restricted offline optimum: zero-size construction and exact search."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import ONE, ZERO, Instance, Packing
from .discrepancy import lb1, lb2


@dataclass(frozen=True, order=True)
class ImportantInterval:
    start: int  # positions into the working sequence, inclusive
    end: int
    dominant: int


def important_intervals(colors: list[int], d: int) -> list[ImportantInterval]:
    """Maximal segments whose discrepancy for some color equals ``d``, sorted by start."""
    found = []
    for c in set(colors):
        first_at: dict[int, int] = {0: -1}
        prefix = low = 0
        spans = []
        for j, x in enumerate(colors):
            prefix += 1 if x == c else -1
            if prefix - low == d:
                spans.append((first_at[prefix - d] + 1, j))
            first_at.setdefault(prefix, j)
            low = min(low, prefix)
        # overlapping d-segments of one color unite into a d-segment
        for s, e in sorted(spans):
            if found and found[-1][2] == c and s <= found[-1][1]:
                found[-1] = (found[-1][0], max(e, found[-1][1]), c)
            else:
                found.append((s, e, c))
    return sorted(ImportantInterval(s, e, c) for s, e, c in found)


class _Constructor:
    """Packs a zero-size color sequence into exactly max(1, LB2) bins.

    Works on lists of positions into ``colors``; bins are lists of positions.
    Every recursive call is on a strictly shorter sequence.
    """

    def __init__(self, colors: list[int]) -> None:
        self.colors = colors

    def pack(self, seq: list[int]) -> list[list[int]]:
        if not seq:
            return []
        cols = [self.colors[p] for p in seq]
        d = lb2(cols)
        if d <= 1:
            return [list(seq)]
        bins = self._pack(seq, cols, d)
        assert len(bins) == d, (len(bins), d)
        return bins

    def _pack(self, seq, cols, d):
        intervals = important_intervals(cols, d)

        for iv in intervals:
            mixed = [k for k in range(iv.start, iv.end + 1) if cols[k] != iv.dominant]
            if mixed:
                return self._splice_pair(seq, cols, mixed[-1], iv.dominant)

        k = len(intervals)
        bounds = [(iv.start, iv.end) for iv in intervals]
        n = len(seq)
        if k > 2:
            s2, e2 = bounds[1]
            return self._glue(self.pack(seq[:e2 + 1]), self.pack(seq[s2:]), seq[s2:e2 + 1])
        if k == 1:
            (s1, e1), = bounds
            head, tail = s1 > 0, e1 < n - 1
            if head and tail:
                return self._glue(self.pack(seq[:e1 + 1]), self.pack(seq[s1:]), seq[s1:e1 + 1])
            if tail:
                return [[seq[0]]] + self.pack(seq[1:])
            if head:
                return self.pack(seq[:-1]) + [[seq[-1]]]
            return [[p] for p in seq]
        (s1, e1), (s2, e2) = bounds
        if s1 > 0:
            return self._glue(self.pack(seq[:e1 + 1]), self.pack(seq[s1:]), seq[s1:e1 + 1])
        if e2 < n - 1:
            return self._glue(self.pack(seq[:e2 + 1]), self.pack(seq[s2:]), seq[s2:e2 + 1])
        if e1 + 1 == s2:
            return [[a, b] for a, b in zip(seq[s1:e1 + 1], seq[s2:e2 + 1])]
        c1, c2 = intervals[0].dominant, intervals[1].dominant
        if c1 != c2:
            return self.pack(seq[1:-1]) + [[seq[0], seq[-1]]]
        q = next(k for k in range(e1 + 1, s2) if cols[k] != c1)
        rest = seq[1:q] + seq[q + 1:-1]
        return self.pack(rest) + [[seq[0], seq[q], seq[-1]]]

    def _splice_pair(self, seq, cols, a, dominant):
        """Drop (a, a+1), pack the rest, put both back on a ``dominant``-topped bin."""
        pa, pb = seq[a], seq[a + 1]
        bins = self.pack(seq[:a] + seq[a + 2:])
        for b in bins:
            below = [p for p in b if p < pa]
            if below and self.colors[below[-1]] == dominant:
                cut = len(below)
                b[cut:cut] = [pa, pb]
                return bins
        raise AssertionError("no bin topped by the dominant color before the spliced pair")

    @staticmethod
    def _glue(left, right, run):
        """Join bins of ``left`` ending in ``run`` to bins of ``right`` starting with it."""
        by_end = {b[-1]: b for b in left}
        by_start = {b[0]: b for b in right}
        return [by_end[p] + by_start[p][1:] for p in run]


def construct_lb2_packing(inst: Instance) -> Packing:
    """A packing of a zero-size instance into max(1, LB2) bins (none if empty)."""
    if any(it.size != 0 for it in inst):
        raise ValueError("construct_lb2_packing needs zero-size items")
    bins = _Constructor(list(inst.colors)).pack(list(range(len(inst))))
    bins.sort(key=lambda b: b[0])
    return Packing.from_assignment(inst, bins)


# -- exact search -------------------------------------------------------------------

class InstanceTooLarge(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    pass


@dataclass
class OptResult:
    value: int
    packing: Packing
    nodes: int


DEFAULT_LIMIT = 16
DEFAULT_NODE_BUDGET = 3_000_000


class _Search:
    def __init__(self, inst: Instance, budget: int) -> None:
        self.inst = inst
        self.colors = [it.color for it in inst]
        self.sizes = [it.size for it in inst]
        n = len(inst)
        self.suffix_size = [ZERO] * (n + 1)
        for p in range(n - 1, -1, -1):
            self.suffix_size[p] = self.suffix_size[p + 1] + self.sizes[p]
        # best discrepancy of each color over segments starting at p
        palette = sorted(set(self.colors))
        self.lead = {c: [0] * (n + 1) for c in palette}
        for c, arr in self.lead.items():
            for p in range(n - 1, -1, -1):
                arr[p] = max(0, (1 if self.colors[p] == c else -1) + arr[p + 1])
        self.budget = budget
        self.nodes = 0

    def feasible(self, k: int) -> list[int] | None:
        """Bin index per item for a packing into at most ``k`` bins, if one exists."""
        self.k = k
        self.tops: list[int] = []
        self.levels: list[Fraction] = []
        self.assign: list[int] = []
        self.dead: set = set()
        return list(self.assign) if self._dfs(0) else None

    def _dfs(self, pos: int) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"exceeded {self.budget} search nodes")
        if pos == len(self.colors):
            return True
        tops, levels, k = self.tops, self.levels, self.k
        free = (k - len(tops)) + sum(ONE - lv for lv in levels)
        if self.suffix_size[pos] > free:
            return False
        for c, arr in self.lead.items():
            if arr[pos] and tops.count(c) + arr[pos] > k:
                return False
        key = (pos, tuple(sorted(zip(tops, levels))))
        if key in self.dead:
            return False

        color, size = self.colors[pos], self.sizes[pos]
        tried = set()
        for b in range(len(tops)):
            sig = (tops[b], levels[b])
            if tops[b] == color or levels[b] + size > ONE or sig in tried:
                continue
            tried.add(sig)
            tops[b], levels[b] = color, levels[b] + size
            self.assign.append(b)
            if self._dfs(pos + 1):
                return True
            self.assign.pop()
            tops[b], levels[b] = sig
        if len(tops) < k:
            tops.append(color)
            levels.append(size)
            self.assign.append(len(tops) - 1)
            if self._dfs(pos + 1):
                return True
            self.assign.pop()
            tops.pop()
            levels.pop()
        self.dead.add(key)
        return False


def exact_opt(inst: Instance, limit: int = DEFAULT_LIMIT,
              node_budget: int = DEFAULT_NODE_BUDGET) -> OptResult:
    """Minimum number of bins over order-preserving packings, with a witness.

    Raises :class:`InstanceTooLarge` above ``limit`` items and
    :class:`SearchBudgetExceeded` rather than return an unproven value.
    """
    n = len(inst)
    if n > limit:
        raise InstanceTooLarge(f"{n} items exceeds the exact-solver limit of {limit}")
    if n == 0:
        return OptResult(0, Packing([], inst), 0)
    search = _Search(inst, node_budget)
    k = max(lb1(inst), lb2(inst), 1)
    while True:
        assign = search.feasible(k)
        if assign is not None:
            groups = [[] for _ in range(max(assign) + 1)]
            for pos, b in enumerate(assign):
                groups[b].append(pos)
            return OptResult(k, Packing.from_assignment(inst, groups), search.nodes)
        k += 1
