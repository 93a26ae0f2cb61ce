"""Online algorithms and the driver that applies their placements.

An algorithm sees one item at a time. :meth:`OnlineAlgorithm.place` returns
the index of an open bin or ``None`` (``NEW_BIN``) to open a new one; the
driver checks the choice, updates the packing and then calls
:meth:`OnlineAlgorithm.commit` with the bin actually used.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import ONE, ZERO, Bin, Instance, Item, Packing, as_size, color_name
from .discrepancy import DiscrepancyState, ds_update

NEW_BIN = None


def half_up(d: int) -> int:
    return (d + 1) // 2


def ceil_3_2(d: int) -> int:
    """``ceil(1.5 * d)`` on integers."""
    return (3 * d + 1) // 2


class IllegalPlacement(RuntimeError):
    pass


class OnlineAlgorithm:
    name = "?"

    def place(self, item: Item, bins: Sequence[Bin]) -> int | None:
        raise NotImplementedError

    def commit(self, item: Item, index: int, opened: bool) -> None:
        pass

    def snapshot(self) -> dict | None:
        return None

    def logical_bin(self, index: int) -> int:
        """Bin id as the algorithm's decision layer sees it (pseudo bin for Pseudo)."""
        return index


class NextFit(OnlineAlgorithm):
    name = "nf"

    def __init__(self) -> None:
        self.current: int | None = None

    def place(self, item, bins):
        if self.current is not None and bins[self.current].accepts(item):
            return self.current
        return NEW_BIN

    def commit(self, item, index, opened):
        self.current = index


class AnyFit(OnlineAlgorithm):
    """First, Best or Worst Fit over all open bins."""

    def __init__(self, policy: str = "first") -> None:
        if policy not in ("first", "best", "worst"):
            raise ValueError(f"unknown Any Fit policy {policy!r}")
        self.policy = policy
        self.name = {"first": "ff", "best": "bf", "worst": "wf"}[policy]

    def place(self, item, bins):
        chosen = None
        for k, b in enumerate(bins):
            if not b.accepts(item):
                continue
            if self.policy == "first":
                return k
            if (chosen is None
                    or (self.policy == "best" and b.level > bins[chosen].level)
                    or (self.policy == "worst" and b.level < bins[chosen].level)):
                chosen = k
        return chosen


class BafLayer:
    """Balancing Any Fit on bins seen only through their top colors.

    Case tests use bin counts and discrepancy from before the incoming item;
    the discrepancy state is advanced in :meth:`apply`.
    """

    def __init__(self) -> None:
        self.tops: list[int] = []
        self.n_bins: Counter = Counter()
        self.disc = DiscrepancyState()
        self.last_case = 0

    def _first_with_top(self, colors) -> int:
        for k, t in enumerate(self.tops):
            if t in colors:
                return k
        raise AssertionError("no bin with the requested top color")

    def choose(self, color: int) -> int | None:
        if all(t == color for t in self.tops):
            self.last_case = 1
            return NEW_BIN
        half = half_up(self.disc.d)
        over = sorted(c for c, n in self.n_bins.items() if n > half)
        if len(over) <= 1:
            self.last_case = 2
            best = max(n for c, n in self.n_bins.items() if c != color)
            targets = {c for c, n in self.n_bins.items() if c != color and n == best and n > 0}
            # tie between colors broken by First Fit over their bins
            return self._first_with_top(targets)
        if len(over) > 2:
            raise AssertionError(f"main invariant broken: colors {over} all exceed {half}")
        self.last_case = 3
        b, w = over
        if color == w:
            target = b
        elif color == b:
            target = w
        elif self.n_bins[b] - half < self.disc.cd_of(b):
            target = w
        else:
            target = b
        return self._first_with_top({target})

    def apply(self, color: int, index: int | None) -> None:
        if index is None:
            self.tops.append(color)
        else:
            self.n_bins[self.tops[index]] -= 1
            self.tops[index] = color
        self.n_bins[color] += 1
        self.disc = ds_update(self.disc, color)

    def snapshot(self) -> dict:
        return {
            "n_bins": {c: n for c, n in self.n_bins.items() if n},
            "cd": dict(self.disc.cd),
            "d": self.disc.d,
            "bins": len(self.tops),
            "case": self.last_case,
        }


class FirstFitColorLayer:
    """First Fit on unbounded-capacity bins: the color layer of plain Pseudo."""

    def __init__(self) -> None:
        self.tops: list[int] = []
        self.last_case = 0

    def choose(self, color: int) -> int | None:
        for k, t in enumerate(self.tops):
            if t != color:
                return k
        return NEW_BIN

    def apply(self, color: int, index: int | None) -> None:
        if index is None:
            self.tops.append(color)
        else:
            self.tops[index] = color

    def snapshot(self) -> dict:
        return {"bins": len(self.tops)}


class BalancingAnyFit(OnlineAlgorithm):
    """BAF for zero-size items; refuses anything else."""

    name = "baf"

    def __init__(self) -> None:
        self.layer = BafLayer()

    def place(self, item, bins):
        if item.size != 0:
            raise ValueError(f"BAF packs zero-size items only; got size {item.size}")
        return self.layer.choose(item.color)

    def commit(self, item, index, opened):
        self.layer.apply(item.color, None if opened else index)

    def snapshot(self):
        return self.layer.snapshot()


class PseudoPacker(OnlineAlgorithm):
    """Colors-only layer choosing a pseudo bin, Next Fit inside each pseudo bin."""

    def __init__(self, layer: str = "baf") -> None:
        if layer == "baf":
            self.layer = BafLayer()
        elif layer == "af":
            self.layer = FirstFitColorLayer()
        else:
            raise ValueError(f"unknown pseudo layer {layer!r}")
        self.name = f"pseudo-{layer}"
        self.current_real: list[int] = []  # per pseudo bin, its open real bin
        self.pseudo_of: list[int] = []     # per real bin
        self._pending: int | None = None

    def place(self, item, bins):
        p = self._pending = self.layer.choose(item.color)
        if p is None:
            return NEW_BIN
        r = self.current_real[p]
        return r if bins[r].level + item.size <= ONE else NEW_BIN

    def commit(self, item, index, opened):
        p = self._pending
        self.layer.apply(item.color, p)
        if p is None:
            p = len(self.current_real)
            self.current_real.append(index)
        elif opened:
            self.current_real[p] = index
        if opened:
            self.pseudo_of.append(p)

    def snapshot(self):
        snap = self.layer.snapshot()
        snap["real_bins"] = len(self.pseudo_of)
        return snap

    def logical_bin(self, index):
        return self.pseudo_of[index]


ALGORITHMS = {
    "nf": NextFit,
    "ff": lambda: AnyFit("first"),
    "bf": lambda: AnyFit("best"),
    "wf": lambda: AnyFit("worst"),
    "baf": BalancingAnyFit,
    "pseudo-baf": lambda: PseudoPacker("baf"),
    "pseudo-af": lambda: PseudoPacker("af"),
}


def make_algorithm(name: str) -> OnlineAlgorithm:
    try:
        return ALGORITHMS[name]()
    except KeyError:
        raise ValueError(f"unknown algorithm {name!r}; choose from {sorted(ALGORITHMS)}") from None


@dataclass
class TraceStep:
    item: Item
    placement: int | None  # as returned by the algorithm
    bin: int               # bin actually used
    covered: Item | None   # previous top of that bin
    level_before: Fraction
    had_room: bool         # some open bin could legally take the item
    state: dict | None

    @property
    def opened(self) -> bool:
        return self.placement is None


class OnlineRun:
    """Feeds items to one algorithm and keeps the resulting packing."""

    def __init__(self, alg: OnlineAlgorithm | str, color_names: Sequence[str] = (),
                 record_state: bool = True) -> None:
        self.alg = make_algorithm(alg) if isinstance(alg, str) else alg
        self.color_names = list(color_names)
        self.bins: list[Bin] = []
        self.items: list[Item] = []
        self.trace: list[TraceStep] = []
        self.record_state = record_state

    def feed(self, color: int, size=ZERO) -> TraceStep:
        return self.push(Item(color, as_size(size), len(self.items) + 1))

    def push(self, item: Item) -> TraceStep:
        bins = self.bins
        placement = self.alg.place(item, bins)
        had_room = any(b.accepts(item) for b in bins)
        if placement is None:
            index = len(bins)
            bins.append(Bin(index))
            covered, level = None, ZERO
        else:
            if not (0 <= placement < len(bins)) or not bins[placement].accepts(item):
                raise IllegalPlacement(f"{self.alg.name} put {item} into bin {placement}")
            index = placement
            covered, level = bins[index].top, bins[index].level
        bins[index].add(item)
        self.items.append(item)
        self.alg.commit(item, index, placement is None)
        step = TraceStep(item, placement, index, covered, level, had_room,
                         self.alg.snapshot() if self.record_state else None)
        self.trace.append(step)
        return step

    @property
    def num_bins(self) -> int:
        return len(self.bins)

    def instance(self, label: str = "") -> Instance:
        names = self.color_names or [color_name(c) for c in range(1 + max((it.color for it in self.items), default=-1))]
        return Instance(tuple(self.items), tuple(names), label)

    def packing(self, label: str = "") -> Packing:
        return Packing(self.bins, self.instance(label))

    def tops(self) -> Counter:
        return Counter(b.top_color for b in self.bins)


@dataclass
class RunResult:
    packing: Packing
    trace: list[TraceStep] = field(repr=False)

    @property
    def bins(self) -> int:
        return len(self.packing.bins)


def run_online(alg: OnlineAlgorithm | str, inst: Instance, record_state: bool = True) -> RunResult:
    run = OnlineRun(alg, inst.color_names, record_state=record_state)
    for it in inst.items:
        run.push(it)
    # keep the caller's instance as the source so validation compares like with like
    return RunResult(Packing(run.bins, inst), run.trace)


# -- audits ---------------------------------------------------------------------

def strictly_top_two(n_bins: dict, colors: Sequence[int]) -> tuple[int, int] | None:
    """The two colors whose bin counts strictly exceed every other color's, if any."""
    counts = sorted(((n_bins.get(c, 0), c) for c in colors), reverse=True)
    if len(counts) < 2:
        return None
    if len(counts) > 2 and counts[1][0] <= counts[2][0]:
        return None
    return counts[0][1], counts[1][1]


def baf_violations(state: dict, colors: Sequence[int]) -> list[str]:
    """Main and secondary invariant failures in one BAF snapshot."""
    out = []
    n_bins, cd, d = state["n_bins"], state["cd"], state["d"]
    half = half_up(d)
    alpha = {c: n_bins.get(c, 0) - half for c in colors}
    for c in colors:
        if alpha[c] > cd.get(c, 0):
            out.append(f"main invariant fails for color {c}: {alpha[c]} > CD {cd.get(c, 0)}")
    pair = strictly_top_two(n_bins, colors)
    if pair is not None:
        b, w = pair
        if 2 * alpha[b] + 2 * alpha[w] > cd.get(b, 0) + cd.get(w, 0) + 1:
            out.append(f"secondary invariant fails for colors {b},{w}")
    if state["bins"] > ceil_3_2(d):
        out.append(f"{state['bins']} bins exceed ceil(1.5*{d})")
    return out


def audit_baf(trace: Sequence[TraceStep], colors: Sequence[int]) -> list[str]:
    out = []
    for t, step in enumerate(trace, start=1):
        out.extend(f"step {t}: {msg}" for msg in baf_violations(step.state, colors))
    return out


def audit_any_fit(trace: Sequence[TraceStep]) -> list[str]:
    return [f"step {t}: opened a bin although one had room"
            for t, step in enumerate(trace, start=1) if step.opened and step.had_room]
