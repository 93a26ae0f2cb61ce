"""Adaptive adversaries and static hard instances.

The adaptive games watch every placement through an :class:`AdversaryView`
and choose the next item accordingly. Color names are fixed: black (0),
white (1), red (2); the zero-size game can run under any role permutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Instance, Item, Packing, make_instance, repeat_groups
from .offline import construct_lb2_packing
from .online import OnlineAlgorithm, OnlineRun, TraceStep, ceil_3_2, make_algorithm

BLACK, WHITE, RED = 0, 1, 2
COLOR_NAMES = ("black", "white", "red")


def ceil_5_2(n: int) -> int:
    return (5 * n + 1) // 2


class AdversaryView:
    """The adversary's own copy of the packing, in the algorithm's logical bins."""

    def __init__(self, alg: OnlineAlgorithm) -> None:
        self.alg = alg
        self.bins: list[list[Item]] = []

    def record(self, step: TraceStep) -> Item | None:
        """Mirror one placement; returns the item it covered in the logical bin."""
        k = self.alg.logical_bin(step.bin)
        if k == len(self.bins):
            self.bins.append([])
        target = self.bins[k]
        covered = target[-1] if target else None
        target.append(step.item)
        return covered

    def count_top(self, color: int) -> int:
        return sum(1 for b in self.bins if b[-1].color == color)

    def matches(self, run: OnlineRun) -> bool:
        """Whether the mirror agrees with the driver's real packing."""
        groups: list[list[Item]] = [[] for _ in self.bins]
        for b in run.bins:
            groups[self.alg.logical_bin(b.creation_index)].extend(b.items)
        return groups == self.bins


@dataclass
class Move:
    item: Item
    step: TraceStep
    covered: Item | None  # previous top of the logical bin, None if it was new


class Game:
    def __init__(self, run: OnlineRun) -> None:
        self.run = run
        self.view = AdversaryView(run.alg)
        for step in run.trace:
            self.view.record(step)

    def send(self, color: int, size=0) -> Move:
        step = self.run.feed(color, size)
        return Move(step.item, step, self.view.record(step))

    def flood(self, color: int, count: int) -> None:
        for _ in range(count):
            self.send(color)

    @property
    def next_index(self) -> int:
        return len(self.run.items) + 1


@dataclass
class Transcript:
    n: int
    items: list[Item]
    placements: list[int | None]
    bins_used: list[int]
    final_bins: int
    bins_by_color: dict[int, int]
    reason: str
    flooded: int | None = None
    phases: list[str] = field(default_factory=list)
    black_bins_per_phase: list[int] = field(default_factory=list)
    witness: Packing | None = None
    mirror_ok: bool = True
    color_names: tuple[str, ...] = COLOR_NAMES

    def instance(self, label: str = "") -> Instance:
        return Instance(tuple(self.items), self.color_names, label)


def _transcript(run: OnlineRun, game: Game, n: int, reason: str, flooded: int | None,
                phases: list[str], black_counts: list[int]) -> Transcript:
    return Transcript(
        n=n,
        items=list(run.items),
        placements=[s.placement for s in run.trace],
        bins_used=[s.bin for s in run.trace],
        final_bins=run.num_bins,
        bins_by_color=dict(run.tops()),
        reason=reason,
        flooded=flooded,
        phases=phases,
        black_bins_per_phase=black_counts,
        mirror_ok=game.view.matches(run),
        color_names=tuple(run.color_names),
    )


def play_zero15(game: Game, n: int, roles: Sequence[int] = (BLACK, WHITE, RED),
                opening_flood: bool = True):
    """Zero-size phase game forcing ceil(1.5n) bins of one color at discrepancy n.

    ``roles`` maps (black, white, red) to actual colors. With
    ``opening_flood=False`` the game assumes the packing already has black
    tops with current discrepancy n for black and 0 for the other two.
    Returns ``(reason, flooded color, phase log, black bins after each phase)``.
    """
    black, white0, red0 = roles
    target = ceil_3_2(n)
    if opening_flood:
        game.flood(black, n)
    phases: list[str] = []
    black_counts = [game.view.count_top(black)]

    while True:
        if game.view.count_top(black) >= target:
            return "black bins reached target", black, phases, black_counts
        if len(phases) > target:
            raise AssertionError("zero-size game failed to terminate")
        start = game.next_index
        white, red = white0, red0

        def fresh(it: Item | None, color: int) -> bool:
            return it is not None and it.color == color and it.seq_index >= start

        def old_black(it: Item | None) -> bool:
            return it is not None and it.color == black and it.seq_index < start

        all_on_old_black = True
        for k in range(n):
            move = game.send(white if k % 2 == 0 else red)
            all_on_old_black &= old_black(move.covered)

        if not all_on_old_black:
            game.flood(black, n)
            phases.append("stray")
        elif n % 2 == 0:
            game.flood(white, n)
            phases.append("even")
            return "white flood", white, phases, black_counts
        elif not fresh(game.send(black).covered, white):   # item e
            game.flood(white, n)
            phases.append("odd:e")
            return "white flood", white, phases, black_counts
        else:
            if fresh(game.send(black).covered, white):      # item f
                white, red = red, white
                phases.append("odd:swap")
            game.send(white)                                # item g
            if not fresh(game.send(red).covered, white):    # item h
                game.flood(white, n)
                phases.append("odd:h")
                return "white flood", white, phases, black_counts
            game.flood(black, n)
            phases.append("odd:continue")
        black_counts.append(game.view.count_top(black))


def adversary_zero15(alg: OnlineAlgorithm | str, n: int) -> Transcript:
    """Force ``alg`` to ceil(1.5n) bins on zero-size items whose optimum is ``n``."""
    if n < 2:
        raise ValueError("zero-size adversary needs n > 1")
    run = OnlineRun(alg, COLOR_NAMES)
    game = Game(run)
    reason, flooded, phases, counts = play_zero15(game, n)
    return _transcript(run, game, n, reason, flooded, phases, counts)


def adversary_size25(alg: OnlineAlgorithm | str, n: int) -> Transcript:
    """Zero-size game, then phases of tiny and huge items; ``witness`` packs it into n + 1 bins."""
    if n < 2:
        raise ValueError("size adversary needs n > 1")
    run = OnlineRun(alg, COLOR_NAMES)
    game = Game(run)
    reason, white, phases, counts = play_zero15(game, n)
    split = len(run.items)
    black = min(c for c in (BLACK, WHITE, RED) if c != white)

    eps = Fraction(1, 6 * n)
    i = j = 0
    towers: list[list[int]] = []   # regular black, huge white, regular black
    leftovers: list[int] = []
    while j < n and i < ceil_5_2(n):
        i += 1
        delta = Fraction(1, 5 ** i * 6 * n)
        leftovers.append(game.send(white, eps).item.seq_index - 1)
        move = game.send(black, delta)
        if move.step.opened or move.step.level_before == 0:
            leftovers.append(move.item.seq_index - 1)
            continue
        j += 1
        special = game.send(black, 3 * delta).item
        huge = game.send(white, 1 - 2 * delta).item
        closing = game.send(black, delta).item
        leftovers.append(special.seq_index - 1)
        towers.append([move.item.seq_index - 1, huge.seq_index - 1, closing.seq_index - 1])

    t = _transcript(run, game, n, reason, white, phases, counts)
    t.phases.append(f"size phases={i} huge={j}")
    inst = t.instance()
    base = construct_lb2_packing(inst.slice(0, split))
    groups = [[it.seq_index - 1 for it in b.items] for b in base.bins]
    for g, tower in zip(groups, towers):
        g.extend(tower)
    groups.append(leftovers)
    t.witness = Packing.from_assignment(inst, groups)
    return t


# -- static instances -----------------------------------------------------------

def gen_ffbf_hard(n: int) -> Instance:
    """n x (b/e, b/e, w/e, r/e) with e = 1/(4n): First and Best Fit use n + 1 bins, optimum 2."""
    if n < 1:
        raise ValueError("n must be positive")
    e = Fraction(1, 4 * n)
    group = [(BLACK, e), (BLACK, e), (WHITE, e), (RED, e)]
    return make_instance(repeat_groups(n, group), COLOR_NAMES, f"ffbf-hard n={n}")


def gen_wf_hard(n: int) -> Instance:
    """n x (b/d, b/e, w/d, r/d) with e = 1/(2n), d = 1/(6n^2+1): Worst Fit uses n + 1 bins."""
    if n < 1:
        raise ValueError("n must be positive")
    e, d = Fraction(1, 2 * n), Fraction(1, 6 * n * n + 1)
    group = [(BLACK, d), (BLACK, e), (WHITE, d), (RED, d)]
    return make_instance(repeat_groups(n, group), COLOR_NAMES, f"wf-hard n={n}")


# ids in order of first appearance, so the text format round-trips them
TIGHT_NAMES = ("white", "black", "red")
T_WHITE, T_BLACK, T_RED = 0, 1, 2


def pseudobaf_tight_prefix(n: int) -> Instance:
    """(n-1) x (w/e, b/1, b/e) with e = 1/(2n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    e = Fraction(1, 2 * n)
    group = [(T_WHITE, e), (T_BLACK, 1), (T_BLACK, e)]
    return make_instance(repeat_groups(n - 1, group), TIGHT_NAMES, f"pseudo-tight prefix n={n}")


def gen_pseudobaf_tight(n: int, alg: OnlineAlgorithm | str = "pseudo-baf") -> tuple[Instance, Transcript]:
    """Sized prefix, then the zero-size phases with parameter n played against ``alg``.

    Against Pseudo-BAF the prefix leaves n black-topped pseudo bins, black
    current discrepancy n and the others 0, which is where the zero-size game
    stands after its opening flood; so the phases start directly.
    """
    prefix = pseudobaf_tight_prefix(n)
    run = OnlineRun(alg, TIGHT_NAMES)
    for it in prefix:
        run.push(it)
    game = Game(run)
    reason, flooded, phases, counts = play_zero15(game, n, (T_BLACK, T_WHITE, T_RED),
                                                  opening_flood=False)
    t = _transcript(run, game, n, reason, flooded, phases, counts)
    return t.instance(f"pseudo-tight n={n}"), t


def two_bin_witness(inst: Instance) -> Packing:
    """Two-bin packing of a ``gen_ffbf_hard``/``gen_wf_hard`` instance.

    Per group: first black and white in one bin, second black and red in the other.
    """
    if len(inst) % 4:
        raise ValueError("expected groups of four items")
    left, right = [], []
    for g in range(0, len(inst), 4):
        left += [g, g + 2]
        right += [g + 1, g + 3]
    return Packing.from_assignment(inst, [left, right])
