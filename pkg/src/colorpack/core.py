"""Items, bins, packings and the plain-text instance format.

Sizes are :class:`fractions.Fraction` throughout. Colors are small integer
ids; an :class:`Instance` carries the display names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_COLOR_NAMES = ("black", "white", "red", "blue", "green", "yellow")


def color_name(color: int) -> str:
    if color < len(DEFAULT_COLOR_NAMES):
        return DEFAULT_COLOR_NAMES[color]
    return f"c{color}"


def as_size(value) -> Fraction:
    """Coerce ``value`` to an exact size in [0, 1].

    Floats are rejected: they would silently round.
    """
    if isinstance(value, float):
        raise TypeError("sizes must be exact; got float %r" % value)
    size = Fraction(value)
    if not ZERO <= size <= ONE:
        raise ValueError(f"size {size} outside [0, 1]")
    return size


@dataclass(frozen=True)
class Item:
    color: int
    size: Fraction
    seq_index: int  # 1-based position in the input sequence

    def __str__(self) -> str:
        return f"#{self.seq_index}:{self.color}/{self.size}"


@dataclass
class Bin:
    creation_index: int
    items: list[Item] = field(default_factory=list)
    level: Fraction = ZERO

    @property
    def top(self) -> Item | None:
        return self.items[-1] if self.items else None

    @property
    def top_color(self) -> int | None:
        return self.items[-1].color if self.items else None

    def accepts(self, item: Item) -> bool:
        """Whether ``item`` may legally be put on top of this bin."""
        return self.top_color != item.color and self.level + item.size <= ONE

    def add(self, item: Item) -> None:
        self.items.append(item)
        self.level += item.size


@dataclass(frozen=True)
class Instance:
    items: tuple[Item, ...]
    color_names: tuple[str, ...] = ()
    label: str = ""

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(it.color for it in self.items)

    @property
    def num_colors(self) -> int:
        used = max((it.color for it in self.items), default=-1) + 1
        return max(used, len(self.color_names))

    def name_of(self, color: int) -> str:
        if color < len(self.color_names):
            return self.color_names[color]
        return color_name(color)

    def slice(self, start: int, stop: int) -> "Instance":
        """Contiguous sub-sequence ``items[start:stop]``, renumbered from 1."""
        return make_instance(
            [(it.color, it.size) for it in self.items[start:stop]],
            color_names=self.color_names,
            label=self.label,
        )

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, object]], label: str = "") -> "Instance":
        """Build from ``(color name, size)`` pairs; ids follow first appearance."""
        names: dict[str, int] = {}
        items = []
        for k, (name, size) in enumerate(pairs, start=1):
            cid = names.setdefault(name, len(names))
            items.append(Item(cid, as_size(size), k))
        return cls(tuple(items), tuple(names), label)


def make_instance(pairs: Iterable[tuple[int, object]], color_names: Sequence[str] = (),
                  label: str = "") -> Instance:
    """Build from ``(color id, size)`` pairs."""
    items = tuple(Item(c, as_size(s), k) for k, (c, s) in enumerate(pairs, start=1))
    return Instance(items, tuple(color_names), label)


def zero_instance(colors: Iterable[int], color_names: Sequence[str] = (), label: str = "") -> Instance:
    return make_instance(((c, 0) for c in colors), color_names, label)


def repeat_groups(n: int, group: Sequence[tuple[int, object]]) -> list[tuple[int, object]]:
    """``n x (c1/s1, ..., ck/sk)`` as a flat list of pairs."""
    return [pair for _ in range(n) for pair in group]


@dataclass
class Packing:
    bins: list[Bin]
    source: Instance

    @classmethod
    def from_assignment(cls, inst: Instance, groups: Iterable[Iterable[int]]) -> "Packing":
        """Packing whose bins hold the given 0-based item positions, in order given."""
        bins = []
        for k, positions in enumerate(groups):
            b = Bin(k)
            for p in positions:
                b.add(inst.items[p])
            bins.append(b)
        return cls(bins, inst)

    def as_lists(self) -> list[list[int]]:
        """Bins as lists of 1-based sequence indices."""
        return [[it.seq_index for it in b.items] for b in self.bins]

    def describe(self) -> str:
        src = self.source
        lines = []
        for b in self.bins:
            cells = " ".join(f"{src.name_of(it.color)}/{it.size}" for it in b.items)
            lines.append(f"bin {b.creation_index}: level={b.level} [{cells}]")
        return "\n".join(lines)


def bin_count(p: Packing) -> int:
    return sum(1 for b in p.bins if b.items)


@dataclass(frozen=True)
class Violation:
    kind: str  # capacity | adjacency | order | missing | duplicate | foreign | level
    bin: int | None
    detail: str


def validate_packing(p: Packing) -> list[Violation]:
    """Every violated packing constraint; an empty list means the packing is valid."""
    out: list[Violation] = []
    by_index = {it.seq_index: it for it in p.source.items}
    seen: dict[int, int] = {}
    for k, b in enumerate(p.bins):
        total = sum((it.size for it in b.items), ZERO)
        if total != b.level:
            out.append(Violation("level", k, f"cached level {b.level} != {total}"))
        if total > ONE:
            out.append(Violation("capacity", k, f"level {total} > 1"))
        for lo, hi in zip(b.items, b.items[1:]):
            if lo.color == hi.color:
                out.append(Violation("adjacency", k, f"items {lo.seq_index},{hi.seq_index} share color {lo.color}"))
            if lo.seq_index >= hi.seq_index:
                out.append(Violation("order", k, f"item {hi.seq_index} stacked on later item {lo.seq_index}"))
        for it in b.items:
            if by_index.get(it.seq_index) != it:
                out.append(Violation("foreign", k, f"item {it} not in source"))
            elif it.seq_index in seen:
                out.append(Violation("duplicate", k, f"item {it.seq_index} also in bin {seen[it.seq_index]}"))
            else:
                seen[it.seq_index] = k
    for idx in by_index:
        if idx not in seen:
            out.append(Violation("missing", None, f"item {idx} not packed"))
    return out


def is_valid(p: Packing) -> bool:
    return not validate_packing(p)


# -- text format -------------------------------------------------------------

def parse_instance(text: str, label: str = "") -> Instance:
    """Parse ``<color-name> <num>/<den>`` lines; ``#`` starts a comment line."""
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<color> <size>', got {raw!r}")
        name, size = parts
        try:
            pairs.append((name, Fraction(size)))
        except ValueError:
            raise ValueError(f"line {lineno}: bad size {size!r}") from None
    return Instance.from_pairs(pairs, label=label)


def format_instance(inst: Instance) -> str:
    lines = []
    if inst.label:
        lines.append(f"# {inst.label}")
    for it in inst.items:
        lines.append(f"{inst.name_of(it.color)} {it.size.numerator}/{it.size.denominator}")
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path) as fh:
        return parse_instance(fh.read(), label=str(path))


def write_instance(inst: Instance, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_instance(inst))
