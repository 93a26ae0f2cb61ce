"""Experiment specs, random instances and CSV results."""

from __future__ import annotations

import csv
import io
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Iterable

from .core import DEFAULT_COLOR_NAMES, Instance, make_instance, read_instance, validate_packing
from .discrepancy import lb1, lb2
from .offline import DEFAULT_LIMIT, exact_opt
from . import adversary
from .online import run_online

CSV_HEADER = ["instance", "algorithm", "bins", "opt", "opt_method",
              "ratio_num", "ratio_den", "runtime_ms"]

OPT_METHODS = ("auto", "exact", "lb", "lb2", "witness")


def parse_size_regime(regime: str) -> int | None:
    """``zero`` -> 0, ``uniform`` -> None, ``small:d`` -> d (sizes at most 1/d)."""
    if regime == "zero":
        return 0
    if regime == "uniform":
        return None
    kind, _, d = regime.partition(":")
    if kind == "small" and d.isdigit() and int(d) >= 1:
        return int(d)
    raise ValueError(f"unknown size regime {regime!r}; use zero, uniform or small:<d>")


def gen_random(seed: int, n: int, colors: int, size_regime: str = "zero",
               denominator: int = 100) -> Instance:
    """Seeded random instance; sizes are k/q (or k/(q*d)) with 1 <= k <= q.

    Color ids are renumbered by first appearance, matching the text format.
    """
    if colors < 1:
        raise ValueError("need at least one color")
    d = parse_size_regime(size_regime)
    rng = random.Random(seed)
    raw = [rng.randrange(colors) for _ in range(n)]
    sizes = []
    for _ in range(n):
        if d == 0:
            sizes.append(Fraction(0))
        elif d is None:
            sizes.append(Fraction(rng.randint(1, denominator), denominator))
        else:
            sizes.append(Fraction(rng.randint(1, denominator), denominator * d))
    order: dict[int, int] = {}
    for c in raw:
        order.setdefault(c, len(order))
    names = [DEFAULT_COLOR_NAMES[c] if c < len(DEFAULT_COLOR_NAMES) else f"c{c}"
             for c in sorted(order, key=order.get)]
    return make_instance(zip((order[c] for c in raw), sizes), names,
                         f"random-s{seed}-n{n}-c{colors}-{size_regime}")


@dataclass
class ExperimentSpec:
    algorithms: list[str]
    source: str = "random"          # random | file | generator
    path: str = ""
    generator: str = ""             # ffbf | wf | pseudo-tight
    seed: int = 0
    n: int = 10
    colors: int = 2
    sizes: str = "zero"
    opt: str = "auto"
    repetitions: int = 1
    limit: int = DEFAULT_LIMIT

    def instances(self) -> list[Instance]:
        if self.source == "random":
            return [gen_random(self.seed + r, self.n, self.colors, self.sizes)
                    for r in range(self.repetitions)]
        if self.source == "file":
            return [read_instance(self.path)]
        if self.source == "generator":
            return [generate(self.generator, self.n)]
        raise ValueError(f"unknown source {self.source!r}")


def generate(name: str, n: int) -> Instance:
    if name == "ffbf":
        return adversary.gen_ffbf_hard(n)
    if name == "wf":
        return adversary.gen_wf_hard(n)
    if name == "pseudo-tight":
        return adversary.gen_pseudobaf_tight(n)[0]
    raise ValueError(f"unknown generator {name!r}")


_INT_KEYS = {"seed", "n", "colors", "repetitions", "limit"}


def parse_spec(text: str) -> ExperimentSpec:
    """``key = value`` lines; ``algorithms`` is comma separated."""
    values: dict = {}
    known = {f.name for f in fields(ExperimentSpec)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (s.strip() for s in line.partition("="))
        if not sep or key not in known:
            raise ValueError(f"spec line {lineno}: cannot use {raw!r}")
        if key == "algorithms":
            values[key] = [a.strip() for a in value.split(",") if a.strip()]
        elif key in _INT_KEYS:
            values[key] = int(value)
        else:
            values[key] = value
    if "algorithms" not in values:
        raise ValueError("spec needs an 'algorithms' line")
    spec = ExperimentSpec(**values)
    if spec.opt not in OPT_METHODS:
        raise ValueError(f"unknown opt method {spec.opt!r}")
    return spec


@dataclass
class ResultRow:
    instance: str
    algorithm: str
    bins: int | None
    opt: int | None
    opt_method: str
    ratio: Fraction | None
    runtime_ms: float
    error: str = field(default="", compare=False)


def optimum(inst: Instance, method: str, limit: int = DEFAULT_LIMIT,
            generator: str = "") -> tuple[int, str]:
    """Optimum (or a lower bound on it) and the method actually used."""
    if method == "auto":
        method = "exact" if len(inst) <= limit else "lb"
    if method == "exact":
        return exact_opt(inst, limit=limit).value, "exact"
    if method == "lb":
        return max(lb1(inst), lb2(inst)), "lb"
    if method == "lb2":
        return lb2(inst), "lb2"
    if method == "witness":
        if generator not in ("ffbf", "wf"):
            raise ValueError("witness optimum is only known for the ffbf and wf generators")
        w = adversary.two_bin_witness(inst)
        if validate_packing(w):
            raise AssertionError("witness packing is invalid")
        return len(w.bins), "witness"
    raise ValueError(f"unknown opt method {method!r}")


def _rows_for(args) -> list[ResultRow]:
    inst, spec, timing = args
    try:
        opt, method = optimum(inst, spec.opt, spec.limit, spec.generator)
    except Exception as exc:  # recorded per row; the experiment carries on
        return [ResultRow(inst.label, a, None, None, spec.opt, None, 0.0, f"opt: {exc}")
                for a in spec.algorithms]
    rows = []
    for alg in spec.algorithms:
        start = time.perf_counter()
        try:
            result = run_online(alg, inst, record_state=False)
        except Exception as exc:
            rows.append(ResultRow(inst.label, alg, None, opt, method, None, 0.0, str(exc)))
            continue
        elapsed = (time.perf_counter() - start) * 1000 if timing else 0.0
        problems = validate_packing(result.packing)
        if problems:
            rows.append(ResultRow(inst.label, alg, None, opt, method, None, elapsed,
                                  f"invalid packing: {problems[0].detail}"))
            continue
        ratio = Fraction(result.bins, opt) if opt else None
        rows.append(ResultRow(inst.label, alg, result.bins, opt, method, ratio, round(elapsed, 3)))
    return rows


def run_experiment(spec: ExperimentSpec, timing: bool = True, jobs: int = 1) -> list[ResultRow]:
    """Rows in spec order: instances outer, algorithms inner."""
    tasks = [(inst, spec, timing) for inst in spec.instances()]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            chunks = list(pool.map(_rows_for, tasks))
    else:
        chunks = [_rows_for(t) for t in tasks]
    return [row for chunk in chunks for row in chunk]


def emit_csv(rows: Iterable[ResultRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([
            r.instance, r.algorithm,
            "" if r.bins is None else r.bins,
            "" if r.opt is None else r.opt,
            r.opt_method,
            "" if r.ratio is None else r.ratio.numerator,
            "" if r.ratio is None else r.ratio.denominator,
            f"{r.runtime_ms:.3f}",
        ])
    return buf.getvalue()


def parse_csv(text: str) -> list[ResultRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")

    def num(s):
        return int(s) if s != "" else None

    rows = []
    for rec in reader:
        ratio = None
        if rec["ratio_num"] != "":
            ratio = Fraction(int(rec["ratio_num"]), int(rec["ratio_den"]))
        rows.append(ResultRow(rec["instance"], rec["algorithm"], num(rec["bins"]), num(rec["opt"]),
                              rec["opt_method"], ratio, float(rec["runtime_ms"])))
    return rows
