"""Acceptance criteria, one test each; every test also prints a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the lines alone.
Comparisons are exact integer or rational arithmetic throughout.
"""

from __future__ import annotations

import math
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from colorpack.adversary import (adversary_size25, adversary_zero15, ceil_5_2, gen_ffbf_hard,
                                 gen_pseudobaf_tight, gen_wf_hard)
from colorpack.core import validate_packing
from colorpack.discrepancy import current_discrepancy, ds_replay, lb1, lb2, lb2_oracle
from colorpack.harness import gen_random
from colorpack.offline import construct_lb2_packing, exact_opt
from colorpack.online import ceil_3_2, run_online

from conftest import ACCEPTANCE_LINES

SEED = 20240601


def verdict(num, title, budget_s, body):
    start = time.perf_counter()
    failures, detail = body()
    elapsed = time.perf_counter() - start
    in_time = elapsed < budget_s
    ok = not failures and in_time
    line = (f"{'PASS' if ok else 'FAIL'}  [{num}] {title}: {detail}; "
            f"{elapsed:.1f}s (limit {budget_s}s)")
    if failures:
        line += f"; {len(failures)} failure(s), first: {failures[0]}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert not failures, failures[:5]
    assert in_time, f"took {elapsed:.1f}s, limit {budget_s}s"


def instances(tag, count, max_n, max_colors, regime="zero", min_n=1):
    rng = random.Random(f"{SEED}-{tag}")
    for _ in range(count):
        n = rng.randint(min_n, max_n)
        yield gen_random(rng.randrange(2**32), n, rng.randint(1, max_colors), regime)


# -- 1 ----------------------------------------------------------------------------

def _zero_sandwich():
    failures = []
    for inst in instances("c1", 500, 12, 4):
        p = construct_lb2_packing(inst)
        built, bound, opt = len(p.bins), lb2(inst), exact_opt(inst).value
        if validate_packing(p) or not built == bound == opt:
            failures.append((inst.colors, built, bound, opt))
    return failures, "500 instances, constructed = lb2 = exact optimum"


def test_criterion_1_zero_size_sandwich():
    verdict(1, "zero-size optimality sandwich", 60, _zero_sandwich)


# -- 2 ----------------------------------------------------------------------------

def _baf_every_prefix():
    failures = []
    steps = 0
    for inst in instances("c2", 10_000, 100, 5):
        res = run_online("baf", inst, record_state=False)
        if validate_packing(res.packing):
            failures.append(("invalid", inst.colors))
            continue
        tops: list[int] = []
        cd: dict[int, int] = {}
        d = 0
        for step in res.trace:
            c = step.item.color
            if step.opened:
                tops.append(c)
            else:
                tops[step.bin] = c
            # independent running current discrepancy per color
            for other in list(cd):
                if other != c:
                    cd[other] = max(cd[other] - 1, 0)
            cd[c] = cd.get(c, 0) + 1
            d = max(d, cd[c])
            steps += 1
            if len(tops) > ceil_3_2(d):
                failures.append(("bins", inst.label, step.item.seq_index))
            n_bins = {col: tops.count(col) for col in set(tops)}
            half = (d + 1) // 2
            alpha = {col: n_bins.get(col, 0) - half for col in cd}
            if any(alpha[col] > cd[col] for col in cd):
                failures.append(("main", inst.label, step.item.seq_index))
            ranked = sorted(((n_bins.get(col, 0), col) for col in cd), reverse=True)
            if len(ranked) >= 2 and (len(ranked) == 2 or ranked[1][0] > ranked[2][0]):
                b, w = ranked[0][1], ranked[1][1]
                if 2 * alpha[b] + 2 * alpha[w] > cd[b] + cd[w] + 1:
                    failures.append(("secondary", inst.label, step.item.seq_index))
    return failures, f"10000 instances, {steps} steps audited"


def test_criterion_2_baf_upper_bound():
    verdict(2, "BAF bins <= ceil(1.5 LB2) and invariants at every step", 120, _baf_every_prefix)


# -- 3 ----------------------------------------------------------------------------

def _zero15_tightness():
    failures = []
    for alg in ("nf", "ff", "bf", "wf", "baf"):
        for n in range(2, 21):
            t = adversary_zero15(alg, n)
            target = ceil_3_2(n)
            if t.final_bins < target or lb2(t.items) != n:
                failures.append((alg, n, t.final_bins, lb2(t.items)))
            if alg == "baf" and t.final_bins != target:
                failures.append(("baf not exact", n, t.final_bins))
            if n <= 8 and exact_opt(t.instance(), limit=10_000).value != n:
                failures.append(("opt", alg, n))
    return failures, "5 algorithms x n=2..20, BAF exactly ceil(1.5n)"


def test_criterion_3_zero15_lower_bound():
    verdict(3, "zero-size adversary forces ceil(1.5n) bins", 120, _zero15_tightness)


# -- 4 ----------------------------------------------------------------------------

def _size25():
    failures = []
    worst_at_12 = None
    for alg in ("ff", "bf", "wf", "pseudo-baf"):
        for n in range(2, 13):
            t = adversary_size25(alg, n)
            w = t.witness
            if t.final_bins < ceil_5_2(n) or validate_packing(w) or len(w.bins) != n + 1:
                failures.append((alg, n, t.final_bins, len(w.bins)))
            ratio = Fraction(t.final_bins, len(w.bins))
            if ratio < Fraction(ceil_5_2(n), n + 1):
                failures.append(("ratio", alg, n, ratio))
            if n == 12:
                worst_at_12 = ratio if worst_at_12 is None else min(worst_at_12, ratio)
    detail = (f"4 algorithms x n=2..12; smallest ratio at n=12 is {worst_at_12} "
              f"= {float(worst_at_12):.3f} (2.5 is only approached asymptotically)")
    return failures, detail


def test_criterion_4_size25_lower_bound():
    verdict(4, "sized adversary forces ceil(2.5n) bins against OPT n+1", 60, _size25)


# -- 5 ----------------------------------------------------------------------------

def _pseudo_baf():
    failures = []
    # (a) general sizes
    for regime, count in (("uniform", 300), ("zero", 100), ("small:4", 100)):
        for inst in instances(f"c5a-{regime}", count, 14, 4, regime):
            res = run_online("pseudo-baf", inst)
            opt = exact_opt(inst).value
            if validate_packing(res.packing) or 2 * res.bins > 7 * opt:
                failures.append(("a", inst.label, res.bins, opt))
    # (b) sizes at most 1/d
    for d in (2, 3):
        factor = Fraction(3, 2) + Fraction(d, d - 1)
        for inst in instances(f"c5b-{d}", 250, 14, 4, f"small:{d}"):
            res = run_online("pseudo-baf", inst)
            opt = exact_opt(inst).value
            if res.bins > math.ceil(factor * opt):
                failures.append(("b", d, inst.label, res.bins, opt))
    # (c) tightness family
    observed = []
    for n in range(2, 11):
        inst, t = gen_pseudobaf_tight(n)
        bins = run_online("pseudo-baf", inst).bins
        target = math.ceil(Fraction(7, 2) * (n - 1))
        observed.append(f"n={n}:{bins}/{target}")
        if bins != target or bins != t.final_bins:
            failures.append(("c bins", n, bins, target))
        if n <= 5:
            if exact_opt(inst, limit=500).value != n:
                failures.append(("c opt", n))
        elif lb1(inst) != n:
            failures.append(("c lb1", n, lb1(inst)))
    return failures, ("(a) 500 instances <= 3.5 OPT, (b) 500 instances with sizes <= 1/d, "
                      f"(c) bins/target {' '.join(observed)}")


def test_criterion_5_pseudo_baf():
    verdict(5, "Pseudo-BAF 3.5 and parametric bounds, tightness family", 180, _pseudo_baf)


# -- 6 ----------------------------------------------------------------------------

def _classics():
    failures = []
    for n in range(2, 11):
        ffbf, wf = gen_ffbf_hard(n), gen_wf_hard(n)
        got = (run_online("ff", ffbf).bins, run_online("bf", ffbf).bins, run_online("wf", wf).bins)
        if got != (n + 1,) * 3:
            failures.append((n, got))
        opts = (exact_opt(ffbf, limit=4 * n).value, exact_opt(wf, limit=4 * n).value)
        if opts != (2, 2):
            failures.append(("opt", n, opts))
    return failures, "n=2..10: FF, BF, WF use n+1 bins, optimum 2"


def test_criterion_6_classics_not_competitive():
    verdict(6, "First/Best/Worst Fit non-competitive instances", 30, _classics)


# -- 7 ----------------------------------------------------------------------------

def _two_colors():
    failures = []

    def two_color(tag, count, regime):
        rng = random.Random(f"{SEED}-{tag}")
        for _ in range(count):
            yield gen_random(rng.randrange(2**32), rng.randint(1, 14), 2, regime)

    for inst in two_color("c7", 1000, "uniform"):
        opt = exact_opt(inst).value
        for alg in ("ff", "bf", "wf"):
            if run_online(alg, inst).bins > 3 * opt:
                failures.append((alg, inst.label))
    for d, count in ((2, 500), (3, 500)):
        factor = 1 + Fraction(d, d - 1)
        for inst in two_color(f"c7-{d}", count, f"small:{d}"):
            opt = exact_opt(inst).value
            if run_online("wf", inst).bins > factor * opt:
                failures.append(("wf", d, inst.label))
    return failures, "1000 instances for FF/BF/WF <= 3 OPT; 500 each for WF with d=2 (3) and d=3 (5/2)"


def test_criterion_7_two_color_upper_bounds():
    verdict(7, "two-color Any Fit bounds", 120, _two_colors)


# -- 8 ----------------------------------------------------------------------------

def _oracles():
    failures = []
    rng = random.Random(f"{SEED}-c8")
    for _ in range(1000):
        colors = [rng.randrange(rng.randint(1, 5)) for _ in range(rng.randint(1, 200))]
        prefix = colors[:rng.randint(0, len(colors))]
        state = ds_replay(prefix)
        if state.d != lb2_oracle(prefix):
            failures.append(("d", prefix))
        if any(state.cd_of(c) != current_discrepancy(prefix, c) for c in set(colors)):
            failures.append(("cd", prefix))
    for inst in instances("c8-lb", 300, 10, 3, "uniform"):
        if exact_opt(inst).value < max(lb1(inst), lb2(inst)):
            failures.append(("lb", inst.label))
    for k, inst in enumerate(instances("c8-cut", 200, 10, 3, "uniform")):
        i = rng.randint(0, len(inst))
        j = rng.randint(i, len(inst))
        if exact_opt(inst.slice(i, j)).value > exact_opt(inst).value:
            failures.append(("cut", inst.label, i, j))
    return failures, "1000 prefixes, 300 lower-bound checks, 200 prefix/suffix cuts"


def test_criterion_8_oracle_equivalences():
    verdict(8, "streaming discrepancy, lower bounds, cut monotonicity", 60, _oracles)


if __name__ == "__main__":
    status = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                status = 1
    sys.exit(status)
