"""Built-in verification suites behind the `selftest` CLI command.

Each suite re-checks one of the supporting facts at desk scale, by
enumeration or randomized sweep, and reports pass/fail with timing.
The acceptance tests call the same suites, so `traceprn selftest` is a
fast standalone health check of the analytic layer.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from math import prod
from typing import NamedTuple

from . import discrepancy as dc
from .bounds import lemma6_check
from .gf import FieldCtx
from .multiseq import lemma5_check

DESK_FIELDS = ((3, 2, (2, 2, 1)), (5, 2, (2, 4, 1)), (3, 3, (2, 2, 0, 1)))


class SuiteResult(NamedTuple):
    name: str
    passed: bool
    detail: str
    elapsed_s: float


def _timed(name, fn) -> SuiteResult:
    start = time.perf_counter()
    passed, detail = fn()
    return SuiteResult(name, passed, detail, time.perf_counter() - start)


def lemma1_suite() -> SuiteResult:
    """Enumerated weight sums stay under the closed-form cap."""

    def run():
        worst = 1.0
        for b, s, m in itertools.product((2, 3, 5), (1, 2), (1, 2)):
            lhs = dc.lemma1_lhs(b, s, m)
            rhs = dc.lemma1_rhs(b, s, m)
            if not lhs < rhs - 1e-9:
                return False, f"violated at (b={b}, s={s}, m={m}): {lhs} >= {rhs}"
            worst = min(worst, (rhs - lhs) / rhs)
        return True, f"12 parameter triples, min relative margin {worst:.3f}"

    return _timed("lemma1", run)


def lemma2_suite() -> SuiteResult:
    """Character-sum averaging identity, exhaustive over beta."""

    def run():
        worst = 0.0
        for p, k, poly in DESK_FIELDS:
            ctx = FieldCtx(p, k, poly)
            for beta in ctx.elements():
                worst = max(worst, dc.lemma2_delta_check(ctx, beta))
        if worst >= 1e-9:
            return False, f"max deviation {worst:.3e} >= 1e-9"
        return True, f"q in (9, 25, 27) exhaustive, max deviation {worst:.2e}"

    return _timed("lemma2", run)


def lemma3_suite(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Completion bound on random phase sequences, T <= 64."""

    def run():
        rng = random.Random(seed)
        for _ in range(trials):
            t_len = rng.randint(1, 64)
            n = rng.randint(0, t_len)
            x = [rng.random() for _ in range(t_len)]
            lhs, rhs = dc.completion_check(x, n)
            if lhs > rhs + 1e-9:
                return False, f"lhs {lhs} > rhs {rhs} at T={t_len}, N={n}"
            if dc.completion_weight_sum(t_len) > 3 + 2 * math.log(t_len) + 1e-9:
                return False, f"weight sum cap violated at T={t_len}"
        return True, f"{trials} random instances"

    return _timed("lemma3", run)


def lemma4_suite(seed: int = 0, trials: int = 200) -> SuiteResult:
    """Two-dimensional completion bound, T_i <= 8."""

    def run():
        rng = random.Random(seed)
        for _ in range(trials):
            t_box = (rng.randint(1, 8), rng.randint(1, 8))
            n_box = (rng.randint(0, t_box[0]), rng.randint(0, t_box[1]))
            x = [[rng.random() for _ in range(t_box[1])] for _ in range(t_box[0])]
            lhs, rhs = dc.completion_check_multi(x, n_box, t_box)
            if lhs > rhs + 1e-9:
                return False, f"lhs {lhs} > rhs {rhs} at T={t_box}, N={n_box}"
        return True, f"{trials} random instances"

    return _timed("lemma4", run)


def lemma5_suite() -> SuiteResult:
    """Window-index injectivity, exhaustive over the desk-scale grid."""

    def run():
        count = 0
        for r in (2, 3):
            for s in (1, 2, 3):
                for dims in itertools.product(range(1, s + 1), repeat=r):
                    if prod(dims) > s:
                        continue
                    for k in (2, 3):
                        for n in itertools.product(range(s**r), repeat=r):
                            if not lemma5_check(r, s, dims, n, k):
                                return False, f"collision at r={r}, s={s}, dims={dims}, k={k}, n={n}"
                            count += 1
        return True, f"{count} cases, all injective"

    return _timed("lemma5", run)


def lemma6_suite() -> SuiteResult:
    """Totient growth inequality over log-spaced T sweeps."""

    def run():
        count = 0
        for q, k in ((3125, 5), (4096, 12), (16807, 5)):
            for t_len in _log_spaced(1, 4 * q, 64):
                res = lemma6_check(q, k, t_len)
                if not res.in_precondition:
                    return False, f"sweep point (q={q}, T={t_len}) outside precondition"
                if not res.holds:
                    return False, f"violated at q={q}, T={t_len}: {float(res.lhs)} > {res.rhs}"
                count += 1
        return True, f"{count} (q, T) points"

    return _timed("lemma6", run)


def _log_spaced(lo: int, hi: int, count: int) -> list[int]:
    vals = {max(lo, min(hi, round(math.exp(math.log(lo) + i * (math.log(hi) - math.log(lo)) / (count - 1))))) for i in range(count)}
    return sorted(vals)


def run_all(seed: int = 0) -> list[SuiteResult]:
    return [
        lemma1_suite(),
        lemma2_suite(),
        lemma3_suite(seed),
        lemma4_suite(seed),
        lemma5_suite(),
        lemma6_suite(),
    ]
