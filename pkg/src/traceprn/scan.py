"""Exhaustive (alpha, beta) scans and their distribution summaries.

A scan measures, for every pair (or every sampled tuple in the
multisequence mode), the exact star discrepancy of the generated point
set at each N in a grid, and the normalized statistic

    rho = max_N  N * D_N / (sqrt(N) * ln^(s+2.5)(6N) * (ln(3 ln 6N))^2.5)

whose distribution the summary reports (fraction under c1/epsilon,
percentiles, per-N means against the average-case reference curve).
At desk scale the c1/epsilon thresholds dwarf every observed rho, so
the fractions are 1.0 by construction; the percentiles are the
informative output.

Workers split the pair grid by beta; records are reassembled in
(beta index, alpha index) order and every per-record number is computed
independently of the split, so summaries are byte-identical for any
worker count.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .bounds import c1, c2, eq23_avg_bound
from .discrepancy import PointSet, star_discrepancy_exact
from .gf import FieldCtx
from .multiseq import MultiseqParams, block_points
from .seqgen import GeneratorParams, theorem1_points

DEFAULT_EPSILONS = (0.25, 0.5)


@dataclass(frozen=True)
class ScanSettings:
    """Reproducible description of a single-sequence scan."""

    p: int
    k: int
    poly: tuple[int, ...]
    b1: int = 1
    b2: int = 1
    s: int = 1
    n_grid: tuple[int, ...] = ()
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS


@dataclass(frozen=True)
class MultiScanSettings:
    """Reproducible description of a multisequence tuple scan."""

    p: int
    k: int
    poly: tuple[int, ...]
    r: int
    s: int = 1
    dims: tuple[int, ...] = ()
    n_grid: tuple[tuple[int, ...], ...] = ()
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    sample: int | None = None
    seed: int = 0


@dataclass(frozen=True)
class ScanRecord:
    """One measured pair (or tuple): exact D per N plus the statistic."""

    beta_index: int
    alpha_index: int
    beta: str
    alpha: str
    degenerate: bool
    d_exact: tuple[tuple[str, Fraction], ...]
    rho: float
    rank: int = 0


def default_n_grid(q: int) -> tuple[int, ...]:
    """Dyadic N values 4, 8, 16, ... below q, plus the endpoint q - 1."""
    grid = []
    n = 4
    while n < q - 1:
        grid.append(n)
        n *= 2
    grid.append(q - 1)
    return tuple(grid)


def _norm_single(n: int, s: int) -> float:
    return math.sqrt(n) * math.log(6 * n) ** (s + 2.5) * math.log(3 * math.log(6 * n)) ** 2.5


def _norm_multi(n_vec, s0: int, r: int) -> float:
    pn = prod(n_vec)
    return (
        math.sqrt(pn)
        * math.log(2 ** (r + 1) * pn) ** (s0 + 2.5 * r)
        * math.log(3 * math.log(6 * pn)) ** (2.5 * r)
    )


def _scan_beta_chunk(args) -> list[ScanRecord]:
    """Measure all alphas for a contiguous chunk of beta indices."""
    settings, beta_element_indices = args
    ctx = FieldCtx(settings.p, settings.k, settings.poly)
    n_max = max(settings.n_grid)
    records = []
    for b_rank, b_idx in beta_element_indices:
        beta = ctx.element_from_index(b_idx)
        for a_idx in range(ctx.q):
            alpha = ctx.element_from_index(a_idx)
            params = GeneratorParams(ctx, alpha, beta, settings.b1, settings.b2, settings.s)
            pts = theorem1_points(params, n_max)
            d_by_n = []
            rho = 0.0
            for n in settings.n_grid:
                ps = PointSet(tuple(pt.coords for pt in pts[:n]))
                d = star_discrepancy_exact(ps)
                d_by_n.append((str(n), d))
                rho = max(rho, float(n * d) / _norm_single(n, settings.s))
            records.append(
                ScanRecord(b_rank, a_idx, beta.encode(), alpha.encode(), params.degenerate, tuple(d_by_n), rho)
            )
    return records


def run_scan(settings: ScanSettings, workers: int = 1) -> tuple[list[ScanRecord], dict]:
    """Exhaustive scan over F_q x {primitive elements}; returns the
    ranked records in (beta index, alpha index) order and the summary."""
    ctx = FieldCtx(settings.p, settings.k, settings.poly)
    if ctx.q > 625:
        raise ValueError(f"exhaustive pair scan capped at q <= 625, got q = {ctx.q}")
    if not settings.n_grid:
        settings = ScanSettings(
            settings.p, settings.k, settings.poly, settings.b1, settings.b2,
            settings.s, default_n_grid(ctx.q), settings.epsilons,
        )
    betas = [(rank, ctx.index_of(b)) for rank, b in enumerate(ctx.enumerate_primitive())]
    if workers <= 1 or len(betas) == 1:
        chunks = [(settings, betas)]
    else:
        size = -(-len(betas) // workers)
        chunks = [(settings, betas[i : i + size]) for i in range(0, len(betas), size)]
    if len(chunks) == 1:
        batches = [_scan_beta_chunk(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            batches = list(pool.map(_scan_beta_chunk, chunks))
    records = [rec for batch in batches for rec in batch]
    records.sort(key=lambda rec: (rec.beta_index, rec.alpha_index))
    records = _assign_ranks(records)
    summary = _summarize(settings, ctx, records)
    return records, summary


def _assign_ranks(records: list[ScanRecord]) -> list[ScanRecord]:
    """rank 1 = largest rho; ties broken by record order."""
    order = sorted(range(len(records)), key=lambda i: (-records[i].rho, i))
    ranks = [0] * len(records)
    for rank, i in enumerate(order, start=1):
        ranks[i] = rank
    return [
        ScanRecord(r.beta_index, r.alpha_index, r.beta, r.alpha, r.degenerate, r.d_exact, r.rho, ranks[i])
        for i, r in enumerate(records)
    ]


def _percentile(sorted_values, fraction: float) -> float:
    """Nearest-rank percentile of an ascending list."""
    idx = max(0, math.ceil(fraction * len(sorted_values)) - 1)
    return sorted_values[idx]


def _summarize(settings: ScanSettings, ctx: FieldCtx, records: list[ScanRecord]) -> dict:
    rhos = sorted(rec.rho for rec in records)
    const = c1(settings.p, settings.s, settings.b1, settings.b2)
    mean_nd = {}
    reference_nd = {}
    for pos, n in enumerate(settings.n_grid):
        total = sum((rec.d_exact[pos][1] for rec in records), Fraction(0))
        mean_nd[str(n)] = float(n * total / len(records))
        reference_nd[str(n)] = settings.s * settings.p + eq23_avg_bound(settings.b1, settings.s, n)
    worst = sorted(records, key=lambda rec: rec.rank)[:5]
    return {
        "kind": "scan",
        "field": {"p": settings.p, "k": settings.k, "poly": ",".join(map(str, settings.poly)), "q": ctx.q},
        "b1": settings.b1,
        "b2": settings.b2,
        "s": settings.s,
        "n_grid": list(settings.n_grid),
        "pair_count": len(records),
        "degenerate_count": sum(1 for rec in records if rec.degenerate),
        "c1": const,
        "epsilons": list(settings.epsilons),
        "thresholds": {str(eps): const / eps for eps in settings.epsilons},
        "fraction_within": {
            str(eps): sum(1 for rec in records if rec.rho <= const / eps) / len(records)
            for eps in settings.epsilons
        },
        "rho": {
            "median": _percentile(rhos, 0.5),
            "p95": _percentile(rhos, 0.95),
            "max": rhos[-1],
        },
        "mean_nd": mean_nd,
        "reference_nd": reference_nd,
        "mean_below_reference": all(mean_nd[k] <= reference_nd[k] for k in mean_nd),
        "worst_pairs": [
            {"alpha": rec.alpha, "beta": rec.beta, "rho": rec.rho, "degenerate": rec.degenerate}
            for rec in worst
        ],
    }


def default_multi_n_grid(q: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Diagonal boxes (d, ..., d) with d dyadic and d^r <= q."""
    grid = []
    d = 2
    while d**r <= q:
        grid.append((d,) * r)
        d *= 2
    if not grid:
        grid.append((1,) * r)
    return tuple(grid)


def run_multiscan(settings: MultiScanSettings) -> tuple[list[ScanRecord], dict]:
    """Scan (alpha_1..alpha_r, beta_1..beta_r) tuples; exhaustive when the
    tuple space is within the sample budget, else seeded sampling."""
    ctx = FieldCtx(settings.p, settings.k, settings.poly)
    if ctx.q > 81:
        raise ValueError(f"multisequence scan capped at q <= 81, got q = {ctx.q}")
    dims = settings.dims or (1,) * settings.r
    n_grid = settings.n_grid or default_multi_n_grid(ctx.q, settings.r)
    settings = MultiScanSettings(
        settings.p, settings.k, settings.poly, settings.r, settings.s, dims,
        tuple(tuple(v) for v in n_grid), settings.epsilons, settings.sample, settings.seed,
    )
    betas = ctx.enumerate_primitive()
    n_tuples = (ctx.q * len(betas)) ** settings.r
    space = itertools.product(
        itertools.product(range(ctx.q), repeat=settings.r),
        itertools.product(range(len(betas)), repeat=settings.r),
    )
    if settings.sample is not None and settings.sample < n_tuples:
        rng = random.Random(settings.seed)
        chosen = set()
        while len(chosen) < settings.sample:
            chosen.add(
                (
                    tuple(rng.randrange(ctx.q) for _ in range(settings.r)),
                    tuple(rng.randrange(len(betas)) for _ in range(settings.r)),
                )
            )
        space = sorted(chosen)
    s0 = prod(dims)
    const = c2(settings.p, settings.r, settings.s, dims)
    records = []
    for a_tuple, b_tuple in space:
        alphas = tuple(ctx.element_from_index(i) for i in a_tuple)
        bts = tuple(betas[i] for i in b_tuple)
        params = MultiseqParams(ctx, settings.r, settings.s, dims, alphas, bts)
        d_by_n = []
        rho = 0.0
        for n_vec in settings.n_grid:
            pts = block_points(params, n_vec)
            ps = PointSet(tuple(pt.coords for pt in pts))
            d = star_discrepancy_exact(ps)
            label = "x".join(map(str, n_vec))
            d_by_n.append((label, d))
            rho = max(rho, prod(n_vec) * float(d) / _norm_multi(n_vec, s0, settings.r))
        records.append(
            ScanRecord(
                _pack_indices(b_tuple),
                _pack_indices(a_tuple),
                ";".join(b.encode() for b in bts),
                ";".join(a.encode() for a in alphas),
                all(a.is_zero for a in alphas),
                tuple(d_by_n),
                rho,
            )
        )
    records.sort(key=lambda rec: (rec.beta_index, rec.alpha_index))
    records = _assign_ranks(records)
    rhos = sorted(rec.rho for rec in records)
    summary = {
        "kind": "multiscan",
        "field": {"p": settings.p, "k": settings.k, "poly": ",".join(map(str, settings.poly)), "q": ctx.q},
        "r": settings.r,
        "s": settings.s,
        "dims": list(dims),
        "n_grid": ["x".join(map(str, v)) for v in settings.n_grid],
        "tuple_count": len(records),
        "sampled": settings.sample is not None and settings.sample < n_tuples,
        "seed": settings.seed,
        "degenerate_count": sum(1 for rec in records if rec.degenerate),
        "c2": const,
        "epsilons": list(settings.epsilons),
        "thresholds": {str(eps): const / eps for eps in settings.epsilons},
        "fraction_within": {
            str(eps): sum(1 for rec in records if rec.rho <= const / eps) / len(records)
            for eps in settings.epsilons
        },
        "rho": {
            "median": _percentile(rhos, 0.5),
            "p95": _percentile(rhos, 0.95),
            "max": rhos[-1],
        },
    }
    return records, summary


def _pack_indices(tup) -> int:
    """Order-preserving scalar key for an index tuple (for sorting/ranking)."""
    out = 0
    for v in tup:
        out = out * 1_000_000 + v
    return out
