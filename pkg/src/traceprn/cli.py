"""Command-line front end and experiment driver.

Subcommands: gen, multigen, disc, bound, scan, selftest.  Flags can be
preloaded from a flat key=value config file (--config); explicit flags
win.  Exit codes: 0 success, 1 selftest suite failure, 2 invalid input.

Scan reports consist of a records CSV, a summary JSON, and (unless
--no-plot) rendered figures next to them.  Summaries never embed
wall-clock times or the worker count, so reruns and different
--workers settings produce byte-identical CSV/JSON.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import bounds, reportio, scan, selftest
from .discrepancy import ilog, star_discrepancy_exact, theorem_a_bound
from .gf import FieldCtx
from .multiseq import MultiseqParams, block_points
from .seqgen import GeneratorParams, theorem1_points

_CONFIG_KEYS = (
    "p", "k", "poly", "alpha", "beta", "alphas", "betas", "b1", "b2", "s", "r",
    "dims", "n", "epsilon", "out", "workers", "seed", "format", "sample",
)


@dataclass(frozen=True)
class RunConfig:
    """Resolved inputs of one run; a run is reproducible from this alone
    (plus the library version).  `workers`, `out` and `plot` are
    execution knobs that never influence computed values, and are
    therefore excluded from the config echo embedded in summaries."""

    kind: str
    p: int = 3
    k: int = 2
    poly: tuple[int, ...] = (2, 2, 1)
    alpha: str = "1"
    beta: str | None = None
    alphas: str | None = None
    betas: str | None = None
    b1: int = 1
    b2: int = 1
    s: int = 1
    r: int = 1
    dims: tuple[int, ...] | None = None
    n: str | None = None
    epsilon: tuple[float, ...] = scan.DEFAULT_EPSILONS
    out: str | None = None
    workers: int = 1
    seed: int = 0
    fmt: str = "csv"
    sample: int | None = None
    plot: bool = True

    def echo(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "k": self.k,
            "poly": ",".join(map(str, self.poly)),
            "alpha": self.alpha,
            "beta": self.beta,
            "b1": self.b1,
            "b2": self.b2,
            "s": self.s,
            "r": self.r,
            "dims": list(self.dims) if self.dims else None,
            "n": self.n,
            "epsilon": list(self.epsilon),
            "seed": self.seed,
            "sample": self.sample,
        }


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in str(text).split(","))


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in str(text).split(","))


def _read_config_file(path: str) -> dict:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        values[key] = value
    return values


def _resolve(args: argparse.Namespace, kind: str) -> RunConfig:
    """defaults <- config file <- explicit flags."""
    merged: dict = {}
    if getattr(args, "config", None):
        merged.update(_read_config_file(args.config))
    for key in _CONFIG_KEYS:
        flag = getattr(args, key if key != "format" else "fmt", None)
        if flag is not None:
            merged[key] = flag
    return RunConfig(
        kind=kind,
        p=int(merged.get("p", 3)),
        k=int(merged.get("k", 2)),
        poly=_ints(merged.get("poly", "2,2,1")),
        alpha=str(merged.get("alpha", "1")),
        beta=(str(merged["beta"]) if merged.get("beta") is not None else None),
        alphas=(str(merged["alphas"]) if merged.get("alphas") is not None else None),
        betas=(str(merged["betas"]) if merged.get("betas") is not None else None),
        b1=int(merged.get("b1", 1)),
        b2=int(merged.get("b2", 1)),
        s=int(merged.get("s", 1)),
        r=int(merged.get("r", 1)),
        dims=(_ints(merged["dims"]) if merged.get("dims") is not None else None),
        n=(str(merged["n"]) if merged.get("n") is not None else None),
        epsilon=_floats(merged.get("epsilon", "0.25,0.5")),
        out=(str(merged["out"]) if merged.get("out") is not None else None),
        workers=int(merged.get("workers", 1)),
        seed=int(merged.get("seed", 0)),
        fmt=str(merged.get("format", "csv")),
        sample=(int(merged["sample"]) if merged.get("sample") is not None else None),
        plot=not getattr(args, "no_plot", False),
    )


def _field(cfg: RunConfig) -> FieldCtx:
    return FieldCtx(cfg.p, cfg.k, cfg.poly)


def _pick_beta(ctx: FieldCtx, encoded: str | None):
    if encoded is not None:
        beta = ctx.parse_element(encoded)
        return beta
    return ctx.enumerate_primitive()[0]


def _emit_points(cfg: RunConfig, points, index_rows, prefix: str, index_names) -> None:
    if cfg.fmt == "json":
        payload = {
            "config": cfg.echo(),
            "points": [
                {
                    "index": list(idx),
                    "coords": [reportio.frac_str(c) for c in pt.coords],
                    "floats": [float(c) for c in pt.coords],
                }
                for idx, pt in zip(index_rows, points)
            ],
        }
        if cfg.out:
            reportio.write_json(cfg.out, payload)
        else:
            import json

            print(json.dumps(payload, sort_keys=True, indent=2))
        return
    if cfg.out:
        reportio.write_points_csv(cfg.out, points, index_rows, prefix, index_names)
    else:
        import csv as _csv

        writer = _csv.writer(sys.stdout, lineterminator="\n")
        s = len(points[0].coords)
        writer.writerow(list(index_names) + [f"{prefix}_{i}" for i in range(s)] + [f"{prefix}f_{i}" for i in range(s)])
        for idx, pt in zip(index_rows, points):
            writer.writerow(
                list(idx)
                + [reportio.frac_str(c) for c in pt.coords]
                + [reportio.float17(float(c)) for c in pt.coords]
            )


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = _resolve(args, "gen")
    ctx = _field(cfg)
    beta = _pick_beta(ctx, cfg.beta)
    alpha = ctx.parse_element(cfg.alpha)
    n_points = int(cfg.n) if cfg.n is not None else ctx.q - 1
    params = GeneratorParams(ctx, alpha, beta, cfg.b1, cfg.b2, cfg.s)
    points = theorem1_points(params, n_points)
    _emit_points(cfg, points, [(n,) for n in range(n_points)], "x", ("n",))
    return 0


def cmd_multigen(args: argparse.Namespace) -> int:
    cfg = _resolve(args, "multigen")
    ctx = _field(cfg)
    if cfg.r < 2:
        raise ValueError("multigen needs --r >= 2")
    dims = cfg.dims or (1,) * cfg.r
    first_primitive = ctx.enumerate_primitive()[0]
    alphas = (
        tuple(ctx.parse_element(t) for t in cfg.alphas.split(";"))
        if cfg.alphas
        else (ctx.one,) * cfg.r
    )
    betas = (
        tuple(ctx.parse_element(t) for t in cfg.betas.split(";"))
        if cfg.betas
        else (first_primitive,) * cfg.r
    )
    n_box = _ints(cfg.n) if cfg.n is not None else (2,) * cfg.r
    params = MultiseqParams(ctx, cfg.r, cfg.s, dims, alphas, betas)
    points = block_points(params, n_box)
    import itertools

    index_rows = list(itertools.product(*(range(v) for v in n_box)))
    _emit_points(cfg, points, index_rows, "c", tuple(f"n_{i + 1}" for i in range(cfg.r)))
    return 0


def cmd_disc(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    ps = reportio.read_points_csv(args.input)
    d_exact = star_discrepancy_exact(ps)
    b = int(args.b) if args.b is not None else None
    m = int(args.m) if args.m is not None else None
    bound_val = None
    truncated = None
    if args.theorem_a:
        if b is None:
            raise ValueError("--theorem-a needs --b (digit base)")
        if m is None:
            m = ilog(b, ps.n_points) + 1
        bound_val = theorem_a_bound(b, ps, m)
        truncated = ps.with_digits(b, m).truncated
    t1_rhs = None
    if args.t1_p is not None:
        t1_rhs = bounds.theorem1_rhs(
            int(args.t1_p), ps.dim, int(args.b1 or 1), int(args.b2 or 1), ps.n_points, float(args.epsilon or 0.5)
        )
    report = {
        "source": str(args.input),
        "N": ps.n_points,
        "s": ps.dim,
        "b": b,
        "m": m,
        "d_exact_num": d_exact.numerator,
        "d_exact_den": d_exact.denominator,
        "d_exact": float(d_exact),
        "theorem_a_bound": bound_val,
        "truncated": truncated,
        "theorem1_rhs": t1_rhs,
        "elapsed_ms": (time.perf_counter() - start) * 1e3,
    }
    if args.out:
        reportio.write_json(args.out, report)
        if args.plot:
            from . import plots

            target = Path(args.out).with_suffix(".png")
            if not plots.save_pointset(ps, d_exact, target):
                print(f"note: no figure for s = {ps.dim} > 2", file=sys.stderr)
    else:
        import json

        print(json.dumps(report, sort_keys=True, indent=2))
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    which = args.which
    if which == "lemma6":
        res = bounds.lemma6_check(int(args.q), int(args.k), int(args.t))
        payload = {
            "inputs": {"q": int(args.q), "k": int(args.k), "T": int(args.t)},
            "lhs": float(res.lhs),
            "lhs_exact": reportio.frac_str(res.lhs),
            "rhs": res.rhs,
            "holds": res.holds,
            "in_precondition": res.in_precondition,
        }
    elif which == "t1":
        p, s, b1, b2 = int(args.p), int(args.s), int(args.b1), int(args.b2)
        n = int(args.n)
        eps = float(args.epsilon)
        payload = {
            "inputs": {"p": p, "s": s, "b1": b1, "b2": b2, "N": n, "epsilon": eps},
            "c1": bounds.c1(p, s, b1, b2),
            "rhs": bounds.theorem1_rhs(p, s, b1, b2, n, eps),
        }
    elif which == "t2":
        p, r, s = int(args.p), int(args.r), int(args.s)
        dims = _ints(args.dims)
        n_vec = _ints(args.n)
        eps = float(args.epsilon)
        payload = {
            "inputs": {"p": p, "r": r, "s": s, "dims": list(dims), "N": list(n_vec), "epsilon": eps},
            "c2": bounds.c2(p, r, s, dims),
            "rhs": bounds.theorem2_rhs(p, r, s, dims, n_vec, eps),
        }
    else:  # eq23
        b1, s, t_len = int(args.b1), int(args.s), int(args.t)
        payload = {
            "inputs": {"b1": b1, "s": s, "T": t_len},
            "value": bounds.eq23_avg_bound(b1, s, t_len),
        }
    if args.out:
        reportio.write_json(args.out, payload)
    else:
        import json

        print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _write_scan_outputs(cfg: RunConfig, records, summary, n_labels) -> None:
    prefix = cfg.out
    summary = dict(summary)
    summary["config"] = cfg.echo()
    reportio.write_json(f"{prefix}.json", summary)
    import csv as _csv

    with open(f"{prefix}.csv", "w", newline="") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["beta_index", "alpha_index", "beta", "alpha", "degenerate"]
            + [f"d_{label}" for label in n_labels]
            + ["rho", "rank"]
        )
        for rec in records:
            writer.writerow(
                [rec.beta_index, rec.alpha_index, rec.beta, rec.alpha, int(rec.degenerate)]
                + [reportio.frac_str(d) for _, d in rec.d_exact]
                + [reportio.float17(rec.rho), rec.rank]
            )
    if cfg.plot:
        from . import plots

        plots.save_rho_cdf(
            [rec.rho for rec in records],
            {f"c/eps, eps={eps}": summary["thresholds"][str(eps)] for eps in cfg.epsilon},
            f"{prefix}_rho_cdf.png",
        )
        if "mean_nd" in summary:
            labels = list(summary["mean_nd"])
            plots.save_mean_curve(
                [int(v) for v in labels],
                [summary["mean_nd"][v] for v in labels],
                [summary["reference_nd"][v] for v in labels],
                f"{prefix}_mean_nd.png",
            )


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = _resolve(args, "scan")
    if not cfg.out:
        raise ValueError("scan needs --out PREFIX for its CSV/JSON report")
    if cfg.r >= 2:
        n_grid = (
            tuple(_ints(part) for part in cfg.n.split(";")) if cfg.n else ()
        )
        settings = scan.MultiScanSettings(
            cfg.p, cfg.k, cfg.poly, cfg.r, cfg.s, cfg.dims or (1,) * cfg.r,
            n_grid, cfg.epsilon, cfg.sample, cfg.seed,
        )
        records, summary = scan.run_multiscan(settings)
        labels = [label for label, _ in records[0].d_exact]
        _write_scan_outputs(cfg, records, summary, labels)
        return 0
    n_grid = _ints(cfg.n) if cfg.n else ()
    settings = scan.ScanSettings(cfg.p, cfg.k, cfg.poly, cfg.b1, cfg.b2, cfg.s, n_grid, cfg.epsilon)
    records, summary = scan.run_scan(settings, workers=cfg.workers)
    labels = [label for label, _ in records[0].d_exact]
    _write_scan_outputs(cfg, records, summary, labels)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    results = selftest.run_all(seed=int(args.seed or 0))
    failed = False
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{res.name}: {status} ({res.elapsed_s:.2f} s) - {res.detail}")
        failed = failed or not res.passed
    print("selftest:", "FAIL" if failed else "PASS")
    return 1 if failed else 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file; explicit flags win")
    sub.add_argument("--p", help="prime characteristic")
    sub.add_argument("--k", help="extension degree")
    sub.add_argument("--poly", help="modulus coefficients, constant first (e.g. 2,2,1)")
    sub.add_argument("--alpha", help="alpha element, comma coefficients")
    sub.add_argument("--beta", help="beta element; default: first primitive element")
    sub.add_argument("--alphas", help="semicolon-separated alpha elements (multigen)")
    sub.add_argument("--betas", help="semicolon-separated beta elements (multigen)")
    sub.add_argument("--b1", help="index progression stride, in [1, q]")
    sub.add_argument("--b2", help="index progression offset, in [1, q]")
    sub.add_argument("--s", help="embedding dimension / block bound")
    sub.add_argument("--r", help="multisequence arity (>= 2 switches scan/gen to blocks)")
    sub.add_argument("--dims", help="block dimensions s_1,...,s_r")
    sub.add_argument("--n", help="point count, N grid (scan: 4,8,16), or box N1,N2")
    sub.add_argument("--epsilon", help="epsilon list for thresholds, e.g. 0.25,0.5")
    sub.add_argument("--out", help="output path (gen/disc) or prefix (scan)")
    sub.add_argument("--workers", help="parallel workers for scans")
    sub.add_argument("--seed", help="RNG seed for sampled sweeps")
    sub.add_argument("--format", dest="fmt", choices=("csv", "json"), help="gen output format")
    sub.add_argument("--sample", help="sample size for multisequence scans")
    sub.add_argument("--no-plot", action="store_true", help="skip figure rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="traceprn",
        description="trace-based linear-recurrence pseudorandom generators and discrepancy measurement",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    for name, fn in (("gen", cmd_gen), ("multigen", cmd_multigen), ("scan", cmd_scan)):
        sub = subs.add_parser(name)
        _add_common(sub)
        sub.set_defaults(handler=fn)

    disc = subs.add_parser("disc", help="measure a point-set CSV")
    disc.add_argument("input", help="CSV produced by gen/multigen")
    disc.add_argument("--theorem-a", action="store_true", help="also compute the exponential-sum bound")
    disc.add_argument("--b", help="digit base for the bound")
    disc.add_argument("--m", help="digit count (default floor(log_b N) + 1)")
    disc.add_argument("--t1-p", help="include the worst-case rhs for this prime")
    disc.add_argument("--b1", help="stride for the worst-case rhs")
    disc.add_argument("--b2", help="offset for the worst-case rhs")
    disc.add_argument("--epsilon", help="epsilon for the worst-case rhs")
    disc.add_argument("--out", help="write the JSON report here (default stdout)")
    disc.add_argument("--plot", action="store_true", help="render the point set next to --out")
    disc.set_defaults(handler=cmd_disc)

    bound = subs.add_parser("bound", help="evaluate a closed-form bound")
    bound.add_argument("which", choices=("lemma6", "t1", "t2", "eq23"))
    bound.add_argument("--q")
    bound.add_argument("--k")
    bound.add_argument("--t")
    bound.add_argument("--p")
    bound.add_argument("--s")
    bound.add_argument("--r")
    bound.add_argument("--b1", default="1")
    bound.add_argument("--b2", default="1")
    bound.add_argument("--dims")
    bound.add_argument("--n")
    bound.add_argument("--epsilon", default="0.5")
    bound.add_argument("--out")
    bound.set_defaults(handler=cmd_bound)

    st = subs.add_parser("selftest", help="run the built-in verification suites")
    st.add_argument("--seed", default="0")
    st.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
