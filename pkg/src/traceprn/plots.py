"""Figure rendering for the report paths.

Every scan writes, next to its CSV/JSON outputs, a CDF of the
normalized statistic and a mean-vs-reference curve; `disc --plot`
renders the measured point set.  Rendering is headless (Agg) and never
touches the delimited outputs, so byte-identity guarantees are
unaffected.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_rho_cdf(rhos, thresholds: dict[str, float], path) -> None:
    """Empirical CDF of the per-pair statistic with reference thresholds."""
    xs = sorted(rhos)
    n = len(xs)
    ys = [(i + 1) / n for i in range(n)]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.step(xs, ys, where="post", lw=1.5, label=f"empirical CDF ({n} pairs)")
    for label, x in sorted(thresholds.items()):
        ax.axvline(x, ls="--", lw=1.0, color="crimson", alpha=0.7)
        ax.annotate(label, (x, 0.05), rotation=90, fontsize=8, ha="right", va="bottom")
    ax.set_xscale("log")
    ax.set_xlabel(r"normalized statistic $\rho$")
    ax.set_ylabel("fraction of pairs")
    ax.set_title("scan: distribution of the normalized discrepancy statistic")
    ax.grid(alpha=0.3)
    ax.legend(loc="lower right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_mean_curve(n_values, mean_nd, reference, path) -> None:
    """Mean N*D over pairs against the average-case reference curve."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(n_values, mean_nd, "o-", label=r"mean over pairs of $N \cdot D_N$")
    ax.plot(n_values, reference, "s--", label="average-case reference (s*p + curve)")
    ax.set_xlabel("N")
    ax.set_ylabel("value")
    ax.set_yscale("log")
    ax.set_title("scan: empirical mean vs reference")
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_pointset(ps, d_exact, path) -> bool:
    """Scatter (s = 2) or rug + empirical CDF (s = 1). Returns False for s > 2."""
    xs = [[float(c) for c in row] for row in ps.points]
    if ps.dim == 1:
        vals = sorted(v[0] for v in xs)
        n = len(vals)
        fig, ax = plt.subplots(figsize=(6.4, 4.2))
        ax.step([0.0] + vals + [1.0], [0.0] + [(i + 1) / n for i in range(n)] + [1.0], where="post", label="empirical CDF")
        ax.plot([0, 1], [0, 1], "--", color="gray", label="uniform")
        ax.plot(vals, [0.02] * n, "|", color="black", ms=12)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1.02)
    elif ps.dim == 2:
        fig, ax = plt.subplots(figsize=(5.2, 5.2))
        ax.plot([v[0] for v in xs], [v[1] for v in xs], "o", ms=4)
        ax.set_xlim(0, 1)
        ax.set_ylim(0, 1)
        ax.set_aspect("equal")
    else:
        return False
    ax.set_title(f"N = {ps.n_points}, exact D = {d_exact} = {float(d_exact):.6g}")
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return True
