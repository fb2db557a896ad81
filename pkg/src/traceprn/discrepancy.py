"""Point-set quality measurement.

Three layers live here:

* exact star discrepancy of a finite point set, as a Fraction (the
  half-open-box supremum reduces to a finite max over the grid of
  coordinate values, taken with strict and non-strict counts);
* the digit-weighted exponential-sum bound: per-row weights Q_b decaying
  in the highest active digit, their product W_b over rows, character
  sums over the digit matrices, and the resulting upper bound
  s*b/N + sum_H W_b(H) |S_N(H)| / N;
* numeric checkers for the supporting inequalities: the closed-form cap
  on sum_H W_b(H), the averaging identity delta(beta) =
  (1/q) sum_alpha e(Tr(alpha*beta)/p), and the completion bounds that
  control an incomplete exponential sum by twisted complete ones.

Discrepancy values and volumes are exact rationals; floats appear only
in the transcendental weight and character evaluations, which all carry
a 1e-9 comparison slack downstream.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .gf import FieldCtx, FieldElement, lcm_all


class DimensionTooLargeError(ValueError):
    """Exact grid method would exceed the work guard."""


class MissingDigitsError(ValueError):
    """Point set lacks digit matrices in the requested base."""


class MTooSmallError(ValueError):
    """Digit count m below floor(log_b N)."""


class EnumerationTooLargeError(ValueError):
    """Frequency-matrix enumeration would exceed the work guard."""


class OutOfRangeError(ValueError):
    """Frequency entry outside (-b/2, b/2]."""


_GRID_GUARD = 10_000_000
_ENUM_GUARD = 10_000_000


@dataclass(frozen=True)
class PointSet:
    """N points in [0,1)^s with exact rational coordinates.

    Digit matrices, when present, hold the base-`base` expansion of each
    coordinate to a fixed width; `truncated` records that some
    coordinate did not terminate within that width (so the matrices
    describe the truncated set).
    """

    points: tuple[tuple[Fraction, ...], ...]
    base: int | None = None
    digits: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    truncated: bool = False

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @classmethod
    def from_coords(cls, rows) -> "PointSet":
        pts = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if not pts:
            raise ValueError("point set must be nonempty")
        s = len(pts[0])
        if s < 1 or any(len(row) != s for row in pts):
            raise ValueError("all points must share one positive dimension")
        if any(not 0 <= c < 1 for row in pts for c in row):
            raise ValueError("coordinates must lie in [0, 1)")
        return cls(pts)

    @classmethod
    def from_prn_points(cls, prn_points, base: int) -> "PointSet":
        """Adopt generated points together with their base-p digits."""
        pts = tuple(pt.coords for pt in prn_points)
        digs = tuple(pt.digit_matrix for pt in prn_points)
        return cls(pts, base=base, digits=digs)

    def with_digits(self, base: int, m: int) -> "PointSet":
        """Recompute digit matrices in `base`, m digits per coordinate."""
        if base < 2 or m < 1:
            raise ValueError("need base >= 2 and m >= 1")
        digits = []
        truncated = False
        for row in self.points:
            drow = []
            for c in row:
                num, den = c.numerator, c.denominator
                ds = []
                r = num
                for _ in range(m):
                    r *= base
                    d, r = divmod(r, den)
                    ds.append(d)
                if r:
                    truncated = True
                drow.append(tuple(ds))
            digits.append(tuple(drow))
        return PointSet(self.points, base=base, digits=tuple(digits), truncated=truncated)


# ---------------------------------------------------------------------------
# exact star discrepancy


def star_discrepancy_exact(ps: PointSet) -> Fraction:
    """Exact star discrepancy sup_v |#{n : x_n in v}/N - vol(v)| over
    anchored half-open boxes v = [0, g_1) x ... x [0, g_s).

    s = 1 uses the sorted-order formula; s >= 2 maximizes over the grid
    of per-dimension coordinate values (plus 1), pairing the non-strict
    count against the closed limit and the strict count against the
    open one.  All arithmetic is integer on a common denominator.
    """
    n = ps.n_points
    s = ps.dim
    scale = lcm_all({c.denominator for row in ps.points for c in row})
    rows = [[int(c * scale) for c in row] for row in ps.points]

    if s == 1:
        xs = sorted(r[0] for r in rows)
        best = 0
        for i, x in enumerate(xs, start=1):
            best = max(best, i * scale - x * n, x * n - (i - 1) * scale)
        return Fraction(best, n * scale)

    if (n + 1) ** s > _GRID_GUARD:
        raise DimensionTooLargeError(f"grid of (N+1)^s = {(n + 1) ** s} corners exceeds guard")
    axes = [sorted({r[i] for r in rows} | {scale}) for i in range(s)]
    scale_s = scale ** s
    best = 0
    for corner in itertools.product(*axes):
        vol = prod(corner)
        a_le = a_lt = 0
        for r in rows:
            le = lt = True
            for ri, gi in zip(r, corner):
                if ri > gi:
                    le = lt = False
                    break
                if ri == gi:
                    lt = False
            if le:
                a_le += 1
                if lt:
                    a_lt += 1
        best = max(best, a_le * scale_s - n * vol, n * vol - a_lt * scale_s)
    return Fraction(best, n * scale_s)


# ---------------------------------------------------------------------------
# digit weights and the exponential-sum bound


def c_range(b: int) -> tuple[int, ...]:
    """Integers in (-b/2, b/2], ascending."""
    if b < 2:
        raise ValueError("base must be >= 2")
    return tuple(h for h in range(-(b // 2), b // 2 + 1) if 2 * h > -b)


def digit_d(h, b: int | None = None) -> int:
    """Largest 1-based index with a nonzero entry; 0 for the zero vector."""
    if b is not None:
        lo, hi = -(b / 2), b // 2
        for v in h:
            if not (lo < v <= hi):
                raise OutOfRangeError(f"entry {v} outside (-{b}/2, {b}/2]")
    d = 0
    for i, v in enumerate(h, start=1):
        if v:
            d = i
    return d


def q_weight(b: int, h) -> float:
    """Per-row weight: 2^(-d) for b = 2, otherwise
    b^(-d) * (csc(pi*|h_d|/b) + 1[d < m]); 1 for the zero row."""
    h = tuple(h)
    d = digit_d(h, b)
    if d == 0:
        return 1.0
    if b == 2:
        return 2.0 ** -d
    sigma = 1.0 if d < len(h) else 0.0
    return float(b) ** -d * (1.0 / math.sin(math.pi * abs(h[d - 1]) / b) + sigma)


def w_weight(b: int, big_h) -> float:
    """Product of row weights over the s x m frequency matrix."""
    w = 1.0
    for row in big_h:
        w *= q_weight(b, row)
    return w


def h_matrices(b: int, s: int, m: int):
    """All nonzero s x m frequency matrices, row-major lexicographic,
    entries ascending in (-b/2, b/2]."""
    rows = list(itertools.product(c_range(b), repeat=m))
    zero = ((0,) * m,) * s
    for big_h in itertools.product(rows, repeat=s):
        if big_h != zero:
            yield big_h


def exp_sum(b: int, big_h, ps: PointSet) -> float:
    """|sum_n e((1/b) sum_{i,j} h_ij w_nj^(i))| over the digit matrices."""
    if ps.digits is None or ps.base != b:
        raise MissingDigitsError(f"point set carries no base-{b} digit matrices")
    s = ps.dim
    m = len(ps.digits[0][0])
    if len(big_h) != s or any(len(row) != m for row in big_h):
        raise ValueError(f"frequency matrix must be {s} x {m}")
    unit = [cmath.exp(2j * math.pi * t / b) for t in range(b)]
    total = 0j
    for drow in ps.digits:
        t = 0
        for hrow, dvec in zip(big_h, drow):
            for hv, dv in zip(hrow, dvec):
                t += hv * dv
        total += unit[t % b]
    return abs(total)


def theorem_a_bound(b: int, ps: PointSet, m: int) -> float:
    """Upper bound s*b/N + sum_H W_b(H) |S_N(H)| / N over all nonzero
    s x m frequency matrices H.

    Digit matrices are recomputed in base b at width m (truncating
    non-terminating expansions, which the s*b/N term absorbs).  The H
    enumeration is lexicographic; the reduction is chunked but ordered,
    so any reassociation effect stays far below the 1e-9 slack used by
    callers.
    """
    n = ps.n_points
    s = ps.dim
    if m < ilog(b, n):
        raise MTooSmallError(f"m = {m} below floor(log_{b} {n}) = {ilog(b, n)}")
    if b ** (s * m) > _ENUM_GUARD:
        raise EnumerationTooLargeError(f"b^(s*m) = {b ** (s * m)} exceeds guard")
    ps = ps.with_digits(b, m)

    rows = list(itertools.product(c_range(b), repeat=m))
    n_rows = len(rows)
    q_rows = np.array([q_weight(b, row) for row in rows])
    rows_arr = np.array(rows, dtype=np.int64)  # (R, m)
    digits = np.array(ps.digits, dtype=np.int64)  # (N, s, m)
    # per-coordinate phase tables: phase of row rho on point n's coordinate i
    tables = [digits[:, i, :] @ rows_arr.T for i in range(s)]  # each (N, R)
    unit = np.exp(2j * np.pi * np.arange(b) / b)
    zero_row = rows.index((0,) * m)
    zero_h = sum(zero_row * n_rows ** (s - 1 - i) for i in range(s))

    total = 0.0
    n_h = n_rows ** s
    chunk = 1 << 14
    for start in range(0, n_h, chunk):
        idx = np.arange(start, min(start + chunk, n_h))
        rem = idx.copy()
        phases = np.zeros((n, len(idx)), dtype=np.int64)
        weights = np.ones(len(idx))
        for i in range(s - 1, -1, -1):
            rho = rem % n_rows
            rem //= n_rows
            phases += tables[i][:, rho]
            weights *= q_rows[rho]
        weights[idx == zero_h] = 0.0
        mags = np.abs(unit[phases % b].sum(axis=0))
        total += float(weights @ mags)
    return s * b / n + total / n


def ilog(b: int, n: int) -> int:
    """floor(log_b n) for n >= 1."""
    e = 0
    v = b
    while v <= n:
        e += 1
        v *= b
    return e


# ---------------------------------------------------------------------------
# inequality checkers


def lemma1_lhs(b: int, s: int, m: int) -> float:
    """sum of W_b(H) over all nonzero s x m matrices, by full enumeration."""
    if b ** (s * m) > _ENUM_GUARD:
        raise EnumerationTooLargeError(f"b^(s*m) = {b ** (s * m)} exceeds guard")
    return sum(w_weight(b, big_h) for big_h in h_matrices(b, s, m))


def lemma1_rhs(b: int, s: int, m: int) -> float:
    """Closed-form cap ((2/pi) m ln b + (7/5) m - (m-1)/b)^s."""
    return (2.0 / math.pi * m * math.log(b) + 1.4 * m - (m - 1) / b) ** s


def lemma2_delta_check(ctx: FieldCtx, beta: FieldElement) -> float:
    """|(1/q) sum_{alpha in F_q} e(Tr(alpha*beta)/p) - [beta == 0]|.

    The sum is q when beta = 0 and vanishes otherwise; the returned
    deviation is pure float rounding and must sit below 1e-9.
    """
    p = ctx.p
    unit = [cmath.exp(2j * math.pi * t / p) for t in range(p)]
    total = 0j
    for alpha in ctx.elements():
        total += unit[ctx.trace(ctx.mul(alpha, beta))]
    delta = 1.0 if beta.is_zero else 0.0
    return abs(total / ctx.q - delta)


def completion_weight_sum(t_len: int) -> float:
    """sum over the twist window m in [-T/2, T/2] of 1/max(1, |m|)."""
    return sum(1.0 / max(1, abs(mm)) for mm in range(-(t_len // 2), t_len // 2 + 1))


def completion_check(x, n_terms: int) -> tuple[float, float]:
    """Both sides of the completion bound for a length-T phase sequence.

    lhs = |sum_{n < N} e(x_n)|; rhs sums, over twists m in [-T/2, T/2],
    the full sum |sum_{n < T} e(x_n + n*m/T)| weighted by 1/max(1,|m|).
    Callers assert lhs <= rhs (+ float slack).
    """
    t_len = len(x)
    if not 0 <= n_terms <= t_len:
        raise ValueError("need 0 <= N <= T")
    lhs = abs(sum(cmath.exp(2j * math.pi * v) for v in x[:n_terms]))
    rhs = 0.0
    for mm in range(-(t_len // 2), t_len // 2 + 1):
        full = sum(cmath.exp(2j * math.pi * (v + nn * mm / t_len)) for nn, v in enumerate(x))
        rhs += abs(full) / max(1, abs(mm))
    return lhs, rhs


def completion_check_multi(x, n_box, t_box) -> tuple[float, float]:
    """r-dimensional analogue of completion_check over an array of phases.

    x has shape t_box; lhs sums the sub-box [0,N_1) x ... x [0,N_r),
    rhs runs over all twist tuples with product weight 1/prod max(1,|m_i|).
    """
    x = np.asarray(x, dtype=float)
    t_box = tuple(t_box)
    n_box = tuple(n_box)
    if x.shape != t_box:
        raise ValueError(f"phase array shape {x.shape} != T box {t_box}")
    if len(n_box) != len(t_box) or any(not 0 <= nv <= tv for nv, tv in zip(n_box, t_box)):
        raise ValueError("need 0 <= N_i <= T_i componentwise")
    sub = x[tuple(slice(0, nv) for nv in n_box)]
    lhs = abs(np.exp(2j * np.pi * sub).sum())
    grids = np.indices(t_box)
    rhs = 0.0
    windows = [range(-(tv // 2), tv // 2 + 1) for tv in t_box]
    for m_vec in itertools.product(*windows):
        twist = sum(mm * grids[i] / t_box[i] for i, mm in enumerate(m_vec))
        mag = abs(np.exp(2j * np.pi * (x + twist)).sum())
        rhs += mag / prod(max(1, abs(mm)) for mm in m_vec)
    return float(lhs), float(rhs)
