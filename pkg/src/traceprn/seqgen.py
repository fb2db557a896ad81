"""Linear recurring sequences and the digital multistep point sequences.

A kth-order recurrence y_{n+k} = a_{k-1} y_{n+k-1} + ... + a_0 y_n mod p
with a primitive characteristic polynomial has the closed trace form
y_n = Tr(alpha * beta^n) for a root beta and a unique alpha.  The
multistep transform packs k consecutive terms into one exact rational
x_n = sum_j y_{kn+j-1} p^(-j) in [0, 1); s-dimensional points are
overlapping windows (x_t, ..., x_{t+s-1}) along an arithmetic index
progression t = b1*n + b2.

Coordinates stay exact rationals with denominator p^k throughout; no
floating point enters generation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .gf import FieldCtx, FieldElement, InternalError, solve_mod_p


class AllZeroInitError(ValueError):
    """Initial recurrence values are all zero."""


class NotPrimitiveError(ValueError):
    """beta must generate the multiplicative group."""


@dataclass(frozen=True)
class GeneratorParams:
    """Everything needed to emit the shifted s-dimensional point sequence.

    b1, b2 are the index progression (absolute shifts, not reduced mod
    the period); s is the embedding dimension.  alpha = 0 is allowed but
    degenerate: it generates the all-zero sequence.
    """

    ctx: FieldCtx
    alpha: FieldElement
    beta: FieldElement
    b1: int = 1
    b2: int = 1
    s: int = 1

    def __post_init__(self) -> None:
        if not self.ctx.is_primitive(self.beta):
            raise NotPrimitiveError(f"beta = {self.beta.encode()} is not a primitive element")
        if not 1 <= self.b1 <= self.ctx.q or not 1 <= self.b2 <= self.ctx.q:
            raise ValueError(f"b1, b2 must lie in [1, q={self.ctx.q}]")
        if self.s < 1:
            raise ValueError("embedding dimension s must be >= 1")

    @property
    def degenerate(self) -> bool:
        return self.alpha.is_zero


@dataclass(frozen=True)
class PrnPoint:
    """One generated point: exact coordinates plus their base-p digits.

    digit_matrix[i][j-1] is the j-th base-p digit of coordinate i, i.e.
    the recurrence value y_{k*t_i + j - 1} that produced it.
    """

    coords: tuple[Fraction, ...]
    digit_matrix: tuple[tuple[int, ...], ...] = field(repr=False)


def digits_to_fraction(digits, p: int) -> Fraction:
    """Exact value of sum_j digits[j-1] * p^(-j)."""
    num = 0
    for d in digits:
        num = num * p + d
    return Fraction(num, p ** len(digits))


def lfsr_seq(ctx: FieldCtx, a_coeffs, y_init, count: int):
    """First `count` values of the recurrence with coefficients a_0..a_{k-1}."""
    k, p = ctx.k, ctx.p
    if len(a_coeffs) != k or len(y_init) != k:
        raise ValueError(f"need exactly k={k} coefficients and initial values")
    if not any(v % p for v in y_init):
        raise AllZeroInitError("initial values are all zero")
    ys = [v % p for v in y_init]
    a = [v % p for v in a_coeffs]
    while len(ys) < count:
        ys.append(sum(ai * yi for ai, yi in zip(a, ys[-k:])) % p)
    return ys[:count]


def trace_seq(params: GeneratorParams, n_from: int, count: int):
    """y_n = Tr(alpha * beta^n) for n_from <= n < n_from + count.

    Computed incrementally: one field multiply per step.
    """
    ctx = params.ctx
    cur = ctx.mul(params.alpha, ctx.pow(params.beta, n_from))
    out = []
    for _ in range(count):
        out.append(ctx.trace(cur))
        cur = ctx.mul(cur, params.beta)
    return out


def lfsr_to_alpha(ctx: FieldCtx, beta: FieldElement, y_init) -> FieldElement:
    """The unique alpha with Tr(alpha * beta^n) = y_init[n] for n < k.

    Solves the k x k linear system over F_p in alpha's coefficients;
    nonsingular whenever beta is primitive.
    """
    k = ctx.k
    if len(y_init) != k:
        raise ValueError(f"need exactly k={k} initial values")
    if not any(v % ctx.p for v in y_init):
        raise AllZeroInitError("initial values are all zero")
    basis = [ctx.element_from_index(ctx.p ** j) for j in range(k)]
    beta_pow = ctx.one
    matrix = []
    for _ in range(k):
        matrix.append([ctx.trace(ctx.mul(e, beta_pow)) for e in basis])
        beta_pow = ctx.mul(beta_pow, beta)
    sol = solve_mod_p(matrix, [v % ctx.p for v in y_init], ctx.p)
    if sol is None:
        raise InternalError("trace system singular; beta cannot be primitive")
    return ctx.element(sol)


def multistep_x(params: GeneratorParams, n: int) -> Fraction:
    """x_n = sum_{j=1..k} y_{kn+j-1} p^(-j), exact."""
    if n < 0:
        raise ValueError("sequence index must be >= 0")
    digits = trace_seq(params, params.ctx.k * n, params.ctx.k)
    return digits_to_fraction(digits, params.ctx.p)


def theorem1_points(params: GeneratorParams, n_points: int) -> list[PrnPoint]:
    """The first N points of the shifted s-dimensional sequence.

    Point n has coordinates (x_t, ..., x_{t+s-1}) with t = b1*n + b2;
    digit j of coordinate i is the recurrence value with index
    k*(b1*n + b2 + i) + j - 1.
    """
    if n_points < 1:
        raise ValueError("need at least one point")
    ctx = params.ctx
    k, p, s = ctx.k, ctx.p, params.s
    beta = params.beta
    beta_k = ctx.pow(beta, k)
    step_n = ctx.pow(beta, k * params.b1)
    row_start = ctx.mul(params.alpha, ctx.pow(beta, k * params.b2))
    points = []
    for _ in range(n_points):
        cur = row_start
        rows = []
        coords = []
        for _ in range(s):
            g = cur
            digits = []
            for _ in range(k):
                digits.append(ctx.trace(g))
                g = ctx.mul(g, beta)
            rows.append(tuple(digits))
            coords.append(digits_to_fraction(digits, p))
            cur = ctx.mul(cur, beta_k)
        points.append(PrnPoint(tuple(coords), tuple(rows)))
        row_start = ctx.mul(row_start, step_n)
    return points
