"""r-dimensional multisequences built from r interleaved trace sequences.

Each lattice index n = (n_1, ..., n_r) is mapped, per coordinate l, to a
scrambled companion index via the tilde map: a radix-s mix of the other
components reduced mod s^(r-1).  The value x_n packs the k digits
y(n, j) = sum_i Tr(alpha_i * beta_i^(k (n_i + s*tilde_i) + j - 1)) mod p
into one rational, and block point sets collect x over an
s_1 x ... x s_r window around each n.

The exponent offsets used by the tilde map make the window-index map
injective (block coordinates never collide), which lemma5_check verifies
by direct enumeration.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .gf import FieldCtx, FieldElement
from .seqgen import NotPrimitiveError, PrnPoint, digits_to_fraction

# A lattice index is a plain r-tuple of nonnegative ints.
LatticeIndex = tuple


class DiagonalIndexError(ValueError):
    """The exponent offset d_{w,i} is undefined on the diagonal w = i."""


@dataclass(frozen=True)
class MultiseqParams:
    """Configuration of the r-dimensional multisequence.

    s is the block bound; block_dims = (s_1, ..., s_r) with each
    s_i in [1, s] and s_1 * ... * s_r <= s.
    """

    ctx: FieldCtx
    r: int
    s: int
    block_dims: tuple[int, ...]
    alphas: tuple[FieldElement, ...]
    betas: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError("multisequence needs r >= 2")
        if self.s < 1:
            raise ValueError("block bound s must be >= 1")
        if len(self.block_dims) != self.r or len(self.alphas) != self.r or len(self.betas) != self.r:
            raise ValueError(f"block_dims, alphas, betas must all have length r={self.r}")
        if any(not 1 <= d <= self.s for d in self.block_dims):
            raise ValueError(f"every block dimension must lie in [1, s={self.s}]")
        if prod(self.block_dims) > self.s:
            raise ValueError("product of block dimensions exceeds the block bound s")
        for b in self.betas:
            if not self.ctx.is_primitive(b):
                raise NotPrimitiveError(f"beta = {b.encode()} is not a primitive element")

    @property
    def s0(self) -> int:
        return prod(self.block_dims)


def d_offset(w: int, i: int, r: int) -> int:
    """Radix exponent for component w when coordinate i is excluded."""
    if not (1 <= w <= r and 1 <= i <= r):
        raise ValueError(f"w, i must lie in [1, r={r}]")
    if w == i:
        raise DiagonalIndexError("offset undefined for w = i")
    return w - 1 if w < i else w - 2


def tilde(n: LatticeIndex, l: int, s: int, r: int) -> int:
    """Scrambled companion index: sum_{w != l} n_w s^d_{w,l} mod s^(r-1)."""
    if not 1 <= l <= r:
        raise ValueError(f"l must lie in [1, r={r}]")
    if len(n) != r:
        raise ValueError(f"lattice index must have {r} components")
    total = 0
    for w in range(1, r + 1):
        if w != l:
            total += n[w - 1] * s ** d_offset(w, l, r)
    return total % s ** (r - 1)


def _y_digits(params: MultiseqParams, n: LatticeIndex):
    """All k digit values y(n, 1), ..., y(n, k) at lattice index n."""
    ctx = params.ctx
    k, p = ctx.k, ctx.p
    digits = [0] * k
    for i in range(params.r):
        t = tilde(n, i + 1, params.s, params.r)
        e = k * (n[i] + params.s * t)
        g = ctx.mul(params.alphas[i], ctx.pow(params.betas[i], e))
        for j in range(k):
            digits[j] += ctx.trace(g)
            g = ctx.mul(g, params.betas[i])
    return [d % p for d in digits]


def y_value(params: MultiseqParams, n: LatticeIndex, j: int) -> int:
    """The j-th digit value y(n, j), 1 <= j <= k, in [0, p)."""
    if not 1 <= j <= params.ctx.k:
        raise ValueError(f"digit index j must lie in [1, k={params.ctx.k}]")
    if len(n) != params.r or any(v < 0 for v in n):
        raise ValueError("lattice index must be r nonnegative integers")
    return _y_digits(params, n)[j - 1]


def x_multiseq(params: MultiseqParams, n: LatticeIndex) -> Fraction:
    """x_n = sum_{j=1..k} y(n, j) p^(-j), exact."""
    if len(n) != params.r or any(v < 0 for v in n):
        raise ValueError("lattice index must be r nonnegative integers")
    return digits_to_fraction(_y_digits(params, n), params.ctx.p)


def block_points(params: MultiseqParams, n_box: tuple[int, ...]) -> list[PrnPoint]:
    """One point per lattice index n in the box [0,N_1) x ... x [0,N_r).

    The point at n has s_1*...*s_r coordinates x_{n+i}, i ranging over
    the block window in lexicographic order with i_1 slowest; that
    coordinate order is part of the file-format contract.  Points are
    listed lexicographically in n, n_1 slowest.
    """
    if len(n_box) != params.r or any(v < 1 for v in n_box):
        raise ValueError("box must give a positive extent per dimension")
    if prod(n_box) > params.ctx.q:
        warnings.warn(
            f"box volume {prod(n_box)} exceeds q = {params.ctx.q}; guarantees assume N_1*...*N_r <= q",
            stacklevel=2,
        )
    window = list(itertools.product(*(range(d) for d in params.block_dims)))
    points = []
    for n in itertools.product(*(range(v) for v in n_box)):
        rows = []
        coords = []
        for i_vec in window:
            shifted = tuple(nv + iv for nv, iv in zip(n, i_vec))
            digits = _y_digits(params, shifted)
            rows.append(tuple(digits))
            coords.append(digits_to_fraction(digits, params.ctx.p))
        points.append(PrnPoint(tuple(coords), tuple(rows)))
    return points


def lemma5_check(r: int, s: int, block_dims: tuple[int, ...], n: LatticeIndex, k: int) -> bool:
    """Window-index injectivity: for every excluded coordinate l, the
    values k*(s*tilde(n+i, l) + i_l) + j over all window offsets i and
    digit positions j in [0, k) are pairwise distinct, i.e. exactly
    k*s_1*...*s_r of them.

    Test oracle only; generation never calls this.
    """
    if len(block_dims) != r or len(n) != r:
        raise ValueError("block_dims and n must have length r")
    if any(not 1 <= d <= s for d in block_dims):
        raise ValueError("block dimensions must lie in [1, s]")
    expected = k * prod(block_dims)
    modulus = s ** (r - 1)
    window = list(itertools.product(*(range(d) for d in block_dims)))
    for l in range(1, r + 1):
        mults = [0 if w == l else s ** d_offset(w, l, r) for w in range(1, r + 1)]
        base = sum(nv * m for nv, m in zip(n, mults))
        seen = set()
        for i_vec in window:
            t = (base + sum(iv * m for iv, m in zip(i_vec, mults))) % modulus
            a = k * (s * t + i_vec[l - 1])
            for j in range(k):
                seen.add(a + j)
        if len(seen) != expected:
            return False
    return True
