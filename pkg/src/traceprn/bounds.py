"""Closed-form right-hand sides and explicit constants.

These evaluate the printed discrepancy guarantees: the worst-case bound
for shifted single sequences (constant c1), the multisequence analogue
(constant c2), the average-case reference curve, and the totient growth
inequality k*T/phi(q-1) <= 40 ln(3T) ln(3 ln 3T) that feeds them.

Everywhere, ln^a x means (ln x)^a, and the nested tail is parsed as
(ln(3 ln 6N))^2.5.  Both constants exceed max(p, 3000), so at desk
scale every bound is vacuously above any exact discrepancy; callers
assert that explicitly rather than pretending the comparison is sharp.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import prod
from typing import NamedTuple

from .gf import euler_phi


class Lemma6Result(NamedTuple):
    """Both sides of the totient growth inequality.

    in_precondition is False when (q, T) sit outside q > 3000,
    1 <= T <= 4q; the sides are still reported but carry no guarantee.
    """

    lhs: Fraction
    rhs: float
    holds: bool
    in_precondition: bool


def lemma6_check(q: int, k: int, t_len: int) -> Lemma6Result:
    """Evaluate k*T/phi(q-1) against 40 ln(3T) ln(3 ln 3T)."""
    if q < 4 or k < 1 or t_len < 1:
        raise ValueError("need q >= 4, k >= 1, T >= 1")
    lhs = Fraction(k * t_len, euler_phi(q - 1))
    rhs = 40.0 * math.log(3 * t_len) * math.log(3 * math.log(3 * t_len))
    return Lemma6Result(lhs, rhs, lhs <= rhs, q > 3000 and t_len <= 4 * q)


def c1(p: int, s: int, b1: int, b2: int) -> float:
    """s*p + 3^6 sqrt(s+2) 2.5^s b1^1.5 b2 ln^2(3 b1) ln^2(3 b2)."""
    return (
        s * p
        + 3**6
        * math.sqrt(s + 2)
        * 2.5**s
        * b1**1.5
        * b2
        * math.log(3 * b1) ** 2
        * math.log(3 * b2) ** 2
    )


def theorem1_rhs(p: int, s: int, b1: int, b2: int, n: int, epsilon: float) -> float:
    """Worst-case bound c1/eps * N^(-1/2) ln^(s+2.5)(6N) (ln(3 ln 6N))^2.5."""
    if n < 1:
        raise ValueError("need N >= 1")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return (
        c1(p, s, b1, b2)
        / epsilon
        * n**-0.5
        * math.log(6 * n) ** (s + 2.5)
        * math.log(3 * math.log(6 * n)) ** 2.5
    )


def c2(p: int, r: int, s: int, dims) -> float:
    """s0*p + 3^(5r) 2.5^s s^(r^2 - r/2) prod s_i prod ln^2(3 s_i)."""
    dims = tuple(dims)
    if len(dims) != r or any(not 1 <= d <= s for d in dims) or prod(dims) > s:
        raise ValueError("dims must be r values in [1, s] with product <= s")
    tail = 3.0 ** (5 * r) * 2.5**s * float(s) ** (r * r - r / 2)
    for d in dims:
        tail *= d * math.log(3 * d) ** 2
    return prod(dims) * p + tail


def theorem2_rhs(p: int, r: int, s: int, dims, n_vec, epsilon: float) -> float:
    """Multisequence bound c2/eps * (prod N)^(-1/2)
    ln^(s0+2.5r)(2^(r+1) prod N) (ln(3 ln(6 prod N)))^(2.5r)."""
    n_vec = tuple(n_vec)
    if len(n_vec) != r or any(v < 1 for v in n_vec):
        raise ValueError("need r point counts, each >= 1")
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    pn = prod(n_vec)
    s0 = prod(tuple(dims))
    return (
        c2(p, r, s, dims)
        / epsilon
        * pn**-0.5
        * math.log(2 ** (r + 1) * pn) ** (s0 + 2.5 * r)
        * math.log(3 * math.log(6 * pn)) ** (2.5 * r)
    )


def eq23_avg_bound(b1: int, s: int, t_len: int) -> float:
    """Average-over-pairs reference curve:
    3 sqrt(40) sqrt(s+2) 2.5^s sqrt(b1) sqrt(T) ln^(s+1.5)(3T) sqrt(ln(3 ln 3T))."""
    if t_len < 1:
        raise ValueError("need T >= 1")
    return (
        3.0
        * math.sqrt(40)
        * math.sqrt(s + 2)
        * 2.5**s
        * math.sqrt(b1)
        * math.sqrt(t_len)
        * math.log(3 * t_len) ** (s + 1.5)
        * math.sqrt(math.log(3 * math.log(3 * t_len)))
    )
