"""Exact arithmetic in GF(p) and GF(p^k).

The extension field is realized as F_p[x]/(f) for a monic irreducible
modulus f of degree k.  Elements are coefficient vectors in the
polynomial basis, constant term first, with every entry reduced to
[0, p).  A context is immutable after construction and cheap to share;
every operation is a pure function of (context, operands).

This is a desk-scale verifier, not a crypto library: field sizes are
capped at 2**40 and all integer factoring is trial division.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt

Q_CEILING = 1 << 40


class NotPrimeError(ValueError):
    """Characteristic is not a prime number."""


class NotMonicError(ValueError):
    """Modulus polynomial is not monic of the requested degree."""


class ReducibleError(ValueError):
    """Modulus polynomial factors over F_p."""


class FieldTooLargeError(ValueError):
    """p^k exceeds the desk-scale ceiling."""


class ZeroInverseError(ZeroDivisionError):
    """Negative power or inverse of the zero element."""


class ZeroElementError(ValueError):
    """Operation requires a nonzero element."""


class InternalError(RuntimeError):
    """An invariant that construction should have guaranteed failed."""


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test for desk-scale n."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization {prime: multiplicity} by trial division."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out: dict[int, int] = {}
    for d in itertools.chain([2], itertools.count(3, 2)):
        if d * d > n:
            break
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    """Euler's totient via the multiplicative formula."""
    phi = n
    for prime in factorize(n):
        phi -= phi // prime
    return phi


def solve_mod_p(matrix: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """Solve a square linear system over F_p by Gaussian elimination.

    Returns the unique solution, or None when the matrix is singular.
    """
    n = len(matrix)
    aug = [[v % p for v in row] + [rhs[i] % p] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = pow(aug[col][col], -1, p)
        aug[col] = [(v * inv) % p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


# -- dense polynomial helpers over F_p (coefficient lists, constant first) --

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    # f need not be monic; its lead is inverted once.
    a = [v % p for v in a]
    lead_inv = pow(f[-1], -1, p)
    deg_f = len(f) - 1
    for i in range(len(a) - 1, deg_f - 1, -1):
        c = (a[i] * lead_inv) % p
        if c:
            for j in range(deg_f + 1):
                a[i - deg_f + j] = (a[i - deg_f + j] - c * f[j]) % p
    return _poly_trim(a[:deg_f])


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [(v * inv) % p for v in a]
    return a


def _poly_powmod_x_ppow(i: int, f: list[int], p: int) -> list[int]:
    """x^(p^i) mod f, by iterating the p-th power map."""
    h = _poly_mod([0, 1], f, p)
    for _ in range(i):
        acc = [1]
        base = h
        e = p
        while e:
            if e & 1:
                acc = _poly_mod(_poly_mul(acc, base, p), f, p)
            base = _poly_mod(_poly_mul(base, base, p), f, p)
            e >>= 1
        h = acc
    return h


def _poly_sub_x(h: list[int], p: int) -> list[int]:
    """h(x) - x, trimmed."""
    out = list(h) + [0] * (2 - len(h))
    out[1] = (out[1] - 1) % p
    return _poly_trim(out)


def _is_irreducible(f: list[int], p: int, k: int) -> bool:
    """Irreducibility of a monic degree-k polynomial over F_p.

    Exhaustive divisor search at small sizes; beyond that, the
    Frobenius test: x^(p^k) = x mod f and gcd(x^(p^(k/l)) - x, f) = 1
    for every prime l dividing k.
    """
    if k == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    if p ** k <= 1 << 20:
        for deg in range(1, k // 2 + 1):
            for tail in itertools.product(range(p), repeat=deg):
                div = list(tail) + [1]
                if not _poly_mod(f, div, p):
                    return False
        return True
    for ell in factorize(k):
        h = _poly_powmod_x_ppow(k // ell, f, p)
        if _poly_gcd(_poly_sub_x(h, p), f, p) != [1]:
            return False
    return _poly_sub_x(_poly_powmod_x_ppow(k, f, p), p) == []


@dataclass(frozen=True)
class FieldElement:
    """Element of GF(p^k) as its k polynomial-basis coefficients."""

    coeffs: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def encode(self) -> str:
        """Comma-separated coefficients, constant term first."""
        return ",".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"FieldElement({self.encode()})"


class FieldCtx:
    """A realization of GF(p^k), fixed by a monic irreducible modulus.

    Construction verifies that p is prime, that the modulus is monic of
    degree exactly k and irreducible, and precomputes the factorization
    of q - 1 used for order and primitivity queries.
    """

    def __init__(self, p: int, k: int, modulus_poly) -> None:
        if not is_prime(p):
            raise NotPrimeError(f"p = {p} is not prime")
        if k < 2:
            raise ValueError(f"extension degree k must be >= 2, got {k}")
        coeffs = [int(c) % p for c in modulus_poly]
        if len(coeffs) != k + 1 or coeffs[-1] != 1:
            raise NotMonicError(
                f"modulus must be monic of degree {k} (got {len(coeffs) - 1 if coeffs else 'empty'})"
            )
        q = p ** k
        if q > Q_CEILING:
            raise FieldTooLargeError(f"p^k = {q} exceeds ceiling 2^40")
        if not _is_irreducible(coeffs, p, k):
            raise ReducibleError("modulus polynomial is reducible over F_p")
        self.p = p
        self.k = k
        self.q = q
        self.modulus_poly = tuple(coeffs)
        self.qm1_factors = factorize(q - 1)
        self.zero = FieldElement((0,) * k)
        self.one = FieldElement((1,) + (0,) * (k - 1))
        self.gen = FieldElement((0, 1) + (0,) * (k - 2))

    # -- construction helpers ------------------------------------------

    def element(self, coeffs) -> FieldElement:
        """Build an element from up to k coefficients (normalized mod p)."""
        if isinstance(coeffs, FieldElement):
            coeffs = coeffs.coeffs
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        vec = [int(c) % self.p for c in coeffs]
        if len(vec) > self.k:
            raise ValueError(f"element needs at most {self.k} coefficients, got {len(vec)}")
        vec += [0] * (self.k - len(vec))
        return FieldElement(tuple(vec))

    def parse_element(self, text: str) -> FieldElement:
        """Parse the comma-separated coefficient encoding."""
        return self.element([int(t) for t in text.split(",")])

    def element_from_index(self, index: int) -> FieldElement:
        """The index-th element, coefficients being base-p digits of index."""
        if not 0 <= index < self.q:
            raise ValueError(f"element index out of range [0, {self.q})")
        vec = []
        for _ in range(self.k):
            index, d = divmod(index, self.p)
            vec.append(d)
        return FieldElement(tuple(vec))

    def index_of(self, a: FieldElement) -> int:
        idx = 0
        for c in reversed(a.coeffs):
            idx = idx * self.p + c
        return idx

    def elements(self):
        """All q elements in index order."""
        return (self.element_from_index(i) for i in range(self.q))

    # -- arithmetic ----------------------------------------------------

    def add(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x + y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return FieldElement(tuple((x - y) % self.p for x, y in zip(a.coeffs, b.coeffs)))

    def neg(self, a: FieldElement) -> FieldElement:
        return FieldElement(tuple(-x % self.p for x in a.coeffs))

    def scale(self, c: int, a: FieldElement) -> FieldElement:
        c %= self.p
        return FieldElement(tuple((c * x) % self.p for x in a.coeffs))

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        p, k, f = self.p, self.k, self.modulus_poly
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    prod[i + j] += ai * bj
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(k):
                    prod[i - k + j] -= c * f[j]
            prod[i] = 0
        return FieldElement(tuple(v % p for v in prod[:k]))

    def pow(self, a: FieldElement, e: int) -> FieldElement:
        if a.is_zero:
            if e > 0:
                return self.zero
            if e == 0:
                return self.one
            raise ZeroInverseError("negative power of zero")
        e %= self.q - 1
        acc = self.one
        base = a
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inv(self, a: FieldElement) -> FieldElement:
        return self.pow(a, -1)

    # -- trace, orders, primitivity -------------------------------------

    def trace(self, a: FieldElement) -> int:
        """Trace to the prime field: a + a^p + ... + a^(p^(k-1)), in [0, p)."""
        acc = a
        frob = a
        for _ in range(self.k - 1):
            frob = self.pow(frob, self.p)
            acc = self.add(acc, frob)
        if any(acc.coeffs[1:]):
            raise InternalError("Frobenius sum escaped the prime field; modulus is broken")
        return acc.coeffs[0]

    def element_order(self, a: FieldElement) -> int:
        """Least t >= 1 with a^t = 1, via the factorization of q - 1."""
        if a.is_zero:
            raise ZeroElementError("order of zero is undefined")
        t = self.q - 1
        for prime, mult in self.qm1_factors.items():
            for _ in range(mult):
                if t % prime == 0 and self.pow(a, t // prime) == self.one:
                    t //= prime
        return t

    def is_primitive(self, a: FieldElement) -> bool:
        if a.is_zero:
            return False
        qm1 = self.q - 1
        return all(self.pow(a, qm1 // prime) != self.one for prime in self.qm1_factors)

    def enumerate_primitive(self) -> list[FieldElement]:
        """All generators of the multiplicative group, in index order."""
        return [a for a in self.elements() if self.is_primitive(a)]

    # -- derived structure ----------------------------------------------

    def minimal_polynomial(self, a: FieldElement) -> tuple[int, ...]:
        """Monic degree-k minimal polynomial of a (constant term first).

        Requires 1, a, ..., a^(k-1) to be linearly independent, which
        holds for every primitive element.
        """
        powers = [self.one]
        for _ in range(self.k):
            powers.append(self.mul(powers[-1], a))
        matrix = [[powers[j].coeffs[i] for j in range(self.k)] for i in range(self.k)]
        rhs = list(powers[self.k].coeffs)
        sol = solve_mod_p(matrix, rhs, self.p)
        if sol is None:
            raise InternalError("element generates a proper subfield; no degree-k minimal polynomial")
        return tuple((-c) % self.p for c in sol) + (1,)

    def recurrence_coeffs(self) -> tuple[int, ...]:
        """(a_0, ..., a_{k-1}) with x^k = a_{k-1} x^(k-1) + ... + a_0 mod f."""
        return tuple((-c) % self.p for c in self.modulus_poly[:-1])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.k, self.modulus_poly) == (other.p, other.k, other.modulus_poly)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus_poly))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, k={self.k}, modulus=[{','.join(map(str, self.modulus_poly))}])"


def ctx_new(p: int, k: int, modulus_poly) -> FieldCtx:
    """Construct a field context (validating) from p, k and the modulus."""
    return FieldCtx(p, k, modulus_poly)


def lcm_all(values) -> int:
    return reduce(lambda a, b: a * b // gcd(a, b), values, 1)
