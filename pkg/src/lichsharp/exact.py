"""Exact scalars: rational formatting, quadratic surds ``a + b*sqrt(D)`` and integer rank."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

Rational = Union[int, Fraction]


def fmt(q: Rational) -> str:
    """``num/den`` with the denominator always present."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


def _square_free(n: int) -> tuple[int, int]:
    """``n = k**2 * r`` with ``r`` square-free; returns ``(k, r)``."""
    k, r, rest, f = 1, 1, n, 2
    while f * f * f <= rest:
        e = 0
        while rest % f == 0:
            rest //= f
            e += 1
        k *= f ** (e // 2)
        r *= f ** (e % 2)
        f += 1
    # no prime below f divides rest and f**3 > rest: at most two prime factors left
    root = math.isqrt(rest)
    if root * root == rest:
        return k * root, r
    return k, r * rest


@dataclass(frozen=True)
class QuadraticSurd:
    """``a + b * sqrt(radicand)`` with rational ``a, b`` and square-free ``radicand >= 1``.

    ``b == 0`` is normalised to ``radicand == 1`` so equality is structural.
    """

    a: Fraction
    b: Fraction = Fraction(0)
    radicand: int = 1

    def __post_init__(self):
        a, b, r = Fraction(self.a), Fraction(self.b), int(self.radicand)
        if r < 1:
            raise ValueError("radicand must be positive")
        k, r = _square_free(r)
        b *= k
        if r == 1:
            a, b = a + b, Fraction(0)
        if b == 0:
            r = 1
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "radicand", r)

    @classmethod
    def sqrt(cls, q: Rational) -> "QuadraticSurd":
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative number")
        # sqrt(p/q) = sqrt(p*q)/q
        return cls(Fraction(0), Fraction(1, q.denominator), q.numerator * q.denominator) if q else cls(Fraction(0))

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadraticSurd":
        if isinstance(other, QuadraticSurd):
            if other.b and self.b and other.radicand != self.radicand:
                raise ValueError("surds with different radicands")
            return other
        return QuadraticSurd(Fraction(other))

    def __add__(self, other):
        o = self._coerce(other)
        r = self.radicand if self.b else o.radicand
        return QuadraticSurd(self.a + o.a, self.b + o.b, r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.radicand)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        r = self.radicand if self.b else o.radicand
        return QuadraticSurd(self.a * o.a + self.b * o.b * r, self.a * o.b + self.b * o.a, r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not o.is_rational:
            # multiply by the conjugate
            conj = QuadraticSurd(o.a, -o.b, o.radicand)
            norm = o.a * o.a - o.b * o.b * o.radicand
            return (self * conj) / norm
        return QuadraticSurd(self.a / o.a, self.b / o.a, self.radicand)

    def sign(self) -> int:
        """Exact sign of ``a + b*sqrt(r)``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with b^2 r
        lhs, rhs = self.a * self.a, self.b * self.b * self.radicand
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __eq__(self, other):
        try:
            return (self - other).sign() == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.radicand))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.is_rational:
            return fmt(self.a)
        sign = "-" if self.b < 0 else "+"
        return f"{fmt(self.a)}{sign}{fmt(abs(self.b))}√{self.radicand}"


# ---------------------------------------------------------------------------
# fraction-free elimination

def integer_rank(matrix) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination (exact)."""
    m = np.array(matrix, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    prev = 1
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        sub = m[rank:, col]
        nz = np.flatnonzero(sub != 0)
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        pivot = m[rank, col]
        below = m[rank + 1:, col + 1:]
        if below.size:
            # every division below is exact (Sylvester's identity)
            m[rank + 1:, col + 1:] = (below * pivot - np.outer(m[rank + 1:, col], m[rank, col + 1:])) // prev
        m[rank + 1:, col] = 0
        prev = pivot
        rank += 1
    return rank


def rational_matrix_rank(matrix) -> int:
    """Rank of a matrix of Fractions, cleared to integers row by row."""
    rows = []
    for row in matrix:
        den = 1
        for q in row:
            den = math.lcm(den, Fraction(q).denominator)
        rows.append([int(Fraction(q) * den) for q in row])
    return integer_rank(rows)


NULLITY_PRIME = 2_147_483_647     # 2**31 - 1: products of residues fit in int64


def _rational_reconstruct(a: int, p: int) -> Fraction | None:
    """The fraction ``r/s`` with ``|r|, s < sqrt(p/2)`` and ``r = a*s (mod p)``, if any."""
    bound = math.isqrt(p // 2)
    r0, r1, s0, s1 = p, a % p, 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _kernel_mod_p(m: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    """Reduced row echelon form modulo ``p``: (pivot columns, pivot rows)."""
    m = m.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - (np.outer(col, m[r]) % p)) % p
        pivots.append(c)
        r += 1
    return pivots, m[:r]


def integer_nullity(matrix) -> int:
    """Dimension of the rational kernel of an integer matrix (exact).

    The kernel is solved modulo a large prime, each basis vector is lifted to
    rationals and checked exactly. Rank modulo a prime never exceeds the rational
    rank, so ``k`` verified independent kernel vectors fix the nullity at ``k``.
    Any failed lift falls back to :func:`integer_rank`.
    """
    m = np.array(matrix, dtype=object)
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = m.shape
    p = NULLITY_PRIME
    reduced = np.array([[int(x) % p for x in row] for row in m], dtype=np.int64).reshape(rows, cols)
    pivots, rref = _kernel_mod_p(reduced, p)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    small = math.isqrt(p // 2)
    basis = []
    for f in free:
        vec: list[Fraction | int] = [0] * cols
        vec[f] = 1
        for i, c in enumerate(pivots):
            residue = -int(rref[i, f]) % p
            if residue < small:
                vec[c] = residue
            elif p - residue < small:
                vec[c] = residue - p
            else:
                q = _rational_reconstruct(residue, p)
                if q is None:
                    return cols - integer_rank(m)
                vec[c] = q
        den = math.lcm(*(Fraction(q).denominator for q in vec if not isinstance(q, int)))
        basis.append([int(q * den) for q in vec])
    if basis and not _annihilates(m, basis):
        return cols - integer_rank(m)
    return len(free)


def _annihilates(m: np.ndarray, basis: list[list[int]]) -> bool:
    """Exact test that ``m @ v == 0`` for every ``v`` in ``basis``."""
    top = max((abs(int(x)) for x in m.flat), default=0)
    weight = max(sum(abs(x) for x in v) for v in basis)
    vecs = np.array(basis, dtype=object).T
    if top * weight < 2**62:
        # every partial sum is bounded by top * weight, so int64 is exact
        return not (m.astype(np.int64) @ vecs.astype(np.int64)).any()
    return not any(x != 0 for x in m.dot(vecs).flat)
