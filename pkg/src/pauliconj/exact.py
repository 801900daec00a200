"""Exact arithmetic for Clifford+T amplitudes.

ExactScalar lives in Z[omega]/sqrt2^k with omega = e^{i pi/4} and sqrt2 = omega - omega^3.
RealRoot2 is (a + b*sqrt2)/2^l.  QRoot2 is the fraction field Q(sqrt2), used only
inside the Vandermonde machinery.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .f2 import F2Vec

__all__ = [
    "ExactScalar",
    "RealRoot2",
    "QRoot2",
    "GBRoot2Expr",
    "gb_value",
    "gb_from_value",
    "vandermonde_nodes",
    "vandermonde_matrix_entry",
    "vandermonde_inverse_row",
    "beta_clearing_factor",
]

_OMEGA = cmath.exp(1j * math.pi / 4)


class ExactScalar:
    """(c0 + c1*omega + c2*omega^2 + c3*omega^3) / sqrt2^k, normalized so k is minimal."""

    __slots__ = ("c0", "c1", "c2", "c3", "k")

    def __init__(self, c0: int, c1: int, c2: int, c3: int, k: int = 0):
        if k < 0:
            # fold surplus sqrt2 factors into the numerator
            for _ in range(-k):
                c0, c1, c2, c3 = c1 - c3, c0 + c2, c1 + c3, c2 - c0
            k = 0
        while k > 0 and (c0 - c2) % 2 == 0 and (c1 - c3) % 2 == 0:
            c0, c1, c2, c3 = (c1 - c3) // 2, (c0 + c2) // 2, (c1 + c3) // 2, (c2 - c0) // 2
            k -= 1
        if c0 == c1 == c2 == c3 == 0:
            k = 0
        self.c0, self.c1, self.c2, self.c3, self.k = c0, c1, c2, c3, k

    ZERO: "ExactScalar"
    ONE: "ExactScalar"

    @staticmethod
    def from_int(v: int) -> "ExactScalar":
        return ExactScalar(v, 0, 0, 0, 0)

    @staticmethod
    def omega_power(t: int) -> "ExactScalar":
        t %= 8
        sign = -1 if t >= 4 else 1
        coeffs = [0, 0, 0, 0]
        coeffs[t % 4] = sign
        return ExactScalar(*coeffs, 0)

    @staticmethod
    def i_power(t: int) -> "ExactScalar":
        return ExactScalar.omega_power(2 * t)

    @staticmethod
    def inv_sqrt2_power(k: int) -> "ExactScalar":
        return ExactScalar(1, 0, 0, 0, k)

    def _key(self) -> tuple[int, int, int, int, int]:
        return (self.c0, self.c1, self.c2, self.c3, self.k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.c0 == self.c1 == self.c2 == self.c3 == 0

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        a, b = self, other
        if a.k < b.k:
            a, b = b, a
        # raise b to denominator sqrt2^a.k
        c0, c1, c2, c3 = b.c0, b.c1, b.c2, b.c3
        for _ in range(a.k - b.k):
            c0, c1, c2, c3 = c1 - c3, c0 + c2, c1 + c3, c2 - c0
        return ExactScalar(a.c0 + c0, a.c1 + c1, a.c2 + c2, a.c3 + c3, a.k)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.c0, -self.c1, -self.c2, -self.c3, self.k)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-other)

    def __mul__(self, other: "ExactScalar") -> "ExactScalar":
        a = (self.c0, self.c1, self.c2, self.c3)
        b = (other.c0, other.c1, other.c2, other.c3)
        out = [0, 0, 0, 0]
        for i in range(4):
            if not a[i]:
                continue
            for j in range(4):
                if not b[j]:
                    continue
                s = i + j
                if s < 4:
                    out[s] += a[i] * b[j]
                else:
                    out[s - 4] -= a[i] * b[j]
        return ExactScalar(out[0], out[1], out[2], out[3], self.k + other.k)

    def conj(self) -> "ExactScalar":
        return ExactScalar(self.c0, -self.c3, -self.c2, -self.c1, self.k)

    def abs_squared(self) -> "RealRoot2":
        return (self * self.conj()).to_real()

    def is_real(self) -> bool:
        return self.c2 == 0 and self.c1 == -self.c3

    def times_sqrt2_power(self, t: int) -> "ExactScalar":
        """Multiply by sqrt2^t (t may be negative)."""
        return ExactScalar(self.c0, self.c1, self.c2, self.c3, self.k - t)

    def to_real(self) -> "RealRoot2":
        """Convert a real ExactScalar to RealRoot2; raises if not real."""
        if not self.is_real():
            raise ValueError(f"not a real scalar: {self}")
        a, b, k = self.c0, self.c1, self.k
        if k % 2 == 0:
            return RealRoot2(a, b, k // 2)
        return RealRoot2(2 * b, a, (k + 1) // 2)

    def to_complex(self) -> complex:
        num = self.c0 + self.c1 * _OMEGA + self.c2 * _OMEGA**2 + self.c3 * _OMEGA**3
        return num / math.sqrt(2) ** self.k

    def __repr__(self) -> str:
        return f"({self.c0},{self.c1},{self.c2},{self.c3})/sqrt2^{self.k}"


ExactScalar.ZERO = ExactScalar(0, 0, 0, 0, 0)
ExactScalar.ONE = ExactScalar(1, 0, 0, 0, 0)


class RealRoot2:
    """(a + b*sqrt2) / 2^l with a, b not both even when l > 0."""

    __slots__ = ("a", "b", "l")

    def __init__(self, a: int, b: int, l: int = 0):
        if l < 0:
            a, b, l = a * (1 << -l), b * (1 << -l), 0
        while l > 0 and a % 2 == 0 and b % 2 == 0:
            a, b, l = a // 2, b // 2, l - 1
        if a == 0 and b == 0:
            l = 0
        self.a, self.b, self.l = a, b, l

    ZERO: "RealRoot2"
    ONE: "RealRoot2"

    @staticmethod
    def from_int(v: int) -> "RealRoot2":
        return RealRoot2(v, 0, 0)

    def _key(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.l)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RealRoot2):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other: "RealRoot2") -> "RealRoot2":
        l = max(self.l, other.l)
        sa = self.a << (l - self.l)
        sb = self.b << (l - self.l)
        oa = other.a << (l - other.l)
        ob = other.b << (l - other.l)
        return RealRoot2(sa + oa, sb + ob, l)

    def __neg__(self) -> "RealRoot2":
        return RealRoot2(-self.a, -self.b, self.l)

    def __sub__(self, other: "RealRoot2") -> "RealRoot2":
        return self + (-other)

    def __mul__(self, other: "RealRoot2") -> "RealRoot2":
        return RealRoot2(
            self.a * other.a + 2 * self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.l + other.l,
        )

    def to_exact(self) -> ExactScalar:
        return ExactScalar(self.a, self.b, 0, -self.b, 2 * self.l)

    def to_fractions(self) -> "QRoot2":
        d = Fraction(1, 1 << self.l)
        return QRoot2(self.a * d, self.b * d)

    def to_float(self) -> float:
        return (self.a + self.b * math.sqrt(2)) / (1 << self.l)

    def __repr__(self) -> str:
        return f"({self.a}+{self.b}*sqrt2)/2^{self.l}"


RealRoot2.ZERO = RealRoot2(0, 0, 0)
RealRoot2.ONE = RealRoot2(1, 0, 0)


@dataclass(frozen=True)
class QRoot2:
    """p + q*sqrt2 with rational p, q; full fraction field for Vandermonde internals."""

    p: Fraction
    q: Fraction

    @staticmethod
    def from_int(v: int) -> "QRoot2":
        return QRoot2(Fraction(v), Fraction(0))

    def __add__(self, other: "QRoot2") -> "QRoot2":
        return QRoot2(self.p + other.p, self.q + other.q)

    def __neg__(self) -> "QRoot2":
        return QRoot2(-self.p, -self.q)

    def __sub__(self, other: "QRoot2") -> "QRoot2":
        return QRoot2(self.p - other.p, self.q - other.q)

    def __mul__(self, other: "QRoot2") -> "QRoot2":
        return QRoot2(
            self.p * other.p + 2 * self.q * other.q,
            self.p * other.q + self.q * other.p,
        )

    def __truediv__(self, other: "QRoot2") -> "QRoot2":
        norm = other.p * other.p - 2 * other.q * other.q
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt2)")
        return QRoot2(
            (self.p * other.p - 2 * self.q * other.q) / norm,
            (self.q * other.p - self.p * other.q) / norm,
        )

    def is_zero(self) -> bool:
        return self.p == 0 and self.q == 0

    def pow(self, e: int) -> "QRoot2":
        out = QRoot2.from_int(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def to_realroot2(self) -> RealRoot2:
        """Convert when both denominators are powers of two; raises otherwise."""
        dp, dq = self.p.denominator, self.q.denominator
        for d in (dp, dq):
            if d & (d - 1):
                raise ValueError(f"denominator {d} is not a power of two")
        l = max(dp.bit_length(), dq.bit_length()) - 1
        a = int(self.p * (1 << l))
        b = int(self.q * (1 << l))
        return RealRoot2(a, b, l)

    def to_float(self) -> float:
        return float(self.p) + float(self.q) * math.sqrt(2)


@dataclass(frozen=True)
class GBRoot2Expr:
    """Signed power sum sum_j (-1)^{signs_j} mask_j sqrt2^j."""

    signs: F2Vec
    mask: F2Vec

    def __post_init__(self) -> None:
        if self.signs.n != self.mask.n:
            raise ValueError("signs and mask lengths differ")

    @property
    def length(self) -> int:
        return self.mask.n

    def terms(self) -> Iterable[tuple[int, int]]:
        """(j, sign) for each selected power."""
        for j in self.mask.support():
            yield j, self.signs[j]


def gb_value(e: GBRoot2Expr) -> RealRoot2:
    """Exact value of a GB-sqrt2 expression."""
    a = 0
    b = 0
    for j, s in e.terms():
        c = -1 if s else 1
        if j % 2 == 0:
            a += c << (j // 2)
        else:
            b += c << ((j - 1) // 2)
    return RealRoot2(a, b, 0)


def gb_from_value(r: RealRoot2) -> GBRoot2Expr:
    """A GB-sqrt2 expression for an element of Z[sqrt2] (denom_exp must be 0)."""
    if r.l != 0:
        raise ValueError("gb_from_value requires denom_exp = 0")
    width = 2 * max(abs(r.a).bit_length(), abs(r.b).bit_length()) + 2
    signs = 0
    mask = 0
    for base, value in ((0, r.a), (1, r.b)):
        mag = abs(value)
        neg = value < 0
        i = 0
        while mag:
            if mag & 1:
                j = base + 2 * i
                mask |= 1 << j
                if neg:
                    signs |= 1 << j
            mag >>= 1
            i += 1
    return GBRoot2Expr(F2Vec(signs, width), F2Vec(mask, width))


def vandermonde_nodes(n: int) -> list[QRoot2]:
    """The evaluation nodes alpha^{4j+1}, alpha = 1/sqrt2, for j = 0..n."""
    alpha = QRoot2(Fraction(0), Fraction(1, 2))  # sqrt2/2 = 1/sqrt2
    return [alpha.pow(4 * j + 1) for j in range(n + 1)]


def vandermonde_matrix_entry(n: int, i: int, j: int) -> QRoot2:
    """Entry M[i][j] = alpha^{(4i+1) j} of the (n+1)x(n+1) system matrix."""
    alpha = QRoot2(Fraction(0), Fraction(1, 2))
    return alpha.pow((4 * i + 1) * j)


def beta_clearing_factor(n: int) -> Fraction:
    """beta = prod_{j=1}^n (1 - alpha^{4j}) with alpha = 1/sqrt2; rational."""
    beta = Fraction(1)
    for j in range(1, n + 1):
        beta *= 1 - Fraction(1, 4**j)
    return beta


def vandermonde_inverse_row(n: int, t: int) -> list[RealRoot2]:
    """Row t of the inverse Vandermonde system, cleared by beta.

    The system matrix is M[i][j] = x_i^j over nodes x_i = alpha^{4i+1}; the
    returned entries are beta*d_tj where d = M^{-1} and
    beta = prod_{j=1}^n (1 - alpha^{4j}).  Each entry lands in Z[sqrt2]/2^l.
    """
    if not 0 <= t <= n:
        raise ValueError(f"row index {t} out of range 0..{n}")
    nodes = vandermonde_nodes(n)
    beta = QRoot2(beta_clearing_factor(n), Fraction(0))
    out: list[RealRoot2] = []
    one = QRoot2.from_int(1)
    for j in range(n + 1):
        # d_tj = [y^t] L_j(y), the Lagrange basis polynomial through node j
        coeffs = [one]  # polynomial in y, low degree first
        denom = one
        for m in range(n + 1):
            if m == j:
                continue
            nxt = [QRoot2.from_int(0)] * (len(coeffs) + 1)
            for deg, c in enumerate(coeffs):
                nxt[deg] = nxt[deg] - c * nodes[m]
                nxt[deg + 1] = nxt[deg + 1] + c
            coeffs = nxt
            denom = denom * (nodes[j] - nodes[m])
        d_tj = coeffs[t] / denom
        out.append((beta * d_tj).to_realroot2())
    return out
