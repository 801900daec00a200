"""Linear algebra over F2 on int bitsets, plus the symplectic layer used everywhere else.

Vectors are little-endian: coordinate j (0-based) is bit j of the int.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "F2Vec",
    "F2Matrix",
    "SymplecticVec",
    "OrderedBasis",
    "AffineSpace",
    "parity",
    "popcount",
    "gauss_eliminate",
    "solve_f2",
    "symplectic_form",
    "dot_form",
    "anticommutation_map",
    "selected_subspace",
    "basis_coords",
    "basis_weight",
    "affine_intersect",
]


def popcount(x: int) -> int:
    """Number of set bits."""
    return x.bit_count()


def parity(x: int) -> int:
    """Parity of the number of set bits."""
    return x.bit_count() & 1


@dataclass(frozen=True)
class F2Vec:
    """Vector in F2^n as an int bitset of width n."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 0 or self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits out of range for width {self.n}")

    @staticmethod
    def zero(n: int) -> "F2Vec":
        return F2Vec(0, n)

    @staticmethod
    def unit(j: int, n: int) -> "F2Vec":
        """Standard basis vector e_j (0-based coordinate)."""
        return F2Vec(1 << j, n)

    @staticmethod
    def from_string(s: str) -> "F2Vec":
        """Parse a 0/1 string; character j is coordinate j."""
        if not all(c in "01" for c in s):
            raise ValueError(f"not a bitstring: {s!r}")
        bits = 0
        for j, c in enumerate(s):
            if c == "1":
                bits |= 1 << j
        return F2Vec(bits, len(s))

    @staticmethod
    def from_coords(coords: Iterable[int], n: int) -> "F2Vec":
        bits = 0
        for c in coords:
            bits |= 1 << c
        return F2Vec(bits, n)

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> j) & 1 else "0" for j in range(self.n))

    def __xor__(self, other: "F2Vec") -> "F2Vec":
        self._check(other)
        return F2Vec(self.bits ^ other.bits, self.n)

    def __and__(self, other: "F2Vec") -> "F2Vec":
        self._check(other)
        return F2Vec(self.bits & other.bits, self.n)

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise IndexError(j)
        return (self.bits >> j) & 1

    def __iter__(self) -> Iterator[int]:
        return ((self.bits >> j) & 1 for j in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __bool__(self) -> bool:
        return self.bits != 0

    def dot(self, other: "F2Vec") -> int:
        """Standard inner product mod 2."""
        self._check(other)
        return parity(self.bits & other.bits)

    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if (self.bits >> j) & 1)

    def is_subset_of(self, other: "F2Vec") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def _check(self, other: "F2Vec") -> None:
        if self.n != other.n:
            raise ValueError(f"width mismatch: {self.n} != {other.n}")


def gauss_eliminate(rows: Sequence[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form with leftmost pivots.

    Returns (rref_rows, pivot_columns); zero rows are dropped.
    """
    rref: list[int] = []
    pivots: list[int] = []
    for row in rows:
        for r, p in zip(rref, pivots):
            if (row >> p) & 1:
                row ^= r
        if row == 0:
            continue
        p = (row & -row).bit_length() - 1
        for i, r in enumerate(rref):
            if (r >> p) & 1:
                rref[i] = r ^ row
        # keep rows sorted by pivot
        k = sum(1 for q in pivots if q < p)
        rref.insert(k, row)
        pivots.insert(k, p)
    return rref, pivots


def solve_f2(rows: Sequence[int], rhs: Sequence[int], ncols: int) -> int | None:
    """Lexicographically minimal solution x of the system row_i . x = rhs_i, or None.

    Free coordinates are set to zero; "lex-min" means minimal as an int bitset.
    """
    # eliminate on augmented rows (constraint vectors), tracking rhs
    sys_rows: list[int] = []
    sys_rhs: list[int] = []
    sys_piv: list[int] = []
    for row, b in zip(rows, rhs):
        for r, rb, p in zip(sys_rows, sys_rhs, sys_piv):
            if (row >> p) & 1:
                row ^= r
                b ^= rb
        if row == 0:
            if b:
                return None
            continue
        p = (row & -row).bit_length() - 1
        for i, r in enumerate(sys_rows):
            if (r >> p) & 1:
                sys_rows[i] = r ^ row
                sys_rhs[i] ^= b
        sys_rows.append(row)
        sys_rhs.append(b)
        sys_piv.append(p)
    x = 0
    for row, b, p in zip(sys_rows, sys_rhs, sys_piv):
        # rref: row has pivot p and possibly free coords; with free coords = 0,
        # coordinate p must equal b
        if b:
            x |= 1 << p
    return x


@dataclass(frozen=True)
class F2Matrix:
    """Matrix over F2, stored as int bitset rows of width ncols."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self) -> None:
        for r in self.rows:
            if r < 0 or r >> self.ncols:
                raise ValueError("row out of range")

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "F2Matrix":
        packed = []
        ncols = None
        for row in rows:
            row = list(row)
            if ncols is None:
                ncols = len(row)
            elif len(row) != ncols:
                raise ValueError("ragged rows")
            packed.append(sum(1 << j for j, v in enumerate(row) if int(v) & 1))
        return F2Matrix(tuple(packed), ncols or 0)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def row_vec(self, i: int) -> F2Vec:
        return F2Vec(self.rows[i], self.ncols)

    def rank(self) -> int:
        return len(gauss_eliminate(self.rows, self.ncols)[0])

    def rref(self) -> "F2Matrix":
        return F2Matrix(tuple(gauss_eliminate(self.rows, self.ncols)[0]), self.ncols)

    def apply(self, v: F2Vec) -> F2Vec:
        """Image of v under the linear map x -> (row_i . x)_i."""
        if v.n != self.ncols:
            raise ValueError("width mismatch")
        bits = 0
        for i, r in enumerate(self.rows):
            if parity(r & v.bits):
                bits |= 1 << i
        return F2Vec(bits, self.nrows)

    def row_span(self) -> Iterator[F2Vec]:
        """All vectors in the row space (2^rank of them)."""
        basis = gauss_eliminate(self.rows, self.ncols)[0]
        for mask in range(1 << len(basis)):
            acc = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    acc ^= basis[i]
                i += 1
                m >>= 1
            yield F2Vec(acc, self.ncols)


@dataclass(frozen=True)
class SymplecticVec:
    """Element of F2^{2n} split as (z | x): z marks Z-components, x marks X-components."""

    z: int
    x: int
    n: int

    def __post_init__(self) -> None:
        if self.z < 0 or self.x < 0 or self.z >> self.n or self.x >> self.n:
            raise ValueError(f"component out of range for n={self.n}")

    @staticmethod
    def zero(n: int) -> "SymplecticVec":
        return SymplecticVec(0, 0, n)

    @staticmethod
    def e_z(j: int, n: int) -> "SymplecticVec":
        """Z on wire j (1-based), identity elsewhere."""
        return SymplecticVec(1 << (j - 1), 0, n)

    @staticmethod
    def e_x(j: int, n: int) -> "SymplecticVec":
        """X on wire j (1-based), identity elsewhere."""
        return SymplecticVec(0, 1 << (j - 1), n)

    @staticmethod
    def from_bitstring(s: str) -> "SymplecticVec":
        """Parse a 2n-bit string; the first n bits are z, the last n are x."""
        if len(s) % 2:
            raise ValueError("odd-length symplectic bitstring")
        n = len(s) // 2
        z = F2Vec.from_string(s[:n]).bits
        x = F2Vec.from_string(s[n:]).bits
        return SymplecticVec(z, x, n)

    def to_bitstring(self) -> str:
        return F2Vec(self.z, self.n).to_string() + F2Vec(self.x, self.n).to_string()

    def __xor__(self, other: "SymplecticVec") -> "SymplecticVec":
        self._check(other)
        return SymplecticVec(self.z ^ other.z, self.x ^ other.x, self.n)

    def __bool__(self) -> bool:
        return bool(self.z or self.x)

    def weight(self) -> int:
        """Number of wires with a non-identity component."""
        return popcount(self.z | self.x)

    def wire(self, j: int) -> tuple[int, int]:
        """(z_j, x_j) at wire j (1-based)."""
        return (self.z >> (j - 1)) & 1, (self.x >> (j - 1)) & 1

    def _check(self, other: "SymplecticVec") -> None:
        if self.n != other.n:
            raise ValueError(f"qubit count mismatch: {self.n} != {other.n}")


def symplectic_form(u: SymplecticVec, v: SymplecticVec) -> int:
    """B(u, v) = u_Z.v_X + u_X.v_Z mod 2; 1 iff the Paulis anticommute."""
    u._check(v)
    return parity(u.z & v.x) ^ parity(u.x & v.z)


def dot_form(u: SymplecticVec, v: SymplecticVec) -> int:
    """Standard inner product of the underlying 2n-bit vectors."""
    u._check(v)
    return parity(u.z & v.z) ^ parity(u.x & v.x)


@dataclass(frozen=True)
class OrderedBasis:
    """Ordered tuple of independent vectors in F2^{2n}."""

    vectors: tuple[SymplecticVec, ...]

    def __post_init__(self) -> None:
        if self.vectors:
            n = self.vectors[0].n
            for v in self.vectors:
                if v.n != n:
                    raise ValueError("mixed qubit counts in basis")
            rows = [v.z | (v.x << n) for v in self.vectors]
            if len(gauss_eliminate(rows, 2 * n)[0]) != len(rows):
                raise ValueError("basis vectors are dependent")

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def n(self) -> int:
        if not self.vectors:
            raise ValueError("empty basis has no qubit count")
        return self.vectors[0].n

    def __iter__(self) -> Iterator[SymplecticVec]:
        return iter(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> SymplecticVec:
        return self.vectors[i]

    def is_isotropic(self) -> bool:
        vs = self.vectors
        return all(
            symplectic_form(vs[i], vs[j]) == 0
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        )

    def span(self) -> Iterator[SymplecticVec]:
        n = self.n if self.vectors else 0
        for mask in range(1 << len(self.vectors)):
            acc = SymplecticVec.zero(n) if self.vectors else None
            if acc is None:
                yield SymplecticVec.zero(0)
                return
            m = mask
            i = 0
            while m:
                if m & 1:
                    acc = acc ^ self.vectors[i]
                i += 1
                m >>= 1
            yield acc

    def combine(self, mask: F2Vec) -> SymplecticVec:
        """XOR of the basis vectors selected by mask."""
        if mask.n != len(self.vectors):
            raise ValueError("mask length != basis size")
        acc = SymplecticVec.zero(self.n)
        for i in mask.support():
            acc = acc ^ self.vectors[i]
        return acc


def anticommutation_map(basis: OrderedBasis, y: SymplecticVec) -> F2Vec:
    """The vector (B(x_1, y), ..., B(x_r, y))."""
    return F2Vec.from_coords(
        (i for i, v in enumerate(basis.vectors) if symplectic_form(v, y)),
        len(basis.vectors),
    )


def selected_subspace(basis: OrderedBasis, mask: F2Vec) -> OrderedBasis:
    """Sub-basis (x_j : mask_j = 1), order preserved."""
    if mask.n != len(basis.vectors):
        raise ValueError("mask length != basis size")
    return OrderedBasis(tuple(basis.vectors[i] for i in mask.support()))


def basis_coords(basis: OrderedBasis, v: SymplecticVec) -> F2Vec:
    """Coordinates of v in the (independent) basis; raises if v is outside the span."""
    n = v.n
    r = len(basis.vectors)
    width = 2 * n + r
    rows = [
        b.z | (b.x << n) | (1 << (2 * n + i)) for i, b in enumerate(basis.vectors)
    ]
    rref, pivots = gauss_eliminate(rows, width)
    target = v.z | (v.x << n)
    for row, p in zip(rref, pivots):
        if p < 2 * n and (target >> p) & 1:
            target ^= row
    if target & ((1 << (2 * n)) - 1):
        raise ValueError("vector not in span of basis")
    return F2Vec(target >> (2 * n), r)


def basis_weight(basis: OrderedBasis, v: SymplecticVec) -> int:
    """omega(x, v): number of basis vectors in the unique expression of v."""
    return basis_coords(basis, v).weight()


class AffineSpace:
    """Affine subspace offset + span(basis) of F2^m, held in canonical form.

    The basis is in reduced row echelon form and the offset has zero entries on
    all pivot columns, so two equal spaces compare equal structurally.
    """

    __slots__ = ("offset", "basis", "m")

    def __init__(self, offset: F2Vec, rows: Sequence[int]) -> None:
        rref, pivots = gauss_eliminate(rows, offset.n)
        off = offset.bits
        for row, p in zip(rref, pivots):
            if (off >> p) & 1:
                off ^= row
        self.offset = F2Vec(off, offset.n)
        self.basis = tuple(rref)
        self.m = offset.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineSpace):
            return NotImplemented
        return (
            self.m == other.m
            and self.offset == other.offset
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.m, self.offset, self.basis))

    def __contains__(self, v: F2Vec) -> bool:
        if v.n != self.m:
            return False
        rem = v.bits ^ self.offset.bits
        for row in self.basis:
            p = (row & -row).bit_length() - 1
            if (rem >> p) & 1:
                rem ^= row
        return rem == 0

    def __len__(self) -> int:
        return 1 << len(self.basis)

    def members(self) -> Iterator[F2Vec]:
        for mask in range(1 << len(self.basis)):
            acc = self.offset.bits
            m = mask
            i = 0
            while m:
                if m & 1:
                    acc ^= self.basis[i]
                i += 1
                m >>= 1
            yield F2Vec(acc, self.m)

    def __repr__(self) -> str:
        return f"AffineSpace(offset={self.offset.to_string()}, dim={self.dim})"


def affine_intersect(a: AffineSpace, b: AffineSpace) -> AffineSpace | None:
    """Intersection of two affine spaces, or None if empty."""
    if a.m != b.m:
        raise ValueError("ambient dimension mismatch")
    # Zassenhaus on (u, u) for span(a), (w, 0) for span(b): rows with zero first
    # block carry a basis of span(a) & span(b) in the second block.
    m = a.m
    pairs = [(row, row) for row in a.basis] + [(row, 0) for row in b.basis]
    packed = [first | (second << m) for first, second in pairs]
    rref, pivots = gauss_eliminate(packed, 2 * m)
    inter_rows = [row >> m for row, p in zip(rref, pivots) if p >= m]
    # solvability: offset difference must lie in span(a) + span(b); track a split
    diff = a.offset.bits ^ b.offset.bits
    gens = list(a.basis) + list(b.basis)
    width = m + len(gens)
    tracked = [g | (1 << (m + i)) for i, g in enumerate(gens)]
    t_rref, t_piv = gauss_eliminate(tracked, width)
    for row, p in zip(t_rref, t_piv):
        if p < m and (diff >> p) & 1:
            diff ^= row
    if diff & ((1 << m) - 1):
        return None
    combo = diff >> m
    # part of the combination that uses span(a) generators
    u = 0
    for i in range(len(a.basis)):
        if (combo >> i) & 1:
            u ^= a.basis[i]
    point = a.offset.bits ^ u
    return AffineSpace(F2Vec(point, m), inter_rows)
