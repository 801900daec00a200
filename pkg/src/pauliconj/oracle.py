"""Dense exact-arithmetic ground truth at small qubit counts.

Circuits read left to right as time, so the matrix of a gate list
g_1 ... g_m is the product g_m ... g_1 (each new gate multiplies on the
left).  All arithmetic is ExactScalar; there are no tolerances here.
"""

from __future__ import annotations

from itertools import product as iter_product

from .circuit import Circuit, Gate
from .exact import ExactScalar, RealRoot2
from .f2 import SymplecticVec, parity, popcount
from .pauli import PhasedPauli

__all__ = [
    "DenseUnitary",
    "StateVector",
    "dense",
    "pauli_expansion",
    "equal_up_to_phase",
    "pauli_unitary",
    "teleport_check",
]

_MAX_DENSE_WIRES = 10
_FULL_UNITARITY_CHECK_WIRES = 4

_HALF_SQRT2 = ExactScalar.inv_sqrt2_power(1)
_I_UNIT = ExactScalar.i_power(1)
_OMEGA = ExactScalar.omega_power(1)


class DenseUnitary:
    """2^n x 2^n unitary stored as sparse columns of exact scalars."""

    __slots__ = ("n", "cols")

    def __init__(self, n: int, cols: list[dict[int, ExactScalar]]):
        self.n = n
        self.cols = cols

    @staticmethod
    def identity(n: int) -> "DenseUnitary":
        dim = 1 << n
        return DenseUnitary(n, [{c: ExactScalar.ONE} for c in range(dim)])

    @property
    def dim(self) -> int:
        return 1 << self.n

    def entry(self, row: int, col: int) -> ExactScalar:
        return self.cols[col].get(row, ExactScalar.ZERO)

    def apply_gate(self, gate: Gate) -> None:
        """In place U <- g.U for a single gate."""
        kind = gate.kind
        if kind in ("X", "Z", "S", "T", "H"):
            bit = 1 << (gate.wires[0] - 1)
        if kind == "X":
            for c, col in enumerate(self.cols):
                self.cols[c] = {r ^ bit: a for r, a in col.items()}
        elif kind == "Z":
            for col in self.cols:
                for r in list(col):
                    if r & bit:
                        col[r] = -col[r]
        elif kind == "S":
            for col in self.cols:
                for r in list(col):
                    if r & bit:
                        col[r] = col[r] * _I_UNIT
        elif kind == "T":
            for col in self.cols:
                for r in list(col):
                    if r & bit:
                        col[r] = col[r] * _OMEGA
        elif kind == "H":
            for c, col in enumerate(self.cols):
                new: dict[int, ExactScalar] = {}
                seen = set()
                for r in col:
                    r0 = r & ~bit
                    if r0 in seen:
                        continue
                    seen.add(r0)
                    a0 = col.get(r0, ExactScalar.ZERO)
                    a1 = col.get(r0 | bit, ExactScalar.ZERO)
                    lo = (a0 + a1) * _HALF_SQRT2
                    hi = (a0 - a1) * _HALF_SQRT2
                    if lo:
                        new[r0] = lo
                    if hi:
                        new[r0 | bit] = hi
                self.cols[c] = new
        elif kind == "CZ":
            bj = 1 << (gate.wires[0] - 1)
            bk = 1 << (gate.wires[1] - 1)
            both = bj | bk
            for col in self.cols:
                for r in list(col):
                    if r & both == both:
                        col[r] = -col[r]
        else:
            raise ValueError(f"unknown gate kind {kind!r}")

    def add(self, other: "DenseUnitary") -> "DenseUnitary":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out = []
        for ca, cb in zip(self.cols, other.cols):
            col = dict(ca)
            for r, b in cb.items():
                s = col.get(r, ExactScalar.ZERO) + b
                if s:
                    col[r] = s
                else:
                    col.pop(r, None)
            out.append(col)
        return DenseUnitary(self.n, out)

    def scale(self, factor: ExactScalar) -> "DenseUnitary":
        return DenseUnitary(
            self.n,
            [{r: a * factor for r, a in col.items() if a * factor} for col in self.cols],
        )

    def dagger(self) -> "DenseUnitary":
        dim = self.dim
        out: list[dict[int, ExactScalar]] = [{} for _ in range(dim)]
        for c, col in enumerate(self.cols):
            for r, a in col.items():
                out[r][c] = a.conj()
        return DenseUnitary(self.n, out)

    def matmul(self, other: "DenseUnitary") -> "DenseUnitary":
        """self . other as matrices."""
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out: list[dict[int, ExactScalar]] = []
        for col in other.cols:
            acc: dict[int, ExactScalar] = {}
            for mid, a in col.items():
                for r, b in self.cols[mid].items():
                    cur = acc.get(r)
                    val = (cur + b * a) if cur is not None else b * a
                    if val:
                        acc[r] = val
                    elif cur is not None:
                        del acc[r]
            out.append(acc)
        return DenseUnitary(self.n, out)

    def is_identity(self) -> bool:
        one = ExactScalar.ONE
        return all(col == {c: one} for c, col in enumerate(self.cols))

    def check_unitary(self) -> None:
        """Exact unitarity: full U.U† = I at small dim, column norms above."""
        if self.n <= _FULL_UNITARITY_CHECK_WIRES:
            if not self.matmul(self.dagger()).is_identity():
                raise AssertionError("constructed matrix is not unitary")
            return
        one = RealRoot2(1, 0, 0)
        for col in self.cols:
            norm = RealRoot2(0, 0, 0)
            for a in col.values():
                norm = norm + a.abs_squared()
            if norm != one:
                raise AssertionError("column norm is not 1")


def dense(c: Circuit, check: bool = True) -> DenseUnitary:
    """Exact matrix of the circuit, gates applied in list (time) order."""
    if c.n > _MAX_DENSE_WIRES:
        raise ValueError(f"dense supports at most {_MAX_DENSE_WIRES} wires")
    u = DenseUnitary.identity(c.n)
    for g in c.gates:
        u.apply_gate(g)
    if check:
        u.check_unitary()
    return u


def pauli_unitary(p: PhasedPauli) -> DenseUnitary:
    """Exact matrix of i^k P^v (P^v = prod_j i^{a_j b_j} X^{b_j} Z^{a_j})."""
    v = p.v
    a, b = v.z, v.x
    phase = ExactScalar.i_power(p.phase_exp + popcount(a & b))
    cols = []
    for t in range(1 << v.n):
        amp = phase if parity(a & t) == 0 else -phase
        cols.append({t ^ b: amp})
    return DenseUnitary(v.n, cols)


def pauli_expansion(u: DenseUnitary) -> dict[SymplecticVec, ExactScalar]:
    """Nonzero coefficients <U, P^v> = tr(P^v U)/2^n, exactly."""
    if u.n > 7:
        raise ValueError("pauli_expansion supports at most 7 wires")
    n = u.n
    dim = 1 << n
    out: dict[SymplecticVec, ExactScalar] = {}
    for a, b in iter_product(range(dim), range(dim)):
        tr = ExactScalar.ZERO
        for c in range(dim):
            amp = u.cols[c ^ b].get(c)
            if amp is None:
                continue
            tr = tr + (-amp if parity(a & c) else amp)
        if not tr:
            continue
        coeff = tr * ExactScalar.i_power(popcount(a & b))
        # divide by 2^n = sqrt2^{2n}
        out[SymplecticVec(a, b, n)] = coeff.times_sqrt2_power(-2 * n)
    return out


def equal_up_to_phase(
    u: DenseUnitary, v: DenseUnitary
) -> tuple[bool, ExactScalar | None]:
    """True iff U = zeta.V for a scalar zeta; returns zeta (an 8th root of unity)."""
    if u.n != v.n:
        raise ValueError("dimension mismatch")
    anchor = None
    for c, col in enumerate(u.cols):
        for r, a in col.items():
            if a:
                anchor = (r, c)
                break
        if anchor:
            break
    if anchor is None:
        raise ValueError("zero matrix is not unitary")
    ua = u.entry(*anchor)
    va = v.entry(*anchor)
    if not va:
        return False, None
    for c in range(u.dim):
        rows = set(u.cols[c]) | set(v.cols[c])
        for r in rows:
            if u.entry(r, c) * va != ua * v.entry(r, c):
                return False, None
    for t in range(8):
        zeta = ExactScalar.omega_power(t)
        if zeta * va == ua:
            return True, zeta
    raise AssertionError("proportional unitaries with non-root-of-unity ratio")


class StateVector:
    """Sparse exact state on n wires."""

    __slots__ = ("n", "amps")

    def __init__(self, n: int, amps: dict[int, ExactScalar]):
        self.n = n
        self.amps = {s: a for s, a in amps.items() if a}

    @staticmethod
    def basis(n: int, s: int = 0) -> "StateVector":
        return StateVector(n, {s: ExactScalar.ONE})

    def apply_gate(self, gate: Gate) -> "StateVector":
        # reuse the single-column gate update by treating the state as one column
        col_form = DenseUnitary(self.n, [dict(self.amps)])
        col_form.apply_gate(gate)
        return StateVector(self.n, col_form.cols[0])

    def apply_circuit(self, c: Circuit) -> "StateVector":
        if c.n != self.n:
            raise ValueError("wire count mismatch")
        st = self
        for g in c.gates:
            st = st.apply_gate(g)
        return st

    def apply_pauli(self, p: PhasedPauli) -> "StateVector":
        """i^k P^v acting by P^v|s> = i^{a.b} (-1)^{a.s} |s xor b>."""
        v = p.v
        base = ExactScalar.i_power(p.phase_exp + popcount(v.z & v.x))
        out: dict[int, ExactScalar] = {}
        for s, a in self.amps.items():
            amp = a * base
            if parity(v.z & s):
                amp = -amp
            out[s ^ v.x] = amp
        return StateVector(self.n, out)

    def norm_squared(self) -> RealRoot2:
        acc = RealRoot2(0, 0, 0)
        for a in self.amps.values():
            acc = acc + a.abs_squared()
        return acc

    def proportional(self, other: "StateVector") -> bool:
        if self.n != other.n or set(self.amps) != set(other.amps):
            return False
        if not self.amps:
            return True
        s0 = min(self.amps)
        a0, b0 = self.amps[s0], other.amps[s0]
        return all(self.amps[s] * b0 == other.amps[s] * a0 for s in self.amps)


def teleport_check(f: Circuit, x: SymplecticVec, psi: StateVector) -> bool:
    """Does F_corr . F . P^x |psi> match F|psi> up to global phase?"""
    if f.n > 6:
        raise ValueError("teleport_check supports at most 6 wires")
    from .reduce import teleport_correction

    corr = teleport_correction(f, x)
    lhs = psi.apply_pauli(PhasedPauli(0, x)).apply_circuit(f).apply_circuit(corr)
    rhs = psi.apply_circuit(f)
    return lhs.proportional(rhs)
