"""Clifford+T circuit representation: parsing, T-depth layering, dagger, shifts.

Gate set is exactly {X, Z, H, S, CZ, T}; wires are 1-based.  T-depth is
syntactic: it is computed for the given gate order, with greedy left-packing
of T gates into parallel layers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .f2 import F2Vec, SymplecticVec

__all__ = [
    "Gate",
    "Circuit",
    "LayerDecomposition",
    "CircuitError",
    "parse_circuit",
    "serialize_circuit",
    "t_count",
    "t_depth",
    "layer_decompose",
    "dagger",
    "tensor",
    "shift_wires",
    "pad_wires",
    "tensor_interleave",
    "parallel_merge",
    "clifford_shift",
]

GATE_ARITY = {"X": 1, "Z": 1, "H": 1, "S": 1, "T": 1, "CZ": 2}

# expansions of inverse gates into the gate set, in time order
_DAGGER_EXPANSION = {
    "S": ("Z", "S"),  # S^-1 = S Z up to global phase-free identity S.Z.S = ... exact: S*Z
    "T": ("Z", "S", "T"),  # T^-1 = T S Z exactly
}


class CircuitError(ValueError):
    """Malformed circuit text or wire out of range."""


class Gate(NamedTuple):
    kind: str
    wires: tuple[int, ...]

    def __str__(self) -> str:
        return " ".join([self.kind, *map(str, self.wires)])


def _mk_gate(kind: str, wires: tuple[int, ...], n: int) -> Gate:
    if kind not in GATE_ARITY:
        raise CircuitError(f"unknown gate {kind!r}")
    if len(wires) != GATE_ARITY[kind]:
        raise CircuitError(f"{kind} takes {GATE_ARITY[kind]} wire(s), got {wires}")
    for w in wires:
        if not 1 <= w <= n:
            raise CircuitError(f"wire {w} out of range 1..{n}")
    if kind == "CZ" and wires[0] == wires[1]:
        raise CircuitError("CZ wires must be distinct")
    return Gate(kind, wires)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list on n wires; index 0 acts first in time."""

    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        for g in self.gates:
            _mk_gate(g.kind, g.wires, self.n)

    @staticmethod
    def build(n: int, seq: Iterable[tuple] = ()) -> "Circuit":
        """Circuit from (kind, wire[, wire2]) tuples."""
        gates = tuple(_mk_gate(item[0], tuple(item[1:]), n) for item in seq)
        return Circuit(n, gates)

    def __len__(self) -> int:
        return len(self.gates)

    def then(self, other: "Circuit") -> "Circuit":
        """This circuit followed by other (time order)."""
        if self.n != other.n:
            raise CircuitError("qubit count mismatch in composition")
        return Circuit(self.n, self.gates + other.gates)


def parse_circuit(text: str) -> Circuit:
    """Parse the textual format: "qubits <n>" then one gate per line; "#" comments."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise CircuitError("empty circuit text")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "qubits":
        raise CircuitError(f"expected 'qubits <n>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise CircuitError(f"bad qubit count {head[1]!r}") from exc
    if n < 1:
        raise CircuitError("qubit count must be positive")
    gates = []
    for line in lines[1:]:
        parts = line.split()
        try:
            wires = tuple(int(p) for p in parts[1:])
        except ValueError as exc:
            raise CircuitError(f"bad wire in {line!r}") from exc
        gates.append(_mk_gate(parts[0], wires, n))
    return Circuit(n, tuple(gates))


def serialize_circuit(c: Circuit) -> str:
    return "\n".join([f"qubits {c.n}", *map(str, c.gates)]) + "\n"


def t_count(c: Circuit) -> int:
    return sum(1 for g in c.gates if g.kind == "T")


@dataclass(frozen=True)
class LayerDecomposition:
    """C = A_d . T_{s_d} . ... . T_{s_1} . A_0 (A_0 earliest in time).

    segments[i] holds the Clifford gates of A_i; masks[j] is the wire set of
    the (j+1)-th T-layer as an F2Vec of width n.
    """

    n: int
    segments: tuple[tuple[Gate, ...], ...]
    masks: tuple[F2Vec, ...]

    @property
    def depth(self) -> int:
        return len(self.masks)

    def recompose(self) -> Circuit:
        gates: list[Gate] = list(self.segments[0])
        for j, mask in enumerate(self.masks):
            for w in mask.support():
                gates.append(Gate("T", (w + 1,)))
            gates.extend(self.segments[j + 1])
        return Circuit(self.n, tuple(gates))


def layer_decompose(c: Circuit) -> LayerDecomposition:
    """Greedy left-packing of T gates into parallel layers.

    A T gate joins the currently open layer iff its wire is not already in the
    layer and no non-T gate has touched that wire since the layer opened;
    otherwise it opens a new layer.
    """
    segments: list[list[Gate]] = [[]]
    masks: list[set[int]] = []
    blocked: set[int] = set()
    for g in c.gates:
        if g.kind == "T":
            w = g.wires[0]
            if not masks or w in masks[-1] or w in blocked:
                masks.append({w})
                segments.append([])
                blocked = set()
            else:
                masks[-1].add(w)
        else:
            segments[-1].append(g)
            blocked.update(g.wires)
    return LayerDecomposition(
        c.n,
        tuple(tuple(seg) for seg in segments),
        tuple(F2Vec.from_coords((w - 1 for w in m), c.n) for m in masks),
    )


def t_depth(c: Circuit) -> int:
    return layer_decompose(c).depth


def dagger(c: Circuit) -> Circuit:
    """Exact inverse circuit within the gate set.

    Works layer by layer: each T-layer inverts to Zs, then Ss, then Ts on its
    wires (distinct-wire factors commute), so the inverse never has more
    T-layers than the input.
    """
    ld = layer_decompose(c)
    gates: list[Gate] = []
    for j in range(len(ld.masks), 0, -1):
        gates += _reverse_cliffords(ld.segments[j])
        wires = tuple(w + 1 for w in ld.masks[j - 1].support())
        for kind in ("Z", "S", "T"):
            gates.extend(Gate(kind, (w,)) for w in wires)
    gates += _reverse_cliffords(ld.segments[0])
    return Circuit(c.n, tuple(gates))


def _reverse_cliffords(seg: tuple[Gate, ...]) -> list[Gate]:
    gates: list[Gate] = []
    for g in reversed(seg):
        for kind in _DAGGER_EXPANSION.get(g.kind, (g.kind,)):
            gates.append(Gate(kind, g.wires))
    return gates


def shift_wires(c: Circuit, offset: int, n: int) -> Circuit:
    """Same gates with every wire moved up by offset, on n total wires."""
    gates = tuple(Gate(g.kind, tuple(w + offset for w in g.wires)) for g in c.gates)
    return Circuit(n, gates)


def pad_wires(c: Circuit, n: int) -> Circuit:
    """Extend to n wires (identity on the new ones)."""
    if n < c.n:
        raise CircuitError("cannot shrink a circuit")
    return Circuit(n, c.gates)


def tensor(a: Circuit, b: Circuit) -> Circuit:
    """a on wires 1..n_a and b on wires n_a+1..n_a+n_b, a's gates first."""
    n = a.n + b.n
    return Circuit(n, a.gates + shift_wires(b, a.n, n).gates)


def _interleave_decompositions(
    da: LayerDecomposition, db: LayerDecomposition, n: int, offset: int
) -> Circuit:
    """Round-robin merge of two layer decompositions; db's wires shifted by offset."""

    def shift_gates(gs: Iterable[Gate]) -> list[Gate]:
        return [Gate(g.kind, tuple(w + offset for w in g.wires)) for g in gs]

    gates: list[Gate] = list(pad_wires(Circuit(da.n, da.segments[0]), n).gates)
    gates += shift_gates(db.segments[0])
    d = max(da.depth, db.depth)
    for j in range(d):
        layer_wires: list[int] = []
        if j < da.depth:
            layer_wires += [w + 1 for w in da.masks[j].support()]
        if j < db.depth:
            layer_wires += [w + 1 + offset for w in db.masks[j].support()]
        # blockers: tableau-neutral Z pairs pin the layer boundary so that the
        # greedy layering of the merged circuit cannot fuse consecutive layers
        if j > 0:
            for w in layer_wires:
                gates.append(Gate("Z", (w,)))
                gates.append(Gate("Z", (w,)))
        for w in layer_wires:
            gates.append(Gate("T", (w,)))
        if j < da.depth:
            gates.extend(da.segments[j + 1])
        if j < db.depth:
            gates += shift_gates(db.segments[j + 1])
    return Circuit(n, tuple(gates))


def tensor_interleave(a: Circuit, b: Circuit) -> Circuit:
    """Tensor of a and b with their T-layers merged round-robin.

    Functionally equal to tensor(a, b) but with syntactic T-depth
    max(t_depth(a), t_depth(b)) instead of the sum.
    """
    return _interleave_decompositions(
        layer_decompose(a), layer_decompose(b), a.n + b.n, a.n
    )


def parallel_merge(a: Circuit, b: Circuit) -> Circuit:
    """Merge two circuits on the *same* wires, interleaving T-layers.

    The circuits must act on disjoint wire sets for this to preserve the
    functional product; used for sibling subtrees in the Toffoli tree.
    """
    if a.n != b.n:
        raise CircuitError("qubit count mismatch in parallel_merge")
    return _interleave_decompositions(layer_decompose(a), layer_decompose(b), a.n, 0)


def clifford_shift(
    a: Circuit,
    x: SymplecticVec,
    y: SymplecticVec,
    x_new: SymplecticVec,
    y_new: SymplecticVec,
) -> Circuit:
    """B with <B P^{x'} B†, P^{y'}> = <A P^x A†, P^y>, same T-depth and T-count.

    B = G_out . A . G_in where the Clifford G_in carries P^{x'} to P^x exactly
    and G_out carries P^y to P^{y'} exactly.
    """
    from .pauli import synthesize_from_images

    if bool(x) != bool(x_new) or bool(y) != bool(y_new):
        raise CircuitError("cannot shift between zero and nonzero Pauli vectors")
    n = a.n
    gates: list[Gate] = []
    if x:
        f_x = synthesize_from_images([(x, 0)], n)
        f_xn = synthesize_from_images([(x_new, 0)], n)
        gates += dagger(f_xn).gates + f_x.gates
    gates += a.gates
    if y:
        f_y = synthesize_from_images([(y, 0)], n)
        f_yn = synthesize_from_images([(y_new, 0)], n)
        gates += dagger(f_y).gates + f_yn.gates
    return Circuit(n, tuple(gates))
