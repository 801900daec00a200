"""Compilers that carry one conjugation question into another.

Every constructor here emits an explicit circuit (or presentation) whose key
Pauli coefficient realizes a stated arithmetic relation -- a product, an
average, a scaled sum, a power of 1/sqrt(2) -- so that questions about binary
code weight distributions turn into questions about a single coefficient of a
conjugated Pauli.  All arithmetic is exact; nothing here approximates.

The anchor convention: a "Z1-anchored" circuit is one whose interesting
quantity is the diagonal coefficient <C Z_1 C†, Z_1>.  Public gadget entry
points accept an arbitrary nonzero Pauli vector and conjugate by a Clifford
to move the anchor onto Z_1 first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .circuit import (
    Circuit,
    Gate,
    clifford_shift,
    dagger,
    layer_decompose,
    pad_wires,
    parallel_merge,
    shift_wires,
    tensor_interleave,
)
from .codes import BinaryCode, OneRemainderMatrix, wt_eval
from .exact import (
    ExactScalar,
    GBRoot2Expr,
    QRoot2,
    RealRoot2,
    beta_clearing_factor,
    gb_from_value,
    vandermonde_inverse_row,
)
from .f2 import F2Matrix, F2Vec, OrderedBasis, SymplecticVec
from .pauli import (
    canonical_clifford,
    synthesize_from_images,
    tableau_from_circuit,
    transport_signed,
)
from .present import Presentation, decode

__all__ = [
    "ReductionError",
    "ReductionCertificate",
    "RELATION_TAGS",
    "serialize_certificate",
    "teleport_correction",
    "product_gadget",
    "product_z1",
    "average_gadget",
    "linear_combination_gadget",
    "power_circuit",
    "gb_circuit",
    "mcz_log_depth",
    "support_to_enic",
    "enic_to_commute",
    "commute_to_enic",
    "CommuteToEnicQueries",
    "code_to_presentation",
    "code_readout_value",
    "binary_weight_to_circuit",
    "recover_distribution_1mod4",
]


class ReductionError(ValueError):
    """A reduction precondition failed or a configured budget was exceeded."""


RELATION_TAGS = frozenset(
    {
        "product",
        "average",
        "linear-combination",
        "power",
        "gb-encoding",
        "support-to-enic",
        "enic-to-commute",
        "commute-to-enic",
        "code-embedding",
        "binary-weight",
        "distribution-recovery",
        "teleport-correction",
    }
)


@dataclass(frozen=True)
class ReductionCertificate:
    """What a compiled artifact claims about its source instance.

    claims carries one line per intermediate quantity so a failed end-to-end
    check localizes; coefficient, when present, is the exact value the target
    is claimed to place at its anchor Pauli.
    """

    source: str
    target: object
    relation: str
    claims: tuple[str, ...] = ()
    coefficient: RealRoot2 | None = None
    notes: str = ""

    def __post_init__(self) -> None:
        if self.relation not in RELATION_TAGS:
            raise ReductionError(f"unknown relation tag: {self.relation}")


def serialize_certificate(cert: ReductionCertificate) -> str:
    lines = [f"relation {cert.relation}", f"source {cert.source}"]
    if isinstance(cert.target, Circuit):
        lines.append(f"target circuit on {cert.target.n} wires")
    elif isinstance(cert.target, Presentation):
        lines.append(f"target presentation on {cert.target.n} wires")
    else:
        lines.append(f"target {cert.target!r}")
    if cert.coefficient is not None:
        lines.append(f"coefficient {cert.coefficient!r}")
    lines.extend(f"claim {c}" for c in cert.claims)
    if cert.notes:
        lines.append(f"notes {cert.notes}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------

_ZERO_COEFF_PAD = Circuit(1, (Gate("H", (1,)),))


def _remap(c: Circuit, wires: tuple[int, ...], n: int) -> list[Gate]:
    """Gates of c rewritten so its wire j becomes wires[j-1] on an n-wire host."""
    table = dict(enumerate(wires, start=1))
    out = []
    for g in c.gates:
        mapped = tuple(table[w] for w in g.wires)
        if any(not 1 <= w <= n for w in mapped):
            raise ReductionError("wire map leaves the host circuit")
        out.append(Gate(g.kind, mapped))
    return out


def _cx(c: int, t: int) -> list[Gate]:
    return [Gate("H", (t,)), Gate("CZ", (c, t)), Gate("H", (t,))]


def _inv_sqrt2_real(e: int) -> RealRoot2:
    """(1/sqrt2)^e for e >= 0."""
    if e % 2 == 0:
        return RealRoot2(1, 0, e // 2)
    return RealRoot2(0, 1, (e + 1) // 2)


def _shift_to_z1(c: Circuit, x: SymplecticVec) -> Circuit:
    """Conjugate c so its diagonal coefficient at P^x moves to the Z_1 anchor."""
    if not x:
        raise ReductionError("anchor Pauli must be nonzero")
    if x.n != c.n:
        raise ReductionError("anchor width does not match the circuit")
    e = SymplecticVec.e_z(1, c.n)
    if x == e:
        return c
    return clifford_shift(c, x, x, e, e)


# ---------------------------------------------------------------------------
# teleportation correction
# ---------------------------------------------------------------------------


def _pauli_gates(w: SymplecticVec) -> list[Gate]:
    gates = [Gate("Z", (j + 1,)) for j in F2Vec(w.z, w.n).support()]
    gates += [Gate("X", (j + 1,)) for j in F2Vec(w.x, w.n).support()]
    return gates


def teleport_correction(f: Circuit, x: SymplecticVec) -> Circuit:
    """Canonical Clifford form of F P^x F† for F of T-depth at most one.

    Conjugating a Pauli through a single T-layer leaves a Clifford: each T on
    a wire where the Pauli has an X component contributes an S gate, up to
    global phase.  The output is computed from the tableau of the leading
    Clifford segment, so it depends only on the unitary F instantiates --
    equal functionality yields an identical correction circuit.
    """
    if x.n != f.n:
        raise ReductionError("wire count mismatch")
    dec = layer_decompose(f)
    if dec.depth > 1:
        raise ReductionError("teleport correction requires T-depth <= 1")
    if dec.depth == 0:
        w, _ = tableau_from_circuit(f).conjugate_signed(x, 0)
        return canonical_clifford(Circuit(f.n, tuple(_pauli_gates(w))))
    head = Circuit(f.n, dec.segments[0])
    tail = Circuit(f.n, dec.segments[1])
    w, _ = tableau_from_circuit(head).conjugate_signed(x, 0)
    gates = list(dagger(tail).gates)
    gates += _pauli_gates(w)
    gates += [
        Gate("S", (j + 1,))
        for j in F2Vec(dec.masks[0].bits & w.x, f.n).support()
    ]
    gates += tail.gates
    return canonical_clifford(Circuit(f.n, tuple(gates)))


# ---------------------------------------------------------------------------
# coefficient gadgets: product, average, linear combination, powers
# ---------------------------------------------------------------------------


def product_z1(a: Circuit, b: Circuit) -> Circuit:
    """Joint circuit whose Z_1 coefficient is the product of the inputs'.

    Puts b after a's wires (interleaving T-layers so the depth is the max of
    the two) and conjugates by CX so the anchor Z_1 Z_{na+1} lands on Z_1.
    """
    na = a.n
    joint = tensor_interleave(a, b)
    k = _cx(na + 1, 1)
    return Circuit(joint.n, tuple(k + list(joint.gates) + k))


def product_gadget(c: Circuit, d: Circuit, x: SymplecticVec) -> Circuit:
    """Circuit on 2n wires whose Z_1 coefficient is alpha*beta.

    alpha and beta are the diagonal coefficients of c and d at P^x.
    """
    if c.n != d.n:
        raise ReductionError("product_gadget needs equal wire counts")
    return product_z1(_shift_to_z1(c, x), _shift_to_z1(d, x))


def _average_z1(a: Circuit, b: Circuit) -> Circuit:
    """Circuit on a.n + b.n + 1 wires averaging the two Z_1 coefficients.

    The conjugation sandwich is (H1 S1 T1) . B . (Q tensor b) . A . (T1 H1):
    the T-layers split Z_1 into (X_1 + Y_1)/sqrt2, the transports A and B
    route the X branch through Q (which carries a's coefficient) and the Y
    branch through b, and cross terms die because one tensor factor always
    hits a traceless mismatch.
    """
    na, nb = a.n, b.n
    w = na + nb + 1
    anc = na + 1
    bw = na + 2
    x1 = SymplecticVec.e_x(1, 2)
    y1 = SymplecticVec(1, 1, 2)
    z1 = SymplecticVec.e_z(1, 2)
    z2 = SymplecticVec.e_z(2, 2)
    z1x2 = SymplecticVec(1, 2, 2)
    y1z2 = SymplecticVec(3, 1, 2)
    f = transport_signed(((x1, 0), (y1, 0)), ((z1x2, 0), (z2, 0)))
    g = transport_signed(((z1x2, 0), (z2, 0)), ((z1, 0), (y1, 0)))
    amap = transport_signed(((x1, 0), (y1, 0)), ((x1, 0), (y1z2, 1)))
    bmap = transport_signed(((z1, 0), (y1z2, 0)), ((x1, 1), (y1, 0)))
    q_gates = _remap(f, (1, anc), w) + list(pad_wires(a, w).gates)
    q_gates += _remap(g, (1, anc), w)
    middle = parallel_merge(Circuit(w, tuple(q_gates)), shift_wires(b, na + 1, w))
    gates = [Gate("H", (1,)), Gate("T", (1,))]
    gates += _remap(amap, (1, bw), w)
    gates += list(middle.gates)
    gates += _remap(bmap, (1, bw), w)
    gates += [Gate("T", (1,)), Gate("S", (1,)), Gate("H", (1,))]
    return Circuit(w, tuple(gates))


def average_gadget(c: Circuit, d: Circuit, x: SymplecticVec) -> Circuit:
    """Circuit on 2n+1 wires whose Z_1 coefficient is (alpha+beta)/2.

    Adds two to the T-depth of the deeper input.
    """
    if c.n != d.n:
        raise ReductionError("average_gadget needs equal wire counts")
    return _average_z1(_shift_to_z1(c, x), _shift_to_z1(d, x))


def _lincomb_z1(circuits: list[Circuit]) -> Circuit:
    """Binary tree of averages; k inputs scale the sum by 2^-ceil(log2 k)."""
    if not circuits:
        raise ReductionError("nothing to combine")
    level = list(circuits)
    target = 1 << max(0, (len(level) - 1).bit_length())
    level += [_ZERO_COEFF_PAD] * (target - len(level))
    while len(level) > 1:
        level = [
            _average_z1(level[i], level[i + 1]) for i in range(0, len(level), 2)
        ]
    return level[0]


def linear_combination_gadget(circuits: list[Circuit], x: SymplecticVec) -> Circuit:
    """Circuit whose Z_1 coefficient is 2^-ceil(log2 k) times the sum.

    The sum runs over the inputs' diagonal coefficients at P^x; short lists
    are padded to a power of two with Cliffords whose anchor coefficient is
    zero, so the scale factor stays 2^-ceil(log2 k).
    """
    if not circuits:
        raise ReductionError("linear_combination_gadget needs a nonempty list")
    return _lincomb_z1([_shift_to_z1(c, x) for c in circuits])


def power_circuit(n: int, k: int, sign: int = 0) -> tuple[Circuit, SymplecticVec]:
    """(C, x) with <C P^x C†, P^x> = (-1)^sign 2^{-k/2}; C is one T-layer.

    x puts X on wires 1..k of n; each T splits that X evenly, and an optional
    leading Z_1 flips the sign.
    """
    if not 1 <= k <= n:
        raise ReductionError("power_circuit needs n >= k >= 1")
    gates = [Gate("Z", (1,))] if sign else []
    gates += [Gate("T", (j,)) for j in range(1, k + 1)]
    return Circuit(n, tuple(gates)), SymplecticVec(0, (1 << k) - 1, n)


def _power_z1(k: int, sign: int = 0) -> Circuit:
    """Width-k circuit with diagonal Z_1 coefficient (-1)^sign 2^{-k/2}.

    Same as power_circuit but conjugated by the cheap local Clifford sending
    X...X to Z_1, so it can feed the Z_1-anchored combiners directly.
    """
    c, _ = power_circuit(k, k, sign)
    merge = [Gate("H", (j,)) for j in range(1, k + 1)]
    for j in range(2, k + 1):
        merge += _cx(j, 1)
    g = Circuit(k, tuple(merge))
    return Circuit(k, tuple(dagger(g).gates) + c.gates + tuple(g.gates))


def gb_circuit(e: GBRoot2Expr) -> tuple[Circuit, int]:
    """(C, l) with <C Z_1 C†, Z_1> = value(e) / 2^l, T-depth O(log length).

    Each selected power sqrt2^j becomes a one-layer power circuit worth
    +-(1/sqrt2)^{2A-j} with A = ceil((J+1)/2) for the largest selected J;
    averaging the scaled terms pairwise gives the stated denominator
    l = A + ceil(log2 of the term count).
    """
    terms = list(e.terms())
    if not terms:
        return _ZERO_COEFF_PAD, 0
    big_j = max(j for j, _ in terms)
    half = (big_j + 2) // 2
    parts = [_power_z1(2 * half - j, s) for j, s in terms]
    levels = max(0, (len(parts) - 1).bit_length())
    return _lincomb_z1(parts), half + levels


# ---------------------------------------------------------------------------
# multi-controlled Z with logarithmic T-depth
# ---------------------------------------------------------------------------

# T-depth of mcz_log_depth(m) is at most MCZ_DEPTH_SCALE*ceil(log2 m) + 7:
# each tree level costs one doubly-controlled Z (7 T stints) and the mirror
# doubles it, so the constant is 14.
MCZ_DEPTH_SCALE = 14


def _t_dagger(w: int) -> list[Gate]:
    # Z.S.T composes to the inverse T exactly, with no leftover phase
    return [Gate("Z", (w,)), Gate("S", (w,)), Gate("T", (w,))]


def _ccz_gates(w1: int, w2: int, w3: int) -> list[Gate]:
    """Doubly-controlled Z from seven T-type gates; global phase exactly one.

    The phase polynomial a+b+c-(a^b)-(a^c)-(b^c)+(a^b^c) equals 4abc, so in
    eighth-of-a-turn units the diagonal picks up exactly (-1)^{abc}.
    """
    gates = [Gate("T", (w1,)), Gate("T", (w3,))]
    gates += _cx(w1, w3) + _t_dagger(w3)
    gates += _cx(w2, w3) + [Gate("T", (w3,))]
    gates += _cx(w1, w3) + _t_dagger(w3)
    gates += _cx(w2, w3)
    gates += _cx(w1, w2) + _t_dagger(w2) + _cx(w1, w2) + [Gate("T", (w2,))]
    return gates


def _toffoli(u: int, v: int, t: int) -> list[Gate]:
    return [Gate("H", (t,))] + _ccz_gates(u, v, t) + [Gate("H", (t,))]


def mcz_log_depth(m: int) -> Circuit:
    """Z controlled on wires 1..m targeting wire m+1, exactly.

    For m >= 3 a balanced tree of seven-T Toffolis computes conjunctions into
    fresh ancillas (wires m+2 onward), a doubly-controlled Z on the two tree
    roots hits the target, and the mirrored tree returns every ancilla to
    |0>.  Total width 2m-1; T-depth <= MCZ_DEPTH_SCALE*ceil(log2 m) + 7.
    """
    if m < 1:
        raise ReductionError("mcz_log_depth needs at least one control")
    if m == 1:
        return Circuit(2, (Gate("CZ", (1, 2)),))
    if m == 2:
        return Circuit(3, tuple(_ccz_gates(1, 2, 3)))
    width = 2 * m - 1
    next_anc = m + 2
    values = list(range(1, m + 1))
    levels: list[list[Circuit]] = []
    while len(values) > 2:
        nxt: list[int] = []
        level: list[Circuit] = []
        for i in range(0, len(values) - 1, 2):
            level.append(Circuit(width, tuple(_toffoli(values[i], values[i + 1], next_anc))))
            nxt.append(next_anc)
            next_anc += 1
        if len(values) % 2:
            nxt.append(values[-1])
        levels.append(level)
        values = nxt

    # merging sibling blocks keeps every level's T-depth at the single-block
    # cost; daggering block-by-block (disjoint supports commute) preserves
    # that on the uncompute side too
    def merge(blocks: list[Circuit]) -> Circuit:
        out = blocks[0]
        for extra in blocks[1:]:
            out = parallel_merge(out, extra)
        return out

    gates: list[Gate] = []
    for level in levels:
        gates += merge(level).gates
    gates += _ccz_gates(values[0], values[1], m + 1)
    for level in reversed(levels):
        gates += merge([dagger(c) for c in level]).gates
    return Circuit(width, tuple(gates))


# ---------------------------------------------------------------------------
# decision-problem bridges
# ---------------------------------------------------------------------------


def support_to_enic(c: Circuit, z: SymplecticVec) -> Circuit:
    """Circuit fixing every ancilla-zero basis state iff <C, P^z> = 0.

    Layout: wires 1..n are data, n+1..3n are entangler ancillas, the rest
    serve the multi-controlled Z.  A Clifford K carries P^z onto X...X; the
    entangling rounds tag each Pauli component of K C K† with a distinct
    ancilla pattern, all-ones occurring only for the X...X component; the
    multi-controlled Z then marks exactly that component.  Writing D for the
    entangled circuit and alpha_z for the expansion coefficient <C, P^z>,
    the returned F = D† M D acts on basis states as

        F |b>|0...0> = |b>|0...0> - 2 (1-b_1) alpha_z D†|~b>|1...1>

    so with ancillas prepared in |0> it instantiates the identity exactly
    when alpha_z vanishes, and moves some basis state otherwise.
    """
    d_circ = _support_entangler(c, z)
    n, width = c.n, d_circ.n
    mcz = mcz_log_depth(2 * n)
    hosts = tuple(range(n + 1, 3 * n + 1)) + (1,) + tuple(range(3 * n + 1, width + 1))
    m_gates = _remap(mcz, hosts, width)
    return Circuit(width, d_circ.gates + tuple(m_gates) + tuple(dagger(d_circ).gates))


def _support_entangler(c: Circuit, z: SymplecticVec) -> Circuit:
    """The tagged circuit D = G (K C K† ⊗ I) G† from the identity-check build."""
    if not z:
        raise ReductionError("support_to_enic needs a nonzero Pauli")
    n = c.n
    if z.n != n:
        raise ReductionError("wire count mismatch")
    f_z = synthesize_from_images([(z, 0)], n)
    allx_gates = [Gate("H", (1,))]
    for j in range(2, n + 1):
        allx_gates += _cx(1, j)
    k_circ = Circuit(n, tuple(dagger(f_z).gates) + tuple(allx_gates))
    c2 = Circuit(n, tuple(dagger(k_circ).gates) + c.gates + tuple(k_circ.gates))
    width = 3 * n + max(0, 2 * n - 2)
    g_gates = [Gate("CZ", (j, n + j)) for j in range(1, n + 1)]
    for j in range(1, n + 1):
        g_gates += [Gate("H", (j,)), Gate("S", (j,)), Gate("H", (j,))]
    g_gates += [Gate("CZ", (j, 2 * n + j)) for j in range(1, n + 1)]
    g_gates += [Gate("H", (j,)) for j in range(n + 1, 3 * n + 1)]
    g_circ = Circuit(width, tuple(g_gates))
    return Circuit(
        width,
        tuple(dagger(g_circ).gates) + pad_wires(c2, width).gates + tuple(g_circ.gates),
    )


def enic_to_commute(d: Circuit) -> list[tuple[Circuit, SymplecticVec]]:
    """The 2n commutation queries that witness identity up to phase.

    d is identity up to global phase exactly when it commutes with every
    single-wire Z and X.
    """
    n = d.n
    queries = [(d, SymplecticVec.e_z(j, n)) for j in range(1, n + 1)]
    queries += [(d, SymplecticVec.e_x(j, n)) for j in range(1, n + 1)]
    return queries


@dataclass(frozen=True)
class CommuteToEnicQueries:
    """Two identity-check circuits whose answers decide commutation.

    u = C Z_1 C† Z_1 and v = C S_1 C† S_1 after the anchor shift.  If u is
    not identity-up-to-phase, the conjugate moved and commutation fails;
    otherwise C Z_1 C† = ±Z_1 and v separates the signs: the + case makes v
    equal Z_1 (not identity), the - case makes v a global phase i.
    """

    u: Circuit
    v: Circuit

    def combine(self, u_moves: bool, v_moves: bool) -> bool:
        """Commutation verdict from the two answers (True = not identity)."""
        return (not u_moves) and v_moves


def commute_to_enic(c: Circuit, x: SymplecticVec) -> CommuteToEnicQueries:
    """Compile COMMUTE(c, x) into two identity checks of twice the depth."""
    if not x:
        raise ReductionError("commute_to_enic needs a nonzero Pauli")
    shifted = _shift_to_z1(c, x)
    dg = tuple(dagger(shifted).gates)
    u = Circuit(c.n, (Gate("Z", (1,)),) + dg + (Gate("Z", (1,)),) + shifted.gates)
    v = Circuit(c.n, (Gate("S", (1,)),) + dg + (Gate("S", (1,)),) + shifted.gates)
    return CommuteToEnicQueries(u, v)


# ---------------------------------------------------------------------------
# codes into presentations and the weight-decision pipeline
# ---------------------------------------------------------------------------


def code_to_presentation(g: OneRemainderMatrix) -> Presentation:
    """Depth-3 presentation whose all-X coefficient reads off wt_V(1/sqrt2).

    Layers in time order: the generator rows as Z-vectors (signed, so each
    chosen factor enters as (I + iP)/sqrt2), the full X layer, the full Z
    layer; the outer Pauli is X on every wire.  Every generator row has odd
    weight, so the first layer branches over all 2^k codewords, and the
    1-mod-4 / 0-mod-4 block counts force |v| = omega(v) mod 4, which kills
    every chain sign on the readout fiber and pins the coefficient at the
    outer Pauli to

        wt_V(1/sqrt2) / (2^{n/2} sqrt(|V|)).
    """
    n = g.length
    rows = tuple(SymplecticVec(r, 0, n) for r in g.to_matrix().rows)
    ez = OrderedBasis(tuple(SymplecticVec.e_z(j, n) for j in range(1, n + 1)))
    ex = OrderedBasis(tuple(SymplecticVec.e_x(j, n) for j in range(1, n + 1)))
    zero = F2Vec.zero(n)
    ones = F2Vec((1 << g.k) - 1, g.k)
    layers = ((ez, zero), (ex, zero), (OrderedBasis(rows), ones))
    return Presentation(n, layers, (SymplecticVec(0, (1 << n) - 1, n), 0))


def code_readout_value(g: OneRemainderMatrix) -> ExactScalar:
    """wt_V(1/sqrt2) / (2^{n/2} sqrt(|V|)) for the code g generates."""
    return wt_eval(g.code(), ExactScalar.inv_sqrt2_power(1)) * ExactScalar.inv_sqrt2_power(
        g.length + g.k
    )


def _code_block_circuit(g: OneRemainderMatrix) -> Circuit:
    """Z_1-anchored depth-3 circuit realizing the code readout coefficient.

    A hand-rolled decode of the code presentation, O(n) gates where generic
    synthesis emits O(n^2).  Reading the unwrapped middle left to right: a T
    layer on the pivot wires whose fresh Z's are fanned out (with a sign
    flip) into the signed generator-row layer, a full T layer turned into
    the X layer by the Hadamard wall, and a bare full T layer for the Z
    layer.  The X-fanout wrapper moves the anchor from Z_1 to all-X.
    """
    n = g.length
    mat = g.to_matrix()
    fan = [Gate("H", (1,))]
    for j in range(2, n + 1):
        fan += _cx(1, j)
    wrap = Circuit(n, tuple(fan))
    # a1 sends Z_j -> -X^{row j} on the pivots while fixing the all-X string:
    # Z-fanouts CX(t, j) each multiply all-X by X_j, and row weights are odd,
    # so the extra factors cancel pairwise before the Hadamard wall flips
    # everything into place.
    a1: list[Gate] = []
    for j in range(1, g.k + 1):
        for t in range(g.k, n):
            if (mat.rows[j - 1] >> t) & 1:
                a1 += _cx(t + 1, j)
    a1 += [Gate("H", (j,)) for j in range(1, n + 1)]
    a1 += [Gate("Z", (j,)) for j in range(1, g.k + 1)]
    t_row = tuple(Gate("T", (j,)) for j in range(1, g.k + 1))
    t_full = tuple(Gate("T", (j,)) for j in range(1, n + 1))
    h_wall = tuple(Gate("H", (j,)) for j in range(1, n + 1))
    dec = t_row + tuple(a1) + t_full + h_wall + t_full
    return Circuit(n, wrap.gates + dec + tuple(dagger(wrap).gates))


def binary_weight_to_circuit(
    g: OneRemainderMatrix, t: int
) -> tuple[Circuit, ReductionCertificate]:
    """Circuit whose Z_1 coefficient vanishes iff no codeword has weight t.

    Pipeline: evaluate the code's weight enumerator at the nodes (1/sqrt2)
    ^{4i+1} by repeating the block structure 4i+1 times and decoding the
    induced presentation; scale each evaluation by the matching inverse
    Vandermonde entry (realized through the signed-binary circuit of its
    integer part); align the scattered powers of 1/sqrt2 with extra one-layer
    power factors; then average everything in a binary tree.  The surviving
    coefficient is a positive multiple of the count of weight-t codewords.
    """
    n = g.length
    if t < 0:
        raise ReductionError("negative weight requested")
    source = f"one-remainder k={g.k} r={g.r} s={g.s} length={n}, weight {t}"
    if t > n:
        cert = ReductionCertificate(
            source=source,
            target=_ZERO_COEFF_PAD,
            relation="binary-weight",
            claims=("no codeword can exceed the code length",),
            coefficient=RealRoot2(0, 0, 0),
            notes="trivial for t > n",
        )
        return _ZERO_COEFF_PAD, cert
    row = vandermonde_inverse_row(n, t)
    claims: list[str] = []
    terms: list[tuple[Circuit, int]] = []
    total = RealRoot2(0, 0, 0)
    for i in range(n + 1):
        mult = 4 * i + 1
        g_i = OneRemainderMatrix(g.k, g.r * mult, g.s * mult, g.p)
        n_i = g_i.length
        block = _code_block_circuit(g_i)
        gamma = wt_eval(g_i.code(), RealRoot2(0, 1, 1))
        bd = row[i]
        gb, ell = gb_circuit(gb_from_value(RealRoot2(bd.a, bd.b, 0)))
        exponent = n_i + g.k + 2 * ell - 2 * bd.l
        terms.append((product_z1(block, gb), exponent))
        total = total + bd * gamma
        claims.append(
            f"node {i}: block length {n_i}, enumerator value {gamma!r},"
            f" scaled inverse entry {bd!r}, exponent {exponent}"
        )
    e_star = max(e for _, e in terms)
    if e_star < 1:
        raise ReductionError("power alignment collapsed to a nonpositive exponent")
    aligned = []
    for term, exponent in terms:
        if e_star - exponent >= 1:
            term = product_z1(term, _power_z1(e_star - exponent, 0))
        aligned.append(term)
    f_circ = _lincomb_z1(aligned)
    levels = max(0, (len(aligned) - 1).bit_length())
    predicted = total * _inv_sqrt2_real(e_star) * RealRoot2(1, 0, levels)
    claims.append(f"common exponent {e_star}, combination levels {levels}")
    claims.append(f"beta-scaled weight count {total!r}")
    cert = ReductionCertificate(
        source=source,
        target=f_circ,
        relation="binary-weight",
        claims=tuple(claims),
        coefficient=predicted,
        notes="coefficient is zero exactly when no codeword has the stated weight",
    )
    return f_circ, cert


def recover_distribution_1mod4(
    p: F2Matrix,
    evaluator: Callable[[OneRemainderMatrix], RealRoot2],
    m: int | None = None,
) -> list[int]:
    """Weight distribution of the code p generates, via 1-remainder queries.

    The evaluator must answer wt_X(1/sqrt2) for each 1-remainder matrix X it
    is handed.  Querying the family [I | P^{4m}] repeated 4t+1 times for
    t = 0..N interpolates the stacked enumerator, whose coefficient at
    exponent 4im+r counts messages v with |v| = r and |vP| = i; summing over
    r and dividing by the message redundancy 2^{k - rank} yields the
    codeword counts.
    """
    k, n = p.nrows, p.ncols
    if m is None:
        m = k // 4 + 1
    if 4 * m <= k:
        raise ReductionError("need 4m > k to separate weight residues")
    big_n = k + 4 * m * n
    gammas = []
    for t in range(big_n + 1):
        mult = 4 * t + 1
        gammas.append(evaluator(OneRemainderMatrix(k, mult, 4 * m * mult, p)))
    beta = QRoot2(beta_clearing_factor(big_n), Fraction(0))
    redundancy = 1 << (k - BinaryCode(p).rank)
    counts = []
    for i in range(n + 1):
        messages = 0
        for r in range(k + 1):
            row = vandermonde_inverse_row(big_n, 4 * i * m + r)
            acc = RealRoot2(0, 0, 0)
            for entry, gamma in zip(row, gammas):
                acc = acc + entry * gamma
            value = acc.to_fractions() / beta
            if value.q != 0 or value.p.denominator != 1 or value.p < 0:
                raise ReductionError("interpolated count is not a whole number")
            messages += int(value.p)
        if messages % redundancy:
            raise ReductionError("count not divisible by the message redundancy")
        counts.append(messages // redundancy)
    return counts
