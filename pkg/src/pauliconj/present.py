"""Layered presentations of conjugated Paulis and the exact coefficient engine.

A depth-d presentation Lambda = ((x_d, sigma_d), ..., (x_1, sigma_1), (y, tau))
records how a Pauli evolves through a circuit with d T-layers: x_1 is the
layer applied first in time, and (y, tau) is the signed Pauli produced by the
leading Clifford.  The operator it denotes is

    U = prod over anticommuting factors of (I - i U_j)/sqrt(2) ... (-1)^tau P^y

and every Pauli coefficient of U is a signed power of 1/sqrt(2), summed over
support chains y_0 -> y_1 -> ... -> y_d.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from random import Random

from .circuit import Circuit, Gate, layer_decompose
from .exact import ExactScalar
from .f2 import (
    AffineSpace,
    F2Matrix,
    F2Vec,
    OrderedBasis,
    SymplecticVec,
    anticommutation_map,
    basis_coords,
    gauss_eliminate,
    parity,
    symplectic_form,
)
from .pauli import (
    PhasedPauli,
    CliffordTableau,
    product_phase_exponent,
    synthesize_from_images,
    tableau_from_circuit,
)

__all__ = [
    "Presentation",
    "SupportChain",
    "Branching",
    "PresentationError",
    "BudgetError",
    "DEFAULT_BUDGET",
    "encode",
    "decode",
    "rho",
    "coefficient",
    "expansion",
    "coefficient_depth1_fast",
    "coefficient_by_peeling",
    "product_form",
    "ProductForm",
    "presentation_to_branching",
    "branching_coeff_d2",
    "branching_coeff_d3",
    "branching_brute_expansion",
    "parse_presentation",
    "serialize_presentation",
    "random_presentation",
    "pack_vec",
    "unpack_vec",
]

DEFAULT_BUDGET = 1 << 22


class PresentationError(ValueError):
    """Structurally invalid presentation or chain."""


class BudgetError(RuntimeError):
    """Chain enumeration exceeded the caller-supplied budget."""


@dataclass(frozen=True)
class Presentation:
    """Layers ordered outermost (last in time) first; outer = (y, tau)."""

    n: int
    layers: tuple[tuple[OrderedBasis, F2Vec], ...]
    outer: tuple[SymplecticVec, int]

    def __post_init__(self) -> None:
        y, tau = self.outer
        if y.n != self.n:
            raise PresentationError("outer vector has wrong width")
        if tau not in (0, 1):
            raise PresentationError("tau must be 0 or 1")
        if not (y.z | y.x) and tau == 1:
            raise PresentationError("outer (0, 1) is forbidden")
        for basis, signs in self.layers:
            if len(signs) != len(basis.vectors):
                raise PresentationError("sign vector length != layer dimension")
            for v in basis.vectors:
                if v.n != self.n:
                    raise PresentationError("layer vector has wrong width")
            if not basis.is_isotropic():
                raise PresentationError("layer basis is not isotropic")

    @property
    def depth(self) -> int:
        return len(self.layers)

    def layers_in_time(self) -> tuple[tuple[OrderedBasis, F2Vec], ...]:
        """Layers ordered x_1 (first T-layer applied) ... x_d."""
        return tuple(reversed(self.layers))


@dataclass(frozen=True)
class SupportChain:
    """y_1, ..., y_d visited after each layer (y_0 is the outer vector)."""

    ys: tuple[SymplecticVec, ...]


@dataclass(frozen=True)
class Branching:
    """Layers ((x_d, Q_d), ..., (x_1, Q_1)) over F2^m with span(x_j) <= ker Q_j."""

    m: int
    layers: tuple[tuple[tuple[F2Vec, ...], F2Matrix], ...]

    def __post_init__(self) -> None:
        for vecs, q in self.layers:
            rows = [v.bits for v in vecs]
            if len(gauss_eliminate(rows, self.m)[0]) != len(rows):
                raise PresentationError("branching layer vectors are dependent")
            for v in vecs:
                if v.n != self.m or q.ncols != self.m:
                    raise PresentationError("branching width mismatch")
                if q.apply(v).bits:
                    raise PresentationError("layer span not inside ker(Q)")
            if q.nrows != len(vecs):
                raise PresentationError("Q row count != layer dimension")

    @property
    def depth(self) -> int:
        return len(self.layers)

    def layers_in_time(self):
        return tuple(reversed(self.layers))


# ---------------------------------------------------------------------------
# encode / decode
# ---------------------------------------------------------------------------


def encode(c: Circuit, x: SymplecticVec) -> Presentation:
    """Presentation of C P^x C† built layer by layer from the circuit.

    The outer pair is the image of (x, 0) under the leading Clifford segment;
    each T-layer contributes a (E_Z-subbasis, 0) block which, like everything
    below it, is conjugation-updated by every later Clifford segment.
    """
    if x.n != c.n:
        raise PresentationError("Pauli width != circuit width")
    ld = layer_decompose(c)
    tab0 = tableau_from_circuit(Circuit(c.n, ld.segments[0]))
    y, tau = tab0.conjugate_signed(x, 0)
    layer_pairs: list[list[tuple[SymplecticVec, int]]] = []
    for i, mask in enumerate(ld.masks):
        fresh = [(SymplecticVec.e_z(w + 1, c.n), 0) for w in mask.support()]
        layer_pairs.insert(0, fresh)
        seg_tab = tableau_from_circuit(Circuit(c.n, ld.segments[i + 1]))
        for pairs in layer_pairs:
            for k, (v, s) in enumerate(pairs):
                pairs[k] = seg_tab.conjugate_signed(v, s)
        y, tau = seg_tab.conjugate_signed(y, tau)
    layers = tuple(
        (
            OrderedBasis(tuple(v for v, _ in pairs)),
            F2Vec.from_coords((k for k, (_, s) in enumerate(pairs) if s), len(pairs)),
        )
        for pairs in layer_pairs
    )
    return Presentation(c.n, layers, (y, tau))


def _clifford_sending(z: SymplecticVec, y: SymplecticVec, tau: int) -> Circuit:
    """Clifford C with C P^z C† = (-1)^tau P^y; identity when both are zero."""
    n = z.n
    if not (z.z | z.x):
        if y.z | y.x or tau:
            raise PresentationError("zero Pauli must map to (0, 0)")
        return Circuit(n, ())
    from .circuit import dagger as circ_dagger

    c_in = synthesize_from_images([(z, 0)], n)
    c_out = synthesize_from_images([(y, tau)], n)
    return Circuit(n, circ_dagger(c_in).gates + c_out.gates)


def decode(lam: Presentation, z: SymplecticVec) -> Circuit:
    """Circuit C in T^d with C P^z C† = U^Lambda, independent of admissible z."""
    if z.n != lam.n:
        raise PresentationError("Pauli width != presentation width")
    y0, _ = lam.outer
    if bool(z.z | z.x) != bool(y0.z | y0.x):
        raise PresentationError("z must be zero exactly when the outer vector is")
    n = lam.n
    if lam.depth == 0:
        y, tau = lam.outer
        return _clifford_sending(z, y, tau)
    (basis, signs), rest = lam.layers[0], lam.layers[1:]
    r = len(basis.vectors)
    if r == 0:
        return decode(Presentation(n, rest, lam.outer), z)
    a = synthesize_from_images(
        [(basis[k], signs[k]) for k in range(r)], n
    )
    from .circuit import dagger as circ_dagger

    a_dag_tab = tableau_from_circuit(circ_dagger(a))
    lowered_layers = []
    for b, s in rest:
        pairs = [a_dag_tab.conjugate_signed(v, (s[k])) for k, v in enumerate(b.vectors)]
        lowered_layers.append(
            (
                OrderedBasis(tuple(v for v, _ in pairs)),
                F2Vec.from_coords((k for k, (_, sg) in enumerate(pairs) if sg), len(pairs)),
            )
        )
    yl, taul = a_dag_tab.conjugate_signed(*lam.outer)
    inner = decode(Presentation(n, tuple(lowered_layers), (yl, taul)), z)
    gates = list(inner.gates)
    # Z.Z pairs keep the fresh T-layer from being merged into a trailing one.
    for w in range(1, r + 1):
        gates += [Gate("Z", (w,)), Gate("Z", (w,))]
    gates += [Gate("T", (w,)) for w in range(1, r + 1)]
    gates += list(a.gates)
    return Circuit(n, tuple(gates))


# ---------------------------------------------------------------------------
# chain phases and the coefficient engine
# ---------------------------------------------------------------------------


def _layer_step_sign(
    basis: OrderedBasis,
    signs: F2Vec,
    y_prev: SymplecticVec,
    delta: SymplecticVec,
    coords: F2Vec,
    theta_sign: int,
) -> int:
    """sigma(s) xor theta(delta) xor (g(delta, y_prev) - omega)/2 for one layer."""
    omega = coords.weight()
    g = product_phase_exponent(delta, y_prev)
    diff = (g - omega) % 4
    if diff % 2:
        raise PresentationError("half-integer parity term: chain not in support")
    return parity(signs.bits & coords.bits) ^ theta_sign ^ ((diff // 2) & 1)


def rho(lam: Presentation, chain: SupportChain) -> int:
    """Chain phase: tau xor the per-layer sign contributions."""
    if len(chain.ys) != lam.depth:
        raise PresentationError("chain length != depth")
    y_prev, tau = lam.outer
    total = tau
    for (basis, signs), y_next in zip(lam.layers_in_time(), chain.ys):
        delta = y_prev ^ y_next
        mask = anticommutation_map(basis, y_prev)
        coords = basis_coords(basis, delta) if basis.vectors else F2Vec(0, 0)
        if coords.bits & ~mask.bits:
            raise PresentationError("chain step outside the selected subspace")
        acc = PhasedPauli.identity(lam.n)
        for i in coords.support():
            acc = acc * PhasedPauli(0, basis[i])
        total ^= _layer_step_sign(basis, signs, y_prev, delta, coords, acc.sign)
        y_prev = y_next
    return total


def _chain_walk(lam: Presentation, budget: int):
    """Yield (final_y, sign, root2_exponent) once per support chain."""
    y0, tau = lam.outer
    layers = lam.layers_in_time()
    count = 0

    def rec(j: int, y: SymplecticVec, sign: int, wexp: int):
        nonlocal count
        if j == len(layers):
            yield y, sign, wexp
            return
        basis, signs = layers[j]
        mask = anticommutation_map(basis, y)
        sel = list(mask.support())
        k = len(sel)
        count += 1 << k
        if count > budget:
            raise BudgetError(
                f"chain enumeration exceeded budget of {budget} transitions"
            )
        for bits in range(1 << k):
            acc = PhasedPauli.identity(lam.n)
            coords_bits = 0
            for pos in range(k):
                if (bits >> pos) & 1:
                    acc = acc * PhasedPauli(0, basis[sel[pos]])
                    coords_bits |= 1 << sel[pos]
            coords = F2Vec(coords_bits, len(basis.vectors))
            step = _layer_step_sign(basis, signs, y, acc.v, coords, acc.sign)
            yield from rec(j + 1, y ^ acc.v, sign ^ step, wexp + k)

    yield from rec(0, y0, tau, 0)


def expansion(
    lam: Presentation, budget: int = DEFAULT_BUDGET
) -> dict[SymplecticVec, ExactScalar]:
    """All nonzero coefficients <U, P^c>, collapsing chains layer by layer."""
    y0, tau = lam.outer
    amps: dict[SymplecticVec, ExactScalar] = {
        y0: -ExactScalar.ONE if tau else ExactScalar.ONE
    }
    count = 0
    for basis, signs in lam.layers_in_time():
        new: dict[SymplecticVec, ExactScalar] = {}
        for y, amp in amps.items():
            mask = anticommutation_map(basis, y)
            sel = list(mask.support())
            k = len(sel)
            count += 1 << k
            if count > budget:
                raise BudgetError(
                    f"chain enumeration exceeded budget of {budget} transitions"
                )
            scale = ExactScalar.inv_sqrt2_power(k)
            for bits in range(1 << k):
                acc = PhasedPauli.identity(lam.n)
                coords_bits = 0
                for pos in range(k):
                    if (bits >> pos) & 1:
                        acc = acc * PhasedPauli(0, basis[sel[pos]])
                        coords_bits |= 1 << sel[pos]
                coords = F2Vec(coords_bits, len(basis.vectors))
                step = _layer_step_sign(basis, signs, y, acc.v, coords, acc.sign)
                term = amp * scale
                if step:
                    term = -term
                tgt = y ^ acc.v
                cur = new.get(tgt)
                val = term if cur is None else cur + term
                if val:
                    new[tgt] = val
                elif cur is not None:
                    del new[tgt]
        amps = new
    return amps


def coefficient(
    lam: Presentation, c: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> ExactScalar:
    """Exact <U^Lambda, P^c> as a sum of signed powers of 1/sqrt(2)."""
    return expansion(lam, budget).get(c, ExactScalar.ZERO)


def coefficient_depth1_fast(lam: Presentation, c: SymplecticVec) -> ExactScalar:
    """Polynomial-time coefficient for depth <= 1 via affine membership."""
    if lam.depth > 1:
        raise PresentationError("fast path requires depth <= 1")
    y0, tau = lam.outer
    if lam.depth == 0 or len(lam.layers[0][0].vectors) == 0:
        if c != y0:
            return ExactScalar.ZERO
        return -ExactScalar.ONE if tau else ExactScalar.ONE
    basis, signs = lam.layers[0]
    mask = anticommutation_map(basis, y0)
    sub = OrderedBasis(tuple(basis[i] for i in mask.support()))
    delta = c ^ y0
    if sub.vectors:
        try:
            sub_coords = basis_coords(sub, delta)
        except ValueError:
            return ExactScalar.ZERO
    else:
        if delta.z | delta.x:
            return ExactScalar.ZERO
        sub_coords = F2Vec(0, 0)
    coords_bits = 0
    for pos, i in enumerate(mask.support()):
        if sub_coords[pos]:
            coords_bits |= 1 << i
    coords = F2Vec(coords_bits, len(basis.vectors))
    acc = PhasedPauli.identity(lam.n)
    for i in coords.support():
        acc = acc * PhasedPauli(0, basis[i])
    sign = tau ^ _layer_step_sign(basis, signs, y0, delta, coords, acc.sign)
    out = ExactScalar.inv_sqrt2_power(mask.weight())
    return -out if sign else out


def coefficient_by_peeling(
    lam: Presentation, c: SymplecticVec, budget: int = DEFAULT_BUDGET
) -> ExactScalar:
    """coefficient() computed by expanding the first T-layer explicitly."""
    if lam.depth == 0:
        return coefficient(lam, c, budget)
    y0, tau = lam.outer
    (basis, signs) = lam.layers[-1]
    upper = lam.layers[:-1]
    mask = anticommutation_map(basis, y0)
    sel = list(mask.support())
    total = ExactScalar.ZERO
    scale = ExactScalar.inv_sqrt2_power(len(sel))
    for bits in range(1 << len(sel)):
        acc = PhasedPauli.identity(lam.n)
        coords_bits = 0
        for pos in range(len(sel)):
            if (bits >> pos) & 1:
                acc = acc * PhasedPauli(0, basis[sel[pos]])
                coords_bits |= 1 << sel[pos]
        coords = F2Vec(coords_bits, len(basis.vectors))
        step = _layer_step_sign(basis, signs, y0, acc.v, coords, acc.sign)
        y_new = y0 ^ acc.v
        tau_new = tau ^ step
        if not (y_new.z | y_new.x):
            # zero outer short-circuits: every later layer acts trivially
            if c == y_new:
                sub_coeff = -ExactScalar.ONE if tau_new else ExactScalar.ONE
            else:
                sub_coeff = ExactScalar.ZERO
        else:
            sub = Presentation(lam.n, upper, (y_new, tau_new))
            sub_coeff = coefficient(sub, c, budget)
        total = total + sub_coeff * scale
    return total


# ---------------------------------------------------------------------------
# product form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProductForm:
    """Nested product: prod_j (I - i . factor_j)/sqrt2 applied to the tail.

    Leaves have factors == () and tail == None; then the value is
    (-1)^tau P^y from `leaf`.
    """

    n: int
    factors: tuple["ProductForm", ...]
    tail: "ProductForm | None"
    leaf: tuple[SymplecticVec, int] | None

    def is_leaf(self) -> bool:
        return self.leaf is not None

    def to_dense(self):
        from .oracle import DenseUnitary, pauli_unitary

        if self.leaf is not None:
            y, tau = self.leaf
            return pauli_unitary(PhasedPauli(2 * tau, y))
        out = self.tail.to_dense()
        inv = ExactScalar.inv_sqrt2_power(1)
        minus_i = ExactScalar.i_power(3)
        for f in reversed(self.factors):
            fd = f.to_dense().scale(minus_i)
            ident = DenseUnitary.identity(self.n)
            out = ident.add(fd).scale(inv).matmul(out)
        return out


def product_form(lam: Presentation) -> ProductForm:
    """Recursive factorization over the innermost layer's anticommuting vectors."""
    if lam.depth == 0:
        return ProductForm(lam.n, (), None, lam.outer)
    y0, tau = lam.outer
    basis, signs = lam.layers[-1]
    upper = lam.layers[:-1]
    mask = anticommutation_map(basis, y0)
    factors = []
    for i in mask.support():
        sub = Presentation(lam.n, upper, (basis[i], signs[i]))
        factors.append(product_form(sub))
    tail = product_form(Presentation(lam.n, upper, (y0, tau)))
    return ProductForm(lam.n, tuple(factors), tail, None)


# ---------------------------------------------------------------------------
# branchings
# ---------------------------------------------------------------------------


def pack_vec(v: SymplecticVec) -> F2Vec:
    return F2Vec(v.z | (v.x << v.n), 2 * v.n)


def unpack_vec(v: F2Vec, n: int) -> SymplecticVec:
    return SymplecticVec(v.bits & ((1 << n) - 1), v.bits >> n, n)


def presentation_to_branching(
    lam: Presentation,
    check: str = "exhaustive",
    target: SymplecticVec | None = None,
    budget: int = DEFAULT_BUDGET,
) -> Branching:
    """(x_j, B_{x_j}) layers over F2^{2n}; valid where the chain phase vanishes.

    check = "exhaustive": walk every chain and require rho == 0 throughout.
    check = "fiber":      require rho == 0 only on chains ending at `target`.
    check = "assume":     skip the walk (caller guarantees the phase).
    """
    if check not in ("exhaustive", "fiber", "assume"):
        raise ValueError("check must be exhaustive, fiber, or assume")
    if check == "fiber" and target is None:
        raise ValueError("fiber check needs a target vector")
    if check != "assume":
        for y_final, sign, _ in _chain_walk(lam, budget):
            if sign and (check == "exhaustive" or y_final == target):
                raise PresentationError("chain phase is not identically zero")
    layers = []
    for basis, _ in lam.layers:
        vecs = tuple(pack_vec(v) for v in basis.vectors)
        rows = tuple(v.x | (v.z << lam.n) for v in basis.vectors)
        layers.append((vecs, F2Matrix(rows, 2 * lam.n)))
    return Branching(2 * lam.n, tuple(layers))


def _selected_affine(
    vecs: tuple[F2Vec, ...], sel: F2Vec, offset: F2Vec
) -> AffineSpace:
    rows = [vecs[i].bits for i in sel.support()]
    return AffineSpace(offset, rows)


def branching_brute_expansion(
    br: Branching, y: F2Vec
) -> dict[F2Vec, ExactScalar]:
    """Phi_A(y) expanded term by term (test-sized instances only)."""
    amps = {y: ExactScalar.ONE}
    for vecs, q in br.layers_in_time():
        new: dict[F2Vec, ExactScalar] = {}
        for z, amp in amps.items():
            m = q.apply(z)
            space = _selected_affine(vecs, m, z)
            scale = ExactScalar.inv_sqrt2_power(m.weight())
            for w in space.members():
                term = amp * scale
                cur = new.get(w)
                val = term if cur is None else cur + term
                if val:
                    new[w] = val
                elif cur is not None:
                    del new[w]
        amps = new
    return amps


def branching_coeff_d2(br: Branching, y: F2Vec, q: F2Vec) -> ExactScalar:
    """|(y + W1^{Q1 y}) & (q + W2^{Q2 q})| / sqrt2^{|Q1 y| + |Q2 q|}."""
    if br.depth != 2:
        raise ValueError("d2 fast path requires depth exactly 2")
    if y.n != br.m or q.n != br.m:
        raise ValueError("ambient dimension mismatch")
    (v2, q2), (v1, q1) = br.layers
    m1 = q1.apply(y)
    m2 = q2.apply(q)
    from .f2 import affine_intersect

    s1 = _selected_affine(v1, m1, y)
    s2 = _selected_affine(v2, m2, q)
    inter = affine_intersect(s1, s2)
    if inter is None:
        return ExactScalar.ZERO
    count = ExactScalar.from_int(1 << inter.dim)
    return count * ExactScalar.inv_sqrt2_power(m1.weight() + m2.weight())


def branching_coeff_d3(br: Branching, y: F2Vec, q: F2Vec) -> ExactScalar:
    """Depth-3 coefficient; takes the short route when W2 & W3 = 0 and M <= N."""
    if br.depth != 3:
        raise ValueError("d3 fast path requires depth exactly 3")
    if y.n != br.m or q.n != br.m:
        raise ValueError("ambient dimension mismatch")
    from .f2 import affine_intersect

    (v3, q3), (v2, q2), (v1, q1) = br.layers
    m1 = q1.apply(y)
    m3 = q3.apply(q)
    mspace = _selected_affine(v1, m1, y)
    nspace = _selected_affine(v3, m3, q)
    pre = ExactScalar.inv_sqrt2_power(m1.weight() + m3.weight())
    # disjointness of the full spans W2 and W3
    w2_rows = [v.bits for v in v2]
    w3_rows = [v.bits for v in v3]
    rank2 = len(gauss_eliminate(w2_rows, br.m)[0])
    rank3 = len(gauss_eliminate(w3_rows, br.m)[0])
    joint = len(gauss_eliminate(w2_rows + w3_rows, br.m)[0])
    disjoint = joint == rank2 + rank3
    m_in_n = all(z in nspace for z in mspace.members())
    total = ExactScalar.ZERO
    if disjoint and m_in_n:
        for z in mspace.members():
            total = total + ExactScalar.inv_sqrt2_power(q2.apply(z).weight())
        return total * pre
    for z in mspace.members():
        m2 = q2.apply(z)
        mid = _selected_affine(v2, m2, z)
        inter = affine_intersect(mid, nspace)
        if inter is None:
            continue
        total = total + ExactScalar.from_int(1 << inter.dim) * ExactScalar.inv_sqrt2_power(m2.weight())
    return total * pre


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def serialize_presentation(lam: Presentation) -> str:
    lines = [f"presentation n={lam.n} d={lam.depth}"]
    for idx, (basis, signs) in enumerate(lam.layers):
        j = lam.depth - idx
        lines.append(f"layer {j} dim={len(basis.vectors)}")
        for k, v in enumerate(basis.vectors):
            lines.append(f"{v.to_bitstring()} {signs[k]}")
    y, tau = lam.outer
    lines.append(f"outer {y.to_bitstring()} {tau}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise PresentationError("empty presentation text")
    head = re.fullmatch(r"presentation n=(\d+) d=(\d+)", lines[0])
    if not head:
        raise PresentationError(f"bad header line: {lines[0]!r}")
    n, d = int(head.group(1)), int(head.group(2))
    pos = 1
    layers = []
    for idx in range(d):
        want_j = d - idx
        if pos >= len(lines):
            raise PresentationError("missing layer line")
        m = re.fullmatch(r"layer (\d+) dim=(\d+)", lines[pos])
        if not m or int(m.group(1)) != want_j:
            raise PresentationError(f"expected layer {want_j}: {lines[pos]!r}")
        r = int(m.group(2))
        pos += 1
        vecs = []
        sign_bits = []
        for _ in range(r):
            if pos >= len(lines):
                raise PresentationError("missing basis row")
            parts = lines[pos].split()
            if len(parts) != 2 or len(parts[0]) != 2 * n or parts[1] not in "01":
                raise PresentationError(f"bad basis row: {lines[pos]!r}")
            vecs.append(SymplecticVec.from_bitstring(parts[0]))
            sign_bits.append(int(parts[1]))
            pos += 1
        layers.append(
            (
                OrderedBasis(tuple(vecs)),
                F2Vec.from_coords((k for k, s in enumerate(sign_bits) if s), r),
            )
        )
    if pos >= len(lines):
        raise PresentationError("missing outer line")
    parts = lines[pos].split()
    if len(parts) != 3 or parts[0] != "outer" or len(parts[1]) != 2 * n or parts[2] not in "01":
        raise PresentationError(f"bad outer line: {lines[pos]!r}")
    if pos + 1 != len(lines):
        raise PresentationError("trailing content after outer line")
    return Presentation(
        n, tuple(layers), (SymplecticVec.from_bitstring(parts[1]), int(parts[2]))
    )


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_presentation(
    n: int,
    d: int,
    rng: Random,
    max_dim: int | None = None,
    allow_zero_outer: bool = False,
) -> Presentation:
    """Random valid presentation with nonempty isotropic layers."""
    cap = n if max_dim is None else min(max_dim, n)
    layers = []
    for _ in range(d):
        goal = rng.randint(1, max(1, cap))
        vecs: list[SymplecticVec] = []
        for _ in range(80):
            if len(vecs) == goal:
                break
            v = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
            if not (v.z | v.x):
                continue
            if any(symplectic_form(v, u) for u in vecs):
                continue
            try:
                OrderedBasis(tuple(vecs + [v]))
            except ValueError:
                continue
            vecs.append(v)
        if not vecs:
            vecs = [SymplecticVec.e_z(1, n)]
        r = len(vecs)
        signs = F2Vec(rng.getrandbits(r), r)
        layers.append((OrderedBasis(tuple(vecs)), signs))
    if allow_zero_outer and rng.random() < 0.2:
        y = SymplecticVec.zero(n)
        tau = 0
    else:
        while True:
            y = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
            if y.z | y.x:
                break
        tau = rng.randint(0, 1)
    return Presentation(n, tuple(layers), (y, tau))
