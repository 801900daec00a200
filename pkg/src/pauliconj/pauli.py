"""Phased Paulis, Clifford tableaux, update rules, synthesis, and phase gadgets.

Sign conventions are fixed once against the dense-matrix oracle (see the
bootstrap tests) and frozen here:

* P^v = prod_j i^{a_j b_j} X^{b_j} Z^{a_j} for v = (a|b).
* P^u P^v = i^{g(u,v)} P^{u XOR v} with g the mod-4 exponent computed by
  `product_phase_exponent` (e.g. Z.X = iY, X.Z = -iY, Y.Y = I).
* `bracket` is the integer form u_Z.v_X - v_Z.u_X quoted by the phase
  displays; it is NOT the exact product exponent (the quadratic Y-overlap
  term is missing), which is why rho uses g instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, Gate, dagger
from .f2 import (
    F2Vec,
    OrderedBasis,
    SymplecticVec,
    gauss_eliminate,
    parity,
    popcount,
    solve_f2,
    symplectic_form,
)

__all__ = [
    "PhasedPauli",
    "CliffordTableau",
    "product_phase_exponent",
    "bracket",
    "theta",
    "parse_pauli",
    "format_pauli",
    "pauli_sort_key",
    "update_by_gate",
    "tableau_from_circuit",
    "conjugate_pauli",
    "circuit_from_tableau",
    "canonical_clifford",
    "synthesize_from_images",
    "transport_pair",
]


def product_phase_exponent(u: SymplecticVec, v: SymplecticVec) -> int:
    """g(u,v) mod 4 with P^u P^v = i^{g(u,v)} P^{u xor v}.

    Per wire, writing u=(a|b), v=(c|d):
    g = a.d - b.c + 2*(abd + abc + acd + bcd), summed over wires mod 4.
    """
    u._check(v)
    a, b, c, d = u.z, u.x, v.z, v.x
    lin = popcount(a & d) - popcount(b & c)
    quad = (
        popcount(a & b & d)
        + popcount(a & b & c)
        + popcount(a & c & d)
        + popcount(b & c & d)
    )
    return (lin + 2 * quad) % 4


def bracket(u: SymplecticVec, v: SymplecticVec) -> int:
    """[u,v] = u_Z.v_X - v_Z.u_X with dot products read over the integers."""
    u._check(v)
    return popcount(u.z & v.x) - popcount(v.z & u.x)


@dataclass(frozen=True)
class PhasedPauli:
    """i^{phase_exp} P^v; Hermitian iff phase_exp is even."""

    phase_exp: int
    v: SymplecticVec

    def __post_init__(self) -> None:
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @staticmethod
    def identity(n: int) -> "PhasedPauli":
        return PhasedPauli(0, SymplecticVec.zero(n))

    def is_hermitian(self) -> bool:
        return self.phase_exp % 2 == 0

    @property
    def sign(self) -> int:
        if not self.is_hermitian():
            raise ValueError("sign of a non-Hermitian phased Pauli")
        return (self.phase_exp // 2) % 2

    def __mul__(self, other: "PhasedPauli") -> "PhasedPauli":
        g = product_phase_exponent(self.v, other.v)
        return PhasedPauli(self.phase_exp + other.phase_exp + g, self.v ^ other.v)


_LETTER = {(0, 0): "I", (1, 0): "Z", (0, 1): "X", (1, 1): "Y"}
_FROM_LETTER = {v: k for k, v in _LETTER.items()}


def parse_pauli(text: str) -> tuple[SymplecticVec, int]:
    """Parse "-ZXY" letter form or "a|b" bitstring form to (vector, sign)."""
    text = text.strip()
    sign = 0
    if text[:1] in "+-":
        sign = 1 if text[0] == "-" else 0
        text = text[1:]
    if "|" in text:
        zs, xs = text.split("|", 1)
        if len(zs) != len(xs):
            raise ValueError("z and x parts have different lengths")
        v = SymplecticVec.from_bitstring(zs + xs)
        return v, sign
    z = 0
    x = 0
    for j, ch in enumerate(text.upper()):
        if ch not in _FROM_LETTER:
            raise ValueError(f"bad Pauli letter {ch!r}")
        a, b = _FROM_LETTER[ch]
        z |= a << j
        x |= b << j
    return SymplecticVec(z, x, len(text)), sign


def format_pauli(v: SymplecticVec, sign: int = 0) -> str:
    letters = "".join(_LETTER[v.wire(j)] for j in range(1, v.n + 1))
    return ("-" if sign else "+") + letters


def pauli_sort_key(v: SymplecticVec) -> str:
    """Deterministic lexicographic ordering key (the 2n-bitstring)."""
    return v.to_bitstring()


def theta(basis: OrderedBasis, v: SymplecticVec) -> int:
    """theta_x(v): prod_j P^{s_j x_j} = (-1)^theta P^v for v = xor of s_j x_j."""
    from .f2 import basis_coords

    coords = basis_coords(basis, v)
    acc = PhasedPauli.identity(v.n)
    for i in coords.support():
        acc = acc * PhasedPauli(0, basis.vectors[i])
    if acc.v != v:
        raise AssertionError("theta product mismatch")
    return acc.sign


def update_by_gate(
    v: SymplecticVec, sign: int, gate: Gate
) -> tuple[SymplecticVec, int]:
    """Conjugation action of a single Clifford gate on a signed Pauli."""
    z, x, n = v.z, v.x, v.n
    kind = gate.kind
    if kind == "H":
        (w,) = gate.wires
        m = 1 << (w - 1)
        a, b = z & m, x & m
        sign ^= bool(a and b)
        z, x = (z & ~m) | b, (x & ~m) | a
    elif kind == "S":
        (w,) = gate.wires
        m = 1 << (w - 1)
        a, b = z & m, x & m
        sign ^= bool(a and b)
        z ^= b
    elif kind == "Z":
        (w,) = gate.wires
        sign ^= (x >> (w - 1)) & 1
    elif kind == "X":
        (w,) = gate.wires
        sign ^= (z >> (w - 1)) & 1
    elif kind == "CZ":
        j, k = gate.wires
        mj, mk = 1 << (j - 1), 1 << (k - 1)
        a = (z >> (j - 1)) & 1
        b = (x >> (j - 1)) & 1
        c = (z >> (k - 1)) & 1
        d = (x >> (k - 1)) & 1
        sign ^= b & d & (a ^ c)
        if d:
            z ^= mj
        if b:
            z ^= mk
    elif kind == "T":
        raise ValueError("T is not a Clifford gate")
    else:
        raise ValueError(f"unknown gate kind {kind!r}")
    return SymplecticVec(z, x, n), sign


class CliffordTableau:
    """Signed conjugation images of Z_1..Z_n and X_1..X_n."""

    __slots__ = ("n", "z_vecs", "z_signs", "x_vecs", "x_signs")

    def __init__(
        self,
        n: int,
        z_images: list[tuple[SymplecticVec, int]],
        x_images: list[tuple[SymplecticVec, int]],
    ):
        self.n = n
        self.z_vecs = [v for v, _ in z_images]
        self.z_signs = [s & 1 for _, s in z_images]
        self.x_vecs = [v for v, _ in x_images]
        self.x_signs = [s & 1 for _, s in x_images]

    @staticmethod
    def identity(n: int) -> "CliffordTableau":
        return CliffordTableau(
            n,
            [(SymplecticVec.e_z(j, n), 0) for j in range(1, n + 1)],
            [(SymplecticVec.e_x(j, n), 0) for j in range(1, n + 1)],
        )

    def copy(self) -> "CliffordTableau":
        return CliffordTableau(
            self.n,
            list(zip(self.z_vecs, self.z_signs)),
            list(zip(self.x_vecs, self.x_signs)),
        )

    def apply_gate(self, gate: Gate) -> None:
        """Post-compose with the gate's conjugation (circuit grows at the end)."""
        for vecs, signs in ((self.z_vecs, self.z_signs), (self.x_vecs, self.x_signs)):
            for i in range(self.n):
                vecs[i], signs[i] = update_by_gate(vecs[i], signs[i], gate)

    def z_image(self, j: int) -> tuple[SymplecticVec, int]:
        return self.z_vecs[j - 1], self.z_signs[j - 1]

    def x_image(self, j: int) -> tuple[SymplecticVec, int]:
        return self.x_vecs[j - 1], self.x_signs[j - 1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliffordTableau):
            return NotImplemented
        return (
            self.n == other.n
            and self.z_vecs == other.z_vecs
            and self.z_signs == other.z_signs
            and self.x_vecs == other.x_vecs
            and self.x_signs == other.x_signs
        )

    def is_identity(self) -> bool:
        return self == CliffordTableau.identity(self.n)

    def conjugate(self, p: PhasedPauli) -> PhasedPauli:
        """Image of a Hermitian phased Pauli under this tableau."""
        if not p.is_hermitian():
            raise ValueError("conjugate requires a Hermitian phased Pauli")
        a, b = p.v.z, p.v.x
        acc = PhasedPauli(p.phase_exp + popcount(a & b), SymplecticVec.zero(self.n))
        for j in range(1, self.n + 1):
            if (b >> (j - 1)) & 1:
                v, s = self.x_image(j)
                acc = acc * PhasedPauli(2 * s, v)
        for j in range(1, self.n + 1):
            if (a >> (j - 1)) & 1:
                v, s = self.z_image(j)
                acc = acc * PhasedPauli(2 * s, v)
        if not acc.is_hermitian():
            raise AssertionError("conjugation broke Hermiticity")
        return acc

    def conjugate_signed(self, v: SymplecticVec, sign: int = 0) -> tuple[SymplecticVec, int]:
        out = self.conjugate(PhasedPauli(2 * sign, v))
        return out.v, out.sign


def tableau_from_circuit(c: Circuit) -> CliffordTableau:
    """Tableau of a Clifford circuit (raises on T gates)."""
    tab = CliffordTableau.identity(c.n)
    for g in c.gates:
        tab.apply_gate(g)
    return tab


def conjugate_pauli(clifford: "Circuit | CliffordTableau", p: PhasedPauli) -> PhasedPauli:
    """C P C† for a Clifford circuit or tableau and Hermitian phased Pauli."""
    tab = clifford if isinstance(clifford, CliffordTableau) else tableau_from_circuit(clifford)
    return tab.conjugate(p)


def _cx_gates(c: int, t: int) -> list[Gate]:
    return [Gate("H", (t,)), Gate("CZ", (c, t)), Gate("H", (t,))]


def circuit_from_tableau(tab: CliffordTableau) -> Circuit:
    """Deterministic circuit realizing the tableau exactly (signs included).

    Reduces a working copy to the identity tableau by recorded gate
    applications, then returns the dagger of the recording.
    """
    n = tab.n
    work = tab.copy()
    rec: list[Gate] = []

    def apply(gates: list[Gate]) -> None:
        for g in gates:
            work.apply_gate(g)
            rec.append(g)

    for w in range(1, n + 1):
        # --- make the X_w image exactly X_w ---
        v, _ = work.x_image(w)
        high = ~((1 << (w - 1)) - 1)
        if v.x & high == 0:
            j = (v.z & high & -(v.z & high)).bit_length()
            apply([Gate("H", (j,))])
            v, _ = work.x_image(w)
        if not (v.x >> (w - 1)) & 1:
            rest = v.x & ~((1 << w) - 1)
            j = (rest & -rest).bit_length()
            apply(_cx_gates(w, j) + _cx_gates(j, w) + _cx_gates(w, j))
            v, _ = work.x_image(w)
        for j in range(w + 1, n + 1):
            if (v.x >> (j - 1)) & 1:
                apply(_cx_gates(w, j))
        v, _ = work.x_image(w)
        if (v.z >> (w - 1)) & 1:
            apply([Gate("S", (w,))])
        v, _ = work.x_image(w)
        for j in range(w + 1, n + 1):
            if (v.z >> (j - 1)) & 1:
                apply([Gate("CZ", (w, j))])
        # --- make the Z_w image exactly Z_w (X_w image stays fixed) ---
        u, _ = work.z_image(w)
        if (u.x >> (w - 1)) & 1:
            apply([Gate("H", (w,)), Gate("S", (w,)), Gate("H", (w,))])
            u, _ = work.z_image(w)
        for j in range(w + 1, n + 1):
            if (u.x >> (j - 1)) & 1:
                if (u.z >> (j - 1)) & 1:
                    apply([Gate("S", (j,))])
                apply([Gate("H", (j,))])
        u, _ = work.z_image(w)
        for j in range(w + 1, n + 1):
            if (u.z >> (j - 1)) & 1:
                apply(_cx_gates(j, w))
        # --- signs ---
        if work.x_image(w)[1]:
            apply([Gate("Z", (w,))])
        if work.z_image(w)[1]:
            apply([Gate("X", (w,))])
        assert work.x_image(w) == (SymplecticVec.e_x(w, n), 0)
        assert work.z_image(w) == (SymplecticVec.e_z(w, n), 0)
    return dagger(Circuit(n, tuple(rec)))


def canonical_clifford(c: Circuit) -> Circuit:
    """Canonical representative: equal tableaux give structurally equal outputs."""
    return circuit_from_tableau(tableau_from_circuit(c))


def _pack(v: SymplecticVec) -> int:
    return v.z | (v.x << v.n)


def _b_row(w: SymplecticVec) -> int:
    """Functional row r with B(p, w) = <packed p, r> over F2^{2n}."""
    return w.x | (w.z << w.n)


def _kernel_f2(rows: list[int], ncols: int) -> list[int]:
    rref, pivots = gauss_eliminate(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = 1 << f
        for row, p in zip(rref, pivots):
            if (row >> f) & 1:
                vec |= 1 << p
        basis.append(vec)
    return basis


def _complete_symplectic(
    zs: list[SymplecticVec], xs: list[SymplecticVec], n: int
) -> tuple[list[SymplecticVec], list[SymplecticVec]]:
    """Extend partial hyperbolic data to a full symplectic basis, deterministically."""
    z_out = list(zs)
    x_out = list(xs)
    # partners for the given z's
    for j in range(len(x_out), len(z_out)):
        rows = [_b_row(z) for z in z_out] + [_b_row(x) for x in x_out]
        rhs = [1 if i == j else 0 for i in range(len(z_out))] + [0] * len(x_out)
        sol = solve_f2(rows, rhs, 2 * n)
        if sol is None:
            raise ValueError("no symplectic partner exists (input not isotropic?)")
        x_out.append(SymplecticVec(sol & ((1 << n) - 1), sol >> n, n))
    # fresh hyperbolic pairs up to dimension n
    while len(z_out) < n:
        rows = [_b_row(v) for v in z_out + x_out]
        kern = _kernel_f2(rows, 2 * n)
        if not kern:
            raise ValueError("cannot extend symplectic basis")
        pick = min(kern)
        z_new = SymplecticVec(pick & ((1 << n) - 1), pick >> n, n)
        z_out.append(z_new)
        rows.append(_b_row(z_new))
        rhs = [0] * (len(rows) - 1) + [1]
        sol = solve_f2(rows, rhs, 2 * n)
        if sol is None:
            raise ValueError("cannot find partner for extension vector")
        x_out.append(SymplecticVec(sol & ((1 << n) - 1), sol >> n, n))
    return z_out, x_out


def synthesize_from_images(
    pairs: list[tuple[SymplecticVec, int]], n: int
) -> Circuit:
    """Clifford C with C Z_j C† = (-1)^{xi_j} P^{x_j} for the given pairs.

    The x_j must be independent and span an isotropic subspace.
    """
    if not pairs:
        return circuit_from_tableau(CliffordTableau.identity(n))
    vecs = [v for v, _ in pairs]
    basis = OrderedBasis(tuple(vecs))  # validates independence
    if not basis.is_isotropic():
        raise ValueError("image vectors do not span an isotropic subspace")
    zs, xs = _complete_symplectic(vecs, [], n)
    signs = [s for _, s in pairs] + [0] * (n - len(pairs))
    tab = CliffordTableau(
        n,
        [(z, s) for z, s in zip(zs, signs)],
        [(x, 0) for x in xs],
    )
    return circuit_from_tableau(tab)


def transport_pair(
    x0: SymplecticVec, y0: SymplecticVec, x1: SymplecticVec, y1: SymplecticVec
) -> Circuit:
    """Clifford F with F P^{x0} F† = P^{x1} and F P^{y0} F† = P^{y1} (exact signs)."""
    n = x0.n
    for u, v in ((x0, y0), (x1, y1)):
        if symplectic_form(u, v) != 1:
            raise ValueError("transport_pair requires anticommuting pairs")
    circuits = []
    for u, v in ((x0, y0), (x1, y1)):
        zs, xs = _complete_symplectic([u], [v], n)
        tab = CliffordTableau(n, [(z, 0) for z in zs], [(x, 0) for x in xs])
        circuits.append(circuit_from_tableau(tab))
    c0, c1 = circuits
    # F = C1 . C0^dag maps P^{x0} -> Z_1 -> P^{x1} and P^{y0} -> X_1 -> P^{y1}
    return Circuit(n, dagger(c0).gates + c1.gates)


def transport_signed(
    src: tuple[tuple[SymplecticVec, int], tuple[SymplecticVec, int]],
    dst: tuple[tuple[SymplecticVec, int], tuple[SymplecticVec, int]],
) -> Circuit:
    """Clifford F carrying one signed anticommuting pair onto another.

    With src = ((u0, s0), (v0, t0)) and dst = ((u1, s1), (v1, t1)) the result
    satisfies F P^{u0} F† = (-1)^{s0+s1} P^{u1} and likewise for the second
    members, so choosing src signs zero prescribes the images' signs directly.
    """
    n = src[0][0].n
    circuits = []
    for (u, su), (v, sv) in (src, dst):
        if symplectic_form(u, v) != 1:
            raise ValueError("transport_signed requires anticommuting pairs")
        zs, xs = _complete_symplectic([u], [v], n)
        tab = CliffordTableau(
            n,
            [(z, su if i == 0 else 0) for i, z in enumerate(zs)],
            [(x, sv if i == 0 else 0) for i, x in enumerate(xs)],
        )
        circuits.append(circuit_from_tableau(tab))
    c0, c1 = circuits
    return Circuit(n, dagger(c0).gates + c1.gates)
