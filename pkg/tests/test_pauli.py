import random

import pytest

from pauliconj.circuit import Circuit, Gate, parse_circuit
from pauliconj.f2 import SymplecticVec, symplectic_form
from pauliconj.oracle import dense, pauli_expansion, pauli_unitary
from pauliconj.pauli import (
    CliffordTableau,
    PhasedPauli,
    bracket,
    canonical_clifford,
    circuit_from_tableau,
    conjugate_pauli,
    format_pauli,
    parse_pauli,
    pauli_sort_key,
    product_phase_exponent,
    synthesize_from_images,
    tableau_from_circuit,
)

CLIFFORD_POOL = ["H", "S", "X", "Z", "CZ"]


def random_vec(rng, n):
    return SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)


def random_clifford(rng, n, length):
    gates = []
    for _ in range(length):
        kind = CLIFFORD_POOL[rng.randrange(len(CLIFFORD_POOL))]
        if kind == "CZ" and n >= 2:
            a, b = rng.sample(range(1, n + 1), 2)
            gates.append(Gate("CZ", (min(a, b), max(a, b))))
        elif kind != "CZ":
            gates.append(Gate(kind, (rng.randint(1, n),)))
    return Circuit(n, tuple(gates))


def test_parse_format_pauli():
    v, sign = parse_pauli("-ZXY")
    assert sign == 1
    assert v.wire(1) == (1, 0)
    assert v.wire(2) == (0, 1)
    assert v.wire(3) == (1, 1)
    assert format_pauli(v, sign) == "-ZXY"
    v2, s2 = parse_pauli("10|01")
    assert s2 == 0
    assert v2 == SymplecticVec(0b01, 0b10, 2)
    with pytest.raises(ValueError):
        parse_pauli("AB")
    with pytest.raises(ValueError):
        parse_pauli("1|00")


def test_pauli_sort_key_is_lexicographic():
    vs = [SymplecticVec.e_x(1, 2), SymplecticVec.e_z(1, 2), SymplecticVec.zero(2)]
    # key is the z|x bitstring: I < X1 < Z1 here
    assert sorted(vs, key=pauli_sort_key) == [vs[2], vs[0], vs[1]]
    assert pauli_sort_key(vs[1]) == SymplecticVec.e_z(1, 2).to_bitstring()


def test_product_phase_exponent_vs_oracle():
    rng = random.Random(31)
    for _ in range(150):
        n = rng.randint(1, 3)
        u, v = random_vec(rng, n), random_vec(rng, n)
        g = product_phase_exponent(u, v)
        lhs = pauli_unitary(PhasedPauli(0, u)).matmul(pauli_unitary(PhasedPauli(0, v)))
        rhs = pauli_unitary(PhasedPauli(g % 4, u ^ v))
        assert pauli_expansion(lhs) == pauli_expansion(rhs)


def test_phased_pauli_product_and_sign():
    x = PhasedPauli(0, SymplecticVec.e_x(1, 1))
    z = PhasedPauli(0, SymplecticVec.e_z(1, 1))
    y = x * z  # XZ = -iY
    assert y.v == SymplecticVec(1, 1, 1)
    assert y.phase_exp == 3
    with pytest.raises(ValueError):
        y.sign  # -iY is not a signed Pauli
    assert (y * y).v == SymplecticVec.zero(1)
    minus_one = y * y
    assert minus_one.sign == 1


def test_bracket_parity_is_anticommutation():
    rng = random.Random(32)
    for _ in range(200):
        n = rng.randint(1, 4)
        u, v = random_vec(rng, n), random_vec(rng, n)
        assert bracket(u, v) % 2 == symplectic_form(u, v)


def test_tableau_from_circuit_matches_oracle():
    rng = random.Random(33)
    for _ in range(60):
        n = rng.randint(1, 3)
        c = random_clifford(rng, n, rng.randint(0, 10))
        tab = tableau_from_circuit(c)
        u = dense(c)
        for j in range(1, n + 1):
            for gen in (SymplecticVec.e_z(j, n), SymplecticVec.e_x(j, n)):
                img = conjugate_pauli(tab, PhasedPauli(0, gen))
                conj = u.matmul(pauli_unitary(PhasedPauli(0, gen))).matmul(u.dagger())
                assert pauli_expansion(conj) == pauli_expansion(
                    pauli_unitary(PhasedPauli(2 * img.sign, img.v))
                )


def test_tableau_rejects_t():
    with pytest.raises(ValueError):
        tableau_from_circuit(parse_circuit("qubits 1\nT 1\n"))


def test_conjugate_signed_tracks_input_sign():
    rng = random.Random(34)
    for _ in range(50):
        n = rng.randint(1, 3)
        tab = tableau_from_circuit(random_clifford(rng, n, 8))
        v = random_vec(rng, n)
        plus = tab.conjugate(PhasedPauli(0, v))
        minus = tab.conjugate(PhasedPauli(2, v))
        assert plus.v == minus.v
        assert plus.sign == minus.sign ^ 1


def test_circuit_from_tableau_roundtrip():
    rng = random.Random(35)
    for _ in range(40):
        n = rng.randint(1, 4)
        tab = tableau_from_circuit(random_clifford(rng, n, 12))
        rebuilt = tableau_from_circuit(circuit_from_tableau(tab))
        assert rebuilt == tab


def test_canonical_clifford_is_canonical():
    rng = random.Random(36)
    for _ in range(30):
        n = rng.randint(1, 3)
        c = random_clifford(rng, n, 10)
        canon = canonical_clifford(c)
        assert tableau_from_circuit(canon) == tableau_from_circuit(c)
        # same tableau in, same gate list out
        again = canonical_clifford(canon)
        assert again.gates == canon.gates


def test_synthesize_from_images():
    rng = random.Random(37)
    for _ in range(40):
        n = rng.randint(1, 4)
        # take images of Z_1..Z_k under a random Clifford: guaranteed isotropic
        tab = tableau_from_circuit(random_clifford(rng, n, 10))
        k = rng.randint(1, n)
        pairs = [tab.z_image(j) for j in range(1, k + 1)]
        c = synthesize_from_images(pairs, n)
        got = tableau_from_circuit(c)
        for j in range(1, k + 1):
            assert got.z_image(j) == pairs[j - 1]


def test_identity_tableau():
    tab = CliffordTableau.identity(3)
    assert tab.z_image(2) == (SymplecticVec.e_z(2, 3), 0)
    assert tab.x_image(3) == (SymplecticVec.e_x(3, 3), 0)
    assert tableau_from_circuit(Circuit(3, ())) == tab
