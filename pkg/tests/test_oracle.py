import random

import pytest

from pauliconj.circuit import Circuit, Gate, dagger, parse_circuit
from pauliconj.exact import ExactScalar, RealRoot2
from pauliconj.f2 import SymplecticVec
from pauliconj.oracle import (
    DenseUnitary,
    StateVector,
    dense,
    equal_up_to_phase,
    pauli_expansion,
    pauli_unitary,
    teleport_check,
)
from pauliconj.pauli import PhasedPauli, parse_pauli

ONE = ExactScalar.ONE
HALF = ExactScalar.inv_sqrt2_power(2)
INV_SQRT2 = ExactScalar.inv_sqrt2_power(1)


def vec(text):
    v, _ = parse_pauli(text)
    return v


def test_application_order_is_circuit_time_order():
    # [T then H] must be H.T as matrices, distinguishable from T.H
    th = dense(parse_circuit("qubits 1\nT 1\nH 1\n"))
    ht = dense(parse_circuit("qubits 1\nH 1\nT 1\n"))
    explicit = dense(parse_circuit("qubits 1\nH 1\n")).matmul(
        dense(parse_circuit("qubits 1\nT 1\n"))
    )
    assert pauli_expansion(th) == pauli_expansion(explicit)
    assert pauli_expansion(th) != pauli_expansion(ht)


def test_known_gate_expansions():
    h = pauli_expansion(dense(parse_circuit("qubits 1\nH 1\n")))
    assert h == {vec("X"): INV_SQRT2, vec("Z"): INV_SQRT2}
    t = pauli_expansion(dense(parse_circuit("qubits 1\nT 1\n")))
    assert t == {
        vec("I"): ExactScalar(1, 1, 0, 0, 2),
        vec("Z"): ExactScalar(1, -1, 0, 0, 2),
    }
    s = pauli_expansion(dense(parse_circuit("qubits 1\nS 1\n")))
    assert s == {
        vec("I"): ExactScalar(0, 1, 0, 0, 1),
        vec("Z"): ExactScalar(0, 0, 0, -1, 1),
    }
    cz = pauli_expansion(dense(parse_circuit("qubits 2\nCZ 1 2\n")))
    assert cz == {
        vec("II"): HALF,
        vec("ZI"): HALF,
        vec("IZ"): HALF,
        vec("ZZ"): -HALF,
    }


def test_identity_expansion_single_term():
    u = DenseUnitary.identity(2)
    assert pauli_expansion(u) == {SymplecticVec.zero(2): ONE}


def test_paper_conjugation_value():
    # [T, X, T^dag] in time order is T^dag X T = (X - Y)/sqrt2
    c = parse_circuit("qubits 1\nT 1\nX 1\n")
    tdg = dagger(parse_circuit("qubits 1\nT 1\n"))
    full = Circuit(1, c.gates + tdg.gates)
    assert pauli_expansion(dense(full)) == {
        vec("X"): INV_SQRT2,
        vec("Y"): -INV_SQRT2,
    }


def test_expansion_parseval():
    rng = random.Random(41)
    pool = ["H", "S", "T", "X", "Z", "CZ"]
    for _ in range(25):
        n = rng.randint(1, 3)
        gates = []
        for _ in range(rng.randint(0, 10)):
            k = pool[rng.randrange(len(pool))]
            if k == "CZ" and n >= 2:
                a, b = rng.sample(range(1, n + 1), 2)
                gates.append(Gate("CZ", (min(a, b), max(a, b))))
            elif k != "CZ":
                gates.append(Gate(k, (rng.randint(1, n),)))
        u = dense(Circuit(n, tuple(gates)))
        total = RealRoot2.ZERO
        for a in pauli_expansion(u).values():
            total = total + a.abs_squared()
        assert total == RealRoot2.ONE


def test_pauli_unitary_phases():
    y = pauli_unitary(PhasedPauli(0, vec("Y")))
    # Y = i X Z: entries are +-i
    assert y.entry(0, 1) == ExactScalar.i_power(3)
    assert y.entry(1, 0) == ExactScalar.i_power(1)
    assert pauli_unitary(PhasedPauli(2, vec("Z"))).entry(0, 0) == -ONE


def test_equal_up_to_phase():
    u = dense(parse_circuit("qubits 1\nH 1\n"))
    ok, phase = equal_up_to_phase(u, u)
    assert ok and phase == ONE
    minus = u.scale(-ONE)
    ok, phase = equal_up_to_phase(u, minus)
    assert ok and phase == -ONE
    z = dense(parse_circuit("qubits 1\nZ 1\n"))
    ok, phase = equal_up_to_phase(u, z)
    assert not ok and phase is None


def test_dense_rejects_wide_circuits():
    with pytest.raises(Exception):
        dense(Circuit(11, ()))


def test_teleport_check_trivial_and_h():
    assert teleport_check(Circuit(1, ()), SymplecticVec.zero(1), StateVector.basis(1))
    assert teleport_check(
        parse_circuit("qubits 1\nH 1\n"), SymplecticVec.e_z(1, 1), StateVector.basis(1)
    )


def test_teleport_check_random_t1():
    rng = random.Random(42)
    pool = ["H", "S", "X", "Z", "CZ"]
    for _ in range(40):
        n = rng.randint(1, 3)
        gates = []
        for _ in range(rng.randint(0, 6)):
            k = pool[rng.randrange(len(pool))]
            if k == "CZ" and n >= 2:
                a, b = rng.sample(range(1, n + 1), 2)
                gates.append(Gate("CZ", (min(a, b), max(a, b))))
            elif k != "CZ":
                gates.append(Gate(k, (rng.randint(1, n),)))
        # a single T-layer in the middle keeps it within depth 1
        gates.append(Gate("T", (rng.randint(1, n),)))
        f = Circuit(n, tuple(gates))
        x = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
        psi = StateVector.basis(n, rng.randrange(1 << n))
        assert teleport_check(f, x, psi)
