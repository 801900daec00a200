import random

import pytest

from pauliconj.circuit import Circuit, Gate, dagger, parse_circuit
from pauliconj.exact import ExactScalar, RealRoot2
from pauliconj.f2 import F2Vec, OrderedBasis, SymplecticVec
from pauliconj.oracle import dense, pauli_expansion, pauli_unitary
from pauliconj.pauli import PhasedPauli, parse_pauli
from pauliconj.present import (
    BudgetError,
    Presentation,
    PresentationError,
    branching_brute_expansion,
    branching_coeff_d2,
    branching_coeff_d3,
    coefficient,
    coefficient_by_peeling,
    coefficient_depth1_fast,
    decode,
    encode,
    expansion,
    pack_vec,
    parse_presentation,
    presentation_to_branching,
    product_form,
    random_presentation,
    serialize_presentation,
    unpack_vec,
)

GATE_POOL = ["H", "S", "T", "X", "Z", "CZ"]


def random_circuit(rng, n, length, t_budget=None):
    gates = []
    ts = 0
    for _ in range(length):
        kind = GATE_POOL[rng.randrange(len(GATE_POOL))]
        if kind == "T" and t_budget is not None and ts >= t_budget:
            kind = "S"
        if kind == "CZ" and n >= 2:
            a, b = rng.sample(range(1, n + 1), 2)
            gates.append(Gate("CZ", (min(a, b), max(a, b))))
        elif kind != "CZ":
            if kind == "T":
                ts += 1
            gates.append(Gate(kind, (rng.randint(1, n),)))
    return Circuit(n, tuple(gates))


def nonzero_vec(rng, n):
    while True:
        v = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
        if v.z | v.x:
            return v


def oracle_conjugation(c, x):
    u = dense(c)
    conj = u.matmul(pauli_unitary(PhasedPauli(0, x))).matmul(u.dagger())
    return pauli_expansion(conj)


def test_encode_t_on_x_structure():
    c = parse_circuit("qubits 1\nT 1\n")
    x = SymplecticVec.e_x(1, 1)
    lam = encode(c, x)
    assert lam.depth == 1
    basis, signs = lam.layers[0]
    assert basis.vectors == (SymplecticVec.e_z(1, 1),)
    assert signs == F2Vec.zero(1)
    assert lam.outer == (x, 0)
    assert expansion(lam) == {
        SymplecticVec.e_x(1, 1): ExactScalar.inv_sqrt2_power(1),
        SymplecticVec(1, 1, 1): ExactScalar.inv_sqrt2_power(1),
    }


def test_encode_zero_pauli_is_identity():
    c = parse_circuit("qubits 2\nT 1\nH 2\n")
    lam = encode(c, SymplecticVec.zero(2))
    assert lam.outer == (SymplecticVec.zero(2), 0)
    # every layer commutes with the zero outer, so only the trivial chain survives
    assert expansion(lam) == {SymplecticVec.zero(2): ExactScalar.ONE}


def test_presentation_rejects_minus_identity_outer():
    with pytest.raises(PresentationError):
        Presentation(1, (), (SymplecticVec.zero(1), 1))


def test_expansion_matches_oracle():
    rng = random.Random(51)
    for _ in range(60):
        n = rng.randint(1, 3)
        c = random_circuit(rng, n, rng.randint(0, 9), t_budget=3)
        x = nonzero_vec(rng, n)
        assert expansion(encode(c, x)) == oracle_conjugation(c, x)


def test_expansion_parseval():
    rng = random.Random(52)
    for _ in range(40):
        n = rng.randint(1, 4)
        c = random_circuit(rng, n, rng.randint(0, 12), t_budget=4)
        x = nonzero_vec(rng, n)
        total = RealRoot2.ZERO
        for a in expansion(encode(c, x)).values():
            total = total + a.abs_squared()
        assert total == RealRoot2.ONE


def test_coefficient_routes_agree():
    rng = random.Random(53)
    for _ in range(60):
        n = rng.randint(1, 3)
        lam = random_presentation(n, rng.randint(0, 3), rng)
        c = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
        base = coefficient(lam, c)
        assert coefficient_by_peeling(lam, c) == base
        if lam.depth <= 1:
            assert coefficient_depth1_fast(lam, c) == base


def test_depth1_fast_requires_depth1():
    rng = random.Random(54)
    lam = random_presentation(2, 2, rng)
    with pytest.raises(PresentationError):
        coefficient_depth1_fast(lam, SymplecticVec.e_z(1, 2))


def test_product_form_is_the_presented_unitary():
    rng = random.Random(55)
    for _ in range(25):
        n = rng.randint(1, 2)
        c = random_circuit(rng, n, rng.randint(0, 8), t_budget=2)
        x = nonzero_vec(rng, n)
        lam = encode(c, x)
        pf = product_form(lam).to_dense()
        assert pauli_expansion(pf) == oracle_conjugation(c, x)


def test_decode_roundtrip_and_z_independence():
    rng = random.Random(56)
    for _ in range(40):
        n = rng.randint(1, 3)
        lam = random_presentation(n, rng.randint(1, 3), rng)
        z1 = nonzero_vec(rng, n)
        z2 = nonzero_vec(rng, n)
        c1 = decode(lam, z1)
        assert encode(c1, z1) == lam
        if n <= 2:
            c2 = decode(lam, z2)
            assert oracle_conjugation(c1, z1) == oracle_conjugation(c2, z2)


def test_decode_width_and_zero_rules():
    rng = random.Random(57)
    lam = random_presentation(2, 1, rng)
    with pytest.raises(PresentationError):
        decode(lam, SymplecticVec.e_z(1, 3))
    with pytest.raises(PresentationError):
        decode(lam, SymplecticVec.zero(2))


def test_serialize_parse_roundtrip():
    rng = random.Random(58)
    for _ in range(40):
        n = rng.randint(1, 4)
        lam = random_presentation(n, rng.randint(0, 3), rng, allow_zero_outer=True)
        assert parse_presentation(serialize_presentation(lam)) == lam


def test_parse_presentation_errors():
    with pytest.raises(PresentationError):
        parse_presentation("")
    with pytest.raises(PresentationError):
        parse_presentation("presentation n=1 d=1\nlayer 1 dim=1\n10 0\n")  # no outer


def test_budget_error():
    rng = random.Random(59)
    c = random_circuit(rng, 4, 30)
    x = nonzero_vec(rng, 4)
    lam = encode(c, x)
    if lam.depth >= 2:
        with pytest.raises(BudgetError):
            coefficient(lam, x, budget=1)


def test_pack_unpack_roundtrip():
    rng = random.Random(60)
    for _ in range(50):
        n = rng.randint(1, 5)
        v = SymplecticVec(rng.getrandbits(n), rng.getrandbits(n), n)
        assert unpack_vec(pack_vec(v), n) == v
        assert pack_vec(v).n == 2 * n


def test_branching_brute_matches_expansion():
    rng = random.Random(61)
    done = 0
    while done < 25:
        n = rng.randint(1, 3)
        c = random_circuit(rng, n, rng.randint(1, 8), t_budget=3)
        x = nonzero_vec(rng, n)
        lam = encode(c, x)
        if lam.depth == 0:
            continue
        try:
            br = presentation_to_branching(lam, check="exhaustive")
        except PresentationError:
            continue  # chain phase not identically zero: branching undefined
        done += 1
        y0, tau = lam.outer
        assert tau == 0
        got = branching_brute_expansion(br, pack_vec(y0))
        want = expansion(lam)
        assert {unpack_vec(k, n): v for k, v in got.items()} == want


def test_branching_fast_paths_match_brute():
    rng = random.Random(62)
    d2 = d3 = 0
    while d2 < 10 or d3 < 10:
        n = rng.randint(1, 3)
        d = 2 if d2 < 10 else 3
        c = random_circuit(rng, n, rng.randint(2, 10), t_budget=d)
        x = nonzero_vec(rng, n)
        lam = encode(c, x)
        if lam.depth != d:
            continue
        try:
            br = presentation_to_branching(lam, check="exhaustive")
        except PresentationError:
            continue
        y0, _ = lam.outer
        full = branching_brute_expansion(br, pack_vec(y0))
        targets = list(full) + [pack_vec(nonzero_vec(rng, n))]
        fast = branching_coeff_d2 if d == 2 else branching_coeff_d3
        for q in targets:
            assert fast(br, pack_vec(y0), q) == full.get(q, ExactScalar.ZERO)
        if d == 2:
            d2 += 1
        else:
            d3 += 1
