import random

import pytest

from pauliconj.f2 import (
    F2Matrix,
    F2Vec,
    OrderedBasis,
    SymplecticVec,
    anticommutation_map,
    gauss_eliminate,
    parity,
    popcount,
    selected_subspace,
    solve_f2,
    symplectic_form,
)


def test_popcount_parity():
    assert popcount(0) == 0
    assert popcount(0b1011) == 3
    assert parity(0b1011) == 1
    assert parity(0b1001) == 0


def test_f2vec_basics():
    v = F2Vec.from_string("1010")
    assert v.weight() == 2
    assert v.support() == (0, 2)
    assert v.to_string() == "1010"
    assert list(v) == [1, 0, 1, 0]
    assert v[0] == 1 and v[1] == 0
    assert (v ^ v) == F2Vec.zero(4)
    assert not F2Vec.zero(4)
    assert F2Vec.unit(2, 4).to_string() == "0010"
    assert F2Vec.from_coords([1, 1, 0], 3) == F2Vec.from_string("110")


def test_f2vec_dot_and_subset():
    a = F2Vec.from_string("110")
    b = F2Vec.from_string("011")
    assert a.dot(b) == 1
    assert (a & b).to_string() == "010"
    assert F2Vec.from_string("010").is_subset_of(a)
    assert not a.is_subset_of(b)


def test_f2vec_width_mismatch():
    with pytest.raises(ValueError):
        F2Vec(0, 2) ^ F2Vec(0, 3)


def test_gauss_eliminate_rank():
    rows, pivots = gauss_eliminate([0b011, 0b110, 0b101], 3)
    assert len(pivots) == 2  # third row is the sum of the others
    # pivot columns hold a single 1 in the reduced rows
    for p, r in zip(pivots, rows):
        assert (r >> p) & 1
        assert all(((other >> p) & 1) == 0 for other in rows if other != r)


def test_solve_f2_roundtrip():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 8)
        m = rng.randint(1, 8)
        rows = [rng.getrandbits(n) for _ in range(m)]
        x0 = rng.getrandbits(n)
        rhs = [parity(r & x0) for r in rows]
        x = solve_f2(rows, rhs, n)
        assert x is not None
        assert all(parity(r & x) == b for r, b in zip(rows, rhs))


def test_solve_f2_no_solution():
    assert solve_f2([0b1, 0b1], [0, 1], 1) is None


def test_f2matrix_rank_rref_apply():
    m = F2Matrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert m.rank() == 2
    assert m.rref().rank() == 2
    v = F2Vec.from_string("101")
    # matrix-vector product: coordinate i is row_i . v
    assert m.apply(v) == F2Vec.from_coords(
        [m.row_vec(i).dot(v) for i in range(m.nrows)], m.nrows
    )
    span = set(m.row_span())
    assert len(span) == 4
    assert F2Vec.zero(3) in span


def test_f2matrix_row_out_of_range():
    with pytest.raises(ValueError):
        F2Matrix((4,), 2)


def test_symplectic_vec_wire_views():
    v = SymplecticVec(0b01, 0b11, 2)
    assert v.wire(1) == (1, 1)  # Y on wire 1
    assert v.wire(2) == (0, 1)  # X on wire 2
    assert v.weight() == 2
    s = v.to_bitstring()
    assert SymplecticVec.from_bitstring(s) == v
    assert SymplecticVec.e_z(2, 3).z == 0b010
    assert SymplecticVec.e_x(3, 3).x == 0b100


def test_symplectic_form_anticommutation():
    z1 = SymplecticVec.e_z(1, 2)
    x1 = SymplecticVec.e_x(1, 2)
    x2 = SymplecticVec.e_x(2, 2)
    assert symplectic_form(z1, x1) == 1
    assert symplectic_form(z1, x2) == 0
    assert symplectic_form(z1, z1) == 0
    rng = random.Random(3)
    for _ in range(100):
        u = SymplecticVec(rng.getrandbits(4), rng.getrandbits(4), 4)
        v = SymplecticVec(rng.getrandbits(4), rng.getrandbits(4), 4)
        assert symplectic_form(u, v) == symplectic_form(v, u)
        assert symplectic_form(u, u) == 0


def test_ordered_basis_rejects_dependence():
    v1 = SymplecticVec.e_z(1, 2)
    v2 = SymplecticVec.e_z(2, 2)
    OrderedBasis((v1, v2))
    with pytest.raises(ValueError):
        OrderedBasis((v1, v2, v1 ^ v2))


def test_anticommutation_map_and_selection():
    basis = OrderedBasis((SymplecticVec.e_z(1, 2), SymplecticVec.e_z(2, 2)))
    y = SymplecticVec.e_x(1, 2)
    mask = anticommutation_map(basis, y)
    assert mask.to_string() == "10"
    sub = selected_subspace(basis, mask)
    assert sub.vectors == (SymplecticVec.e_z(1, 2),)
