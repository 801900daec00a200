import cmath
import math
import random
from fractions import Fraction

import pytest

from pauliconj.exact import (
    ExactScalar,
    GBRoot2Expr,
    QRoot2,
    RealRoot2,
    beta_clearing_factor,
    gb_from_value,
    gb_value,
    vandermonde_inverse_row,
    vandermonde_matrix_entry,
    vandermonde_nodes,
)
from pauliconj.f2 import F2Vec

OMEGA = cmath.exp(1j * math.pi / 4)


def rand_scalar(rng):
    return ExactScalar(
        rng.randint(-4, 4),
        rng.randint(-4, 4),
        rng.randint(-4, 4),
        rng.randint(-4, 4),
        rng.randint(0, 5),
    )


def test_omega_powers_cycle():
    w = ExactScalar.omega_power(1)
    acc = ExactScalar.ONE
    seen = []
    for _ in range(8):
        seen.append(acc)
        acc = acc * w
    assert acc == ExactScalar.ONE
    assert len(set(seen)) == 8
    assert ExactScalar.omega_power(4) == -ExactScalar.ONE
    assert ExactScalar.i_power(1) == ExactScalar.omega_power(2)
    assert ExactScalar.i_power(3) == ExactScalar.omega_power(6)


def test_sqrt2_normalization():
    # omega - omega^3 = sqrt2, so this is sqrt2/sqrt2 = 1
    assert ExactScalar(0, 1, 0, -1, 1) == ExactScalar.ONE
    assert ExactScalar(2, 0, 0, 0, 2) == ExactScalar.ONE
    assert ExactScalar.inv_sqrt2_power(2) * ExactScalar.from_int(2) == ExactScalar.ONE


def test_scalar_ring_against_complex():
    rng = random.Random(7)
    for _ in range(300):
        a = rand_scalar(rng)
        b = rand_scalar(rng)
        for got, want in [
            ((a + b).to_complex(), a.to_complex() + b.to_complex()),
            ((a - b).to_complex(), a.to_complex() - b.to_complex()),
            ((a * b).to_complex(), a.to_complex() * b.to_complex()),
            (a.conj().to_complex(), a.to_complex().conjugate()),
        ]:
            assert cmath.isclose(got, want, rel_tol=1e-9, abs_tol=1e-9)


def test_abs_squared_real_nonnegative():
    rng = random.Random(8)
    for _ in range(200):
        a = rand_scalar(rng)
        r = a.abs_squared()
        assert math.isclose(r.to_float(), abs(a.to_complex()) ** 2, abs_tol=1e-9)
        assert r.to_float() >= 0


def test_times_sqrt2_power():
    one = ExactScalar.ONE
    assert one.times_sqrt2_power(2) == ExactScalar.from_int(2)
    assert one.times_sqrt2_power(-2) == ExactScalar.inv_sqrt2_power(2)


def test_to_real_rejects_complex():
    assert ExactScalar.ONE.to_real() == RealRoot2.ONE
    with pytest.raises(ValueError):
        ExactScalar.i_power(1).to_real()


def test_realroot2_normalization_and_equality():
    assert RealRoot2(2, 4, 3) == RealRoot2(1, 2, 2)
    assert RealRoot2(0, 0, 7) == RealRoot2.ZERO
    assert RealRoot2(4, 0, -1) == RealRoot2(8, 0, 0)
    assert hash(RealRoot2(2, 2, 1)) == hash(RealRoot2(1, 1, 0))


def test_realroot2_arithmetic_matches_float():
    rng = random.Random(9)
    for _ in range(300):
        x = RealRoot2(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(0, 4))
        y = RealRoot2(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(0, 4))
        assert math.isclose((x + y).to_float(), x.to_float() + y.to_float(), abs_tol=1e-9)
        assert math.isclose((x - y).to_float(), x.to_float() - y.to_float(), abs_tol=1e-9)
        assert math.isclose((x * y).to_float(), x.to_float() * y.to_float(), abs_tol=1e-9)
        assert x.to_exact().to_real() == x
        back = x.to_fractions().to_realroot2()
        assert back == x


def test_qroot2_field_ops():
    x = QRoot2(Fraction(3, 2), Fraction(-1, 4))
    y = QRoot2(Fraction(1, 3), Fraction(2, 1))
    assert (x * y / y) == x
    assert x.pow(0) == QRoot2.from_int(1)
    assert x.pow(3) == x * x * x
    z = x - x
    assert z.is_zero()
    with pytest.raises(ZeroDivisionError):
        x / z


def test_gb_roundtrip():
    rng = random.Random(10)
    for _ in range(200):
        b = rng.randint(-(1 << 12), 1 << 12)
        val = RealRoot2(2 * rng.randint(-(1 << 12), 1 << 12), b, 0)
        expr = gb_from_value(val)
        assert gb_value(expr) == val
        assert expr.signs.n == expr.mask.n


def test_gb_expr_terms_are_val():
    # hand expansion: value = sum_j (-1)^{s_j} sqrt2^{j} over mask support
    expr = GBRoot2Expr(F2Vec.from_string("0100"), F2Vec.from_string("1100"))
    want = RealRoot2(1, -1, 0)  # sqrt2^0 - sqrt2^1... first term +1, second -sqrt2
    assert gb_value(expr) == want


def test_vandermonde_inverse_rows():
    # beta-cleared inverse: sum_i row_t[i] * node_i^w == beta * [t == w]
    for n in range(0, 5):
        nodes = vandermonde_nodes(n)
        beta = beta_clearing_factor(n)
        for t in range(n + 1):
            row = vandermonde_inverse_row(n, t)
            for w in range(n + 1):
                acc = QRoot2(Fraction(0), Fraction(0))
                for i in range(n + 1):
                    acc = acc + row[i].to_fractions() * nodes[i].pow(w)
                want = QRoot2(Fraction(beta if t == w else 0), Fraction(0))
                assert acc == want


def test_vandermonde_entries_match_nodes():
    nodes = vandermonde_nodes(3)
    for i in range(4):
        for j in range(4):
            assert vandermonde_matrix_entry(3, i, j) == nodes[i].pow(j)


def test_beta_clearing_factor_value():
    assert beta_clearing_factor(0) == Fraction(1)
    assert beta_clearing_factor(2) == Fraction(3, 4) * Fraction(15, 16)
