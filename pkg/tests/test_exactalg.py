from __future__ import annotations

import random

import sympy

from drhalg.exactalg import (
    Polynomial,
    RationalFunction,
    const,
    is_polynomial,
    leibniz_det,
    parse_polynomial,
    poly_det,
    ratfun_reduce,
    var,
)

a11, a21, a12, a22 = var(1, 1), var(2, 1), var(1, 2), var(2, 2)


def to_sympy(p: Polynomial):
    out = 0
    for c, mono in p.terms():
        t = sympy.Integer(c)
        for (i, j), e in mono:
            t *= sympy.Symbol(f"a{i}_{j}") ** e
        out += t
    return sympy.expand(out)


def test_additive_identity_and_inverse():
    assert a11 + const(0) == a11
    p = a11 * a21 + const(3)
    assert (p + (-p)).is_zero()


def test_sum_collects_terms():
    assert (a11 + a21) + (a11 - a21) == const(2) * a11


def test_multiplication():
    p = a11 * a22 - a12
    assert p * const(1) == p
    assert (p * const(0)).is_zero()
    assert (a11 + a21) * (a11 - a21) == a11 * a11 - a21 * a21


def test_product_matches_sympy_expansion():
    rng = random.Random(3)
    vs = [var(i, j) for i in range(1, 4) for j in range(1, 3)]
    for _ in range(20):
        p = sum((const(rng.randint(-5, 5)) * rng.choice(vs) * rng.choice(vs) for _ in range(4)), const(0))
        q = sum((const(rng.randint(-5, 5)) * rng.choice(vs) for _ in range(3)), const(1))
        assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


def test_det_2x2_definition():
    assert poly_det([[a11, a21], [a12, a22]]) == a11 * a22 - a21 * a12


def test_det_std_n1_of_nnen():
    a13, a23 = var(1, 3), var(2, 3)
    assert poly_det([[a13, a23], [a11, a21]]) == a13 * a21 - a23 * a11


def _cofactor(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    return sum((-1) ** c * M[0][c] * _cofactor([r[:c] + r[c + 1 :] for r in M[1:]]) for c in range(n))


def test_det_random_integer_matrices_against_cofactor_oracle():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert poly_det([[const(x) for x in r] for r in M]) == const(_cofactor(M))


def test_symbolic_det_agrees_with_leibniz():
    M = [[var(i, j) for i in range(1, 4)] for j in range(1, 4)]
    assert poly_det(M) == leibniz_det(M)
    M[1][1] = const(0)
    assert poly_det(M) == leibniz_det(M)


def test_ratfun_reduce_cancels_common_factor():
    p, q = a11 + a21, a12 * a22 - const(2)
    r = ratfun_reduce(p * q, q)
    assert r.num == p and r.den == const(1)
    r = ratfun_reduce(a11 * a11 - a21 * a21, a11 - a21)
    assert r.num == a11 + a21 and r.den == const(1)


def test_ratfun_sign_normalization():
    r = ratfun_reduce(a11, const(-1))
    assert r.num == -a11 and r.den == const(1)


def test_is_polynomial():
    ok, p = is_polynomial(RationalFunction.of(a11 * a22))
    assert ok and p == a11 * a22
    ok, _ = is_polynomial(ratfun_reduce(a11, a21))
    assert not ok


def test_text_and_json_round_trip():
    p = const(3) * a11 * a11 * a22 - a12 + const(7)
    assert parse_polynomial(p.to_text()) == p
    assert Polynomial.from_json(p.to_json()) == p
    assert p.to_text() == parse_polynomial(p.to_text()).to_text()
