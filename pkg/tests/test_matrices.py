from __future__ import annotations

import random

import pytest

from drhalg.exactalg import const, poly_det, var
from drhalg.matrices import (
    Block,
    CorollaryCase,
    Domino,
    MinorSpec,
    check_lifted_identity,
    concat,
    desnanot_jacobi_instance,
    dodgson_condense,
    minor,
    verify_corollary_identities,
)


def test_smallest_concat_is_a_2x2_without_zeros():
    s, f = Domino.h(var(1, 1), var(2, 1)), Domino.h(var(1, 2), var(2, 2))
    M = concat(s, [], f)
    assert M.shape == (2, 2)
    assert all(not x.is_zero() for r in M.rows for x in r)


def test_minor_conventions():
    X = [[const(v) for v in r] for r in ([1, 2, 3], [4, 5, 6], [7, 8, 10])]
    assert minor(X, MinorSpec((), ())) == const(1)
    assert minor(X, MinorSpec((1,), (1,))) == const(1)
    # rows {1,2}, columns {2,3}: 2*6 - 3*5
    assert minor(X, MinorSpec((1, 2), (2, 3))) == const(2 * 6 - 3 * 5)


def test_minor_rejects_ragged_spec():
    with pytest.raises(ValueError):
        MinorSpec((1, 2), (1,))


def test_dodgson_condensation():
    I = [[const(int(i == j)) for j in range(3)] for i in range(3)]
    assert dodgson_condense(I) == const(1)
    X = [[const(v) for v in r] for r in ([1, 2, 3], [4, 5, 6], [7, 8, 10])]
    assert dodgson_condense(X) == const(-3)
    S = [[var(i, j) for i in range(1, 4)] for j in range(1, 4)]
    assert dodgson_condense(S) == poly_det(S)


def test_desnanot_jacobi_random_4x4():
    rng = random.Random(11)
    for _ in range(50):
        X = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(4)]
        base, I, J = desnanot_jacobi_instance(4)
        assert check_lifted_identity(X, base, I, J)


def test_empty_chunk_is_the_base_identity():
    rng = random.Random(2)
    X = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
    base, I, J = desnanot_jacobi_instance(2)
    assert I == J == ()
    assert check_lifted_identity(X, base)


def test_chunk_lifting_on_6x7_matrices():
    rng = random.Random(5)
    S = MinorSpec
    for _ in range(200):
        X = [[rng.randint(-9, 9) for _ in range(7)] for _ in range(6)]
        a, b = sorted(rng.sample(range(1, 7), 2))
        c, d = sorted(rng.sample(range(1, 8), 2))
        k = rng.randint(0, 4)
        I = rng.sample([r for r in range(1, 7) if r not in (a, b)], k)
        J = rng.sample([r for r in range(1, 8) if r not in (c, d)], k)
        base = [
            (1, [S((a, b), (c, d)), S((), ())]),
            (-1, [S((a,), (c,)), S((b,), (d,))]),
            (1, [S((a,), (d,)), S((b,), (c,))]),
        ]
        assert check_lifted_identity(X, base, I, J)


def test_lifting_rejects_colliding_chunk():
    base, _, _ = desnanot_jacobi_instance(3)
    with pytest.raises(ValueError):
        check_lifted_identity([[1] * 3] * 3, base, (1,), (2,))


def test_corollaries():
    assert verify_corollary_identities(CorollaryCase.C00pp, 2)
    assert verify_corollary_identities("Cm20pp", 2, random.Random(1))
    assert verify_corollary_identities("C00pp", 2, collapse_f=True)
    for case in CorollaryCase:
        assert verify_corollary_identities(case, 4, random.Random(4))


def test_corollary_rejects_odd_k():
    with pytest.raises(ValueError):
        verify_corollary_identities("C00pp", 3)


def test_block_determinant():
    b = Block(var(1, 2), var(2, 2), var(1, 1), var(2, 1))
    assert b.det() == var(1, 2) * var(2, 1) - var(2, 2) * var(1, 1)
