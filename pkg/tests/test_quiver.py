from __future__ import annotations

import pytest

from drhalg.drh import initial_quiver
from drhalg.exactalg import poly_det, var
from drhalg.quiver import (
    FrozenCoefficient,
    Quiver,
    Seed,
    exchange_binomial,
    freeze_and_prune,
    frozen_coefficient,
    mutate,
    seeds_equivalent,
)


def a(i, j):
    return var(i, j)


def test_e_mutation_at_a12_gives_a21():
    s = initial_quiver("E")
    assert mutate(s, (1, 2)).x[(1, 2)] == a(2, 1)


def test_e_mutation_at_a22():
    s = initial_quiver("E")
    new = mutate(s, (2, 2)).x[(2, 2)]
    assert new == poly_det([[a(1, 2), a(3, 2)], [a(1, 1), a(3, 1)]])


def test_mutation_is_an_involution():
    s = initial_quiver("NNEN")
    for k in s.quiver.mutable:
        back = mutate(mutate(s, k), k)
        assert back.quiver == s.quiver
        assert back.x == s.x


def test_mutation_rejects_frozen_vertex():
    s = initial_quiver("E")
    with pytest.raises(KeyError):
        mutate(s, ("D", 0))


def test_frozen_coefficient_direct_count():
    q = Quiver(["v"], ["D1", "D2"], [("v", "D1"), ("D2", "v")])
    assert frozen_coefficient(q, "v").as_dict() == {"D1": 1, "D2": -1}


def test_frozen_coefficient_of_a12_in_e():
    q = initial_quiver("E").quiver
    assert frozen_coefficient(q, (1, 2)).as_dict() == {("D", 0): 1, ("D", 1): -1}


def test_inmuta_law_on_a_small_quiver():
    # A has only out-arrows to frozens, B -> A is a single arrow
    q = Quiver(["A", "B"], ["F1", "F2", "F3"], [("A", "F1"), ("A", "F2"), ("B", "A"), ("F3", "B")])
    fa, fb = frozen_coefficient(q, "A"), frozen_coefficient(q, "B")
    q2 = q.mutate("A")
    assert frozen_coefficient(q2, "A") == fa.inverse()
    assert frozen_coefficient(q2, "B") == fa * fb


def test_exchange_binomial_shape():
    s = initial_quiver("E")
    p_in, p_out = exchange_binomial(s, (1, 2))
    assert p_in * p_out != p_in + p_out


def test_seed_equivalence_trivial_and_relabel():
    s = initial_quiver("NNE")
    assert seeds_equivalent(s, s)
    ren = {v: ("r", v) for v in s.quiver.vertices}
    q = s.quiver
    q2 = Quiver([ren[v] for v in q.mutable], [ren[v] for v in q.frozen], [(ren[u], ren[v], m) for u, v, m in q.arrows()])
    s2 = Seed(q2, {ren[v]: s.x[v] for v in q.vertices})
    assert seeds_equivalent(s, s2)
    assert not seeds_equivalent(s, mutate(s, q.mutable[0]))


def test_freeze_and_prune():
    s = initial_quiver("NNE")
    same = freeze_and_prune(s, s.quiver.mutable)
    assert same.quiver == s.quiver
    empty = freeze_and_prune(s, [])
    assert empty.quiver.mutable == () and empty.quiver.frozen == ()


def test_frozen_coefficient_algebra():
    f = FrozenCoefficient.from_map({"x": 2, "y": -1})
    assert (f * f.inverse()).is_one()
    assert (f / f).is_one()
