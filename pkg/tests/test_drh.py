from __future__ import annotations

import pytest

from drhalg.drh import (
    LatticePath,
    build_array,
    bug_path,
    check_identities_D1_D5,
    frozen_minors,
    initial_quiver,
    render_array,
)
from drhalg.exactalg import const, var
from drhalg.quiver import mutate

from .conftest import all_paths


def _named_arrows(seed):
    n = seed.names
    return {(n[u], n[v], m) for u, v, m in seed.quiver.arrows()}


def test_parse_rejects_bad_letters():
    with pytest.raises(ValueError):
        LatticePath.parse("NXE")


def test_nne_array():
    cells = {(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3), (1, 4), (2, 4), (3, 4)}
    assert build_array("NNE").cells == cells


def test_empty_and_nnen_array_sizes():
    assert len(build_array("").cells) == 4
    arr = build_array("NNEN")
    assert len(arr.cells) == 12
    assert {(2, 5), (3, 5)} <= arr.cells and (3, 2) not in arr.cells


def test_array_size_formula():
    for p in all_paths(6):
        assert len(build_array(p).cells) == 2 * len(p) + 4


def test_bug_paths():
    assert bug_path("NNE") == [(1, 2), (2, 2), (2, 3), (2, 4)]
    assert bug_path("E") == [(1, 2), (2, 2)]
    assert bug_path("") == [(1, 2)]


def test_quiver_e():
    s = initial_quiver("E")
    assert _named_arrows(s) == {
        ("Δ1", "a12", 1),
        ("Δ2", "a22", 1),
        ("a12", "a11", 1),
        ("a22", "a32", 1),
        ("a12", "a22", 1),
        ("a22", "Δ1", 1),
    }


def test_quiver_nnen():
    s = initial_quiver("NNEN")
    assert _named_arrows(s) == {
        ("a25", "a24", 1),
        ("a24", "a23", 1),
        ("a23", "a22", 1),
        ("a12", "a22", 1),
        ("Δ1", "a12", 1),
        ("a12", "a11", 1),
        ("a22", "Δ2", 1),
        ("Δ2", "a23", 1),
        ("a23", "Δ3", 1),
        ("Δ4", "a24", 1),
        ("a24", "Δ5", 1),
        ("Δ5", "a25", 1),
        ("a25", "a35", 1),
    }


def test_frozen_minors():
    arr = build_array("E")
    D = frozen_minors(arr)
    a = var
    assert D[0] == a(1, 1) and D[-1] == a(3, 2)
    assert D[1] == a(1, 2) * a(2, 1) - a(2, 2) * a(1, 1)


def test_mutating_along_bug_path_stays_polynomial():
    # walking the worm down: every exchange is exact
    for p in ["NNE", "ENEN", "NNEN", "EEEN"]:
        s = initial_quiver(p)
        for c in bug_path(p):
            s = mutate(s, c)
            assert not hasattr(s.x[c], "den")


def test_insideboa_exchange():
    # a_{22} a_{31} = Delta_2 + a_{21} a_{32} on the E-E-E bottom row
    s = initial_quiver("EEE")
    new = mutate(mutate(s, (1, 2)), (2, 2)).x[(2, 2)]
    D = frozen_minors(build_array("EEE"))
    assert new == var(3, 1)
    assert var(2, 2) * var(3, 1) == D[2] + var(2, 1) * var(3, 2)


def test_identities_d1_d5():
    assert all(check_identities_D1_D5().values())
    b0 = [var(1, 1), const(0), var(3, 1), var(4, 1), var(5, 1), var(6, 1)]
    assert all(check_identities_D1_D5(b0).values())


def test_render_array_shape():
    text = render_array(build_array("NNE"))
    assert len(text.splitlines()) == 4
