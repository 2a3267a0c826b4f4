from __future__ import annotations

from drhalg.drh import LatticePath
from drhalg.exactalg import const, poly_det, var
from drhalg.standardize import (
    Subskeleton,
    all_subskeleta,
    cluster_variable,
    fill_staircase,
    quadruple_factor,
    quadruples,
    sign_for,
    std,
    verify_decomposition,
    verify_three_by_three,
)

from .conftest import all_paths


def a(i, j):
    return var(i, j)


Z = const(0)
NNEN = LatticePath("NNEN")


def test_std_of_e():
    M = std(Subskeleton(LatticePath("E"), 1, 1))
    assert M.rows == [[a(1, 2), a(3, 2)], [a(1, 1), a(3, 1)]]


def test_std_n1_of_nnen():
    M = std(Subskeleton(NNEN, 1, 1))
    assert M.rows == [[a(1, 3), a(2, 3)], [a(1, 1), a(2, 1)]]


def test_std_n2e3n4_of_nnen():
    M = std(Subskeleton(NNEN, 2, 4))
    assert M.rows == [
        [Z, Z, a(2, 5), a(3, 5)],
        [a(1, 4), a(2, 4), a(2, 4), a(3, 4)],
        [a(1, 3), a(2, 3), a(2, 3), a(3, 3)],
        [a(1, 2), a(2, 2), Z, Z],
    ]


def test_std_size_of_standard_path():
    # an alternating path of length k spans k + 1 rows and columns
    for word in ["NE", "EN", "NENE", "ENEN", "NENENE"]:
        mu = Subskeleton(LatticePath(word), 1, len(word))
        assert mu.is_standard()
        assert std(mu).shape == (len(word) + 1, len(word) + 1)


def test_sign_formula():
    assert sign_for(2) == 1
    assert sign_for(3) == -1
    assert sign_for(4) == -1


def test_n2e3_sign():
    rows = [[a(1, 4), a(2, 4), a(3, 4)], [a(1, 3), a(2, 3), a(3, 3)], [a(1, 2), a(2, 2), Z]]
    assert cluster_variable(Subskeleton(NNEN, 2, 3)) == -poly_det(rows)


def test_fill_nnen_counts():
    fill = fill_staircase(NNEN)
    values = set(fill.values())
    assert len(values) == 20
    singles = [v for v in values if len(v) == 1]
    assert len(singles) == 10


def test_fill_respects_mirror():
    from drhalg.staircase import build_staircase

    for p in ["NNE", "ENEN", "NENEEN"]:
        st = build_staircase(p)
        fill = fill_staircase(p)
        assert all(fill[c] == fill[st.transpose(c)] for c in fill)


def test_distinct_values_count():
    for p in all_paths(5):
        l = len(p)
        assert len(set(fill_staircase(p).values())) == (l + 1) * (l + 4) // 2


def test_subskeleta_count():
    for p in all_paths(5):
        l = len(p)
        assert len(all_subskeleta(p)) == l * (l + 1) // 2


def test_decomposition_nnen_and_neneeen():
    assert verify_decomposition(NNEN)["ok"]
    rep = verify_decomposition("NENEEN")
    assert rep["ok"]
    assert rep["count"] == 10


def test_corner_factors_only_on_split_quadruples():
    seen_pq = seen_11 = 0
    for p in all_paths(5, 2):
        l = len(p)
        for q in quadruples(p):
            F = quadruple_factor(q)
            if l + 2 in F:
                assert q.split_vertical
                seen_pq += 1
            if 0 in F:
                assert q.split_horizontal
                seen_11 += 1
    assert seen_pq and seen_11


def test_three_by_three():
    for p in ["NNEN", "NENEEN", "EEENNN", "NNNNEE"]:
        rep = verify_three_by_three(p)
        assert rep["ok"]
