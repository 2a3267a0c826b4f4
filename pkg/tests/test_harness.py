from __future__ import annotations

import pytest

from drhalg.exactalg import var
from drhalg.harness import (
    BoundExceeded,
    catalan,
    enumerate_cluster_variables,
    explore,
    random_paths,
    verify_identities,
    verify_lattice_fc,
    verify_main_theorem,
    verify_worm_quivers,
)

from .conftest import all_paths


def catalan_recurrence(m):
    c = [1]
    for k in range(m):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[m]


def test_catalan():
    assert [catalan(m) for m in range(9)] == [catalan_recurrence(m) for m in range(9)]
    assert catalan(8) == 1430


def test_empty_path_variables():
    assert enumerate_cluster_variables("") == {var(1, 2), var(2, 1)}


def test_counts_for_short_paths():
    for p in all_paths(4):
        l = len(p)
        st = explore(p)
        assert st.seeds == catalan(l + 2)
        assert len(st.variables) == (l + 1) * (l + 4) // 2
        assert not st.non_polynomial and st.quiver_conflicts == 0


def test_main_theorem_small():
    for p in ["E", "N", "NE", "EN", "NNE", "NEN", "ENE", "NENE", "NNEN", "ENNE"]:
        rep = verify_main_theorem(p)
        assert rep["ok"], rep
    rep = verify_main_theorem("NNEN")
    assert rep["matched"] == 20 and not rep["missing"] and not rep["extra"]


def test_bound_exceeded(monkeypatch):
    monkeypatch.delenv("DRH_MAX_LEN", raising=False)
    with pytest.raises(BoundExceeded):
        explore("NENENENEN")
    with pytest.raises(BoundExceeded):
        explore("NE", max_len=9)
    monkeypatch.setenv("DRH_MAX_LEN", "1")
    with pytest.raises(BoundExceeded):
        explore("NE")


def test_random_paths_deterministic():
    a = [str(p) for p in random_paths(5, 6, seed=3)]
    assert a == [str(p) for p in random_paths(5, 6, seed=3)]
    assert all(len(p) <= 6 for p in random_paths(20, 6))


def test_worm_quivers_small():
    for p in all_paths(3):
        rep = verify_worm_quivers(p)
        assert rep["ok"], rep
        assert rep["worms"] == rep["expected_worms"]


def test_lattice_fc_small():
    for p in all_paths(4):
        assert verify_lattice_fc(p)["ok"]


def test_identities_suite():
    rep = verify_identities(instances=50, seed=1)
    assert rep["ok"]
