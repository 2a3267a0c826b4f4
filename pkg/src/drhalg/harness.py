"""Brute-force verification: flip-graph exploration and cross-module checks."""

from __future__ import annotations

import os
import random
from collections import deque
from dataclasses import dataclass, field
from math import comb

from .drh import LatticePath, initial_quiver
from .exactalg import Polynomial, RationalFunction, const
from .quiver import Seed, frozen_coefficient, mutate

__all__ = [
    "ExplorationState",
    "BoundExceeded",
    "catalan",
    "explore",
    "enumerate_cluster_variables",
    "verify_main_theorem",
    "DEFAULT_MAX_LEN",
    "HARD_CAP",
    "cap",
    "check_bound",
    "random_paths",
    "verify_lattice_fc",
    "verify_worm_quivers",
    "verify_identities",
]

DEFAULT_MAX_LEN = 6
HARD_CAP = 8


class BoundExceeded(ValueError):
    """The path is longer than the configured exploration bound."""


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def cap() -> int:
    """Largest admissible bound: ``DRH_MAX_LEN`` if set, else ``HARD_CAP``."""
    env = os.environ.get("DRH_MAX_LEN")
    return int(env) if env else HARD_CAP


def _bound(max_len: int | None) -> int:
    """Resolve the exploration bound.

    Without an explicit value the bound is ``DRH_MAX_LEN`` when set and
    ``DEFAULT_MAX_LEN`` otherwise.  Explicit values above :func:`cap` raise.
    """
    if max_len is None:
        env = os.environ.get("DRH_MAX_LEN")
        return int(env) if env else DEFAULT_MAX_LEN
    if max_len > cap():
        raise BoundExceeded(f"bound {max_len} exceeds the cap {cap()} (set DRH_MAX_LEN to override)")
    return max_len


def check_bound(path: LatticePath, max_len: int | None = None) -> int:
    """Return the resolved bound, raising :class:`BoundExceeded` if ``path`` is too long."""
    bound = _bound(max_len)
    if len(path) > bound:
        raise BoundExceeded(f"path length {len(path)} exceeds bound {bound}")
    return bound


@dataclass
class ExplorationState:
    """Result of exploring every seed reachable from ``Q_lambda``."""

    path: LatticePath
    seeds: int = 0
    variables: set = field(default_factory=set)
    non_polynomial: list = field(default_factory=list)
    quiver_conflicts: int = 0
    max_terms: int = 0
    mutations: int = 0
    exchange_cache_size: int = 0


def _arrow_key(seed: Seed):
    x = seed.x
    return frozenset((x[u], x[v], m) for u, v, m in seed.quiver.arrows())


def explore(path: LatticePath | str, max_len: int | None = None) -> ExplorationState:
    """Breadth-first search over all seeds of the DRH cluster algebra.

    Seeds are identified by their clusters (sets of mutable variables).  When
    a cluster is met again its quiver is compared with the stored one and any
    disagreement is counted in ``quiver_conflicts``.  Exchange results are
    cached by the exchange data, since the same exchange recurs in many seeds.

    Raises
    ------
    BoundExceeded
        If ``len(path)`` exceeds ``max_len`` (default 6, env ``DRH_MAX_LEN``).
    """
    if isinstance(path, str):
        path = LatticePath.parse(path)
    check_bound(path, max_len)
    start = initial_quiver(path)
    state = ExplorationState(path)
    cache: dict = {}
    seen: dict = {start.cluster(): _arrow_key(start)}
    queue = deque([start])
    while queue:
        seed = queue.popleft()
        state.seeds += 1
        for v in seed.quiver.mutable:
            val = seed.x[v]
            state.variables.add(val)
            if isinstance(val, Polynomial):
                state.max_terms = max(state.max_terms, len(val))
        for k in seed.quiver.mutable:
            q = seed.quiver
            ins = frozenset((seed.x[u], -m) for u, m in q._b[k].items() if m < 0)
            outs = frozenset((seed.x[u], m) for u, m in q._b[k].items() if m > 0)
            key = (seed.x[k], ins, outs)
            new_val = cache.get(key)
            state.mutations += 1
            if new_val is None:
                new_val = mutate(seed, k).x[k]
                cache[key] = new_val
                if isinstance(new_val, RationalFunction):
                    state.non_polynomial.append((k, new_val))
            x = dict(seed.x)
            x[k] = new_val
            nxt = Seed(q.mutate(k), x, seed.names)
            cl = nxt.cluster()
            prev = seen.get(cl)
            if prev is None:
                seen[cl] = _arrow_key(nxt)
                queue.append(nxt)
            elif prev != _arrow_key(nxt):
                state.quiver_conflicts += 1
    state.exchange_cache_size = len(cache)
    return state


def enumerate_cluster_variables(path: LatticePath | str, max_len: int | None = None) -> set:
    """All mutable cluster variables, each certified to be a polynomial.

    Raises
    ------
    ArithmeticError
        If some exchange produced a non-polynomial variable.
    """
    st = explore(path, max_len)
    if st.non_polynomial:
        raise ArithmeticError(f"{len(st.non_polynomial)} non-polynomial variables found")
    return set(st.variables)


def verify_main_theorem(path: LatticePath | str, max_len: int | None = None) -> dict:
    """Compare the explored variables with the filled staircase.

    Returns a JSON-ready report; ``ok`` is true iff the two sets coincide
    exactly, the seed count is ``Catalan(l+2)`` and no quiver conflict or
    non-polynomial variable was seen.
    """
    from .staircase import Staircase
    from .standardize import fill_staircase

    if isinstance(path, str):
        path = LatticePath.parse(path)
    st = explore(path, max_len)
    fill = fill_staircase(path)
    stair = Staircase(path)
    expected: dict = {}
    for c in sorted(stair.cells):
        expected.setdefault(fill[c], c)
    got = set(st.variables)
    exp_set = set(expected)
    missing = exp_set - got
    extra = got - exp_set
    sign_only = sorted(
        (p.to_text() for p in extra if isinstance(p, Polynomial) and -p in missing)
    )
    l = len(path)
    report = {
        "path": str(path),
        "l": l,
        "seeds": st.seeds,
        "expected_seeds": catalan(l + 2),
        "variables": len(got),
        "expected_variables": (l + 1) * (l + 4) // 2,
        "matched": len(got & exp_set),
        "missing": sorted(p.to_text() for p in missing),
        "extra": sorted(str(p) for p in extra),
        "sign_only_mismatches": sign_only,
        "non_polynomial": len(st.non_polynomial),
        "quiver_conflicts": st.quiver_conflicts,
        "cells": {fill_cell_key(expected[p]): p.to_text() for p in sorted(got & exp_set, key=lambda p: expected[p])},
    }
    report["ok"] = (
        not missing
        and not extra
        and st.seeds == report["expected_seeds"]
        and len(got) == report["expected_variables"]
        and not st.non_polynomial
        and not st.quiver_conflicts
    )
    return report


def fill_cell_key(c) -> str:
    return f"({c[0]},{c[1]})"


def random_paths(count: int, max_len: int, seed: int = 0) -> list[LatticePath]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        l = rng.randint(0, max_len)
        out.append(LatticePath("".join(rng.choice("NE") for _ in range(l))))
    return out


def verify_lattice_fc(path: LatticePath | str) -> dict:
    """Compare ``FC(u)`` with the 2x2 determinant of e-values at every point.

    Non-special points must match exactly; special points must have the
    shape ``Delta_i Delta_{i+2} / Delta_{i+1}`` and a non-homogeneous
    determinant.
    """
    from .drh import build_array, frozen_minors
    from .staircase import LatticeFC
    from .standardize import fill_staircase

    if isinstance(path, str):
        path = LatticePath.parse(path)
    L = LatticeFC(path)
    fill = fill_staircase(path)
    deltas = frozen_minors(build_array(path))
    st = L.st
    records = []
    for u in L.points():
        if not L.in_staircase(u):
            continue
        fc = L.at(u)
        X, Y = u
        m11, m12, m21, m22 = (st.norm(c) for c in ((X - 1, Y - 1), (X, Y - 1), (X - 1, Y), (X, Y)))
        det = fill[m11] * fill[m22] - fill[m12] * fill[m21]
        rec = {"point": list(u), "label": fc.label(), "case": fc.step, "special": fc.special}
        if fc.special:
            exps = sorted(fc.value)
            ok = (
                len(exps) == 3
                and [e for _, e in exps] == [1, -1, 1]
                and exps[1][0] == exps[0][0] + 1 == exps[2][0] - 1
                and not det.is_homogeneous()
            )
        else:
            num = const(1)
            for t, e in fc.value:
                if e < 0:
                    raise AssertionError("non-special coefficient with a denominator")
                num = num * deltas[t] ** e
            ok = num == det
        rec["ok"] = ok
        records.append(rec)
    return {"path": str(path), "points": records, "ok": all(r["ok"] for r in records)}


def _fc_map(q, v) -> dict:
    return {f[1]: e for f, e in frozen_coefficient(q, v).exponents}


def verify_worm_quivers(path: LatticePath | str, max_len: int | None = None) -> dict:
    """Compare proposed worm quivers with those reached by mutation.

    Worms are explored by worm operations from the bug path; each operation
    mutates the seed at the vertex sitting on the operated cell.  At every
    worm the mutable arrows and the frozen coefficient of every vertex are
    compared with :class:`~drhalg.staircase.WormQuivers`.  Every mutation
    also checks that the new variable is the staircase value of the new
    cell, and checks the frozen-coefficient laws for a single arrow between
    the mutated vertex and a neighbour whenever their hypotheses hold.
    """
    from .staircase import WormQuivers, initial_worm, worm_operation

    if isinstance(path, str):
        path = LatticePath.parse(path)
    check_bound(path, max_len)
    wq = WormQuivers(path)
    st = wq.st
    w0 = initial_worm(path)
    seed0 = initial_quiver(path)
    where0 = {v: st.from_array(v) for v in seed0.quiver.mutable}
    seen = {w0.cells}
    queue = deque([(w0, seed0, where0)])
    mismatches, variable_errors = [], []
    law_checks = law_failures = 0
    compat_checks = compat_failures = 0
    while queue:
        w, seed, where = queue.popleft()
        q = seed.quiver
        arrows, fcs = wq.propose(w)
        actual_arrows = sorted(
            (where[u], where[v]) for u, v, m in q.arrows() if u in where and v in where for _ in range(m)
        )
        actual_fc = {where[v]: _fc_map(q, v) for v in q.mutable}
        if sorted(arrows) != actual_arrows or actual_fc != fcs:
            bad = sorted(c for c in fcs if fcs[c] != actual_fc.get(c))
            mismatches.append({"worm": [list(c) for c in w.cells], "cells": [list(c) for c in bad]})
        cells = tuple(w.cells)
        for i in range(2, len(cells)):
            a, c, b = cells[i - 2], cells[i - 1], cells[i]
            if st.norm((a[0] + 1, a[1])) == c and st.norm((c[0] + 1, c[1])) == b:
                compat_checks += 1
                if wq._straight(cells, i) != wq.straight_from_below(cells, i):
                    compat_failures += 1
        at = {c: v for v, c in where.items()}
        for idx in range(1, len(w.cells) + 1):
            try:
                w2 = worm_operation(w, idx)
            except ValueError:
                continue
            k = at[w.cells[idx - 1]]
            s2 = mutate(seed, k)
            new_cell = w2.cells[idx - 1]
            if s2.x[k] != wq.fill[new_cell]:
                variable_errors.append({"worm": [list(c) for c in w.cells], "index": idx})
            # fc laws for a single arrow between k and a neighbour B
            fk = _fc_map(q, k)
            signs = {e > 0 for e in fk.values()}
            if len(signs) == 1:
                out = signs == {True}
                for b, m in q._b[k].items():
                    if b not in q.mutable or abs(m) != 1:
                        continue
                    # in-lemma: B -> A with A all-out; out-corollary: A -> B with A all-in
                    if (out and m == -1) or (not out and m == 1):
                        law_checks += 1
                        fb, fb2, fk2 = _fc_map(q, b), _fc_map(s2.quiver, b), _fc_map(s2.quiver, k)
                        want_b = {t: fb.get(t, 0) + fk.get(t, 0) for t in set(fb) | set(fk)}
                        want_b = {t: e for t, e in want_b.items() if e}
                        if fk2 != {t: -e for t, e in fk.items()} or fb2 != want_b:
                            law_failures += 1
            if w2.cells not in seen:
                seen.add(w2.cells)
                where2 = dict(where)
                where2[k] = new_cell
                queue.append((w2, s2, where2))
    l = len(path)
    return {
        "path": str(path),
        "worms": len(seen),
        "expected_worms": (l + 4) * 2**l,
        "mismatches": mismatches,
        "variable_errors": variable_errors,
        "law_checks": law_checks,
        "law_failures": law_failures,
        "compat_checks": compat_checks,
        "compat_failures": compat_failures,
        "ok": (
            not mismatches
            and not variable_errors
            and not law_failures
            and not compat_failures
            and len(seen) == (l + 4) * 2**l
        ),
    }


def verify_identities(instances: int = 1000, seed: int = 0, max_n: int = 6) -> dict:
    """The determinantal identity suite.

    D1-D5 and the three block corollaries (``k = 2, 4``) are checked
    symbolically.  Desnanot-Jacobi and chunk lifting of the 2x2 expansion
    ``Delta_{ab,cd} - Delta_{a,c} Delta_{b,d} + Delta_{a,d} Delta_{b,c} = 0``
    are checked on ``instances`` random integer matrices each (``n <= max_n``).
    """
    from .drh import check_identities_D1_D5
    from .matrices import (
        CorollaryCase,
        MinorSpec,
        check_lifted_identity,
        desnanot_jacobi_instance,
        verify_corollary_identities,
    )

    rng = random.Random(seed)
    d15 = check_identities_D1_D5()
    cor = {f"{c.value}/k={k}": verify_corollary_identities(c, k) for c in CorollaryCase for k in (2, 4)}
    dj_fail = chunk_fail = 0
    for _ in range(instances):
        n = rng.randint(2, max_n)
        X = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        base, I, J = desnanot_jacobi_instance(n)
        dj_fail += not check_lifted_identity(X, base, I, J)
        n = rng.randint(2, max_n)
        X = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        a, b = sorted(rng.sample(range(1, n + 1), 2))
        c, d = sorted(rng.sample(range(1, n + 1), 2))
        k = rng.randint(0, n - 2)
        I = rng.sample([r for r in range(1, n + 1) if r not in (a, b)], k)
        J = rng.sample([r for r in range(1, n + 1) if r not in (c, d)], k)
        S = MinorSpec
        base = [
            (1, [S((a, b), (c, d)), S((), ())]),
            (-1, [S((a,), (c,)), S((b,), (d,))]),
            (1, [S((a,), (d,)), S((b,), (c,))]),
        ]
        chunk_fail += not check_lifted_identity(X, base, I, J)
    return {
        "D1_D5": d15,
        "corollaries": cor,
        "desnanot_jacobi": {"instances": instances, "failures": dj_fail},
        "chunk_lifting": {"instances": instances, "failures": chunk_fail},
        "ok": all(d15.values()) and all(cor.values()) and dj_fail == 0 and chunk_fail == 0,
    }
