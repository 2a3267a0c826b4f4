"""Standardization of subskeleta and the signed determinant variables c(mu).

Also hosts the quadruple factorization F(q) and the checks built on it (the
decomposition theorem and the vanishing 3x3 determinants).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .drh import DrhArray, LatticePath, build_array, frozen_minors, square_cells
from .exactalg import Polynomial, const, poly_det
from .matrices import Block, Domino, DrhMatrix, concat

__all__ = [
    "Subskeleton",
    "std",
    "cluster_variable",
    "bends",
    "sign_for",
    "all_subskeleta",
    "fill_staircase",
    "quadruple_factor",
    "verify_decomposition",
    "verify_three_by_three",
    "Quadruple",
    "quadruples",
    "quadruple_determinant",
    "square_at",
    "is_special",
]


@dataclass(frozen=True)
class Subskeleton:
    """The subword ``W^r ... W^s`` of ``path`` (``1 <= r <= s <= l``)."""

    path: LatticePath
    r: int
    s: int

    def __post_init__(self):
        if not (1 <= self.r <= self.s <= len(self.path)):
            raise ValueError(f"invalid subskeleton range [{self.r}, {self.s}] for length {len(self.path)}")

    @property
    def word(self) -> str:
        return self.path.letters[self.r - 1 : self.s]

    @property
    def length(self) -> int:
        return self.s - self.r + 1

    def points(self) -> tuple:
        return self.path.points[self.r - 1 : self.s + 1]

    def label(self) -> str:
        return self.path.label(self.r, self.s)

    def is_standard(self) -> bool:
        w = self.word
        if len(w) < 2 or len(w) % 2:
            return False
        pairs = [w[i : i + 2] for i in range(0, len(w), 2)]
        return all(p in ("NE", "EN") for p in pairs) and all(
            pairs[i][1] != pairs[i + 1][0] for i in range(len(pairs) - 1)
        )


def bends(mu: Subskeleton) -> list[int]:
    """Indices ``t`` (``r <= t < s``) whose lattice point ``v_t`` is a bend."""
    lam = mu.path
    return [t for t in range(mu.r, mu.s) if lam.letter(t) != lam.letter(t + 1)]


def _block_at(values: Mapping, pt) -> Block:
    x, y = pt
    return Block(values[(x, y + 1)], values[(x + 1, y + 1)], values[(x, y)], values[(x + 1, y)])


def _end_domino(values: Mapping, cells: set, letter: str) -> Domino:
    cs = sorted(cells)
    if len(cs) != 2:
        raise AssertionError(f"end domino should have two cells, got {cs}")
    if letter == "N":
        (a, b) = sorted(cs, key=lambda c: c[0])
        if a[1] != b[1]:
            raise AssertionError("horizontal end domino cells must share a row")
        return Domino.h(values[a], values[b])
    (a, b) = sorted(cs, key=lambda c: c[1])
    if a[0] != b[0]:
        raise AssertionError("vertical end domino cells must share a column")
    return Domino.v(values[a], values[b])


def std(mu: Subskeleton, values: Mapping | None = None) -> DrhMatrix:
    """``Std(mu) = s b_1 ... b_k f``.

    ``s`` is the start square minus the next square, ``f`` the last square
    minus the previous one, and ``b_i`` the squares centered at the bends.
    Entries are read from ``values`` (the initial indeterminates of the
    parent array by default).
    """
    lam = mu.path
    if values is None:
        values = build_array(lam).values
    pts = lam.points
    first = set(square_cells(pts[mu.r - 1])) - set(square_cells(pts[mu.r]))
    last = set(square_cells(pts[mu.s])) - set(square_cells(pts[mu.s - 1]))
    s = _end_domino(values, first, lam.letter(mu.r))
    f = _end_domino(values, last, lam.letter(mu.s))
    blocks = [_block_at(values, pts[t]) for t in bends(mu)]
    M = concat(s, blocks, f)
    if not M.is_square():
        raise AssertionError(f"Std({mu.label()}) is not square: {M.shape}")
    return M


def sign_for(eta: int) -> int:
    """``(-1)^((eta-1)(eta-2)/2)``."""
    return -1 if ((eta - 1) * (eta - 2) // 2) % 2 else 1


def cluster_variable(mu: Subskeleton, values: Mapping | None = None) -> Polynomial:
    """``c(mu) = (-1)^((eta-1)(eta-2)/2) det Std(mu)``."""
    M = std(mu, values)
    eta = M.shape[0]
    d = M.det()
    return d if sign_for(eta) > 0 else -d


def all_subskeleta(path: LatticePath) -> list[Subskeleton]:
    l = len(path)
    return [Subskeleton(path, r, s) for r in range(1, l + 1) for s in range(r, l + 1)]


def fill_staircase(path: LatticePath | str) -> dict:
    """The assignment ``e``: staircase cell -> mutable cluster variable.

    Array cells carry their indeterminates, W-cells carry ``c(Subsk(cell))``
    and every cell shares its value with its transpose.  Polygon edges (the
    frozen corners) are not included.
    """
    from .staircase import Staircase

    if isinstance(path, str):
        path = LatticePath.parse(path)
    st = Staircase(path)
    arr = build_array(path)
    by_diag: dict = {}
    for c in st.drh_cells:
        by_diag[st.diagonal(c)] = arr.values[st.to_array(c)]
    for r, s in ((r, s) for r in range(1, len(path) + 1) for s in range(r, len(path) + 1)):
        d = st.diagonal(st.w_cell(r, s))
        if d in by_diag:
            raise AssertionError(f"W-cell for ({r},{s}) collides with another cell's diagonal")
        by_diag[d] = cluster_variable(Subskeleton(path, r, s), arr.values)
    return {c: by_diag[st.diagonal(c)] for c in st.cells}


# -- quadruples and the main decomposition -----------------------------------


@dataclass(frozen=True)
class Quadruple:
    """A 2x2 square of staircase cells ``(m11, m12; m21, m22)``.

    ``m11`` is the upper-left cell; staircase rows grow downwards, so
    ``m12 = m11 + (1, 0)`` and ``m21 = m11 + (0, 1)`` (mod ``n``).
    """

    staircase: object
    m11: tuple

    @property
    def cells(self) -> tuple:
        c, r = self.m11
        st = self.staircase
        return (st.norm((c, r)), st.norm((c + 1, r)), st.norm((c, r + 1)), st.norm((c + 1, r + 1)))

    def inside_w(self) -> bool:
        return all(c in self.staircase.w_cells for c in self.cells)

    def subskeleta(self) -> tuple:
        """``(r, s)`` ranges of ``mu_11, mu_12, mu_21, mu_22``."""
        return tuple(self.staircase.subsk(c) for c in self.cells)

    def split_vertical(self) -> bool:
        lam = self.staircase.path
        (_, s1), (_, s2) = self.subskeleta()[:2]
        return lam.letter(s1) != lam.letter(s2)

    def split_horizontal(self) -> bool:
        lam = self.staircase.path
        (r1, _), _, (r2, _), _ = self.subskeleta()
        return lam.letter(r1) != lam.letter(r2)


def quadruples(path: LatticePath | str) -> list[Quadruple]:
    """All quadruples inside ``W_lambda``, sorted by upper-left cell."""
    from .staircase import Staircase

    if isinstance(path, str):
        path = LatticePath.parse(path)
    st = Staircase(path)
    out = [Quadruple(st, c) for c in sorted(st.w_cells)]
    return [q for q in out if q.inside_w()]


def _bend_indices(lam: LatticePath, r: int, s: int) -> list[int]:
    """Delta indices of the bends strictly inside ``W^r..W^s``."""
    return [t + 1 for t in range(r, s) if lam.letter(t) != lam.letter(t + 1)]


def _is_bend_of(lam: LatticePath, t: int, r: int, s: int) -> bool:
    """Is lattice point ``v_t`` a bend of ``W^r..W^s``?"""
    return r <= t < s and lam.letter(t) != lam.letter(t + 1)


def quadruple_factor(q: Quadruple) -> list[int]:
    """The multiset ``F(q)`` as a sorted list of frozen indices.

    Index ``t`` stands for ``Delta_t`` (``0`` is ``a_11`` and ``l+2`` is
    ``a_pq``), matching :func:`drhalg.drh.frozen_minors`.

    Raises
    ------
    ValueError
        If ``q`` is not inside ``W_lambda``.
    """
    if not q.inside_w():
        raise ValueError(f"quadruple at {q.m11} is not inside W")
    lam = q.staircase.path
    l = len(lam)
    mus = q.subskeleta()
    short = min(mus, key=lambda m: m[1] - m[0])
    long_ = max(mus, key=lambda m: m[1] - m[0])
    r1, s1 = short
    r2, s2 = long_
    out = _bend_indices(lam, r1, s1)
    out += [r2, s2 + 1]
    # endpoints v_{r1-1}, v_{s1} of mu' that bend inside mu''
    out += [t + 1 for t in (r1 - 1, s1) if _is_bend_of(lam, t, r2, s2)]
    if q.split_vertical():
        if l + 1 not in out:
            raise AssertionError("vertical split without Delta_{l+1}")
        out.remove(l + 1)
        out.append(l + 2)
    if q.split_horizontal():
        if 1 not in out:
            raise AssertionError("horizontal split without Delta_1")
        out.remove(1)
        out.append(0)
    return sorted(out)


def quadruple_determinant(q: Quadruple, fill: Mapping) -> Polynomial:
    """``|q| = e(m11) e(m22) - e(m12) e(m21)``."""
    m11, m12, m21, m22 = q.cells
    return fill[m11] * fill[m22] - fill[m12] * fill[m21]


def verify_decomposition(path: LatticePath | str) -> dict:
    """Check ``|q| = prod F(q)`` for every quadruple inside ``W_lambda``.

    Returns a JSON-ready report with one record per quadruple.
    """
    if isinstance(path, str):
        path = LatticePath.parse(path)
    fill = fill_staircase(path)
    deltas = frozen_minors(build_array(path))
    records = []
    for q in quadruples(path):
        lhs = quadruple_determinant(q, fill)
        factors = quadruple_factor(q)
        rhs = const(1)
        for t in factors:
            rhs = rhs * deltas[t]
        records.append(
            {
                "cells": [list(c) for c in q.cells],
                "lhs_poly": lhs.to_text(),
                "factor_list": factors,
                "homogeneous": lhs.is_homogeneous(),
                "repeated": len(set(factors)) != len(factors),
                "ok": lhs == rhs,
            }
        )
    return {
        "path": str(path),
        "quadruples": records,
        "count": len(records),
        "ok": all(r["ok"] for r in records),
    }


def square_at(st, m11: tuple) -> tuple:
    """Cells ``(m11, m12, m21, m22)`` of the 2x2 square with upper-left ``m11``."""
    c, r = m11
    return (st.norm((c, r)), st.norm((c + 1, r)), st.norm((c, r + 1)), st.norm((c + 1, r + 1)))


def is_special(st, m11: tuple) -> bool:
    """Is the center of the 2x2 square at ``m11`` a special lattice point?

    Special points are those where three cells lie in one copy of the array
    (the array or its transpose) and the fourth lies outside it.  These
    are exactly the points whose 2x2 determinant is not homogeneous.
    """
    regs = [st.region(c) for c in square_at(st, m11)]
    if "edge" in regs:
        return False
    return any(regs.count(k) == 3 for k in ("drh", "transpose"))


def verify_three_by_three(path: LatticePath | str) -> dict:
    """Check that every 3x3 window with a non-special center has zero determinant.

    Windows are taken over all upper-left cells of the staircase; a window
    is tested when its nine cells lie in the staircase and the four corners
    of its center cell are non-special.  Windows with a special corner are
    listed separately, without a claim.
    """
    from .staircase import Staircase

    if isinstance(path, str):
        path = LatticePath.parse(path)
    st = Staircase(path)
    fill = fill_staircase(path)
    tested, skipped = [], []
    for c0, r0 in sorted(st.cells):
        window = [[st.norm((c0 + dc, r0 + dr)) for dc in range(3)] for dr in range(3)]
        if not all(st.contains(c) for row in window for c in row):
            continue
        corners = [(c0 + dc, r0 + dr) for dr in (0, 1) for dc in (0, 1)]
        rec = {"upper_left": [c0, r0], "inside_w": all(c in st.w_cells for row in window for c in row)}
        if any(is_special(st, u) for u in corners):
            skipped.append(rec)
            continue
        d = poly_det([[fill[c] for c in row] for row in window])
        rec["ok"] = d.is_zero()
        tested.append(rec)
    return {
        "path": str(path),
        "tested": tested,
        "skipped_special": skipped,
        "ok": all(r["ok"] for r in tested),
    }
