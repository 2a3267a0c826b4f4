"""The DRH staircase, worms, the polygon correspondence and Subsk.

Staircase cells are ``(i, j)`` = (column, row) with rows increasing from the
top down, taken modulo ``n = l + 4``.  A cell lies in the staircase iff
``i - j`` is not ``-1, 0, 1`` mod ``n``; cell ``(i, j)`` is the diagonal
``P_i P_j`` of the ``n``-gon (vertex ``P_n`` is stored as residue 0), and
``(i, j)``, ``(j, i)`` are the two cells of the same diagonal.

The array cell ``a_{ij}`` (axis coordinates) sits at column ``i``, row
``n + 1 - j``; the lower-left array cell ``a_11`` therefore lands on
``(1, 0)`` and both frozen corners land on polygon edges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .drh import LatticePath, build_array
from .quiver import Seed

__all__ = [
    "Staircase",
    "Worm",
    "build_staircase",
    "worm_operation",
    "worm_to_triangulation",
    "diagonals_cross",
    "flip",
    "subsk",
    "initial_worm",
    "is_triangulation",
    "LatticePointFC",
    "LatticeFC",
    "lattice_fc",
    "WormQuivers",
    "propose_worm_quiver",
    "render_staircase",
]

Cell = tuple  # (col, row) residues


def _norm(cell, n) -> tuple[int, int]:
    return (cell[0] % n, cell[1] % n)


@dataclass(frozen=True)
class Staircase:
    """Staircase of a lattice path ``lam`` (one fundamental domain)."""

    path: LatticePath

    @property
    def l(self) -> int:
        return len(self.path)

    @property
    def n(self) -> int:
        return self.l + 4

    # -- cells and diagonals ----------------------------------------------
    def contains(self, cell: Cell) -> bool:
        return (cell[0] - cell[1]) % self.n not in (self.n - 1, 0, 1)

    def norm(self, cell: Cell) -> tuple[int, int]:
        return _norm(cell, self.n)

    def diagonal(self, cell: Cell) -> frozenset:
        c = self.norm(cell)
        return frozenset(c)

    def transpose(self, cell: Cell) -> tuple[int, int]:
        return self.norm((cell[1], cell[0]))

    @cached_property
    def cells(self) -> frozenset:
        n = self.n
        return frozenset((i, j) for i in range(n) for j in range(n) if self.contains((i, j)))

    def from_array(self, cell: tuple[int, int]) -> tuple[int, int]:
        """Staircase cell of the array cell ``a_{ij}``."""
        i, j = cell
        return self.norm((i, self.n + 1 - j))

    def to_array(self, cell: Cell) -> tuple[int, int] | None:
        """Array cell sitting on a staircase cell, if any."""
        return self._array_of.get(self.norm(cell))

    @cached_property
    def _array_of(self) -> dict:
        arr = build_array(self.path)
        return {self.from_array(c): c for c in arr.cells}

    @cached_property
    def drh_cells(self) -> frozenset:
        """Staircase cells of the mutable array cells (corners excluded)."""
        arr = build_array(self.path)
        corners = {(1, 1), (arr.p, arr.q)}
        return frozenset(self.from_array(c) for c in arr.cells if c not in corners)

    @cached_property
    def transpose_cells(self) -> frozenset:
        return frozenset(self.transpose(c) for c in self.drh_cells)

    # -- row and column labels ----------------------------------------------
    def start_vertex(self, t: int) -> int:
        """Row (polygon vertex) labelled by ``W^t`` as a starting letter."""
        lam = self.path
        before = lam.letters[: t - 1]
        if lam.letter(t) == "E":
            return (1 + before.count("E")) % self.n
        return (self.n - before.count("N")) % self.n

    def end_vertex(self, t: int) -> int:
        """Column (polygon vertex) labelled by ``W^t`` as a finishing letter."""
        lam = self.path
        upto = lam.letters[:t]
        if lam.letter(t) == "E":
            return (upto.count("E") + 2) % self.n
        return (self.n - 1 - upto.count("N")) % self.n

    @cached_property
    def row_labels(self) -> dict:
        """Map row residue -> letter index ``t``."""
        return {self.start_vertex(t): t for t in range(1, self.l + 1)}

    @cached_property
    def col_labels(self) -> dict:
        """Map column residue -> letter index ``t``."""
        return {self.end_vertex(t): t for t in range(1, self.l + 1)}

    def w_cell(self, r: int, s: int) -> tuple[int, int]:
        """The W-cell whose row is labelled ``W^r`` and column ``W^s``."""
        return (self.end_vertex(s), self.start_vertex(r))

    @cached_property
    def w_cells(self) -> frozenset:
        return frozenset(self.w_cell(r, s) for r in range(1, self.l + 1) for s in range(r, self.l + 1))

    def subsk(self, cell: Cell) -> tuple[int, int]:
        """``(r, s)`` with ``Subsk(cell) = W^r ... W^s``.

        Raises
        ------
        ValueError
            If the cell is not in ``W_lambda``.
        """
        c = self.norm(cell)
        if c not in self.w_cells:
            raise ValueError(f"cell {cell} is not in W")
        return self.row_labels[c[1]], self.col_labels[c[0]]

    def region(self, cell: Cell) -> str:
        """``'drh'``, ``'transpose'``, ``'W'``, ``'W-transpose'`` or ``'edge'``."""
        c = self.norm(cell)
        if not self.contains(c):
            return "edge"
        if c in self.drh_cells:
            return "drh"
        if c in self.transpose_cells:
            return "transpose"
        if c in self.w_cells:
            return "W"
        return "W-transpose"

    # -- band coordinates (for pictures and lattice-point geometry) -------
    def band(self, cell: Cell) -> tuple[int, int]:
        """Integer coordinates with ``col + 2 <= row <= col + n - 2`` and ``0 <= col < n``."""
        i, j = self.norm(cell)
        while j < i + 2:
            j += self.n
        return i, j


def build_staircase(path: LatticePath | str) -> Staircase:
    if isinstance(path, str):
        path = LatticePath.parse(path)
    return Staircase(path)


def subsk(st: Staircase, cell: Cell) -> tuple[int, int]:
    return st.subsk(cell)


# -- worms ---------------------------------------------------------------


@dataclass(frozen=True)
class Worm:
    """Monotone chain ``c_1 .. c_{l+1}`` of staircase cells (residues)."""

    cells: tuple
    n: int = field(compare=False)

    def steps(self) -> list[str]:
        """``'E'`` (column +1) or ``'N'`` (row -1) for each consecutive pair."""
        out = []
        for a, b in zip(self.cells, self.cells[1:]):
            d = ((b[0] - a[0]) % self.n, (b[1] - a[1]) % self.n)
            if d == (1, 0):
                out.append("E")
            elif d == (0, self.n - 1):
                out.append("N")
            else:
                raise ValueError(f"cells {a}, {b} are not an E/N step apart")
        return out

    def kind(self, idx: int) -> str:
        """``'start'``, ``'end'``, ``'NE'``, ``'EN'`` or ``'straight'`` (idx is 1-based)."""
        st = self.steps()
        m = len(self.cells)
        if idx == 1:
            return "start"
        if idx == m:
            return "end"
        a, b = st[idx - 2], st[idx - 1]
        if a == b:
            return "straight"
        return a + b

    def is_valid(self, staircase: Staircase) -> bool:
        if len(self.cells) != staircase.l + 1:
            return False
        if not all(staircase.contains(c) for c in self.cells):
            return False
        try:
            self.steps()
        except ValueError:
            return False
        # starts next to the lower boundary path, ends next to the upper one
        c1, cl = self.cells[0], self.cells[-1]
        return (c1[1] - c1[0]) % self.n == self.n - 2 and (cl[1] - cl[0]) % self.n == 2


def initial_worm(path: LatticePath | str) -> Worm:
    """The bug path ``M(lambda)`` placed in the staircase."""
    from .drh import bug_path

    if isinstance(path, str):
        path = LatticePath.parse(path)
    st = Staircase(path)
    return Worm(tuple(st.from_array(c) for c in bug_path(path)), st.n)


def worm_operation(w: Worm, index: int) -> Worm:
    """Apply the worm operation at ``c_index`` (1-based).

    Raises
    ------
    ValueError
        If ``c_index`` is an interior cell that is not a bend.
    """
    n = w.n
    kind = w.kind(index)
    st = w.steps()
    q, r = w.cells[index - 1]
    if kind == "NE":
        new = (q + 1, r + 1)
    elif kind == "EN":
        new = (q - 1, r - 1)
    elif kind == "start":
        # a one-cell worm (l = 0) walks one diagonal step down
        new = (q + 1, r + 1) if not st or st[0] == "E" else (q - 1, r - 1)
    elif kind == "end":
        new = (q + 1, r + 1) if st[-1] == "N" else (q - 1, r - 1)
    else:
        raise ValueError(f"c_{index} is neither a bend nor an endpoint")
    cells = list(w.cells)
    cells[index - 1] = _norm(new, n)
    return Worm(tuple(cells), n)


def diagonals_cross(d1: frozenset, d2: frozenset, n: int) -> bool:
    a, b = sorted(d1)
    c, d = sorted(d2)
    if len({a, b, c, d}) < 4:
        return False
    inside = lambda x: a < x < b
    return inside(c) != inside(d)


def worm_to_triangulation(w: Worm) -> frozenset:
    """The set of polygon diagonals of the worm's cells."""
    return frozenset(frozenset(c) for c in w.cells)


def is_triangulation(diags: Iterable[frozenset], n: int) -> bool:
    ds = list(diags)
    if len(ds) != n - 3 or len(set(ds)) != len(ds):
        return False
    for d in ds:
        a, b = sorted(d)
        if (b - a) % n in (0, 1, n - 1):
            return False
    return not any(diagonals_cross(x, y, n) for k, x in enumerate(ds) for y in ds[k + 1 :])


def flip(tri: frozenset, d: frozenset, n: int) -> frozenset:
    """Flip the diagonal ``d`` of a triangulation of the ``n``-gon."""
    if d not in tri:
        raise ValueError("diagonal not in triangulation")
    edges = set(tri) | {frozenset((k, (k + 1) % n)) for k in range(n)}
    a, b = sorted(d)
    apex = []
    for x in range(n):
        if x in (a, b):
            continue
        if frozenset((a, x)) in edges and frozenset((b, x)) in edges:
            apex.append(x)
    # the two triangles on either side of d have apexes on opposite sides
    side = lambda x: a < x < b
    left = [x for x in apex if side(x)]
    right = [x for x in apex if not side(x)]
    # among candidates keep the ones whose triangle is empty (no crossing diagonal)
    def empty(x):
        return not any(diagonals_cross(frozenset((a, x)), e, n) or diagonals_cross(frozenset((b, x)), e, n) for e in tri)

    left = [x for x in left if empty(x)]
    right = [x for x in right if empty(x)]
    if len(left) != 1 or len(right) != 1:
        raise AssertionError("diagonal is not inside exactly two triangles")
    return frozenset((set(tri) - {d}) | {frozenset((left[0], right[0]))})


# -- lattice-point frozen coefficients -------------------------------------
#
# A lattice point is a vertex ``(X, Y)`` of the cell grid (residues mod n);
# cell ``(c, r)`` has corners ``(c..c+1, r..r+1)``, so the point with
# upper-left cell ``(c, r)`` is ``(c + 1, r + 1)``.  Coefficients are Laurent
# monomials over ``Delta_0 .. Delta_{l+2}``, stored as ``{index: exponent}``.


@dataclass(frozen=True)
class LatticePointFC:
    """Frozen coefficient ``FC(u)`` at a lattice point."""

    point: tuple
    value: tuple  # sorted ((index, exponent), ...)
    special: bool
    step: str

    def as_dict(self) -> dict:
        return dict(self.value)

    def label(self) -> str:
        """Digits of the numerator, then ``/`` and the denominator if any."""
        num = "".join(str(t) * e for t, e in self.value if e > 0)
        den = "".join(str(t) * -e for t, e in self.value if e < 0)
        return f"{num}/{den}" if den else num


def _mono(*parts: dict, inv: Iterable[dict] = ()) -> dict:
    out: dict = {}
    for p in parts:
        for t, e in p.items():
            out[t] = out.get(t, 0) + e
    for p in inv:
        for t, e in p.items():
            out[t] = out.get(t, 0) - e
    return {t: e for t, e in out.items() if e}


def _freeze(m: dict) -> tuple:
    return tuple(sorted(m.items()))


def _square_cells(st: Staircase, u) -> tuple:
    """``(m11, m12, m21, m22)`` around the point ``u``."""
    X, Y = u
    return tuple(st.norm(c) for c in ((X - 1, Y - 1), (X, Y - 1), (X - 1, Y), (X, Y)))


class LatticeFC:
    """All lattice-point coefficients of one staircase.

    Built once per path; :meth:`at` classifies and evaluates a single point.
    """

    def __init__(self, path: LatticePath | str):
        if isinstance(path, str):
            path = LatticePath.parse(path)
        self.path = path
        self.st = Staircase(path)
        self._step1 = self._build_step1()

    def _build_step1(self) -> dict:
        st, lam = self.st, self.path
        arr = build_array(lam)
        n = st.n
        out: dict = {}

        def put(pt, t):
            v = self._step1_point(pt)
            out[v] = {t: 1}
            out[st.transpose(v)] = {t: 1}

        for t, pt in enumerate(lam.points):
            put(pt, t + 1)
        put((0, 0), 0)
        put((arr.p, arr.q), len(lam) + 2)
        return out

    def _step1_point(self, pt) -> tuple:
        """Staircase vertex of the array lattice point ``pt``."""
        return self.st.norm((pt[0] + 1, self.st.n + 1 - pt[1]))

    def step1_points(self) -> dict:
        return {u: dict(m) for u, m in self._step1.items()}

    def _walk(self, u, d) -> dict:
        X, Y = u
        for _ in range(self.st.n):
            X, Y = X + d[0], Y + d[1]
            m = self._step1.get(self.st.norm((X, Y)))
            if m is not None:
                return m
        raise AssertionError(f"no Step-1 point from {u} in direction {d}")

    def in_staircase(self, u) -> bool:
        return all(self.st.contains(c) for c in _square_cells(self.st, u))

    def at(self, u) -> LatticePointFC:
        """``FC(u)`` for a point whose 2x2 square lies in the staircase.

        Raises
        ------
        ValueError
            If ``u`` is neither the center of such a square nor one of the
            extra Step-1 points.
        """
        st = self.st
        u = st.norm(u)
        if not self.in_staircase(u):
            if u in self._step1:
                return LatticePointFC(u, _freeze(self._step1[u]), False, "1")
            raise ValueError(f"lattice point {u} is not inside the staircase")
        regs = [st.region(c) for c in _square_cells(st, u)]
        if set(regs) <= {"W", "W-transpose"}:
            return self._step2(u, regs)
        if set(regs) == {"drh"} or set(regs) == {"transpose"}:
            return LatticePointFC(u, _freeze(self._step1[u]), False, "1")
        if "W-transpose" in regs:
            # reflect so that the boundary is met from the W side
            t = self.at(st.transpose(u))
            return LatticePointFC(u, t.value, t.special, t.step)
        if "drh" in regs and "transpose" in regs:
            raise AssertionError(f"point {u} touches both array copies")
        return self._step3(u, regs)

    def _step2(self, u, regs) -> LatticePointFC:
        from .standardize import Quadruple, quadruple_factor

        st = self.st
        if set(regs) == {"W-transpose"}:
            u = st.transpose(u)
        elif set(regs) != {"W"}:
            raise AssertionError(f"point {u} mixes W and its transpose")
        X, Y = u
        m: dict = {}
        for t in quadruple_factor(Quadruple(st, (X - 1, Y - 1))):
            m[t] = m.get(t, 0) + 1
        return LatticePointFC(u, _freeze(m), False, "2")

    def _step3(self, u, regs) -> LatticePointFC:
        X, Y = u
        S1 = self._step1
        st = self.st
        g = lambda v: S1[st.norm(v)]
        a = [r in ("drh",) for r in regs]
        b = [r == "transpose" for r in regs]
        if a == [True, True, True, False]:
            m = _mono(g((X, Y - 1)), g((X - 1, Y)), inv=[g((X - 1, Y - 1))])
            return LatticePointFC(u, _freeze(m), True, "3.1")
        if b == [False, True, True, True]:
            m = _mono(g((X + 1, Y)), g((X, Y + 1)), inv=[g((X + 1, Y + 1))])
            return LatticePointFC(u, _freeze(m), True, "3.1'")
        up, left, down, right = (0, -1), (-1, 0), (0, 1), (1, 0)
        if a == [True, True, False, False]:
            case, m = "3.2", _mono(self._walk(u, up), self._walk(u, left))
        elif a == [True, False, True, False]:
            case, m = "3.3", _mono(self._walk(u, up), self._walk(u, left))
        elif a == [True, False, False, False]:
            case, m = "3.4", _mono(self._walk(u, up), self._walk(u, left), g((X - 1, Y - 1)))
        elif b == [False, False, True, True]:
            case, m = "3.2'", _mono(self._walk(u, down), self._walk(u, right))
        elif b == [False, True, False, True]:
            case, m = "3.3'", _mono(self._walk(u, down), self._walk(u, right))
        elif b == [False, False, False, True]:
            case, m = "3.4'", _mono(self._walk(u, down), self._walk(u, right), g((X + 1, Y + 1)))
        else:
            raise AssertionError(f"unclassified boundary point {u}: {regs}")
        return LatticePointFC(u, _freeze(m), False, case)

    def points(self) -> list:
        """Every point with a coefficient: square centers plus extra Step-1 points."""
        n = self.st.n
        pts = {(X, Y) for X in range(n) for Y in range(n) if self.in_staircase((X, Y))}
        pts |= set(self._step1)
        return sorted(pts)

    def all(self) -> dict:
        return {u: self.at(u) for u in self.points()}


def lattice_fc(path: LatticePath | str, u) -> LatticePointFC:
    """``FC(u)`` at one lattice point; see :class:`LatticeFC`."""
    return LatticeFC(path).at(u)


# -- proposed worm quivers ---------------------------------------------------


def _cell_corner(cell, which: str) -> tuple:
    c, r = cell
    return {"UL": (c, r), "UR": (c + 1, r), "LL": (c, r + 1), "LR": (c + 1, r + 1)}[which]


def _after_mutation(fc_a: dict, fc_k: dict, b_ak: int) -> dict:
    """``fc(A)`` after mutating at ``k``, given ``b_{A,k}``."""
    out = dict(fc_a)
    for t, e in fc_k.items():
        out[t] = out.get(t, 0) + (abs(b_ak) * e + b_ak * abs(e)) // 2
    return {t: e for t, e in out.items() if e}


class WormQuivers:
    """Proposed quivers ``Q_w`` for the worms of one staircase.

    Mutable arrows follow the right/above rule of the initial quiver.
    Frozen coefficients (``{Delta index: exponent}``, out-arrows positive)
    are given at bends by lattice-point coefficients, at a starting cell by
    the degree-triple cases, at a finishing cell through the
    reverse-transpose symmetry, and at straight interior cells by mutating
    an adjacent worm that bends there.
    """

    def __init__(self, path: LatticePath | str):
        from .standardize import fill_staircase

        if isinstance(path, str):
            path = LatticePath.parse(path)
        self.path = path
        self.fcs = LatticeFC(path)
        self.st = self.fcs.st
        self.fill = fill_staircase(path)
        arr = build_array(path)
        st = self.st
        l = len(path)
        self._frozen_cells = {}
        for cell, t in (((1, 1), 0), ((arr.p, arr.q), l + 2)):
            s = st.from_array(cell)
            self._frozen_cells[s] = t
            self._frozen_cells[st.transpose(s)] = t
        pts = [self.fcs._step1_point(pt) for pt in path.points]
        self._centers = set(pts) | {st.transpose(p) for p in pts}

    # -- helpers ------------------------------------------------------------
    def FC(self, u) -> dict:
        return self.fcs.at(self.st.norm(u)).as_dict()

    def deg(self, cell) -> int:
        return self.fill[self.st.norm(cell)].degree()

    def zeta(self, cell) -> dict:
        t = self._frozen_cells.get(self.st.norm(cell))
        if t is None:
            raise AssertionError(f"cell {cell} carries no frozen variable")
        return {t: 1}

    def _walk_to_center(self, u, d) -> tuple:
        X, Y = u
        for _ in range(self.st.n + 1):
            if self.st.norm((X, Y)) in self._centers:
                return (X, Y)
            X, Y = X + d[0], Y + d[1]
        raise AssertionError(f"no array center from {u} in direction {d}")

    def _rt(self, cells: tuple) -> tuple:
        """Reverse-transpose image of a cell sequence."""
        return tuple(self.st.transpose(c) for c in reversed(cells))

    # -- proposals ------------------------------------------------------------
    def arrows(self, w: Worm) -> list:
        out = []
        for a, b in zip(w.cells, w.cells[1:]):
            if self.st.norm((a[0] + 1, a[1])) == b:
                out.append((a, b))
            else:
                out.append((b, a))
        return out

    def fc(self, cells: tuple, i: int) -> dict:
        """Proposed ``fc_{Q_w}(c_i)`` (``i`` 1-based) for the worm ``cells``."""
        st = self.st
        m = len(cells)
        if m == 1:
            return self._single(cells[0])
        if i == m:
            return self.fc(self._rt(cells), 1)
        if i == 1:
            return self._start(cells[0], cells[1])
        prev, cur, nxt = cells[i - 2], cells[i - 1], cells[i]
        right = lambda a, b: st.norm((a[0] + 1, a[1])) == b
        s1 = "E" if right(prev, cur) else "N"
        s2 = "E" if right(cur, nxt) else "N"
        if s1 == "E" and s2 == "N":
            return self.FC(_cell_corner(cur, "UL"))
        if s1 == "N" and s2 == "E":
            return {t: -e for t, e in self.FC(_cell_corner(cur, "LR")).items()}
        if s1 == "N":
            return self.fc(self._rt(cells), m + 1 - i)
        return self._straight(cells, i)

    def _single(self, cell) -> dict:
        # l = 0: the cells of a_12 carry a11 a22 / Delta_1, those of a_21 the inverse
        a12 = self.st.diagonal(self.st.from_array((1, 2)))
        sign = 1 if self.st.diagonal(cell) == a12 else -1
        return {0: sign, 1: -sign, 2: sign}

    def _straight(self, cells: tuple, i: int) -> dict:
        """Horizontal straight cell: mutate the worm turning up at ``c_i``."""
        st = self.st
        cur = cells[i - 1]
        up = st.norm((cur[0], cur[1] - 1))
        # a worm through c_{i-1}, c_i, c* (and c** if c* is not its end); the
        # tail is shifted up a row and truncated, since fc only sees neighbours
        alt = cells[:i] + (up,) + tuple(st.norm((c[0], c[1] - 1)) for c in cells[i : len(cells) - 1])
        fc_cur = self.fc(alt, i)
        fc_up = self.fc(alt, i + 1)
        return _after_mutation(fc_cur, fc_up, -1)

    def straight_from_below(self, cells: tuple, i: int) -> dict:
        """The same coefficient as :meth:`_straight`, reached from the worm
        that comes up into ``c_i`` from the cell below it instead."""
        st = self.st
        cur = cells[i - 1]
        down = st.norm((cur[0], cur[1] + 1))
        alt = tuple(st.norm((c[0], c[1] + 1)) for c in cells[1 : i - 1]) + (down,) + cells[i - 1 :]
        return _after_mutation(self.fc(alt, i), self.fc(alt, i - 1), 1)

    def _start(self, c1, c2) -> dict:
        st = self.st
        if st.norm((c1[0] + 1, c1[1])) != c2:
            # c2 above c1: mutate from the worm starting at the cell left of c2
            xi = st.norm((c2[0] - 1, c2[1]))
            return {t: -e for t, e in self._start(xi, c2).items()}
        gamma = st.norm((c2[0], c2[1] + 1))
        d = (self.deg(c1), self.deg(c2), self.deg(gamma))
        inv = lambda m: {t: -e for t, e in m.items()}
        if d == (1, 1, 1):
            return _mono(self.zeta((c1[0], c1[1] + 1)), inv=[self.FC(_cell_corner(c1, "LR"))])
        if d == (1, 1, 2):
            return _mono(
                self.FC(_cell_corner(c1, "UL")),
                inv=[self.zeta((c1[0] - 1, c1[1])), self.FC(_cell_corner(c1, "UR"))],
            )
        if d == (1, 3, 2):
            u = self._walk_to_center(_cell_corner(c1, "UR"), (0, -1))
            return inv(_mono(self.zeta((c1[0] - 1, c1[1])), self.FC(u)))
        if d == (2, 1, 1):
            return _mono(
                self.FC(_cell_corner(gamma, "LR")),
                inv=[self.zeta((gamma[0], gamma[1] + 1)), self.FC(_cell_corner(gamma, "UR"))],
            )
        if d == (2, 3, 1):
            u = self._walk_to_center(_cell_corner(gamma, "UR"), (1, 0))
            return inv(_mono(self.zeta((gamma[0], gamma[1] + 1)), self.FC(u)))
        if d == (2, 2, 2):
            u1 = self._walk_to_center(_cell_corner(c1, "UR"), (0, -1))
            u2 = (u1[0] - 1, u1[1])
            u3 = (u1[0] - 2, u1[1])
            return _mono(self.FC(u2), inv=[self.FC(u1), self.FC(u3)])
        if d == (2, 4, 2):
            u1 = self._walk_to_center(_cell_corner(c1, "UL"), (0, -1))
            u2 = self._walk_to_center(_cell_corner(c2, "UL"), (0, -1))
            v1 = (u1[0] - 1, u1[1])
            return inv(_mono(self.FC(v1), self.FC(u2)))
        if d == (1, 2, 1):
            return {0: -1, len(self.path) + 2: -1}
        raise AssertionError(f"unexpected degree triple {d} at start cell {c1}")

    def propose(self, w: Worm) -> tuple[list, dict]:
        """``(mutable arrows, {cell: fc})`` of ``Q_w``."""
        cells = tuple(self.st.norm(c) for c in w.cells)
        return self.arrows(w), {c: self.fc(cells, i + 1) for i, c in enumerate(cells)}


def propose_worm_quiver(path: LatticePath | str, w: Worm) -> Seed:
    """The proposed seed ``Q_w`` with variables ``e(c)`` and frozen ``Delta``'s."""
    from .drh import frozen_minors
    from .quiver import Quiver, Seed

    wq = WormQuivers(path)
    arrows, fcs = wq.propose(w)
    l = len(wq.path)
    D = lambda t: ("D", t)
    arr_list = list(arrows)
    for c, m in fcs.items():
        for t, e in m.items():
            arr_list.extend([(c, D(t))] * e if e > 0 else [(D(t), c)] * -e)
    cells = [wq.st.norm(c) for c in w.cells]
    q = Quiver(cells, [D(t) for t in range(l + 3)], arr_list)
    deltas = frozen_minors(build_array(wq.path))
    x = {c: wq.fill[c] for c in cells}
    x.update({D(t): deltas[t] for t in range(l + 3)})
    return Seed(q, x)


_REGION_CODE = {"drh": "A", "transpose": "T", "W": "W", "W-transpose": "w", "edge": "."}


def render_staircase(path: LatticePath | str, values: bool = False) -> str:
    """ASCII picture of one period of the staircase, row 0 on top.

    Cells are marked ``A`` (array), ``T`` (transposed array), ``W``,
    ``w`` (transposed ``W``) or ``.`` (outside the band).  With ``values``
    the array cells show ``a_ij`` and the ``W`` cells their subskeleton
    ranges ``r-s``; the frozen corners ``a_11`` and ``a_pq``, which lie on
    the band's boundary, are shown too.
    """
    st = build_staircase(path)
    rows = []
    for y in range(st.n):
        row = []
        for x in range(st.n):
            c = (x, y)
            code = _REGION_CODE[st.region(c)]
            if values and st.to_array(c) is not None:
                i, j = st.to_array(c)
                code = f"a{i}{j}"
            elif values and code == "W":
                r, s = st.subsk(c)
                code = f"{r}-{s}"
            row.append(code)
        rows.append(row)
    w = max(len(c) for r in rows for c in r)
    return "\n".join(" ".join(c.rjust(w) for c in r) for r in rows)
