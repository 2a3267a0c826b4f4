"""North-East lattice paths, the lambda-array and the initial DRH seed.

Cells use axis coordinates: cell ``(i, j)`` is the unit square whose
upper-right vertex is the lattice point ``(i, j)``, so ``(1, 1)`` is the
lower-left corner cell.  The path starts at the lattice point ``(1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .exactalg import Polynomial, const, poly_det, var
from .quiver import Quiver, Seed

__all__ = [
    "LatticePath",
    "DrhArray",
    "build_array",
    "frozen_minors",
    "bug_path",
    "initial_quiver",
    "check_identities_D1_D5",
    "frozen_label",
    "render_array",
]


@dataclass(frozen=True)
class LatticePath:
    """A word over ``{N, E}``; letter ``t`` (1-based) is written ``W^t``."""

    letters: str = ""

    def __post_init__(self):
        bad = set(self.letters) - {"N", "E"}
        if bad:
            raise ValueError(f"lattice path letters must be N or E, got {sorted(bad)}")

    @classmethod
    def parse(cls, text: str) -> "LatticePath":
        t = text.strip().upper()
        if t in ("", "-", "EMPTY", "Ø", "∅"):
            t = ""
        return cls(t)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters or "∅"

    def letter(self, t: int) -> str:
        """Letter ``W^t`` for ``1 <= t <= l``."""
        return self.letters[t - 1]

    def transpose(self) -> "LatticePath":
        flip = {"N": "E", "E": "N"}
        return LatticePath("".join(flip[c] for c in reversed(self.letters)))

    @property
    def n_east(self) -> int:
        return self.letters.count("E")

    @property
    def n_north(self) -> int:
        return self.letters.count("N")

    @cached_property
    def points(self) -> tuple[tuple[int, int], ...]:
        """Lattice points ``v_0 .. v_l`` with ``v_0 = (1, 1)``."""
        x, y = 1, 1
        pts = [(x, y)]
        for c in self.letters:
            if c == "E":
                x += 1
            else:
                y += 1
            pts.append((x, y))
        return tuple(pts)

    def point_index(self, pt: tuple[int, int]) -> int | None:
        try:
            return self.points.index(pt)
        except ValueError:
            return None

    def subword(self, r: int, s: int) -> "LatticePath":
        return LatticePath(self.letters[r - 1 : s])

    def label(self, r: int, s: int) -> str:
        """Human-readable form such as ``N^2E^3N^4``."""
        return "".join(f"{self.letter(t)}^{t}" for t in range(r, s + 1))


def square_cells(pt: tuple[int, int]) -> tuple[tuple[int, int], ...]:
    """Cells of the 2x2 square centered at a lattice point (LL, LR, UL, UR)."""
    x, y = pt
    return ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1))


@dataclass(frozen=True)
class DrhArray:
    """The lambda-array: the union of the 2x2 squares along the path."""

    path: LatticePath
    cells: frozenset
    values: dict

    @property
    def p(self) -> int:
        return self.path.n_east + 2

    @property
    def q(self) -> int:
        return self.path.n_north + 2

    def value(self, cell: tuple[int, int]) -> Polynomial:
        return self.values[cell]

    def square(self, pt: tuple[int, int]) -> list[list[Polynomial]]:
        """Square centered at ``pt`` laid out as displayed, top row first."""
        x, y = pt
        a = self.values
        return [[a[(x, y + 1)], a[(x + 1, y + 1)]], [a[(x, y)], a[(x + 1, y)]]]

    def sorted_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells, key=lambda c: (c[1], c[0]))


def build_array(path: LatticePath | str) -> DrhArray:
    """Cells ``C(lambda)`` carrying the initial indeterminates ``a[i,j]``."""
    if isinstance(path, str):
        path = LatticePath.parse(path)
    cells = set()
    for pt in path.points:
        cells.update(square_cells(pt))
    return DrhArray(path, frozenset(cells), {c: var(*c) for c in cells})


def frozen_minors(arr: DrhArray) -> list[Polynomial]:
    """``[Delta_0, Delta_1, ..., Delta_{l+2}]``.

    ``Delta_i`` for ``1 <= i <= l+1`` is the determinant of the square at
    ``v_{i-1}``; ``Delta_0 = a_11`` and ``Delta_{l+2} = a_pq``.
    """
    out = [arr.values[(1, 1)]]
    for pt in arr.path.points:
        out.append(poly_det(arr.square(pt)))
    out.append(arr.values[(arr.p, arr.q)])
    return out


def frozen_label(t: int, l: int, p: int | None = None, q: int | None = None) -> str:
    if t == 0:
        return "a11"
    if t == l + 2:
        return f"a{p}{q}" if p is not None else "apq"
    return f"Δ{t}"


def bug_path(path: LatticePath | str) -> list[tuple[int, int]]:
    """Cells visited by the bug from ``c_12`` until it touches ``c_pq``.

    The bug alternates maximal runs: right as far as the array allows, then
    up, then right again, stopping as soon as it is edge-adjacent to the
    upper-right corner cell.
    """
    arr = build_array(path)
    target = (arr.p, arr.q)

    def adjacent(c):
        return abs(c[0] - target[0]) + abs(c[1] - target[1]) == 1

    cur = (1, 2)
    out = [cur]
    direction = "E"
    guard = 0
    while not adjacent(cur):
        step = (1, 0) if direction == "E" else (0, 1)
        nxt = (cur[0] + step[0], cur[1] + step[1])
        if nxt in arr.cells and nxt != target:
            cur = nxt
            out.append(cur)
        else:
            direction = "N" if direction == "E" else "E"
        guard += 1
        if guard > 4 * len(arr.cells) + 8:
            raise RuntimeError("bug path did not terminate")
    if len(out) != len(arr.path) + 1:
        raise AssertionError(f"bug path has {len(out)} cells, expected {len(arr.path) + 1}")
    return out


def _step(a, b) -> str:
    d = (b[0] - a[0], b[1] - a[1])
    if d == (1, 0):
        return "E"
    if d == (0, 1):
        return "N"
    raise ValueError(f"cells {a} and {b} are not an N/E step apart")


def initial_quiver(path: LatticePath | str) -> Seed:
    """The initial DRH seed ``Q_lambda`` with its variables.

    Mutable vertices are the bug-path cells ``(i, j)``; frozen vertices are
    ``("D", t)`` for ``t = 0 .. l+2`` (``t = 0`` is ``a_11``, ``t = l+2`` is
    ``a_pq``).  Arrows between mutable cells point rightwards and downwards.
    Frozen arrows are placed by the local shape of the bug path at each cell,
    so that each one-step exchange is one of the identities D1-D5:

    * straight horizontal cell: in-arrow from the Delta of the right-hand
      corner and out-arrow to the left-hand corner, on whichever side (below
      or above) both corners lie on the path;
    * straight vertical cell: likewise with lower/upper corners on the left
      or right side;
    * right-then-up corner: out-arrow to the Delta of the upper-left corner;
    * up-then-right corner: in-arrow from the Delta of the lower-right corner.

    The frozen corners ``a_11`` and ``a_pq`` act as the virtual predecessor of
    the first cell and successor of the last.
    """
    if isinstance(path, str):
        path = LatticePath.parse(path)
    arr = build_array(path)
    l = len(path)
    worm = bug_path(path)
    deltas = frozen_minors(arr)
    D = lambda t: ("D", t)
    frozen = [D(t) for t in range(l + 3)]
    arrows: list[tuple] = []
    for a, b in zip(worm, worm[1:]):
        if _step(a, b) == "E":
            arrows.append((a, b))
        else:
            arrows.append((b, a))

    def delta_at(pt):
        t = path.point_index(pt)
        if t is None:
            raise AssertionError(f"lattice point {pt} is not on the path {path}")
        return D(t + 1)

    for k, c in enumerate(worm):
        x, y = c
        prev_dir = "N" if k == 0 else _step(worm[k - 1], c)  # a_11 sits below c_12
        if k == l:
            nxt_dir = _step(c, (arr.p, arr.q))
        else:
            nxt_dir = _step(c, worm[k + 1])
        LL, LR, UL, UR = (x - 1, y - 1), (x, y - 1), (x - 1, y), (x, y)
        on = lambda pt: path.point_index(pt) is not None
        if prev_dir == "E" and nxt_dir == "E":
            if on(LL) and on(LR):
                fin, fout = [LR], [LL]
            elif on(UL) and on(UR):
                fin, fout = [UR], [UL]
            else:
                raise AssertionError(f"no horizontal frozen pair at {c}")
        elif prev_dir == "N" and nxt_dir == "N":
            if on(LL) and on(UL):
                fin, fout = [LL], [UL]
            elif on(LR) and on(UR):
                fin, fout = [LR], [UR]
            else:
                raise AssertionError(f"no vertical frozen pair at {c}")
        elif prev_dir == "E" and nxt_dir == "N":
            fin, fout = [], [UL]
        else:
            fin, fout = [LR], []
        for pt in fin:
            arrows.append((delta_at(pt), c))
        for pt in fout:
            arrows.append((c, delta_at(pt)))
        if k == 0:
            arrows.append((c, D(0)))
        if k == l:
            arrows.append((c, D(l + 2)) if nxt_dir == "E" else (D(l + 2), c))
    quiver = Quiver(worm, frozen, arrows)
    x = {c: arr.values[c] for c in worm}
    for t in range(l + 3):
        x[D(t)] = deltas[t]
    names = {c: f"a{c[0]}{c[1]}" for c in worm}
    names.update({D(t): frozen_label(t, l, arr.p, arr.q) for t in range(l + 3)})
    return Seed(quiver, x, names)


def _det2(m):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def check_identities_D1_D5(entries: Iterable[Polynomial] | None = None) -> dict[str, bool]:
    """Check the five three-term determinantal identities.

    ``entries`` supplies six values ``a, b, c, d, e, f``; fresh indeterminates
    are used by default.  Returns a map from identity name to truth value.
    """
    if entries is None:
        a, b, c, d, e, f = (var(900 + k, 1) for k in range(6))
    else:
        a, b, c, d, e, f = entries
    out = {}
    # 2x2 array [[a, b], [c, d]]
    out["D1"] = a * d == _det2([[a, b], [c, d]]) + b * c
    # 2x3 array [[a, b, c], [d, e, f]]
    out["D2"] = b * _det2([[a, c], [d, f]]) == a * _det2([[b, c], [e, f]]) + c * _det2([[a, b], [d, e]])
    out["D3"] = e * _det2([[a, c], [d, f]]) == d * _det2([[b, c], [e, f]]) + f * _det2([[a, b], [d, e]])
    # 3x2 array [[a, d], [b, e], [c, f]]
    out["D4"] = b * _det2([[a, d], [c, f]]) == a * _det2([[b, e], [c, f]]) + c * _det2([[a, d], [b, e]])
    out["D5"] = e * _det2([[a, d], [c, f]]) == d * _det2([[b, e], [c, f]]) + f * _det2([[a, d], [b, e]])
    return out


def render_array(arr: DrhArray, marks: Iterable[tuple[int, int]] = ()) -> str:
    """ASCII picture of the array, top row first; marked cells get a star."""
    marks = set(marks)
    width = max(len(f"a{i}{j}") for i, j in arr.cells) + 1
    lines = []
    for j in range(arr.q, 0, -1):
        row = []
        for i in range(1, arr.p + 1):
            if (i, j) in arr.cells:
                s = f"a{i}{j}" + ("*" if (i, j) in marks else "")
            else:
                s = "."
            row.append(s.ljust(width))
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines)
