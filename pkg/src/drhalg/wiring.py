"""Double wiring diagrams, chamber minors and the DRH construction.

Strands are numbered ``1..n`` from the bottom at their left endpoints.  A
crossing is a colour (``"red"`` or ``"blue"``) and a level ``h`` in
``1..n-1``; it swaps the wires of that colour at positions ``h`` and
``h + 1`` (positions counted from the bottom).  A chamber at level ``h``
carries the sets of red and blue wires below it; its minor uses the red
labels as columns and the blue labels as rows of a matrix written in axis
coordinates (``x[i,j]`` is column ``i``, row ``j`` from the bottom).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .drh import LatticePath, bug_path, build_array, initial_quiver
from .exactalg import Polynomial, poly_det, var
from .quiver import Quiver, Seed, freeze_and_prune, seeds_equivalent

__all__ = [
    "Crossing",
    "Chamber",
    "DoubleWiringDiagram",
    "chamber_minors",
    "wiring_quiver",
    "balance",
    "correspondence_options",
    "all_correspondences",
    "drh_to_wiring",
    "wiring_ok",
    "check_drh_wiring_equivalence",
    "render_wiring",
    "diagram_to_dict",
]

RED, BLUE = "red", "blue"


@dataclass(frozen=True)
class Crossing:
    color: str
    level: int

    def __post_init__(self):
        if self.color not in (RED, BLUE):
            raise ValueError(f"crossing colour must be red or blue, got {self.color!r}")
        if self.level < 1:
            raise ValueError("crossing level must be positive")


@dataclass(frozen=True)
class Chamber:
    """Chamber ``index`` (0 = leftmost) at ``level``, with its label sets."""

    level: int
    index: int
    red: frozenset
    blue: frozenset
    left: int | None  # position of the bounding crossing in the sequence
    right: int | None

    @property
    def key(self) -> tuple[int, int]:
        return (self.level, self.index)

    @property
    def bounded(self) -> bool:
        return self.left is not None and self.right is not None


@dataclass(frozen=True)
class DoubleWiringDiagram:
    n: int
    crossings: tuple

    def __post_init__(self):
        for c in self.crossings:
            if c.level >= self.n:
                raise ValueError(f"level {c.level} out of range for {self.n} strands")

    @classmethod
    def from_word(cls, n: int, word: Iterable) -> "DoubleWiringDiagram":
        """Build from ``(colour, level)`` pairs or signed levels (red > 0)."""
        out = []
        for w in word:
            if isinstance(w, Crossing):
                out.append(w)
            elif isinstance(w, int):
                out.append(Crossing(RED if w > 0 else BLUE, abs(w)))
            else:
                out.append(Crossing(*w))
        return cls(n, tuple(out))

    def count(self, color: str) -> int:
        return sum(1 for c in self.crossings if c.color == color)

    def permutations(self) -> dict:
        """Final wire order (bottom to top) of each colour."""
        pos = {RED: list(range(1, self.n + 1)), BLUE: list(range(1, self.n + 1))}
        for c in self.crossings:
            p = pos[c.color]
            p[c.level - 1], p[c.level] = p[c.level], p[c.level - 1]
        return pos

    def is_valid(self) -> bool:
        """Each pair of same-coloured wires crosses exactly once."""
        full = self.n * (self.n - 1) // 2
        rev = list(range(self.n, 0, -1))
        perms = self.permutations()
        return all(self.count(col) == full and perms[col] == rev for col in (RED, BLUE))

    @cached_property
    def chambers(self) -> tuple:
        """All chambers at levels ``1..n`` in left-to-right order per level.

        Level ``n`` is the single top chamber (the full determinant).
        """
        pos = {RED: list(range(1, self.n + 1)), BLUE: list(range(1, self.n + 1))}
        current = {h: 0 for h in range(1, self.n)}
        out = {}

        def snap(h, idx, left):
            out[(h, idx)] = [frozenset(pos[RED][:h]), frozenset(pos[BLUE][:h]), left, None]

        for h in range(1, self.n):
            snap(h, 0, None)
        for k, c in enumerate(self.crossings):
            p = pos[c.color]
            p[c.level - 1], p[c.level] = p[c.level], p[c.level - 1]
            h = c.level
            out[(h, current[h])][3] = k
            current[h] += 1
            snap(h, current[h], k)
        full = frozenset(range(1, self.n + 1))
        out[(self.n, 0)] = [full, full, None, None]
        return tuple(Chamber(h, i, *v) for (h, i), v in sorted(out.items()))

    def chamber(self, level: int, index: int) -> Chamber:
        for c in self.chambers:
            if c.key == (level, index):
                return c
        raise KeyError((level, index))


def _minor(rows: Iterable[int], cols: Iterable[int]) -> Polynomial:
    # displayed matrix: highest row on top
    rs = sorted(rows, reverse=True)
    cs = sorted(cols)
    return poly_det([[var(i, j) for i in cs] for j in rs])


def chamber_minors(d: DoubleWiringDiagram) -> dict:
    """Map chamber key -> minor with columns = red labels, rows = blue labels."""
    return {c.key: _minor(c.blue, c.red) for c in d.chambers}


def wiring_quiver(d: DoubleWiringDiagram) -> Seed:
    """The initial seed of the diagram (the bottom empty chamber omitted).

    Chambers ``(h, 0)``, the last chamber on each level and the top chamber
    are frozen.
    Writing ``k`` for the crossing left of a chamber (a virtual index
    ``-h`` for the leftmost chamber at level ``h``) and ``k+`` for the next
    crossing at the same level, two chambers ``k, l`` with ``p = max(k, l)``
    and ``q = min(k+, l+)`` are joined by

    * ``-sgn(k - l) eps(p)`` arrows if ``p = q``;
    * ``sgn(k - l) eps(p)`` arrows if ``p < q``, the levels are adjacent and
      ``eps(p) eps(q) (k - l)(k+ - l+) > 0``;

    where ``eps`` is ``+1`` on red crossings and ``-1`` on blue ones.  Across
    a red crossing the arrow runs left to right, across a blue one right to
    left.
    """
    m = len(d.crossings)
    eps = {k: (1 if c.color == RED else -1) for k, c in enumerate(d.crossings)}
    # chamber -> (k, k+, level); unbounded ends get virtual indices outside [0, m)
    ident = {}
    for ch in d.chambers:
        k = ch.left if ch.left is not None else -ch.level - m - 1  # virtual, left of everything
        kp = ch.right if ch.right is not None else m + 1
        ident[ch.key] = (k, kp, ch.level)

    def e(p):
        return eps.get(p, 0)

    keys = [c.key for c in d.chambers]
    mutable = [c.key for c in d.chambers if c.bounded]
    frozen = [c.key for c in d.chambers if not c.bounded]
    mset = set(mutable)
    arrows = []
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            ka, kb = keys[a], keys[b]
            if ka not in mset and kb not in mset:
                continue
            k, kp, hk = ident[ka]
            l, lp, hl = ident[kb]
            if abs(hk - hl) > 1 or k == l:
                continue
            p, q = max(k, l), min(kp, lp)
            s = 1 if k > l else -1
            val = 0
            if p == q:
                val = -s * e(p)
            elif p < q and hk != hl and e(p) * e(q) * (k - l) * (kp - lp) > 0:
                val = s * e(p)
            if val > 0:
                arrows.append((ka, kb))
            elif val < 0:
                arrows.append((kb, ka))
    x = chamber_minors(d)
    names = {c.key: f"({''.join(map(str, sorted(c.red)))},{''.join(map(str, sorted(c.blue)))})" for c in d.chambers}
    return Seed(Quiver(mutable, frozen, arrows), x, names)


# -- the DRH construction ----------------------------------------------------


def balance(path: LatticePath | str) -> LatticePath:
    """Append letters so that ``#E = #N`` (E's first, then N's)."""
    if isinstance(path, str):
        path = LatticePath.parse(path)
    e, n = path.n_east, path.n_north
    return LatticePath(path.letters + "N" * (e - n) + "E" * (n - e))


def _extended_worm(path: LatticePath) -> list:
    arr = build_array(path)
    return [(1, 1)] + bug_path(path) + [(arr.p, arr.q)]


def _edge_cells(a, b) -> tuple:
    """Cells sharing the skeleton edge ``a -> b`` (lattice points)."""
    (x, y), (x2, y2) = a, b
    if (x2, y2) == (x + 1, y):
        return ((x + 1, y), (x + 1, y + 1))
    return ((x, y + 1), (x + 1, y + 1))


def correspondence_options(path: LatticePath | str) -> list[list[int]]:
    """For each skeleton edge, the extended-worm indices of its adjacent cells."""
    if isinstance(path, str):
        path = LatticePath.parse(path)
    worm = _extended_worm(path)
    pts = path.points
    out = []
    for a, b in zip(pts, pts[1:]):
        out.append([worm.index(c) for c in _edge_cells(a, b) if c in worm])
    return out


def all_correspondences(path: LatticePath | str) -> list[tuple[int, ...]]:
    return [tuple(c) for c in product(*correspondence_options(path))]


def drh_to_wiring(path: LatticePath | str, choice: Sequence[int] | None = None) -> DoubleWiringDiagram:
    """The double wiring diagram of a balanced lattice path.

    ``choice[j]`` is the extended-worm index (0 = ``c_11``) of the cell
    attached to skeleton edge ``j``; the first option is used by default.
    The bottom row follows the extended worm, the second row the skeleton,
    and the higher levels are completed canonically (see :func:`_complete`).

    Raises
    ------
    ValueError
        If the path is unbalanced or the choice is not a valid correspondence.
    """
    if isinstance(path, str):
        path = LatticePath.parse(path)
    if path.n_east != path.n_north:
        raise ValueError(f"path {path} is unbalanced; extend it with balance() first")
    opts = correspondence_options(path)
    if choice is None:
        choice = [o[0] for o in opts]
    if len(choice) != len(opts) or any(c not in o for c, o in zip(choice, opts)):
        raise ValueError(f"invalid correspondence choice {tuple(choice)} for {path}")
    worm = _extended_worm(path)
    n = path.n_east + 2
    color = {"E": RED, "N": BLUE}
    seq: list[Crossing] = []
    # level-2 crossings sitting in bottom chamber t come right before crossing t
    second: dict = {}
    for j, t in enumerate(choice):
        second.setdefault(t, []).append(Crossing(color[path.letter(j + 1)], 2))
    for t, (a, b) in enumerate(zip(worm, worm[1:])):
        seq.extend(second.get(t, []))
        step = "E" if b[0] == a[0] + 1 else "N"
        seq.append(Crossing(color[step], 1))
    seq.extend(second.get(len(worm) - 1, []))
    full = _complete(n, seq)
    d = DoubleWiringDiagram(n, tuple(full))
    if not d.is_valid():
        raise AssertionError(f"constructed diagram for {path} is not a valid double wiring diagram")
    return d


def _complete(n: int, fixed: Sequence[Crossing]) -> list[Crossing]:
    """Insert crossings at levels >= 3 to make ``fixed`` a valid diagram.

    Before a fixed crossing that would swap an already inverted pair, the
    lowest wire above it that is larger than the wire below is bubbled down
    (each swap being a new inversion).  Remaining inversions are added at the
    end, from the top level down, red before blue.
    """
    pos = {RED: list(range(1, n + 1)), BLUE: list(range(1, n + 1))}
    out: list[Crossing] = []

    def swap(col, h, fixed_level):
        p = pos[col]
        if h <= 2 and not fixed_level:
            raise AssertionError("completion would add a crossing to the bottom two rows")
        if p[h - 1] > p[h]:
            raise AssertionError("non-reduced crossing")
        p[h - 1], p[h] = p[h], p[h - 1]
        out.append(Crossing(col, h))

    for c in fixed:
        p = pos[c.color]
        i = c.level - 1
        if p[i] > p[i + 1]:
            j = next((j for j in range(i + 2, n) if p[j] > p[i]), None)
            if j is None:
                raise AssertionError("no wire available to complete the diagram")
            for h in range(j, i + 1, -1):
                swap(c.color, h, False)
        swap(c.color, c.level, True)
    for col in (RED, BLUE):
        p = pos[col]
        while p != sorted(p, reverse=True):
            h = max(i for i in range(n - 1) if p[i] < p[i + 1]) + 1
            swap(col, h, False)
    return out


def wiring_ok(d: DoubleWiringDiagram) -> bool:
    """Between consecutive same-coloured bottom crossings there is a
    same-coloured crossing one level up."""
    bottom = [(k, c.color) for k, c in enumerate(d.crossings) if c.level == 1]
    by_color = {RED: [], BLUE: []}
    for k, col in bottom:
        by_color[col].append(k)
    for col, ks in by_color.items():
        for a, b in zip(ks, ks[1:]):
            if not any(d.crossings[k].color == col and d.crossings[k].level == 2 for k in range(a + 1, b)):
                return False
    return True


def check_drh_wiring_equivalence(path: LatticePath | str, choice: Sequence[int] | None = None) -> dict:
    """Compare the DRH seed with the pruned seed of its wiring diagram.

    Unbalanced paths are first extended with :func:`balance`.  The wiring
    seed keeps the bounded bottom-row chambers mutable, freezes everything
    else and drops frozen vertices not joined to them.
    """
    if isinstance(path, str):
        path = LatticePath.parse(path)
    ext = balance(path)
    d = drh_to_wiring(ext, choice)
    ws = wiring_quiver(d)
    keep = [c.key for c in d.chambers if c.level == 1 and c.bounded]
    pruned = freeze_and_prune(ws, keep)
    drh_seed = initial_quiver(ext)
    return {
        "path": str(path),
        "extended": str(ext),
        "choice": list(choice) if choice is not None else None,
        "valid_diagram": d.is_valid(),
        "wiring_ok": wiring_ok(d),
        "equivalent": seeds_equivalent(drh_seed, pruned),
    }


def render_wiring(d: DoubleWiringDiagram) -> str:
    """ASCII picture: one column per crossing, level ``n-1`` on top.

    Red crossings are drawn as ``R``, blue ones as ``B``.
    """
    rows = []
    for h in range(d.n - 1, 0, -1):
        cells = []
        for c in d.crossings:
            cells.append(("R" if c.color == RED else "B") if c.level == h else "-")
        rows.append(f"{h:>2} " + " ".join(cells))
    return "\n".join(rows)


def diagram_to_dict(d: DoubleWiringDiagram) -> dict:
    """JSON-ready dump of the crossings and the labelled chambers."""
    minors = chamber_minors(d)
    return {
        "n": d.n,
        "crossings": [{"color": c.color, "level": c.level} for c in d.crossings],
        "chambers": [
            {
                "level": c.level,
                "index": c.index,
                "red": sorted(c.red),
                "blue": sorted(c.blue),
                "frozen": not c.bounded,
                "minor": minors[c.key].to_text(),
            }
            for c in d.chambers
        ],
    }
