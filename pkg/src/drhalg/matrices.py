"""DRH matrices: dominoes, blocks, concatenation, minors and minor identities.

Pieces are attached in a zigzag of "right" and "top" moves.  A move to the
right keeps the bottom row of the previous piece and starts one column past
its right edge; a move to the top keeps its left column and starts one row
above its top edge.  Everything not covered by a piece is zero.

Inside this module the rows of a DRH matrix are numbered bottom-to-top
starting at 1 and the columns left-to-right starting at 1, the labelling used
for the minor identities.  ``DrhMatrix.rows`` stores the displayed matrix
(top row first).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .exactalg import Polynomial, const, poly_det, var

__all__ = [
    "Domino",
    "Block",
    "DrhMatrix",
    "MinorSpec",
    "concat",
    "layout",
    "minor",
    "dodgson_condense",
    "check_lifted_identity",
    "desnanot_jacobi_instance",
    "verify_corollary_identities",
    "CorollaryCase",
    "read_back",
]


def _p(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else const(int(x))


@dataclass(frozen=True)
class Domino:
    """A 1x2 (horizontal) or 2x1 (vertical) piece.

    ``entries`` are (left, right) for horizontal and (bottom, top) for
    vertical dominoes.
    """

    orientation: str
    entries: tuple

    def __post_init__(self):
        if self.orientation not in ("H", "V"):
            raise ValueError("orientation must be 'H' or 'V'")
        if len(self.entries) != 2:
            raise ValueError("a domino has exactly two entries")
        object.__setattr__(self, "entries", tuple(_p(x) for x in self.entries))

    @classmethod
    def h(cls, left, right) -> "Domino":
        return cls("H", (left, right))

    @classmethod
    def v(cls, bottom, top) -> "Domino":
        return cls("V", (bottom, top))

    def grid(self) -> list[list[Polynomial]]:
        """Cells bottom row first."""
        if self.orientation == "H":
            return [[self.entries[0], self.entries[1]]]
        return [[self.entries[0]], [self.entries[1]]]


@dataclass(frozen=True)
class Block:
    """A 2x2 piece given as displayed: ``[[top-left, top-right], [bottom-left, bottom-right]]``."""

    tl: Polynomial
    tr: Polynomial
    bl: Polynomial
    br: Polynomial

    def __post_init__(self):
        for k in ("tl", "tr", "bl", "br"):
            object.__setattr__(self, k, _p(getattr(self, k)))

    @classmethod
    def from_rows(cls, rows) -> "Block":
        (tl, tr), (bl, br) = rows
        return cls(tl, tr, bl, br)

    @classmethod
    def stack(cls, lower: Domino, upper: Domino) -> "Block":
        """``d1 d2`` for two horizontal dominoes (``d2`` on top of ``d1``)."""
        if lower.orientation != "H" or upper.orientation != "H":
            raise ValueError("stacking needs two horizontal dominoes")
        return cls(upper.entries[0], upper.entries[1], lower.entries[0], lower.entries[1])

    @classmethod
    def side(cls, left: Domino, right: Domino) -> "Block":
        """``d1 d2`` for two vertical dominoes (``d2`` to the right of ``d1``)."""
        if left.orientation != "V" or right.orientation != "V":
            raise ValueError("side-by-side needs two vertical dominoes")
        return cls(left.entries[1], right.entries[1], left.entries[0], right.entries[0])

    def v_minus(self) -> Domino:
        return Domino.v(self.bl, self.tl)

    def v_plus(self) -> Domino:
        return Domino.v(self.br, self.tr)

    def h_minus(self) -> Domino:
        return Domino.h(self.bl, self.br)

    def h_plus(self) -> Domino:
        return Domino.h(self.tl, self.tr)

    def det(self) -> Polynomial:
        return self.tl * self.br - self.tr * self.bl

    def grid(self) -> list[list[Polynomial]]:
        return [[self.bl, self.br], [self.tl, self.tr]]


Piece = Domino | Block


def _size(piece: Piece) -> tuple[int, int]:
    g = piece.grid()
    return len(g[0]), len(g)  # (width, height)


@dataclass
class DrhMatrix:
    """Dense DRH matrix with provenance.

    Attributes
    ----------
    rows : list of list of Polynomial
        Displayed matrix, top row first.
    pieces : list
        The pieces in attachment order.
    origins : list of (x, y)
        Lower-left cell of every piece (0-based, y counted from the bottom).
    """

    rows: list
    pieces: list = field(default_factory=list)
    origins: list = field(default_factory=list)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def det(self) -> Polynomial:
        return poly_det(self.rows)

    def at(self, row: int, col: int) -> Polynomial:
        """Entry in row ``row`` (1-based from the bottom), column ``col``."""
        return self.rows[len(self.rows) - row][col - 1]

    def minor(self, I: Iterable[int], J: Iterable[int]) -> Polynomial:
        return minor(self, MinorSpec(I, J))

    def pretty(self) -> str:
        cells = [[("0" if x.is_zero() else x.to_text()) for x in row] for row in self.rows]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join("[ " + "  ".join(c.rjust(w) for c in row) + " ]" for row in cells)

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "rows": [[x.to_text() for x in row] for row in self.rows],
        }


def layout(pieces: Sequence[Piece], first_move: str = "right") -> DrhMatrix:
    """Place pieces with alternating moves, the first one being ``first_move``."""
    if not pieces:
        return DrhMatrix([[]])
    origins = [(0, 0)]
    move = first_move
    for prev, cur in zip(pieces, pieces[1:]):
        px, py = origins[-1]
        pw, ph = _size(prev)
        if move == "right":
            origins.append((px + pw, py))
        elif move == "top":
            origins.append((px, py + ph))
        else:
            raise ValueError(f"unknown move {move!r}")
        move = "top" if move == "right" else "right"
    width = max(x + _size(p)[0] for p, (x, _) in zip(pieces, origins))
    height = max(y + _size(p)[1] for p, (_, y) in zip(pieces, origins))
    grid = [[const(0) for _ in range(width)] for _ in range(height)]
    for p, (x0, y0) in zip(pieces, origins):
        for dy, row in enumerate(p.grid()):
            for dx, val in enumerate(row):
                grid[y0 + dy][x0 + dx] = val
    return DrhMatrix([list(r) for r in reversed(grid)], list(pieces), origins)


def concat(s: Domino | None, blocks: Sequence[Block], f: Domino | None) -> DrhMatrix:
    """The DRH matrix ``s b_1 ... b_k f``.

    With a horizontal ``s`` the first block sits on top of it; with a
    vertical ``s`` it sits to its right.  Without ``s`` the second block goes
    to the right of the first.  ``f`` continues the zigzag, so it must be
    horizontal when the next move is to the top and vertical when it is to
    the right.

    Raises
    ------
    ValueError
        If the shape of ``f`` does not fit the zigzag.
    """
    pieces: list[Piece] = []
    if s is not None:
        pieces.append(s)
        first = "top" if s.orientation == "H" else "right"
    else:
        first = "right"
    pieces.extend(blocks)
    if f is not None:
        n_moves = len(pieces) - 1  # moves already spent
        if not pieces:
            pieces.append(f)
            return layout(pieces, first)
        move = first if n_moves % 2 == 0 else ("top" if first == "right" else "right")
        want = "H" if move == "top" else "V"
        if f.orientation != want:
            raise ValueError(
                f"finishing domino must be {'horizontal' if want == 'H' else 'vertical'} here"
            )
        pieces.append(f)
    return layout(pieces, first)


def read_back(M: DrhMatrix, s_kind: str | None, k: int, f_kind: str | None) -> tuple:
    """Recover ``(s, blocks, f)`` from the entries of a concatenated matrix.

    Only the matrix entries and the word shape are used, so this is a real
    round trip of :func:`concat`.
    """
    shapes: list[Piece] = []
    zero = const(0)
    if s_kind:
        shapes.append(Domino(s_kind, (zero, zero)))
    shapes.extend(Block(zero, zero, zero, zero) for _ in range(k))
    if f_kind:
        shapes.append(Domino(f_kind, (zero, zero)))
    first = "right" if not s_kind else ("top" if s_kind == "H" else "right")
    skeleton = layout(shapes, first)
    out = []
    for p, (x0, y0) in zip(shapes, skeleton.origins):
        g = [[M.at(y0 + dy + 1, x0 + dx + 1) for dx in range(len(row))] for dy, row in enumerate(p.grid())]
        if isinstance(p, Block):
            out.append(Block(g[1][0], g[1][1], g[0][0], g[0][1]))
        elif p.orientation == "H":
            out.append(Domino.h(g[0][0], g[0][1]))
        else:
            out.append(Domino.v(g[0][0], g[1][0]))
    s = out.pop(0) if s_kind else None
    f = out.pop() if f_kind else None
    return s, out, f


@dataclass(frozen=True)
class MinorSpec:
    """Row set ``I`` and column set ``J`` (1-based)."""

    rows: tuple
    cols: tuple

    def __init__(self, rows: Iterable[int], cols: Iterable[int]):
        r, c = tuple(sorted(set(rows))), tuple(sorted(set(cols)))
        if len(r) != len(c):
            raise ValueError(f"ragged minor: {len(r)} rows vs {len(c)} columns")
        object.__setattr__(self, "rows", r)
        object.__setattr__(self, "cols", c)

    def lift(self, I: Iterable[int], J: Iterable[int]) -> "MinorSpec":
        return MinorSpec(set(self.rows) | set(I), set(self.cols) | set(J))


def minor(X, spec: MinorSpec) -> Polynomial:
    """``Delta_{I,J}(X)`` with ``Delta_{empty,empty} = 1``.

    For a :class:`DrhMatrix` rows are counted from the bottom; for a plain
    nested list they are counted from the top.  Within the selected
    submatrix rows keep their displayed top-to-bottom order, so the value is
    the ordinary determinant of that submatrix either way.
    """
    if not spec.rows:
        return const(1)
    if isinstance(X, DrhMatrix):
        nr, nc = X.shape
        if max(spec.rows) > nr or max(spec.cols) > nc or min(spec.rows + spec.cols) < 1:
            raise IndexError("minor index out of range")
        sub = [[X.at(r, c) for c in spec.cols] for r in sorted(spec.rows, reverse=True)]
    else:
        nr, nc = len(X), len(X[0])
        if max(spec.rows) > nr or max(spec.cols) > nc or min(spec.rows + spec.cols) < 1:
            raise IndexError("minor index out of range")
        sub = [[_p(X[r - 1][c - 1]) for c in spec.cols] for r in spec.rows]
    return poly_det(sub)


def dodgson_condense(X: Sequence[Sequence]) -> Polynomial:
    """3x3 determinant as ``det(M) / x_22`` with ``M`` the corner 2x2 minors.

    Falls back to a direct determinant when the center entry is zero.
    """
    if len(X) != 3 or any(len(r) != 3 for r in X):
        raise ValueError("Dodgson condensation here is for 3x3 matrices")
    center = _p(X[1][1])
    if center.is_zero():
        return poly_det(X)
    m = lambda I, J: minor(X, MinorSpec(I, J))
    M = [[m((1, 2), (1, 2)), m((1, 2), (2, 3))], [m((2, 3), (1, 2)), m((2, 3), (2, 3))]]
    return poly_det(M).divexact(center)


def _lifted_sum(X, base: Sequence[tuple[int, Sequence[MinorSpec]]], I2, J2) -> Polynomial:
    total = const(0)
    for c, specs in base:
        term = const(c)
        for sp in specs:
            term = term * minor(X, sp.lift(I2, J2))
            if term.is_zero():
                break
        total = total + term
    return total


def check_lifted_identity(
    X,
    base_identity: Sequence[tuple[int, Sequence[MinorSpec]]],
    I_prime: Iterable[int] = (),
    J_prime: Iterable[int] = (),
) -> bool:
    """Check that a zero-sum minor identity survives adjoining ``I'``, ``J'``.

    Raises
    ------
    ValueError
        If ``I'``/``J'`` meet an index used by the base identity, or their
        sizes differ.
    """
    I2, J2 = set(I_prime), set(J_prime)
    if len(I2) != len(J2):
        raise ValueError("I' and J' must have the same size")
    for _, specs in base_identity:
        for sp in specs:
            if I2 & set(sp.rows) or J2 & set(sp.cols):
                raise ValueError("I'/J' collide with the base identity's index sets")
    return _lifted_sum(X, base_identity, I2, J2).is_zero()


def desnanot_jacobi_instance(n: int) -> tuple[list, tuple, tuple]:
    """Base identity and chunk for Desnanot-Jacobi on an n x n matrix.

    Returns ``(base, I', J')`` where ``base`` encodes
    ``Delta_{1n,1n} Delta_{0,0} - Delta_{1,1} Delta_{n,n} + Delta_{1,n} Delta_{n,1} = 0``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    S = MinorSpec
    base = [
        (1, [S((1, n), (1, n)), S((), ())]),
        (-1, [S((1,), (1,)), S((n,), (n,))]),
        (1, [S((1,), (n,)), S((n,), (1,))]),
    ]
    inner = tuple(range(2, n))
    return base, inner, inner


class CorollaryCase(str, Enum):
    C00pp = "C00pp"
    Cm20pp = "Cm20pp"
    Cm1p20p = "Cm1p20p"


class _Fresh:
    """Source of fresh indeterminates or random small integers."""

    def __init__(self, rng: random.Random | None, base: int = 5000):
        self.rng = rng
        self.n = 0
        self.base = base

    def __call__(self) -> Polynomial:
        self.n += 1
        if self.rng is None:
            return var(self.base + self.n, 1)
        return const(self.rng.randint(-9, 9))

    def h(self) -> Domino:
        return Domino.h(self(), self())

    def v(self) -> Domino:
        return Domino.v(self(), self())

    def b(self) -> Block:
        return Block(self(), self(), self(), self())


def _range(a: int, b: int) -> list[int]:
    return list(range(a, b + 1))


def verify_corollary_identities(
    case: CorollaryCase | str,
    k: int,
    rng: random.Random | None = None,
    *,
    collapse_f: bool = False,
) -> bool:
    """Check one of the three block-determinant corollaries.

    Both sides are computed twice: from the concatenated matrices in the
    statement, and from the minors of the auxiliary matrix ``X`` used in the
    proof.  All four computations must agree.

    Parameters
    ----------
    case : CorollaryCase
        ``C00pp``, ``Cm20pp`` or ``Cm1p20p``.
    k : int
        Even positive number of middle blocks.
    rng : random.Random, optional
        When given, entries are random integers in [-9, 9]; otherwise fresh
        indeterminates.
    collapse_f : bool
        ``C00pp`` only: use ``f`` in place of ``f~`` (both sides then vanish).

    Raises
    ------
    ValueError
        If ``k`` is not a positive even integer.
    """
    case = CorollaryCase(case)
    if k <= 0 or k % 2:
        raise ValueError("k must be a positive even integer")
    fr = _Fresh(rng)
    bs = [fr.b() for _ in range(k)]
    prod_b = const(1)
    for b in bs:
        prod_b = prod_b * b.det()
    D = lambda s, blocks, f: concat(s, blocks, f).det()

    if case is CorollaryCase.C00pp:
        s, st, f = fr.h(), fr.h(), fr.h()
        ft = f if collapse_f else fr.h()
        lhs = D(s, bs, ft) * D(st, bs, f) - D(s, bs, f) * D(st, bs, ft)
        rhs = Block.stack(st, s).det() * prod_b * Block.stack(f, ft).det()
        X = layout([Block.stack(st, s)] + bs + [Block.stack(f, ft)], "top")
        S = MinorSpec
        m = lambda I, J: X.minor(I, J)
        K = k
        lhs_x = m(_range(2, K + 2) + [K + 4], _range(1, K + 2)) * m([1] + _range(3, K + 3), _range(1, K + 2)) - m(
            _range(2, K + 3), _range(1, K + 2)
        ) * m([1] + _range(3, K + 2) + [K + 4], _range(1, K + 2))
        rhs_x = m(_range(1, K + 2), _range(1, K + 2)) * m(_range(3, K + 4), _range(1, K + 2))
        return lhs == rhs and lhs_x == lhs and rhs_x == rhs

    if case is CorollaryCase.Cm20pp:
        s, st, ft = fr.h(), fr.h(), fr.h()
        bw, b0 = fr.b(), fr.b()
        f = bw.h_plus()
        lhs = D(s, bs, f) * D(st, bs + [bw, b0], ft) - D(st, bs, f) * D(s, bs + [bw, b0], ft)
        rhs = Block.stack(st, s).det() * prod_b * bw.det() * Block.stack(b0.h_plus(), ft).det()
        X = layout([Block.stack(st, s)] + bs + [bw, b0, ft], "top")
        m = lambda I, J: X.minor(I, J)
        K = k
        lhs_x = m(_range(2, K + 2) + [K + 4], _range(1, K + 2)) * m([1] + _range(3, K + 5), _range(1, K + 4)) - m(
            [1] + _range(3, K + 2) + [K + 4], _range(1, K + 2)
        ) * m(_range(2, K + 5), _range(1, K + 4))
        rhs_x = m(_range(3, K + 4), _range(1, K + 2)) * m(_range(1, K + 2) + [K + 4, K + 5], _range(1, K + 4))
        vanishing = m(_range(3, K + 2) + [K + 4, K + 5], _range(1, K + 2))
        return lhs == rhs and lhs_x == lhs and rhs_x == rhs and vanishing.is_zero()

    # Cm1p20p: s = h_-(b_w), f = h_+(b'_w), see the module notes
    st = fr.h()
    b0, bw, bwp = fr.b(), fr.b(), fr.b()
    phi = fr.v()
    s = bw.h_minus()
    f = bwp.h_plus()
    delta = phi.entries[1]
    lhs = D(s, bs + [bwp], phi) * D(st, [b0, bw] + bs, f) - D(s, bs, f) * D(st, [b0, bw] + bs + [bwp], phi)
    rhs = Block.stack(st, b0.h_minus()).det() * bw.det() * bwp.det() * delta * prod_b
    X = concat(st, [b0, bw] + bs + [bwp], phi)
    m = lambda I, J: X.minor(I, J)
    K = k
    lhs_x = m([2] + _range(4, K + 5), _range(3, K + 5)) * m(_range(1, K + 3) + [K + 5], _range(1, K + 4)) - m(
        [2] + _range(4, K + 3) + [K + 5], _range(3, K + 4)
    ) * m(_range(1, K + 5), _range(1, K + 5))
    rhs_x = m(_range(2, K + 3) + [K + 5], _range(3, K + 5)) * m([1, 2] + _range(4, K + 5), _range(1, K + 4))
    vanishing = m([1, 2] + _range(4, K + 3) + [K + 5], _range(3, K + 5))
    return lhs == rhs and lhs_x == lhs and rhs_x == rhs and vanishing.is_zero()
