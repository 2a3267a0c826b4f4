"""Quivers with frozen vertices, seeds, and cluster mutation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

from .exactalg import Polynomial, RationalFunction, const, is_polynomial, ratfun_reduce

__all__ = [
    "Quiver",
    "Seed",
    "FrozenCoefficient",
    "mutate",
    "frozen_coefficient",
    "seeds_equivalent",
    "freeze_and_prune",
    "exchange_binomial",
]

Vertex = Hashable


class Quiver:
    """Quiver with mutable and frozen vertices.

    Arrows are kept as a skew-symmetric multiplicity map: ``b[u][v] = m > 0``
    means ``m`` arrows ``u -> v`` (and then ``b[v][u] = -m``).  Arrows between
    two frozen vertices are never stored.

    Parameters
    ----------
    mutable, frozen : iterable
        Vertex labels.  The order given is kept and used for deterministic
        iteration.
    arrows : iterable of (u, v) or (u, v, m)
        Arrows to add; opposite arrows cancel.
    """

    __slots__ = ("mutable", "frozen", "_b")

    def __init__(self, mutable: Iterable[Vertex], frozen: Iterable[Vertex] = (), arrows: Iterable = ()):
        self.mutable: tuple = tuple(mutable)
        self.frozen: tuple = tuple(frozen)
        if set(self.mutable) & set(self.frozen):
            raise ValueError("a vertex cannot be both mutable and frozen")
        if len(set(self.mutable)) != len(self.mutable) or len(set(self.frozen)) != len(self.frozen):
            raise ValueError("duplicate vertex labels")
        self._b: dict[Vertex, dict[Vertex, int]] = {v: {} for v in self.vertices}
        fz = set(self.frozen)
        for a in arrows:
            u, v = a[0], a[1]
            m = a[2] if len(a) > 2 else 1
            if u not in self._b or v not in self._b:
                raise KeyError(f"arrow between unknown vertices {u!r} -> {v!r}")
            if u == v:
                raise ValueError("loops are not allowed")
            if u in fz and v in fz:
                continue
            self._add(u, v, m)

    @property
    def vertices(self) -> tuple:
        return self.mutable + self.frozen

    def _add(self, u, v, m):
        s = self._b[u].get(v, 0) + m
        if s:
            self._b[u][v] = s
            self._b[v][u] = -s
        else:
            self._b[u].pop(v, None)
            self._b[v].pop(u, None)

    def b(self, u, v) -> int:
        """Signed number of arrows ``u -> v``."""
        return self._b[u].get(v, 0)

    def arrows(self) -> list[tuple[Vertex, Vertex, int]]:
        """All arrows ``(u, v, m)`` with ``m > 0`` in deterministic order."""
        order = {v: k for k, v in enumerate(self.vertices)}
        out = [(u, v, m) for u in self.vertices for v, m in self._b[u].items() if m > 0]
        out.sort(key=lambda t: (order[t[0]], order[t[1]]))
        return out

    def neighbors(self, v) -> dict:
        return dict(self._b[v])

    def is_frozen(self, v) -> bool:
        return v in self.frozen

    def copy(self) -> "Quiver":
        q = Quiver.__new__(Quiver)
        q.mutable = self.mutable
        q.frozen = self.frozen
        q._b = {v: dict(nb) for v, nb in self._b.items()}
        return q

    def mutate(self, k) -> "Quiver":
        """Quiver mutation at the mutable vertex ``k`` (returns a new quiver)."""
        if k not in self.mutable:
            raise KeyError(f"cannot mutate at {k!r}: not a mutable vertex")
        q = self.copy()
        fz = set(self.frozen)
        ins = [(i, m) for i, m in self._b[k].items() if m < 0]  # i -> k, with |m| arrows
        outs = [(j, m) for j, m in self._b[k].items() if m > 0]
        for i, mi in ins:
            for j, mj in outs:
                if i in fz and j in fz:
                    continue
                q._add(i, j, (-mi) * mj)
        for v, m in list(self._b[k].items()):
            q._b[k][v] = -m
            q._b[v][k] = m
        return q

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return (
            set(self.mutable) == set(other.mutable)
            and set(self.frozen) == set(other.frozen)
            and {(u, v, m) for u, v, m in self.arrows()} == {(u, v, m) for u, v, m in other.arrows()}
        )

    def to_dot(self, names: Mapping | None = None) -> str:
        """Graphviz text: frozen vertices as boxes, mutable as circles."""
        names = names or {}
        lab = lambda v: str(names.get(v, v)).replace('"', "'")
        ids = {v: f"v{k}" for k, v in enumerate(self.vertices)}
        lines = ["digraph Q {"]
        for v in self.mutable:
            lines.append(f'  {ids[v]} [label="{lab(v)}", shape=circle];')
        for v in self.frozen:
            lines.append(f'  {ids[v]} [label="{lab(v)}", shape=box];')
        for u, v, m in self.arrows():
            for _ in range(m):
                lines.append(f"  {ids[u]} -> {ids[v]};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class FrozenCoefficient:
    """Laurent monomial over frozen vertices, stored as an exponent map."""

    exponents: tuple = field(default=())

    @classmethod
    def from_map(cls, m: Mapping) -> "FrozenCoefficient":
        return cls(tuple(sorted(((k, e) for k, e in m.items() if e), key=lambda t: repr(t[0]))))

    def as_dict(self) -> dict:
        return dict(self.exponents)

    def __mul__(self, other: "FrozenCoefficient") -> "FrozenCoefficient":
        d = self.as_dict()
        for k, e in other.exponents:
            d[k] = d.get(k, 0) + e
        return FrozenCoefficient.from_map(d)

    def inverse(self) -> "FrozenCoefficient":
        return FrozenCoefficient.from_map({k: -e for k, e in self.exponents})

    def __truediv__(self, other):
        return self * other.inverse()

    def is_one(self) -> bool:
        return not self.exponents


ONE = FrozenCoefficient()


class Seed:
    """A quiver together with a variable for every vertex.

    Variables are :class:`Polynomial` when the exchange division is exact and
    :class:`RationalFunction` otherwise.
    """

    __slots__ = ("quiver", "x", "names")

    def __init__(self, quiver: Quiver, assignment: Mapping, names: Mapping | None = None):
        missing = [v for v in quiver.vertices if v not in assignment]
        if missing:
            raise ValueError(f"no variable for vertices {missing!r}")
        self.quiver = quiver
        self.x = dict(assignment)
        self.names = dict(names or {})

    def cluster(self) -> frozenset:
        return frozenset(self.x[v] for v in self.quiver.mutable)

    def mutate(self, k) -> "Seed":
        return mutate(self, k)

    def __repr__(self):
        return f"Seed(mutable={len(self.quiver.mutable)}, frozen={len(self.quiver.frozen)})"


def exchange_binomial(seed: Seed, k) -> tuple[Polynomial, Polynomial]:
    """The two monomials (in-product, out-product) of the exchange at ``k``."""
    q = seed.quiver
    p_in = const(1)
    p_out = const(1)
    for v, m in q._b[k].items():
        if m < 0:
            p_in = p_in * _pow(seed.x[v], -m)
        else:
            p_out = p_out * _pow(seed.x[v], m)
    return p_in, p_out


def _pow(x, m):
    r = x
    for _ in range(m - 1):
        r = r * x
    return r


def _divide(num, den):
    if isinstance(num, Polynomial) and isinstance(den, Polynomial):
        q, r = num.divmod(den)
        if r.is_zero():
            return q
        return ratfun_reduce(num, den)
    if isinstance(num, Polynomial):
        num = RationalFunction.of(num)
    res = num / den
    ok, p = is_polynomial(res)
    return p if ok else res


def mutate(seed: Seed, k) -> Seed:
    """Seed mutation at the mutable vertex ``k``.

    The new variable is ``(prod over in-arrows + prod over out-arrows) / x_k``;
    arrows are reversed at ``k``, composite arrows added, 2-cycles cancelled.

    Raises
    ------
    KeyError
        If ``k`` is frozen or unknown.
    """
    q = seed.quiver
    if k not in q.mutable:
        raise KeyError(f"cannot mutate at {k!r}: not a mutable vertex")
    p_in, p_out = exchange_binomial(seed, k)
    x = dict(seed.x)
    x[k] = _divide(p_in + p_out, seed.x[k])
    return Seed(q.mutate(k), x, seed.names)


def frozen_coefficient(q: Quiver, v) -> FrozenCoefficient:
    """``fc_Q(v)``: out-arrows to frozen vertices count +1, in-arrows -1."""
    if v not in q.mutable:
        raise KeyError(f"{v!r} is not a mutable vertex")
    fz = set(q.frozen)
    return FrozenCoefficient.from_map({f: m for f, m in q._b[v].items() if f in fz})


def _canonical(seed: Seed):
    keys = {}
    for v in seed.quiver.vertices:
        val = seed.x[v]
        tag = (v in seed.quiver.frozen, val)
        if tag in keys:
            return None
        keys[tag] = v
    inv = {v: t for t, v in keys.items()}
    arrows = frozenset((inv[u], inv[w], m) for u, w, m in seed.quiver.arrows())
    return frozenset(keys), arrows


def seeds_equivalent(s1: Seed, s2: Seed) -> bool:
    """True iff a vertex bijection preserves status, arrows and variables."""
    if len(s1.quiver.mutable) != len(s2.quiver.mutable) or len(s1.quiver.frozen) != len(s2.quiver.frozen):
        return False
    c1, c2 = _canonical(s1), _canonical(s2)
    if c1 is not None and c2 is not None:
        return c1 == c2
    # repeated variables: fall back to a labelled digraph isomorphism search
    import networkx as nx
    from networkx.algorithms import isomorphism as iso

    def graph(s: Seed):
        g = nx.DiGraph()
        for v in s.quiver.vertices:
            g.add_node(v, tag=(v in s.quiver.frozen, s.x[v]))
        for u, w, m in s.quiver.arrows():
            g.add_edge(u, w, m=m)
        return g

    gm = iso.DiGraphMatcher(
        graph(s1),
        graph(s2),
        node_match=lambda a, b: a["tag"] == b["tag"],
        edge_match=lambda a, b: a["m"] == b["m"],
    )
    return gm.is_isomorphic()


def freeze_and_prune(seed: Seed, keep: Iterable) -> Seed:
    """Freeze every mutable vertex outside ``keep`` and drop isolated frozens.

    Arrows among the resulting frozen vertices are discarded, and a frozen
    vertex survives only if it is joined to some vertex of ``keep``.
    """
    keep = [v for v in seed.quiver.mutable if v in set(keep)]
    extra = set(keep) - set(seed.quiver.mutable)
    if extra:
        raise ValueError(f"vertices {extra!r} are not mutable")
    keep_set = set(keep)
    q = seed.quiver
    candidates = [v for v in q.vertices if v not in keep_set]
    frozen = [v for v in candidates if any(w in keep_set for w in q._b[v])]
    arrows = [(u, w, m) for u, w, m in q.arrows() if (u in keep_set or w in keep_set)]
    nq = Quiver(keep, frozen, arrows)
    return Seed(nq, {v: seed.x[v] for v in nq.vertices}, seed.names)
