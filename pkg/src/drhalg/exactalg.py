"""Exact multivariate polynomials and rational functions over the integers.

Indeterminates are the array entries ``a[i,j]``.  A monomial is stored as a
single packed integer: every variable owns a fixed 16-bit digit, so that
multiplying monomials is integer addition and divisibility is a borrow test.
The packing is an internal detail; the public surface speaks in terms of
``(i, j)`` pairs and exponents.
"""

from __future__ import annotations

import json
from functools import reduce
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Variable",
    "Polynomial",
    "RationalFunction",
    "var",
    "const",
    "poly_add",
    "poly_mul",
    "poly_det",
    "leibniz_det",
    "ratfun_reduce",
    "is_polynomial",
    "parse_polynomial",
]

Variable = tuple  # (i, j) with positive integers, ordered lexicographically

_BITS = 16
_MASK = (1 << _BITS) - 1
_GUARD_BIT = 1 << (_BITS - 1)

_index: dict[tuple[int, int], int] = {}
_vars: list[tuple[int, int]] = []
_guard = 0  # one guard bit per registered digit


def _slot(v: tuple[int, int]) -> int:
    global _guard
    k = _index.get(v)
    if k is None:
        i, j = v
        if not (isinstance(i, int) and isinstance(j, int)) or i < 0 or j < 0:
            raise ValueError(f"variable indices must be nonnegative integers, got {v!r}")
        k = len(_vars)
        _index[v] = k
        _vars.append((i, j))
        _guard |= _GUARD_BIT << (_BITS * k)
    return k


def _decode(m: int) -> tuple[tuple[tuple[int, int], int], ...]:
    out = []
    k = 0
    while m:
        e = m & _MASK
        if e:
            out.append((_vars[k], e))
        m >>= _BITS
        k += 1
    out.sort()
    return tuple(out)


def _encode(items: Iterable[tuple[tuple[int, int], int]]) -> int:
    m = 0
    for v, e in items:
        if e < 0:
            raise ValueError("negative exponent in a polynomial monomial")
        if e >= _GUARD_BIT:
            raise OverflowError("exponent too large for packed monomial")
        m += e << (_BITS * _slot(tuple(v)))
    return m


def _divides(d: int, m: int) -> bool:
    # every digit of d is <= the matching digit of m; no digit ever reaches
    # the guard bit, so a borrow shows up as a cleared guard bit
    g = _guard
    return ((m | g) - d) & g == g


def _order_key(mono: tuple[tuple[tuple[int, int], int], ...]):
    # graded lexicographic, descending; sentinel makes a proper prefix smaller
    deg = sum(e for _, e in mono)
    return (-deg, tuple((v, -e) for v, e in mono) + (((1 << 62, 0), 0),))


class Polynomial:
    """Immutable polynomial with big-integer coefficients.

    Parameters
    ----------
    terms : mapping, optional
        Map from packed monomial to coefficient.  Zero coefficients are
        dropped.  Most callers should use :func:`var`, :func:`const` or
        :meth:`from_terms` instead.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        if terms:
            self._t = {m: c for m, c in terms.items() if c}
        else:
            self._t = {}
        self._hash = None

    @classmethod
    def _raw(cls, t: dict[int, int]) -> "Polynomial":
        p = cls.__new__(cls)
        p._t = t
        p._hash = None
        return p

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Iterable[tuple[tuple[int, int], int]]]]) -> "Polynomial":
        """Build from ``(coeff, [((i, j), e), ...])`` pairs."""
        t: dict[int, int] = {}
        for c, mono in terms:
            m = _encode(mono)
            t[m] = t.get(m, 0) + int(c)
        return cls(t)

    # -- inspection -------------------------------------------------------
    def terms(self) -> list[tuple[int, tuple[tuple[tuple[int, int], int], ...]]]:
        """Terms in canonical (graded lexicographic) order."""
        items = [(c, _decode(m)) for m, c in self._t.items()]
        items.sort(key=lambda cm: _order_key(cm[1]))
        return items

    def variables(self) -> set[tuple[int, int]]:
        out: set[tuple[int, int]] = set()
        for m in self._t:
            out.update(v for v, _ in _decode(m))
        return out

    def degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(e for _, e in _decode(m)) for m in self._t)

    def is_homogeneous(self) -> bool:
        degs = {sum(e for _, e in _decode(m)) for m in self._t}
        return len(degs) <= 1

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> int:
        return self._t.get(0, 0)

    def __len__(self) -> int:
        return len(self._t)

    def leading_coefficient(self) -> int:
        """Coefficient of the first term in canonical order (0 for zero)."""
        ts = self.terms()
        return ts[0][0] if ts else 0

    def evaluate(self, values: Mapping[tuple[int, int], int]) -> int:
        total = 0
        for m, c in self._t.items():
            for v, e in _decode(m):
                c *= values[v] ** e
            total += c
        return total

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._t) > len(self._t):
            big, small = other._t, self._t
        else:
            big, small = self._t, other._t
        t = dict(big)
        for m, c in small.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Polynomial._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self._t.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._t, other._t
        if not a or not b:
            return Polynomial._raw({})
        if len(a) < len(b):
            a, b = b, a
        t: dict[int, int] = {}
        get = t.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                t[m] = get(m, 0) + ca * cb
        return Polynomial._raw({m: c for m, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def divexact(self, other: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / other``.

        Raises
        ------
        ZeroDivisionError
            If ``other`` is zero.
        ArithmeticError
            If the division leaves a remainder.
        """
        q, r = self.divmod(other)
        if r._t:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Multivariate division by a single divisor.

        The monomial order is the integer order on packed monomials (a lex
        order), which is compatible with multiplication.  The remainder is
        zero exactly when ``other`` divides ``self``.
        """
        other = self._coerce(other)
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        d = other._t
        lm_d = max(d)
        lc_d = d[lm_d]
        rest_d = [(m, c) for m, c in d.items() if m != lm_d]
        r = dict(self._t)
        q: dict[int, int] = {}
        rem: dict[int, int] = {}
        while r:
            lm = max(r)
            lc = r.pop(lm)
            if _divides(lm_d, lm) and lc % lc_d == 0:
                qm = lm - lm_d
                qc = lc // lc_d
                q[qm] = qc
                for m, c in rest_d:
                    k = m + qm
                    s = r.get(k, 0) - qc * c
                    if s:
                        r[k] = s
                    else:
                        r.pop(k, None)
            else:
                rem[lm] = lc
        return Polynomial._raw(q), Polynomial._raw(rem)

    def __floordiv__(self, other):
        return self.divexact(self._coerce(other))

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def sort_key(self):
        """Deterministic total-order key (used for canonical listings)."""
        return (self.degree(), len(self._t), self.to_text())

    # -- serialization ----------------------------------------------------
    def to_text(self) -> str:
        ts = self.terms()
        if not ts:
            return "0"
        parts = []
        for n, (c, mono) in enumerate(ts):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = [f"a[{i},{j}]" + (f"^{e}" if e != 1 else "") for (i, j), e in mono]
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = str(mag) + "*" + "*".join(factors)
            if n == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def to_json(self) -> list[dict]:
        return [
            {"coeff": c, "exponents": [[i, j, e] for (i, j), e in mono]}
            for c, mono in self.terms()
        ]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "Polynomial":
        return cls.from_terms(
            (d["coeff"], [((i, j), e) for i, j, e in d["exponents"]]) for d in data
        )

    def __repr__(self):
        return f"Polynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()


def var(i: int, j: int) -> Polynomial:
    """The indeterminate ``a[i,j]``."""
    return Polynomial._raw({1 << (_BITS * _slot((i, j))): 1})


def const(c: int) -> Polynomial:
    return Polynomial._raw({0: int(c)} if c else {})


def poly_add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def _as_poly(x) -> Polynomial:
    return x if isinstance(x, Polynomial) else const(int(x))


def poly_det(M: Sequence[Sequence]) -> Polynomial:
    """Determinant of a square matrix of polynomials (or ints).

    Uses a division-free Laplace expansion memoized over column subsets, row
    by row from the top.  Zero entries are skipped, which keeps the banded
    matrices of the DRH calculus cheap.

    Raises
    ------
    ValueError
        If ``M`` is not square.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return const(1)
    rows = [[_as_poly(x) for x in row] for row in M]
    layer: dict[int, Polynomial] = {0: const(1)}
    for r in range(n):
        nxt: dict[int, Polynomial] = {}
        entries = [(c, x) for c, x in enumerate(rows[r]) if not x.is_zero()]
        for used, acc in layer.items():
            for c, x in entries:
                bit = 1 << c
                if used & bit:
                    continue
                # inversions created by placing row r in column c
                sign = -1 if bin(used >> (c + 1)).count("1") & 1 else 1
                term = acc * x
                key = used | bit
                prev = nxt.get(key)
                if sign < 0:
                    term = -term
                nxt[key] = term if prev is None else prev + term
        layer = {k: v for k, v in nxt.items() if not v.is_zero()}
        if not layer:
            return const(0)
    return layer.get((1 << n) - 1, const(0))


def leibniz_det(M: Sequence[Sequence]) -> Polynomial:
    """Permutation-expansion determinant; an independent slow oracle."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    total = const(0)
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = const(-1 if inv & 1 else 1)
        for r, c in enumerate(perm):
            term = term * _as_poly(M[r][c])
            if term.is_zero():
                break
        total = total + term
    return total


class RationalFunction:
    """Reduced quotient of two polynomials.

    Instances produced by :func:`ratfun_reduce` satisfy
    ``gcd(num, den) = 1`` and have a denominator whose leading coefficient
    is positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, p: Polynomial) -> "RationalFunction":
        return cls(p, const(1))

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction.of(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = ratfun_reduce(self.num, self.den)
        return hash((r.num, r.den))

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction.of(other)
        return ratfun_reduce(self.num * other.num, self.den * other.den)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction.of(other)
        return ratfun_reduce(self.num * other.den + other.num * self.den, self.den * other.den)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            other = RationalFunction.of(other)
        return ratfun_reduce(self.num * other.den, self.den * other.num)

    def __repr__(self):
        return f"RationalFunction(({self.num.to_text()}) / ({self.den.to_text()}))"


def _sympy_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    # general multivariate gcd is delegated to sympy; the fast path in
    # ratfun_reduce (exact division) covers every exchange relation in practice
    import sympy

    gens_keys = sorted(p.variables() | q.variables())
    if not gens_keys:
        from math import gcd

        return const(gcd(p.constant_value(), q.constant_value()) or 1)
    gens = sympy.symbols([f"a_{i}_{j}" for i, j in gens_keys])
    pos = {v: k for k, v in enumerate(gens_keys)}

    def to_sympy(x: Polynomial):
        d = {}
        for c, mono in x.terms():
            e = [0] * len(gens)
            for v, k in mono:
                e[pos[v]] = k
            d[tuple(e)] = c
        return sympy.Poly.from_dict(d, *gens, domain="ZZ")

    g = sympy.gcd(to_sympy(p), to_sympy(q))
    return Polynomial.from_terms(
        (int(c), [(gens_keys[k], e) for k, e in enumerate(exps) if e])
        for exps, c in g.as_dict().items()
    )


def ratfun_reduce(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Reduce ``num / den`` to lowest terms with a positive-leading denominator.

    Raises
    ------
    ZeroDivisionError
        If ``den`` is zero.
    """
    num = _as_poly(num)
    den = _as_poly(den)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return RationalFunction(num, const(1))
    q, r = num.divmod(den)
    if r.is_zero():
        num, den = q, const(1)
    elif not den.is_constant():
        g = _sympy_gcd(num, den)
        if not g.is_constant() or abs(g.constant_value()) != 1:
            num = num.divexact(g)
            den = den.divexact(g)
    if den.is_constant():
        from math import gcd

        c = den.constant_value()
        content = reduce(gcd, (c for c, _ in num.terms()), 0)
        g = gcd(content, c)
        if g > 1:
            num = Polynomial._raw({m: v // g for m, v in num._t.items()})
            den = const(c // g)
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return RationalFunction(num, den)


def is_polynomial(r: RationalFunction) -> tuple[bool, Polynomial | None]:
    """Return ``(True, p)`` when the reduced ``r`` has denominator 1."""
    if r.den == const(1):
        return True, r.num
    return False, None


def parse_polynomial(text: str) -> Polynomial:
    """Inverse of :meth:`Polynomial.to_text`."""
    import re

    s = text.replace(" ", "")
    if s in ("", "0"):
        return const(0)
    if s[0] not in "+-":
        s = "+" + s
    total = const(0)
    for sign, body in re.findall(r"([+-])([^+-]+)", s):
        coeff = 1
        mono = []
        for f in body.split("*"):
            m = re.fullmatch(r"a\[(\d+),(\d+)\](?:\^(\d+))?", f)
            if m:
                mono.append(((int(m.group(1)), int(m.group(2))), int(m.group(3) or 1)))
            else:
                coeff *= int(f)
        if sign == "-":
            coeff = -coeff
        total = total + Polynomial.from_terms([(coeff, mono)])
    return total


def iter_entries(M: Sequence[Sequence]) -> Iterator[Polynomial]:
    for row in M:
        for x in row:
            yield _as_poly(x)


def dumps(p: Polynomial) -> str:
    return json.dumps(p.to_json(), sort_keys=True)
