"""Exact arithmetic: rationals, bivariate Laurent polynomials, sparse matrices.

Everything here is a value type.  Polynomials are keyed by exponent pairs
``(e0, e1)``; for bundle data the pair is ``(z, u)``, for plane curves it is
``(x, y)``.  Iteration always runs in ``(e1, e0)`` lexicographic order so that
matrices assembled from polynomials come out identically on every run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping

from .errors import NegativeExponentInput

ExactScalar = Fraction

Monomial = tuple[int, int]


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(value)


def format_scalar(value: Fraction) -> str:
    """Serialize as ``"num/den"``, the bit-exact wire form."""
    return f"{value.numerator}/{value.denominator}"


def _order_key(mono: Monomial) -> tuple[int, int]:
    return (mono[1], mono[0])


class LaurentPoly:
    """Finitely supported map from exponent pairs to rationals.

    >>> z, u = LaurentPoly.monomial(1, 0), LaurentPoly.monomial(0, 1)
    >>> (z * u) * LaurentPoly.monomial(-1, 1) == u * u
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable | None = None):
        acc: dict[Monomial, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coeff in items:
                key = (int(mono[0]), int(mono[1]))
                acc[key] = acc.get(key, Fraction(0)) + as_scalar(coeff)
        self._terms = {m: c for m, c in sorted(acc.items(), key=lambda t: _order_key(t[0])) if c}
        self._hash = None

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, e0: int, e1: int, coeff=1) -> LaurentPoly:
        return cls({(e0, e1): coeff})

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, e0: int, e1: int) -> Fraction:
        return self._terms.get((e0, e1), Fraction(0))

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self.format()!r})"

    def __str__(self):
        return self.format()

    def __add__(self, other):
        other = _coerce(other)
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        acc: dict[Monomial, Fraction] = {}
        for (a0, a1), c in self._terms.items():
            for (b0, b1), d in other._terms.items():
                key = (a0 + b0, a1 + b1)
                acc[key] = acc.get(key, Fraction(0)) + c * d
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> LaurentPoly:
        c = as_scalar(c)
        return LaurentPoly({m: c * v for m, v in self._terms.items()})

    def shift(self, d0: int, d1: int) -> LaurentPoly:
        """Multiply by the monomial with exponents ``(d0, d1)``."""
        return LaurentPoly({(m[0] + d0, m[1] + d1): c for m, c in self._terms.items()})

    def derivative(self, var: int) -> LaurentPoly:
        acc = {}
        for m, c in self._terms.items():
            if m[var]:
                new = (m[0] - 1, m[1]) if var == 0 else (m[0], m[1] - 1)
                acc[new] = c * m[var]
        return LaurentPoly(acc)

    def filter(self, keep) -> LaurentPoly:
        """Terms whose exponent pair satisfies ``keep(e0, e1)``."""
        return LaurentPoly({m: c for m, c in self._terms.items() if keep(*m)})

    def min_exp(self, var: int) -> int:
        return min((m[var] for m in self._terms), default=0)

    def max_exp(self, var: int) -> int:
        return max((m[var] for m in self._terms), default=0)

    def min_total_degree(self) -> int:
        return min((m[0] + m[1] for m in self._terms), default=0)

    def max_total_degree(self) -> int:
        return max((m[0] + m[1] for m in self._terms), default=0)

    def has_negative_exponents(self) -> bool:
        return any(m[0] < 0 or m[1] < 0 for m in self._terms)

    def format(self, names: tuple[str, str] = ("z", "u")) -> str:
        """Render in the CLI input syntax, highest ``(e1, e0)`` term first."""
        if not self._terms:
            return "0"
        pieces = []
        for (e0, e1), c in reversed(list(self._terms.items())):
            factors = []
            for name, e in zip(names, (e0, e1)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
            mag = abs(c)
            if not factors:
                body = _format_abs(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([_format_abs(mag)] + factors)
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _format_abs(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _coerce(value) -> LaurentPoly:
    if isinstance(value, LaurentPoly):
        return value
    return LaurentPoly.constant(value)


def poly_arith(a: LaurentPoly, b, op: str) -> LaurentPoly:
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (``b`` a scalar)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown operation {op!r}")


def substitute_blowup(f: LaurentPoly) -> LaurentPoly:
    """Pull a curve back to the blow-up chart: ``x -> u``, ``y -> z*u``.

    ``f`` is keyed by ``(x, y)`` exponents; the result by ``(z, u)``.
    """
    if f.has_negative_exponents():
        raise NegativeExponentInput("curve polynomial must have nonnegative exponents")
    return LaurentPoly({(b, a + b): c for (a, b), c in f.items()})


# --------------------------------------------------------------------------
# sparse exact linear algebra


@dataclass(frozen=True)
class SparseMatrix:
    rows: int
    cols: int
    entries: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in self.entries.items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            if type(v) is not int:
                v = as_scalar(v)
            if v:
                clean[(r, c)] = v
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, data) -> SparseMatrix:
        data = [list(row) for row in data]
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row)})

    @classmethod
    def from_rows(cls, rows: list[Mapping[int, object]], cols: int) -> SparseMatrix:
        return cls(len(rows), cols, {(r, c): v for r, row in enumerate(rows) for c, v in row.items()})

    @classmethod
    def identity(cls, n: int) -> SparseMatrix:
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def transpose(self) -> SparseMatrix:
        return SparseMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def restrict_columns(self, columns: Iterable[int]) -> SparseMatrix:
        columns = sorted(set(columns))
        index = {c: k for k, c in enumerate(columns)}
        return SparseMatrix(
            self.rows,
            len(columns),
            {(r, index[c]): v for (r, c), v in self.entries.items() if c in index},
        )

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


def _integer_row(row: Mapping[int, Fraction | int]) -> dict[int, int]:
    den = lcm(*(v.denominator for v in row.values())) if row else 1
    if den == 1:
        return _primitive({c: int(v) for c, v in row.items()})
    return _primitive({c: int(v * den) for c, v in row.items()})


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def echelon_rows(rows: Iterable[Mapping[int, object]]) -> dict[int, dict[int, int]]:
    """Row echelon form by fraction-free elimination.

    Returns ``{pivot_column: primitive integer row}``.  Each incoming row is
    reduced on its leading (smallest) column against existing pivots, so the
    outcome depends only on row order and column numbering.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row({c: (v if type(v) is int else as_scalar(v)) for c, v in raw.items() if v})
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                if row[lead] < 0:
                    row = {c: -v for c, v in row.items()}
                pivots[lead] = row
                break
            a, b = row[lead], piv[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: b * v for c, v in row.items()}
            for c, v in piv.items():
                w = new.get(c, 0) - a * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _primitive(new)
    return pivots


def _peel_singletons(rows: list[dict[int, Fraction]]) -> tuple[int, list[dict[int, Fraction]]]:
    """Strip rows and columns that each contribute exactly one to the rank.

    A row with a single entry pivots on its column, which can then be erased
    from every other row.  A column met by a single row pivots on that row,
    which can then be discarded.  Returns the rank peeled off and the rows
    left for elimination, in their original order.
    """
    live = {r: dict(row) for r, row in enumerate(rows) if row}
    by_col: dict[int, set[int]] = {}
    for r, row in live.items():
        for c in row:
            by_col.setdefault(c, set()).add(r)
    peeled = 0
    changed = True
    while changed:
        changed = False
        for r in sorted(live):
            row = live.get(r)
            if row is None or len(row) != 1:
                continue
            (c,) = row
            peeled += 1
            for other in by_col.pop(c):
                live[other].pop(c)
                if not live[other]:
                    del live[other]
            changed = True
        for c in sorted(by_col):
            users = by_col.get(c)
            if users is None or len(users) != 1:
                continue
            (r,) = users
            peeled += 1
            for cc in live.pop(r):
                by_col[cc].discard(r)
                if not by_col[cc]:
                    del by_col[cc]
            changed = True
    return peeled, [live[r] for r in sorted(live)]


def rank(m: SparseMatrix) -> int:
    peeled, rest = _peel_singletons(m.row_dicts())
    return peeled + len(echelon_rows(rest))


def kernel_basis(m: SparseMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : m x = 0}``, one vector per non-pivot column.

    The vector for free column ``f`` has a 1 in slot ``f``, zeros in the
    other free slots, and pivot slots solved by back substitution.
    """
    pivots = echelon_rows(m.row_dicts())
    pivot_cols = sorted(pivots, reverse=True)
    basis = []
    for free in range(m.cols):
        if free in pivots:
            continue
        x = {free: Fraction(1)}
        for pc in pivot_cols:
            row = pivots[pc]
            s = sum((Fraction(v) * x[c] for c, v in row.items() if c != pc and c in x), Fraction(0))
            if s:
                x[pc] = -s / row[pc]
        basis.append(tuple(x.get(c, Fraction(0)) for c in range(m.cols)))
    return basis


def projected_solution_dim(m: SparseMatrix, keep: Iterable[int]) -> int:
    """Dimension of the image of ``ker m`` under projection to ``keep``.

    Uses ``dim pi(ker M) = dim ker M - dim(ker M with keep-coordinates 0)``;
    the second kernel is the kernel of ``M`` restricted to the other columns.
    """
    keep = set(keep)
    if any(not 0 <= c < m.cols for c in keep):
        raise IndexError("keep set references a column outside the matrix")
    drop = [c for c in range(m.cols) if c not in keep]
    return len(keep) - rank(m) + rank(m.restrict_columns(drop))


def integer_coefficients(p: LaurentPoly) -> tuple[int, dict[Monomial, int]]:
    """``(D, q)`` with ``q = D * p`` integral and ``D`` the least such."""
    den = lcm(*(c.denominator for _, c in p.items())) if p else 1
    return den, {m: int(c * den) for m, c in p.items()}
