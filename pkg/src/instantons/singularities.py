"""Classical invariants of a plane curve germ at the origin.

Local colengths ``dim O/I`` are computed on truncations: with ``m`` the
maximal ideal, ``c(N) = dim O/(I + m^N)`` is plain linear algebra on the
monomials of degree below ``N``.  When ``c(N) == c(N+1)`` we have
``m^N ⊆ I + m^(N+1)``, hence ``m^N ⊆ I`` by Nakayama, and ``c(N)`` is the
colength.  A germ whose sequence never settles below the cap has a
non-isolated singularity.

Branches are counted through the Newton polygon.  Each compact edge gives a
univariate edge polynomial; a simple root is one branch.  A repeated
rational root is followed into the toric chart attached to that edge, where
it becomes an ordinary point of a new germ and the count recurses.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

import sympy

from .algebra import LaurentPoly, SparseMatrix, rank
from .bundle import from_curve
from .cohomology import DEFAULT_SCHEDULE, InstantonNumbers, Schedule, instanton_numbers
from .errors import (
    CurveMissesOrigin,
    ExtensionFieldRecursionUnsupported,
    NegativeExponentInput,
    NonIsolatedSingularity,
    NonReducedGerm,
    ParityViolation,
)

MAX_RECURSION = 64


@dataclass(frozen=True)
class CurveGerm:
    """Germ at the origin of ``f(x, y) = 0``; ``f`` keyed by ``(x, y)`` exponents."""

    f: LaurentPoly

    def __post_init__(self):
        if self.f.is_zero():
            raise CurveMissesOrigin("the zero polynomial does not define a curve")
        if self.f.has_negative_exponents():
            raise NegativeExponentInput("curve polynomial must have nonnegative exponents")
        if self.f.coefficient(0, 0) != 0:
            raise CurveMissesOrigin("curve does not pass through the origin")

    @property
    def degree(self) -> int:
        return self.f.max_total_degree()


@dataclass(frozen=True)
class ClassicalInvariants:
    multiplicity: int
    milnor: int
    tjurina: int
    branches: int
    delta: int


def multiplicity(g: CurveGerm) -> int:
    return g.f.min_total_degree()


def default_cap(g: CurveGerm) -> int:
    return 4 * g.degree + 8


def truncated_colength(generators: list[LaurentPoly], n: int) -> int:
    """``dim O/(I + m^n)`` for the ideal generated by ``generators``."""
    monos = [(a, d - a) for d in range(n) for a in range(d, -1, -1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for gen in generators:
        if gen.is_zero():
            continue
        low = gen.min_total_degree()
        for (a, b) in monos:
            if a + b + low >= n:
                continue
            row = {}
            for (ga, gb), c in gen.items():
                k = index.get((ga + a, gb + b))
                if k is not None:
                    row[k] = c
            if row:
                rows.append(row)
    return len(monos) - rank(SparseMatrix.from_rows(rows, len(monos)))


def local_colength(generators: list[LaurentPoly], cap: int) -> int:
    """Colength at the origin, certified by two equal consecutive truncations."""
    previous = truncated_colength(generators, 1)
    for n in range(1, cap + 1):
        current = truncated_colength(generators, n + 1)
        if current == previous:
            return current
        previous = current
    raise NonIsolatedSingularity(f"colength did not stabilize up to degree {cap + 1}; singularity is not isolated")


def _gradient(f: LaurentPoly) -> list[LaurentPoly]:
    return [f.derivative(0), f.derivative(1)]


def milnor(g: CurveGerm, cap: int | None = None) -> int:
    return local_colength(_gradient(g.f), cap or default_cap(g))


def tjurina(g: CurveGerm, cap: int | None = None) -> int:
    return local_colength([g.f] + _gradient(g.f), cap or default_cap(g))


# --------------------------------------------------------------------------
# branch counting


def _check_reduced(f: LaurentPoly):
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**a * y**b for (a, b), c in f.items())
    _, factors = sympy.factor_list(sympy.Poly(expr, x, y, domain="QQ"))
    for factor, mult in factors:
        if mult > 1 and factor.eval({x: 0, y: 0}) == 0:
            raise NonReducedGerm(f"repeated factor ({factor.as_expr()})^{mult} through the origin")


def newton_edges(f: LaurentPoly) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Compact edges of the Newton polygon, from the ``y`` axis to the ``x`` axis.

    Assumes ``f`` has a pure power of ``x`` and a pure power of ``y``.
    """
    lowest: dict[int, int] = {}
    for (a, b) in f:
        lowest[a] = min(b, lowest.get(a, b))
    pts = sorted(lowest.items())
    hull: list[tuple[int, int]] = []
    for pt in pts:
        while len(hull) >= 2:
            (a1, b1), (a2, b2) = hull[-2], hull[-1]
            if (a2 - a1) * (pt[1] - b1) - (b2 - b1) * (pt[0] - a1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    edges = []
    for p, q in zip(hull, hull[1:]):
        if q[1] >= p[1]:
            break
        edges.append((p, q))
    return edges


def _univariate_factors(coeffs: list[Fraction]) -> list[tuple[list[Fraction], int]]:
    """Factor ``sum coeffs[k] t^k`` over the rationals."""
    t = sympy.Symbol("t")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for factor, mult in factors:
        out.append(([Fraction(int(c.p), int(c.q)) for c in reversed(factor.all_coeffs())], mult))
    return out


def _shift_second(f: LaurentPoly, y0: Fraction) -> LaurentPoly:
    """``f(X, y0 + Y)``."""
    acc: dict[tuple[int, int], Fraction] = {}
    for (a, b), c in f.items():
        power = Fraction(1)
        for k in range(b, -1, -1):
            key = (a, k)
            acc[key] = acc.get(key, Fraction(0)) + c * comb(b, k) * power
            power *= y0
    return LaurentPoly(acc)


def _toric_chart(f: LaurentPoly, dx: int, dy: int) -> LaurentPoly:
    """Pull back along ``x = X^dy Y^q``, ``y = X^dx Y^s`` with ``dy*s - dx*q = 1``.

    The weighted order ``dy*a + dx*b`` becomes the ``X``-exponent and is
    divided out, so the edge of slope ``dy/dx`` lands on ``X = 0``.
    """
    s = 1
    while (dy * s - 1) % dx:
        s += 1
    q = (dy * s - 1) // dx
    low = min(dy * a + dx * b for (a, b) in f)
    return LaurentPoly({(dy * a + dx * b - low, q * a + s * b): c for (a, b), c in f.items()})


def _count(f: LaurentPoly, depth: int) -> int:
    if depth > MAX_RECURSION:
        raise ExtensionFieldRecursionUnsupported("Newton-Puiseux recursion did not terminate")
    a0 = f.min_exp(0)
    b0 = f.min_exp(1)
    if a0 > 1 or b0 > 1:
        raise NonReducedGerm("a coordinate axis is a repeated component")
    count = a0 + b0
    g = f.shift(-a0, -b0)
    if g.coefficient(0, 0) != 0:
        return count
    for (a1, b1), (a2, b2) in newton_edges(g):
        length = gcd(a2 - a1, b1 - b2)
        dx, dy = (a2 - a1) // length, (b1 - b2) // length
        edge = [g.coefficient(a1 + k * dx, b1 - k * dy) for k in range(length + 1)]
        chart = None
        for factor, mult in _univariate_factors(edge):
            deg = len(factor) - 1
            if mult == 1:
                count += deg
                continue
            if deg > 1:
                raise ExtensionFieldRecursionUnsupported(
                    f"repeated irreducible edge factor of degree {deg} needs an algebraic extension"
                )
            t0 = -factor[0] / factor[1]
            if chart is None:
                chart = _toric_chart(g, dx, dy)
            count += _count(_shift_second(chart, 1 / t0), depth + 1)
    return count


def branch_count(g: CurveGerm) -> int:
    """Number of analytic branches of the germ at the origin."""
    _check_reduced(g.f)
    return _count(g.f, 0)


def delta(g: CurveGerm, cap: int | None = None) -> int:
    """Delta invariant from Milnor's formula ``2*delta = mu + r - 1``."""
    mu = milnor(g, cap)
    r = branch_count(g)
    return _delta_from(mu, r)


def _delta_from(mu: int, r: int) -> int:
    if (mu + r - 1) % 2:
        raise ParityViolation(f"mu + r - 1 = {mu + r - 1} is odd")
    return (mu + r - 1) // 2


def classical_invariants(g: CurveGerm, cap: int | None = None) -> ClassicalInvariants:
    mu = milnor(g, cap)
    tau = tjurina(g, cap)
    r = branch_count(g)
    return ClassicalInvariants(multiplicity(g), mu, tau, r, _delta_from(mu, r))


def curve_invariants(
    g: CurveGerm, j: int, schedule: Schedule = DEFAULT_SCHEDULE
) -> tuple[ClassicalInvariants, InstantonNumbers]:
    if j < 1:
        raise ValueError("splitting type must be at least 1")
    return classical_invariants(g), instanton_numbers(from_curve(g.f, j), schedule)
