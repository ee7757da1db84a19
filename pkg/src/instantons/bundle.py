"""Transition data ``(j, p)`` for rank-2 bundles on the blown-up plane.

The bundle ``E(j, p)`` is glued from the charts ``U = {(z, u)}`` and
``V = {(1/z, z*u)}`` by the matrix ``((z^j, p), (0, z^-j))``, taking
U-coordinates of a section to V-coordinates.  ``p`` lives in a LaurentPoly
keyed by ``(z, u)`` exponents.

A term ``z^l u^i`` of ``p`` can be absorbed by a change of trivialization
exactly when ``l >= j`` (a multiple of ``z^j`` times something holomorphic on
U) or ``l <= i - j`` (``z^-j`` times something holomorphic on V).  What is left
is the canonical range ``1 <= i <= 2j-2``, ``i-j+1 <= l <= j-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import LaurentPoly, as_scalar, substitute_blowup
from .errors import CurveMissesOrigin, NegativeUExponent, NonzeroDivisorRestriction


def canonical_monomials(j: int) -> list[tuple[int, int]]:
    """``(i, l)`` slots of the canonical form, lexicographic in ``(i, l)``."""
    return [(i, l) for i in range(1, 2 * j - 1) for l in range(i - j + 1, j)]


def coefficient_count(j: int) -> int:
    """Number of canonical coefficients, ``(j-1)(2j-1)`` for ``j >= 1``."""
    return len(canonical_monomials(j))


def is_removable(j: int, l: int, i: int) -> bool:
    return l >= j or l <= i - j


def in_canonical_range(j: int, l: int, i: int) -> bool:
    return 1 <= i <= 2 * j - 2 and i - j + 1 <= l <= j - 1


@dataclass(frozen=True)
class TransitionData:
    j: int
    p: LaurentPoly

    def __post_init__(self):
        if self.j < 0:
            raise ValueError("splitting type must be nonnegative")

    def is_canonical(self) -> bool:
        return all(in_canonical_range(self.j, l, i) for (l, i) in self.p)

    def coefficients(self) -> CanonicalCoefficients:
        return CanonicalCoefficients.from_transition(self)

    def format(self) -> str:
        return self.p.format(("z", "u"))


@dataclass(frozen=True)
class CanonicalCoefficients:
    j: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(as_scalar(c) for c in self.coeffs)
        if len(coeffs) != coefficient_count(self.j):
            raise ValueError(f"expected {coefficient_count(self.j)} coefficients for j={self.j}, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_transition(cls, d: TransitionData) -> CanonicalCoefficients:
        if not d.is_canonical():
            d = canonicalize(d.j, d.p)
        return cls(d.j, tuple(d.p.coefficient(l, i) for (i, l) in canonical_monomials(d.j)))

    def to_transition(self) -> TransitionData:
        p = LaurentPoly({(l, i): c for (i, l), c in zip(canonical_monomials(self.j), self.coeffs)})
        return TransitionData(self.j, p)

    def block(self, i: int) -> tuple[Fraction, ...]:
        """Coefficients of the ``u^i`` slots."""
        return tuple(c for (ii, _), c in zip(canonical_monomials(self.j), self.coeffs) if ii == i)


def canonicalize(j: int, p: LaurentPoly) -> TransitionData:
    """Drop every term of ``p`` that a change of trivialization removes.

    The result defines a bundle isomorphic to ``E(j, p)``.
    """
    if any(i < 0 for (_, i) in p):
        raise NegativeUExponent("extension class has a negative power of u")
    if any(i == 0 for (_, i) in p):
        raise NonzeroDivisorRestriction(
            "extension class is nonzero on the exceptional divisor (u^0 terms); splitting type would not be j"
        )
    return TransitionData(j, p.filter(lambda l, i: not is_removable(j, l, i)))


def embed(d: TransitionData) -> TransitionData:
    """``(j, p) -> (j + 1, z*u^2*p)``."""
    return TransitionData(d.j + 1, d.p.shift(1, 2))


def splits_on_neighborhood(d: TransitionData, n: int) -> bool:
    """True iff ``E`` restricted to the ``n``-th formal neighborhood is split.

    The ``n``-th neighborhood is cut out by ``u^(n+1)``, so the bundle splits
    there iff no canonical term has ``u``-degree ``<= n``.
    """
    p = d.p if d.is_canonical() else canonicalize(d.j, d.p).p
    return all(i > n for (_, i) in p)


def splitting_depth(d: TransitionData) -> int | None:
    """Largest ``n`` with ``E`` split on the ``n``-th neighborhood.

    ``None`` for the split bundle, which splits on every neighborhood.
    """
    p = d.p if d.is_canonical() else canonicalize(d.j, d.p).p
    if not p:
        return None
    return min(i for (_, i) in p) - 1


def from_curve(f: LaurentPoly, j: int) -> TransitionData:
    """Transition data of ``E(j, f(u, z*u))`` for a curve ``f(x, y) = 0``."""
    if f.coefficient(0, 0) != 0:
        raise CurveMissesOrigin("curve does not pass through the origin")
    return canonicalize(j, substitute_blowup(f))
