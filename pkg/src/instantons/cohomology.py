"""Width, height and charge of ``E(j, p)``.

Both numbers are dimensions of quotients of infinite-dimensional spaces of
monomial series.  We truncate to a finite window of exponents, build the
linear system, and accept a value only after three consecutive windows agree.

Chart holomorphy is decided by four monomial predicates on ``z^l u^i``
(U-coordinates throughout):

* U-chart holomorphic: ``l >= 0`` and ``i >= 0``
* V-chart holomorphic: ``l <= i`` and ``i >= 0``
* the same two with ``i`` unrestricted, off the exceptional divisor

Height is ``dim H^1`` of the two-chart Cech complex.  Cochains are written in
the V-frame, so coboundaries are ``T s_U + s_V`` with ``T`` the transition
matrix.  Width is ``dim Gamma(off divisor) / Gamma(everywhere)``: sections
``s_U`` holomorphic on U minus the divisor whose image ``T s_U`` is
holomorphic on V minus the divisor, modulo those without poles along ``u``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .algebra import LaurentPoly, SparseMatrix, integer_coefficients, projected_solution_dim, rank
from .bundle import TransitionData
from .errors import BoundViolation, NegativeUExponent, StabilizationFailure

log = logging.getLogger(__name__)

STABLE_RUN = 3


@dataclass(frozen=True)
class Window:
    i_min: int
    i_max: int
    l_min: int
    l_max: int

    def __post_init__(self):
        if not self.i_min <= 0 <= self.i_max:
            raise ValueError(f"window needs i_min <= 0 <= i_max, got [{self.i_min}, {self.i_max}]")
        if self.l_min > self.l_max:
            raise ValueError(f"window needs l_min <= l_max, got [{self.l_min}, {self.l_max}]")

    def as_dict(self) -> dict[str, int]:
        return {"iMin": self.i_min, "iMax": self.i_max, "lMin": self.l_min, "lMax": self.l_max}


@dataclass(frozen=True)
class Certified:
    value: int
    window: Window
    history: tuple[int, ...] = ()


@dataclass(frozen=True)
class InstantonNumbers:
    width: int
    height: int
    charge: int
    width_window: Window | None = field(default=None, compare=False)
    height_window: Window | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.charge != self.width + self.height:
            raise ValueError("charge must equal width + height")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.width, self.height)


def _closure(d: TransitionData, i_min: int, i_max: int, l_min: int) -> Window:
    p = d.p
    j = d.j
    l_max = max(i_max + j + p.max_exp(0), j, -p.min_exp(0))
    return Window(i_min, i_max, min(l_min, 0), l_max)


def initial_window(d: TransitionData) -> Window:
    j, p = d.j, d.p
    i_max = max(2 * j - 2, p.max_exp(1), 0)
    return _closure(d, -j, i_max, -j + p.min_exp(0) - 1)


def grow(d: TransitionData, w: Window) -> Window:
    i_max = max(2 * w.i_max, w.i_max + 1)
    return _closure(d, 2 * w.i_min, i_max, w.l_min - (i_max - w.i_max))


@dataclass(frozen=True)
class Schedule:
    """Window growth policy: double ``i_max`` until it would exceed ``max_i``.

    ``max_i=None`` means four times the initial ``i_max`` (at least ``4j``),
    which leaves room for exactly the three windows a certificate needs.
    """

    max_i: int | None = None

    def windows(self, d: TransitionData) -> Iterator[Window]:
        w = initial_window(d)
        cap = self.max_i
        if cap is None:
            cap = max(4 * w.i_max, 4 * d.j, 2)
        while w.i_max <= cap:
            yield w
            w = grow(d, w)


DEFAULT_SCHEDULE = Schedule()


def stabilized_dimension(measure: Callable[[Window], int], windows) -> Certified:
    """First value attained on three consecutive windows of the schedule."""
    history: list[int] = []
    seen: list[Window] = []
    for w in windows:
        history.append(measure(w))
        seen.append(w)
        if len(history) >= STABLE_RUN and len(set(history[-STABLE_RUN:])) == 1:
            return Certified(history[-1], seen[-STABLE_RUN], tuple(history))
    last = seen[-1] if seen else None
    raise StabilizationFailure(
        f"dimension did not stabilize over {len(history)} window(s) {history}"
        + (f"; largest window {last.as_dict()}" if last else "; schedule produced no admissible window")
    )


def _check_input(d: TransitionData):
    if any(i < 0 for (_, i) in d.p):
        raise NegativeUExponent("extension class has a negative power of u")


# --------------------------------------------------------------------------
# height


def height_system(d: TransitionData, w: Window) -> SparseMatrix:
    """Coboundary generators (rows) over the windowed cochain monomials.

    Columns: second-component cochains first, then first-component ones,
    each ordered by ``(i, l)``.  Terms falling outside the window are dropped;
    the window closure conditions make every dropped monomial a coboundary
    on its own, so this is a quotient and not an approximation.
    """
    j = d.j
    # rows through p are scaled by den so every entry is an integer
    den, p = integer_coefficients(d.p)
    cols: dict[tuple[int, int, int], int] = {}
    for comp in (2, 1):
        for i in range(0, w.i_max + 1):
            for l in range(w.l_min, w.l_max + 1):
                cols[(comp, l, i)] = len(cols)

    rows: list[dict[int, int]] = []
    for (comp, l, i), c in cols.items():
        if l <= i:
            rows.append({c: 1})
    # T applied to U-holomorphic sections (a, 0) and (0, b)
    for i in range(0, w.i_max + 1):
        for l in range(0, w.l_max - j + 1):
            c = cols.get((1, l + j, i))
            if c is not None:
                rows.append({c: 1})
        for l in range(0, w.l_max + j + 1):
            row: dict[int, int] = {}
            c = cols.get((2, l - j, i))
            if c is not None:
                row[c] = den
            for (pl, pi), coeff in p.items():
                c = cols.get((1, l + pl, i + pi))
                if c is not None:
                    row[c] = coeff
            if row:
                rows.append(row)
    return SparseMatrix.from_rows(rows, len(cols))


def height_in_window(d: TransitionData, w: Window) -> int:
    m = height_system(d, w)
    return m.cols - rank(m)


def height_certified(d: TransitionData, schedule: Schedule = DEFAULT_SCHEDULE) -> Certified:
    _check_input(d)
    return stabilized_dimension(lambda w: height_in_window(d, w), schedule.windows(d))


def height(d: TransitionData, schedule: Schedule = DEFAULT_SCHEDULE) -> int:
    return height_certified(d, schedule).value


# --------------------------------------------------------------------------
# width


def width_system(d: TransitionData, w: Window) -> tuple[SparseMatrix, list[int]]:
    """Holomorphy constraints on windowed sections, plus the pole coordinates.

    Unknowns are the coefficients of ``s1, s2`` at ``z^l u^i`` with
    ``0 <= l <= l_max`` and ``i_min <= i <= i_max``; columns list all ``s1``
    unknowns before the ``s2`` ones.  Returns the matrix and the columns
    with ``i < 0``.
    """
    j = d.j
    den, p = integer_coefficients(d.p)
    cols: dict[tuple[int, int, int], int] = {}
    for comp in (1, 2):
        for i in range(w.i_min, w.i_max + 1):
            for l in range(0, w.l_max + 1):
                cols[(comp, l, i)] = len(cols)

    rows: list[dict[int, int]] = []
    # second component z^-j s2 must be V-holomorphic
    for i in range(w.i_min, w.i_max + 1):
        for l in range(0, w.l_max + 1):
            if l - j > i:
                rows.append({cols[(2, l, i)]: 1})
    # first component z^j s1 + p s2 must be V-holomorphic
    z_hi = w.l_max + max(j, d.p.max_exp(0), 0)
    for i in range(w.i_min, w.i_max + 1):
        for m in range(i + 1, z_hi + 1):
            row: dict[int, int] = {}
            c = cols.get((1, m - j, i))
            if c is not None:
                row[c] = den
            for (pl, pi), coeff in p.items():
                c = cols.get((2, m - pl, i - pi))
                if c is not None:
                    row[c] = coeff
            if row:
                rows.append(row)
    keep = [c for (comp, l, i), c in cols.items() if i < 0]
    return SparseMatrix.from_rows(rows, len(cols)), keep


def width_in_window(d: TransitionData, w: Window) -> int:
    m, keep = width_system(d, w)
    return projected_solution_dim(m, keep)


def width_certified(d: TransitionData, schedule: Schedule = DEFAULT_SCHEDULE) -> Certified:
    _check_input(d)
    return stabilized_dimension(lambda w: width_in_window(d, w), schedule.windows(d))


def width(d: TransitionData, schedule: Schedule = DEFAULT_SCHEDULE) -> int:
    return width_certified(d, schedule).value


# --------------------------------------------------------------------------


def check_bounds(j: int, w: int, h: int):
    """Raise on a charge outside ``[j, j^2]``; log the finer stratum bounds."""
    c = w + h
    if not j <= c <= j * j:
        raise BoundViolation(f"charge {c} outside [{j}, {j * j}] for j={j} (w={w}, h={h})")
    if j >= 1:
        if not 1 <= w <= j * (j + 1) // 2:
            log.warning("width %d outside [1, %d] for j=%d", w, j * (j + 1) // 2, j)
        if not j - 1 <= h <= j * (j - 1) // 2:
            log.warning("height %d outside [%d, %d] for j=%d", h, j - 1, j * (j - 1) // 2, j)


def instanton_numbers(d: TransitionData, schedule: Schedule = DEFAULT_SCHEDULE) -> InstantonNumbers:
    wc = width_certified(d, schedule)
    hc = height_certified(d, schedule)
    check_bounds(d.j, wc.value, hc.value)
    return InstantonNumbers(wc.value, hc.value, wc.value + hc.value, wc.window, hc.window)


def numbers_for(j: int, p: LaurentPoly, schedule: Schedule = DEFAULT_SCHEDULE) -> InstantonNumbers:
    return instanton_numbers(TransitionData(j, p), schedule)
