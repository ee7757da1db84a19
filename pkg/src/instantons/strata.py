"""Sweeps over the canonical coefficient space ``Q^J`` binned by ``(w, h)``.

Samples are canonical coefficient vectors.  A sweep is either the full grid
``values^J`` or a seeded random draw; in both cases the sample sequence is a
pure function of the spec, so reruns give identical records.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LaurentPoly, SparseMatrix, rank
from .bundle import (
    CanonicalCoefficients,
    TransitionData,
    canonical_monomials,
    coefficient_count,
    embed,
    in_canonical_range,
)
from .cohomology import DEFAULT_SCHEDULE, Schedule, instanton_numbers
from .errors import BoundViolation, InfeasibleGrid

DEFAULT_GRID = (Fraction(-1), Fraction(0), Fraction(1))
DEFAULT_GRID_CAP = 729
MAX_REPRESENTATIVES = 3

# random draws: numerator in [-NUM, NUM], denominator in [1, DEN]
NUM_RANGE = 3
DEN_RANGE = 3


@dataclass(frozen=True)
class SweepSpec:
    j: int
    mode: str = "grid"
    coefficient_set: tuple[Fraction, ...] = DEFAULT_GRID
    sample_count: int = 0
    seed: int = 0
    grid_cap: int = DEFAULT_GRID_CAP
    schedule: Schedule = DEFAULT_SCHEDULE
    workers: int = 1

    def __post_init__(self):
        if self.j < 0:
            raise ValueError("splitting type must be nonnegative")
        if self.mode not in ("grid", "random"):
            raise ValueError(f"unknown sweep mode {self.mode!r}")
        object.__setattr__(self, "coefficient_set", tuple(Fraction(c) for c in self.coefficient_set))
        if self.mode == "grid" and not self.coefficient_set:
            raise ValueError("grid sweep needs at least one coefficient value")
        if self.sample_count < 0:
            raise ValueError("sample count must be nonnegative")

    @property
    def grid_size(self) -> int:
        return len(self.coefficient_set) ** coefficient_count(self.j)


@dataclass(frozen=True)
class StratumRecord:
    width: int
    height: int
    charge: int
    sample_count: int
    representatives: tuple[CanonicalCoefficients, ...] = field(default=())

    @property
    def pair(self) -> tuple[int, int]:
        return (self.width, self.height)


def samples(spec: SweepSpec) -> list[CanonicalCoefficients]:
    """The sample sequence of ``spec``, in evaluation order."""
    j = spec.j
    n = coefficient_count(j)
    if spec.mode == "grid":
        if spec.grid_size > spec.grid_cap:
            raise InfeasibleGrid(
                f"grid has {len(spec.coefficient_set)}^{n} = {spec.grid_size} points, above the cap {spec.grid_cap}; use random sampling"
            )
        return [CanonicalCoefficients(j, c) for c in itertools.product(spec.coefficient_set, repeat=n)]
    if n == 0:
        return [CanonicalCoefficients(j, ())] * spec.sample_count
    rng = random.Random(spec.seed)
    slots = canonical_monomials(j)
    out = []
    for _ in range(spec.sample_count):
        # vanishing order along the divisor first, so deep strata get hit
        order = rng.randint(1, 2 * j - 1)
        coeffs = []
        for (i, _l) in slots:
            if i < order:
                coeffs.append(Fraction(0))
            else:
                coeffs.append(Fraction(rng.randint(-NUM_RANGE, NUM_RANGE), rng.randint(1, DEN_RANGE)))
        out.append(CanonicalCoefficients(j, tuple(coeffs)))
    return out


def _evaluate(args: tuple[CanonicalCoefficients, Schedule]) -> tuple[int, int]:
    c, schedule = args
    return instanton_numbers(c.to_transition(), schedule).pair


def evaluate_all(points: list[CanonicalCoefficients], schedule: Schedule, workers: int = 1) -> list[tuple[int, int]]:
    jobs = [(c, schedule) for c in points]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map keeps submission order
            return list(pool.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    return [_evaluate(job) for job in jobs]


def is_generic(c: CanonicalCoefficients) -> bool:
    return any(c.block(1))


def sweep(spec: SweepSpec) -> list[StratumRecord]:
    """Bin samples by ``(w, h)``; records sorted by ``(charge, width)``."""
    points = samples(spec)
    pairs = evaluate_all(points, spec.schedule, spec.workers)
    bins: dict[tuple[int, int], list[CanonicalCoefficients]] = {}
    counts: dict[tuple[int, int], int] = {}
    for c, pair in zip(points, pairs):
        counts[pair] = counts.get(pair, 0) + 1
        reps = bins.setdefault(pair, [])
        if len(reps) < MAX_REPRESENTATIVES and c not in reps:
            reps.append(c)
    records = [
        StratumRecord(w, h, w + h, counts[(w, h)], tuple(bins[(w, h)]))
        for (w, h) in sorted(counts, key=lambda wh: (wh[0] + wh[1], wh[0]))
    ]
    _post_check(spec.j, points, pairs)
    return records


def _post_check(j: int, points: list[CanonicalCoefficients], pairs: list[tuple[int, int]]):
    top = (j * (j + 1) // 2, j * (j - 1) // 2)
    for c, (w, h) in zip(points, pairs):
        if not j <= w + h <= j * j:
            raise BoundViolation(f"charge {w + h} outside [{j}, {j * j}] at {c.coeffs}")
        if j >= 1 and not (1 <= w <= top[0] and j - 1 <= h <= top[1]):
            raise BoundViolation(f"(w, h) = ({w}, {h}) outside the stratum bounds for j={j} at {c.coeffs}")
        if is_generic(c) and (w, h) != (1, j - 1):
            raise BoundViolation(f"generic sample {c.coeffs} has (w, h) = ({w}, {h}), expected (1, {j - 1})")
        if ((w, h) == top) != (not any(c.coeffs)):
            raise BoundViolation(f"pair {top} must occur exactly at the split bundle; sample {c.coeffs} gives ({w}, {h})")


# --------------------------------------------------------------------------
# local moduli N_i


@dataclass(frozen=True)
class ChargeStratum:
    j: int
    width: int
    height: int
    sample_count: int
    parameter_count: int
    mode: str = "grid"


@dataclass(frozen=True)
class LocalModuliReport:
    charge: int
    strata: tuple[ChargeStratum, ...]
    structure: str | None
    structure_ok: bool | None


EXPECTED_STRUCTURE = {0: "point", 1: "point", 2: "P1"}


def observed_parameter_count(reps: list[CanonicalCoefficients]) -> int:
    """Projective count of independent directions in the lowest nonzero block.

    Only the lowest ``u``-degree block of a stratum matters up to the
    identifications in the coefficient space; its span, projectivized, is
    what the grid can see.
    """
    nonzero = [c for c in reps if any(c.coeffs)]
    if not nonzero:
        return 0
    low = min(min(i for (i, _), v in zip(canonical_monomials(c.j), c.coeffs) if v) for c in nonzero)
    vectors = [c.block(low) for c in nonzero if any(c.block(low))]
    r = rank(SparseMatrix.from_dense([list(v) for v in vectors]))
    return max(r - 1, 0)


def local_moduli_summary(
    i: int,
    max_j: int,
    coefficient_set=DEFAULT_GRID,
    grid_cap: int = DEFAULT_GRID_CAP,
    schedule: Schedule = DEFAULT_SCHEDULE,
    sample_count: int = 200,
    seed: int = 0,
) -> LocalModuliReport:
    """Strata of charge ``i`` across ``j <= max_j``.

    Each ``j`` is swept on the full grid when it fits under ``grid_cap`` and
    by ``sample_count`` seeded random draws otherwise.
    """
    if i < 0:
        raise ValueError("charge must be nonnegative")
    found = []
    j_lo = math.isqrt(i) + (0 if math.isqrt(i) ** 2 == i else 1)
    for j in range(j_lo, min(i, max_j) + 1):
        spec = SweepSpec(j, "grid", coefficient_set, grid_cap=grid_cap, schedule=schedule)
        if spec.grid_size > grid_cap:
            spec = SweepSpec(j, "random", sample_count=sample_count, seed=seed, schedule=schedule)
        points = samples(spec)
        pairs = evaluate_all(points, schedule)
        by_pair: dict[tuple[int, int], list[CanonicalCoefficients]] = {}
        for c, (w, h) in zip(points, pairs):
            if w + h == i:
                by_pair.setdefault((w, h), []).append(c)
        for (w, h), reps in sorted(by_pair.items()):
            found.append(ChargeStratum(j, w, h, len(reps), observed_parameter_count(reps), spec.mode))
    structure = EXPECTED_STRUCTURE.get(i)
    ok = None
    if structure is not None:
        want = 0 if structure == "point" else 1
        ok = len(found) == 1 and found[0].parameter_count == want and (i != 1 or found[0].j == 1)
        if i == 2:
            ok = ok and found[0].j == 2 and found[0].width == 1
    return LocalModuliReport(i, tuple(found), structure, ok)


# --------------------------------------------------------------------------
# embedding M_j -> M_{j+1}


@dataclass(frozen=True)
class EmbeddingCase:
    source: CanonicalCoefficients
    image: TransitionData
    pair: tuple[int, int]
    variant_pairs: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class EmbeddingReport:
    j: int
    cases: tuple[EmbeddingCase, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def random_removable(j: int, rng: random.Random, count: int) -> LaurentPoly:
    """A sum of ``count`` random monomials absorbed by a change of trivialization."""
    acc = LaurentPoly.zero()
    for _ in range(count):
        i = rng.randint(1, 2 * j)
        if rng.random() < 0.5:
            l = j + rng.randint(0, 2)
        else:
            l = i - j - rng.randint(0, 2)
        acc = acc + LaurentPoly.monomial(l, i, Fraction(rng.randint(1, NUM_RANGE) * rng.choice((-1, 1)), rng.randint(1, DEN_RANGE)))
    return acc


def check_embedding(j: int, spec: SweepSpec, variants: int = 2) -> EmbeddingReport:
    if j < 2:
        raise ValueError("embedding check needs j >= 2")
    if spec.j != j:
        spec = SweepSpec(j, spec.mode, spec.coefficient_set, spec.sample_count, spec.seed, spec.grid_cap, spec.schedule)
    rng = random.Random(spec.seed ^ 0x5EED)
    cases = []
    violations = []
    for c in samples(spec):
        d = c.to_transition()
        image = embed(d)
        bad = [(l, i) for (l, i) in image.p if not in_canonical_range(j + 1, l, i)]
        if bad:
            violations.append(f"image of {d.format()} has terms outside the canonical range: {bad}")
        pair = instanton_numbers(image, spec.schedule).pair
        vpairs = []
        for _ in range(variants):
            noisy = TransitionData(j, d.p + random_removable(j, rng, 2))
            vp = instanton_numbers(embed(noisy), spec.schedule).pair
            vpairs.append(vp)
            if vp != pair:
                violations.append(f"{noisy.format()} embeds to (w, h) = {vp}, expected {pair} as for {d.format()}")
        cases.append(EmbeddingCase(c, image, pair, tuple(vpairs)))
    return EmbeddingReport(j, tuple(cases), tuple(violations))
