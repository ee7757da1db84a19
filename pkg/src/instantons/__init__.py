"""Local instanton numbers of rank-2 bundles on the blown-up plane.

The usual entry points::

    from instantons import numbers_for, to_poly
    numbers_for(2, to_poly("u", vars="zu"))          # width 1, height 1

    from instantons import CurveGerm, curve_invariants
    curve_invariants(CurveGerm(to_poly("x^2 - y^7")), j=4)
"""

from .algebra import LaurentPoly, SparseMatrix, kernel_basis, rank
from .bundle import (
    CanonicalCoefficients,
    TransitionData,
    canonicalize,
    coefficient_count,
    embed,
    from_curve,
    splits_on_neighborhood,
    splitting_depth,
)
from .cohomology import (
    InstantonNumbers,
    Schedule,
    Window,
    height,
    instanton_numbers,
    numbers_for,
    width,
)
from .errors import InputError, InstantonError, SolverError
from .parsing import parse_poly, print_expr, to_poly
from .singularities import ClassicalInvariants, CurveGerm, classical_invariants, curve_invariants
from .strata import SweepSpec, StratumRecord, check_embedding, local_moduli_summary, sweep

__version__ = "0.1.0"
