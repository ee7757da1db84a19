from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from instantons.algebra import LaurentPoly
from instantons.bundle import CanonicalCoefficients, TransitionData, coefficient_count, from_curve
from instantons.cohomology import (
    InstantonNumbers,
    Schedule,
    Window,
    check_bounds,
    height,
    height_certified,
    initial_window,
    instanton_numbers,
    numbers_for,
    width,
    width_certified,
)
from instantons.errors import BoundViolation, NegativeUExponent, StabilizationFailure
from instantons.parsing import to_poly

import oracles


def zu(src):
    return to_poly(src, "zu")


def as_dict(p: LaurentPoly) -> dict:
    return {k: v for k, v in p.items()}


@pytest.mark.parametrize("j", range(0, 7))
def test_split_bundle_against_lattice_count(j):
    n = numbers_for(j, LaurentPoly.zero())
    assert n.width == oracles.split_width_count(j)
    assert n.height == oracles.split_height_count(j)


@pytest.mark.parametrize("j", range(1, 6))
def test_generic_class(j):
    assert numbers_for(j, zu("u")).pair == (1, j - 1)


@pytest.mark.parametrize(
    "j, p, pair",
    [
        (2, "z*u^2", (2, 1)),
        (2, "u", (1, 1)),
        (2, "z*u", (1, 1)),
        (4, "0", (10, 6)),
        (4, "-z^2*u^5", (8, 6)),
        (4, "u^2", (3, 5)),
        (4, "u^3", (6, 6)),
        (3, "z*u^2", (2, 3)),
    ],
)
def test_known_pairs(j, p, pair):
    assert numbers_for(j, zu(p)).pair == pair


@pytest.mark.parametrize(
    "j, p",
    [(2, "z*u^2"), (2, "u + z*u"), (3, "u^2"), (3, "z^2*u^3 - u^2"), (3, "z*u^4"), (4, "u^2"), (4, "-z^2*u^5")],
)
def test_against_bruteforce_oracles(j, p):
    d = TransitionData(j, zu(p))
    assert height(d) == oracles.height_reduced(j, as_dict(d.p))
    assert width(d) == oracles.width_bruteforce(j, as_dict(d.p))


@given(st.integers(2, 3), st.data())
@settings(max_examples=12, deadline=None)
def test_random_classes_against_oracles(j, data):
    vals = data.draw(
        st.lists(st.sampled_from([-1, 0, 0, 1, 2]), min_size=coefficient_count(j), max_size=coefficient_count(j))
    )
    d = CanonicalCoefficients(j, tuple(vals)).to_transition()
    p = as_dict(d.p)
    assert height(d) == oracles.height_reduced(j, p)
    assert width(d) == oracles.width_bruteforce(j, p)


def test_non_canonical_input_gives_canonical_numbers():
    # removable terms change nothing even when passed straight to the solvers
    base = TransitionData(3, zu("u^2"))
    noisy = TransitionData(3, zu("u^2 + z^3*u + z^5*u^4") + LaurentPoly({(-2, 1): 7}))
    assert instanton_numbers(noisy).pair == instanton_numbers(base).pair


def test_certificates():
    d = TransitionData(3, zu("z*u^2"))
    wc = width_certified(d)
    hc = height_certified(d)
    assert len(set(wc.history[-3:])) == 1
    assert wc.window == initial_window(d)
    assert hc.value == 3
    assert wc.window.as_dict().keys() == {"iMin", "iMax", "lMin", "lMax"}


def test_capped_schedule_fails():
    d = TransitionData(3, zu("u"))
    with pytest.raises(StabilizationFailure):
        width_certified(d, Schedule(max_i=2))
    with pytest.raises(StabilizationFailure):
        height_certified(d, Schedule(max_i=8))


def test_negative_u_rejected():
    with pytest.raises(NegativeUExponent):
        width(TransitionData(2, LaurentPoly({(0, -1): 1})))


def test_window_validation():
    with pytest.raises(ValueError):
        Window(1, 3, 0, 4)
    with pytest.raises(ValueError):
        Window(-1, 3, 5, 4)


def test_numbers_record():
    with pytest.raises(ValueError):
        InstantonNumbers(1, 1, 3)
    assert InstantonNumbers(2, 1, 3) == InstantonNumbers(2, 1, 3, Window(-1, 1, 0, 2))


def test_bounds():
    check_bounds(3, 1, 2)
    with pytest.raises(BoundViolation):
        check_bounds(3, 1, 1)
    with pytest.raises(BoundViolation):
        check_bounds(2, 3, 2)


@pytest.mark.parametrize("lam", [Fraction(2), Fraction(-3), Fraction(1, 2)])
def test_scaling(lam):
    p = zu("u^2 - z*u^3 + 2*z^2*u^4")
    assert numbers_for(3, p.scale(lam)) == numbers_for(3, p)


def test_nodes_vs_cusps_separated_by_splitting_depth():
    # a node splits on no neighborhood, a cusp at least on the first
    node = from_curve(to_poly("y^2 - x^2"), 3)
    cusp = from_curve(to_poly("y^2 - x^3"), 3)
    assert instanton_numbers(node).pair != instanton_numbers(cusp).pair
