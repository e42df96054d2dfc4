import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from algrel import MonomialIdeal, PreconditionError, alexander_dual, boundary_dual, contains, minimalize
from algrel.duality import artinian_closure, minimal_transversals, upper_boundary_points

from conftest import box, brute_member, ideals


def brute_maximal_outside(gens, caps):
    outside = [s for s in box(caps) if not brute_member(gens, s)]
    return sorted(
        s for s in outside
        if not any(t != s and all(a <= b for a, b in zip(s, t)) for t in outside)
    )


def test_binary_series_dual_is_parallel():
    I = minimalize([(1, 1, 1)])
    assert alexander_dual(I, (1, 1, 1)).gens == ((0, 0, 1), (0, 1, 0), (1, 0, 0))


def test_series_boundary_points():
    I = minimalize([(1, 1, 1)])
    assert upper_boundary_points(I, (2, 2, 2)) == [(0, 2, 2), (2, 0, 2), (2, 2, 0)]
    I2 = minimalize([(2, 2, 2)])
    assert upper_boundary_points(I2, (2, 2, 2)) == [(1, 2, 2), (2, 1, 2), (2, 2, 1)]


def test_dual_edge_cases():
    assert alexander_dual(MonomialIdeal.zero(2), (1, 1)).is_unit()
    assert alexander_dual(MonomialIdeal.unit(2), (1, 1)).is_zero()
    with pytest.raises(PreconditionError):
        alexander_dual(minimalize([(3, 0)]), (2, 2))
    with pytest.raises(PreconditionError):
        artinian_closure(minimalize([(3, 0)]), (2, 2))


@st.composite
def ideal_and_nu(draw):
    I = draw(ideals(max_vars=4, max_exp=3, max_gens=6))
    top = I.lcm_of_generators()
    nu = tuple(t + draw(st.integers(0, 1)) for t in top)
    return I, nu


@settings(deadline=None)
@given(ideal_and_nu())
def test_dual_is_involution(case):
    I, nu = case
    assert alexander_dual(alexander_dual(I, nu), nu) == I


@settings(deadline=None)
@given(ideal_and_nu())
def test_dual_membership_reflects_complement(case):
    # For b <= nu: x^b lies in the dual exactly when x^(nu - b) avoids I.
    I, nu = case
    D = alexander_dual(I, nu)
    for b in box(nu):
        assert contains(D, b) == (not contains(I, tuple(v - e for v, e in zip(nu, b))))


@settings(deadline=None)
@given(st.data())
def test_boundary_points_are_maximal_failures(data):
    n = data.draw(st.integers(1, 4))
    caps = data.draw(st.tuples(*[st.integers(1, 3)] * n))
    gens = data.draw(st.lists(st.tuples(*[st.integers(0, c) for c in caps]), min_size=1, max_size=6))
    I = minimalize(gens, n)
    assert upper_boundary_points(I, caps) == brute_maximal_outside(I.gens, caps)


def test_transversals_against_brute_force():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randint(1, 8)
        edges = [rng.randint(1, 2**n - 1) for _ in range(rng.randint(1, 7))]
        got = minimal_transversals(edges, n)
        hitting = [t for t in range(2**n) if all(t & e for e in edges)]
        want = sorted(t for t in hitting if not any(h != t and h & t == h for h in hitting))
        assert got == want


def test_transversals_wide_path_matches_u64():
    rng = random.Random(5)
    for _ in range(20):
        edges = [rng.getrandbits(12) | 1 for _ in range(6)]
        wide = [e << 60 for e in edges]
        assert [t >> 60 for t in minimal_transversals(wide, 72)] == minimal_transversals(edges, 12)


def test_binary_fast_path_matches_generic_dual():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(1, 7)
        gens = [tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(rng.randint(1, 6))]
        I = minimalize(gens)
        caps = (1,) * n
        assert boundary_dual(I, caps) == alexander_dual(artinian_closure(I, caps), (2,) * n)
