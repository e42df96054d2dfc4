import pytest
from hypothesis import given, settings

from algrel import (
    CoherentSystem,
    PreconditionError,
    ProbabilityTable,
    UnsupportedRouteError,
    build_parallel,
    build_series,
    minimalize,
)

from conftest import box, brute_member, brute_probability, systems

SERIES = build_series(3, (2, 2, 2), ProbabilityTable(((0.8, 0.75), (0.9, 0.8), (0.75, 0.7))))
PARALLEL = build_parallel(3, (2, 2, 2), ProbabilityTable(((0.25, 0.2), (0.2, 0.1), (0.3, 0.25))))
BINARY_SERIES = CoherentSystem("path", (1, 1, 1), [[(1, 1, 1)]], ProbabilityTable(((0.8,), (0.9,), (0.75,))))


def test_series_values():
    assert SERIES.reliability(1) == pytest.approx(0.54, abs=1e-12)
    assert SERIES.reliability(2) == pytest.approx(0.42, abs=1e-12)
    assert SERIES.unreliability(1) == pytest.approx(0.46, abs=1e-12)
    assert SERIES.minimal_paths(1) == [(1, 1, 1)]
    assert SERIES.minimal_cuts(1) == [(0, 2, 2), (2, 0, 2), (2, 2, 0)]
    assert SERIES.minimal_cuts(2) == [(1, 2, 2), (2, 1, 2), (2, 2, 1)]
    assert SERIES.is_nested()


def test_parallel_values():
    assert PARALLEL.unreliability(1) == pytest.approx(0.58, abs=1e-12)
    assert PARALLEL.unreliability(2) == pytest.approx(0.46, abs=1e-12)
    assert PARALLEL.minimal_cuts(2) == [(0, 0, 2), (0, 2, 0), (2, 0, 0)]
    rows = PARALLEL.unreliability_bounds(2)
    assert [(r.t, r.kind) for r in rows] == [(1, "upper"), (2, "lower"), (3, "exact")]
    assert [r.value for r in rows] == pytest.approx([0.55, 0.455, 0.46], abs=1e-12)


def test_dual_route_terms_of_binary_series():
    terms = BINARY_SERIES.dual_route_terms(1)
    assert sorted(v for _, _, v in terms) == pytest.approx(sorted([0.25, 0.1, 0.2, 0.025, 0.05, 0.02, 0.005]))
    assert BINARY_SERIES.unreliability_via_dual(1) == pytest.approx(0.46, abs=1e-12)
    assert sum(s * v for _, s, v in terms) == pytest.approx(0.46, abs=1e-12)


def test_single_generator_gives_single_exact_row():
    rows = SERIES.reliability_bounds(1)
    assert len(rows) == 1 and rows[0].kind == "exact"


def test_level_range_checked():
    with pytest.raises(PreconditionError):
        SERIES.reliability(0)
    with pytest.raises(PreconditionError):
        SERIES.reliability(3)


def test_invalid_construction():
    t = ProbabilityTable(((0.5,), (0.5,)))
    with pytest.raises(PreconditionError):
        CoherentSystem("both", (1, 1), [[(1, 0)]], t)
    with pytest.raises(PreconditionError):
        CoherentSystem("path", (1, 1), [[(2, 0)]], t)
    with pytest.raises(PreconditionError):
        CoherentSystem("path", (1, 2), [[(1, 0)]], t)
    with pytest.raises(PreconditionError):
        CoherentSystem("path", (1, 1), [], t)


def test_dual_route_refused_beyond_gate():
    caps = (2,) * 11
    table = ProbabilityTable.uniform(caps, 0.9)
    gens = [tuple(2 if k == i else 0 for k in range(11)) for i in range(11)]
    s = CoherentSystem("path", caps, [gens], table)
    assert not s.dual_route_admitted(1)
    assert s.route_for(1, "auto") == "primal"
    with pytest.raises(UnsupportedRouteError):
        s.reliability(1, "dual")


def test_auto_route_prefers_fewer_generators():
    assert PARALLEL.route_for(2) == "dual"
    assert SERIES.route_for(1) == "primal"


def test_zero_level_ideal():
    s = CoherentSystem("path", (1, 1), [minimalize([], 2)], ProbabilityTable(((0.5,), (0.5,))))
    assert s.reliability(1) == 0.0
    assert s.minimal_paths(1) == []
    assert s.minimal_cuts(1) == [(1, 1)]


@settings(max_examples=60, deadline=None)
@given(systems())
def test_reliability_matches_enumeration_on_every_route(s):
    for j in range(1, s.levels + 1):
        p = brute_probability(s.ideal(j).gens, s.table)
        want = p if s.kind == "path" else 1.0 - p
        assert s.reliability(j, "primal") == pytest.approx(want, abs=1e-12)
        assert s.dual_route_admitted(j)
        assert s.reliability(j, "dual") == pytest.approx(want, abs=1e-12)
        assert s.reliability(j) == pytest.approx(want, abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(systems())
def test_paths_and_cuts_split_the_state_space(s):
    for j in range(1, s.levels + 1):
        I = s.ideal(j)
        above = s.minimal_cuts(j) if s.kind == "cut" else s.minimal_paths(j)
        below = s.minimal_paths(j) if s.kind == "cut" else s.minimal_cuts(j)
        for st in box(s.caps):
            inside = brute_member(above, st)
            under = any(all(a <= b for a, b in zip(st, c)) for c in below)
            assert inside == brute_member(I.gens, st)
            assert inside != under


@settings(max_examples=60, deadline=None)
@given(systems())
def test_gn_bounds_below_reliability(s):
    for j in range(1, s.levels + 1):
        r = s.reliability(j, "primal")
        assert s.gn_max_min_path_bound(j) <= r + 1e-12
        assert s.gn_coproduct_min_cuts_bound(j) <= r + 1e-12


@settings(max_examples=40, deadline=None)
@given(systems())
def test_bounds_bracket_reliability_on_both_routes(s):
    for j in range(1, s.levels + 1):
        r = s.reliability(j, "primal")
        for route in ("primal", "dual"):
            rows = s.reliability_bounds(j, route)
            assert rows[-1].kind == "exact" and rows[-1].value == pytest.approx(r, abs=1e-12)
            for b in rows[:-1]:
                if b.kind == "upper":
                    assert b.value >= r - 1e-12
                else:
                    assert b.kind == "lower" and b.value <= r + 1e-12
