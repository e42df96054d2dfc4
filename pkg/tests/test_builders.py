import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from algrel import (
    Graph,
    KofNSpec,
    PreconditionError,
    ProbabilityTable,
    ResourceLimitError,
    barabasi_albert,
    build_kofn,
    build_network,
    build_parallel,
    build_series,
    erdos_renyi,
    network_minimal_paths,
)
from algrel.builders import kofn_ideals, random_graph, random_kofn_spec

from conftest import box, brute_member


def kofn_level(spec, state):
    """System level straight from the definition: the largest l with at least k_l components at >= l."""
    best = 0
    for l, k in enumerate(spec.k, start=1):
        if sum(s >= l for s in state) >= k:
            best = l
    return best


def connects(g, edge_mask):
    seen = {g.source}
    frontier = [g.source]
    while frontier:
        v = frontier.pop()
        for k, (a, b) in enumerate(g.edges):
            if edge_mask[k] and v in (a, b):
                w = b if v == a else a
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
    return g.terminal in seen


def test_series_and_parallel_ideals():
    t = ProbabilityTable.uniform((2, 2, 1), 0.5)
    s = build_series(3, (2, 2, 1), t)
    assert s.levels == 1 and s.ideal(1).gens == ((1, 1, 1),)
    p = build_parallel(3, (2, 2, 1), t)
    assert p.levels == 2 and p.ideal(2).gens == ((0, 2, 0), (2, 0, 0))


def test_bridge_paths():
    g = Graph(4, ((0, 2), (0, 3), (2, 3), (2, 1), (3, 1)), 0, 1)
    assert len(network_minimal_paths(g)) == 4


def test_path_guard():
    g = Graph(8, tuple(itertools.combinations(range(8), 2)), 0, 1)
    with pytest.raises(ResourceLimitError, match="100"):
        network_minimal_paths(g, max_paths=100)


def test_graph_validation():
    with pytest.raises(PreconditionError):
        Graph(2, ((0, 0),))
    with pytest.raises(PreconditionError):
        Graph(2, ((0, 2),))
    with pytest.raises(PreconditionError):
        network_minimal_paths(Graph(2, ((0, 1),), 0, 0))
    g = Graph(3, ((0, 1), (1, 2)), 0, 2)
    assert Graph.from_dict(g.to_dict()) == g


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.integers(1, 9), st.integers(0, 10**6))
def test_network_paths_are_minimal_connecting_sets(nv, m, seed):
    rng = np.random.default_rng(seed)
    edges = []
    while len(edges) < m:
        u, v = (int(x) for x in rng.choice(nv, 2, replace=False))
        edges.append((u, v))
    g = Graph(nv, tuple(edges), 0, 1)
    got = set(network_minimal_paths(g))
    conn = [e for e in itertools.product((0, 1), repeat=m) if connects(g, e)]
    minimal = {e for e in conn if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in conn)}
    assert got == minimal


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 5), st.data())
def test_kofn_ideal_matches_definition(n, data):
    M = data.draw(st.integers(1, 3))
    spec = KofNSpec(n, tuple(data.draw(st.integers(1, n)) for _ in range(M)))
    ideals = kofn_ideals(spec)
    for state in box((M,) * n):
        lvl = kofn_level(spec, state)
        for j, I in enumerate(ideals, start=1):
            assert brute_member(I.gens, state) == (lvl >= j)


def test_kofn_spec_validation():
    with pytest.raises(PreconditionError):
        KofNSpec(3, (4,))
    with pytest.raises(PreconditionError):
        KofNSpec(3, ())
    s = build_kofn(KofNSpec(3, (2, 1)), ProbabilityTable.uniform((2, 2, 2), 0.7))
    assert s.caps == (2, 2, 2) and s.levels == 2


def test_er_extremes():
    assert erdos_renyi(6, 1.0, seed=1) == list(itertools.combinations(range(6), 2))
    assert erdos_renyi(6, 0.0, seed=1) == []
    with pytest.raises(PreconditionError):
        erdos_renyi(5, 1.5, seed=0)


@pytest.mark.parametrize("nv,m", [(10, 4), (12, 2), (5, 4), (30, 3)])
def test_ba_edge_count_and_degree_sum(nv, m, seed=3):
    edges = barabasi_albert(nv, m, seed)
    assert len(edges) == comb(m + 1, 2) + m * (nv - m - 1)
    assert len(set(edges)) == len(edges)
    deg = np.bincount(np.array(edges).ravel(), minlength=nv)
    assert deg.sum() == 2 * len(edges)
    assert all(deg[m + 1 :] >= m)


def test_generators_are_seed_deterministic():
    assert erdos_renyi(40, 0.05, 9) == erdos_renyi(40, 0.05, 9)
    assert barabasi_albert(10, 4, 9) == barabasi_albert(10, 4, 9)
    assert random_graph("ba", 10, 4, 9) == random_graph("ba", 10, 4, 9)
    assert random_graph("er", 40, 0.05, 1) != random_graph("er", 40, 0.05, 2)
    a = random_kofn_spec(10, 4, np.random.default_rng(5))
    b = random_kofn_spec(10, 4, np.random.default_rng(5))
    assert a == b
    g = random_graph("er", 40, 0.05, 12)
    assert g.source != g.terminal


def test_network_reliability_of_series_and_parallel_pair():
    t = ProbabilityTable(((0.9,), (0.8,)))
    series = build_network(Graph(3, ((0, 2), (2, 1)), 0, 1), t)
    parallel = build_network(Graph(2, ((0, 1), (0, 1)), 0, 1), t)
    assert series.reliability(1) == pytest.approx(0.72)
    assert parallel.reliability(1) == pytest.approx(0.98)


def test_disconnected_network_is_never_working():
    s = build_network(Graph(4, ((0, 2), (3, 1)), 0, 1), ProbabilityTable.uniform((1, 1), 0.9))
    assert s.ideal(1).is_zero()
    assert s.reliability(1) == 0.0
