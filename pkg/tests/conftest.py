from __future__ import annotations

import itertools
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from algrel import CoherentSystem, MonomialIdeal, ProbabilityTable, minimalize

SYSTEMS = Path(__file__).resolve().parent.parent / "systems"


@pytest.fixture
def systems_dir() -> Path:
    return SYSTEMS


def box(caps):
    return itertools.product(*(range(c + 1) for c in caps))


def brute_member(gens, state) -> bool:
    return any(all(s >= g for s, g in zip(state, gen)) for gen in gens)


def brute_probability(gens, table: ProbabilityTable) -> float:
    """Sum of state masses over the up-set of ``gens``, one state at a time."""
    total = 0.0
    for s in box(table.caps):
        if brute_member(gens, s):
            mass = 1.0
            for i, l in enumerate(s):
                mass *= table.p(i, l) - table.p(i, l + 1)
            total += mass
    return total


@st.composite
def ideals(draw, max_vars=5, max_exp=3, max_gens=8, min_gens=1):
    n = draw(st.integers(1, max_vars))
    gens = draw(
        st.lists(st.tuples(*[st.integers(0, max_exp)] * n), min_size=min_gens, max_size=max_gens)
    )
    return minimalize(gens, n)


@st.composite
def tables(draw, caps):
    rows = []
    for c in caps:
        vals = draw(st.lists(st.floats(0.0, 1.0), min_size=c, max_size=c))
        rows.append(tuple(sorted(vals, reverse=True)))
    return ProbabilityTable(tuple(rows))


@st.composite
def systems(draw, max_vars=4, max_cap=3, max_gens=6, levels=2, kind=None):
    n = draw(st.integers(1, max_vars))
    caps = draw(st.tuples(*[st.integers(1, max_cap)] * n))
    kind = kind or draw(st.sampled_from(["path", "cut"]))
    vec = st.tuples(*[st.integers(0, c) for c in caps]).filter(any)
    top = draw(st.lists(vec, min_size=1, max_size=max_gens))
    ideals_ = [top]
    for _ in range(levels - 1):
        extra = draw(st.lists(vec, min_size=0, max_size=max_gens))
        ideals_.insert(0, ideals_[0] + extra)
    return CoherentSystem(kind, caps, ideals_, draw(tables(caps)))


def random_system(rng: np.random.Generator, max_vars=6, max_cap=3, max_gens=10, kind=None) -> CoherentSystem:
    """A random one-level system drawn from ``rng``."""
    n = int(rng.integers(1, max_vars + 1))
    caps = tuple(int(c) for c in rng.integers(1, max_cap + 1, size=n))
    k = int(rng.integers(1, max_gens + 1))
    gens = []
    while len(gens) < k:
        g = tuple(int(rng.integers(0, c + 1)) for c in caps)
        if any(g):
            gens.append(g)
    table = ProbabilityTable(tuple(tuple(sorted(rng.random(c), reverse=True)) for c in caps))
    return CoherentSystem(kind or str(rng.choice(["path", "cut"])), caps, [gens], table)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
