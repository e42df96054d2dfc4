"""Ground-truth engines: exhaustive state enumeration and Monte-Carlo.

Neither engine touches Hilbert numerators or duals.  Membership of a state
in a level ideal is decided directly from the ideal's generators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import ResourceLimitError
from .monomial import MonomialIdeal

if TYPE_CHECKING:
    from .probability import ProbabilityTable
    from .system import CoherentSystem

EXHAUSTIVE_LIMIT = 10**7
# Largest grid for which Monte-Carlo uses a dense membership table.
TABLE_LIMIT = 5 * 10**7
MC_BATCH = 200_000
MC_RNG = "numpy.random.PCG64"


@dataclass(frozen=True)
class OracleResult:
    value: float
    method: str
    samples: Optional[int] = None
    seed: Optional[int] = None
    stderr: Optional[float] = None
    rng: Optional[str] = None


def grid_size(caps) -> int:
    return math.prod(c + 1 for c in caps)


def membership_grid(ideal: MonomialIdeal, caps) -> np.ndarray:
    """Boolean array over all states ``0..M_i``: True where the state is in ``ideal``.

    Generators are marked and the marks are swept upward along every axis,
    which yields exactly the up-set generated by them.
    """
    shape = tuple(c + 1 for c in caps)
    grid = np.zeros(shape, dtype=bool)
    for g in ideal.gens:
        grid[g] = True
    for axis in range(len(shape)):
        # Slice-by-slice OR; much faster than logical_or.accumulate on
        # non-trailing axes.
        view = np.moveaxis(grid, axis, 0)
        for k in range(1, shape[axis]):
            np.logical_or(view[k : k + 1], view[k - 1 : k], out=view[k : k + 1])
    return grid


def exhaustive_ideal_probability(
    ideal: MonomialIdeal, table: "ProbabilityTable", limit: int = EXHAUSTIVE_LIMIT
) -> float:
    """Total probability mass of the states lying in ``ideal``."""
    caps = table.caps
    size = grid_size(caps)
    if size > limit:
        raise ResourceLimitError(f"state space of {size} states exceeds the exhaustive limit of {limit}")
    mass = membership_grid(ideal, caps).astype(float)
    # Contract one axis at a time with that component's level distribution.
    for i in reversed(range(table.nvars)):
        mass = mass @ table.level_masses(i)
    return float(mass)


def exhaustive_probability(sys: "CoherentSystem", j: int, limit: int = EXHAUSTIVE_LIMIT) -> OracleResult:
    """Probability of the level-``j`` ideal by enumerating every state.

    For path systems this is the reliability ``R_j``; for cut systems it is
    the unreliability ``U_j``.
    """
    value = exhaustive_ideal_probability(sys.ideal(j), sys.table, limit)
    return OracleResult(value=value, method="exhaustive")


def sample_states(table: "ProbabilityTable", samples: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``samples`` independent state vectors, shape ``(samples, n)``.

    A uniform ``u`` maps to the level ``#{j : u < p_{i,j}}``, which has
    exactly the distribution described by the cumulative row.
    """
    u = rng.random((samples, table.nvars)).T.copy()
    dtype = np.uint8 if max(table.caps) < 256 else np.int64
    levels = np.zeros((table.nvars, samples), dtype=dtype)
    for i, row in enumerate(table.rows):
        for p in row:
            np.add(levels[i], u[i] < p, out=levels[i], casting="unsafe")
    return levels.T


def _membership_binary(ideal: MonomialIdeal, states: np.ndarray) -> np.ndarray:
    # 0/1 states and generators packed into uint64 words.
    weights = np.uint64(1) << np.arange(ideal.nvars, dtype=np.uint64)
    packed = (states.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    gens = (np.array(ideal.gens, dtype=np.uint64) * weights).sum(axis=1, dtype=np.uint64)
    inside = np.zeros(len(states), dtype=bool)
    open_idx = np.arange(len(states))
    for lo in range(0, len(gens), 64):
        if not len(open_idx):
            break
        block = gens[lo : lo + 64]
        hit = ((packed[open_idx, None] & block[None, :]) == block[None, :]).any(axis=1)
        inside[open_idx[hit]] = True
        open_idx = open_idx[~hit]
    return inside


def _membership(ideal: MonomialIdeal, states: np.ndarray, grid: Optional[np.ndarray]) -> np.ndarray:
    if grid is not None:
        return grid[tuple(states.T)]
    if ideal.nvars <= 64 and states.max(initial=0) <= 1 and all(max(g) <= 1 for g in ideal.gens):
        return _membership_binary(ideal, states)
    inside = np.zeros(len(states), dtype=bool)
    open_idx = np.arange(len(states))
    for g in ideal.gens:
        if not len(open_idx):
            break
        hit = np.all(states[open_idx] >= np.asarray(g), axis=1)
        inside[open_idx[hit]] = True
        open_idx = open_idx[~hit]
    return inside


def monte_carlo_ideal_probability(
    ideal: MonomialIdeal, table: "ProbabilityTable", samples: int, seed: int
) -> OracleResult:
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    caps = table.caps
    grid = membership_grid(ideal, caps) if grid_size(caps) <= TABLE_LIMIT else None
    hits = 0
    done = 0
    # Batches draw consecutive slices of one stream, so the estimate does not
    # depend on the batch size.
    while done < samples:
        b = min(MC_BATCH, samples - done)
        hits += int(_membership(ideal, sample_states(table, b, rng), grid).sum())
        done += b
    v = hits / samples
    return OracleResult(
        value=v,
        method="monte-carlo",
        samples=samples,
        seed=seed,
        stderr=math.sqrt(v * (1.0 - v) / samples),
        rng=MC_RNG,
    )


def monte_carlo_probability(sys: "CoherentSystem", j: int, samples: int, seed: int) -> OracleResult:
    """Monte-Carlo estimate of the level-``j`` ideal probability, deterministic per seed."""
    return monte_carlo_ideal_probability(sys.ideal(j), sys.table, samples, seed)
