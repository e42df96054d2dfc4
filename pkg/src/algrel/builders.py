"""Constructors for common system families and random test networks."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .monomial import Monomial, MonomialIdeal, minimalize
from .probability import ProbabilityTable
from .system import CoherentSystem

MAX_PATHS = 10**5


def _caps(n: int, caps) -> tuple[int, ...]:
    if isinstance(caps, int):
        return (caps,) * n
    caps = tuple(int(c) for c in caps)
    if len(caps) != n:
        raise PreconditionError(f"expected {n} caps, got {len(caps)}")
    return caps


def build_series(n: int, caps, table: ProbabilityTable) -> CoherentSystem:
    """Series:G path system, ``Phi(s) = min(s)``; ``I_j = <(x_1 ... x_n)^j>``."""
    caps = _caps(n, caps)
    levels = min(caps)
    ideals = [MonomialIdeal(n, ((j,) * n,)) for j in range(1, levels + 1)]
    return CoherentSystem("path", caps, ideals, table)


def build_parallel(n: int, caps, table: ProbabilityTable) -> CoherentSystem:
    """Parallel:F cut system, ``Phi(s) = max(s)``; ``I_j = <x_1^j, ..., x_n^j>``."""
    caps = _caps(n, caps)
    ideals = []
    for j in range(1, max(caps) + 1):
        gens = []
        for i in range(n):
            if caps[i] >= j:
                g = [0] * n
                g[i] = j
                gens.append(tuple(g))
        ideals.append(minimalize(gens, n))
    return CoherentSystem("cut", caps, ideals, table)


# -- networks ----------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Undirected (multi)graph whose edges, by index, are the system components."""

    vertices: int
    edges: tuple[tuple[int, int], ...]
    source: int = 0
    terminal: int = 1

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.vertices < 1:
            raise PreconditionError("a graph needs at least one vertex")
        for k, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.vertices and 0 <= v < self.vertices):
                raise PreconditionError(f"edge {k} = ({u}, {v}) references a missing vertex")
            if u == v:
                raise PreconditionError(f"edge {k} is a self-loop on vertex {u}")
        for name in ("source", "terminal"):
            x = getattr(self, name)
            if not 0 <= x < self.vertices:
                raise PreconditionError(f"{name} {x} is not a vertex")

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.vertices)]
        for k, (u, v) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        return adj

    def to_dict(self) -> dict:
        return {
            "vertices": self.vertices,
            "edges": [list(e) for e in self.edges],
            "source": self.source,
            "terminal": self.terminal,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Graph":
        return cls(int(d["vertices"]), tuple(tuple(e) for e in d["edges"]), int(d["source"]), int(d["terminal"]))


def network_minimal_paths(g: Graph, max_paths: int = MAX_PATHS) -> list[Monomial]:
    """Edge sets of all simple source-terminal paths, as squarefree monomials."""
    if g.source == g.terminal:
        raise PreconditionError("source and terminal must differ")
    adj = g.adjacency()
    m = len(g.edges)
    found: set[Monomial] = set()
    visited = [False] * g.vertices
    used: list[int] = []

    def dfs(v: int) -> None:
        if v == g.terminal:
            mono = [0] * m
            for k in used:
                mono[k] = 1
            found.add(tuple(mono))
            if len(found) > max_paths:
                raise ResourceLimitError(f"more than {max_paths} source-terminal paths")
            return
        visited[v] = True
        for w, k in adj[v]:
            if not visited[w]:
                used.append(k)
                dfs(w)
                used.pop()
        visited[v] = False

    dfs(g.source)
    # The only source-terminal path inside a simple path's edge set is the
    # path itself, so these edge sets are already pairwise incomparable.
    return sorted(found)


def build_network(g: Graph, table: ProbabilityTable, max_paths: int = MAX_PATHS) -> CoherentSystem:
    """Binary two-terminal path system over the edges of ``g``."""
    m = len(g.edges)
    if m == 0:
        raise PreconditionError("network has no edges")
    paths = network_minimal_paths(g, max_paths)
    return CoherentSystem("path", (1,) * m, [MonomialIdeal(m, tuple(paths))], table)


# -- generalized k-out-of-n ------------------------------------------------


@dataclass(frozen=True)
class KofNSpec:
    """Generalized multi-state k-out-of-n:G system: level ``>= j`` when some
    ``l >= j`` has at least ``k[l-1]`` components at level ``>= l``."""

    n: int
    k: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if self.n < 1 or not self.k:
            raise PreconditionError("need n >= 1 and at least one level")
        for l, kl in enumerate(self.k, start=1):
            if not 1 <= kl <= self.n:
                raise PreconditionError(f"k_{l} = {kl} must lie in 1..{self.n}")

    @property
    def levels(self) -> int:
        return len(self.k)


def kofn_ideals(spec: KofNSpec) -> list[MonomialIdeal]:
    n, M = spec.n, spec.levels
    per_level = []
    for l in range(1, M + 1):
        gens = []
        for T in combinations(range(n), spec.k[l - 1]):
            g = [0] * n
            for i in T:
                g[i] = l
            gens.append(tuple(g))
        per_level.append(gens)
    ideals = []
    for j in range(1, M + 1):
        ideals.append(minimalize([g for l in range(j, M + 1) for g in per_level[l - 1]], n))
    return ideals


def build_kofn(spec: KofNSpec, table: ProbabilityTable) -> CoherentSystem:
    return CoherentSystem("path", (spec.levels,) * spec.n, kofn_ideals(spec), table)


# -- random models ---------------------------------------------------------


def erdos_renyi(nv: int, p: float, seed: int) -> list[tuple[int, int]]:
    """Edges of ``ER(nv, p)``: every vertex pair independently with probability ``p``."""
    if nv < 1 or not 0.0 <= p <= 1.0:
        raise PreconditionError(f"invalid ER parameters n={nv}, p={p}")
    rng = np.random.default_rng(seed)
    pairs = list(combinations(range(nv), 2))
    keep = rng.random(len(pairs)) < p
    return [e for e, k in zip(pairs, keep) if k]


def barabasi_albert(nv: int, m: int, seed: int) -> list[tuple[int, int]]:
    """Edges of ``BA(nv, m)``.

    Starts from a complete graph on ``m + 1`` vertices; every later vertex
    attaches to ``m`` distinct existing vertices chosen with probability
    proportional to degree.
    """
    if m < 1 or nv < m + 1:
        raise PreconditionError(f"invalid BA parameters n={nv}, m={m}")
    rng = np.random.default_rng(seed)
    edges = list(combinations(range(m + 1), 2))
    degree = np.zeros(nv)
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    for new in range(m + 1, nv):
        w = degree[:new] / degree[:new].sum()
        targets = rng.choice(new, size=m, replace=False, p=w)
        for t in sorted(int(x) for x in targets):
            edges.append((t, new))
            degree[t] += 1
            degree[new] += 1
    return edges


def random_graph(model: str, nv: int, param: float, seed: int) -> Graph:
    """ER or BA graph with a seeded random distinct source and terminal."""
    if model == "er":
        edges = erdos_renyi(nv, float(param), seed)
    elif model == "ba":
        edges = barabasi_albert(nv, int(param), seed)
    else:
        raise PreconditionError(f"unknown graph model {model!r}")
    if nv < 2:
        raise PreconditionError("need at least two vertices to pick a source and terminal")
    rng = np.random.default_rng([seed, 1])
    s, t = (int(x) for x in rng.choice(nv, size=2, replace=False))
    return Graph(nv, tuple(edges), s, t)


def random_table(caps: Sequence[int], rng: np.random.Generator) -> ProbabilityTable:
    """Random cumulative rows: sorted uniforms, non-increasing in the level."""
    return ProbabilityTable(tuple(tuple(sorted(rng.random(c), reverse=True)) for c in caps))


def random_kofn_spec(n: int, levels: int, rng: np.random.Generator) -> KofNSpec:
    return KofNSpec(n, tuple(int(x) for x in rng.integers(1, n + 1, size=levels)))
