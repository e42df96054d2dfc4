"""Multi-state coherent systems described by per-level monomial ideals.

A path system (``kind="path"``) stores, for each level ``j``, the ideal of
``j``-working states and a table of working probabilities; the probability
of the ideal is the reliability ``R_j``.  A cut system (``kind="cut"``)
stores the ideal of ``j``-failing states and failure probabilities; the
probability of its ideal is the unreliability ``U_j``.  The computations are
identical; only the labelling differs.

Two routes compute the probability of a level ideal ``I``:

* ``primal``: evaluate the Mayer-Vietoris numerator of ``I`` with ``pr``.
* ``dual``: take the maximal states ``c`` outside ``I`` (from the Alexander
  dual of the artinian closure), build ``J = <x^(M - c)>`` and evaluate its
  numerator with ``pr_bar(M - mu)``.  This gives ``P(state not in I)``.
"""
from __future__ import annotations

import math
from typing import Sequence

from .duality import boundary_dual
from .errors import PreconditionError, UnsupportedRouteError
from .monomial import Monomial, MonomialIdeal, contains, minimalize
from .oracle import exhaustive_ideal_probability, grid_size
from .probability import Bound, ProbabilityTable, evaluate, evaluate_bounds, pr, pr_bar
from .resolution import HilbertNumerator, mayer_vietoris_numerator

ROUTES = ("auto", "primal", "dual")
# Grids up to this size have the dual route checked against exhaustive enumeration.
DUAL_GATE_GRID = 10**5
DUAL_GATE_TOL = 1e-9


def _swap(kind: str) -> str:
    return {"upper": "lower", "lower": "upper"}.get(kind, kind)


class CoherentSystem:
    """A coherent system given by level ideals and a probability table.

    Numerators, duals and dual-route admission are computed lazily per level
    and cached.  Cache writes go through ``dict.setdefault`` so concurrent
    first requests settle on one value.
    """

    def __init__(
        self,
        kind: str,
        caps: Sequence[int],
        level_ideals: Sequence[MonomialIdeal | Sequence[Sequence[int]]],
        table: ProbabilityTable,
    ):
        if kind not in ("path", "cut"):
            raise PreconditionError(f"kind must be 'path' or 'cut', got {kind!r}")
        caps = tuple(int(c) for c in caps)
        if not caps or any(c < 1 for c in caps):
            raise PreconditionError(f"component caps must be positive, got {caps}")
        if table.caps != caps:
            raise PreconditionError(f"probability rows have lengths {table.caps}, caps are {caps}")
        n = len(caps)
        ideals = []
        for j, I in enumerate(level_ideals, start=1):
            if not isinstance(I, MonomialIdeal):
                I = minimalize(I, n)
            if I.nvars != n:
                raise PreconditionError(f"level {j} ideal has {I.nvars} variables, expected {n}")
            for g in I.gens:
                if any(e > c for e, c in zip(g, caps)):
                    raise PreconditionError(f"level {j} generator {g} exceeds component caps {caps}")
            ideals.append(I)
        if not ideals:
            raise PreconditionError("a system needs at least one level")
        self.kind = kind
        self.caps = caps
        self.level_ideals = tuple(ideals)
        self.table = table
        self._cache: dict = {}

    # -- basic structure ---------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.caps)

    @property
    def levels(self) -> int:
        return len(self.level_ideals)

    @property
    def is_binary(self) -> bool:
        return all(c == 1 for c in self.caps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoherentSystem):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.caps == other.caps
            and self.level_ideals == other.level_ideals
            and self.table == other.table
        )

    def __repr__(self) -> str:
        return (
            f"CoherentSystem(kind={self.kind!r}, caps={self.caps}, levels={self.levels}, "
            f"gens={[len(I) for I in self.level_ideals]})"
        )

    def _check_level(self, j: int) -> None:
        if not isinstance(j, int) or not 1 <= j <= self.levels:
            raise PreconditionError(f"level must be in 1..{self.levels}, got {j}")

    def ideal(self, j: int) -> MonomialIdeal:
        self._check_level(j)
        return self.level_ideals[j - 1]

    def is_nested(self) -> bool:
        """True if ``I_{j+1}`` is contained in ``I_j`` for every level."""
        return all(
            all(contains(lo, g) for g in hi.gens)
            for lo, hi in zip(self.level_ideals, self.level_ideals[1:])
        )

    def _cached(self, key, compute):
        try:
            return self._cache[key]
        except KeyError:
            return self._cache.setdefault(key, compute())

    # -- duals and routes --------------------------------------------------

    def dual_ideal(self, j: int) -> MonomialIdeal:
        """Alexander dual of the artinian closure of ``I_j`` (``nu = M + 1``)."""
        self._check_level(j)
        return self._cached(("dual", j), lambda: boundary_dual(self.ideal(j), self.caps))

    def boundary_states(self, j: int) -> list[Monomial]:
        """Maximal states outside ``I_j``."""
        nu = [c + 1 for c in self.caps]
        return sorted(tuple(v - s for v, s in zip(nu, sigma)) for sigma in self.dual_ideal(j).gens)

    def dual_route_ideal(self, j: int) -> MonomialIdeal:
        """``<x^(M - c)>`` over the maximal states ``c`` outside ``I_j``."""

        def build():
            gens = [tuple(m - e for m, e in zip(self.caps, c)) for c in self.boundary_states(j)]
            return minimalize(gens, self.nvars)

        self._check_level(j)
        return self._cached(("dual-route", j), build)

    def numerator(self, j: int, route: str = "primal") -> HilbertNumerator:
        """Mayer-Vietoris numerator of the primal ideal or of the dual-route ideal."""
        self._check_level(j)
        if route == "primal":
            return self._cached(("hn", j, "primal"), lambda: mayer_vietoris_numerator(self.ideal(j)))
        if route == "dual":
            return self._cached(("hn", j, "dual"), lambda: mayer_vietoris_numerator(self.dual_route_ideal(j)))
        raise PreconditionError(f"route must be 'primal' or 'dual', got {route!r}")

    def dual_route_admitted(self, j: int) -> bool:
        """Whether the dual route may be used at level ``j``.

        Small grids are checked against exhaustive enumeration; larger grids
        are admitted only for binary systems.
        """
        self._check_level(j)

        def check():
            if grid_size(self.caps) <= DUAL_GATE_GRID:
                exact = exhaustive_ideal_probability(self.ideal(j), self.table)
                via_dual = 1.0 - self._dual_complement(j)
                return abs(exact - via_dual) <= DUAL_GATE_TOL
            return self.is_binary

        return self._cached(("gate", j), check)

    def choose_route(self, j: int) -> str:
        """The route whose ideal has fewer minimal generators; ties go to primal."""
        self._check_level(j)
        return "dual" if len(self.dual_ideal(j)) < len(self.ideal(j)) else "primal"

    def route_for(self, j: int, route: str = "auto") -> str:
        """Resolve ``auto`` and refuse a dual route that is not admitted."""
        self._check_level(j)
        if route == "auto":
            if not self.dual_route_admitted(j):
                return "primal"
            return self.choose_route(j)
        if route == "primal":
            return route
        if route == "dual":
            if not self.dual_route_admitted(j):
                raise UnsupportedRouteError(
                    f"dual route is not admitted at level {j} "
                    f"(grid of {grid_size(self.caps)} states, binary={self.is_binary})"
                )
            return route
        raise PreconditionError(f"route must be one of {ROUTES}, got {route!r}")

    def _dual_complement(self, j: int) -> float:
        # P(state not in I_j), computed on the dual route.
        J = self.dual_route_ideal(j)
        if J.is_zero():
            return 0.0
        return evaluate(self.numerator(j, "dual"), self.table, complement=True)

    def _ideal_probability(self, j: int, route: str) -> float:
        if route == "primal":
            I = self.ideal(j)
            return 0.0 if I.is_zero() else evaluate(self.numerator(j, "primal"), self.table)
        return 1.0 - self._dual_complement(j)

    def dual_route_terms(self, j: int) -> list[tuple[Monomial, int, float]]:
        """Per-summand ``(multidegree, sign, pr_bar(M - multidegree))`` on the dual route."""
        self.route_for(j, "dual")
        out = []
        for s in self.numerator(j, "dual").summands:
            comp = tuple(m - e for m, e in zip(self.caps, s.multidegree))
            out.append((s.multidegree, s.sign, pr_bar(comp, self.table)))
        return out

    # -- reliability -------------------------------------------------------

    def reliability(self, j: int, route: str = "auto") -> float:
        """``R_j``: probability that the system performs at level ``>= j``."""
        value = self._ideal_probability(j, self.route_for(j, route))
        return value if self.kind == "path" else 1.0 - value

    def unreliability(self, j: int, route: str = "auto") -> float:
        return 1.0 - self.reliability(j, route)

    def unreliability_via_dual(self, j: int) -> float:
        """``U_j`` computed on the dual route; raises if the route is not admitted."""
        self.route_for(j, "dual")
        comp = self._dual_complement(j)
        return comp if self.kind == "path" else 1.0 - comp

    def _ideal_bounds(self, j: int, route: str) -> list[Bound]:
        # Bounds on the probability of I_j, last row marked exact.
        route = self.route_for(j, route)
        if route == "primal":
            I = self.ideal(j)
            if I.is_zero():
                return [Bound(1, 0.0, "exact")]
            rows = evaluate_bounds(self.numerator(j, "primal"), self.table)
        else:
            if self.dual_route_ideal(j).is_zero():
                return [Bound(1, 1.0, "exact")]
            rows = [
                Bound(b.t, 1.0 - b.value, _swap(b.kind))
                for b in evaluate_bounds(self.numerator(j, "dual"), self.table, complement=True)
            ]
        rows[-1] = rows[-1]._replace(kind="exact")
        return rows

    def reliability_bounds(self, j: int, route: str = "primal") -> list[Bound]:
        """Truncation bounds ``(t, value, kind)`` for ``R_j``.

        The default route is the Mayer-Vietoris tree of ``I_j`` itself; pass
        ``route="auto"`` to use whichever ideal is smaller.
        """
        rows = self._ideal_bounds(j, route)
        if self.kind == "path":
            return rows
        return [Bound(b.t, 1.0 - b.value, _swap(b.kind)) for b in rows]

    def unreliability_bounds(self, j: int, route: str = "primal") -> list[Bound]:
        return [Bound(b.t, 1.0 - b.value, _swap(b.kind)) for b in self.reliability_bounds(j, route)]

    # -- paths and cuts ----------------------------------------------------

    def minimal_paths(self, j: int) -> list[Monomial]:
        """Minimal ``j``-paths.

        For a path system these are the generators of ``I_j``.  For a cut
        system they are the maximal non-failing states.
        """
        if self.kind == "path":
            return list(self.ideal(j).gens)
        return self.boundary_states(j)

    def minimal_cuts(self, j: int) -> list[Monomial]:
        """Minimal ``j``-cuts: maximal failing states of a path system, or the
        generators of ``I_j`` for a cut system."""
        if self.kind == "path":
            return self.boundary_states(j)
        return list(self.ideal(j).gens)

    def _working_view(self, j: int) -> tuple[list[Monomial], list[Monomial], ProbabilityTable]:
        # Minimal paths, cuts and working probabilities in path-system
        # coordinates; a cut system is mirrored through s -> M - s.
        if self.kind == "path":
            return self.minimal_paths(j), self.boundary_states(j), self.table
        caps = self.caps
        rows = tuple(
            tuple(1.0 - self.table.p(i, caps[i] - l + 1) for l in range(1, caps[i] + 1))
            for i in range(self.nvars)
        )
        mirror = lambda s: tuple(c - e for c, e in zip(caps, s))
        paths = sorted(mirror(c) for c in self.boundary_states(j))
        cuts = sorted(mirror(f) for f in self.ideal(j).gens)
        return paths, cuts, ProbabilityTable(rows)

    def gn_max_min_path_bound(self, j: int) -> float:
        """Lower bound ``max over minimal paths y of prod_i p_{i, y_i}`` for ``R_j``."""
        paths, _, table = self._working_view(j)
        return max((pr(y, table) for y in paths), default=0.0)

    def gn_coproduct_min_cuts_bound(self, j: int) -> float:
        """Lower bound ``prod over minimal cuts z of (1 - prod_i (1 - p_{i, z_i + 1}))``."""
        _, cuts, table = self._working_view(j)
        return math.prod(1.0 - pr_bar(z, table) for z in cuts)
