"""Component level probabilities and evaluation of Hilbert numerators."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError
from .resolution import HilbertNumerator

_CHUNK = 50_000


@dataclass(frozen=True)
class ProbabilityTable:
    """Cumulative level probabilities ``rows[i][j - 1] = P(component i >= j)``.

    Row ``i`` has one entry per non-zero level of component ``i``, so its
    length is the component cap ``M_i``.  For cut systems the same table holds
    failure probabilities ``q``; nothing in the evaluation depends on which.
    """

    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(float(p) for p in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        for i, row in enumerate(rows):
            if not row:
                raise PreconditionError(f"component {i + 1} has no levels")
            prev = 1.0
            for j, p in enumerate(row, start=1):
                if not 0.0 <= p <= 1.0:
                    raise PreconditionError(f"p[{i + 1}][{j}] = {p} is not a probability")
                if p > prev:
                    raise PreconditionError(
                        f"row {i + 1} must be non-increasing: p[{i + 1}][{j}] = {p} > {prev}"
                    )
                prev = p

    @classmethod
    def uniform(cls, caps: Sequence[int], p: float) -> "ProbabilityTable":
        """Every component at every level ``>= j`` with probability ``p`` (binary use)."""
        return cls(tuple((p,) * c for c in caps))

    @property
    def nvars(self) -> int:
        return len(self.rows)

    @property
    def caps(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def p(self, i: int, j: int) -> float:
        """``p_{i,j}`` with 0-based component ``i``; 1 below level 1, 0 above the cap."""
        if j <= 0:
            return 1.0
        row = self.rows[i]
        return row[j - 1] if j <= len(row) else 0.0

    @cached_property
    def padded(self) -> np.ndarray:
        """Array ``P[i, j] = p_{i,j}`` for ``j = 0 .. max_cap + 1``."""
        width = max(self.caps) + 2
        out = np.zeros((self.nvars, width))
        out[:, 0] = 1.0
        for i, row in enumerate(self.rows):
            out[i, 1 : len(row) + 1] = row
        return out

    def level_masses(self, i: int) -> np.ndarray:
        """Exact distribution ``P(component i == s)`` for ``s = 0 .. M_i``."""
        c = [self.p(i, j) for j in range(len(self.rows[i]) + 2)]
        return np.array([c[s] - c[s + 1] for s in range(len(self.rows[i]) + 1)])


def _check_caps(mu: Sequence[int], table: ProbabilityTable) -> None:
    if len(mu) != table.nvars:
        raise PreconditionError(f"monomial length {len(mu)} does not match {table.nvars} components")
    for i, (e, c) in enumerate(zip(mu, table.caps)):
        if e < 0 or e > c:
            raise PreconditionError(f"exponent {e} of component {i + 1} outside 0..{c}")


def pr(mu: Sequence[int], table: ProbabilityTable) -> float:
    """Probability that the state is ``>= mu``."""
    _check_caps(mu, table)
    out = 1.0
    for i, e in enumerate(mu):
        out *= table.p(i, e)
    return out


def pr_bar(mu: Sequence[int], table: ProbabilityTable) -> float:
    """Probability that the state is ``<= mu``."""
    _check_caps(mu, table)
    out = 1.0
    for i, e in enumerate(mu):
        out *= 1.0 - table.p(i, e + 1)
    return out


def _degree_array(hn: HilbertNumerator, table: ProbabilityTable) -> np.ndarray:
    if hn.nvars != table.nvars:
        raise PreconditionError(f"numerator has {hn.nvars} variables, table has {table.nvars} components")
    degs = hn.degrees
    over = (degs > np.array(table.caps)).any(axis=1) if len(degs) else np.zeros(0, dtype=bool)
    if over.any():
        bad = tuple(int(e) for e in degs[np.argmax(over)])
        raise PreconditionError(f"multidegree {bad} exceeds component caps {table.caps}")
    return degs


def summand_values(hn: HilbertNumerator, table: ProbabilityTable, complement: bool = False) -> np.ndarray:
    """Unsigned per-summand probabilities.

    With ``complement=False`` each multidegree ``mu`` maps to ``pr(mu)``; with
    ``complement=True`` it maps to ``pr_bar(M - mu)``, the substitution used
    on the dual route.
    """
    degs = _degree_array(hn, table)
    rows = np.arange(table.nvars)
    caps = np.array(table.caps)
    out = np.empty(len(degs))
    for lo in range(0, len(degs), _CHUNK):
        d = degs[lo : lo + _CHUNK].astype(np.int64)
        if complement:
            factors = 1.0 - table.padded[rows, caps - d + 1]
        else:
            factors = table.padded[rows, d]
        out[lo : lo + _CHUNK] = np.prod(factors, axis=1)
    return out


def _signs_and_dims(hn: HilbertNumerator) -> tuple[np.ndarray, np.ndarray]:
    return hn.signs.astype(float), hn.dims


def _dimension_totals(hn: HilbertNumerator, table: ProbabilityTable, complement: bool) -> list[float]:
    vals = summand_values(hn, table, complement)
    signs, dims = _signs_and_dims(hn)
    weighted = signs * vals
    return [float(weighted[dims == t].sum()) for t in range(1, hn.max_dimension + 1)]


def evaluate(hn: HilbertNumerator, table: ProbabilityTable, complement: bool = False) -> float:
    """Signed sum of summand probabilities.

    For the numerator of a level ideal this is the probability of the ideal.
    With ``complement=True`` (numerator of a dual-route ideal) it is the
    probability of the complement of the original ideal.
    """
    return sum(_dimension_totals(hn, table, complement))


class Bound(NamedTuple):
    t: int
    value: float
    kind: str


def evaluate_bounds(hn: HilbertNumerator, table: ProbabilityTable, complement: bool = False) -> list[Bound]:
    """Truncation bounds for ``t = 1 .. max dimension``.

    Odd ``t`` gives an upper bound, even ``t`` a lower bound; the last value is
    the full evaluation.
    """
    out = []
    total = 0.0
    for t, part in enumerate(_dimension_totals(hn, table, complement), start=1):
        total += part
        out.append(Bound(t, total, "upper" if t % 2 else "lower"))
    return out
