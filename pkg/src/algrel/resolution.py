"""Numerators of multigraded Hilbert series of monomial ideals.

Both constructions return a :class:`HilbertNumerator`, an uncancelled list of
summands ``(multidegree, dimension)``.  The sign of a summand is
``(-1) ** (dimension + 1)``, so generators (dimension 1) count positively.

* :func:`taylor_numerator` is plain inclusion-exclusion: one summand per
  non-empty subset of generators.
* :func:`mayer_vietoris_numerator` expands one pivot generator at a time,
  ``HN(I) = HN(I') + x^m - x^m * HN(I' : m)``, and usually produces far fewer
  summands.  Summands coming from the subtracted branch sit one homological
  dimension higher, which keeps truncation bounds valid.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .errors import PreconditionError, ResourceLimitError
from .monomial import Monomial, MonomialIdeal, _minimal, _minimal_masks, is_squarefree, to_mask

TAYLOR_MAX_GENERATORS = 25
# Mayer-Vietoris trees larger than this are refused rather than exhausting memory.
MAX_SUMMANDS = 2 * 10**7


class SignedSummand(NamedTuple):
    multidegree: Monomial
    dimension: int

    @property
    def sign(self) -> int:
        return 1 if self.dimension % 2 else -1


def _degree_dtype(max_exponent: int):
    # Multidegrees are stored compactly; numerators can have millions of rows.
    if max_exponent <= np.iinfo(np.uint8).max:
        return np.uint8
    assert max_exponent <= np.iinfo(np.int64).max, "exponent overflow"
    return np.int64


@dataclass(frozen=True, eq=False)
class HilbertNumerator:
    """Uncancelled numerator: row ``k`` of ``degrees`` is the multidegree of
    summand ``k`` and ``dims[k]`` its homological dimension."""

    nvars: int
    degrees: np.ndarray
    dims: np.ndarray
    source: str

    @classmethod
    def from_summands(cls, nvars: int, summands, source: str) -> "HilbertNumerator":
        summands = list(summands)
        top = max((max(s[0], default=0) for s in summands), default=0)
        degrees = np.array([s[0] for s in summands], dtype=_degree_dtype(top)).reshape(len(summands), nvars)
        dims = np.array([s[1] for s in summands], dtype=np.int64)
        return cls(nvars, degrees, dims, source)

    def __len__(self) -> int:
        return len(self.dims)

    @cached_property
    def summands(self) -> tuple[SignedSummand, ...]:
        return tuple(
            SignedSummand(tuple(int(e) for e in d), int(k)) for d, k in zip(self.degrees, self.dims)
        )

    @property
    def signs(self) -> np.ndarray:
        return np.where(self.dims % 2 == 1, 1, -1)

    @property
    def max_dimension(self) -> int:
        return int(self.dims.max()) if len(self.dims) else 0

    def counts_by_dimension(self) -> dict[int, int]:
        vals, counts = np.unique(self.dims, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def multiset(self) -> Counter:
        """``Counter`` of ``(multidegree, dimension)`` pairs."""
        return Counter(self.summands)

    def cancel(self) -> dict[Monomial, int]:
        """Collapse to the formal polynomial ``{multidegree: coefficient}``.

        Zero coefficients are dropped, so numerators of the same ideal from
        different sources compare equal after cancellation.
        """
        coeffs: Counter = Counter()
        for s in self.summands:
            coeffs[s.multidegree] += s.sign
        return {m: c for m, c in sorted(coeffs.items()) if c}


def taylor_numerator(ideal: MonomialIdeal, max_generators: int = TAYLOR_MAX_GENERATORS) -> HilbertNumerator:
    """Inclusion-exclusion numerator, ``2**r - 1`` summands for ``r`` generators."""
    if ideal.is_zero():
        raise PreconditionError("the zero ideal has no Taylor numerator")
    gens = ideal.gens
    r = len(gens)
    if r > max_generators:
        raise ResourceLimitError(
            f"Taylor numerator of {r} generators needs 2^{r}-1 summands; "
            f"limit is {max_generators} generators"
        )
    out: list[SignedSummand] = []

    def extend(start: int, cur: Monomial, size: int) -> None:
        for k in range(start, r):
            g = gens[k]
            nxt = tuple(a if a >= b else b for a, b in zip(cur, g))
            out.append(SignedSummand(nxt, size + 1))
            extend(k + 1, nxt, size + 1)

    extend(0, (0,) * ideal.nvars, 0)
    return HilbertNumerator.from_summands(ideal.nvars, out, "taylor")


PivotRule = Callable[[Sequence[Monomial]], int]


def _pivot_last(gens: Sequence[Monomial]) -> int:
    return len(gens) - 1


def _pivot_max_support(gens: Sequence[Monomial]) -> int:
    best, best_k = -1, 0
    for k, g in enumerate(gens):
        s = sum(1 for e in g if e)
        if s >= best:
            best, best_k = s, k
    return best_k


def pivot_rule(name: str, seed: int | None = None) -> PivotRule:
    """Return a pivot policy by name: ``last``, ``max-support`` or ``random``."""
    if name == "last":
        return _pivot_last
    if name == "max-support":
        return _pivot_max_support
    if name == "random":
        if seed is None:
            raise PreconditionError("the random pivot rule needs an explicit seed")
        rng = random.Random(seed)
        return lambda gens: rng.randrange(len(gens))
    raise PreconditionError(f"unknown pivot rule {name!r}")


def _colon(rest: Sequence[Monomial], m: Monomial) -> tuple[Monomial, ...]:
    return _minimal(tuple(a - b if a > b else 0 for a, b in zip(g, m)) for g in rest)


def _expand(gens: tuple[Monomial, ...], pivot: PivotRule, cache: dict | None) -> list[tuple[Monomial, int]]:
    # Relative summands of HN(<gens>): unshifted multidegrees, dimensions from 1.
    if cache is not None and gens in cache:
        return cache[gens]
    out: list[tuple[Monomial, int]] = []
    work = list(gens)
    while work:
        m = work.pop(pivot(work))
        out.append((m, 1))
        if work:
            for deg, dim in _expand(_colon(work, m), pivot, cache):
                out.append((tuple(a + b for a, b in zip(deg, m)), dim + 1))
    if cache is not None:
        cache[gens] = out
    return out


def mayer_vietoris_numerator(
    ideal: MonomialIdeal,
    pivot: str | PivotRule = "last",
    seed: int | None = None,
    memoize: bool = False,
    max_summands: int = MAX_SUMMANDS,
) -> HilbertNumerator:
    """Numerator from a Mayer-Vietoris tree.

    Generators are taken in canonical (lexicographic) order and, with the
    default rule, the last one is the pivot.  ``memoize`` caches subtree
    results for repeated colon ideals; the output multiset is unchanged.
    """
    if ideal.is_zero():
        raise PreconditionError("the zero ideal has no Hilbert numerator")
    rule = pivot_rule(pivot, seed) if isinstance(pivot, str) else pivot
    if memoize:
        rel = _expand(ideal.gens, rule, {})
        return HilbertNumerator.from_summands(ideal.nvars, rel, "mayer-vietoris")
    if rule is _pivot_last:
        if is_squarefree(ideal):
            return _mayer_vietoris_squarefree(ideal, max_summands)
        return _mayer_vietoris_packed(ideal, max_summands)

    out: list[SignedSummand] = []
    zero = (0,) * ideal.nvars
    # Explicit stack of (generators, multidegree shift, dimension offset).
    stack: list[tuple[tuple[Monomial, ...], Monomial, int]] = [(ideal.gens, zero, 0)]
    while stack:
        gens, shift, depth = stack.pop()
        work = list(gens)
        while work:
            m = work.pop(rule(work))
            deg = tuple(a + b for a, b in zip(m, shift))
            out.append(SignedSummand(deg, depth + 1))
            if len(out) > max_summands:
                _too_many(max_summands)
            if work:
                stack.append((_colon(work, m), deg, depth + 1))
    return HilbertNumerator.from_summands(ideal.nvars, out, "mayer-vietoris")


def _too_many(limit: int) -> None:
    raise ResourceLimitError(f"Mayer-Vietoris tree exceeds the limit of {limit} summands")


def _masks_to_array(masks: list[int], nvars: int) -> np.ndarray:
    out = np.zeros((len(masks), nvars), dtype=np.uint8)
    # 62-bit slices keep every piece inside uint64.
    for lo in range(0, nvars, 62):
        width = min(62, nvars - lo)
        shift = nvars - lo - width
        chunk = np.array([(m >> shift) & ((1 << width) - 1) for m in masks], dtype=np.uint64)
        bits = np.arange(width - 1, -1, -1, dtype=np.uint64)
        out[:, lo : lo + width] = (chunk[:, None] >> bits[None, :]) & np.uint64(1)
    return out


def _mayer_vietoris_squarefree(ideal: MonomialIdeal, max_summands: int = MAX_SUMMANDS) -> HilbertNumerator:
    # Same tree as the generic loop with the "last" pivot, on bitmasks: the
    # mask order is the lexicographic order, lcm is OR and the colon is
    # g & ~m.
    degs: list[int] = []
    dims: list[int] = []
    stack: list[tuple[list[int], int, int]] = [(sorted(to_mask(g) for g in ideal.gens), 0, 0)]
    while stack:
        gens, shift, depth = stack.pop()
        work = list(gens)
        while work:
            m = work.pop()
            deg = m | shift
            degs.append(deg)
            dims.append(depth + 1)
            if len(dims) > max_summands:
                _too_many(max_summands)
            if work:
                notm = ~m
                stack.append((_minimal_masks([g & notm for g in work]), deg, depth + 1))
    return HilbertNumerator(
        ideal.nvars, _masks_to_array(degs, ideal.nvars), np.array(dims, dtype=np.int64), "mayer-vietoris"
    )


class _Packing:
    """Exponent vectors as ints: one ``b``-bit field per variable plus a guard
    bit above it, ``x_1`` in the top field so int order is lex order.

    Subtracting ``m`` from ``g | H`` never borrows across fields, and the
    guard bit of a field survives exactly when ``g_i >= m_i``.
    """

    def __init__(self, nvars: int, top: int):
        self.nvars = nvars
        self.b = max(1, top.bit_length())
        self.w = self.b + 1
        low = (1 << self.b) - 1
        self.H = sum(1 << (self.w * k + self.b) for k in range(nvars))
        self.F = sum(low << (self.w * k) for k in range(nvars))
        self.low = low

    def pack(self, g: Sequence[int]) -> int:
        v = 0
        for e in g:
            v = (v << self.w) | e
        return v

    def unpack(self, values: list[int]) -> np.ndarray:
        n, w = self.nvars, self.w
        out = np.zeros((len(values), n), dtype=_degree_dtype(self.low))
        per = max(1, 62 // w)
        for lo in range(0, n, per):
            cnt = min(per, n - lo)
            shift = w * (n - lo - cnt)
            chunk = np.array([(v >> shift) & ((1 << (w * cnt)) - 1) for v in values], dtype=np.uint64)
            for k in range(cnt):
                out[:, lo + k] = (chunk >> np.uint64(w * (cnt - 1 - k))) & np.uint64(self.low)
        return out


def _mayer_vietoris_packed(ideal: MonomialIdeal, max_summands: int = MAX_SUMMANDS) -> HilbertNumerator:
    # The generic tree with the "last" pivot, on packed exponent vectors.
    top = max(max(g) for g in ideal.gens)
    pk = _Packing(ideal.nvars, top)
    H, low, bshift = pk.H, pk.low, pk.b

    def colon(work: list[int], m: int) -> list[int]:
        cands = set()
        for g in work:
            d = (g | H) - m
            cands.add(d & (((d & H) >> bshift) * low))
        ordered = sorted(cands)
        if len(ordered) <= 1:
            return ordered
        # Ascending int order extends divisibility, so one pass suffices.
        kept: list[int] = []
        for c in ordered:
            ch = c | H
            for h in kept:
                if (ch - h) & H == H:
                    break
            else:
                kept.append(c)
        return kept

    degs: list[int] = []
    dims: list[int] = []
    stack: list[tuple[list[int], int, int]] = [(sorted(pk.pack(g) for g in ideal.gens), 0, 0)]
    while stack:
        gens, shift, depth = stack.pop()
        work = list(gens)
        while work:
            m = work.pop()
            deg = m + shift
            degs.append(deg)
            dims.append(depth + 1)
            if len(dims) > max_summands:
                _too_many(max_summands)
            if work:
                stack.append((colon(work, m), deg, depth + 1))
    return HilbertNumerator(ideal.nvars, pk.unpack(degs), np.array(dims, dtype=np.int64), "mayer-vietoris")


def truncate(hn: HilbertNumerator, t: int) -> HilbertNumerator:
    """Keep the summands of dimension at most ``t``."""
    if t < 1:
        raise PreconditionError(f"truncation dimension must be >= 1, got {t}")
    keep = hn.dims <= t
    return HilbertNumerator(hn.nvars, hn.degrees[keep], hn.dims[keep], hn.source)
