"""Alexander duality for monomial ideals.

The dual with respect to ``nu`` is the intersection, over minimal generators
``x^mu``, of the ideals ``<x_i^(nu_i + 1 - mu_i) : mu_i >= 1>``.  For a
system level the ideal is first made artinian by adding ``x_i^(M_i + 1)``;
the generators ``sigma`` of that dual encode the maximal failing states as
``(M + 1) - sigma``.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import PreconditionError
from .monomial import Monomial, MonomialIdeal, _minimal, as_monomial, from_mask, to_mask


def _irreducible_component(mu: Monomial, nu: Monomial) -> list[tuple[int, int]]:
    # Pure powers (variable, exponent) generating m^(nu \ mu).
    return [(i, v + 1 - e) for i, (e, v) in enumerate(zip(mu, nu)) if e >= 1]


def _intersect_with_pure_powers(gens: list[Monomial], powers: list[tuple[int, int]]) -> list[Monomial]:
    if not powers:
        return []
    kept: list[Monomial] = []
    raised: list[Monomial] = []
    for g in gens:
        if any(g[i] >= a for i, a in powers):
            kept.append(g)
            continue
        for i, a in powers:
            h = list(g)
            h[i] = a
            raised.append(tuple(h))
    if not raised:
        return kept
    # Generators already in the component stay minimal; only the raised ones
    # can be made redundant.
    return list(_minimal(kept + raised))


def alexander_dual(ideal: MonomialIdeal, nu: Sequence[int]) -> MonomialIdeal:
    """Alexander dual of ``ideal`` with respect to the exponent vector ``nu``."""
    nu = as_monomial(nu)
    if len(nu) != ideal.nvars:
        raise PreconditionError(f"nu has length {len(nu)}, expected {ideal.nvars}")
    for g in ideal.gens:
        if any(e > v for e, v in zip(g, nu)):
            raise PreconditionError(f"generator {g} exceeds nu = {nu}")
    n = ideal.nvars
    if ideal.is_zero():
        # Empty intersection: the whole ring.
        return MonomialIdeal.unit(n)
    # Canonical order, smaller components first to keep intermediates small.
    comps = sorted(
        (_irreducible_component(g, nu) for g in ideal.gens),
        key=lambda c: (len(c), c),
    )
    cur: list[Monomial] = [(0,) * n]
    for powers in comps:
        cur = _intersect_with_pure_powers(cur, powers)
        if not cur:
            return MonomialIdeal.zero(n)
    return MonomialIdeal(n, tuple(sorted(cur)))


def artinian_closure(ideal: MonomialIdeal, caps: Sequence[int]) -> MonomialIdeal:
    """``ideal + <x_i^(M_i + 1)>``."""
    caps = as_monomial(caps)
    if len(caps) != ideal.nvars:
        raise PreconditionError(f"caps have length {len(caps)}, expected {ideal.nvars}")
    for g in ideal.gens:
        if any(e > c for e, c in zip(g, caps)):
            raise PreconditionError(f"generator {g} exceeds component caps {caps}")
    n = ideal.nvars
    powers = []
    for i, c in enumerate(caps):
        p = [0] * n
        p[i] = c + 1
        powers.append(tuple(p))
    # Generators within the caps neither divide nor are divided by x_i^(M_i+1).
    return MonomialIdeal(n, tuple(sorted(ideal.gens + tuple(powers))))


def minimal_transversals(edges: Sequence[int], nbits: int | None = None) -> list[int]:
    """Minimal hitting sets of a family of bitmask sets (Berge's algorithm)."""
    edges = sorted(set(edges), key=lambda x: (x.bit_count(), x))
    if nbits is None:
        nbits = max((e.bit_length() for e in edges), default=0)
    if nbits <= 63:
        return _transversals_u64(edges)
    cur = [0]
    for e in edges:
        if e == 0:
            return []
        hit = [t for t in cur if t & e]
        new = list(hit)
        # Extensions of distinct missing sets never contain one another, and
        # cannot contain an earlier transversal that misses e; only the ones
        # hitting e can make an extension redundant.
        for t in cur:
            if t & e:
                continue
            for b in _bits(e):
                c = t | b
                for h in hit:
                    if h & c == h:
                        break
                else:
                    new.append(c)
        cur = new
    return sorted(cur)


def _bits(e: int) -> list[int]:
    out = []
    while e:
        low = e & -e
        out.append(low)
        e ^= low
    return out


def _transversals_u64(edges: list[int]) -> list[int]:
    # Same algorithm as above with the containment checks vectorized.  A
    # candidate t | b can only be covered by an old transversal h whose
    # intersection with e is exactly {b}, so the check is split per bit.
    cur = np.zeros(1, dtype=np.uint64)
    for e in edges:
        if e == 0:
            return []
        ev = np.uint64(e)
        inter = cur & ev
        hit = cur[inter != 0]
        miss = cur[inter == 0]
        parts = [hit]
        for b in _bits(e):
            bv = np.uint64(b)
            cands = miss | bv
            rivals = hit[inter[inter != 0] == bv]
            if len(rivals) and len(cands):
                keep = np.ones(len(cands), dtype=bool)
                step = max(1, 4_000_000 // len(rivals))
                for lo in range(0, len(cands), step):
                    block = cands[lo : lo + step]
                    covered = ((block[:, None] & rivals[None, :]) == rivals[None, :]).any(axis=1)
                    keep[lo : lo + step] = ~covered
                cands = cands[keep]
            parts.append(cands)
        cur = np.concatenate(parts)
    return sorted(int(x) for x in cur)


def boundary_dual(ideal: MonomialIdeal, caps: Sequence[int]) -> MonomialIdeal:
    """Alexander dual of the artinian closure, taken with ``nu = caps + 1``."""
    closed = artinian_closure(ideal, caps)
    if all(c == 1 for c in caps) and not ideal.is_unit():
        # Binary case: the dual is generated by x^(1 + chi_T) over the
        # minimal transversals T of the generator supports.
        n = ideal.nvars
        ts = minimal_transversals([to_mask(g) for g in ideal.gens], n)
        return MonomialIdeal(n, tuple(sorted(tuple(1 + e for e in from_mask(t, n)) for t in ts)))
    return alexander_dual(closed, [c + 1 for c in caps])


def upper_boundary_points(ideal: MonomialIdeal, caps: Sequence[int]) -> list[Monomial]:
    """Maximal states outside ``ideal``, read off :func:`boundary_dual`."""
    nu = [c + 1 for c in caps]
    return sorted(tuple(v - s for v, s in zip(nu, sigma)) for sigma in boundary_dual(ideal, caps).gens)
