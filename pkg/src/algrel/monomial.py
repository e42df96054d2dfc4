"""Monomials as exponent vectors and finite monomial ideals.

A monomial ``x^s`` over ``n`` variables is stored as a plain tuple of ``n``
non-negative ints, the same tuple that describes the component-state vector
``s``.  Ideals keep their minimal generators sorted lexicographically so that
two equal ideals compare equal structurally.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import PreconditionError

Monomial = Tuple[int, ...]


def _check_lengths(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise PreconditionError(f"monomial length mismatch: {len(a)} vs {len(b)}")


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    """Return True if ``x^a`` divides ``x^b`` (``a <= b`` componentwise)."""
    _check_lengths(a, b)
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Sequence[int], b: Sequence[int]) -> Monomial:
    _check_lengths(a, b)
    return tuple(x if x >= y else y for x, y in zip(a, b))


def as_monomial(exponents: Iterable[int]) -> Monomial:
    m = tuple(int(e) for e in exponents)
    if any(e < 0 for e in m):
        raise PreconditionError(f"negative exponent in {m}")
    return m


def _minimal(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    cands = list(set(gens))
    if len(cands) <= 1:
        return tuple(cands)
    # Sorting by total degree guarantees that a divisor is always seen before
    # its multiples, so each candidate only needs checking against kept ones.
    cands.sort(key=lambda g: (sum(g), g))
    kept: list[Monomial] = []
    for g in cands:
        for h in kept:
            if all(x <= y for x, y in zip(h, g)):
                break
        else:
            kept.append(g)
    kept.sort()
    return tuple(kept)


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal given by its minimal generators.

    The zero ideal has no generators; the unit ideal has the all-zero
    generator.  Build instances through :func:`minimalize` (or
    :meth:`from_generators`) unless the generators are already minimal and
    sorted.
    """

    nvars: int
    gens: tuple[Monomial, ...]

    @classmethod
    def from_generators(cls, nvars: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        return minimalize(gens, nvars)

    @classmethod
    def zero(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ())

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)

    def __contains__(self, m) -> bool:
        return contains(self, m)

    def lcm_of_generators(self) -> Monomial:
        out = [0] * self.nvars
        for g in self.gens:
            for i, e in enumerate(g):
                if e > out[i]:
                    out[i] = e
        return tuple(out)

    def __str__(self) -> str:
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(format_monomial(g) for g in self.gens) + ">"


def format_monomial(m: Sequence[int]) -> str:
    parts = []
    for i, e in enumerate(m, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e > 1:
            parts.append(f"x{i}^{e}")
    return "*".join(parts) or "1"


def minimalize(gens: Iterable[Sequence[int]], nvars: int | None = None) -> MonomialIdeal:
    """Return the ideal generated by ``gens`` with its minimal generators.

    ``nvars`` is required when ``gens`` may be empty (the zero ideal).
    """
    mons = [as_monomial(g) for g in gens]
    if nvars is None:
        if not mons:
            raise PreconditionError("nvars is required for an empty generator set")
        nvars = len(mons[0])
    for g in mons:
        if len(g) != nvars:
            raise PreconditionError(f"generator {g} has length {len(g)}, expected {nvars}")
    return MonomialIdeal(nvars, _minimal(mons))


def contains(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    """Membership test: some generator divides ``m``."""
    if len(m) != ideal.nvars:
        raise PreconditionError(f"monomial length {len(m)} does not match nvars {ideal.nvars}")
    for g in ideal.gens:
        if all(x <= y for x, y in zip(g, m)):
            return True
    return False


def colon_by_monomial(ideal: MonomialIdeal, m: Sequence[int]) -> MonomialIdeal:
    """The colon ideal ``I : x^m``, generated by ``lcm(g, m) / m``."""
    m = as_monomial(m)
    if len(m) != ideal.nvars:
        raise PreconditionError(f"monomial length {len(m)} does not match nvars {ideal.nvars}")
    if ideal.is_zero():
        return ideal
    return MonomialIdeal(
        ideal.nvars,
        _minimal(tuple(g_i - e if g_i > e else 0 for g_i, e in zip(g, m)) for g in ideal.gens),
    )


def intersect(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    if a.nvars != b.nvars:
        raise PreconditionError(f"ideals live in different rings: {a.nvars} vs {b.nvars} variables")
    if a.is_zero() or b.is_zero():
        return MonomialIdeal.zero(a.nvars)
    return MonomialIdeal(a.nvars, _minimal(lcm(g, h) for g in a.gens for h in b.gens))


def add(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """Sum of two ideals (union of generating sets)."""
    if a.nvars != b.nvars:
        raise PreconditionError(f"ideals live in different rings: {a.nvars} vs {b.nvars} variables")
    return MonomialIdeal(a.nvars, _minimal(a.gens + b.gens))


# Squarefree monomials as int bitmasks.  Variable x_1 is the most significant
# bit, so integer order on masks equals lexicographic order on 0/1 tuples.


def is_squarefree(ideal: MonomialIdeal) -> bool:
    return all(e <= 1 for g in ideal.gens for e in g)


def to_mask(m: Sequence[int]) -> int:
    n = len(m)
    out = 0
    for i, e in enumerate(m):
        if e:
            out |= 1 << (n - 1 - i)
    return out


def from_mask(mask: int, nvars: int) -> Monomial:
    return tuple((mask >> (nvars - 1 - i)) & 1 for i in range(nvars))


def _minimal_masks(masks) -> list[int]:
    cands = list(set(masks))
    if len(cands) <= 1:
        return cands
    cands.sort(key=lambda g: (g.bit_count(), g))
    kept: list[int] = []
    for g in cands:
        for h in kept:
            if h & g == h:
                break
        else:
            kept.append(g)
    kept.sort()
    return kept
