"""Generic operations of a linearized Hopf monoid.

A structure family (see :mod:`hopfcolor.mixed_graph` and
:mod:`hopfcolor.double_poset`) plugs into this module by providing, on its
frozen structure class:

* ``ground``      -- tuple of element names, lexicographically sorted;
* ``induced(T)``  -- the induced substructure on a subset ``T`` (unchecked);
* ``delta_defined(S)`` -- whether the coproduct splitting off ``S`` as the
  first tensor factor is nonzero;
* ``product(other)``   -- the family product on disjoint ground sets;
* ``in_submonoid(s)``  -- membership in one of the geometric submonoids;
* ``kind`` / ``valid_submonoids`` -- class-level metadata.

For both implemented families the contraction ``h/S`` equals the induced
substructure on the complement, so restriction and contraction share
``induced``; only the definedness tests differ.

All structures are immutable values and every function here is pure, so
sweeps over independent inputs can run concurrently without coordination.
"""

from __future__ import annotations

import enum
from itertools import product as iter_product
from typing import Iterable, Mapping, Optional

from .errors import InvalidInputError, ResourceLimitError
from .limits import MAX_MAPS

#: elements are opaque string labels; a ground set is a sorted tuple of them
GroundSet = tuple[str, ...]

#: ordered set partition of a ground set into nonempty blocks
SetComposition = tuple[frozenset, ...]

#: a minor key (S, T) with S <= T <= ground
MinorKey = tuple[frozenset, frozenset]


class Submonoid(enum.Enum):
    """Named geometric Hopf submonoids the two families understand."""

    EDGELESS = "edgeless"
    DIRECTED = "directed"
    INVERSION_FREE = "inversion-free"
    FULL = "full"


def parse_submonoid(name: str) -> Submonoid:
    for s in Submonoid:
        if s.value == name:
            return s
    raise InvalidInputError(f"unknown submonoid {name!r}")


def ground(h) -> GroundSet:
    return h.ground


def _as_subset(h, S: Iterable, what: str = "subset") -> frozenset:
    S = frozenset(S)
    gset = frozenset(h.ground)
    if not S <= gset:
        raise InvalidInputError(f"{what} {sorted(S - gset)} not contained in ground set")
    return S


def check_submonoid(h, s: Submonoid) -> None:
    if s not in h.valid_submonoids:
        raise InvalidInputError(
            f"submonoid {s.value!r} is not defined for family {h.kind!r}"
        )


def delta_defined(h, S: Iterable) -> bool:
    """Whether the coproduct splitting (S, N\\S) of ``h`` is nonzero.

    By convention this is always true for S empty and S = N.
    """
    S = _as_subset(h, S)
    return h.delta_defined(S)


def restrict(h, T: Iterable):
    """``h`` restricted to ``T``, or None when the coproduct vanishes."""
    T = _as_subset(h, T)
    if not h.delta_defined(T):
        return None
    return h.induced(T)


def contract(h, S: Iterable):
    """``h/S``: the second coproduct factor, or None when it vanishes.

    For both implemented families the result is the induced substructure on
    the complement of ``S``; only definedness depends on the family rule.
    """
    S = _as_subset(h, S)
    if not h.delta_defined(S):
        return None
    return h.induced(frozenset(h.ground) - S)


def minor(h, S: Iterable, T: Iterable):
    """``h|_T / S``: restrict to ``T`` and then contract ``S``.

    None when either stage is undefined.  Raises when S <= T <= N fails.
    """
    S = frozenset(S)
    T = _as_subset(h, T, "T")
    if not S <= T:
        raise InvalidInputError("minor key requires S to be a subset of T")
    restricted = restrict(h, T)
    if restricted is None:
        return None
    return contract(restricted, S)


def product(x, y):
    """The family product of two structures on disjoint ground sets."""
    if x.kind != y.kind:
        raise InvalidInputError(f"cannot multiply {x.kind} by {y.kind}")
    overlap = frozenset(x.ground) & frozenset(y.ground)
    if overlap:
        raise InvalidInputError(f"ground sets overlap: {sorted(overlap)}")
    return x.product(y)


def in_submonoid(h, s: Submonoid) -> bool:
    check_submonoid(h, s)
    return h.in_submonoid(s)


def levels_of(f: Mapping) -> SetComposition:
    """Level sets of a map into positive integers, in increasing value order.

    Empty levels between used values are collapsed away; they only ever
    contribute identity minors.
    """
    by_value: dict[int, set] = {}
    for x, v in f.items():
        if not isinstance(v, int) or v < 1:
            raise InvalidInputError(f"function value {v!r} at {x!r} is not a positive integer")
        by_value.setdefault(v, set()).add(x)
    return tuple(frozenset(by_value[v]) for v in sorted(by_value))


def is_s_proper(h, f: Mapping, s: Submonoid) -> bool:
    """Whether every consecutive level-set minor of ``h`` exists and lies in ``s``."""
    check_submonoid(h, s)
    gset = frozenset(h.ground)
    if frozenset(f) != gset:
        raise InvalidInputError("function is not total on the ground set")
    blocks = levels_of(f)
    prev: frozenset = frozenset()
    for block in blocks:
        cur = prev | block
        m = minor(h, prev, cur)
        if m is None or not m.in_submonoid(s):
            return False
        prev = cur
    return True


class MinorOracle:
    """Memoized consecutive-minor queries for one (structure, submonoid) pair.

    Caching is an internal detail: results are identical to calling
    :func:`minor` and :func:`in_submonoid` directly.
    """

    def __init__(self, h, s: Submonoid):
        check_submonoid(h, s)
        self.h = h
        self.s = s
        self.ground = frozenset(h.ground)
        self._support: dict[frozenset, bool] = {}
        self._gap: dict[MinorKey, bool] = {}

    def support(self, S: frozenset) -> bool:
        hit = self._support.get(S)
        if hit is None:
            hit = self._support[S] = self.h.delta_defined(S)
        return hit

    def gap_ok(self, prev: frozenset, cur: frozenset) -> bool:
        """Whether the minor h|_cur / prev exists and is an S-structure."""
        key = (prev, cur)
        hit = self._gap.get(key)
        if hit is None:
            m = minor(self.h, prev, cur)
            hit = self._gap[key] = m is not None and m.in_submonoid(self.s)
        return hit

    def composition_proper(self, blocks: SetComposition) -> bool:
        prev: frozenset = frozenset()
        for block in blocks:
            cur = prev | block
            if not self.gap_ok(prev, cur):
                return False
            prev = cur
        return prev == self.ground

    def structure_in_s(self) -> bool:
        return self.h.in_submonoid(self.s)


def count_s_proper(h, s: Submonoid, k: int, max_maps: Optional[int] = None) -> int:
    """Number of S-proper functions ``f: N -> [k]`` by exhaustive enumeration."""
    check_submonoid(h, s)
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    elements = h.ground
    n = len(elements)
    if n == 0:
        return 1
    if k == 0:
        return 0
    limit = MAX_MAPS if max_maps is None else max_maps
    if k ** n > limit:
        raise ResourceLimitError(f"{k}^{n} maps exceed the enumeration limit {limit}")
    oracle = MinorOracle(h, s)
    verdicts: dict[SetComposition, bool] = {}
    total = 0
    for values in iter_product(range(1, k + 1), repeat=n):
        by_value: dict[int, list] = {}
        for x, v in zip(elements, values):
            by_value.setdefault(v, []).append(x)
        blocks = tuple(frozenset(by_value[v]) for v in sorted(by_value))
        verdict = verdicts.get(blocks)
        if verdict is None:
            verdict = verdicts[blocks] = oracle.composition_proper(blocks)
        if verdict:
            total += 1
    return total


def set_compositions(elements: Iterable) -> Iterable[SetComposition]:
    """All ordered set partitions of ``elements`` into nonempty blocks."""
    elems = sorted(elements)

    def rec(remaining: frozenset):
        if not remaining:
            yield ()
            return
        rem = sorted(remaining)
        m = len(rem)
        for mask in range(1, 1 << m):
            block = frozenset(rem[i] for i in range(m) if mask >> i & 1)
            for rest in rec(remaining - block):
                yield (block,) + rest

    yield from rec(frozenset(elems))


def proper_set_composition_counts(h, s: Submonoid) -> dict[tuple[int, ...], int]:
    """Count proper set compositions of the ground set, grouped by shape.

    The key is the integer composition of block sizes; the value counts set
    compositions of that shape whose consecutive minors all exist and lie in
    ``s``.  Aggregating binomially reproduces :func:`count_s_proper`:
    ``count_s_proper(h, s, k) = sum_j counts_with_j_blocks * C(k, j)``.
    """
    check_submonoid(h, s)
    oracle = MinorOracle(h, s)
    gset = frozenset(h.ground)
    counts: dict[tuple[int, ...], int] = {}
    if not gset:
        counts[()] = 1
        return counts

    def rec(prev: frozenset, shape: tuple[int, ...]):
        remaining = gset - prev
        if not remaining:
            counts[shape] = counts.get(shape, 0) + 1
            return
        rem = sorted(remaining)
        m = len(rem)
        for mask in range(1, 1 << m):
            block = frozenset(rem[i] for i in range(m) if mask >> i & 1)
            cur = prev | block
            if oracle.gap_ok(prev, cur):
                rec(cur, shape + (len(block),))

    rec(frozenset(), ())
    return counts
