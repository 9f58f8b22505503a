"""The linearized Hopf monoid of double posets.

A double poset is one carrier set with two strict partial orders.  Both
orders are stored transitively closed.  The product takes disjoint unions
of both orders and additionally places the whole left factor below the
whole right factor in the second order.  The coproduct splitting off ``S``
is nonzero exactly when ``S`` is an order ideal of the first order.

The inversion-free graded pieces form the geometric submonoid whose proper
functions are the classical p-partitions: weakly increasing along the first
order, strictly where the second order runs the opposite way.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import ClassVar, Iterable, Mapping, Optional

from .errors import InvalidInputError, ValidationError
from .species import Submonoid

Relation = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class DoublePoset:
    elements: tuple[str, ...]
    lt1: Relation  # transitively closed strict order, sorted pairs
    lt2: Relation

    kind: ClassVar[str] = "double-poset"
    valid_submonoids: ClassVar[frozenset] = frozenset(
        {Submonoid.INVERSION_FREE, Submonoid.FULL}
    )

    @property
    def ground(self) -> tuple[str, ...]:
        return self.elements

    def induced(self, T: frozenset) -> "DoublePoset":
        keep = lambda rel: tuple(p for p in rel if p[0] in T and p[1] in T)
        return DoublePoset(tuple(sorted(T)), keep(self.lt1), keep(self.lt2))

    def delta_defined(self, S: frozenset) -> bool:
        # S must be down-closed under the first order
        return not any(y in S and x not in S for x, y in self.lt1)

    def product(self, other: "DoublePoset") -> "DoublePoset":
        lt2 = set(self.lt2) | set(other.lt2)
        lt2.update((x, y) for x in self.elements for y in other.elements)
        return DoublePoset(
            tuple(sorted(self.elements + other.elements)),
            tuple(sorted(set(self.lt1) | set(other.lt1))),
            tuple(sorted(lt2)),
        )

    def in_submonoid(self, s: Submonoid) -> bool:
        if s is Submonoid.FULL:
            return True
        if s is Submonoid.INVERSION_FREE:
            return not inversions(self)
        raise InvalidInputError(f"submonoid {s.value!r} undefined for double posets")


def _transitive_closure(pairs: set) -> set:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(closed):
            for c, d in list(closed):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
    return closed


def double_poset(
    elements: Iterable[str],
    order1: Iterable[tuple[str, str]] = (),
    order2: Iterable[tuple[str, str]] = (),
) -> DoublePoset:
    """Validate raw relation lists and build a :class:`DoublePoset`.

    Relation lists are transitively closed here; a closure that touches the
    diagonal means the input contained a cycle and is rejected.
    """
    elems = tuple(str(e) for e in elements)
    if len(set(elems)) != len(elems):
        raise ValidationError("duplicate-element", f"duplicate element in {elems}")
    eset = set(elems)
    closed = []
    for name, rel in (("order1", order1), ("order2", order2)):
        pairs = set()
        for x, y in rel:
            x, y = str(x), str(y)
            if x not in eset or y not in eset:
                raise ValidationError("unknown-element", f"{name} relates unknown element ({x},{y})")
            pairs.add((x, y))
        pairs = _transitive_closure(pairs)
        if any(x == y for x, y in pairs):
            raise ValidationError("order-cycle", f"{name} contains a cycle")
        closed.append(tuple(sorted(pairs)))
    return DoublePoset(tuple(sorted(elems)), closed[0], closed[1])


def inversions(p: DoublePoset) -> tuple[tuple[str, str], ...]:
    """All pairs (x, y) with x <1 y and y <2 x."""
    lt2 = set(p.lt2)
    return tuple(sorted((x, y) for x, y in p.lt1 if (y, x) in lt2))


def covers1(p: DoublePoset) -> tuple[tuple[str, str], ...]:
    lt1 = set(p.lt1)
    return tuple(
        sorted(
            (x, y)
            for x, y in lt1
            if not any((x, z) in lt1 and (z, y) in lt1 for z in p.elements)
        )
    )


def descents(p: DoublePoset) -> tuple[tuple[str, str], ...]:
    """Inversions (x, y) where y covers x in the first order."""
    cov = set(covers1(p))
    return tuple(pair for pair in inversions(p) if pair in cov)


def inversion_to_descent(p: DoublePoset) -> tuple[bool, Optional[tuple[str, str]]]:
    """Check the inversion-to-descent condition; on failure return a witness.

    Every inversion (x, y) must have some descent (w, z) with x <=1 w and
    z <=1 y.
    """
    lt1 = set(p.lt1)

    def leq1(a: str, b: str) -> bool:
        return a == b or (a, b) in lt1

    des = descents(p)
    for x, y in inversions(p):
        if not any(leq1(x, w) and leq1(z, y) for w, z in des):
            return False, (x, y)
    return True, None


def is_p_partition(p: DoublePoset, f: Mapping, k: int) -> bool:
    """Weakly increasing along <1, strictly so on inversions; values in [k].

    Independent oracle for S-properness with the inversion-free submonoid.
    """
    if frozenset(f) != frozenset(p.elements):
        raise InvalidInputError("function is not total on the carrier")
    if any(not isinstance(v, int) or v < 1 or v > k for v in f.values()):
        raise InvalidInputError(f"function values must lie in [1, {k}]")
    lt2 = set(p.lt2)
    for x, y in p.lt1:
        if f[x] > f[y]:
            return False
        if (y, x) in lt2 and f[x] == f[y]:
            return False
    return True


def count_p_partitions(p: DoublePoset, k: int) -> int:
    """Brute-force count of p-partitions bounded by k."""
    elems = p.elements
    if not elems:
        return 1
    total = 0
    for values in iter_product(range(1, k + 1), repeat=len(elems)):
        if is_p_partition(p, dict(zip(elems, values)), k):
            total += 1
    return total


def order_ideals(p: DoublePoset) -> tuple[frozenset, ...]:
    """All down-sets of the first order, by size then lexicographically."""
    elems = p.elements
    n = len(elems)
    found = []
    for mask in range(1 << n):
        S = frozenset(elems[i] for i in range(n) if mask >> i & 1)
        if p.delta_defined(S):
            found.append(S)
    return tuple(sorted(found, key=lambda S: (len(S), tuple(sorted(S)))))


def to_doc(p: DoublePoset) -> dict:
    return {
        "kind": DoublePoset.kind,
        "elements": list(p.elements),
        "order1": [list(q) for q in p.lt1],
        "order2": [list(q) for q in p.lt2],
    }


def from_doc(doc: Mapping) -> DoublePoset:
    if doc.get("kind") != DoublePoset.kind:
        raise ValidationError("bad-kind", f"expected kind {DoublePoset.kind!r}")
    return double_poset(
        doc.get("elements", ()),
        [tuple(q) for q in doc.get("order1", ())],
        [tuple(q) for q in doc.get("order2", ())],
    )
