"""Order complexes, coloring subcomplexes, and interval-filter complexes.

Complexes are stored as explicit face sets closed under taking subsets.
The void complex (no faces at all) is distinct from the empty complex
(just the empty face); the former is what the coloring subcomplex of an
S-structure degenerates to, the latter what order complexes on at most one
element degenerate to.

Chain vertices are frozensets of element names; double-cone apexes are the
reserved string labels ``"*0"`` and ``"*1"``.  Complexes here stay small
(ground sets of at most :data:`~hopfcolor.limits.MAX_VERTICES` elements),
so nothing is lazy.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from .errors import InvalidInputError, ResourceLimitError
from .limits import MAX_FACES, MAX_VERTICES
from .species import MinorOracle, Submonoid, check_submonoid

Face = frozenset

APEXES = ("*0", "*1")


def label_key(label):
    """Deterministic sort key across the label kinds used in this package."""
    if isinstance(label, frozenset):
        return (2, len(label), tuple(sorted(label)))
    return (0, type(label).__name__, label)


def render_label(label) -> str:
    if isinstance(label, frozenset):
        return "|".join(sorted(label))
    return str(label)


@dataclass(frozen=True)
class SimplicialComplex:
    faces: frozenset  # frozenset of frozensets; empty set of faces = void

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def has_empty_face(self) -> bool:
        return Face() in self.faces

    @property
    def vertices(self) -> tuple:
        verts = {next(iter(f)) for f in self.faces if len(f) == 1}
        return tuple(sorted(verts, key=label_key))

    def faces_by_dim(self) -> dict:
        out: dict[int, list] = {}
        for f in self.faces:
            out.setdefault(len(f) - 1, []).append(f)
        for lst in out.values():
            lst.sort(key=lambda f: tuple(sorted((label_key(x) for x in f))))
        return out

    def __contains__(self, face) -> bool:
        return Face(face) in self.faces


VOID = SimplicialComplex(frozenset())
EMPTY = SimplicialComplex(frozenset({Face()}))


def complex_from_faces(faces: Iterable, already_closed: bool = False) -> SimplicialComplex:
    """Build a complex from the given faces, closing under subsets.

    An empty iterable yields the void complex; note that a nonvoid complex
    always contains the empty face.
    """
    closed: set = set()
    for face in faces:
        face = Face(face)
        if already_closed:
            closed.add(face)
        elif face not in closed:
            members = sorted(face, key=label_key)
            for r in range(len(members) + 1):
                for sub in combinations(members, r):
                    closed.add(Face(sub))
    if already_closed and closed:
        closed.add(Face())
    return SimplicialComplex(frozenset(closed))


def f_vector(c: SimplicialComplex) -> tuple[int, ...]:
    """(f_-1, f_0, ...): face counts by number of vertices; void gives ()."""
    if c.is_void:
        return ()
    top = max(len(f) for f in c.faces)
    counts = [0] * (top + 1)
    for f in c.faces:
        counts[len(f)] += 1
    return tuple(counts)


def dimension(c: SimplicialComplex) -> Optional[int]:
    """Top face dimension; -1 for the empty complex, None for the void one."""
    if c.is_void:
        return None
    return max(len(f) for f in c.faces) - 1


def facets(c: SimplicialComplex) -> tuple:
    by_dim = c.faces_by_dim()
    out = []
    for d, faces in by_dim.items():
        above = by_dim.get(d + 1, ())
        for f in faces:
            if not any(f < g for g in above):
                out.append(f)
    return tuple(sorted(out, key=lambda f: (len(f), tuple(sorted((label_key(x) for x in f))))))


def is_pure(c: SimplicialComplex) -> bool:
    dims = {len(f) for f in facets(c)}
    return len(dims) <= 1


def is_connected(c: SimplicialComplex) -> bool:
    """Path connectivity of the 1-skeleton.

    Conventions: the empty complex is connected, a single vertex is
    connected, the void complex is not.
    """
    if c.is_void:
        return False
    verts = c.vertices
    if len(verts) <= 1:
        return True
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in c.faces:
        if len(f) == 2:
            a, b = sorted(f, key=label_key)
            parent[find(a)] = find(b)
    roots = {find(v) for v in verts}
    return len(roots) == 1


def link(c: SimplicialComplex, face: Iterable) -> SimplicialComplex:
    sigma = Face(face)
    if sigma not in c.faces:
        raise InvalidInputError("face is not in the complex")
    return SimplicialComplex(
        frozenset(tau - sigma for tau in c.faces if sigma <= tau)
    )


def skeleton(c: SimplicialComplex, d: int) -> SimplicialComplex:
    return SimplicialComplex(frozenset(f for f in c.faces if len(f) - 1 <= d))


def double_cone(c: SimplicialComplex) -> SimplicialComplex:
    """Join with the full 1-simplex on two fresh apex vertices."""
    if c.is_void:
        return VOID
    for apex in APEXES:
        if Face((apex,)) in c.faces:
            raise InvalidInputError(f"apex label {apex!r} already used")
    apex_faces = [Face(), Face((APEXES[0],)), Face((APEXES[1],)), Face(APEXES)]
    return SimplicialComplex(
        frozenset(f | a for f in c.faces for a in apex_faces)
    )


@dataclass(frozen=True)
class RelativePair:
    """A complex together with a subcomplex; the subcomplex may be void."""

    total: SimplicialComplex
    sub: SimplicialComplex

    def __post_init__(self):
        if not self.sub.faces <= self.total.faces:
            raise InvalidInputError("sub is not a subcomplex of total")

    def relative_faces(self) -> frozenset:
        return self.total.faces - self.sub.faces


def double_cone_pair(pair: RelativePair) -> RelativePair:
    return RelativePair(double_cone(pair.total), double_cone(pair.sub))


def relative_f_vector(pair: RelativePair) -> tuple[int, ...]:
    rel = pair.relative_faces()
    if not rel:
        return ()
    top = max(len(f) for f in rel)
    counts = [0] * (top + 1)
    for f in rel:
        counts[len(f)] += 1
    return tuple(counts)


def relative_hilbert(pair: RelativePair, k: int) -> int:
    """Hilbert function of the Stanley-Reisner module of the pair.

    Counts monomials of degree k whose support is a relative face; the
    degree-0 term contributes exactly when the empty face is relative.
    """
    if k < 0:
        raise InvalidInputError("k must be nonnegative")
    rel = pair.relative_faces()
    if k == 0:
        return 1 if Face() in rel else 0
    total = 0
    for f in rel:
        j = len(f)
        if j >= 1:
            total += comb(k - 1, j - 1)
    return total


# ---------------------------------------------------------------------------
# order complexes of structures
# ---------------------------------------------------------------------------


def _chain_faces(vertex_sets: list, max_faces: int) -> set:
    """All chains (under strict inclusion) in a family of subsets."""
    verts = sorted(vertex_sets, key=lambda S: (len(S), tuple(sorted(S))))
    succ: list[list[int]] = [[] for _ in verts]
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if a < verts[j]:
                succ[i].append(j)
    faces: set = {Face()}

    def extend(chain: tuple, i: int):
        if len(faces) > max_faces:
            raise ResourceLimitError(f"complex exceeds {max_faces} faces")
        faces.add(Face(verts[j] for j in chain))
        for j in succ[i]:
            extend(chain + (j,), j)

    for i in range(len(verts)):
        extend((i,), i)
    return faces


def sigma(h, max_faces: int = MAX_FACES) -> SimplicialComplex:
    """Order complex of the nonempty proper coproduct supports of ``h``."""
    elements = h.ground
    n = len(elements)
    if n > MAX_VERTICES:
        raise ResourceLimitError(f"ground set larger than {MAX_VERTICES} elements")
    if n <= 1:
        return EMPTY
    gset = frozenset(elements)
    supports = []
    members = sorted(gset)
    for mask in range(1, (1 << n) - 1):
        S = frozenset(members[i] for i in range(n) if mask >> i & 1)
        if h.delta_defined(S):
            supports.append(S)
    return SimplicialComplex(frozenset(_chain_faces(supports, max_faces)))


def gamma(
    h,
    s: Submonoid,
    sigma_complex: Optional[SimplicialComplex] = None,
    max_faces: int = MAX_FACES,
) -> SimplicialComplex:
    """Subcomplex of sigma(h) of chains with a consecutive minor outside ``s``.

    Returns the void complex exactly when ``h`` itself is an S-structure; in
    that case every defined minor is one too and no chain qualifies.
    """
    check_submonoid(h, s)
    if h.in_submonoid(s):
        return VOID
    if sigma_complex is None:
        sigma_complex = sigma(h, max_faces=max_faces)
    oracle = MinorOracle(h, s)
    gset = frozenset(h.ground)
    bad_faces = []
    for face in sigma_complex.faces:
        chain = sorted(face, key=len)
        prev: frozenset = frozenset()
        in_gamma = False
        for cur in list(chain) + [gset]:
            if not oracle.gap_ok(prev, cur):
                in_gamma = True
                break
            prev = cur
        if in_gamma:
            bad_faces.append(face)
    return SimplicialComplex(frozenset(bad_faces))


def sigma_gamma_pair(h, s: Submonoid) -> RelativePair:
    total = sigma(h)
    return RelativePair(total, gamma(h, s, sigma_complex=total))


# ---------------------------------------------------------------------------
# interval filters
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntervalFilter:
    """A subset collection M (with bottom and top) plus an up-closed interval set."""

    universe: tuple
    members: frozenset  # frozenset of frozensets, contains empty and full
    filt: frozenset  # frozenset of (S, T) pairs with S <= T, both in members


def all_intervals(members: frozenset) -> tuple:
    out = [
        (S, T)
        for S in members
        for T in members
        if S <= T
    ]
    return tuple(sorted(out, key=lambda p: (len(p[0]), tuple(sorted(p[0])), len(p[1]), tuple(sorted(p[1])))))


def interval_filter(universe: Iterable, members: Iterable, filt: Iterable) -> IntervalFilter:
    """Validate and build an :class:`IntervalFilter`.

    ``filt`` must consist of intervals of ``members`` and be up-closed under
    interval containment: [S,T] in F and S' <= S <= T <= T' imply [S',T'] in F.
    """
    universe = tuple(sorted(set(universe)))
    full = frozenset(universe)
    members = frozenset(frozenset(S) for S in members)
    if Face() not in members or full not in members:
        raise InvalidInputError("members must contain the empty set and the full set")
    if not all(S <= full for S in members):
        raise InvalidInputError("members must be subsets of the universe")
    filt = frozenset((frozenset(S), frozenset(T)) for S, T in filt)
    for S, T in filt:
        if S not in members or T not in members or not S <= T:
            raise InvalidInputError("filter contains a pair that is not an interval of members")
    for S, T in filt:
        for S2 in members:
            if not S2 <= S:
                continue
            for T2 in members:
                if T <= T2 and (S2, T2) not in filt:
                    raise InvalidInputError("filter is not up-closed in the interval order")
    return IntervalFilter(universe, members, filt)


def interval_filter_from_structure(h, s: Submonoid) -> IntervalFilter:
    """The (M, F) pair whose relative complex reproduces (sigma, gamma)."""
    from .species import minor  # local import to keep module load order simple

    check_submonoid(h, s)
    elements = h.ground
    n = len(elements)
    members = set()
    for mask in range(1 << n):
        S = frozenset(elements[i] for i in range(n) if mask >> i & 1)
        if h.delta_defined(S):
            members.add(S)
    filt = set()
    for S, T in all_intervals(frozenset(members)):
        m = minor(h, S, T)
        if m is None or not m.in_submonoid(s):
            filt.add((S, T))
    return IntervalFilter(tuple(sorted(elements)), frozenset(members), frozenset(filt))


def interval_gamma(ifm: IntervalFilter, max_faces: int = MAX_FACES) -> RelativePair:
    """Order complex of M minus its bounds, with the filtered chain subcomplex."""
    full = frozenset(ifm.universe)
    proper = [S for S in ifm.members if S and S != full]
    total_faces = _chain_faces(proper, max_faces)
    sub_faces = []
    for face in total_faces:
        chain = sorted(face, key=len)
        prev: frozenset = Face()
        in_sub = False
        for cur in list(chain) + [full]:
            if (prev, cur) in ifm.filt:
                in_sub = True
                break
            prev = cur
        if in_sub:
            sub_faces.append(face)
    return RelativePair(
        SimplicialComplex(frozenset(total_faces)),
        SimplicialComplex(frozenset(sub_faces)),
    )


def minimal_filter_lengths(ifm: IntervalFilter) -> tuple[int, ...]:
    """Lengths |T - S| of the minimal intervals of the filter."""
    mins = []
    for S, T in ifm.filt:
        dominated = any(
            (S2, T2) != (S, T) and S <= S2 and T2 <= T
            for S2, T2 in ifm.filt
        )
        if not dominated:
            mins.append(len(T - S))
    return tuple(sorted(set(mins)))


def boolean_members(n: int) -> frozenset:
    """All subsets of the n-element universe {e0, ..., e(n-1)}."""
    elems = tuple(f"e{i}" for i in range(n))
    return frozenset(
        frozenset(elems[i] for i in range(n) if mask >> i & 1) for mask in range(1 << n)
    )


# ---------------------------------------------------------------------------
# export
# ---------------------------------------------------------------------------


def maximal_faces_rendered(c: SimplicialComplex) -> list[list[str]]:
    """Facets as sorted lists of rendered labels, deterministically ordered."""
    out = []
    for f in facets(c):
        out.append(sorted(render_label(x) for x in f))
    return sorted(out, key=lambda names: (len(names), names))
