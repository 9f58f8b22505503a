"""The linearized Hopf monoid of acyclic mixed graphs.

A mixed graph carries undirected edges and directed edges on one vertex
set.  Valid graphs are simple (no loops, at most one edge of either kind
between two vertices) and have no directed cycle among the directed edges.
The product is disjoint union; the coproduct splitting off ``S`` vanishes
exactly when some directed edge leaves ``S``.

Plain graphs are the special case with no directed edges; there is no
separate family for them.

Coloring conventions.  With the coproduct rule above, a function is proper
for the edgeless submonoid iff it strictly *decreases* along directed
edges, and proper for the directed submonoid iff it never increases along
them; undirected edges always demand distinct values.  The direct
:func:`is_strong_coloring` / :func:`is_weak_coloring` oracles below encode
those inequalities and double-check the Hopf-theoretic properness test.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import ClassVar, Iterable, Mapping

from .errors import InvalidInputError, ValidationError
from .species import Submonoid


@dataclass(frozen=True)
class MixedGraph:
    vertices: tuple[str, ...]
    undirected: tuple[tuple[str, str], ...]
    directed: tuple[tuple[str, str], ...]

    kind: ClassVar[str] = "mixed-graph"
    valid_submonoids: ClassVar[frozenset] = frozenset(
        {Submonoid.EDGELESS, Submonoid.DIRECTED, Submonoid.FULL}
    )

    @property
    def ground(self) -> tuple[str, ...]:
        return self.vertices

    def induced(self, T: frozenset) -> "MixedGraph":
        return MixedGraph(
            tuple(sorted(T)),
            tuple(e for e in self.undirected if e[0] in T and e[1] in T),
            tuple(e for e in self.directed if e[0] in T and e[1] in T),
        )

    def delta_defined(self, S: frozenset) -> bool:
        return not any(u in S and v not in S for u, v in self.directed)

    def product(self, other: "MixedGraph") -> "MixedGraph":
        return MixedGraph(
            tuple(sorted(self.vertices + other.vertices)),
            tuple(sorted(self.undirected + other.undirected)),
            tuple(sorted(self.directed + other.directed)),
        )

    def in_submonoid(self, s: Submonoid) -> bool:
        if s is Submonoid.FULL:
            return True
        if s is Submonoid.EDGELESS:
            return not self.undirected and not self.directed
        if s is Submonoid.DIRECTED:
            return not self.undirected
        raise InvalidInputError(f"submonoid {s.value!r} undefined for mixed graphs")


def mixed_graph(
    vertices: Iterable[str],
    undirected: Iterable[tuple[str, str]] = (),
    directed: Iterable[tuple[str, str]] = (),
) -> MixedGraph:
    """Validate raw data and build a :class:`MixedGraph`.

    Raises :class:`ValidationError` with codes ``duplicate-vertex``,
    ``unknown-vertex``, ``self-loop``, ``duplicate-edge``, ``directed-cycle``.
    """
    verts = tuple(str(v) for v in vertices)
    if len(set(verts)) != len(verts):
        raise ValidationError("duplicate-vertex", f"duplicate vertex in {verts}")
    vset = set(verts)
    und: list[tuple[str, str]] = []
    dir_: list[tuple[str, str]] = []
    seen_pairs: set[frozenset] = set()
    for u, v in undirected:
        u, v = str(u), str(v)
        _check_endpoints(u, v, vset)
        key = frozenset((u, v))
        if key in seen_pairs:
            raise ValidationError("duplicate-edge", f"more than one edge between {u} and {v}")
        seen_pairs.add(key)
        und.append((min(u, v), max(u, v)))
    for u, v in directed:
        u, v = str(u), str(v)
        _check_endpoints(u, v, vset)
        key = frozenset((u, v))
        if key in seen_pairs:
            raise ValidationError("duplicate-edge", f"more than one edge between {u} and {v}")
        seen_pairs.add(key)
        dir_.append((u, v))
    _check_acyclic(verts, dir_)
    return MixedGraph(tuple(sorted(verts)), tuple(sorted(und)), tuple(sorted(dir_)))


def _check_endpoints(u: str, v: str, vset: set) -> None:
    if u not in vset or v not in vset:
        raise ValidationError("unknown-vertex", f"edge ({u},{v}) uses an unknown vertex")
    if u == v:
        raise ValidationError("self-loop", f"self-loop at {u}")


def _check_acyclic(vertices: tuple[str, ...], directed: list[tuple[str, str]]) -> None:
    adj: dict[str, list[str]] = {v: [] for v in vertices}
    for u, v in directed:
        adj[u].append(v)
    state: dict[str, int] = {}

    def dfs(u: str) -> bool:
        state[u] = 1
        for w in adj[u]:
            if state.get(w) == 1:
                return False
            if w not in state and not dfs(w):
                return False
        state[u] = 2
        return True

    for v in vertices:
        if v not in state and not dfs(v):
            raise ValidationError("directed-cycle", "directed edges contain a cycle")


# ---------------------------------------------------------------------------
# the reachability poset and crossing edges
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InducedPoset:
    """Partial order with m <= n iff a directed path runs from n to m."""

    carrier: tuple[str, ...]
    leq: frozenset  # frozenset of (m, n) pairs, reflexive and transitive

    def below(self, x: str, y: str) -> bool:
        return (x, y) in self.leq

    def down_set(self, X: Iterable[str]) -> frozenset:
        X = frozenset(X)
        return frozenset(z for z in self.carrier if any((z, x) in self.leq for x in X))

    def convex_hull(self, X: Iterable[str]) -> frozenset:
        X = frozenset(X)
        return frozenset(
            z
            for z in self.carrier
            if any((a, z) in self.leq and (z, b) in self.leq for a in X for b in X)
        )


def induced_poset(g: MixedGraph) -> InducedPoset:
    """Reachability order over directed edges only: m <= n iff n reaches m."""
    reach: dict[str, set] = {v: {v} for v in g.vertices}
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for u, v in g.directed:
        adj[u].append(v)
    # transitive closure by repeated expansion; graphs here are tiny
    changed = True
    while changed:
        changed = False
        for u in g.vertices:
            add = set()
            for w in adj[u]:
                add |= reach[w]
            if not add <= reach[u]:
                reach[u] |= add
                changed = True
    pairs = frozenset((m, n) for n in g.vertices for m in reach[n])
    return InducedPoset(g.vertices, pairs)


def crossing_pairs(g: MixedGraph) -> tuple[tuple[tuple[str, str], tuple[str, str]], ...]:
    """Unordered pairs of undirected edges that cross in the reachability poset.

    An ordered pair (e, f) of vertex-disjoint undirected edges crosses when
    the interval closure C of the four endpoints, intersected with the
    down-set of e's endpoints, contains exactly one endpoint of f.  The pair
    is reported if either orientation crosses.  Edges sharing a vertex never
    cross: a shared endpoint sits in C and in the down-set automatically,
    and such pairs have no room to interleave.
    """
    poset = induced_poset(g)
    out = []
    for e, f in combinations(g.undirected, 2):
        if set(e) & set(f):
            continue
        if _crosses(poset, e, f) or _crosses(poset, f, e):
            out.append(tuple(sorted((e, f))))
    return tuple(sorted(out))


def _crosses(poset: InducedPoset, e: tuple[str, str], f: tuple[str, str]) -> bool:
    hull = poset.convex_hull(set(e) | set(f))
    ideal = poset.down_set(e)
    inside = hull & ideal
    return len(inside & frozenset(f)) == 1


def is_noncrossing(g: MixedGraph) -> bool:
    return not crossing_pairs(g)


# ---------------------------------------------------------------------------
# direct coloring oracles
# ---------------------------------------------------------------------------


def _check_coloring_args(g: MixedGraph, f: Mapping, k: int) -> None:
    if frozenset(f) != frozenset(g.vertices):
        raise InvalidInputError("coloring is not total on the vertex set")
    if any(not isinstance(v, int) or v < 1 or v > k for v in f.values()):
        raise InvalidInputError(f"coloring values must lie in [1, {k}]")


def is_strong_coloring(g: MixedGraph, f: Mapping, k: int) -> bool:
    """Strictly decreasing along directed edges, distinct across undirected ones.

    Independent oracle for S-properness with the edgeless submonoid.
    """
    _check_coloring_args(g, f, k)
    return all(f[u] > f[v] for u, v in g.directed) and all(
        f[u] != f[v] for u, v in g.undirected
    )


def is_weak_coloring(g: MixedGraph, f: Mapping, k: int) -> bool:
    """Never increasing along directed edges, distinct across undirected ones.

    Independent oracle for S-properness with the directed submonoid.
    """
    _check_coloring_args(g, f, k)
    return all(f[u] >= f[v] for u, v in g.directed) and all(
        f[u] != f[v] for u, v in g.undirected
    )


# ---------------------------------------------------------------------------
# document serialization
# ---------------------------------------------------------------------------


def to_doc(g: MixedGraph) -> dict:
    """Canonical document form: sorted vertices and edge lists."""
    return {
        "kind": MixedGraph.kind,
        "vertices": list(g.vertices),
        "undirected": [list(e) for e in g.undirected],
        "directed": [list(e) for e in g.directed],
    }


def from_doc(doc: Mapping) -> MixedGraph:
    if doc.get("kind") != MixedGraph.kind:
        raise ValidationError("bad-kind", f"expected kind {MixedGraph.kind!r}")
    return mixed_graph(
        doc.get("vertices", ()),
        [tuple(e) for e in doc.get("undirected", ())],
        [tuple(e) for e in doc.get("directed", ())],
    )
