"""Exhaustive and randomized generation of small structures.

Canonical forms are computed by brute-force minimization over all vertex
bijections, which is cheap at the sizes this package sweeps (at most five
elements).  The canonical representative always lives on the ground set
``v0 < v1 < ...``, and its compact JSON document doubles as the
deduplication key and as a valid CLI input.

The full mixed-graph sweep at n = 5 runs through a vectorized numpy pass:
every assignment of the 4 states per vertex pair is relabeled under all
permutations at once and reduced to its minimal encoding.
"""

from __future__ import annotations

import json
import random
from itertools import combinations, permutations, product
from typing import Iterable, Iterator

import numpy as np

from . import double_posets as dp
from . import mixed_graphs as mg
from .errors import InvalidInputError, ValidationError
from .species import Submonoid

_STATE_FLIP = (0, 1, 3, 2)  # swap the two directed orientations


def _labels(n: int) -> tuple[str, ...]:
    return tuple(f"v{i}" for i in range(n))


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


def _mixed_state_vector(g: mg.MixedGraph, order: tuple[str, ...]) -> tuple[int, ...]:
    pos = {v: i for i, v in enumerate(order)}
    und = {frozenset(e) for e in g.undirected}
    direct = set(g.directed)
    states = []
    for i, j in combinations(range(len(order)), 2):
        u, v = order[i], order[j]
        if frozenset((u, v)) in und:
            states.append(1)
        elif (u, v) in direct:
            states.append(2)
        elif (v, u) in direct:
            states.append(3)
        else:
            states.append(0)
    return tuple(states)


def _mixed_from_states(states: Iterable[int], n: int) -> mg.MixedGraph:
    labels = _labels(n)
    und = []
    direct = []
    for (i, j), s in zip(combinations(range(n), 2), states):
        if s == 1:
            und.append((labels[i], labels[j]))
        elif s == 2:
            direct.append((labels[i], labels[j]))
        elif s == 3:
            direct.append((labels[j], labels[i]))
    return mg.MixedGraph(labels, tuple(sorted(und)), tuple(sorted(direct)))


def _pair_tables(n: int):
    """Per-permutation (source index, flip) tables for unordered pairs."""
    pairs = list(combinations(range(n), 2))
    pidx = {p: t for t, p in enumerate(pairs)}
    tables = []
    for perm in permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        tab = []
        for i, j in pairs:
            a, b = inv[i], inv[j]
            if a < b:
                tab.append((pidx[(a, b)], False))
            else:
                tab.append((pidx[(b, a)], True))
        tables.append(tuple(tab))
    return tuple(tables)


def canonical_mixed_graph(g: mg.MixedGraph) -> mg.MixedGraph:
    n = len(g.vertices)
    if n <= 1:
        return mg.MixedGraph(_labels(n), (), ())
    states = _mixed_state_vector(g, g.vertices)
    best = None
    for tab in _pair_tables(n):
        cand = tuple(_STATE_FLIP[states[src]] if flip else states[src] for src, flip in tab)
        if best is None or cand < best:
            best = cand
    return _mixed_from_states(best, n)


def _dp_state_vector(p: dp.DoublePoset, order: tuple[str, ...]) -> tuple[int, ...]:
    lt1, lt2 = set(p.lt1), set(p.lt2)
    states = []
    for i in range(len(order)):
        for j in range(len(order)):
            if i == j:
                continue
            pair = (order[i], order[j])
            states.append((pair in lt1) + 2 * (pair in lt2))
    return tuple(states)


def _dp_from_states(states: Iterable[int], n: int) -> dp.DoublePoset:
    labels = _labels(n)
    opairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    lt1, lt2 = [], []
    for (i, j), s in zip(opairs, states):
        if s & 1:
            lt1.append((labels[i], labels[j]))
        if s & 2:
            lt2.append((labels[i], labels[j]))
    return dp.DoublePoset(labels, tuple(sorted(lt1)), tuple(sorted(lt2)))


def _opair_tables(n: int):
    opairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    oidx = {p: t for t, p in enumerate(opairs)}
    tables = []
    for perm in permutations(range(n)):
        inv = [0] * n
        for i, x in enumerate(perm):
            inv[x] = i
        tables.append(tuple(oidx[(inv[i], inv[j])] for i, j in opairs))
    return tuple(tables)


def canonical_double_poset(p: dp.DoublePoset) -> dp.DoublePoset:
    n = len(p.elements)
    if n <= 1:
        return dp.DoublePoset(_labels(n), (), ())
    states = _dp_state_vector(p, p.elements)
    best = None
    for tab in _opair_tables(n):
        cand = tuple(states[src] for src in tab)
        if best is None or cand < best:
            best = cand
    return _dp_from_states(best, n)


def canonical_form(h):
    if isinstance(h, mg.MixedGraph):
        return canonical_mixed_graph(h)
    if isinstance(h, dp.DoublePoset):
        return canonical_double_poset(h)
    raise InvalidInputError(f"no canonical form for {type(h).__name__}")


def canonical_key(h) -> str:
    """Compact JSON of the canonical representative; also a valid CLI input."""
    c = canonical_form(h)
    doc = mg.to_doc(c) if isinstance(c, mg.MixedGraph) else dp.to_doc(c)
    return json.dumps(doc, separators=(",", ":"), sort_keys=True)


def relabel(h, mapping: dict):
    """Transport a structure along a bijection of its ground set."""
    if set(mapping) != set(h.ground):
        raise InvalidInputError("relabeling must be defined on the whole ground set")
    if len(set(mapping.values())) != len(mapping):
        raise InvalidInputError("relabeling must be a bijection")
    if isinstance(h, mg.MixedGraph):
        return mg.MixedGraph(
            tuple(sorted(mapping[v] for v in h.vertices)),
            tuple(sorted(tuple(sorted((mapping[u], mapping[v]))) for u, v in h.undirected)),
            tuple(sorted((mapping[u], mapping[v]) for u, v in h.directed)),
        )
    if isinstance(h, dp.DoublePoset):
        return dp.DoublePoset(
            tuple(sorted(mapping[v] for v in h.elements)),
            tuple(sorted((mapping[x], mapping[y]) for x, y in h.lt1)),
            tuple(sorted((mapping[x], mapping[y]) for x, y in h.lt2)),
        )
    raise InvalidInputError(f"cannot relabel {type(h).__name__}")


# ---------------------------------------------------------------------------
# exhaustive enumeration up to isomorphism
# ---------------------------------------------------------------------------


def _mixed_codes(n: int) -> list[int]:
    """Minimal encodings of all iso classes of pair-state vectors on [n]."""
    pairs = list(combinations(range(n), 2))
    P = len(pairs)
    total = 4**P
    arr = np.empty((total, P), dtype=np.uint8)
    tmp = np.arange(total, dtype=np.int64)
    for t in range(P):
        arr[:, t] = tmp % 4
        tmp //= 4
    pow4 = (4 ** np.arange(P)).astype(np.int64)
    flip_lut = np.array(_STATE_FLIP, dtype=np.uint8)
    best = None
    for tab in _pair_tables(n):
        src = np.array([s for s, _ in tab], dtype=np.int64)
        flips = np.array([f for _, f in tab], dtype=bool)
        moved = arr[:, src]
        if flips.any():
            cols = np.where(flips)[0]
            moved[:, cols] = flip_lut[moved[:, cols]]
        enc = moved.astype(np.int64) @ pow4
        best = enc if best is None else np.minimum(best, enc)
    return np.unique(best).tolist()


def mixed_graphs_of_size(n: int) -> Iterator[mg.MixedGraph]:
    """All acyclic mixed graphs on n vertices up to relabeling."""
    if n == 0:
        yield mg.MixedGraph((), (), ())
        return
    if n == 1:
        yield mg.MixedGraph(_labels(1), (), ())
        return
    P = len(list(combinations(range(n), 2)))
    for code in _mixed_codes(n):
        states = []
        c = code
        for _ in range(P):
            states.append(c % 4)
            c //= 4
        g = _mixed_from_states(states, n)
        try:
            mg.mixed_graph(g.vertices, g.undirected, g.directed)
        except ValidationError:
            continue
        yield g


def strict_orders(n: int) -> list[tuple[tuple[str, str], ...]]:
    """All strict partial orders on v0..v(n-1), as sorted closed pair tuples."""
    labels = _labels(n)
    opairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    found = []
    for mask in range(1 << len(opairs)):
        rel = {opairs[t] for t in range(len(opairs)) if mask >> t & 1}
        if any((b, a) in rel for a, b in rel):
            continue
        transitive = all(
            (a, d) in rel for a, b in rel for c, d in rel if b == c
        )
        if transitive:
            found.append(tuple(sorted((labels[a], labels[b]) for a, b in rel)))
    return found


def double_posets_of_size(n: int) -> Iterator[dp.DoublePoset]:
    """All double posets on n elements up to relabeling."""
    if n == 0:
        yield dp.DoublePoset((), (), ())
        return
    labels = _labels(n)
    orders = strict_orders(n)
    seen = set()
    for lt1 in orders:
        for lt2 in orders:
            p = dp.DoublePoset(labels, lt1, lt2)
            c = canonical_double_poset(p)
            if c not in seen:
                seen.add(c)
                yield c


def structures_up_to(family: str, n: int, include_empty: bool = False) -> Iterator:
    """All structures of a family on 1..n elements (0..n with include_empty)."""
    lo = 0 if include_empty else 1
    for size in range(lo, n + 1):
        if family == mg.MixedGraph.kind:
            yield from mixed_graphs_of_size(size)
        elif family == dp.DoublePoset.kind:
            yield from double_posets_of_size(size)
        else:
            raise InvalidInputError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_mixed_graph(rng: random.Random, n: int, labels=None) -> mg.MixedGraph:
    """A random acyclic mixed graph; directed edges follow a random topological order."""
    labels = tuple(labels) if labels else _labels(n)
    order = list(labels)
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    und, direct = [], []
    for u, v in combinations(sorted(labels), 2):
        roll = rng.random()
        if roll < 0.25:
            und.append((u, v))
        elif roll < 0.55:
            direct.append((u, v) if rank[u] < rank[v] else (v, u))
    return mg.MixedGraph(tuple(sorted(labels)), tuple(sorted(und)), tuple(sorted(direct)))


def _random_order(rng: random.Random, labels) -> tuple[tuple[str, str], ...]:
    order = list(labels)
    rng.shuffle(order)
    pairs = set()
    for i, j in combinations(range(len(order)), 2):
        if rng.random() < 0.3:
            pairs.add((order[i], order[j]))
    return tuple(sorted(dp._transitive_closure(pairs)))


def random_double_poset(rng: random.Random, n: int, labels=None) -> dp.DoublePoset:
    labels = tuple(sorted(labels)) if labels else _labels(n)
    return dp.DoublePoset(labels, _random_order(rng, labels), _random_order(rng, labels))


def random_structure(rng: random.Random, family: str, n: int):
    if family == mg.MixedGraph.kind:
        return random_mixed_graph(rng, n)
    if family == dp.DoublePoset.kind:
        return random_double_poset(rng, n)
    raise InvalidInputError(f"unknown family {family!r}")


def random_boolean_interval_filter(rng: random.Random, n: int):
    """A random up-closed filter over the Boolean lattice, generated by
    length-2 intervals."""
    from .complexes import all_intervals, boolean_members, interval_filter

    members = boolean_members(n)
    intervals = all_intervals(members)
    length2 = [iv for iv in intervals if len(iv[1] - iv[0]) == 2]
    count = rng.randint(1, max(1, len(length2) // 2))
    generators = rng.sample(length2, count)
    filt = {
        (S, T)
        for S, T in intervals
        if any(S <= gS and gT <= T for gS, gT in generators)
    }
    universe = sorted(frozenset().union(*members)) if n else ()
    return interval_filter(universe, members, filt)
