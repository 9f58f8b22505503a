"""Exact reduced and relative simplicial homology, and Cohen-Macaulay checks.

Betti numbers are computed over the rationals from boundary-matrix ranks.
Rank computation is exact: a sparse elimination phase consumes unit pivots
(which is almost always the whole matrix for simplicial boundaries) and any
residual block falls back to dense elimination over ``Fraction``.  Passing a
prime ``p`` switches every rank to GF(p) arithmetic, which serves as an
independent cross-check mode, not as the default.

The reduced chain complex includes the empty face in degree -1, so the
empty complex has a single nonzero Betti number, in degree -1.  Relative
homology of a pair is the homology of the chain complex spanned by faces of
the total complex not in the subcomplex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .complexes import (
    VOID,
    Face,
    RelativePair,
    SimplicialComplex,
    dimension,
    gamma,
    interval_gamma,
    is_connected,
    is_pure,
    label_key,
    link,
    minimal_filter_lengths,
    sigma,
)
from .errors import InvalidInputError
from .species import Submonoid, check_submonoid, minor

# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------


def _dense_fraction_rank(rows: dict) -> int:
    cols = sorted({c for row in rows.values() for c in row})
    cindex = {c: i for i, c in enumerate(cols)}
    mat = [
        [Fraction(row.get(c, 0)) for c in cols]
        for row in rows.values()
    ]
    rank = 0
    for c in range(len(cols)):
        pivot_row = None
        for r in range(rank, len(mat)):
            if mat[r][c]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][c]
        for r in range(rank + 1, len(mat)):
            if mat[r][c]:
                factor = mat[r][c] / pv
                for cc in range(c, len(cols)):
                    mat[r][cc] -= factor * mat[rank][cc]
        rank += 1
    return rank


def sparse_rank(columns: list[dict[int, int]], p: Optional[int] = None) -> int:
    """Rank of an integer matrix given as sparse columns.

    Exact over the rationals by default; over GF(p) when ``p`` is given.
    """
    rows: dict[int, dict[int, int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if p is not None:
                v %= p
            if v:
                rows.setdefault(r, {})[c] = v
    rank = 0
    while rows:
        pivot = None
        if p is None:
            best = None
            for r, row in rows.items():
                for c, v in row.items():
                    if v in (1, -1):
                        cand = (len(row), r)
                        if best is None or cand < best:
                            best, pivot = cand, (r, c)
                        break
            if pivot is None:
                return rank + _dense_fraction_rank(rows)
        else:
            r = min(rows)
            pivot = (r, min(rows[r]))
        r, c = pivot
        prow = rows.pop(r)
        pval = prow[c]
        rank += 1
        if p is not None and pval != 1:
            inv = pow(pval, -1, p)
            prow = {cc: (vv * inv) % p for cc, vv in prow.items()}
            pval = 1
        touched = [r2 for r2, row2 in rows.items() if c in row2]
        for r2 in touched:
            row2 = rows[r2]
            factor = row2[c] * pval  # pval is +-1 here
            for cc, vv in prow.items():
                nv = row2.get(cc, 0) - factor * vv
                if p is not None:
                    nv %= p
                if nv:
                    row2[cc] = nv
                else:
                    row2.pop(cc, None)
            if not row2:
                del rows[r2]
    return rank


# ---------------------------------------------------------------------------
# Betti profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced Betti numbers for dimensions -1 and up (trailing zeros trimmed)."""

    entries: tuple[int, ...]  # entries[i + 1] is the Betti number in dimension i

    def betti(self, i: int) -> int:
        idx = i + 1
        if 0 <= idx < len(self.entries):
            return self.entries[idx]
        return 0

    def nonzero(self) -> dict[int, int]:
        return {i - 1: b for i, b in enumerate(self.entries) if b}

    def as_doc(self) -> dict:
        return {str(i - 1): b for i, b in enumerate(self.entries)}

    def max_nonzero_dim(self) -> Optional[int]:
        nz = self.nonzero()
        return max(nz) if nz else None


def _trim(entries: list[int]) -> tuple[int, ...]:
    while entries and entries[-1] == 0:
        entries.pop()
    return tuple(entries)


def _betti_from_faces(included: frozenset, p: Optional[int] = None) -> HomologyProfile:
    """Betti numbers of the chain complex spanned by the given face set.

    For an honest complex this is reduced homology; for the relative face
    set of a pair it is relative homology (boundary entries landing outside
    the set are projected away).
    """
    if not included:
        return HomologyProfile(())
    by_dim: dict[int, list] = {}
    for f in included:
        by_dim.setdefault(len(f) - 1, []).append(f)
    for lst in by_dim.values():
        lst.sort(key=lambda f: tuple(sorted(label_key(x) for x in f)))
    top = max(by_dim)
    index = {
        d: {f: i for i, f in enumerate(faces)} for d, faces in by_dim.items()
    }
    # rank of the boundary map leaving dimension d
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        if d not in by_dim or (d - 1) not in by_dim:
            ranks[d] = 0
            continue
        below = index[d - 1]
        columns = []
        for f in by_dim[d]:
            members = sorted(f, key=label_key)
            col: dict[int, int] = {}
            for j, v in enumerate(members):
                target = f - {v}
                r = below.get(target)
                if r is not None:
                    col[r] = -1 if j % 2 else 1
            columns.append(col)
        ranks[d] = sparse_rank(columns, p)
    entries = []
    for d in range(-1, top + 1):
        dim_d = len(by_dim.get(d, ()))
        entries.append(dim_d - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return HomologyProfile(_trim(entries))


def reduced_betti(c: SimplicialComplex, p: Optional[int] = None) -> HomologyProfile:
    return _betti_from_faces(c.faces, p)


def relative_betti(pair: RelativePair, p: Optional[int] = None) -> HomologyProfile:
    return _betti_from_faces(pair.relative_faces(), p)


# ---------------------------------------------------------------------------
# Cohen-Macaulay checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Failure:
    witness: object  # a face, a minor key (S, T), or a label
    detail: str
    dim: Optional[int] = None
    betti: Optional[int] = None

    def as_doc(self) -> dict:
        from .complexes import render_label

        if isinstance(self.witness, tuple) and len(self.witness) == 2 and all(
            isinstance(x, frozenset) for x in self.witness
        ):
            witness = {"S": sorted(self.witness[0]), "T": sorted(self.witness[1])}
        elif isinstance(self.witness, frozenset):
            witness = sorted(render_label(x) for x in self.witness)
        else:
            witness = str(self.witness)
        doc = {"witness": witness, "detail": self.detail}
        if self.dim is not None:
            doc["dim"] = self.dim
        if self.betti is not None:
            doc["betti"] = self.betti
        return doc


@dataclass(frozen=True)
class CmReport:
    verdict: bool
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    def as_doc(self) -> dict:
        return {
            "verdict": self.verdict,
            "failures": [f.as_doc() for f in self.failures],
        }


def _sorted_faces(c: SimplicialComplex):
    return sorted(c.faces, key=lambda f: (len(f), tuple(sorted(label_key(x) for x in f))))


def is_cm(c: SimplicialComplex, p: Optional[int] = None, stop_on_first: bool = False) -> CmReport:
    """Every face link must have vanishing reduced homology below its dimension."""
    failures: list[Failure] = []
    if c.is_void:
        return CmReport(True, ())
    for face in _sorted_faces(c):
        lk = link(c, face)
        d = dimension(lk)
        profile = reduced_betti(lk, p)
        for i in range(-1, d):
            b = profile.betti(i)
            if b:
                failures.append(Failure(face, "link homology below top dimension", i, b))
                if stop_on_first:
                    return CmReport(False, tuple(failures))
    return CmReport(not failures, tuple(failures))


def is_relatively_cm(
    pair: RelativePair, p: Optional[int] = None, stop_on_first: bool = False
) -> CmReport:
    """Relative link homology must vanish below the total link's dimension.

    For faces outside the subcomplex the link pair degenerates to
    (link, void), so the check is the absolute one there.
    """
    failures: list[Failure] = []
    if pair.total.is_void:
        return CmReport(True, ())
    for face in _sorted_faces(pair.total):
        lk_total = link(pair.total, face)
        lk_sub = link(pair.sub, face) if face in pair.sub.faces else VOID
        d = dimension(lk_total)
        profile = relative_betti(RelativePair(lk_total, lk_sub), p)
        for i in range(-1, d):
            b = profile.betti(i)
            if b:
                failures.append(Failure(face, "relative link homology below top dimension", i, b))
                if stop_on_first:
                    return CmReport(False, tuple(failures))
    return CmReport(not failures, tuple(failures))


def theorem1_combinatorial(h, s: Submonoid, stop_on_first: bool = False) -> CmReport:
    """The combinatorial relative-CM criterion over all minors of size >= 2.

    A minor that is itself an S-structure has a void coloring subcomplex and
    is skipped; otherwise its coloring subcomplex must be pure of dimension
    one less than the minor's order complex, and connected whenever that
    target dimension is at least 1.  The connectivity requirement is vacuous
    for smaller minors: disconnection there only contributes relative
    homology in the top dimension, which the CM property does not constrain.
    """
    check_submonoid(h, s)
    elements = h.ground
    n = len(elements)
    failures: list[Failure] = []
    for tmask in range(1 << n):
        T = frozenset(elements[i] for i in range(n) if tmask >> i & 1)
        if len(T) < 2:
            continue
        tlist = sorted(T)
        for smask in range(1 << len(tlist)):
            S = frozenset(tlist[i] for i in range(len(tlist)) if smask >> i & 1)
            if len(T - S) < 2:
                continue
            m = minor(h, S, T)
            if m is None or m.in_submonoid(s):
                continue
            sig = sigma(m)
            gam = gamma(m, s, sigma_complex=sig)
            problems = []
            want = dimension(sig)
            want = None if want is None else want - 1
            if want is not None and want >= 1 and not is_connected(gam):
                problems.append("disconnected")
            if not is_pure(gam):
                problems.append("impure")
            if dimension(gam) != want:
                problems.append(
                    f"dimension {dimension(gam)} != dim sigma - 1 = {want}"
                )
            if problems:
                failures.append(Failure((S, T), "; ".join(problems)))
                if stop_on_first:
                    return CmReport(False, tuple(failures))
    return CmReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# scans and the interval-filter lemma
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanSummary:
    family: str
    submonoid: str
    max_size: int
    structures: int
    sigma_violations_below_top: tuple
    sigma_violations_acyclic: tuple
    agreement: dict
    mismatches: tuple

    def as_doc(self) -> dict:
        return {
            "family": self.family,
            "submonoid": self.submonoid,
            "max_size": self.max_size,
            "structures": self.structures,
            "sigma_violations_below_top": len(self.sigma_violations_below_top),
            "sigma_violations_acyclic": len(self.sigma_violations_acyclic),
            "agreement": self.agreement,
            "mismatches": list(self.mismatches),
        }


def cm_hopf_scan(family: str, s: Submonoid, n: int, p: Optional[int] = None) -> ScanSummary:
    """Exhaustive small-instance check of monoid CM-ness and Theorem-1 agreement.

    Enumerates all structures of the family on 1..n elements up to
    relabeling.  Reports structures whose order complex has homology below
    top dimension (and, separately, any homology at all: the stricter
    reading), plus the agreement matrix between the combinatorial criterion
    and the homological relative-CM check.
    """
    from . import enumeration
    from .complexes import sigma_gamma_pair
    from .limits import MAX_SURVEY_SIZE

    if n > MAX_SURVEY_SIZE:
        raise InvalidInputError(f"scan size {n} exceeds the survey cap {MAX_SURVEY_SIZE}")
    below_top = []
    acyclic_fails = []
    agreement = {"both_true": 0, "both_false": 0, "only_theorem1": 0, "only_homology": 0}
    mismatches = []
    count = 0
    for h in enumeration.structures_up_to(family, n):
        count += 1
        sig = sigma(h)
        profile = reduced_betti(sig, p)
        d = dimension(sig)
        key = enumeration.canonical_key(h)
        if any(profile.betti(i) for i in range(-1, d)):
            below_top.append(key)
        if profile.nonzero():
            acyclic_fails.append(key)
        t1 = theorem1_combinatorial(h, s, stop_on_first=True).verdict
        pair = sigma_gamma_pair(h, s)
        rcm = is_relatively_cm(pair, p, stop_on_first=True).verdict
        if t1 and rcm:
            agreement["both_true"] += 1
        elif not t1 and not rcm:
            agreement["both_false"] += 1
        else:
            agreement["only_theorem1" if t1 else "only_homology"] += 1
            mismatches.append(key)
    return ScanSummary(
        family,
        s.value,
        n,
        count,
        tuple(below_top),
        tuple(acyclic_fails),
        agreement,
        tuple(mismatches),
    )


@dataclass(frozen=True)
class Lemma6Result:
    status: str  # "pass" | "fail" | "skip"
    reason: str
    profile: Optional[HomologyProfile] = None

    def as_doc(self) -> dict:
        doc = {"status": self.status, "reason": self.reason}
        if self.profile is not None:
            doc["gamma_betti"] = self.profile.as_doc()
        return doc


def lemma6_check(ifm, p: Optional[int] = None) -> Lemma6Result:
    """Empirical test of the interval-filter homology-vanishing claim.

    Preconditions (violations are skips, not failures): the order complex of
    M is Cohen-Macaulay, the minimal filter intervals have length 2, and the
    filtered subcomplex is connected.  The claim: the subcomplex has trivial
    reduced homology strictly below dim Sigma(M) - 1.
    """
    pair = interval_gamma(ifm)
    if not ifm.filt:
        return Lemma6Result("skip", "filter is empty")
    lengths = minimal_filter_lengths(ifm)
    if lengths != (2,):
        return Lemma6Result("skip", f"minimal filter intervals have lengths {lengths}")
    if not is_cm(pair.total, p, stop_on_first=True).verdict:
        return Lemma6Result("skip", "Sigma(M) is not Cohen-Macaulay")
    if not is_connected(pair.sub):
        return Lemma6Result("skip", "Gamma(F, M) is not connected")
    profile = reduced_betti(pair.sub, p)
    top = dimension(pair.total)
    bad = any(profile.betti(i) for i in range(-1, top - 1))
    if bad:
        return Lemma6Result("fail", "homology below dim Sigma(M) - 1", profile)
    return Lemma6Result("pass", "homology vanishes below dim Sigma(M) - 1", profile)
