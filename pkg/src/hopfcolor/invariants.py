"""Characteristic polynomials, the W-transform, and quasisymmetric expansions.

Everything here is exact: polynomials carry ``Fraction`` coefficients,
h-vectors and quasisymmetric coefficients are integers, and no floating
point appears anywhere.

The counting polynomial of a structure is recovered two independent ways:
by interpolating exhaustive proper-function counts (:func:`char_polynomial`,
with a verification node that fails loudly on mismatch) and by aggregating
proper set-composition counts binomially
(:func:`char_polynomial_via_compositions`, which is also what large survey
sweeps use).  The h-vectors the positivity theorems speak about are those of
the argument-shifted polynomial ``chi(h, k+1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Mapping, Optional

from .errors import InternalConsistencyError, InvalidInputError
from .species import (
    Submonoid,
    check_submonoid,
    count_s_proper,
    proper_set_composition_counts,
)

# ---------------------------------------------------------------------------
# exact univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalPolynomial:
    """Coefficients ascending by degree, trailing zeros trimmed; () is zero."""

    coeffs: tuple[Fraction, ...]

    @property
    def degree(self) -> Optional[int]:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            out[i] += c
        for i, c in enumerate(other.coeffs):
            out[i] += c
        return polynomial(out)

    def scale(self, a) -> "RationalPolynomial":
        a = Fraction(a)
        return polynomial([c * a for c in self.coeffs])

    def shift_argument(self, a: int) -> "RationalPolynomial":
        """The polynomial k -> p(k + a)."""
        out = [Fraction(0)] * len(self.coeffs)
        for i, c in enumerate(self.coeffs):
            # c * (k + a)^i
            for j in range(i + 1):
                out[j] += c * comb(i, j) * Fraction(a) ** (i - j)
        return polynomial(out)

    def as_doc(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]


def polynomial(coeffs) -> RationalPolynomial:
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return RationalPolynomial(tuple(coeffs))


ZERO_POLYNOMIAL = polynomial(())


def binomial_polynomial(j: int) -> RationalPolynomial:
    """C(k, j) = k (k-1) ... (k-j+1) / j! as a polynomial in k."""
    coeffs = [Fraction(1)]
    for i in range(j):
        # multiply by (k - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] += c
            nxt[d] -= c * i
        coeffs = nxt
    return polynomial(c / factorial(j) for c in coeffs)


def interpolate_integer_values(values: list[int]) -> RationalPolynomial:
    """The unique polynomial of degree < len(values) with p(i) = values[i].

    Newton forward differences over the nodes 0, 1, ..., len(values)-1.
    """
    diffs = [Fraction(v) for v in values]
    result = ZERO_POLYNOMIAL
    for j in range(len(values)):
        if diffs[0]:
            result = result + binomial_polynomial(j).scale(diffs[0])
        diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
    return result


# ---------------------------------------------------------------------------
# W-transform and h-vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HVector:
    """Integer entries h_0..h_d of the W-transform numerator."""

    entries: tuple[int, ...]

    def trimmed(self) -> tuple[int, ...]:
        ent = list(self.entries)
        while len(ent) > 1 and ent[-1] == 0:
            ent.pop()
        return tuple(ent)

    def display(self) -> str:
        return "(" + ", ".join(str(x) for x in self.trimmed()) + ")"


def w_transform(p: RationalPolynomial) -> HVector:
    """Numerator coefficients of (1-x)^(d+1) * sum_k p(k) x^k.

    Requires p to take integer values on 0..d; rejects otherwise.
    """
    if p.degree is None:
        return HVector(())
    d = p.degree
    values = []
    for i in range(d + 1):
        v = p(i)
        if v.denominator != 1:
            raise InvalidInputError(f"polynomial is not integer-valued: p({i}) = {v}")
        values.append(v.numerator)
    entries = tuple(
        sum((-1) ** i * comb(d + 1, i) * values[j - i] for i in range(j + 1))
        for j in range(d + 1)
    )
    return HVector(entries)


def is_h_positive(v: HVector) -> bool:
    return all(x >= 0 for x in v.entries)


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------


def char_polynomial(h, s: Submonoid, max_maps: Optional[int] = None) -> RationalPolynomial:
    """Interpolate exhaustive proper-function counts at k = 0..|N|.

    The result is verified against a fresh count at k = |N|+1; a mismatch
    means the counting function is not a polynomial of the claimed degree
    and raises InternalConsistencyError.
    """
    check_submonoid(h, s)
    n = len(h.ground)
    values = [count_s_proper(h, s, k, max_maps=max_maps) for k in range(n + 1)]
    p = interpolate_integer_values(values)
    probe = count_s_proper(h, s, n + 1, max_maps=max_maps)
    if p(n + 1) != probe:
        raise InternalConsistencyError(
            f"interpolated polynomial predicts {p(n + 1)} at k={n + 1}, count gives {probe}"
        )
    return p


def char_polynomial_via_compositions(h, s: Submonoid) -> RationalPolynomial:
    """The same polynomial assembled as sum_j (#proper j-block set comps) C(k, j)."""
    counts = proper_set_composition_counts(h, s)
    by_blocks: dict[int, int] = {}
    for shape, c in counts.items():
        by_blocks[len(shape)] = by_blocks.get(len(shape), 0) + c
    result = ZERO_POLYNOMIAL
    for j, c in sorted(by_blocks.items()):
        result = result + binomial_polynomial(j).scale(c)
    return result


def h_vector_shifted(h, s: Submonoid, fast: bool = False) -> HVector:
    """W-transform of the shifted counting polynomial chi(h, k+1).

    ``fast`` selects the set-composition route, used by large sweeps; the
    default goes through the exhaustive interpolation with its verification
    node.
    """
    p = char_polynomial_via_compositions(h, s) if fast else char_polynomial(h, s)
    return w_transform(p.shift_argument(1))


# ---------------------------------------------------------------------------
# quasisymmetric expansions
# ---------------------------------------------------------------------------

Composition = tuple[int, ...]


@dataclass(frozen=True)
class QSymExpansion:
    basis: str  # "M" or "F"
    degree: int
    coeffs: tuple[tuple[Composition, int], ...]  # sorted, zero coefficients omitted

    def coeff(self, alpha: Composition) -> int:
        for a, c in self.coeffs:
            if a == alpha:
                return c
        return 0

    def as_dict(self) -> dict[Composition, int]:
        return dict(self.coeffs)

    def as_doc(self) -> dict:
        return {",".join(str(a) for a in alpha): c for alpha, c in self.coeffs}

    def display(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for alpha, c in self.coeffs:
            term = f"{self.basis}({','.join(str(a) for a in alpha)})"
            if not parts:
                prefix = "-" if c < 0 else ""
            else:
                prefix = " - " if c < 0 else " + "
            mag = abs(c)
            parts.append(f"{prefix}{term}" if mag == 1 else f"{prefix}{mag}*{term}")
        return "".join(parts)


def _comp_sort_key(alpha: Composition):
    return (len(alpha), tuple(-a for a in alpha))


def _expansion(basis: str, degree: int, coeffs: Mapping[Composition, int]) -> QSymExpansion:
    items = tuple(
        (alpha, c) for alpha, c in sorted(coeffs.items(), key=lambda kv: _comp_sort_key(kv[0])) if c
    )
    for alpha, _ in items:
        if sum(alpha) != degree or any(a < 1 for a in alpha):
            raise InvalidInputError(f"{alpha} is not a composition of {degree}")
    return QSymExpansion(basis, degree, items)


def qsym_monomial(h, s: Submonoid) -> QSymExpansion:
    """Monomial-basis expansion: the coefficient of M_alpha counts proper
    set compositions of shape alpha."""
    counts = proper_set_composition_counts(h, s)
    return _expansion("M", len(h.ground), counts)


def compositions_of(m: int):
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions_of(m - first):
            yield (first,) + rest


def refinements_of(alpha: Composition):
    """All compositions refining alpha (each part split into a composition)."""
    if not alpha:
        yield ()
        return
    for head in compositions_of(alpha[0]):
        for tail in refinements_of(alpha[1:]):
            yield head + tail


def to_fundamental(q: QSymExpansion) -> QSymExpansion:
    """Apply M_alpha = sum over refinements beta of (-1)^(l(beta)-l(alpha)) F_beta."""
    if q.basis != "M":
        raise InvalidInputError("to_fundamental expects a monomial-basis expansion")
    out: dict[Composition, int] = {}
    for alpha, c in q.coeffs:
        for beta in refinements_of(alpha):
            out[beta] = out.get(beta, 0) + c * (-1) ** (len(beta) - len(alpha))
    return _expansion("F", q.degree, out)


def to_monomial(q: QSymExpansion) -> QSymExpansion:
    """Apply F_alpha = sum over refinements beta of M_beta (the inverse map)."""
    if q.basis != "F":
        raise InvalidInputError("to_monomial expects a fundamental-basis expansion")
    out: dict[Composition, int] = {}
    for alpha, c in q.coeffs:
        for beta in refinements_of(alpha):
            out[beta] = out.get(beta, 0) + c
    return _expansion("M", q.degree, out)


def is_f_positive(q: QSymExpansion) -> bool:
    if q.basis != "F":
        raise InvalidInputError("F-positivity is read off the fundamental basis")
    return all(c >= 0 for _, c in q.coeffs)


# ---------------------------------------------------------------------------
# order polynomials
# ---------------------------------------------------------------------------


def order_polynomial(p) -> RationalPolynomial:
    """Order polynomial of a double poset, cross-checked against p-partitions."""
    from .double_posets import DoublePoset, count_p_partitions

    if not isinstance(p, DoublePoset):
        raise InvalidInputError("order polynomials are defined for double posets")
    poly = char_polynomial(p, Submonoid.INVERSION_FREE)
    for k in range(len(p.elements) + 2):
        direct = count_p_partitions(p, k)
        if poly(k) != direct:
            raise InternalConsistencyError(
                f"order polynomial gives {poly(k)} at k={k}, p-partition count gives {direct}"
            )
    return poly
