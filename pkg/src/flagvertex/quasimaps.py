"""Torus-fixed quasimaps and the polarization of their virtual tangent spaces."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .algebra import CharacterSum, Monomial, XDUAL, system_for
from .flag import FixedPoint, u_ratio_to_a
from .vertexfn import DegreeTableau, enumerate_tableaux, in_identity_chamber, tableau_in_C


@dataclass(frozen=True)
class FixedQuasimap:
    """Fixed quasimap with value ``base`` at infinity.  ``degrees`` stores the
    nonnegative numbers -deg of the line-bundle summands."""

    base: FixedPoint
    degrees: DegreeTableau

    def __post_init__(self):
        if self.degrees.n != self.base.n:
            raise ValueError("tableau and fixed point have different rank")
        if not tableau_in_C(self.degrees):
            raise ValueError(f"tableau {self.degrees} is not in the cone C")


class BundleTerm(NamedTuple):
    weight: Monomial
    qshift: int
    degree: int
    sign: int


@dataclass
class LineBundleSum:
    """Signed sum of twisted line bundles weight * q^qshift * O(degree) on P^1."""

    terms: list

    def rank(self) -> int:
        return sum(t.sign for t in self.terms)

    def degree(self) -> int:
        return sum(t.sign * t.degree for t in self.terms)


def polarization_bundle(f: FixedQuasimap, side: str = XDUAL) -> LineBundleSum:
    """Hom(V_i, V_{i+1}) minus End(V_i), with V_n the trivial framing bundle."""
    I, t = f.base, f.degrees
    n = I.n
    S = system_for(n, side)
    p = I.perm

    def deg(i, j):
        return t.entry(i, j) if i < n else 0

    terms = []
    for i in range(1, n):
        for j in range(1, i + 1):
            for k in range(1, i + 2):
                # for i = n-1 this runs over the framing weights u_1..u_n
                d = deg(i, j) - deg(i + 1, k)
                terms.append(BundleTerm(u_ratio_to_a(S, p[k - 1], p[j - 1]), d, d, +1))
    for i in range(1, n):
        for j in range(1, i + 1):
            for k in range(1, i + 1):
                d = deg(i, j) - deg(i, k)
                terms.append(BundleTerm(u_ratio_to_a(S, p[k - 1], p[j - 1]), d, d, -1))
    return LineBundleSum(terms)


def _chi_exponents(k: int):
    """(sign, q-exponents) of the polarization part of H*(x q^k O(k)) - x."""
    if k > 0:
        return 1, range(1, k + 1)
    if k < 0:
        return -1, range(k + 1, 1)
    return 0, ()


def reduced_polarization(f: FixedQuasimap, side: str = XDUAL) -> CharacterSum:
    S = system_for(f.base.n, side)
    q = S.var(S.q)
    out = Counter()
    for term in polarization_bundle(f, side).terms:
        sgn, exps = _chi_exponents(term.degree)
        for e in exps:
            out[(term.weight * q ** e).exps] += term.sign * sgn
    return CharacterSum(S, out)


def fixed_quasimaps(base: FixedPoint, D: int) -> list[FixedQuasimap]:
    """Fixed quasimaps of total degree <= D.  Only tableaux dominating row by row
    in the order of the base point occur; elsewhere the vertex terms vanish."""
    return [FixedQuasimap(base, t) for t in enumerate_tableaux(base.n, D, identity_only=True)]


__all__ = ["FixedQuasimap", "BundleTerm", "LineBundleSum", "polarization_bundle", "reduced_polarization",
           "fixed_quasimaps", "in_identity_chamber"]
