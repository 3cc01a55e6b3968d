"""Torus-fixed-point combinatorics of the cotangent bundle of the full flag variety."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .algebra import CharacterSum, Monomial, VariableSystem, system_for, u_system, X

MAX_RANK = 8


@dataclass(frozen=True, order=True)
class FixedPoint:
    """A fixed point, labelled by a permutation in one-line notation (1-based)."""

    perm: tuple[int, ...]

    def __post_init__(self):
        perm = tuple(int(i) for i in self.perm)
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
        object.__setattr__(self, "perm", perm)

    @property
    def n(self) -> int:
        return len(self.perm)

    def inverse(self) -> FixedPoint:
        inv = [0] * self.n
        for pos, val in enumerate(self.perm, start=1):
            inv[val - 1] = pos
        return FixedPoint(tuple(inv))

    def ordered_indices(self) -> list[tuple[int, ...]]:
        """Row k (k = 1..n-1) is the sorted set {I_1, ..., I_k}."""
        return [tuple(sorted(self.perm[:k])) for k in range(1, self.n)]

    def to_list(self) -> list[int]:
        return list(self.perm)

    @classmethod
    def parse(cls, text: str) -> FixedPoint:
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    def __repr__(self):
        return "(" + ",".join(map(str, self.perm)) + ")"


def precedes(I: FixedPoint, J: FixedPoint) -> bool:
    """I < J iff every ordered index of I is strictly below the matching one of J."""
    if I.n != J.n:
        raise ValueError("fixed points of different rank")
    return all(i < j
               for ri, rj in zip(I.ordered_indices(), J.ordered_indices())
               for i, j in zip(ri, rj))


def _potential(I: FixedPoint) -> int:
    # sum of all ordered indices; strictly increasing along the partial order
    n = I.n
    return sum(v * (n - pos) for pos, v in enumerate(I.perm, start=1))


@lru_cache(maxsize=None)
def total_order(n: int) -> tuple[FixedPoint, ...]:
    """Linear extension of ``precedes``: sort by the sum of ordered indices, ties
    broken lexicographically on one-line notation.  The identity comes first;
    restriction matrices indexed this way are upper triangular."""
    if not 1 <= n <= MAX_RANK:
        raise ValueError(f"rank n={n} outside supported range 1..{MAX_RANK}")
    points = [FixedPoint(p) for p in permutations(range(1, n + 1))]
    return tuple(sorted(points, key=lambda I: (_potential(I), I.perm)))


def enumerate_fixed_points(n: int) -> list[FixedPoint]:
    return list(total_order(n))


def u_ratio_to_a(system: VariableSystem, num: int, den: int, hbar_power=0) -> Monomial:
    """The character u_num / u_den * hbar^hbar_power in a-coordinates, a_i = u_i/u_{i+1}."""
    exps = [0] * len(system)
    lo, hi, sign = (num, den, 1) if num < den else (den, num, -1)
    for k in range(lo, hi):
        exps[system.index[system.equivariant[k - 1]]] = sign
    if hbar_power:
        exps[system.index[system.hbar]] = hbar_power
    return Monomial(system, tuple(exps))


def u_character_to_a(system: VariableSystem, u_exps) -> Monomial:
    """Convert a u-monomial of total degree zero to a-coordinates."""
    if sum(u_exps) != 0:
        raise ValueError(f"u-monomial {u_exps} has nonzero total degree")
    exps = [0] * len(system)
    acc = 0
    for k, e in enumerate(u_exps[:-1]):
        acc += e
        exps[system.index[system.equivariant[k]]] = acc
    return Monomial(system, tuple(exps))


def _system(I: FixedPoint, side: str) -> VariableSystem:
    return system_for(I.n, side)


def polarization_character(I: FixedPoint, side: str = X) -> CharacterSum:
    """sum_{j<k} u_{I_k}/u_{I_j}."""
    system = _system(I, side)
    p = I.perm
    return CharacterSum(system, Counter(u_ratio_to_a(system, p[k], p[j]).exps
                                        for j in range(I.n) for k in range(j + 1, I.n)))


def tangent_character(I: FixedPoint, side: str = X) -> CharacterSum:
    half = polarization_character(I, side)
    system = half.system
    return half + half.dual().scale(system.var(system.hbar, -1))


def chamber_pairing(w: Monomial) -> int:
    """Pairing with the cocharacter u -> (u^-1, ..., u^-n); each a_i pairs to 1."""
    return sum(w.degree(a) for a in w.system.equivariant)


def attracting_split(I: FixedPoint, side: str = X) -> tuple[CharacterSum, CharacterSum]:
    """(N+, N-): tangent weights with positive / negative chamber pairing."""
    T = tangent_character(I, side)
    plus, minus = Counter(), Counter()
    for w, m in T:
        pairing = chamber_pairing(w)
        if pairing == 0:
            raise ValueError(f"weight {w} lies on a chamber wall")
        (plus if pairing > 0 else minus)[w.exps] += m
    return CharacterSum(T.system, plus), CharacterSum(T.system, minus)


def det_sqrt(V: CharacterSum) -> Monomial:
    return V.det_sqrt()


def line_bundle_restriction(i: int, I: FixedPoint) -> Monomial:
    """Character of det V_i at I: prod_{j <= i} u_{I_j}."""
    if not 1 <= i <= I.n - 1:
        raise ValueError(f"line bundle index {i} outside 1..{I.n - 1}")
    system = u_system(I.n)
    out = system.one()
    for j in range(i):
        out = out * system.var(f"u{I.perm[j]}")
    return out
