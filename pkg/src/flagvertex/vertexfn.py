"""Degree tableaux, the cone C, and vertex functions."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

from .algebra import (CharacterSum, FactorProduct, Monomial, RatFunc, X, ZSeries, phi_product, pochhammer_factors,
                      system_for)
from .flag import FixedPoint, attracting_split, u_ratio_to_a


@dataclass(frozen=True, order=True)
class DegreeTableau:
    """Rows i = 1..n-1; row i holds d_{i,1..i}."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        for i, r in enumerate(rows, start=1):
            if len(r) != i:
                raise ValueError(f"row {i} has length {len(r)}")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows) + 1

    @classmethod
    def zero(cls, n: int) -> DegreeTableau:
        return cls(tuple((0,) * i for i in range(1, n)))

    @classmethod
    def from_flat(cls, n: int, flat) -> DegreeTableau:
        flat = list(flat)
        rows, pos = [], 0
        for i in range(1, n):
            rows.append(tuple(flat[pos:pos + i]))
            pos += i
        if pos != len(flat):
            raise ValueError("wrong number of entries")
        return cls(tuple(rows))

    def flat(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def entry(self, i: int, j: int) -> int:
        """d_{i,j} with 1-based indices."""
        return self.rows[i - 1][j - 1]

    def total(self) -> int:
        return sum(self.flat())

    def zdeg(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    def nonnegative(self) -> bool:
        return all(x >= 0 for x in self.flat())

    def __repr__(self):
        return "|".join(",".join(map(str, r)) for r in self.rows)


def _row_matches(upper, lower) -> bool:
    """Kuhn's augmenting paths: every k gets a distinct j with upper[k] >= lower[j]."""
    match = [-1] * len(lower)

    def augment(k, seen):
        for j in range(len(lower)):
            if upper[k] >= lower[j] and not seen[j]:
                seen[j] = True
                if match[j] < 0 or augment(match[j], seen):
                    match[j] = k
                    return True
        return False

    return all(augment(k, [False] * len(lower)) for k in range(len(upper)))


def tableau_in_C(t: DegreeTableau) -> bool:
    if not t.nonnegative():
        return False
    return all(_row_matches(t.rows[i], t.rows[i + 1]) for i in range(len(t.rows) - 1))


def tableau_in_C_bruteforce(t: DegreeTableau) -> bool:
    """Oracle: try every injection of row i into row i+1."""
    if not t.nonnegative():
        return False
    for i in range(len(t.rows) - 1):
        upper, lower = t.rows[i], t.rows[i + 1]
        if not any(all(upper[k] >= lower[js[k]] for k in range(len(upper)))
                   for js in permutations(range(len(lower)), len(upper))):
            return False
    return True


def in_identity_chamber(t: DegreeTableau) -> bool:
    """d_{i,j} >= d_{i+1,j} for j <= i: the only tableaux with nonzero vertex terms."""
    return all(t.rows[i][j] >= t.rows[i + 1][j] for i in range(len(t.rows) - 1) for j in range(i + 1))


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _all_tableaux(n: int, D: int) -> tuple[DegreeTableau, ...]:
    size = n * (n - 1) // 2
    return tuple(DegreeTableau.from_flat(n, flat) for tot in range(D + 1) for flat in _compositions(tot, size))


@lru_cache(maxsize=64)
def enumerate_tableaux(n: int, D: int, identity_only: bool = False) -> tuple[DegreeTableau, ...]:
    """Elements of C with total degree <= D, lexicographic on the flattened tableau."""
    if D < 0:
        raise ValueError("max degree must be >= 0")
    if n < 1:
        raise ValueError("n must be >= 1")
    keep = in_identity_chamber if identity_only else tableau_in_C
    return tuple(sorted((t for t in _all_tableaux(n, D) if keep(t)), key=lambda t: t.flat()))


def _poch_ratio(out: FactorProduct, x: Monomial, hbar: Monomial, q: Monomial, d: int, sign: int):
    """Multiply ``out`` by ((hbar x)_d / (q x)_d)^sign."""
    if d == 0:
        return out
    num = pochhammer_factors(hbar * x, d)
    den = pochhammer_factors(q * x, d)
    return out * (num / den if sign > 0 else den / num)


def vertex_term_factors(I: FixedPoint, t: DegreeTableau, side: str = X) -> FactorProduct:
    """The summand of the vertex function at I for tableau t, read straight off the triple product."""
    n = I.n
    if t.n != n:
        raise ValueError("tableau and fixed point have different rank")
    S = system_for(n, side)
    hbar, q = S.var(S.hbar), S.var(S.q)
    p = I.perm
    d = t.entry
    out = FactorProduct(S)
    for i in range(1, n - 1):
        for j in range(1, i + 1):
            for k in range(1, i + 2):
                x = u_ratio_to_a(S, p[k - 1], p[j - 1])
                out = _poch_ratio(out, x, hbar, q, d(i, j) - d(i + 1, k), +1)
    for i in range(1, n):
        for j in range(1, i + 1):
            for k in range(1, i + 1):
                x = u_ratio_to_a(S, p[k - 1], p[j - 1])
                out = _poch_ratio(out, x, hbar, q, d(i, j) - d(i, k), -1)
    for i in range(1, n + 1):
        for j in range(1, n):
            x = u_ratio_to_a(S, i, p[j - 1])
            out = _poch_ratio(out, x, hbar, q, d(n - 1, j), +1)
    return out


def vertex_term(I: FixedPoint, t: DegreeTableau, side: str = X) -> RatFunc:
    return vertex_term_factors(I, t, side).to_ratfunc()


def vertex_series_terms(I: FixedPoint, D: int, side: str = X, tableaux=None) -> dict:
    """z-degree -> list of nonzero FactorProducts, one per contributing tableau."""
    if tableaux is None:
        tableaux = enumerate_tableaux(I.n, D)
    out: dict = {}
    for t in tableaux:
        f = vertex_term_factors(I, t, side)
        if f.is_zero():
            continue
        out.setdefault(t.zdeg(), []).append(f)
    return out


def _assemble(system, D: int, terms: dict) -> ZSeries:
    coeffs = {}
    for e, parts in terms.items():
        total = RatFunc.constant(system, 0)
        for f in parts:
            total = total + (f.to_ratfunc() if isinstance(f, FactorProduct) else f)
        coeffs[e] = total
    return ZSeries(system, D, coeffs)


def vertex_series(I: FixedPoint, D: int, side: str = X) -> ZSeries:
    if D < 0:
        raise ValueError("max degree must be >= 0")
    if I.n == 1:
        return ZSeries.one(system_for(1, side), D)
    return _assemble(system_for(I.n, side), D, vertex_series_terms(I, D, side))


def localization_term_factors(I: FixedPoint, t: DegreeTableau, side: str = X) -> FactorProduct:
    """Symmetrized localization contribution q^{deg/2} a-hat(T_red) of the fixed quasimap
    (I, t), assembled from the paired-term contributions of the polarization bundle."""
    from .quasimaps import FixedQuasimap, polarization_bundle

    S = system_for(I.n, side)
    hbar, q = S.var(S.hbar), S.var(S.q)
    twist = -(q ** Fraction(1, 2)) * hbar ** Fraction(-1, 2)
    out = FactorProduct(S)
    deg = 0
    for x, _, k, sign in polarization_bundle(FixedQuasimap(I, t), side).terms:
        deg += sign * k
        if k == 0:
            continue
        out = out * twist ** (sign * k)
        out = _poch_ratio(out, x, hbar, q, k, sign)
    return out * q ** Fraction(deg, 2)


def localization_series(I: FixedPoint, D: int, side: str = X) -> ZSeries:
    S = system_for(I.n, side)
    if I.n == 1:
        return ZSeries.one(S, D)
    terms: dict = {}
    for t in enumerate_tableaux(I.n, D, identity_only=True):
        terms.setdefault(t.zdeg(), []).append(localization_term_factors(I, t, side))
    return _assemble(S, D, terms)


class ShiftMismatch(ArithmeticError):
    pass


def monomial_quotient(x: RatFunc, y: RatFunc):
    """The monomial x/y if there is one, else None."""
    if x.is_zero() or y.is_zero():
        return None
    num, den = x.num * y.den, x.den * y.num
    kn, kd = num.leading_key(), den.leading_key()
    S = x.system
    m = Monomial(S, kn, num.terms[kn]) / Monomial(S, kd, den.terms[kd])
    return m if (den * m - num).is_zero() else None


def solve_kahler_shift(L: ZSeries, V: ZSeries) -> tuple[Monomial, ...]:
    """Monomials m_i with L(z) = V(m z): read off from degree one, then checked at every degree."""
    S = V.system
    nk = len(S.kahler)
    shifts = []
    for i in range(nk):
        e = tuple(1 if j == i else 0 for j in range(nk))
        ratio = monomial_quotient(L.coefficient(e), V.coefficient(e))
        if ratio is None:
            raise ShiftMismatch(f"degree-one ratio in z{i + 1} is not a monomial")
        shifts.append(ratio)
    D = min(L.truncation, V.truncation)
    for e in set(L.coeffs) | set(V.coeffs):
        if sum(e) > D:
            continue
        m = S.one()
        for mi, x in zip(shifts, e):
            m = m * mi ** x
        if not ((V.coefficient(e) * m - L.coefficient(e)).is_zero()):
            raise ShiftMismatch(f"shift {shifts} fails at z-degree {e}")
    return tuple(shifts)


def shift_exponents(m: Monomial) -> tuple[int, int]:
    """(a, b) with z# = h^{a/2} q^{b/2} z, where V(z) = L(z#) means m = 1/(h^{a/2} q^{b/2})."""
    S = m.system
    if m.coeff != 1 or any(x for name, x in zip(S.names, m.exps) if name not in (S.hbar, S.q)):
        raise ValueError(f"shift {m} is not of the form h^(a/2) q^(b/2)")
    a, b = -2 * m.degree(S.hbar), -2 * m.degree(S.q)
    return int(a), int(b)


def phi_prefactor(I: FixedPoint, side: str = X) -> FactorProduct:
    """Phi((q - hbar) N+_I) = prod_{w in N+} phi(q w)/phi(hbar w), with infinite tails."""
    nplus, _ = attracting_split(I, side)
    S = nplus.system
    if not len(nplus):
        return FactorProduct(S)
    V = nplus.scale(S.var(S.q)) - nplus.scale(S.var(S.hbar))
    return phi_product(V, 0, tail=True)


def s_bullet_hbar_nplus(I: FixedPoint, side: str = X) -> CharacterSum:
    nplus, _ = attracting_split(I, side)
    return nplus.scale(nplus.system.var(nplus.system.hbar))
