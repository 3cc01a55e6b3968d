"""Truncated power series in the Kahler variables with rational-function coefficients."""
from __future__ import annotations

from itertools import product

from .poly import LaurentPoly, RatFunc, as_ratfunc, ratfunc_eq
from .variables import MixedSystemsError, VariableSystem


class DenominatorVanishesAtZero(ZeroDivisionError):
    pass


def degree_vectors(nvars: int, D: int):
    """All nonnegative integer vectors of length ``nvars`` with sum <= D, by total degree."""
    out = [v for v in product(range(D + 1), repeat=nvars) if sum(v) <= D]
    out.sort(key=lambda v: (sum(v), v))
    return out


class ZSeries:
    """sum_e coeffs[e] * z^e truncated at total degree ``truncation``."""

    __slots__ = ("system", "truncation", "coeffs")

    def __init__(self, system: VariableSystem, truncation: int, coeffs: dict | None = None):
        if truncation < 0:
            raise ValueError("truncation must be >= 0")
        self.system = system
        self.truncation = truncation
        nk = len(system.kahler)
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            e = tuple(e)
            if len(e) != nk or any(x < 0 for x in e):
                raise ValueError(f"bad z-degree {e}")
            if sum(e) > truncation:
                continue
            c = as_ratfunc(c, system)
            if c.system != system:
                raise MixedSystemsError("coefficient from another system")
            if not c.is_zero():
                self.coeffs[e] = c

    @classmethod
    def one(cls, system, D) -> ZSeries:
        return cls(system, D, {(0,) * len(system.kahler): 1})

    def coefficient(self, e) -> RatFunc:
        return self.coeffs.get(tuple(e), RatFunc.constant(self.system, 0))

    def _check(self, other):
        if other.system != self.system:
            raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")

    def __add__(self, other: ZSeries) -> ZSeries:
        self._check(other)
        D = min(self.truncation, other.truncation)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return ZSeries(self.system, D, out)

    def __neg__(self):
        return ZSeries(self.system, self.truncation, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, ZSeries):
            c = as_ratfunc(other, self.system)
            return ZSeries(self.system, self.truncation, {e: v * c for e, v in self.coeffs.items()})
        self._check(other)
        D = min(self.truncation, other.truncation)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                if sum(e) <= D:
                    out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return ZSeries(self.system, D, out)

    __rmul__ = __mul__

    def truncate(self, D: int) -> ZSeries:
        return ZSeries(self.system, min(D, self.truncation), self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.first_mismatch(other) is None and self.truncation == other.truncation

    __hash__ = None

    def first_mismatch(self, other: ZSeries):
        """First z-degree (in degree order) where coefficients differ, else None.
        Compares up to the smaller truncation."""
        self._check(other)
        D = min(self.truncation, other.truncation)
        for e in degree_vectors(len(self.system.kahler), D):
            if not ratfunc_eq(self.coefficient(e), other.coefficient(e)):
                return e
        return None

    def map(self, fn) -> ZSeries:
        return ZSeries(self.system, self.truncation, {e: fn(c) for e, c in self.coeffs.items()})

    def to_ratfunc(self) -> RatFunc:
        """The truncated sum as a single rational function."""
        total = RatFunc.constant(self.system, 0)
        kpos = self.system.kahler_positions
        for e, c in self.coeffs.items():
            zexps = [0] * len(self.system)
            for p, x in zip(kpos, e):
                zexps[p] = x
            total = total + c * LaurentPoly(self.system, {tuple(zexps): 1})
        return total

    def __repr__(self):
        terms = []
        for e in sorted(self.coeffs, key=lambda v: (sum(v), v)):
            z = "*".join(f"{n}^{x}" if x > 1 else n for n, x in zip(self.system.kahler, e) if x)
            terms.append(f"[{self.coeffs[e]}]" + (f"*{z}" if z else ""))
        return (" + ".join(terms) or "0") + f" + O(z^{self.truncation + 1})"


def series_expand(f, D: int) -> ZSeries:
    """z-adic expansion of ``f`` around z = 0, truncated at total degree D.

    With den = sum_e D_e z^e and D_0 != 0, the coefficients c_e satisfy
    c_e D_0 = N_e - sum_{e' != 0} D_{e'} c_{e-e'}.  We track g_e = c_e D_0^{|e|+1},
    which stays polynomial.
    """
    f = as_ratfunc(f)
    system = f.system
    kpos = system.kahler_positions
    num = f.num.split_by(kpos)
    den = f.den.split_by(kpos)
    for part, label in ((num, "numerator"), (den, "denominator")):
        for e in part:
            if any(x < 0 or x != int(x) for x in e):
                raise ValueError(f"{label} has z-exponent {e}; not a power series")
    zero = (0,) * len(kpos)
    d0 = den.get(zero)
    if d0 is None or d0.is_zero():
        raise DenominatorVanishesAtZero(f"denominator of {f} vanishes at z = 0")
    den_rest = {e: p for e, p in den.items() if e != zero}
    empty = LaurentPoly(system)
    g = {}
    d0_pow = [LaurentPoly.constant(system, 1)]
    for _ in range(D + 1):
        d0_pow.append(d0_pow[-1] * d0)
    out = {}
    for e in degree_vectors(len(kpos), D):
        ne = sum(e)
        acc = num.get(e, empty) * d0_pow[ne]
        for e1, p in den_rest.items():
            rest = tuple(x - y for x, y in zip(e, e1))
            if any(x < 0 for x in rest) or rest not in g:
                continue
            acc = acc - p * g[rest] * d0_pow[sum(e1) - 1]
        g[e] = acc
        if not acc.is_zero():
            out[e] = RatFunc(acc, d0_pow[ne + 1])
    return ZSeries(system, D, out)
