"""Sparse Laurent polynomials and rational functions over exact rationals."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .variables import Monomial, MixedSystemsError, VariableSystem, format_term, qnum

_Number = (int, Fraction)


def _add_exps(e1, e2):
    return tuple(qnum(x + y) for x, y in zip(e1, e2))


class LaurentPoly:
    """Finite sum of monomials; ``terms`` maps exponent tuples to nonzero Fractions."""

    __slots__ = ("system", "terms")

    def __init__(self, system: VariableSystem, terms: dict | None = None):
        self.system = system
        self.terms = {e: c for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, system, c=1) -> LaurentPoly:
        c = Fraction(c)
        return cls(system, {(0,) * len(system): c} if c else {})

    @classmethod
    def var(cls, system, name, power=1) -> LaurentPoly:
        return system.var(name, power).to_poly()

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if other.system != self.system:
                raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")
            return other
        if isinstance(other, Monomial):
            if other.system != self.system:
                raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")
            return other.to_poly()
        if isinstance(other, _Number):
            return LaurentPoly.constant(self.system, other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(self.system, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.system, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return NotImplemented
        if isinstance(other, _Number):
            return LaurentPoly(self.system, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        if len(other.terms) == 1:
            (e2, c2), = other.terms.items()
            return LaurentPoly(self.system, {_add_exps(e, e2): c * c2 for e, c in self.terms.items()})
        out = defaultdict(Fraction)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[_add_exps(e1, e2)] += c1 * c2
        return LaurentPoly(self.system, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _Number):
            return self * (1 / Fraction(other))
        if isinstance(other, RatFunc):
            return RatFunc(self) / other
        return RatFunc(self, self._coerce(other))

    def __rtruediv__(self, other):
        return RatFunc(self._coerce(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("LaurentPoly powers must be integers")
        if k < 0:
            return RatFunc(LaurentPoly.constant(self.system), self) ** (-k)
        result = LaurentPoly.constant(self.system, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return other == self
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def as_monomial(self) -> Monomial:
        if len(self.terms) != 1:
            raise ValueError(f"{self} is not a monomial")
        (e, c), = self.terms.items()
        return Monomial(self.system, e, c)

    def monomials(self):
        return [Monomial(self.system, e, c) for e, c in self.terms.items()]

    def min_exponents(self) -> tuple:
        return tuple(min(col) for col in zip(*self.terms)) if self.terms else (0,) * len(self.system)

    def shift(self, exps) -> LaurentPoly:
        return LaurentPoly(self.system, {_add_exps(e, exps): c for e, c in self.terms.items()})

    def split_by(self, positions) -> dict:
        """Group terms by their exponents at ``positions``; returns key -> LaurentPoly
        with those exponents zeroed out."""
        groups = defaultdict(dict)
        for e, c in self.terms.items():
            key = tuple(e[p] for p in positions)
            rest = list(e)
            for p in positions:
                rest[p] = 0
            groups[key][tuple(rest)] = c
        return {k: LaurentPoly(self.system, v) for k, v in groups.items()}

    def free_of(self, name: str) -> bool:
        pos = self.system.index[name]
        return all(e[pos] == 0 for e in self.terms)

    def substitute(self, rules: dict, target: VariableSystem | None = None) -> LaurentPoly:
        """Monomial substitution. ``rules`` maps names to Monomials over ``target``;
        unlisted variables map to the variable of the same name in ``target``."""
        target = target or self.system
        images = []
        for name in self.system.names:
            if name in rules:
                img = rules[name]
                if not isinstance(img, Monomial):
                    img = LaurentPoly.constant(target, img).as_monomial() if isinstance(img, _Number) else img
                if img.system != target:
                    raise MixedSystemsError(f"rule for {name} lives in {img.system.side}")
                if img.coeff == 0:
                    raise ZeroDivisionError(f"variable {name} substituted by zero")
                images.append(img)
            elif name in target.index:
                images.append(target.var(name))
            else:
                images.append(None)
        out = defaultdict(Fraction)
        cache = {}
        for e, c in self.terms.items():
            m = target.one()
            for pos, x in enumerate(e):
                if x == 0:
                    continue
                if images[pos] is None:
                    raise ValueError(f"no image for variable {self.system.names[pos]}")
                key = (pos, x)
                if key not in cache:
                    cache[key] = images[pos] ** x
                m = m * cache[key]
            out[m.exps] += c * m.coeff
        return LaurentPoly(target, out)

    def specialize(self, values: dict) -> LaurentPoly:
        rules = {k: Monomial(self.system, (0,) * len(self.system), Fraction(v)) for k, v in values.items()}
        return self.substitute(rules)

    def leading_key(self):
        return min(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [format_term(self.system.names, e, c) for e, c in sorted(self.terms.items(), key=lambda t: t[0])]
        return " + ".join(parts).replace("+ -", "- ")


class RatFunc:
    """Quotient of two LaurentPolys.

    Normalization only strips the common monomial content and scales the
    denominator's lexicographically least term to coefficient 1; equality is
    decided by cross-multiplication, never by comparing representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, normalize=True):
        if not isinstance(num, LaurentPoly):
            if isinstance(den, LaurentPoly):
                num = den._coerce(num)
            elif isinstance(num, Monomial):
                num = num.to_poly()
            else:
                raise TypeError("RatFunc needs a LaurentPoly numerator or denominator")
        if not isinstance(den, LaurentPoly):
            den = num._coerce(den)
        if num.system != den.system:
            raise MixedSystemsError(f"{num.system.side} vs {den.system.side}")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.num = num
        self.den = den
        if normalize:
            self._normalize()

    def _normalize(self):
        num, den = self.num, self.den
        system = num.system
        if num.is_zero():
            self.den = LaurentPoly.constant(system, 1)
            return
        if den.is_monomial():
            (e, c), = den.terms.items()
            self.num = LaurentPoly(system, {_add_exps(k, tuple(-x for x in e)): v / c for k, v in num.terms.items()})
            self.den = LaurentPoly.constant(system, 1)
            return
        shift = tuple(-x for x in den.min_exponents())
        lead = den.terms[den.leading_key()]
        den = LaurentPoly(system, {_add_exps(e, shift): c / lead for e, c in den.terms.items()})
        num = LaurentPoly(system, {_add_exps(e, shift): c / lead for e, c in num.terms.items()})
        if num.terms == den.terms:
            num = den = LaurentPoly.constant(system, 1)
        self.num, self.den = num, den

    @property
    def system(self) -> VariableSystem:
        return self.num.system

    @classmethod
    def constant(cls, system, c=1) -> RatFunc:
        return cls(LaurentPoly.constant(system, c))

    def _coerce(self, other) -> RatFunc:
        if isinstance(other, RatFunc):
            if other.system != self.system:
                raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")
            return other
        return RatFunc(self.num._coerce(other))

    def __add__(self, other):
        other = self._coerce(other)
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalize=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.den == other.num:
            return RatFunc(self.num, other.den)
        if self.num == other.den:
            return RatFunc(other.num, self.den)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("RatFunc powers must be integers")
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return ratfunc_eq(self, other)

    __hash__ = None

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_monomial()

    def as_monomial(self) -> Monomial:
        if not (self.num.is_monomial() and self.den.is_monomial()):
            raise ValueError(f"{self} is not a monomial")
        return self.num.as_monomial() / self.den.as_monomial()

    def substitute(self, rules: dict, target: VariableSystem | None = None) -> RatFunc:
        den = self.den.substitute(rules, target)
        if den.is_zero():
            raise ZeroDivisionError("substitution annihilates the denominator")
        return RatFunc(self.num.substitute(rules, target), den)

    def specialize(self, values: dict) -> RatFunc:
        den = self.den.specialize(values)
        if den.is_zero():
            raise ZeroDivisionError("specialization annihilates the denominator")
        return RatFunc(self.num.specialize(values), den)

    def free_of(self, name: str) -> bool:
        # sufficient condition; representation may hide a cancelling dependence
        return self.num.free_of(name) and self.den.free_of(name)

    def __repr__(self):
        if self.den == 1:
            return repr(self.num)
        return f"({self.num})/({self.den})"


def ratfunc_eq(x: RatFunc, y: RatFunc) -> bool:
    """Exact equality by cross-multiplication."""
    if x.system != y.system:
        raise MixedSystemsError(f"{x.system.side} vs {y.system.side}")
    return (x.num * y.den - y.num * x.den).is_zero()


def as_ratfunc(x, system: VariableSystem | None = None) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, LaurentPoly):
        return RatFunc(x)
    if isinstance(x, Monomial):
        return RatFunc(x.to_poly())
    if isinstance(x, _Number) and system is not None:
        return RatFunc.constant(system, x)
    if hasattr(x, "to_ratfunc"):
        return x.to_ratfunc()
    raise TypeError(f"cannot convert {type(x).__name__} to RatFunc")
