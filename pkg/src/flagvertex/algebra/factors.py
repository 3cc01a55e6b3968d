"""Factored products of binomials (1 - m)^k, q-Pochhammer symbols, and the
structural q -> 0 limit."""
from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .poly import LaurentPoly, RatFunc
from .variables import Monomial, MixedSystemsError, VariableSystem, qnum


class NegativeExponentDivergence(ArithmeticError):
    """The q -> 0 limit does not exist: the leading q-power is negative."""


def subst_monomial(m: Monomial, rules: dict, target: VariableSystem) -> Monomial:
    out = target.one() * m.coeff
    for name, x in zip(m.system.names, m.exps):
        if x == 0:
            continue
        if name in rules:
            img = rules[name]
        elif name in target.index:
            img = target.var(name)
        else:
            raise ValueError(f"no image for variable {name}")
        out = out * img ** x
    return out


def _shift_q(m: Monomial, i) -> Monomial:
    exps = list(m.exps)
    pos = m.system.q_position
    exps[pos] = qnum(exps[pos] + i)
    return Monomial(m.system, tuple(exps), m.coeff)


class FactorProduct:
    """prefactor * prod (1 - m)^k * prod_{i >= start} (1 - m q^i)^k.

    The second product ("tails") is infinite and only meaningful as input to
    :func:`q_limit`.  Factors whose monomial is the constant 1 vanish; their
    net multiplicity is tracked in ``zeros``.
    """

    __slots__ = ("system", "prefactor", "factors", "tails", "zeros")

    def __init__(self, system: VariableSystem, prefactor: Monomial | None = None):
        self.system = system
        self.prefactor = prefactor if prefactor is not None else system.one()
        if self.prefactor.system != system:
            raise MixedSystemsError("prefactor from another variable system")
        self.factors: dict = {}
        self.tails: list = []
        self.zeros = 0

    def copy(self) -> FactorProduct:
        out = FactorProduct(self.system, self.prefactor)
        out.factors = dict(self.factors)
        out.tails = list(self.tails)
        out.zeros = self.zeros
        return out

    def add_factor(self, m: Monomial, k: int = 1) -> FactorProduct:
        """Multiply in place by (1 - m)^k."""
        if m.system != self.system:
            raise MixedSystemsError("factor from another variable system")
        if m.coeff == 0:
            raise ValueError("factor (1 - 0) is not allowed")
        if k == 0:
            return self
        if m.is_constant():
            if m.coeff == 1:
                self.zeros += k
            else:
                self.prefactor = self.prefactor * (1 - m.coeff) ** k
            return self
        key = (m.coeff, m.exps)
        total = self.factors.get(key, 0) + k
        if total:
            self.factors[key] = total
        else:
            self.factors.pop(key, None)
        return self

    def add_tail(self, m: Monomial, k: int, start: int) -> FactorProduct:
        if k:
            self.tails.append((m, k, start))
        return self

    def __mul__(self, other):
        if isinstance(other, (Monomial, int, Fraction)):
            out = self.copy()
            out.prefactor = out.prefactor * other
            return out
        if not isinstance(other, FactorProduct):
            return NotImplemented
        if other.system != self.system:
            raise MixedSystemsError("FactorProducts over different systems")
        out = self.copy()
        out.prefactor = out.prefactor * other.prefactor
        for (c, e), k in other.factors.items():
            out.add_factor(Monomial(self.system, e, c), k)
        out.tails.extend(other.tails)
        out.zeros += other.zeros
        return out

    __rmul__ = __mul__

    def inverse(self) -> FactorProduct:
        out = FactorProduct(self.system, self.prefactor.inverse())
        out.factors = {key: -k for key, k in self.factors.items()}
        out.tails = [(m, -k, s) for m, k, s in self.tails]
        out.zeros = -self.zeros
        return out

    def __truediv__(self, other):
        if isinstance(other, FactorProduct):
            return self * other.inverse()
        return self * (1 / other if isinstance(other, (int, Fraction)) else other.inverse())

    def items(self):
        for (c, e), k in self.factors.items():
            yield Monomial(self.system, e, c), k

    def is_zero(self) -> bool:
        return self.prefactor.coeff == 0 or self.zeros > 0

    def substitute(self, rules: dict, target: VariableSystem | None = None) -> FactorProduct:
        target = target or self.system
        out = FactorProduct(target, subst_monomial(self.prefactor, rules, target))
        out.zeros = self.zeros
        for m, k in self.items():
            out.add_factor(subst_monomial(m, rules, target), k)
        if self.tails:
            qname = self.system.q
            if qname in rules and rules[qname] != target.var(target.q):
                raise ValueError("cannot substitute q inside an infinite product")
        for m, k, s in self.tails:
            out.add_tail(subst_monomial(m, rules, target), k, s)
        return out

    def to_ratfunc(self) -> RatFunc:
        if self.tails:
            raise ValueError("infinite product has no rational expansion")
        system = self.system
        if self.is_zero():
            return RatFunc.constant(system, 0)
        if self.zeros < 0:
            raise ZeroDivisionError("product has a vanishing factor in the denominator")
        num = self.prefactor.to_poly()
        den = LaurentPoly.constant(system, 1)
        one = LaurentPoly.constant(system, 1)
        for m, k in sorted(self.items(), key=lambda t: (t[0].exps, t[0].coeff)):
            b = one - m.to_poly()
            if k > 0:
                num = num * b ** k
            else:
                den = den * b ** (-k)
        return RatFunc(num, den)

    def __repr__(self):
        parts = [repr(self.prefactor)]
        for m, k in self.items():
            parts.append(f"(1 - {m})" + (f"^{k}" if k != 1 else ""))
        for m, k, s in self.tails:
            parts.append(f"prod_{{i>={s}}}(1 - {m}*q^i)^{k}")
        if self.zeros:
            parts.append(f"0^{self.zeros}")
        return " * ".join(parts)


def as_factor_product(x, system: VariableSystem | None = None) -> FactorProduct:
    if isinstance(x, FactorProduct):
        return x
    if isinstance(x, Monomial):
        return FactorProduct(x.system, x)
    if isinstance(x, (int, Fraction)) and system is not None:
        return FactorProduct(system, system.one() * x)
    raise TypeError(f"cannot view {type(x).__name__} as a FactorProduct")


def _check_no_kahler(x: Monomial):
    for pos in x.system.kahler_positions:
        if x.exps[pos] != 0:
            raise ValueError(f"Pochhammer argument {x} involves a Kahler variable")


def pochhammer_factors(x: Monomial, d: int) -> FactorProduct:
    """(x)_d = phi(x) / phi(x q^d) as a finite factored product."""
    _check_no_kahler(x)
    out = FactorProduct(x.system)
    if d >= 0:
        for k in range(d):
            out.add_factor(_shift_q(x, k), 1)
    else:
        for k in range(1, -d + 1):
            out.add_factor(_shift_q(x, -k), -1)
    return out


def pochhammer(x: Monomial, d: int) -> RatFunc:
    return pochhammer_factors(x, d).to_ratfunc()


def pochhammer_cocycle_check(x: Monomial, d: int, e: int) -> bool:
    lhs = pochhammer(x, d + e)
    rhs = pochhammer(x, d) * pochhammer(_shift_q(x, d), e)
    return lhs == rhs


def _limit_factor(m: Monomial, k: int, kept: FactorProduct, qpos: int):
    alpha = m.exps[qpos]
    if alpha > 0:
        return
    if alpha == 0:
        kept.add_factor(m, k)
        return
    # (1 - M)^k = (-M)^k (1 - 1/M)^k and the last factor tends to 1
    kept.prefactor = kept.prefactor * (-m) ** k


def q_limit(f) -> RatFunc:
    """lim_{q -> 0} of a FactorProduct (structurally) or RatFunc (leading order).

    Factors with positive q-order tend to 1, factors of q-order zero survive,
    and factors of negative q-order are rewritten as (-M)^k (1 - 1/M)^k so that
    their leading part joins the prefactor.  The prefactor's q-power then
    decides: positive gives 0, zero survives, negative diverges.
    """
    if isinstance(f, RatFunc):
        return q_limit_ratfunc(f)
    if not isinstance(f, FactorProduct):
        f = as_factor_product(f)
    system = f.system
    if f.is_zero():
        return RatFunc.constant(system, 0)
    if f.zeros < 0:
        raise ZeroDivisionError("product has a vanishing factor in the denominator")
    qpos = system.q_position
    kept = FactorProduct(system, f.prefactor)
    for m, k in f.items():
        _limit_factor(m, k, kept, qpos)
    for m, k, start in f.tails:
        alpha = m.exps[qpos]
        i = start
        # factors with alpha + i > 0 all tend to 1
        while alpha + i <= 0:
            _limit_factor(_shift_q(m, i), k, kept, qpos)
            i += 1
    if kept.is_zero():
        return RatFunc.constant(system, 0)
    beta = kept.prefactor.exps[qpos]
    if beta > 0:
        return RatFunc.constant(system, 0)
    if beta < 0:
        raise NegativeExponentDivergence(f"leading q-power {beta} < 0 in {f}")
    return kept.to_ratfunc()


def q_limit_ratfunc(f: RatFunc) -> RatFunc:
    """lim_{q -> 0} by comparing the lowest q-orders of numerator and denominator."""
    system = f.system
    if f.is_zero():
        return f
    qpos = system.q_position
    num = f.num.split_by((qpos,))
    den = f.den.split_by((qpos,))
    bn = min(num)
    bd = min(den)
    if bn > bd:
        return RatFunc.constant(system, 0)
    if bn < bd:
        raise NegativeExponentDivergence(f"leading q-power {bn[0] - bd[0]} < 0")
    return RatFunc(num[bn], den[bd])
