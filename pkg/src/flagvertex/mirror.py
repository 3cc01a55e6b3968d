"""The mirror identification of tori, slope predicates, and the index limit."""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations

from .algebra import (FactorProduct, Monomial, RatFunc, X, XDUAL, ZSeries, as_factor_product,
                      as_ratfunc, dual_system, q_limit, x_system)

_FRACTION = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_slope(text: str) -> tuple[Fraction, ...]:
    """Comma-separated exact fractions such as ``3/4,1/2``.  Decimals are refused."""
    parts = [p.strip() for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ValueError("empty slope")
    for p in parts:
        if not _FRACTION.match(p):
            raise ValueError(f"slope entry {p!r} is not an exact fraction (use e.g. 3/2, not 1.5)")
    return tuple(Fraction(p) for p in parts)


def as_slope(s, n: int | None = None) -> tuple[Fraction, ...]:
    if isinstance(s, str):
        s = parse_slope(s)
    elif isinstance(s, (int, Fraction)):
        s = (s,)
    if any(isinstance(x, float) for x in s):
        raise TypeError("slopes must be exact rationals, not floats")
    s = tuple(Fraction(x) for x in s)
    if n is not None and len(s) != n - 1:
        raise ValueError(f"slope {format_slope(s)} has {len(s)} entries, expected {n - 1}")
    return s


def format_slope(s) -> str:
    return ",".join(str(x) for x in s)


def is_wall(s) -> bool:
    """Some nonempty subset of the entries sums to an integer."""
    s = as_slope(s)
    for r in range(1, len(s) + 1):
        for sub in combinations(s, r):
            if sum(sub).denominator == 1:
                return True
    return False


def is_big_enough(s) -> bool:
    s = as_slope(s)
    if any(x <= 0 for x in s):
        return False
    for i in range(len(s)):
        for j in range(i, len(s)):
            if sum(s[i:j + 1]) <= j - i - 1:
                return False
    return True


def kappa_rules(n: int) -> dict:
    """X-variables in terms of X!-variables."""
    D = dual_system(n)
    h, q = D.var("h!"), D.var("q")
    rules = {"h": q / h, "q": q, "t": D.var("t")}
    for i in range(1, n):
        rules[f"z{i}"] = h * D.var(f"a{i}!")
        rules[f"a{i}"] = h / q * D.var(f"z{i}!")
    return rules


def kappa_inv_rules(n: int) -> dict:
    S = x_system(n)
    h, q = S.var("h"), S.var("q")
    rules = {"h!": q / h, "q": q, "t": S.var("t")}
    for i in range(1, n):
        rules[f"a{i}!"] = S.var(f"z{i}") * h / q
        rules[f"z{i}!"] = S.var(f"a{i}") * h
    return rules


def _apply(f, rules, target):
    if isinstance(f, ZSeries):
        return as_ratfunc(f.to_ratfunc().substitute(rules, target))
    if isinstance(f, (FactorProduct, Monomial)):
        from .algebra import substitute
        return substitute(f, rules, target)
    if isinstance(f, (int, Fraction)):
        return RatFunc.constant(target, f)
    return f.substitute(rules, target)


def kappa(f):
    """X -> X!.  A series is summed to a rational function first, since the
    Kahler variables become equivariant ones."""
    if f.system.side != X:
        raise ValueError("kappa expects an expression in the variables of X")
    n = f.system.n
    return _apply(f, kappa_rules(n), dual_system(n))


def kappa_inv(f):
    if f.system.side != XDUAL:
        raise ValueError("kappa_inv expects an expression in the variables of X!")
    n = f.system.n
    return _apply(f, kappa_inv_rules(n), x_system(n))


def _shifted_inverse_rules(n: int, s) -> dict:
    # kappa_inv followed by z_i -> z_i q^{s_i + 1}
    S = x_system(n)
    h, q = S.var("h"), S.var("q")
    rules = kappa_inv_rules(n)
    for i in range(1, n):
        rules[f"a{i}!"] = S.var(f"z{i}") * h * q ** s[i - 1]
    return rules


def index_limit_element(f, s):
    """Index limit of a single coefficient (FactorProduct, RatFunc, or Monomial) over X!."""
    n = f.system.n
    s = as_slope(s, n)
    if f.system.side != XDUAL:
        raise ValueError("index limit is taken over the variables of X!")
    S = x_system(n)
    rules = _shifted_inverse_rules(n, s)
    if isinstance(f, (FactorProduct, Monomial)):
        g = as_factor_product(f).substitute(rules, S)
    else:
        g = as_ratfunc(f).substitute(rules, S)
    return kappa(q_limit(g))


def index_limit(F, s):
    """Index limit of a z!-series.

    ``F`` is a ZSeries over X! or a dict mapping z!-degree vectors to a
    FactorProduct / RatFunc (or a list of them, summed after the limit).
    z!^d maps to (a h)^d under kappa_inv, which is free of q and z, so the
    limit acts on coefficients alone.
    """
    if isinstance(F, ZSeries):
        system, D = F.system, F.truncation
        items = F.coeffs.items()
    else:
        items = list(F.items())
        if not items:
            raise ValueError("empty term dictionary; pass a ZSeries for the zero series")
        first = items[0][1][0] if isinstance(items[0][1], list) else items[0][1]
        system = first.system
        D = max(sum(e) for e, _ in items)
    s = as_slope(s, system.n)
    out = {}
    for e, c in items:
        parts = c if isinstance(c, list) else [c]
        total = RatFunc.constant(system, 0)
        for part in parts:
            total = total + index_limit_element(part, s)
        out[tuple(e)] = total
    return ZSeries(system, D, out)


def index_limit_rm2_element(f, s):
    """h! = q/t, a!_i -> a!_i q^{s_i}, q -> 0, then t = q/h!."""
    system = f.system
    n = system.n
    s = as_slope(s, n)
    q, t = system.var("q"), system.var("t")
    rules = {"h!": q / t}
    for i in range(1, n):
        rules[f"a{i}!"] = system.var(f"a{i}!") * q ** s[i - 1]
    if isinstance(f, (FactorProduct, Monomial)):
        g = as_factor_product(f).substitute(rules, system)
    else:
        g = as_ratfunc(f).substitute(rules, system)
    lim = q_limit(g)
    if not (lim.num.free_of("q") and lim.den.free_of("q")):
        raise ArithmeticError("limit still depends on q")
    return lim.substitute({"t": q / system.var("h!")}, system)


def index_limit_rm2(F, s):
    if isinstance(F, ZSeries):
        system, D, items = F.system, F.truncation, F.coeffs.items()
    else:
        items = list(F.items())
        first = items[0][1][0] if isinstance(items[0][1], list) else items[0][1]
        system, D = first.system, max(sum(e) for e, _ in items)
    out = {}
    for e, c in items:
        parts = c if isinstance(c, list) else [c]
        total = RatFunc.constant(system, 0)
        for part in parts:
            total = total + index_limit_rm2_element(part, s)
        out[tuple(e)] = total
    return ZSeries(system, D, out)


def shifted_limit(f, s):
    """lim_{q -> 0} f(a, z q^{s+1}) for an X-side coefficient or series (no kappa)."""
    system = f.system
    n = system.n
    s = as_slope(s, n)
    rules = {f"z{i}": system.var(f"z{i}") * system.var("q") ** (s[i - 1] + 1) for i in range(1, n)}
    if isinstance(f, ZSeries):
        f = f.to_ratfunc()
    if isinstance(f, (FactorProduct, Monomial)):
        return q_limit(as_factor_product(f).substitute(rules, system))
    return q_limit(as_ratfunc(f).substitute(rules, system))


def is_constant_one(f) -> bool:
    f = as_ratfunc(f)
    return (f.num - f.den).is_zero()


__all__ = ["parse_slope", "as_slope", "format_slope", "is_wall", "is_big_enough", "kappa", "kappa_inv",
           "kappa_rules", "kappa_inv_rules", "index_limit", "index_limit_element", "index_limit_rm2",
           "index_limit_rm2_element", "shifted_limit", "is_constant_one"]
