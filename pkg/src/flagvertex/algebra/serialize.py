"""Exact JSON encoding of monomials, polynomials, rational functions and series.

Schema::

    {"vars": [...], "side": "X"|"X!", "n": N,
     "terms": [{"exp": [[var, num, den], ...], "coeff": [num, den]}, ...]}

Rational functions carry ``"num"`` and ``"den"`` term lists instead of
``"terms"``; series add ``"truncation"`` and ``"coeffs": [{"zdeg": [...],
"value": <ratfunc>}]``.  All numerators and denominators are decimal strings.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import LaurentPoly, RatFunc
from .series import ZSeries
from .variables import Monomial, VariableSystem, dual_system, qnum, u_system, x_system


def _frac(x) -> list[str]:
    x = Fraction(x)
    return [str(x.numerator), str(x.denominator)]


def _unfrac(pair) -> Fraction:
    return Fraction(int(pair[0]), int(pair[1]))


def _terms(system, terms: dict) -> list:
    out = []
    for e, c in sorted(terms.items()):
        out.append({"exp": [[v, *_frac(x)] for v, x in zip(system.names, e) if x != 0],
                    "coeff": _frac(c)})
    return out


def _unterms(system, data: list) -> dict:
    out = {}
    for t in data:
        exps = [0] * len(system)
        for name, num, den in t["exp"]:
            if name not in system.index:
                raise ValueError(f"unknown variable {name!r}")
            exps[system.index[name]] = qnum(Fraction(int(num), int(den)))
        out[tuple(exps)] = out.get(tuple(exps), 0) + _unfrac(t["coeff"])
    return out


def _header(system: VariableSystem) -> dict:
    kind = "u" if system.names[0].startswith("u") else system.side
    return {"vars": list(system.names), "side": kind, "n": system.n}


def system_from_header(data: dict) -> VariableSystem:
    n = int(data["n"])
    side = data["side"]
    system = {"X": x_system, "X!": dual_system, "u": u_system}[side](n)
    if list(system.names) != list(data["vars"]):
        raise ValueError(f"variable list {data['vars']} does not match side {side} n={n}")
    return system


def to_json(obj) -> dict:
    if isinstance(obj, Monomial):
        return {**_header(obj.system), "terms": _terms(obj.system, {obj.exps: obj.coeff})}
    if isinstance(obj, LaurentPoly):
        return {**_header(obj.system), "terms": _terms(obj.system, obj.terms)}
    if isinstance(obj, RatFunc):
        return {**_header(obj.system), "num": _terms(obj.system, obj.num.terms),
                "den": _terms(obj.system, obj.den.terms)}
    if isinstance(obj, ZSeries):
        coeffs = [{"zdeg": list(e), "value": to_json(c)}
                  for e, c in sorted(obj.coeffs.items(), key=lambda t: (sum(t[0]), t[0]))]
        return {**_header(obj.system), "truncation": obj.truncation, "coeffs": coeffs}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def ratfunc_from_json(data: dict, system: VariableSystem | None = None) -> RatFunc:
    system = system or system_from_header(data)
    if "terms" in data:
        return RatFunc(LaurentPoly(system, _unterms(system, data["terms"])), normalize=False)
    num = LaurentPoly(system, _unterms(system, data["num"]))
    den = LaurentPoly(system, _unterms(system, data["den"]))
    return RatFunc(num, den, normalize=False)


def poly_from_json(data: dict) -> LaurentPoly:
    system = system_from_header(data)
    return LaurentPoly(system, _unterms(system, data["terms"]))


def monomial_from_json(data: dict) -> Monomial:
    p = poly_from_json(data)
    if len(p.terms) > 1:
        raise ValueError("more than one term in a monomial")
    if not p.terms:
        return Monomial(p.system, (0,) * len(p.system), Fraction(0))
    return p.as_monomial()


def zseries_from_json(data: dict) -> ZSeries:
    system = system_from_header(data)
    coeffs = {tuple(c["zdeg"]): ratfunc_from_json(c["value"], system) for c in data["coeffs"]}
    return ZSeries(system, int(data["truncation"]), coeffs)
