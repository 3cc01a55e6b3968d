"""Exact arithmetic kernel."""
from .characters import (CharacterSum, TrivialWeightError, ext_power, ext_power_factors, phi_product,
                         roof, sym_power)
from .factors import (FactorProduct, NegativeExponentDivergence, as_factor_product, pochhammer,
                      pochhammer_cocycle_check, pochhammer_factors, q_limit, q_limit_ratfunc)
from .poly import LaurentPoly, RatFunc, as_ratfunc, ratfunc_eq
from .series import DenominatorVanishesAtZero, ZSeries, degree_vectors, series_expand
from .variables import (X, XDUAL, MixedSystemsError, Monomial, VariableSystem, dual_system, qnum,
                        system_for, u_system, x_system)


def substitute(f, rules: dict, target: VariableSystem | None = None):
    """Monomial substitution on any algebra value.

    On a ZSeries a Kahler variable may only be rescaled, z_i -> z_i * m_i with
    m_i free of Kahler variables; the rescaling is absorbed into coefficients.
    """
    if isinstance(f, ZSeries):
        from .factors import subst_monomial
        target = target or f.system
        if target.kahler != f.system.kahler:
            raise ValueError("series substitution must keep the Kahler variables")
        scales = []
        for z in f.system.kahler:
            if z not in rules:
                scales.append(target.one())
                continue
            m = rules[z] / target.var(z)
            if any(m.exps[p] for p in target.kahler_positions):
                raise ValueError(f"rule for {z} is not a rescaling")
            scales.append(m)
        inner = {k: v for k, v in rules.items() if k not in f.system.kahler}
        out = {}
        for e, c in f.coeffs.items():
            scale = target.one()
            for m, x in zip(scales, e):
                scale = scale * m ** x
            out[e] = c.substitute(inner, target) * scale
        return ZSeries(target, f.truncation, out)
    if isinstance(f, Monomial):
        from .factors import subst_monomial
        return subst_monomial(f, rules, target or f.system)
    return f.substitute(rules, target)


__all__ = [
    "CharacterSum", "DenominatorVanishesAtZero", "FactorProduct", "LaurentPoly", "MixedSystemsError",
    "Monomial", "NegativeExponentDivergence", "RatFunc", "TrivialWeightError", "VariableSystem", "X",
    "XDUAL", "ZSeries", "as_factor_product", "as_ratfunc", "degree_vectors", "dual_system", "ext_power",
    "ext_power_factors", "phi_product", "pochhammer", "pochhammer_cocycle_check", "pochhammer_factors",
    "q_limit", "q_limit_ratfunc", "qnum", "ratfunc_eq", "roof", "series_expand", "substitute",
    "sym_power", "system_for", "u_system", "x_system",
]
