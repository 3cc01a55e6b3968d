"""s-index, index vertices, and the rank-two closed forms."""
from __future__ import annotations

from fractions import Fraction
from math import floor

from .algebra import X, XDUAL, RatFunc, ZSeries, dual_system, x_system
from .flag import FixedPoint
from .mirror import as_slope, index_limit, index_limit_element, kappa, shifted_limit
from .quasimaps import FixedQuasimap, fixed_quasimaps, reduced_polarization
from .vertexfn import enumerate_tableaux, vertex_series_terms


class ZeroExponent(ArithmeticError):
    """A monomial of the polarization has q-exponent exactly 0 at this slope."""


class InsufficientTruncation(ValueError):
    pass


def s_index(f: FixedQuasimap, s) -> int:
    """Signed count of polarization monomials whose q-exponent is negative after a! = q^s."""
    S = dual_system(f.base.n)
    s = as_slope(s, f.base.n)
    qpos = S.q_position
    apos = [S.index[a] for a in S.equivariant]
    count = 0
    for w, m in reduced_polarization(f, XDUAL):
        if w.degree(S.hbar):
            raise ValueError(f"unexpected hbar in polarization weight {w}")
        e = w.exps[qpos] + sum(s_i * w.exps[p] for s_i, p in zip(s, apos))
        if e == 0:
            raise ZeroExponent(f"weight {w} has q-exponent 0 at s = {s} (tableau {f.degrees})")
        if e < 0:
            count += m
    return count


def _hq(S, k: int):
    return (S.var("h!") / S.var("q")) ** k


def index_vertex_enum(Ibang: FixedPoint, s, D: int) -> ZSeries:
    """Sum over fixed quasimaps of z!^deg (h!/q)^{s-index}."""
    S = dual_system(Ibang.n)
    s = as_slope(s, Ibang.n)
    coeffs: dict = {}
    for f in fixed_quasimaps(Ibang, D):
        e = f.degrees.zdeg()
        term = RatFunc(_hq(S, s_index(f, s)).to_poly())
        coeffs[e] = coeffs[e] + term if e in coeffs else term
    return ZSeries(S, D, coeffs)


def index_vertex_limit(Ibang: FixedPoint, s, D: int) -> ZSeries:
    """Index limit of the vertex function of X! at Ibang, taken term by term."""
    S = dual_system(Ibang.n)
    if Ibang.n == 1:
        return ZSeries.one(S, D)
    terms = vertex_series_terms(Ibang, D, XDUAL, enumerate_tableaux(Ibang.n, D))
    out = index_limit(terms, s)
    return ZSeries(S, D, out.coeffs)


def closed_form_n2(p: int | FixedPoint, s) -> RatFunc:
    """Closed index vertex of T*P^1 at p_1 (p = 1) or p_2 (p = 2)."""
    if isinstance(p, FixedPoint):
        if p.n != 2:
            raise ValueError("closed form exists for n = 2 only")
        p = 1 if p.perm == (1, 2) else 2
    (s,) = as_slope(s, 2)
    if s.denominator == 1:
        raise ValueError(f"integer slope {s} lies on a branch boundary")
    S = dual_system(2)
    one = RatFunc.constant(S, 1)
    z, hq = S.var("z1!"), S.var("h!") / S.var("q")
    geometric = one / (one - z.to_poly())
    if p == 1:
        if s < 1:
            return geometric
        m = floor(s)
    elif p == 2:
        if s > -1:
            return geometric
        m = floor(abs(s))
    else:
        raise ValueError("p must be 1 or 2")
    x = (z * hq).to_poly()
    head = (one - x ** (m + 1)) / (one - x)
    return head + RatFunc((hq ** m * z ** (m + 1)).to_poly()) * geometric


def recurrence_check(F: ZSeries, variable: int, order: int, numeric_spec: dict, start: int | None = None) -> bool:
    """Does the coefficient sequence along z_variable (other z set to 0, the rest
    specialized to exact rationals) satisfy a linear recurrence of the given order?

    Checks consistency of c_k = sum_{j=1}^{order} r_j c_{k-j} for k = start..N.
    """
    import sympy

    nk = len(F.system.kahler)
    if not 0 <= variable < nk:
        raise ValueError(f"variable index {variable} out of range")
    N = F.truncation
    if N + 1 < 2 * order + 2:
        raise InsufficientTruncation(f"need at least {2 * order + 2} coefficients, have {N + 1}")
    seq = []
    for k in range(N + 1):
        e = tuple(k if j == variable else 0 for j in range(nk))
        c = F.coefficient(e).specialize(numeric_spec)
        if not (c.num.is_zero() or (c.num.is_monomial() and not any(c.num.as_monomial().exps)
                                    and c.den.is_monomial() and not any(c.den.as_monomial().exps))):
            raise ValueError(f"coefficient at degree {k} is not fully specialized: {c}")
        val = Fraction(0) if c.num.is_zero() else c.num.as_monomial().coeff / c.den.as_monomial().coeff
        seq.append(sympy.Rational(val.numerator, val.denominator))
    start = order if start is None else start
    rows = [[seq[k - j] for j in range(1, order + 1)] for k in range(start, N + 1)]
    rhs = [seq[k] for k in range(start, N + 1)]
    A = sympy.Matrix(rows)
    Ab = A.row_join(sympy.Matrix(rhs))
    return A.rank() == Ab.rank()


def _with_z(f, e):
    S = f.system
    z = S.one()
    for name, x in zip(S.kahler, e):
        z = z * S.var(name, x)
    return f * z


def vertex_shifted_limit(I: FixedPoint, s, D: int) -> RatFunc:
    """lim_{q -> 0} V_I(a, z q^{s+1}) on X, truncated at degree D, summed term by term."""
    S = x_system(I.n)
    total = RatFunc.constant(S, 0)
    if I.n == 1:
        return total + 1
    for e, parts in vertex_series_terms(I, D, X).items():
        for f in parts:
            total = total + shifted_limit(_with_z(f, e), s)
    return total


def kappa_vertex_index_limit(I: FixedPoint, s, D: int) -> RatFunc:
    """Index limit of kappa(V_I), term by term; kappa turns z into h! a!, so the
    truncated series is a single element over X!."""
    S = dual_system(I.n)
    total = RatFunc.constant(S, 0)
    if I.n == 1:
        return total + 1
    for e, parts in vertex_series_terms(I, D, X).items():
        for f in parts:
            total = total + index_limit_element(kappa(_with_z(f, e)), s)
    return total
