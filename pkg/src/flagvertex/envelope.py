"""K-theoretic stable-envelope restriction matrices and the mirror identity for index vertices."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from pathlib import Path

from .algebra import (LaurentPoly, Monomial, RatFunc, ZSeries, ext_power, ratfunc_eq, series_expand, sym_power,
                      x_system)
from .algebra.serialize import ratfunc_from_json, to_json
from .flag import FixedPoint, attracting_split, polarization_character, tangent_character, total_order
from .index import closed_form_n2, index_vertex_enum
from .mirror import as_slope, format_slope, is_big_enough, is_wall, kappa


class StabMatrixError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass
class StabMatrix:
    """Restrictions Stab(I)|_J, rows I and columns J in ``total_order(n)``."""

    n: int
    slope: tuple
    entries: list
    normalized: bool = False
    order: tuple = field(default=None)

    def __post_init__(self):
        self.slope = as_slope(self.slope, self.n)
        if self.order is None:
            self.order = total_order(self.n)
        size = len(self.order)
        if len(self.entries) != size or any(len(r) != size for r in self.entries):
            raise StabMatrixError(f"expected a {size}x{size} matrix")

    def position(self, I: FixedPoint) -> int:
        return self.order.index(I)

    def entry(self, I: FixedPoint, J: FixedPoint) -> RatFunc:
        return self.entries[self.position(I)][self.position(J)]

    def __eq__(self, other):
        if not isinstance(other, StabMatrix):
            return NotImplemented
        return (self.n == other.n and self.slope == other.slope and self.normalized == other.normalized
                and tuple(self.order) == tuple(other.order)
                and all(ratfunc_eq(x, y) for r1, r2 in zip(self.entries, other.entries) for x, y in zip(r1, r2)))


def diagonal_restriction(I: FixedPoint) -> RatFunc:
    """sqrt(det N+ / det T^{1/2}) * Lambda(N+ dual), the diagonal normalization."""
    nplus, _ = attracting_split(I)
    half = polarization_character(I)
    pref = nplus.det_sqrt() / half.det_sqrt()
    return RatFunc(pref.to_poly()) * ext_power(nplus.dual())


def stab_matrix_n2(s, normalized: bool = False) -> StabMatrix:
    """The rank-two matrix in the basis [p1, p2]."""
    (s,) = as_slope(s, 2)
    if s.denominator == 1:
        raise ValueError(f"integer slope {s} lies on a wall")
    S = x_system(2)
    a, h = S.var("a1"), S.var("h")
    one = LaurentPoly.constant(S, 1)
    root = h ** Fraction(1, 2)
    m = floor(s)
    a11 = RatFunc((a / h).to_poly() - 1) * root
    a12 = RatFunc(h.inverse().to_poly() - 1) * (root * a ** m)
    a22 = RatFunc(one - a.inverse().to_poly())
    zero = RatFunc.constant(S, 0)
    A = StabMatrix(2, (s,), [[a11, a12], [zero, a22]])
    return normalize(A) if normalized else A


def normalize(A: StabMatrix) -> StabMatrix:
    """Divide each column by its diagonal entry."""
    if A.normalized:
        return A
    size = len(A.order)
    diag = [A.entries[j][j] for j in range(size)]
    for j, d in enumerate(diag):
        if d.is_zero():
            raise ZeroDivisionError(f"zero diagonal entry at {A.order[j]}")
    entries = [[A.entries[i][j] / diag[j] for j in range(size)] for i in range(size)]
    return StabMatrix(A.n, A.slope, entries, True, A.order)


def validate(A: StabMatrix) -> StabMatrix:
    size = len(A.order)
    for i in range(size):
        for j in range(i):
            if not A.entries[i][j].is_zero():
                raise StabMatrixError(f"triangularity violated at row {A.order[i]}, column {A.order[j]}")
    for i, I in enumerate(A.order):
        expected = RatFunc.constant(x_system(A.n), 1) if A.normalized else diagonal_restriction(I)
        if not ratfunc_eq(A.entries[i][i], expected):
            raise StabMatrixError(f"diagonal mismatch at fixed point {I}")
    return A


def dump_stab_matrix(A: StabMatrix) -> dict:
    return {"n": A.n, "slope": [str(x) for x in A.slope], "normalized": A.normalized,
            "order": [I.to_list() for I in A.order],
            "entries": [[to_json(x) for x in row] for row in A.entries]}


def stab_matrix_from_json(data: dict) -> StabMatrix:
    try:
        n = int(data["n"])
        slope = as_slope(",".join(str(x) for x in data["slope"]), n)
        order = tuple(FixedPoint(tuple(p)) for p in data["order"])
        rows = data["entries"]
        normalized = bool(data.get("normalized", False))
    except (KeyError, TypeError, ValueError) as exc:
        raise StabMatrixError(f"schema violation: {exc}") from exc
    if order != total_order(n):
        raise StabMatrixError("fixed points must be listed in the documented total order")
    S = x_system(n)
    try:
        entries = [[ratfunc_from_json(x, S) for x in row] for row in rows]
    except (KeyError, TypeError, ValueError) as exc:
        raise StabMatrixError(f"bad matrix entry: {exc}") from exc
    return validate(StabMatrix(n, slope, entries, normalized, order))


def load_stab_matrix(path) -> StabMatrix:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StabMatrixError(f"{path}: not JSON ({exc})") from exc
    return stab_matrix_from_json(data)


def save_stab_matrix(A: StabMatrix, path) -> None:
    Path(path).write_text(json.dumps(dump_stab_matrix(A), indent=1) + "\n")


def d_matrix(n: int) -> list[Monomial]:
    """Diagonal entries sqrt(det T^{1/2}_I / det N+_I) in the total order."""
    out = []
    for I in total_order(n):
        nplus, _ = attracting_split(I)
        out.append(polarization_character(I).det_sqrt() / nplus.det_sqrt())
    return out


def s_bullet_vector(n: int, via_dual: bool = False) -> list[RatFunc]:
    """S(hbar N+_J), or equivalently S((N-_J) dual)."""
    out = []
    for J in total_order(n):
        nplus, nminus = attracting_split(J)
        if via_dual:
            out.append(sym_power(nminus.dual()))
        else:
            out.append(sym_power(nplus.scale(nplus.system.var(nplus.system.hbar))))
    return out


def mainthm_prekappa(stab: StabMatrix) -> list[RatFunc]:
    """D * A~ * D^{-1} * S(hbar N+) over the variables of X."""
    At = normalize(stab)
    Dm = d_matrix(stab.n)
    Sv = s_bullet_vector(stab.n)
    size = len(At.order)
    out = []
    for i in range(size):
        total = RatFunc.constant(x_system(stab.n), 0)
        for j in range(size):
            if At.entries[i][j].is_zero():
                continue
            total = total + At.entries[i][j] * RatFunc((Dm[i] / Dm[j]).to_poly()) * Sv[j]
        out.append(total)
    return out


def mainthm_rhs(stab: StabMatrix, D: int) -> list[ZSeries]:
    return [series_expand(kappa(v), D) for v in mainthm_prekappa(stab)]


def euler_characteristic(restrictions, n: int | None = None) -> RatFunc:
    """sum_J r_J * S(T_J X dual) by localization."""
    restrictions = list(restrictions)
    if n is None:
        n = restrictions[0].system.n
    points = total_order(n)
    if len(restrictions) != len(points):
        raise ValueError(f"need one restriction per fixed point ({len(points)})")
    S = x_system(n)
    total = RatFunc.constant(S, 0)
    for r, J in zip(restrictions, points):
        T = tangent_character(J)
        if T.has_trivial_weight():
            raise ValueError(f"trivial tangent weight at {J}")
        r = r if isinstance(r, RatFunc) else RatFunc.constant(S, r)
        total = total + r * sym_power(T.dual())
    return total


def twisted_row(stab: StabMatrix, I: FixedPoint) -> list[RatFunc]:
    """Row I of sqrt(det T^{1/2}_I / det N+_I) * A (raw restrictions)."""
    if stab.normalized:
        raise ValueError("twisted rows use the raw restriction matrix")
    d = d_matrix(stab.n)[stab.position(I)]
    return [x * RatFunc(d.to_poly()) for x in stab.entries[stab.position(I)]]


def builtin_stab(n: int, slope) -> StabMatrix:
    if n == 1:
        return StabMatrix(1, (), [[RatFunc.constant(x_system(1), 1)]], True)
    if n == 2:
        return stab_matrix_n2(slope, normalized=True)
    raise PreconditionError(f"no builtin stable envelope for n = {n}; supply a matrix file")


def verify_mainthm(n: int, s, D: int, stab: StabMatrix | None = None) -> dict:
    """Compare the index vertex at every I! with the stable-envelope side, coefficientwise."""
    s = as_slope(s, n)
    if not is_big_enough(s):
        raise PreconditionError(f"slope {format_slope(s)} is not big enough")
    if is_wall(s):
        raise PreconditionError(f"slope {format_slope(s)} lies on a wall")
    shifted = tuple(x + 1 for x in s)
    if stab is None:
        stab = builtin_stab(n, shifted)
    if stab.n != n:
        raise PreconditionError(f"matrix is for n = {stab.n}, not {n}")
    if tuple(stab.slope) != shifted:
        raise PreconditionError(f"matrix slope {format_slope(stab.slope)} must be s + 1 = {format_slope(shifted)}")
    rhs = mainthm_rhs(stab, D)
    points = []
    for I, r in zip(total_order(n), rhs):
        lhs = index_vertex_enum(I.inverse(), s, D)
        bad = lhs.first_mismatch(r)
        entry = {"fixed_point": I.to_list(), "dual_point": I.inverse().to_list(), "match": bad is None,
                 "first_mismatch": list(bad) if bad is not None else None}
        if bad is not None:
            entry["index_vertex"] = to_json(lhs.coefficient(bad))
            entry["stable_envelope_side"] = to_json(r.coefficient(bad))
        points.append(entry)
    return {"n": n, "slope": [str(x) for x in s], "max_degree": D,
            "verified": all(p["match"] for p in points), "points": points}


def printed_identities_n2(s) -> dict:
    """The two rank-two identities as exact rational-function identities.

    Left: closed index vertices.  Middle: the displayed right-hand sides.
    Right: kappa of the stable-envelope vector at slope s + 1.
    """
    (s,) = as_slope(s, 2)
    if s <= 0 or s.denominator == 1:
        raise PreconditionError("need a positive non-integer slope")
    from .algebra import dual_system
    S = dual_system(2)
    one = RatFunc.constant(S, 1)
    z, h, q = S.var("z1!"), S.var("h!"), S.var("q")
    x = RatFunc((z * h / q).to_poly())
    m = floor(s + 1)
    printed1 = one / (one - x) - (one - RatFunc((q / h).to_poly())) * x ** m / ((one - x) * (one - z.to_poly()))
    printed2 = one / (one - RatFunc((q / h).to_poly()) * x)
    vec = [kappa(v) for v in mainthm_prekappa(stab_matrix_n2(s + 1, normalized=True))]
    out = {}
    for p, printed, rhs in ((1, printed1, vec[0]), (2, printed2, vec[1])):
        lhs = closed_form_n2(p, s)
        out[f"p{p}"] = {"closed_vs_printed": ratfunc_eq(lhs, printed),
                        "printed_vs_envelope": ratfunc_eq(printed, rhs)}
    return out
