"""Acceptance checks, runnable from the command line or from the test-suite."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .algebra import RatFunc, ZSeries, dual_system, series_expand
from .envelope import printed_identities_n2, verify_mainthm
from .flag import attracting_split, enumerate_fixed_points, polarization_character, tangent_character
from .index import (closed_form_n2, index_vertex_enum, index_vertex_limit, kappa_vertex_index_limit,
                    recurrence_check, vertex_shifted_limit)
from .mirror import index_limit_element, is_constant_one
from .vertexfn import (DegreeTableau, _all_tableaux, localization_series, phi_prefactor, shift_exponents,
                       solve_kahler_shift, tableau_in_C, tableau_in_C_bruteforce, vertex_series)

N2_SLOPES = ("1/2", "3/2", "5/2")
N3_SLOPE = "3/4,1/2"


def _points(n):
    return enumerate_fixed_points(n)


def closed_forms(level="full"):
    checked = 0
    for s in N2_SLOPES:
        for p in _points(2):
            got = index_vertex_enum(p, s, 8)
            want = series_expand(closed_form_n2(p, s), 8)
            bad = got.first_mismatch(want)
            if bad is not None:
                return False, f"slope {s} at {p}: first mismatch at z-degree {bad}"
            checked += 1
    return True, f"{checked} series equal through z-degree 8"


def enum_equals_limit(level="full"):
    cases = [(p, s, 8) for s in N2_SLOPES for p in _points(2)]
    if level == "full":
        cases += [(p, N3_SLOPE, 3) for p in _points(3)]
    for p, s, D in cases:
        bad = index_vertex_enum(p, s, D).first_mismatch(index_vertex_limit(p, s, D))
        if bad is not None:
            return False, f"{p} at slope {s}: mismatch at z-degree {bad}"
    return True, f"{len(cases)} (fixed point, slope) cases agree"


def mirror_identity_n2(level="full"):
    for s in N2_SLOPES:
        report = verify_mainthm(2, s, 8)
        if not report["verified"]:
            return False, f"slope {s}: {report['points']}"
        ids = printed_identities_n2(s)
        if not all(all(v.values()) for v in ids.values()):
            return False, f"slope {s}: rational identities {ids}"
    return True, "coefficientwise to degree 8 and as rational functions at 1/2, 3/2, 5/2"


def ample_limits(level="full"):
    cases = [(2, "3/2")] + ([(3, "3/4,3/4")] if level == "full" else [])
    count = 0
    for n, s in cases:
        for I in _points(n):
            checks = {
                "vertex": vertex_shifted_limit(I, s, 4),
                "kappa vertex": kappa_vertex_index_limit(I, s, 4),
                "phi": index_limit_element(phi_prefactor(I.inverse(), "X!"), s),
            }
            for name, value in checks.items():
                if not is_constant_one(value):
                    return False, f"n={n} {I} {name} limit is {value}"
                count += 1
    return True, f"{count} limits equal 1"


def vertex_normalization(level="full"):
    top = 4 if level == "full" else 2
    count = 0
    for n in range(1, top + 1):
        for I in _points(n):
            for side in ("X", "X!"):
                c = vertex_series(I, 0, side).coefficient((0,) * (n - 1))
                if not is_constant_one(c):
                    return False, f"{I} on {side}: constant term {c}"
                count += 1
    return True, f"{count} constant terms equal 1"


def polarization_identities(level="full"):
    top = 5 if level == "full" else 2
    count = 0
    for n in range(1, top + 1):
        for I in _points(n):
            half = polarization_character(I)
            h = half.system.var(half.system.hbar)
            if tangent_character(I) != half + half.dual().scale(h.inverse()):
                return False, f"tangent space at {I}"
            nplus, nminus = attracting_split(I)
            if nplus + nminus != tangent_character(I) or nplus != nminus.dual().scale(h.inverse()):
                return False, f"attracting split at {I}"
            count += 1
    return True, f"{count} fixed points"


def cone_oracle(level="full"):
    runs = [(4, 4), (4, 7)] if level == "full" else [(3, 4)]
    total = 0
    for n, D in runs:
        for t in _all_tableaux(n, D):
            if tableau_in_C(t) != tableau_in_C_bruteforce(t):
                return False, f"disagreement at {t}"
            total += 1
    return True, f"{total} tableaux, 0 disagreements"


def squares_series(D: int) -> ZSeries:
    S = dual_system(2)
    return ZSeries(S, D, {(k * k,): 1 for k in range(D + 1) if k * k <= D})


def rationality(level="full"):
    values = {"h!": Fraction(3), "q": Fraction(5)}
    for p in _points(2):
        if not recurrence_check(index_vertex_enum(p, "3/2", 8), 0, 2, values):
            return False, f"no order-2 recurrence at {p}"
    control = squares_series(20)
    for order in (1, 2, 3):
        if recurrence_check(control, 0, order, values):
            return False, f"sum z^(d^2) passes at order {order}"
    return True, "order-2 recurrences found; sum z^(d^2) rejected at orders 1-3"


def local_constancy(level="full"):
    for p in _points(2):
        for fn in (index_vertex_enum, index_vertex_limit):
            if fn(p, "6/5", 8) != fn(p, "9/5", 8):
                return False, f"{fn.__name__} differs at {p}"
    return True, "identical through degree 8"


def localization_shift(level="full"):
    cases = [(2, 6)] + ([(3, 2)] if level == "full" else [])
    shifts = set()
    for n, D in cases:
        for I in _points(n):
            for side in ("X", "X!"):
                ms = solve_kahler_shift(localization_series(I, D, side), vertex_series(I, D, side))
                shifts.update(shift_exponents(m) for m in ms)
    if shifts != {(2, -4)}:
        return False, f"shift exponents {sorted(shifts)}"
    return True, "z# = h^(a/2) q^(b/2) z with (a, b) = (2, -4), i.e. L(z) = V(q^2 z / h)"


CRITERIA = [
    (1, "closed forms for T*P^1", closed_forms),
    (2, "index vertex by enumeration equals index limit", enum_equals_limit),
    (3, "mirror identity for n = 2", mirror_identity_n2),
    (4, "trivial limits at big-enough slopes", ample_limits),
    (5, "vertex functions start with 1", vertex_normalization),
    (6, "polarization and attracting-split identities", polarization_identities),
    (7, "matching cone test agrees with brute force", cone_oracle),
    (8, "rationality certificate", rationality),
    (9, "local constancy in the slope", local_constancy),
    (10, "localization form after Kahler renormalization", localization_shift),
]


def run_criterion(number: int, level: str = "full") -> dict:
    _, title, fn = CRITERIA[number - 1]
    start = time.perf_counter()
    try:
        passed, detail = fn(level)
    except Exception as exc:  # report content, not a crash
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return {"id": number, "title": title, "passed": bool(passed), "detail": detail,
            "seconds": round(time.perf_counter() - start, 3)}


def run_suite(level: str = "full", threads: int = 1, only=None) -> dict:
    if level not in ("smoke", "full"):
        raise ValueError(f"unknown suite level {level!r}")
    numbers = list(only) if only else [c[0] for c in CRITERIA]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_criterion, numbers, [level] * len(numbers)))
    else:
        results = [run_criterion(k, level) for k in numbers]
    return {"level": level, "passed": all(r["passed"] for r in results), "criteria": results}


__all__ = ["CRITERIA", "run_criterion", "run_suite", "squares_series", "DegreeTableau", "RatFunc"]
