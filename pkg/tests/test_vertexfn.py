import random
from fractions import Fraction

import pytest

from flagvertex.algebra import RatFunc, ZSeries, pochhammer, ratfunc_eq, x_system
from flagvertex.flag import FixedPoint, enumerate_fixed_points
from flagvertex.vertexfn import (DegreeTableau, ShiftMismatch, _all_tableaux, enumerate_tableaux,
                                 in_identity_chamber, localization_series, shift_exponents, solve_kahler_shift,
                                 tableau_in_C, tableau_in_C_bruteforce, vertex_series, vertex_term)
from oracles import a_values, cone_bruteforce, vertex_summand

S = x_system(2)
a, h, q = S.var("a1"), S.var("h"), S.var("q")
P1, P2 = FixedPoint((1, 2)), FixedPoint((2, 1))


def tab(*rows):
    return DegreeTableau(tuple(tuple(r) for r in rows))


class TestCone:
    def test_examples(self):
        assert tableau_in_C(tab((0,), (1, 0)))
        assert not tableau_in_C(tab((0,), (1, 1)))

    def test_negative_rejected(self):
        assert not tableau_in_C(tab((-1,)))

    @pytest.mark.parametrize("n,D", [(3, 4), (4, 4)])
    def test_matching_vs_bruteforce(self, n, D):
        for t in _all_tableaux(n, D):
            assert tableau_in_C(t) == tableau_in_C_bruteforce(t) == cone_bruteforce(t.rows)

    def test_random_n5(self):
        rng = random.Random(7)
        for _ in range(300):
            flat = [rng.randint(0, 3) for _ in range(10)]
            t = DegreeTableau.from_flat(5, flat)
            assert tableau_in_C(t) == cone_bruteforce(t.rows)

    def test_enumeration_counts(self):
        assert [t.flat() for t in enumerate_tableaux(2, 3)] == [(0,), (1,), (2,), (3,)]
        assert enumerate_tableaux(3, 0) == (DegreeTableau.zero(3),)
        brute = [t for t in _all_tableaux(3, 2) if cone_bruteforce(t.rows)]
        assert len(enumerate_tableaux(3, 2)) == len(brute)

    def test_flat_order(self):
        ts = enumerate_tableaux(3, 3)
        assert list(ts) == sorted(ts, key=lambda t: t.flat())

    def test_row_lengths_checked(self):
        with pytest.raises(ValueError):
            tab((0, 0))


class TestVertexTerm:
    def test_zero_tableau(self):
        for n in (2, 3, 4):
            for I in enumerate_fixed_points(n):
                assert ratfunc_eq(vertex_term(I, DegreeTableau.zero(n)), RatFunc.constant(x_system(n), 1))

    def test_n2_degree_one(self):
        # (h)_1 (h u2/u1)_1 / ((q)_1 (q u2/u1)_1), u2/u1 = 1/a
        w = a.inverse()
        want = pochhammer(h, 1) * pochhammer(h * w, 1) / (pochhammer(q, 1) * pochhammer(q * w, 1))
        assert ratfunc_eq(vertex_term(P1, tab((1,))), want)

    @pytest.mark.parametrize("n,D", [(3, 2), (4, 1)])
    def test_against_independent_evaluator(self, n, D):
        rng = random.Random(n * 10 + D)
        Sx = x_system(n)
        for I in enumerate_fixed_points(n):
            for t in _all_tableaux(n, D):
                if not tableau_in_C(t):
                    continue
                primes = rng.sample([2, 3, 5, 7, 11, 13, 17], n)
                u = {f"u{i}": Fraction(p, 19) for i, p in enumerate(primes, start=1)}
                vals = {"h": Fraction(rng.randint(2, 9), 23), "q": Fraction(rng.randint(2, 9), 29)}
                want = vertex_summand(I.perm, t.rows, {**u, **vals})
                got = vertex_term(I, t).specialize({**a_values(u, n), **vals, "t": Fraction(1)})
                got_val = Fraction(0) if got.num.is_zero() else (
                    got.num.as_monomial().coeff / got.den.as_monomial().coeff)
                assert got_val == want, (I, t)
                assert Sx == got.system

    @pytest.mark.parametrize("n", [3, 4])
    def test_support_is_identity_chamber(self, n):
        for I in enumerate_fixed_points(n):
            for t in enumerate_tableaux(n, 3 if n == 3 else 2):
                assert vertex_term(I, t).is_zero() != in_identity_chamber(t), (I, t)


class TestVertexSeries:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_starts_with_one(self, n):
        for I in enumerate_fixed_points(n):
            for side in ("X", "X!"):
                V = vertex_series(I, 0, side)
                assert ratfunc_eq(V.coefficient((0,) * (n - 1)), RatFunc.constant(V.system, 1))

    def test_n2_p1_degree_two(self):
        V = vertex_series(P1, 2)
        w = a.inverse()
        for d in (1, 2):
            want = pochhammer(h, d) * pochhammer(h * w, d) / (pochhammer(q, d) * pochhammer(q * w, d))
            assert ratfunc_eq(V.coefficient((d,)), want)

    def test_n2_p2_swaps_u(self):
        V1, V2 = vertex_series(P1, 4), vertex_series(P2, 4)
        assert V2 == V1.map(lambda c: c.substitute({"a1": a.inverse()}, S))


class TestLocalization:
    def test_zero_tableau(self):
        L = localization_series(P1, 0)
        assert L == ZSeries.one(S, 0)

    @pytest.mark.parametrize("n,D", [(2, 2), (2, 6), (3, 2)])
    def test_shift(self, n, D):
        for I in enumerate_fixed_points(n):
            for side in ("X", "X!"):
                ms = solve_kahler_shift(localization_series(I, D, side), vertex_series(I, D, side))
                assert {shift_exponents(m) for m in ms} == {(2, -4)}

    def test_explicit_n2(self):
        L, V = localization_series(P1, 2), vertex_series(P1, 2)
        m = q * q / h
        for d in (1, 2):
            assert ratfunc_eq(L.coefficient((d,)), V.coefficient((d,)) * RatFunc((m ** d).to_poly()))

    def test_mismatch_detected(self):
        V = vertex_series(P1, 3)
        bad = V.map(lambda c: c)
        bad.coeffs[(2,)] = bad.coefficient((2,)) + 1
        with pytest.raises(ShiftMismatch):
            solve_kahler_shift(bad, V)
