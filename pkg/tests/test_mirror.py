from fractions import Fraction

import pytest

from flagvertex.algebra import (FactorProduct, LaurentPoly, RatFunc, ZSeries, dual_system, q_limit, ratfunc_eq,
                                series_expand, sym_power, x_system)
from flagvertex.flag import FixedPoint, enumerate_fixed_points
from flagvertex.index import closed_form_n2
from flagvertex.mirror import (as_slope, index_limit, index_limit_element, index_limit_rm2,
                               index_limit_rm2_element, is_big_enough, is_constant_one, is_wall, kappa, kappa_inv,
                               parse_slope)
from flagvertex.vertexfn import phi_prefactor, s_bullet_hbar_nplus, vertex_series, vertex_series_terms

S, T = x_system(2), dual_system(2)
a, h, q, z = S.var("a1"), S.var("h"), S.var("q"), S.var("z1")
ab, hb, qb, zb = T.var("a1!"), T.var("h!"), T.var("q"), T.var("z1!")
P1, P2 = FixedPoint((1, 2)), FixedPoint((2, 1))


def R(m):
    return RatFunc(m.to_poly())


class TestKappa:
    def test_generators(self):
        assert ratfunc_eq(kappa(R(z)), R(hb * ab))
        assert ratfunc_eq(kappa(R(h)), R(qb / hb))

    def test_rational_function(self):
        x = hb * zb / qb
        one = LaurentPoly.constant(S, 1)
        got = kappa(R(a) / (one - a.to_poly()))
        assert ratfunc_eq(got, R(x) / (LaurentPoly.constant(T, 1) - x.to_poly()))

    def test_inverse_generators(self):
        assert ratfunc_eq(kappa_inv(R(hb)), R(q / h))
        assert ratfunc_eq(kappa_inv(R(zb)), R(a * h))
        assert ratfunc_eq(kappa_inv(kappa(R(a))), R(a))

    def test_wrong_side(self):
        with pytest.raises(ValueError):
            kappa(R(hb))
        with pytest.raises(ValueError):
            kappa_inv(R(h))

    def test_series_is_summed(self):
        F = series_expand(RatFunc.constant(S, 1) / (LaurentPoly.constant(S, 1) - z.to_poly()), 3)
        got = kappa(F)
        assert ratfunc_eq(got, RatFunc.constant(T, 1) + R(hb * ab) + R((hb * ab) ** 2)
                          + R((hb * ab) ** 3))


class TestSlopes:
    def test_parse(self):
        assert parse_slope("3/4,1/2") == (Fraction(3, 4), Fraction(1, 2))

    @pytest.mark.parametrize("text", ["1.5", "0.5,1/2", "", "1/2,x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_slope(text)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_slope((0.5,))

    def test_length_checked(self):
        with pytest.raises(ValueError):
            as_slope("1/2", 3)

    def test_walls(self):
        assert is_wall("1/2,1/2")
        assert not is_wall("1/2,1/3")
        assert not is_wall("3/2")

    def test_big_enough(self):
        assert is_big_enough("1/2")
        assert not is_big_enough("1/4,-1")
        assert not is_big_enough("1/4,1/4,1/4")
        assert is_big_enough("3/4,3/4")


class TestIndexLimit:
    def test_constant(self):
        got = index_limit(ZSeries.one(T, 3), "1/2")
        assert got == ZSeries.one(T, 3)

    def test_vertex_p1_small_slope(self):
        got = index_limit(vertex_series_terms(P1, 6, "X!"), "1/2")
        want = series_expand(closed_form_n2(1, "1/2"), 6)
        assert got == want
        assert got == ZSeries(T, 6, {(k,): RatFunc.constant(T, 1) for k in range(7)})

    def test_summed_series_agrees_with_termwise(self):
        F = vertex_series(P2, 4, "X!")
        assert index_limit(F, "3/2") == index_limit(vertex_series_terms(P2, 4, "X!"), "3/2")

    @pytest.mark.parametrize("n,s", [(2, "1/2"), (2, "3/2"), (3, "3/4,3/4"), (3, "5/4,1/2")])
    def test_phi_big_enough(self, n, s):
        assert is_big_enough(s)
        for I in enumerate_fixed_points(n):
            assert is_constant_one(index_limit_element(phi_prefactor(I, "X!"), s))

    def test_phi_not_big_enough(self):
        got = index_limit_element(phi_prefactor(P1, "X!"), "-3/2")
        assert ratfunc_eq(got, R((qb / hb) ** 2))

    @pytest.mark.parametrize("n", [2, 3])
    def test_phi_plain_limit_is_sym_power(self, n):
        for I in enumerate_fixed_points(n):
            assert ratfunc_eq(q_limit(phi_prefactor(I)), sym_power(s_bullet_hbar_nplus(I)))


class TestAlternativeLimit:
    def test_constant(self):
        assert index_limit_rm2(ZSeries.one(T, 2), "1/2") == ZSeries.one(T, 2)

    @pytest.mark.parametrize("s", ["1/2", "3/2", "5/2", "-1/2", "-3/2"])
    def test_agrees_with_index_limit_n2(self, s):
        for I in (P1, P2):
            terms = vertex_series_terms(I, 6, "X!")
            assert index_limit_rm2(terms, s) == index_limit(terms, s)

    def test_agrees_with_index_limit_n3(self):
        for I in enumerate_fixed_points(3):
            terms = vertex_series_terms(I, 3, "X!")
            assert index_limit_rm2(terms, "3/4,1/2") == index_limit(terms, "3/4,1/2")

    def test_single_ratio(self):
        # (h! x)_1 / (q x)_1 at s = 3/2
        def ratio(x):
            return FactorProduct(T).add_factor(hb * x, 1).add_factor(qb * x, -1)

        assert is_constant_one(index_limit_rm2_element(ratio(ab), "3/2"))
        assert ratfunc_eq(index_limit_rm2_element(ratio(ab.inverse()), "3/2"), R(hb / qb))
        for x in (ab, ab.inverse()):
            assert ratfunc_eq(index_limit_rm2_element(ratio(x), "3/2"), index_limit_element(ratio(x), "3/2"))

    @pytest.mark.parametrize("s", ["1", "2", "-1"])
    def test_wall_discrepancy_is_a_shift(self, s):
        # on a wall kappa(z h) = q a! survives the limit unexpanded, so the two
        # pipelines differ exactly by a! -> q a!
        for I in (P1, P2):
            terms = vertex_series_terms(I, 4, "X!")
            A, B = index_limit(terms, s), index_limit_rm2(terms, s)
            shifted = B.map(lambda c: c.substitute({"a1!": qb * ab}, T))
            assert A == shifted
        assert index_limit(vertex_series_terms(P1, 4, "X!"), "1") != index_limit_rm2(vertex_series_terms(P1, 4, "X!"), "1")
