from fractions import Fraction

import pytest

from flagvertex.algebra import (CharacterSum, DenominatorVanishesAtZero, FactorProduct, LaurentPoly,
                                NegativeExponentDivergence, RatFunc, ZSeries, dual_system, ext_power,
                                phi_product, pochhammer, pochhammer_cocycle_check, q_limit, ratfunc_eq, roof,
                                series_expand, substitute, sym_power, x_system)
from flagvertex.algebra.serialize import ratfunc_from_json, to_json, zseries_from_json
from flagvertex.algebra.variables import MixedSystemsError

S = x_system(2)
a, h, q, z = S.var("a1"), S.var("h"), S.var("q"), S.var("z1")
ONE = LaurentPoly.constant(S, 1)
R1 = RatFunc.constant(S, 1)


def P(m):
    return m.to_poly()


def R(m):
    return RatFunc(m.to_poly())


class TestRingOps:
    def test_difference_of_squares(self):
        assert (ONE - P(a)) * (ONE + P(a)) == ONE - P(a * a)

    def test_self_quotient(self):
        x = RatFunc(ONE - P(h * a))
        assert ratfunc_eq(x / x, R1)

    def test_common_denominator(self):
        lhs = R1 / (ONE - P(a)) + R1 / (ONE - P(h * a))
        rhs = RatFunc(ONE * 2 - P(a) - P(h * a)) / ((ONE - P(a)) * (ONE - P(h * a)))
        assert ratfunc_eq(lhs, rhs)

    def test_mixed_systems_rejected(self):
        with pytest.raises(MixedSystemsError):
            P(a) + dual_system(2).var("q").to_poly()


class TestRatfuncEq:
    def test_unreduced_forms(self):
        lhs = R(a) / (ONE - P(a))
        rhs = RatFunc(P(a) - P(a * a)) / ((ONE - P(a)) * (ONE - P(a)))
        assert ratfunc_eq(lhs, rhs)

    def test_distinct(self):
        assert not ratfunc_eq(R1, RatFunc(ONE + P(q)))


class TestPochhammer:
    def test_empty(self):
        assert ratfunc_eq(pochhammer(a, 0), R1)

    def test_positive(self):
        assert ratfunc_eq(pochhammer(a, 2), RatFunc((ONE - P(a)) * (ONE - P(a * q))))

    def test_negative(self):
        assert ratfunc_eq(pochhammer(a, -1), R1 / (ONE - P(a / q)))

    @pytest.mark.parametrize("d,e", [(1, 1), (2, -1), (-2, 2), (3, -5), (-1, -1)])
    def test_cocycle(self, d, e):
        assert pochhammer_cocycle_check(a * h, d, e)


class TestCharacters:
    def test_roof_single(self):
        root = h ** Fraction(1, 2)
        assert ratfunc_eq(roof(CharacterSum.of(h)), R1 / (P(root) - P(root.inverse())))

    def test_roof_empty(self):
        assert ratfunc_eq(roof(CharacterSum(S)), R1)

    def test_roof_virtual(self):
        t1, t2, t3 = a, h, a * h * q
        V = CharacterSum.of(t1, t2) - CharacterSum.of(t3)
        want = roof(CharacterSum.of(t1)) * roof(CharacterSum.of(t2)) / roof(CharacterSum.of(t3))
        assert ratfunc_eq(roof(V), want)

    def test_sym_rank_one(self):
        assert ratfunc_eq(sym_power(CharacterSum.of(a)), R1 / (ONE - P(a)))

    def test_sym_of_negative_is_ext(self):
        assert ratfunc_eq(sym_power(-CharacterSum.of(a)), RatFunc(ONE - P(a)))
        assert ratfunc_eq(ext_power(CharacterSum.of(a)), RatFunc(ONE - P(a)))

    def test_sym_times_ext(self):
        V = CharacterSum.of(a, h / a)
        assert ratfunc_eq(sym_power(V) * ext_power(V), R1)

    def test_phi_positive(self):
        got = phi_product(CharacterSum.of(a), 2).to_ratfunc()
        assert ratfunc_eq(got, RatFunc((ONE - P(a)) * (ONE - P(a * q)) * (ONE - P(a * q * q))))

    def test_phi_negative(self):
        got = phi_product(-CharacterSum.of(a), 1).to_ratfunc()
        assert ratfunc_eq(got, R1 / ((ONE - P(a)) * (ONE - P(a * q))))

    def test_phi_q_minus_hbar(self):
        w = a
        V = CharacterSum.of(q * w) - CharacterSum.of(h * w)
        got = phi_product(V, 1).to_ratfunc()
        want = RatFunc((ONE - P(q * w)) * (ONE - P(q * q * w))) / ((ONE - P(h * w)) * (ONE - P(h * q * w)))
        assert ratfunc_eq(got, want)


class TestQLimit:
    def test_positive_alpha(self):
        f = FactorProduct(S).add_factor(h * z * q, -1)
        assert ratfunc_eq(q_limit(f), R1)

    def test_zero_alpha(self):
        f = FactorProduct(S).add_factor(z, 1)
        assert ratfunc_eq(q_limit(f), RatFunc(ONE - P(z)))

    def test_after_hbar_substitution(self):
        T = dual_system(2)
        t = T.var("h!")  # plays the role of a q-free parameter
        qq = T.var("q")
        x = qq ** Fraction(3, 2)
        f = FactorProduct(T).add_factor(qq / t * x, 1).add_factor(qq * x, -1)
        assert ratfunc_eq(q_limit(f), RatFunc.constant(T, 1))

    def test_positive_prefactor_vanishes(self):
        f = FactorProduct(S, prefactor=q)
        assert q_limit(f).is_zero()

    def test_negative_prefactor_diverges(self):
        f = FactorProduct(S, prefactor=q.inverse())
        with pytest.raises(NegativeExponentDivergence):
            q_limit(f)


class TestSeries:
    def test_geometric(self):
        got = series_expand(R1 / (ONE - P(z)), 3)
        assert got == ZSeries(S, 3, {(k,): R1 for k in range(4)})

    def test_dual_geometric(self):
        T = dual_system(2)
        x = T.var("z1!") * T.var("h!") / T.var("q")
        got = series_expand(RatFunc.constant(T, 1) / (LaurentPoly.constant(T, 1) - x.to_poly()), 2)
        assert got == ZSeries(T, 2, {(k,): RatFunc((x.drop("z1!") ** k).to_poly()) for k in range(3)})

    def test_denominator_vanishing(self):
        T = x_system(3)
        den = T.var("z1").to_poly() + T.var("z2").to_poly()
        with pytest.raises(DenominatorVanishesAtZero):
            series_expand(RatFunc.constant(T, 1) / den, 2)

    def test_negative_z_power_rejected(self):
        with pytest.raises(ValueError):
            series_expand(R1 / P(z), 2)

    def test_to_ratfunc_round_trip(self):
        F = series_expand(R1 / (ONE - P(a * z)), 4)
        assert series_expand(F.to_ratfunc(), 4) == F


class TestSubstitute:
    def test_half_shift(self):
        got = substitute(RatFunc(ONE - P(a)), {"a1": a * q ** Fraction(1, 2)})
        assert ratfunc_eq(got, RatFunc(ONE - P(a * q ** Fraction(1, 2))))

    def test_z_shift(self):
        s = Fraction(1, 2)
        got = substitute(R(z * z), {"z1": z * q ** (s + 1)})
        assert ratfunc_eq(got, R(z * z * q ** 3))


class TestSerialize:
    def test_ratfunc_round_trip(self):
        f = R(h ** Fraction(1, 2)) * RatFunc(P(a / h) - ONE) / (ONE - P(a * q * Fraction(3, 7)))
        data = to_json(f)
        back = ratfunc_from_json(data)
        assert to_json(back) == data and ratfunc_eq(back, f)

    def test_zseries_round_trip(self):
        F = series_expand(R1 / (ONE - P(h * z)), 3)
        assert zseries_from_json(to_json(F)) == F

    def test_schema_fields(self):
        data = to_json(RatFunc(ONE - P(a * q ** Fraction(1, 2))))
        assert set(data) >= {"vars", "num", "den"}
        term = data["num"][0]
        assert set(term) == {"exp", "coeff"}
        assert all(isinstance(x, str) for x in term["coeff"])
