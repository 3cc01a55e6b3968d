"""Virtual characters (signed multisets of torus weights) and the genera built on them."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .factors import FactorProduct
from .poly import RatFunc
from .variables import Monomial, MixedSystemsError, VariableSystem, qnum


class TrivialWeightError(ValueError):
    pass


class CharacterSum:
    """Sum of monomial weights with signed integer multiplicities."""

    __slots__ = ("system", "weights")

    def __init__(self, system: VariableSystem, weights=None):
        self.system = system
        counts = Counter()
        for e, m in (weights or {}).items():
            if isinstance(e, Monomial):
                if e.coeff != 1:
                    raise ValueError(f"weights must be monic, got {e}")
                e = e.exps
            counts[e] += m
        self.weights = {e: m for e, m in counts.items() if m}

    @classmethod
    def of(cls, *monomials: Monomial) -> CharacterSum:
        return cls(monomials[0].system, Counter(m.exps for m in monomials))

    def _check(self, other):
        if other.system != self.system:
            raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")

    def __add__(self, other: CharacterSum) -> CharacterSum:
        self._check(other)
        out = Counter(self.weights)
        out.update(other.weights)
        return CharacterSum(self.system, out)

    def __neg__(self):
        return CharacterSum(self.system, {e: -m for e, m in self.weights.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CharacterSum):
            return NotImplemented
        return self.system == other.system and self.weights == other.weights

    __hash__ = None

    def __iter__(self):
        for e, m in sorted(self.weights.items()):
            yield Monomial(self.system, e), m

    def __len__(self):
        return len(self.weights)

    def scale(self, w: Monomial) -> CharacterSum:
        """Tensor with the one-dimensional character ``w``."""
        if w.coeff != 1:
            raise ValueError("characters are monic")
        return CharacterSum(self.system, {tuple(qnum(x + y) for x, y in zip(e, w.exps)): m
                                          for e, m in self.weights.items()})

    def tensor(self, other: CharacterSum) -> CharacterSum:
        self._check(other)
        out = Counter()
        for e1, m1 in self.weights.items():
            for e2, m2 in other.weights.items():
                out[tuple(qnum(x + y) for x, y in zip(e1, e2))] += m1 * m2
        return CharacterSum(self.system, out)

    def dual(self) -> CharacterSum:
        return CharacterSum(self.system, {tuple(-x for x in e): m for e, m in self.weights.items()})

    def rank(self) -> int:
        return sum(self.weights.values())

    def det(self) -> Monomial:
        out = self.system.one()
        for w, m in self:
            out = out * w ** m
        return out

    def det_sqrt(self) -> Monomial:
        return self.det() ** Fraction(1, 2)

    def has_trivial_weight(self) -> bool:
        return any(not any(e) for e in self.weights)

    def _require_nontrivial(self):
        if self.has_trivial_weight():
            raise TrivialWeightError("character contains the trivial weight")

    def __repr__(self):
        if not self.weights:
            return "0"
        return " + ".join(f"{m}*{w}" if m != 1 else repr(w) for w, m in self)


def ext_power_factors(V: CharacterSum) -> FactorProduct:
    V._require_nontrivial()
    out = FactorProduct(V.system)
    for w, m in V:
        out.add_factor(w, m)
    return out


def sym_power(V: CharacterSum) -> RatFunc:
    """S(V) = prod (1 - w)^{-m}."""
    return ext_power_factors(V).inverse().to_ratfunc()


def ext_power(V: CharacterSum) -> RatFunc:
    """Exterior algebra character prod (1 - w)^{m}."""
    return ext_power_factors(V).to_ratfunc()


def roof(V: CharacterSum) -> RatFunc:
    """prod over weights of (w^{1/2} - w^{-1/2})^{-m}."""
    V._require_nontrivial()
    # w^{1/2} - w^{-1/2} = -w^{-1/2} (1 - w)
    out = FactorProduct(V.system)
    for w, m in V:
        out.prefactor = out.prefactor * (-(w ** Fraction(-1, 2))) ** (-m)
        out.add_factor(w, -m)
    return out.to_ratfunc()


def phi_product(V: CharacterSum, q_cutoff: int, tail: bool = False) -> FactorProduct:
    """prod_w prod_{i=0}^{q_cutoff} (1 - w q^i)^m; with ``tail`` the remaining
    infinite product is carried symbolically for :func:`q_limit`."""
    if q_cutoff < 0:
        raise ValueError("q_cutoff must be >= 0")
    q = V.system.var(V.system.q)
    out = FactorProduct(V.system)
    for w, m in V:
        for i in range(q_cutoff + 1):
            out.add_factor(w * q ** i, m)
        if tail:
            out.add_tail(w, m, q_cutoff + 1)
    return out
