"""Variable systems and monomials with exact rational exponents."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

X = "X"
XDUAL = "X!"


def qnum(x) -> int | Fraction:
    """Normalize a rational number: ints stay ints, integral Fractions collapse."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


class MixedSystemsError(ValueError):
    pass


@dataclass(frozen=True)
class VariableSystem:
    """An ordered tuple of variable names tagged with the side of the mirror pair.

    ``equivariant`` names the torus variables, ``kahler`` the series variables.
    ``hbar`` and ``q`` are the names of the symplectic weight and the loop
    variable.
    """

    names: tuple[str, ...]
    side: str
    n: int
    equivariant: tuple[str, ...]
    kahler: tuple[str, ...]
    hbar: str
    q: str = "q"
    index: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        object.__setattr__(self, "index", {v: i for i, v in enumerate(self.names)})

    def __len__(self):
        return len(self.names)

    def var(self, name: str, power=1) -> Monomial:
        exps = [0] * len(self.names)
        exps[self.index[name]] = qnum(power)
        return Monomial(self, tuple(exps))

    def one(self) -> Monomial:
        return Monomial(self, (0,) * len(self.names))

    def monomial(self, coeff=1, **powers) -> Monomial:
        exps = [0] * len(self.names)
        for name, p in powers.items():
            exps[self.index[name]] = qnum(p)
        return Monomial(self, tuple(exps), Fraction(coeff))

    def from_dict(self, powers: dict, coeff=1) -> Monomial:
        exps = [0] * len(self.names)
        for name, p in powers.items():
            exps[self.index[name]] = qnum(p)
        return Monomial(self, tuple(exps), Fraction(coeff))

    @property
    def kahler_positions(self) -> tuple[int, ...]:
        return tuple(self.index[v] for v in self.kahler)

    @property
    def q_position(self) -> int:
        return self.index[self.q]


@lru_cache(maxsize=None)
def x_system(n: int) -> VariableSystem:
    """Variables of X: a_1..a_{n-1}, h (hbar), q, z_1..z_{n-1}, t."""
    a = tuple(f"a{i}" for i in range(1, n))
    z = tuple(f"z{i}" for i in range(1, n))
    return VariableSystem(a + ("h", "q") + z + ("t",), X, n, a, z, "h")


@lru_cache(maxsize=None)
def dual_system(n: int) -> VariableSystem:
    """Variables of the mirror X!: a_i!, h!, q, z_i!, t."""
    a = tuple(f"a{i}!" for i in range(1, n))
    z = tuple(f"z{i}!" for i in range(1, n))
    return VariableSystem(a + ("h!", "q") + z + ("t",), XDUAL, n, a, z, "h!")


@lru_cache(maxsize=None)
def u_system(n: int) -> VariableSystem:
    """Unreduced torus coordinates u_1..u_n, used for line-bundle characters."""
    u = tuple(f"u{i}" for i in range(1, n + 1))
    return VariableSystem(u + ("h", "q"), X, n, u, (), "h")


def system_for(n: int, side: str) -> VariableSystem:
    if side == X:
        return x_system(n)
    if side == XDUAL:
        return dual_system(n)
    raise ValueError(f"unknown side {side!r}")


def _root(c: Fraction, r: Fraction) -> Fraction:
    """Exact c**r for rational r, or ValueError if c has no rational r-th power."""
    num, den = r.numerator, r.denominator
    if den == 1:
        return c ** num
    if c < 0:
        raise ValueError(f"no real root of {c} to the power {r}")

    def iroot(x):
        if den == 2:
            y = isqrt(x)
        else:
            lo, hi = 0, 1 << (x.bit_length() // den + 1)
            while lo < hi:
                mid = (lo + hi + 1) // 2
                if mid ** den <= x:
                    lo = mid
                else:
                    hi = mid - 1
            y = lo
        if y ** den != x:
            raise ValueError(f"{x} is not a perfect {den}-th power")
        return y

    base = Fraction(iroot(c.numerator), iroot(c.denominator))
    return base ** num


class Monomial:
    """A coefficient times a product of variables to rational powers."""

    __slots__ = ("system", "exps", "coeff")

    def __init__(self, system: VariableSystem, exps: tuple, coeff=Fraction(1)):
        self.system = system
        self.exps = exps
        self.coeff = coeff if isinstance(coeff, Fraction) else Fraction(coeff)

    def _check(self, other: Monomial):
        if other.system != self.system:
            raise MixedSystemsError(f"{self.system.side} vs {other.system.side}")

    def __mul__(self, other):
        if isinstance(other, Monomial):
            self._check(other)
            return Monomial(self.system, tuple(qnum(x + y) for x, y in zip(self.exps, other.exps)),
                            self.coeff * other.coeff)
        if isinstance(other, (int, Fraction)):
            return Monomial(self.system, self.exps, self.coeff * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Monomial):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return Monomial(self.system, self.exps, self.coeff / other)
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __neg__(self):
        return Monomial(self.system, self.exps, -self.coeff)

    def __pow__(self, k):
        k = qnum(k)
        coeff = _root(self.coeff, Fraction(k))
        return Monomial(self.system, tuple(qnum(x * k) for x in self.exps), coeff)

    def inverse(self) -> Monomial:
        if self.coeff == 0:
            raise ZeroDivisionError("inverse of zero monomial")
        return Monomial(self.system, tuple(-x for x in self.exps), 1 / self.coeff)

    def sqrt(self) -> Monomial:
        return self ** Fraction(1, 2)

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self.system == other.system and self.exps == other.exps and self.coeff == other.coeff
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.coeff == other
        return NotImplemented

    def __hash__(self):
        return hash((self.exps, self.coeff))

    def is_constant(self) -> bool:
        return not any(self.exps)

    def is_one(self) -> bool:
        return self.coeff == 1 and not any(self.exps)

    def degree(self, name: str):
        return self.exps[self.system.index[name]]

    def q_exponent(self):
        return self.exps[self.system.q_position]

    def drop(self, name: str) -> Monomial:
        exps = list(self.exps)
        exps[self.system.index[name]] = 0
        return Monomial(self.system, tuple(exps), self.coeff)

    def monic(self) -> Monomial:
        return Monomial(self.system, self.exps)

    def as_dict(self) -> dict:
        return {v: e for v, e in zip(self.system.names, self.exps) if e != 0}

    def to_poly(self):
        from .poly import LaurentPoly
        return LaurentPoly(self.system, {self.exps: self.coeff} if self.coeff else {})

    def __repr__(self):
        return format_term(self.system.names, self.exps, self.coeff)


def format_term(names, exps, coeff) -> str:
    parts = []
    for v, e in zip(names, exps):
        if e == 0:
            continue
        parts.append(v if e == 1 else f"{v}^{e}" if isinstance(e, int) and e > 0 else f"{v}^({e})")
    body = "*".join(parts)
    if not body:
        return str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"
