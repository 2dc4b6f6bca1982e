"""Rational functions in v over the rationals, kept fully reduced.

A value is v**unit * num / den with num, den integer polynomials in v,
den(0) != 0, den(0) > 0, gcd(num, den) = 1 over Q[v] and the integer
contents of num and den coprime. Membership predicates for the two
localizations used by the central-character checks live here.
"""

import math
from fractions import Fraction

from ._polyq import qdivmod, qgcd, qtrim
from .laurent import LaurentPoly, QQ, ZZ


def _content(ints):
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    return g


class RationalFn:
    __slots__ = ("unit", "num", "den")

    def __init__(self, unit, num, den):
        """Trusted constructor; use from_laurent / from_pair / ratio."""
        self.unit = unit
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def zero(cls):
        return cls(0, (), (1,))

    @classmethod
    def one(cls):
        return cls(0, (1,), (1,))

    @classmethod
    def from_int(cls, k):
        if k == 0:
            return cls.zero()
        return cls(0, (k,), (1,))

    @classmethod
    def from_fraction(cls, q):
        q = Fraction(q)
        if q == 0:
            return cls.zero()
        return cls(0, (q.numerator,), (q.denominator,))

    @classmethod
    def from_laurent(cls, p):
        """From an integer or rational LaurentPoly."""
        if p.is_zero():
            return cls.zero()
        lo = p.val()
        coeffs = [Fraction(p.coeff(e)) for e in range(lo, p.deg() + 1)]
        return cls.ratio(lo, coeffs, [Fraction(1)])

    @classmethod
    def ratio(cls, unit, num_q, den_q):
        """Reduce v**unit * num_q / den_q with Fraction coefficient lists."""
        num_q = qtrim([Fraction(x) for x in num_q])
        den_q = qtrim([Fraction(x) for x in den_q])
        if not den_q:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num_q:
            return cls.zero()
        while num_q[0] == 0:
            num_q = num_q[1:]
            unit += 1
        while den_q[0] == 0:
            den_q = den_q[1:]
            unit -= 1
        g = qgcd(num_q, den_q)
        if len(g) > 1:
            num_q, r1 = qdivmod(num_q, g)
            den_q, r2 = qdivmod(den_q, g)
            assert not r1 and not r2
        dn = 1
        for x in num_q + den_q:
            dn = dn * x.denominator // math.gcd(dn, x.denominator)
        num_i = [int(x * dn) for x in num_q]
        den_i = [int(x * dn) for x in den_q]
        cn = _content(num_i)
        cd = _content(den_i)
        g = math.gcd(cn, cd)
        num_i = [x // g for x in num_i]
        den_i = [x // g for x in den_i]
        if den_i[0] < 0:
            num_i = [-x for x in num_i]
            den_i = [-x for x in den_i]
        return cls(unit, num_i, den_i)

    def is_zero(self):
        return not self.num

    def _as_q(self):
        return [Fraction(x) for x in self.num], [Fraction(x) for x in self.den]

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.from_fraction(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        u = min(self.unit, other.unit)
        an, ad = self._as_q()
        bn, bd = other._as_q()
        an = [Fraction(0)] * (self.unit - u) + an
        bn = [Fraction(0)] * (other.unit - u) + bn
        from ._polyq import qadd, qmul

        num = qadd(qmul(an, bd), qmul(bn, ad))
        den = qmul(ad, bd)
        return RationalFn.ratio(u, num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(self.unit, tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.from_fraction(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.from_fraction(other)
        if self.is_zero() or other.is_zero():
            return RationalFn.zero()
        from ._polyq import qmul

        an, ad = self._as_q()
        bn, bd = other._as_q()
        return RationalFn.ratio(self.unit + other.unit, qmul(an, bn), qmul(ad, bd))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFn.ratio(-self.unit, [Fraction(x) for x in self.den], [Fraction(x) for x in self.num])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.from_fraction(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.from_fraction(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return (self.unit, self.num, self.den) == (other.unit, other.num, other.den)

    def __hash__(self):
        return hash((self.unit, self.num, self.den))

    def is_laurent(self):
        return len(self.den) == 1 and abs(self.den[0]) == 1

    def as_laurent(self):
        if not self.is_laurent():
            raise ValueError("%s is not a Laurent polynomial" % self)
        s = self.den[0]
        return LaurentPoly({self.unit + i: c * s for i, c in enumerate(self.num)}, ZZ)

    def in_O(self):
        """Regular at v = 0 with unit denominator there: den(0) = +-1 and
        no negative v-unit left after reduction beyond what num carries."""
        return abs(self.den[0]) == 1

    def in_Ap(self, p):
        """Membership in the localization of the Laurent ring away from p.

        Allowed denominators are exactly those not divisible by p, so the
        reduced denominator must keep at least one coefficient prime to p.
        """
        return any(c % p != 0 for c in self.den)

    def evaluate_one(self):
        n = sum(self.num)
        d = sum(self.den)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at v=1")
        return Fraction(n, d)

    def canonical_str(self):
        if self.is_zero():
            return "0"
        num = LaurentPoly({self.unit + i: c for i, c in enumerate(self.num)}, ZZ)
        if self.is_laurent():
            if self.den[0] == -1:
                num = -num
            return num.canonical_str()
        den = LaurentPoly({i: c for i, c in enumerate(self.den)}, ZZ)
        return "(%s) / (%s)" % (num.canonical_str(), den.canonical_str())

    __str__ = canonical_str

    def __repr__(self):
        return "RationalFn(%s)" % self.canonical_str()
