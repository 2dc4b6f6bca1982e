"""Laurent polynomials in v over an exact coefficient domain.

Three domains are supported: the integers, the rationals, and the real
cyclotomic fields from cellkit.cyclo. The canonical string form is
"c*v^e" terms in ascending exponent order joined by " + ", with "0" for
zero; parse() accepts exactly this grammar.
"""

from fractions import Fraction

from .cyclo import CycloReal
from .errors import ZeroPolynomial


class Domain:
    name = ""

    def coerce(self, c):
        raise NotImplementedError

    def is_zero(self, c):
        return c == 0

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def str_coeff(self, c):
        return str(c)

    def parse_coeff(self, s):
        raise NotImplementedError

    def __repr__(self):
        return "<domain %s>" % self.name


class _IntegerDomain(Domain):
    name = "integer"
    zero = 0
    one = 1

    def coerce(self, c):
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError("integer domain got %r" % (c,))
        return c

    def parse_coeff(self, s):
        return int(s)


class _RationalDomain(Domain):
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, c):
        return Fraction(c)

    def parse_coeff(self, s):
        return Fraction(s)


class _CyclotomicDomain(Domain):
    def __init__(self, conductor):
        self.conductor = conductor
        self.name = "cyclotomic(%d)" % conductor
        self.zero = CycloReal.from_rational(conductor, 0)
        self.one = CycloReal.from_rational(conductor, 1)

    def coerce(self, c):
        if isinstance(c, CycloReal):
            if c.n == self.conductor:
                return c
            return c.lift(self.conductor)
        return CycloReal.from_rational(self.conductor, c)

    def is_zero(self, c):
        return c.is_zero()

    def str_coeff(self, c):
        return "(%s)" % c

    def parse_coeff(self, s):
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError("bad cyclotomic coefficient %r" % s)
        body = s[1:-1]
        acc = self.zero
        for term in body.split(" + "):
            if "*x^" in term:
                cs, es = term.rsplit("*x^", 1)
                x = CycloReal.generator(self.conductor)
                p = self.one
                for _ in range(int(es)):
                    p = p * x
                acc = acc + p * CycloReal.from_rational(self.conductor, Fraction(cs))
            else:
                acc = acc + CycloReal.from_rational(self.conductor, Fraction(term))
        return acc


ZZ = _IntegerDomain()
QQ = _RationalDomain()


def _split_terms(s):
    """Split on " + " at paren depth zero only."""
    out = []
    depth = 0
    start = 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and s.startswith(" + ", i):
            out.append(s[start:i])
            i += 3
            start = i
            continue
        i += 1
    out.append(s[start:])
    return out

_cyclo_domains = {}


def cyclotomic_domain(conductor):
    if conductor not in _cyclo_domains:
        _cyclo_domains[conductor] = _CyclotomicDomain(conductor)
    return _cyclo_domains[conductor]


class LaurentPoly:
    __slots__ = ("domain", "coeffs", "_hash")

    def __init__(self, coeffs, domain=ZZ):
        self.domain = domain
        clean = {}
        for e, c in coeffs.items():
            c = domain.coerce(c)
            if not domain.is_zero(c):
                clean[int(e)] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def zero(cls, domain=ZZ):
        return cls({}, domain)

    @classmethod
    def one(cls, domain=ZZ):
        return cls({0: domain.one}, domain)

    @classmethod
    def monomial(cls, c, e, domain=ZZ):
        return cls({e: c}, domain)

    @classmethod
    def from_packed(cls, p):
        if p is None:
            return cls({}, ZZ)
        v, c = p
        return cls({v + i: x for i, x in enumerate(c)}, ZZ)

    def to_packed(self):
        if self.domain is not ZZ:
            raise TypeError("packed form is integer-only")
        if not self.coeffs:
            return None
        lo = min(self.coeffs)
        hi = max(self.coeffs)
        return (lo, tuple(self.coeffs.get(e, 0) for e in range(lo, hi + 1)))

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return sorted(self.coeffs)

    def coeff(self, e):
        return self.coeffs.get(e, self.domain.zero)

    def deg(self):
        if not self.coeffs:
            raise ZeroPolynomial("degree of zero")
        return max(self.coeffs)

    def val(self):
        if not self.coeffs:
            raise ZeroPolynomial("valuation of zero")
        return min(self.coeffs)

    def leading_data(self):
        """(deg, leading coeff, val, lowest coeff)."""
        if not self.coeffs:
            raise ZeroPolynomial("leading_data of zero")
        d = max(self.coeffs)
        v = min(self.coeffs)
        return (d, self.coeffs[d], v, self.coeffs[v])

    def _binop(self, other, sign):
        dom = self.domain
        if isinstance(other, (int, Fraction, CycloReal)):
            other = LaurentPoly({0: other}, dom)
        if other.domain is not dom:
            raise TypeError("domain mismatch: %s vs %s" % (dom.name, other.domain.name))
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e, dom.zero)
            out[e] = dom.add(cur, c if sign > 0 else dom.neg(c))
        return LaurentPoly(out, dom)

    def __add__(self, other):
        return self._binop(other, +1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        dom = self.domain
        return LaurentPoly({e: dom.neg(c) for e, c in self.coeffs.items()}, dom)

    def __mul__(self, other):
        dom = self.domain
        if isinstance(other, (int, Fraction, CycloReal)):
            k = dom.coerce(other)
            return LaurentPoly({e: dom.mul(c, k) for e, c in self.coeffs.items()}, dom)
        if other.domain is not dom:
            raise TypeError("domain mismatch: %s vs %s" % (dom.name, other.domain.name))
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                p = dom.mul(c1, c2)
                if e in out:
                    out[e] = dom.add(out[e], p)
                else:
                    out[e] = p
        return LaurentPoly(out, dom)

    __rmul__ = __mul__

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()}, self.domain)

    def bar(self):
        """Substitute v -> v**-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()}, self.domain)

    def is_bar_symmetric(self):
        return self.coeffs == {-e: c for e, c in self.coeffs.items()}

    def evaluate_one(self):
        acc = self.domain.zero
        for c in self.coeffs.values():
            acc = self.domain.add(acc, c)
        return acc

    def __pow__(self, k):
        out = LaurentPoly.one(self.domain)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, (int, Fraction)) and other == 0:
                return self.is_zero()
            return NotImplemented
        return self.domain.name == other.domain.name and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain.name, frozenset(self.coeffs.items())))
        return self._hash

    def canonical_str(self):
        if not self.coeffs:
            return "0"
        dom = self.domain
        return " + ".join(
            "%s*v^%d" % (dom.str_coeff(self.coeffs[e]), e) for e in sorted(self.coeffs)
        )

    __str__ = canonical_str

    def __repr__(self):
        return "LaurentPoly(%s)" % self.canonical_str()

    @classmethod
    def parse(cls, s, domain=ZZ):
        s = s.strip()
        if s == "0":
            return cls.zero(domain)
        out = {}
        for term in _split_terms(s):
            cs, es = term.rsplit("*v^", 1)
            e = int(es)
            if e in out:
                raise ValueError("duplicate exponent in %r" % s)
            out[e] = domain.parse_coeff(cs)
        return cls(out, domain)


class BiLaurentPoly:
    """Laurent polynomials in two independent variables v and u."""

    __slots__ = ("domain", "coeffs")

    def __init__(self, coeffs, domain=ZZ):
        self.domain = domain
        clean = {}
        for (a, b), c in coeffs.items():
            c = domain.coerce(c)
            if not domain.is_zero(c):
                clean[(int(a), int(b))] = c
        self.coeffs = clean

    @classmethod
    def zero(cls, domain=ZZ):
        return cls({}, domain)

    @classmethod
    def from_outer(cls, p, q):
        """p(v) * q(u) for two LaurentPoly over the same domain."""
        dom = p.domain
        out = {}
        for e1, c1 in p.coeffs.items():
            for e2, c2 in q.coeffs.items():
                key = (e1, e2)
                val = dom.mul(c1, c2)
                if key in out:
                    out[key] = dom.add(out[key], val)
                else:
                    out[key] = val
        return cls(out, dom)

    def is_zero(self):
        return not self.coeffs

    def _binop(self, other, sign):
        dom = self.domain
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            cur = out.get(k, dom.zero)
            out[k] = dom.add(cur, c if sign > 0 else dom.neg(c))
        return BiLaurentPoly(out, dom)

    def __add__(self, other):
        return self._binop(other, +1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __mul__(self, other):
        dom = self.domain
        out = {}
        for (a1, b1), c1 in self.coeffs.items():
            for (a2, b2), c2 in other.coeffs.items():
                key = (a1 + a2, b1 + b2)
                val = dom.mul(c1, c2)
                if key in out:
                    out[key] = dom.add(out[key], val)
                else:
                    out[key] = val
        return BiLaurentPoly(out, dom)

    def __eq__(self, other):
        if not isinstance(other, BiLaurentPoly):
            return NotImplemented
        return self.domain.name == other.domain.name and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.domain.name, frozenset(self.coeffs.items())))

    def canonical_str(self):
        if not self.coeffs:
            return "0"
        dom = self.domain
        return " + ".join(
            "%s*v^%d*u^%d" % (dom.str_coeff(self.coeffs[k]), k[0], k[1])
            for k in sorted(self.coeffs)
        )

    __str__ = canonical_str

    def __repr__(self):
        return "BiLaurentPoly(%s)" % self.canonical_str()
