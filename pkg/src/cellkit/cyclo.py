"""The real cyclotomic field Q(2cos(2*pi/n)), exactly.

Elements are residues modulo psi_n, the minimal polynomial of
x = 2*cos(2*pi/n) over the rationals. This is the smallest field containing
every character value of the dihedral rotation classes and the H3 root
coordinates, so all "irrational" arithmetic in the package happens here.
"""

import math
from fractions import Fraction
from functools import lru_cache

from ._polyq import qdivmod, qgcdext, qmul, qtrim

__all__ = ["CycloReal", "minimal_cos_poly", "dickson_poly", "lcm_conductor"]


@lru_cache(maxsize=None)
def _cyclotomic(n):
    """Coefficient list of the n-th cyclotomic polynomial over Q."""
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = qdivmod(poly, _cyclotomic(d))
            assert not r
            poly = q
    return qtrim(poly)


@lru_cache(maxsize=None)
def minimal_cos_poly(n):
    """Minimal polynomial of 2*cos(2*pi/n) over Q, monic, as an int tuple."""
    if n < 1:
        raise ValueError("conductor must be positive")
    if n == 1:
        return (-2, 1)
    if n == 2:
        return (2, 1)
    phi = _cyclotomic(n)
    deg = len(phi) - 1
    # Work in Q[zeta] = Q[t]/Phi_n; express powers of c = zeta + zeta^-1
    # on the power basis and find the first linear dependency.
    zeta_inv = _inverse_mod(([Fraction(0), Fraction(1)]), phi)
    c = qtrim([Fraction(0), Fraction(1)] + [Fraction(0)] * deg)
    c = _reduce(qadd_vecs(c, zeta_inv, deg), phi)
    powers = [[Fraction(1)] + [Fraction(0)] * (deg - 1)]
    cur = powers[0]
    for _ in range(deg // 2 + 1):
        cur = _reduce(qmul(cur, c), phi)
        powers.append(_pad(cur, deg))
    powers = [_pad(p, deg) for p in powers]
    for k in range(1, len(powers)):
        dep = _dependency(powers[: k + 1])
        if dep is not None:
            lead = dep[k]
            coeffs = [x / lead for x in dep]
            out = []
            for x in coeffs:
                assert x.denominator == 1
                out.append(int(x))
            return tuple(out)
    raise AssertionError("no dependency found for conductor %d" % n)


def qadd_vecs(a, b, deg):
    out = [Fraction(0)] * max(len(a), len(b), deg)
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return qtrim(out)


def _pad(c, deg):
    return list(c) + [Fraction(0)] * (deg - len(c))


def _reduce(c, mod):
    _, r = qdivmod(c, mod)
    return r


def _inverse_mod(c, mod):
    g, u, _ = qgcdext(c, mod)
    if len(g) != 1:
        raise ZeroDivisionError("element not invertible")
    _, r = qdivmod([x / g[0] for x in u], mod)
    return r


def _dependency(vectors):
    """First vector in the list expressible from the earlier ones: returns
    combination coefficients (c_0..c_k with c_k != 0) or None."""
    k = len(vectors) - 1
    deg = len(vectors[0])
    rows = [list(v) + [Fraction(1 if i == j else 0) for j in range(k + 1)] for i, v in enumerate(vectors)]
    piv = 0
    for col in range(deg):
        sel = None
        for r in range(piv, len(rows)):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[piv], rows[sel] = rows[sel], rows[piv]
        inv = 1 / rows[piv][col]
        rows[piv] = [x * inv for x in rows[piv]]
        for r in range(len(rows)):
            if r != piv and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[piv])]
        piv += 1
    for r in range(piv, len(rows)):
        if all(x == 0 for x in rows[r][:deg]):
            comb = rows[r][deg:]
            if comb[k] != 0:
                return comb
    return None


@lru_cache(maxsize=None)
def dickson_poly(k):
    """Integer polynomial D_k with D_k(2cos t) = 2cos(k t).

    D_0 = 2, D_1 = t, D_{k+1} = t*D_k - D_{k-1}.
    """
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    a, b = (2,), (0, 1)
    for _ in range(k - 1):
        nb = [0] + list(b)
        for i, x in enumerate(a):
            nb[i] -= x
        while nb and nb[-1] == 0:
            nb.pop()
        a, b = b, tuple(nb)
    return b


def lcm_conductor(a, b):
    return a * b // math.gcd(a, b)


class CycloReal:
    """An element of Q[x]/(psi_n) with x standing for 2*cos(2*pi/n)."""

    __slots__ = ("n", "vec", "_hash")

    def __init__(self, n, vec=None):
        self.n = n
        deg = len(minimal_cos_poly(n)) - 1
        if vec is None:
            vec = (Fraction(0),) * deg
        else:
            vec = tuple(Fraction(x) for x in vec)
            if len(vec) < deg:
                vec = vec + (Fraction(0),) * (deg - len(vec))
            assert len(vec) == deg
        self.vec = vec
        self._hash = None

    @classmethod
    def from_rational(cls, n, q):
        deg = len(minimal_cos_poly(n)) - 1
        return cls(n, (Fraction(q),) + (Fraction(0),) * (deg - 1))

    @classmethod
    def generator(cls, n):
        """The element 2*cos(2*pi/n) itself."""
        deg = len(minimal_cos_poly(n)) - 1
        if deg == 1:
            mp = minimal_cos_poly(n)
            return cls(n, (Fraction(-mp[0], mp[1]),))
        vec = [Fraction(0)] * deg
        vec[1] = Fraction(1)
        return cls(n, vec)

    def _mp(self):
        return [Fraction(c) for c in minimal_cos_poly(self.n)]

    def lift(self, m):
        """Embed into the field of conductor m (self.n must divide m)."""
        if m == self.n:
            return self
        if m % self.n != 0:
            raise ValueError("cannot embed conductor %d into %d" % (self.n, m))
        gen = CycloReal.generator(m)
        img = _horner(dickson_poly(m // self.n), gen)
        acc = CycloReal.from_rational(m, 0)
        xpow = CycloReal.from_rational(m, 1)
        for c in self.vec:
            if c != 0:
                acc = acc + xpow * CycloReal.from_rational(m, c)
            xpow = xpow * img
        return acc

    def _coerce(self, other):
        if isinstance(other, CycloReal):
            if other.n == self.n:
                return self, other
            m = lcm_conductor(self.n, other.n)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloReal.from_rational(self.n, other)
        return self, NotImplemented

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return CycloReal(a.n, tuple(x + y for x, y in zip(a.vec, b.vec)))

    __radd__ = __add__

    def __neg__(self):
        return CycloReal(self.n, tuple(-x for x in self.vec))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return CycloReal(a.n, tuple(x - y for x, y in zip(a.vec, b.vec)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        prod = qmul(list(a.vec), list(b.vec))
        _, r = qdivmod(prod, a._mp())
        return CycloReal(a.n, tuple(r))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        inv = _inverse_mod(list(self.vec), self._mp())
        return CycloReal(self.n, tuple(inv))

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def is_zero(self):
        return all(x == 0 for x in self.vec)

    def is_rational(self):
        return all(x == 0 for x in self.vec[1:])

    def as_rational(self):
        if not self.is_rational():
            raise ValueError("not rational: %s" % self)
        return self.vec[0]

    def reduced(self):
        """Canonical form: the same value over the smallest divisor conductor.

        Distinct conductors can describe the same real number (2cos(pi/5)
        equals 1 + 2cos(2pi/5), conductors 10 and 5), and hashing is
        representation-based, so values headed for dict keys or set
        membership should be reduced first.
        """
        if self.is_rational():
            return self
        n = self.n
        for d in _proper_divisors(n):
            degd = len(minimal_cos_poly(d)) - 1
            if degd < 2:
                continue
            gen = CycloReal.generator(d).lift(n)
            cols = []
            xpow = CycloReal.from_rational(n, 1)
            for _ in range(degd):
                cols.append(xpow.vec)
                xpow = xpow * gen
            sol = _solve_in_span(cols, self.vec)
            if sol is not None:
                return CycloReal(d, sol)
        return self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.vec[0] == other
        if not isinstance(other, CycloReal):
            return NotImplemented
        a, b = self._coerce(other)
        return a.vec == b.vec

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.vec[0])
            else:
                self._hash = hash((self.n, self.vec))
        return self._hash

    def __float__(self):
        x = 2.0 * math.cos(2.0 * math.pi / self.n)
        acc = 0.0
        for c in reversed(self.vec):
            acc = acc * x + float(c)
        return acc

    def sign(self):
        """Exact sign: +1, -1 or 0. The float estimate decides unless it is
        suspiciously small, in which case only an exact zero is accepted."""
        if self.is_zero():
            return 0
        f = float(self)
        if f > 1e-9:
            return 1
        if f < -1e-9:
            return -1
        raise ArithmeticError(
            "sign of %r numerically ambiguous (float %g) but not exactly zero" % (self, f)
        )

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.vec):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                parts.append("%s*x^%d" % (c, i))
        return " + ".join(parts)

    def __repr__(self):
        return "CycloReal(%d, %s)" % (self.n, self)


def _horner(int_coeffs, x):
    acc = CycloReal.from_rational(x.n, 0)
    for c in reversed(int_coeffs):
        acc = acc * x + c
    return acc


def _proper_divisors(n):
    out = [d for d in range(1, n) if n % d == 0]
    return out


def _solve_in_span(cols, target):
    """Express target as a rational combination of the column vectors.

    Returns the coefficient tuple, or None if target is outside the span.
    """
    nrows = len(target)
    ncols = len(cols)
    aug = [[cols[j][i] for j in range(ncols)] + [Fraction(target[i])] for i in range(nrows)]
    where = [-1] * ncols
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = Fraction(1) / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(nrows):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[row])]
        where[col] = row
        row += 1
    for r in range(row, nrows):
        if aug[r][ncols] != 0:
            return None
    return tuple(aug[where[c]][ncols] if where[c] >= 0 else Fraction(0) for c in range(ncols))
