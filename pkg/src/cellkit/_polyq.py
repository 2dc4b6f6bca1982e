"""Dense univariate polynomials over Fraction, as coefficient lists.

Index i holds the coefficient of t**i. Lists are kept trimmed (no trailing
zeros); the zero polynomial is the empty list.
"""

from fractions import Fraction


def qtrim(c):
    n = len(c)
    while n and c[n - 1] == 0:
        n -= 1
    return c[:n]


def qadd(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return qtrim(out)


def qneg(a):
    return [-x for x in a]


def qscale(a, k):
    if k == 0:
        return []
    return [x * k for x in a]


def qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return qtrim(out)


def qdivmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    db = len(b) - 1
    lead = b[-1]
    while len(qtrim(r)) - 1 >= db and r:
        r = qtrim(r)
        if not r or len(r) - 1 < db:
            break
        k = len(r) - 1 - db
        f = r[-1] / lead
        q[k] = f
        for i, x in enumerate(b):
            r[k + i] -= f * x
    return qtrim(q), qtrim(r)


def qgcd(a, b):
    a, b = qtrim(list(a)), qtrim(list(b))
    while b:
        _, r = qdivmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [x / lead for x in a]
    return a


def qgcdext(a, b):
    """Extended gcd: returns (g, u, w) with u*a + w*b = g, g monic."""
    r0, r1 = qtrim(list(a)), qtrim(list(b))
    u0, u1 = [Fraction(1)], []
    w0, w1 = [], [Fraction(1)]
    while r1:
        q, r = qdivmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, qadd(u0, qneg(qmul(q, u1)))
        w0, w1 = w1, qadd(w0, qneg(qmul(q, w1)))
    if r0:
        lead = r0[-1]
        r0 = [x / lead for x in r0]
        u0 = [x / lead for x in u0]
        w0 = [x / lead for x in w0]
    return r0, u0, w0
