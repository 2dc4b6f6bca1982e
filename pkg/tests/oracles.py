"""Independent reference implementations used to derive expected values.

Everything here is deliberately naive: dense lists, no sharing with the
package internals beyond plain data types. Several test modules import
from this file; it must not import from cellkit except for type adapters
declared at the bottom of individual tests.
"""

import random
from fractions import Fraction


# ---- dense Laurent polynomials as {exp: int} dicts ----

def d_add(a, b):
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def d_neg(a):
    return {e: -c for e, c in a.items()}


def d_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def d_bar(a):
    return {-e: c for e, c in a.items()}


def d_random(rng, span=6, density=4, coeff=9):
    out = {}
    for _ in range(density):
        out[rng.randint(-span, span)] = rng.randint(-coeff, coeff)
    return {e: c for e, c in out.items() if c}


# ---- naive exact determinant/solve over Fraction (Cramer for tiny) ----

def frac_det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        sign = -1 if j % 2 else 1
        total += sign * Fraction(M[0][j]) * frac_det(minor)
    return total


def cramer_solve(A, b):
    n = len(A)
    det = frac_det(A)
    if det == 0:
        return None
    out = []
    for j in range(n):
        Mj = [[A[i][k] if k != j else b[i] for k in range(n)] for i in range(n)]
        out.append(frac_det(Mj) / det)
    return out


# ---- naive real-cyclotomic arithmetic via complex floats (sanity only) ----

def cos_value(n):
    import math

    return 2.0 * math.cos(2.0 * math.pi / n)


def seeded(name):
    return random.Random(name)
