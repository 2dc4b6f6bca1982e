"""Exact linear algebra over several coefficient fields.

Generic Gaussian elimination over any field adapter, exact integer rank,
fraction-free determinants, and a modular solve-with-CRT path for large
integer systems whose candidate solution is always re-verified exactly.
"""

from fractions import Fraction

import numpy as np

from .cyclo import CycloReal
from .errors import SingularMatrix
from .ratfun import RationalFn


class QQField:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def coerce(x):
        return Fraction(x)

    @staticmethod
    def is_zero(x):
        return x == 0

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b


class CycloField:
    def __init__(self, conductor):
        self.n = conductor
        self.zero = CycloReal.from_rational(conductor, 0)
        self.one = CycloReal.from_rational(conductor, 1)

    def coerce(self, x):
        if isinstance(x, CycloReal):
            return x.lift(self.n) if x.n != self.n else x
        return CycloReal.from_rational(self.n, x)

    @staticmethod
    def is_zero(x):
        return x.is_zero()

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b


class RatFnField:
    zero = RationalFn.zero()
    one = RationalFn.one()

    @staticmethod
    def coerce(x):
        if isinstance(x, RationalFn):
            return x
        return RationalFn.from_fraction(x)

    @staticmethod
    def is_zero(x):
        return x.is_zero()

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b


def solve_linear(A, b, field=QQField):
    """Solve A x = b exactly; raises SingularMatrix if A is not invertible.

    A is a list of n rows; b is either one vector of length n or a list of
    several right-hand-side vectors (each of length n). Returns the solution
    in the same shape.
    """
    many = bool(b) and isinstance(b[0], (list, tuple))
    rhs = [list(v) for v in (b if many else [b])]
    n = len(A)
    M = [[field.coerce(x) for x in row] + [field.coerce(v[i]) for v in rhs] for i, row in enumerate(A)]
    w = n + len(rhs)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not field.is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            raise SingularMatrix("no pivot in column %d" % col)
        M[col], M[piv] = M[piv], M[col]
        inv = field.div(field.one, M[col][col])
        M[col] = [field.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and not field.is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [field.sub(x, field.mul(f, y)) for x, y in zip(M[r], M[col])]
    sols = [[M[i][n + j] for i in range(n)] for j in range(len(rhs))]
    return sols if many else sols[0]


def rank_exact(A):
    """Rank over Q of a matrix with integer or Fraction entries."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    rows = len(M)
    cols = len(M[0])
    rank = 0
    for col in range(cols):
        piv = None
        for r in range(rank, rows):
            if M[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = 1 / M[rank][col]
        M[rank] = [x * inv for x in M[rank]]
        for r in range(rows):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def det_bareiss(A):
    """Exact determinant of an integer matrix, fraction-free."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = None
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    piv = r
                    break
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# Primes just under 2**30: pivoting products stay inside int64.
_CRT_PRIMES = [
    1073741789, 1073741783, 1073741741, 1073741723, 1073741719,
    1073741717, 1073741689, 1073741671, 1073741663, 1073741651,
    1073741621, 1073741567, 1073741561, 1073741527, 1073741477,
    1073741467, 1073741441, 1073741419, 1073741399, 1073741387,
]


def gauss_mod(A, B, p):
    """Reduce [A | B] mod p; returns the solution matrix of A X = B mod p
    or None when A is singular mod p. A: (n,n) int array, B: (n,k)."""
    n = A.shape[0]
    M = np.concatenate([A % p, B % p], axis=1).astype(np.int64)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if M[r, col] % p:
                piv = r
                break
        if piv is None:
            return None
        if piv != col:
            M[[col, piv]] = M[[piv, col]]
        inv = pow(int(M[col, col]), p - 2, p)
        M[col] = (M[col] * inv) % p
        factors = M[:, col].copy()
        factors[col] = 0
        M = (M - np.outer(factors, M[col])) % p
    return M[:, n:]


def _crt_pair(r1, m1, r2, m2):
    inv = pow(m1 % m2, m2 - 2, m2)
    t = ((r2 - r1) * inv) % m2
    return r1 + m1 * t, m1 * m2


def solve_int_exact(A_int, B_int):
    """Exact solve of A X = B for integer matrices with integer-entried A.

    Tries the modular route with progressively more primes, balanced-lifts
    the CRT residues, and accepts only after an exact integer verification;
    falls back to Fraction elimination (which also serves non-integer
    solutions). Raises SingularMatrix when A is singular.
    """
    n = len(A_int)
    if n == 0:
        return []
    k = len(B_int[0]) if B_int else 0
    sols = []
    moduli = []
    singular_count = 0
    for p in _CRT_PRIMES:
        Ap = np.array([[int(x) % p for x in row] for row in A_int], dtype=np.int64)
        Bp = np.array([[int(x) % p for x in row] for row in B_int], dtype=np.int64)
        X = gauss_mod(Ap, Bp, p)
        if X is None:
            singular_count += 1
            if singular_count >= 3:
                break
            continue
        sols.append(X)
        moduli.append(p)
        if len(moduli) in (2, 4, 8, 12, 16):
            cand = _crt_lift(sols, moduli, n, k)
            if _verify_int(A_int, cand, B_int):
                return cand
    # Exact fallback; also the authoritative singular detector and the
    # path for solutions that are not integral.
    rhs = [[Fraction(B_int[i][j]) for i in range(n)] for j in range(k)]
    out = solve_linear(A_int, rhs, QQField)
    return [[out[j][i] for j in range(k)] for i in range(n)]


def _crt_lift(sols, moduli, n, k):
    res = [[int(sols[0][i, j]) for j in range(k)] for i in range(n)]
    mod = moduli[0]
    for s, p in zip(sols[1:], moduli[1:]):
        for i in range(n):
            for j in range(k):
                res[i][j], _ = _crt_pair(res[i][j], mod, int(s[i, j]), p)
        mod *= p
    half = mod // 2
    return [[x - mod if x > half else x for x in row] for row in res]


def _verify_int(A, X, B):
    n = len(A)
    k = len(B[0]) if B else 0
    for i in range(n):
        Ai = A[i]
        for j in range(k):
            s = 0
            for t in range(n):
                a = Ai[t]
                if a:
                    s += a * X[t][j]
            if s != B[i][j]:
                return False
    return True


def invert_unimodular(A_int):
    """Exact inverse of an integer matrix; raises SingularMatrix."""
    n = len(A_int)
    eye = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    X = solve_int_exact(A_int, eye)
    return X
