"""Ordinary character tables of the reflection groups, exact.

Types A and B get combinatorial tables (border-strip recursion on
partitions, respectively bipartitions with a sign on strips removed from
the second coordinate at negative cycles). Dihedral tables are written
down directly. The two exceptional types are generated by tensoring: a
few starter characters (linear characters, the reflection trace,
permutation characters of parabolic quotients, symmetric and exterior
squares) are split against already-found irreducibles until the sum of
squared dimensions fills the group order.

An independent route computes tables modulo a prime p congruent to one
mod the group exponent: common eigenvectors of the class-sum matrices,
dimensions recovered exactly below p, values lifted through power maps
along one fixed root of unity. That route is the primary one for the
index-two subgroups behind the type D device, and serves as an oracle
for everything else in the tests.

Also here: splitting a parabolic subgroup into diagram components,
fusing product classes into ambient classes, induction and restriction
of characters, and a small multiplicity-vector type the representation
modules share.
"""

import math
from fractions import Fraction
from itertools import combinations, product as iproduct

import numpy as np
import sympy

from .coxeter import coxeter_system, diagram_components
from .cyclo import CycloReal, dickson_poly
from .errors import CellkitError


# -- partitions and border strips -----------------------------------

def partitions(n):
    """All partitions of n as descending tuples, lex-descending order."""
    out = []

    def rec(rest, maxpart, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for k in range(min(rest, maxpart), 0, -1):
            acc.append(k)
            rec(rest - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return out


def bipartitions(m):
    out = []
    for k in range(m, -1, -1):
        for a in partitions(k):
            for b in partitions(m - k):
                out.append((a, b))
    return out


def _beta_set(shape, k):
    padded = list(shape) + [0] * (k - len(shape))
    return [padded[i] + (k - 1 - i) for i in range(k)]


def _strip_removals(shape, ell):
    """Ways to remove one border strip of size ell: yields pairs
    (smaller shape, parity sign of the strip height)."""
    k = max(len(shape), 1)
    beta = _beta_set(shape, k)
    bset = set(beta)
    for b in beta:
        nb = b - ell
        if nb < 0 or nb in bset:
            continue
        crossings = sum(1 for a in beta if nb < a < b)
        newbeta = list(beta)
        newbeta.remove(b)
        newbeta.append(nb)
        newbeta.sort(reverse=True)
        newshape = tuple(x - (k - 1 - j) for j, x in enumerate(newbeta))
        newshape = tuple(x for x in newshape if x > 0)
        yield newshape, -1 if crossings % 2 else 1


_MN_CACHE = {}


def mn_value(shape, cycles):
    """Symmetric-group character: partition label, descending cycle
    type."""
    if not cycles:
        return 1
    key = (shape, cycles)
    got = _MN_CACHE.get(key)
    if got is not None:
        return got
    ell = cycles[0]
    rest = cycles[1:]
    total = 0
    for sub, sign in _strip_removals(shape, ell):
        total += sign * mn_value(sub, rest)
    _MN_CACHE[key] = total
    return total


_MNB_CACHE = {}


def mnb_value(alpha, beta, cycles):
    """Signed-permutation-group character: bipartition label, cycles as
    ((length, sign), ...) largest first. A strip removed from the second
    partition at a negative cycle contributes an extra minus sign."""
    if not cycles:
        return 1
    key = (alpha, beta, cycles)
    got = _MNB_CACHE.get(key)
    if got is not None:
        return got
    ell, eps = cycles[0]
    rest = cycles[1:]
    total = 0
    for sub, sign in _strip_removals(alpha, ell):
        total += sign * mnb_value(sub, beta, rest)
    for sub, sign in _strip_removals(beta, ell):
        term = sign * mnb_value(alpha, sub, rest)
        total += -term if eps < 0 else term
    _MNB_CACHE[key] = total
    return total


# -- underlying permutation data ------------------------------------

def perm_of_word(word, npoints, kind):
    """Point action of a generator word: type A swaps adjacent letters,
    type B additionally lets generator zero flip the first sign."""
    perm = list(range(npoints))
    sign = [1] * npoints
    for s in reversed(word):
        if kind == "B" and s == 0:
            sign[0] = -sign[0]
        else:
            i = s - 1 if kind == "B" else s
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            sign[i], sign[i + 1] = sign[i + 1], sign[i]
    return perm, sign


def cycle_type_a(word, npoints):
    perm, _ = perm_of_word(word, npoints, "A")
    seen = [False] * npoints
    out = []
    for i in range(npoints):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        out.append(ln)
    return tuple(sorted(out, reverse=True))


def cycle_type_b(word, npoints):
    perm, sign = perm_of_word(word, npoints, "B")
    seen = [False] * npoints
    pos = []
    neg = []
    for i in range(npoints):
        if seen[i]:
            continue
        ln = 0
        sg = 1
        j = i
        while not seen[j]:
            seen[j] = True
            sg *= sign[j]
            j = perm[j]
            ln += 1
        (pos if sg > 0 else neg).append(ln)
    return (tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True)))


# -- exact cosine values --------------------------------------------

def two_cos(m, k):
    """2 cos(2 pi k / m), exact: an int in the rational cases, else a
    cyclotomic real of minimal conductor."""
    k %= m
    if 2 * k % m == 0:
        return 2 if k == 0 else -2
    if 4 * k % m == 0:
        return 0
    if 6 * k % m == 0:
        return 1 if (k * 6 // m) in (1, 5) else -1
    g = math.gcd(k, m)
    mm, kk = m // g, k // g
    gen = CycloReal.generator(mm)
    acc = CycloReal.from_rational(mm, 0)
    for c in reversed(dickson_poly(kk)):
        acc = acc * gen + c
    return acc.reduced()


def _to_int(v):
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise CellkitError("expected an integer, got %s" % v)
        return int(v)
    if isinstance(v, CycloReal):
        if not v.is_rational():
            raise CellkitError("expected an integer, got %s" % v)
        return _to_int(v.as_rational())
    raise CellkitError("unexpected value type %r" % type(v))


def _to_fraction(v):
    if isinstance(v, CycloReal):
        if not v.is_rational():
            raise CellkitError("irrational where a rational was required")
        return v.as_rational()
    return Fraction(v)


# -- the table object -----------------------------------------------

class WCharTable:
    """Exact irreducible character table aligned to one fixed conjugacy
    class order (of a Coxeter system or an abstract group)."""

    def __init__(self, labels, rows, class_sizes, class_reps, group_order,
                 parities):
        self.labels = list(labels)
        self.rows = [tuple(r) for r in rows]
        self.class_sizes = list(class_sizes)
        self.class_reps = list(class_reps)
        self.order = group_order
        self.parities = list(parities)
        self.nchars = len(self.rows)
        self.nclasses = len(class_sizes)
        self.dims = [_to_int(r[0]) for r in self.rows]
        self._by_label = {lb: i for i, lb in enumerate(self.labels)}
        self._sign_perm = None

    def index(self, label):
        return self._by_label[label]

    def inner(self, row_u, row_v):
        total = 0
        for k in range(self.nclasses):
            total = total + self.class_sizes[k] * (row_u[k] * row_v[k])
        return _to_fraction(total) / self.order

    def decompose(self, row):
        """Multiplicities of the irreducibles in a class-function row;
        raises when a multiplicity is not an integer or the norm is not
        exhausted."""
        out = {}
        norm = self.inner(row, row)
        acc = 0
        for i, irr in enumerate(self.rows):
            m = self.inner(row, irr)
            if m.denominator != 1:
                raise CellkitError("non-integral multiplicity %s" % m)
            mi = int(m)
            if mi:
                out[i] = mi
                acc += mi * mi
        if acc != norm:
            raise CellkitError("decomposition does not exhaust the norm")
        return out

    def sign_row(self):
        return tuple(-1 if p else 1 for p in self.parities)

    def sign_index(self):
        return self.rows.index(self.sign_row())

    def trivial_index(self):
        return self.rows.index(tuple([1] * self.nclasses))

    def tensor_sign_perm(self):
        """Permutation sending each character to its twist by the
        alternating character."""
        if self._sign_perm is None:
            sg = self.sign_row()
            perm = []
            for r in self.rows:
                perm.append(self.rows.index(tuple(v * s for v, s in zip(r, sg))))
            self._sign_perm = perm
        return self._sign_perm


# -- concrete tables ------------------------------------------------

def a_char_table(system):
    npoints = system.rank + 1
    reps = system.class_reps
    types = [cycle_type_a(system.canword[r], npoints) for r in reps]
    rows = []
    labels = []
    for lam in partitions(npoints):
        rows.append(tuple(mn_value(lam, t) for t in types))
        labels.append(str(list(lam)))
    sizes = [len(c) for c in system.conj_classes]
    return WCharTable(labels, rows, sizes, reps, system.nelts,
                      [system.length[r] % 2 for r in reps])


def b_char_table(system):
    m = system.rank
    reps = system.class_reps
    cycles = []
    for r in reps:
        pos, neg = cycle_type_b(system.canword[r], m)
        merged = [(l, 1) for l in pos] + [(l, -1) for l in neg]
        merged.sort(key=lambda t: (-t[0], -t[1]))
        cycles.append(tuple(merged))
    rows = []
    labels = []
    for a, b in bipartitions(m):
        rows.append(tuple(mnb_value(a, b, c) for c in cycles))
        labels.append("%s,%s" % (list(a), list(b)))
    sizes = [len(c) for c in system.conj_classes]
    return WCharTable(labels, rows, sizes, reps, system.nelts,
                      [system.length[r] % 2 for r in reps])


def i2_char_table(system):
    m = system.bonds[(0, 1)]
    reps = system.class_reps
    kinds = []
    for r in reps:
        word = system.canword[r]
        if len(word) % 2 == 0:
            for k in range(m):
                if system.by_word((0, 1) * k) == r:
                    kinds.append(("rot", k))
                    break
            else:
                raise CellkitError("unmatched rotation class")
        else:
            kinds.append(("refl", 0))
    labels = ["id", "sgn"]
    rows = [
        tuple(1 for _ in reps),
        tuple(1 if kd == "rot" else -1 for kd, _ in kinds),
    ]
    if m % 2 == 0:
        row0 = []
        row1 = []
        for (kd, k), r in zip(kinds, reps):
            if kd == "rot":
                v = 1 if k % 2 == 0 else -1
                row0.append(v)
                row1.append(v)
            else:
                n0 = sum(1 for s in system.canword[r] if s == 0)
                n1 = len(system.canword[r]) - n0
                row0.append(1 if n0 % 2 == 0 else -1)
                row1.append(1 if n1 % 2 == 0 else -1)
        labels += ["sgn0", "sgn1"]
        rows += [tuple(row0), tuple(row1)]
    for j in range(1, (m - 1) // 2 + 1):
        vals = []
        for kd, k in kinds:
            vals.append(0 if kd == "refl" else two_cos(m, j * k))
        labels.append("rho%d" % j)
        rows.append(tuple(vals))
    sizes = [len(c) for c in system.conj_classes]
    return WCharTable(labels, rows, sizes, reps, system.nelts,
                      [system.length[r] % 2 for r in reps])


# -- tensor saturation for the exceptional types --------------------

def _linear_characters(system):
    """All homomorphisms to {1, -1}: constant on generators joined by an
    odd bond."""
    assigned = [-1] * system.rank
    ncomp = 0
    for s in range(system.rank):
        if assigned[s] >= 0:
            continue
        assigned[s] = ncomp
        stack = [s]
        while stack:
            u = stack.pop()
            for v in range(system.rank):
                if assigned[v] < 0 and system.bond(u, v) % 2 == 1:
                    assigned[v] = ncomp
                    stack.append(v)
        ncomp += 1
    out = []
    for bits in range(1 << ncomp):
        row = []
        for r in system.class_reps:
            v = 1
            for s in system.canword[r]:
                if bits >> assigned[s] & 1:
                    v = -v
            row.append(v)
        out.append(tuple(row))
    return out


def reflection_character(system):
    """Trace of each class representative on the span of the roots, in
    simple-root coordinates."""
    rows = []
    for r in system.class_reps:
        tr = 0
        for j in range(system.rank):
            img = system.perms[r][j]
            neg = img < 0
            if neg:
                img = ~img
            coeff = system.roots[img][j]
            tr = tr + (-coeff if neg else coeff)
        if isinstance(tr, CycloReal):
            tr = _to_int(tr) if tr.is_rational() else tr.reduced()
        rows.append(tr)
    return tuple(rows)


def coset_permutation_character(system, I):
    """Number of fixed cosets of the parabolic on the given generators,
    per class."""
    inside = set(system.parabolic_elements(I))
    sub_order = len(inside)
    rows = []
    for r in system.class_reps:
        cls = system.conj_classes[system.class_of[r]]
        hits = sum(1 for x in cls if x in inside)
        cent = system.nelts // len(cls)
        num = hits * cent
        if num % sub_order:
            raise CellkitError("coset count came out fractional")
        rows.append(num // sub_order)
    return tuple(rows)


def saturated_char_table(system):
    reps = system.class_reps
    ncl = len(reps)
    sizes = [len(c) for c in system.conj_classes]
    order = system.nelts

    def inner(u, v):
        tot = 0
        for k in range(ncl):
            tot = tot + sizes[k] * (u[k] * v[k])
        return _to_fraction(tot) / order

    rep_pos = {system.class_of[r]: i for i, r in enumerate(reps)}
    sq_at = [rep_pos[system.class_of[system.mul(r, r)]] for r in reps]

    refl = reflection_character(system)
    seeds = list(_linear_characters(system))
    seeds.append(refl)
    for size in range(system.rank):
        for I in combinations(range(system.rank), size):
            seeds.append(coset_permutation_character(system, I))

    irrs = []
    pool = []

    def consider(row):
        """Strip known constituents; a norm-one remainder is a new
        irreducible, anything larger is kept as breeding stock."""
        rem = list(row)
        for irr in irrs:
            m = inner(tuple(rem), irr)
            if m.denominator != 1:
                raise CellkitError("non-integral multiplicity in saturation")
            mi = int(m)
            if mi:
                for k in range(ncl):
                    rem[k] = rem[k] - mi * irr[k]
        rem = tuple(rem)
        nrm = inner(rem, rem)
        if nrm == 0:
            return
        if nrm == 1:
            if _to_int(rem[0]) < 0:
                rem = tuple(-v for v in rem)
            if rem not in irrs:
                irrs.append(rem)
        elif (nrm, rem) not in pool:
            pool.append((nrm, rem))

    def halve(v):
        if isinstance(v, int):
            if v % 2:
                raise CellkitError("odd value while halving")
            return v // 2
        return v * Fraction(1, 2)

    def square_parts(row):
        sym = []
        alt = []
        for k in range(ncl):
            vv = row[k] * row[k]
            sq = row[sq_at[k]]
            sym.append(halve(vv + sq))
            alt.append(halve(vv - sq))
        return tuple(sym), tuple(alt)

    pending = list(seeds)
    rounds = 0
    while sum(d * d for d in (_to_int(r[0]) for r in irrs)) < order:
        rounds += 1
        if rounds > 40:
            raise CellkitError("tensor saturation did not converge")
        stock = pool
        pool = []
        for row in pending:
            consider(row)
        for _, row in stock:
            consider(row)
        if sum(d * d for d in (_to_int(r[0]) for r in irrs)) == order:
            break
        pool.sort(key=lambda t: (t[0], _to_int(t[1][0]),
                                 [round(float(v), 6) for v in t[1]]))
        pool = pool[:32]
        pending = list(seeds)
        gen = irrs + [r for _, r in pool]
        for row in gen:
            s, a = square_parts(row)
            pending.append(s)
            pending.append(a)
        for i in range(len(gen)):
            for j in range(i, len(gen)):
                pending.append(tuple(x * y for x, y in zip(gen[i], gen[j])))
    rows = sorted(irrs, key=_row_sort_key)
    labels = _dim_labels(rows)
    return WCharTable(labels, rows, sizes, reps, order,
                      [system.length[r] % 2 for r in reps])


def _row_sort_key(row):
    key = [_to_int(row[0])]
    for v in row:
        key.append(round(float(v), 6))
    return tuple(key)


def _dim_labels(rows):
    labels = []
    seen = {}
    for r in rows:
        d = _to_int(r[0])
        seen[d] = seen.get(d, 0) + 1
        labels.append("chi%d_%d" % (d, seen[d]))
    return labels


# -- the modular route ----------------------------------------------

def _split_prime(exponent, order):
    p = (2 * order // exponent + 1) * exponent + 1
    while not sympy.isprime(p):
        p += exponent
    return p


def _rref_mod(M, p):
    """Row-reduce mod p in place; returns the pivot column list."""
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if M[rr, c] % p:
                piv = rr
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = M[r] * pow(int(M[r, c]), p - 2, p) % p
        for rr in range(rows):
            if rr != r and M[rr, c]:
                M[rr] = (M[rr] - M[rr, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def _kernel_mod(R, p):
    """Columns spanning the kernel of R mod p."""
    M = R.copy() % p
    pivots = _rref_mod(M, p)
    cols = R.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for r, pc in enumerate(pivots):
            basis[pc, idx] = (-M[r, fc]) % p
    return basis


def _pivot_rows(B, p):
    M = B.T.copy() % p
    return _rref_mod(M, p)


def _solve_square(A, B, p):
    from .exactlin import gauss_mod

    X = gauss_mod(np.array(A, dtype=np.int64), np.array(B, dtype=np.int64), p)
    if X is None:
        raise CellkitError("singular restriction while splitting")
    return X % p


def _hessenberg_mod(A, p):
    H = A.copy() % p
    d = H.shape[0]
    for j in range(d - 2):
        piv = None
        for r in range(j + 1, d):
            if H[r, j] % p:
                piv = r
                break
        if piv is None:
            continue
        if piv != j + 1:
            H[[j + 1, piv]] = H[[piv, j + 1]]
            H[:, [j + 1, piv]] = H[:, [piv, j + 1]]
        inv = pow(int(H[j + 1, j]), p - 2, p)
        for r in range(j + 2, d):
            m = int(H[r, j]) * inv % p
            if m:
                H[r] = (H[r] - m * H[j + 1]) % p
                H[:, j + 1] = (H[:, j + 1] + m * H[:, r]) % p
    return H


def _charpoly_mod(A, p):
    """Monic characteristic polynomial mod p, ascending coefficients."""
    H = _hessenberg_mod(A, p)
    d = H.shape[0]
    polys = [[1]]
    for k in range(1, d + 1):
        prev = polys[k - 1]
        cur = [0] * (k + 1)
        diag = int(H[k - 1, k - 1]) % p
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % p
            cur[i] = (cur[i] - diag * c) % p
        run = 1
        for m in range(1, k):
            run = run * int(H[k - m, k - m - 1]) % p
            coef = int(H[k - 1 - m, k - 1]) * run % p
            if coef:
                for i, c in enumerate(polys[k - 1 - m]):
                    cur[i] = (cur[i] - coef * c) % p
        polys.append(cur)
    return polys[d]


def _roots_mod(coeffs, p):
    xs = np.arange(p, dtype=np.int64)
    vals = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        vals = (vals * xs + c) % p
    return sorted(int(x) for x in xs[vals == 0])


def _unity_root_mod(o, p):
    if (p - 1) % o:
        raise CellkitError("no root of unity of order %d mod %d" % (o, p))
    e = (p - 1) // o
    for g in range(2, p):
        z = pow(g, e, p)
        ok = True
        for q in _prime_divisors(o):
            if pow(z, o // q, p) == 1:
                ok = False
                break
        if ok:
            return z
    raise CellkitError("no generator found mod %d" % p)


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def dixon_irreducible_rows(classes, mul, inv_of, identity=0):
    """Exact irreducible character rows of an abstract finite group.

    classes: full element lists per conjugacy class; mul: multiplication;
    inv_of: inversion. Works modulo a split prime and lifts the values
    through power maps along one fixed root of unity; every step is
    deterministic.
    """
    ncl = len(classes)
    sizes = [len(c) for c in classes]
    order = sum(sizes)
    reps = [c[0] for c in classes]
    class_of = {}
    for i, c in enumerate(classes):
        for x in c:
            class_of[x] = i
    id_class = class_of[identity]

    orders = []
    for r in reps:
        k = 1
        cur = r
        while cur != identity:
            cur = mul(cur, r)
            k += 1
        orders.append(k)
    exponent = 1
    for o in orders:
        exponent = exponent * o // math.gcd(exponent, o)
    p = _split_prime(exponent, order)
    zeta_e = _unity_root_mod(exponent, p)

    mats = []
    for i in range(ncl):
        M = np.zeros((ncl, ncl), dtype=np.int64)
        for x in classes[i]:
            xi = inv_of(x)
            for k, g in enumerate(reps):
                M[class_of[mul(xi, g)], k] += 1
        mats.append(M)

    spaces = [np.eye(ncl, dtype=np.int64)]
    for M in mats:
        nxt = []
        for B in spaces:
            d = B.shape[1]
            if d == 1:
                nxt.append(B)
                continue
            MB = (M @ B) % p
            piv = _pivot_rows(B, p)
            R = _solve_square(B[piv], MB[piv], p)
            if not ((B @ R - MB) % p == 0).all():
                raise CellkitError("class matrix does not stabilize the space")
            roots = _roots_mod(_charpoly_mod(R, p), p)
            if len(roots) == 1:
                nxt.append(B)
                continue
            for lam in roots:
                K = _kernel_mod((R - lam * np.eye(d, dtype=np.int64)) % p, p)
                if K.shape[1]:
                    nxt.append((B @ K) % p)
        spaces = nxt
    if len(spaces) != ncl or any(B.shape[1] != 1 for B in spaces):
        raise CellkitError("class-sum eigenspaces did not separate")

    size_inv = [pow(s, p - 2, p) for s in sizes]
    inv_class = [class_of[inv_of(r)] for r in reps]
    rows_mod = []
    dims = []
    for B in spaces:
        u = [int(x) % p for x in B[:, 0]]
        norm = pow(u[id_class], p - 2, p)
        omega = [x * norm % p for x in u]
        tot = 0
        for k in range(ncl):
            tot = (tot + omega[k] * omega[inv_class[k]] % p * size_inv[k]) % p
        d2 = order * pow(tot, p - 2, p) % p
        d = math.isqrt(d2)
        if d * d != d2:
            raise CellkitError("dimension recovery failed")
        dims.append(d)
        rows_mod.append([d * w % p * size_inv[k] % p
                         for k, w in enumerate(omega)])

    powers = []
    for k, r in enumerate(reps):
        chain = []
        cur = identity
        for _ in range(orders[k]):
            chain.append(class_of[cur])
            cur = mul(cur, r)
        powers.append(chain)

    rows = []
    for rowm, d in zip(rows_mod, dims):
        out = []
        for k in range(ncl):
            o = orders[k]
            zeta = pow(zeta_e, exponent // o, p)
            oinv = pow(o, p - 2, p)
            mults = []
            for j in range(o):
                zp = pow(zeta, (o - j) % o, p)
                acc = 0
                term = 1
                for t in range(o):
                    acc = (acc + rowm[powers[k][t]] * term) % p
                    term = term * zp % p
                a = acc * oinv % p
                a = a - p if a > p // 2 else a
                mults.append(a)
            if any(a < 0 for a in mults) or sum(mults) != d:
                raise CellkitError("eigenvalue multiplicities failed to lift")
            val = mults[0]
            if o % 2 == 0:
                val = val - mults[o // 2]
            for j in range(1, (o - 1) // 2 + 1):
                if mults[j] != mults[o - j]:
                    raise CellkitError("value lift is not real")
                if mults[j]:
                    val = val + mults[j] * two_cos(o, j)
            out.append(val)
        rows.append(tuple(out))
    return rows, reps, sizes, order


def dixon_char_table(system):
    """The modular route run on a whole Coxeter system."""
    rows, reps, sizes, order = dixon_irreducible_rows(
        [list(c) for c in system.conj_classes],
        system.mul, lambda x: system.inv[x],
    )
    rows = sorted(rows, key=_row_sort_key)
    return WCharTable(_dim_labels(rows), rows, sizes, reps, order,
                      [system.length[r] % 2 for r in reps])


def w1_char_table(ctx):
    """Character table of the index-two subgroup behind the type D
    device, aligned to its own class list."""
    W = ctx.W
    rows, reps, sizes, order = dixon_irreducible_rows(
        [list(c) for c in ctx.classes1], W.mul, lambda x: W.inv[x],
    )
    if order != ctx.nelts1:
        raise CellkitError("subgroup order mismatch in the table build")
    rows = sorted(rows, key=_row_sort_key)
    return WCharTable(_dim_labels(rows), rows, sizes, reps, order,
                      [ctx.ell1[r] % 2 for r in reps])


# -- dispatch and caching -------------------------------------------

_TABLES = {}


def chartable_for(system):
    got = _TABLES.get(system.name)
    if got is not None:
        return got
    if system.kind == "A":
        t = a_char_table(system)
    elif system.kind == "B":
        t = b_char_table(system)
    elif system.kind == "I2":
        t = i2_char_table(system)
    elif system.kind in ("H3", "F4"):
        t = saturated_char_table(system)
    else:
        raise CellkitError("no table builder for %s" % system.name)
    _TABLES[system.name] = t
    return t


# -- parabolic subgroups as products --------------------------------

def abstract_system(kind, param):
    if kind == "A":
        return coxeter_system("A", rank=param)
    if kind == "B":
        return coxeter_system("B", rank=param)
    if kind == "I2":
        return coxeter_system("I2", m=param)
    if kind == "H3":
        return coxeter_system("H3")
    raise CellkitError("unknown component kind %r" % kind)


class ParabolicFactorization:
    """A standard parabolic subgroup split into diagram components,
    each matched with an abstract system, with its product classes
    fused into the ambient classes."""

    def __init__(self, system, I):
        self.system = system
        self.I = tuple(sorted(set(I)))
        self.components = diagram_components(system, self.I)
        self.systems = []
        self.tables = []
        self.gens = []
        for kind, param, gens in self.components:
            ab = abstract_system(kind, param)
            self.systems.append(ab)
            self.tables.append(chartable_for(ab))
            self.gens.append(gens)
        self.order = 1
        for ab in self.systems:
            self.order *= ab.nelts
        self._build_classes()
        self._rows = {}

    def component_weights(self, L):
        return [tuple(L[g] for g in gens) for gens in self.gens]

    def _build_classes(self):
        system = self.system
        self.hclasses = []
        ranges = [range(t.nclasses) for t in self.tables]
        for combo in iproduct(*ranges):
            word = ()
            size = 1
            for ab, tb, gens, ci in zip(self.systems, self.tables,
                                        self.gens, combo):
                rep = tb.class_reps[ci]
                word = word + tuple(gens[s] for s in ab.canword[rep])
                size *= tb.class_sizes[ci]
            elt = system.by_word(word)
            self.hclasses.append((combo, size, system.class_of[elt]))

    def nchars(self):
        n = 1
        for t in self.tables:
            n *= t.nchars
        return n

    def char_indices(self):
        return list(iproduct(*[range(t.nchars) for t in self.tables]))

    def char_label(self, combo):
        if not combo:
            return "triv"
        return " x ".join(t.labels[c] for t, c in zip(self.tables, combo))

    def char_row(self, combo):
        got = self._rows.get(combo)
        if got is not None:
            return got
        vals = []
        for hc, _, _ in self.hclasses:
            v = 1
            for t, ci, ki in zip(self.tables, combo, hc):
                v = v * t.rows[ci][ki]
            vals.append(v)
        row = tuple(vals)
        self._rows[combo] = row
        return row

    def char_dim(self, combo):
        d = 1
        for t, c in zip(self.tables, combo):
            d *= t.dims[c]
        return d

    def inner(self, u, v):
        tot = 0
        for (_, size, _), x, y in zip(self.hclasses, u, v):
            tot = tot + size * (x * y)
        return _to_fraction(tot) / self.order

    def decompose(self, row):
        out = {}
        norm = self.inner(row, row)
        acc = 0
        for combo in self.char_indices():
            m = self.inner(row, self.char_row(combo))
            if m.denominator != 1:
                raise CellkitError("non-integral multiplicity %s" % m)
            mi = int(m)
            if mi:
                out[combo] = mi
                acc += mi * mi
        if acc != norm:
            raise CellkitError("product decomposition does not exhaust the norm")
        return out

    def induce_row(self, hrow):
        """Values of the induced class function on the ambient classes."""
        system = self.system
        table = chartable_for(system)
        acc = [0] * table.nclasses
        for (_, size, wcl), v in zip(self.hclasses, hrow):
            acc[wcl] = acc[wcl] + size * v
        out = []
        for k in range(table.nclasses):
            scale = Fraction(system.nelts,
                             table.class_sizes[k] * self.order)
            v = acc[k] * scale
            if isinstance(v, CycloReal) and v.is_rational():
                v = v.as_rational()
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise CellkitError("induced value came out fractional")
                v = int(v)
            out.append(v)
        return tuple(out)

    def restrict_row(self, wrow):
        return tuple(wrow[wcl] for _, _, wcl in self.hclasses)

    def induce(self, combo):
        """Induce one product irreducible; multiplicities upstairs."""
        table = chartable_for(self.system)
        return table.decompose(self.induce_row(self.char_row(combo)))

    def restrict(self, char_index):
        """Restrict one ambient irreducible; multiplicities downstairs."""
        table = chartable_for(self.system)
        return self.decompose(self.restrict_row(table.rows[char_index]))


# -- multiplicity vectors -------------------------------------------

class CharVector:
    """An integer combination of the irreducibles of one table."""

    __slots__ = ("table", "mult")

    def __init__(self, table, mult=None):
        self.table = table
        if mult is None:
            mult = (0,) * table.nchars
        self.mult = tuple(mult)

    @classmethod
    def from_dict(cls, table, d):
        mult = [0] * table.nchars
        for i, m in d.items():
            mult[i] = m
        return cls(table, mult)

    @classmethod
    def irreducible(cls, table, i):
        return cls.from_dict(table, {i: 1})

    def __add__(self, other):
        if other.table is not self.table:
            raise CellkitError("vectors over different tables")
        return CharVector(self.table,
                          tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __sub__(self, other):
        if other.table is not self.table:
            raise CellkitError("vectors over different tables")
        return CharVector(self.table,
                          tuple(a - b for a, b in zip(self.mult, other.mult)))

    def scale(self, k):
        return CharVector(self.table, tuple(k * a for a in self.mult))

    def __eq__(self, other):
        return (isinstance(other, CharVector) and self.table is other.table
                and self.mult == other.mult)

    def __hash__(self):
        return hash((id(self.table), self.mult))

    def is_zero(self):
        return all(m == 0 for m in self.mult)

    def dim(self):
        return sum(m * d for m, d in zip(self.mult, self.table.dims))

    def support(self):
        return [i for i, m in enumerate(self.mult) if m]

    def tensor_sign(self):
        perm = self.table.tensor_sign_perm()
        out = [0] * self.table.nchars
        for i, m in enumerate(self.mult):
            out[perm[i]] = m
        return CharVector(self.table, out)

    def values_row(self):
        acc = [0] * self.table.nclasses
        for i, m in enumerate(self.mult):
            if m:
                row = self.table.rows[i]
                for k in range(self.table.nclasses):
                    acc[k] = acc[k] + m * row[k]
        return tuple(acc)

    def __repr__(self):
        bits = []
        for i, m in enumerate(self.mult):
            if m == 0:
                continue
            lb = self.table.labels[i]
            bits.append(lb if m == 1 else "%d*%s" % (m, lb))
        return "<CharVector %s>" % (" + ".join(bits) if bits else "0")
