"""Arbitrary-precision packed Laurent polynomials and the column scan.

A polynomial in v is packed as None (zero) or a pair (val, coeffs) where
coeffs is a tuple of ints with coeffs[0] != 0 and coeffs[-1] != 0; the
polynomial is sum(coeffs[i] * v**(val+i)). Integer coefficients only: this
is the representation every hot loop runs on.
"""

NEGINF = -(1 << 60)

PONE = (0, (1,))


def pnorm(val, buf):
    lo = 0
    hi = len(buf)
    while hi > lo and buf[hi - 1] == 0:
        hi -= 1
    if hi == lo:
        return None
    while buf[lo] == 0:
        lo += 1
    return (val + lo, tuple(buf[lo:hi]))


def pmono(c, e):
    if c == 0:
        return None
    return (e, (c,))


def pfrom_pairs(pairs):
    acc = {}
    for e, c in pairs:
        acc[e] = acc.get(e, 0) + c
    acc = {e: c for e, c in acc.items() if c != 0}
    if not acc:
        return None
    lo = min(acc)
    hi = max(acc)
    return pnorm(lo, [acc.get(e, 0) for e in range(lo, hi + 1)])


def padd(p, q):
    if p is None:
        return q
    if q is None:
        return p
    va, ca = p
    vb, cb = q
    lo = va if va < vb else vb
    ea = va + len(ca)
    eb = vb + len(cb)
    hi = ea if ea > eb else eb
    buf = [0] * (hi - lo)
    for i, c in enumerate(ca):
        buf[va - lo + i] += c
    for i, c in enumerate(cb):
        buf[vb - lo + i] += c
    return pnorm(lo, buf)


def pneg(p):
    if p is None:
        return None
    v, c = p
    return (v, tuple(-x for x in c))


def psub(p, q):
    return padd(p, pneg(q))


def pscale(p, k):
    if p is None or k == 0:
        return None
    v, c = p
    return (v, tuple(k * x for x in c))


def pshift(p, k):
    if p is None:
        return None
    v, c = p
    return (v + k, c)


def pmul(p, q):
    if p is None or q is None:
        return None
    va, ca = p
    vb, cb = q
    buf = [0] * (len(ca) + len(cb) - 1)
    for i, a in enumerate(ca):
        if a == 0:
            continue
        for j, b in enumerate(cb):
            buf[i + j] += a * b
    return pnorm(va + vb, buf)


def pbar(p):
    """Substitute v -> v**-1."""
    if p is None:
        return None
    v, c = p
    return (-(v + len(c) - 1), tuple(reversed(c)))


def pdeg(p):
    if p is None:
        return NEGINF
    v, c = p
    return v + len(c) - 1


def pval(p):
    if p is None:
        return -NEGINF
    return p[0]


def pcoeff(p, e):
    if p is None:
        return 0
    v, c = p
    i = e - v
    if 0 <= i < len(c):
        return c[i]
    return 0


def plead(p):
    if p is None:
        return 0
    return p[1][-1]


def plow(p):
    if p is None:
        return 0
    return p[1][0]


def peval1(p):
    if p is None:
        return 0
    return sum(p[1])


def pevalm1(p):
    if p is None:
        return 0
    v, c = p
    s = 0
    sign = 1 if v % 2 == 0 else -1
    for x in c:
        s += sign * x
        sign = -sign
    return s


def peval_mod(p, x, m):
    """Value at v = x modulo m; x must be invertible mod m when val < 0."""
    if p is None:
        return 0
    v, c = p
    acc = 0
    for a in reversed(c):
        acc = (acc * x + a) % m
    return (acc * pow(x, v, m)) % m


def pis_sym(p):
    return p == pbar(p)


def psym_from_nonneg(p):
    """The unique bar-symmetric polynomial whose coefficients in degrees
    >= 0 agree with p's."""
    if p is None:
        return None
    v, c = p
    top = v + len(c) - 1
    if top < 0:
        return None
    buf = [0] * (2 * top + 1)
    for k in range(0, top + 1):
        a = pcoeff(p, k)
        buf[top + k] = a
        buf[top - k] = a
    return pnorm(-top, buf)


def psplit(p):
    """Split p = neg + sym with sym bar-symmetric and neg supported in
    strictly negative degrees. Returns (neg, sym)."""
    sym = psym_from_nonneg(p)
    return psub(p, sym), sym


def pmul_vsdiff(p, ell):
    """(v**ell - v**-ell) * p; zero when ell == 0."""
    if ell == 0 or p is None:
        return None
    return psub(pshift(p, ell), pshift(p, -ell))


def pstr_packed(p):
    if p is None:
        return "0"
    v, c = p
    return " + ".join("%d*v^%d" % (a, v + i) for i, a in enumerate(c) if a != 0)


def scan_column(y, xlist, xs, xhat, genrows, gdeg, collect=None, w1mask=None, gdeg1=None):
    """Structure-constant scan of one column.

    Computes, for every x in increasing length order, the expansion of
    c_x * c_y in the canonical basis, via the factorization x = s * xhat
    with the generator rows c_s * c_u already known. Rows are kept for the
    whole column because later x subtract earlier rows.

    Returns (events, events1, tr1col, rows):
      events  - (z, x, deg, lead) for entries whose degree reached the
                running per-z maximum in gdeg (gdeg is updated in place)
      events1 - same against gdeg1, restricted to x and z in w1mask
                (caller only passes these for y in the marked subgroup)
      tr1col  - value at v=1 of the coefficient of c_y in c_x * c_y, per x
      rows    - {x: {z: packed}} restricted to z in collect, or None
    """
    n = len(xs)
    rows = [None] * n
    rows[0] = {y: PONE}
    events = []
    events1 = [] if gdeg1 is not None else None
    tr1col = [0] * n
    tr1col[0] = 1
    keep = None
    if collect is not None:
        keep = {0: {y: PONE} if (y in collect) else {}}
    d0 = pdeg(PONE)
    if d0 >= gdeg[y]:
        gdeg[y] = d0
        events.append((y, 0, d0, 1))
    if gdeg1 is not None and w1mask[y]:
        if d0 >= gdeg1[y]:
            gdeg1[y] = d0
            events1.append((y, 0, d0, 1))
    for x in xlist:
        if x == 0:
            continue
        s = xs[x]
        xh = xhat[x]
        new = {}
        for z, g in rows[xh].items():
            for z2, h in genrows[s, z]:
                prev = new.get(z2)
                prod = pmul(g, h)
                if prod is None:
                    continue
                new[z2] = prod if prev is None else padd(prev, prod)
        for z2, h in genrows[s, xh]:
            if z2 == x:
                continue
            for zz, g in rows[z2].items():
                new[zz] = psub(new.get(zz), pmul(h, g))
        row = {k: v for k, v in new.items() if v is not None}
        rows[x] = row
        xin1 = w1mask is not None and w1mask[x]
        for z in sorted(row):
            p = row[z]
            d = pdeg(p)
            if d >= gdeg[z]:
                gdeg[z] = d
                events.append((z, x, d, plead(p)))
            if xin1 and w1mask[z] and d >= gdeg1[z]:
                gdeg1[z] = d
                events1.append((z, x, d, plead(p)))
        py = row.get(y)
        if py is not None:
            tr1col[x] = peval1(py)
        if keep is not None:
            keep[x] = {z: p for z, p in row.items() if z in collect}
    return events, events1, tr1col, keep
