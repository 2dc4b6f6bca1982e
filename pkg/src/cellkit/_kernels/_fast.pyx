# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled column scan over int64 coefficient arenas.

Covers the plain scan only; calls that need row collection or subgroup
masking stay on the pure path. Any coefficient outside int64, or any
degree outside the prepared window, raises OverflowError and the caller
falls back to the pure implementation.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    ctypedef long long int128 "__int128"

cdef cnp.int64_t I64MAX = (<cnp.int64_t> 1 << 62)


cdef class Arena:
    cdef public int n
    cdef int dmin, stride
    # generator rows, flattened per (s, z) key
    cdef cnp.int64_t[::1] key_start
    cdef cnp.int32_t[::1] key_count
    cdef cnp.int32_t[::1] gz
    cdef cnp.int32_t[::1] gval
    cdef cnp.int32_t[::1] glen
    cdef cnp.int64_t[::1] gpol
    cdef cnp.int64_t[::1] gcoef
    # iteration order and factorization
    cdef cnp.int32_t[::1] xorder
    cdef cnp.int32_t[::1] xs
    cdef cnp.int32_t[::1] xhat
    cdef int rank
    # reusable workspace
    cdef cnp.int64_t[::1] ws
    cdef cnp.uint8_t[::1] flag
    cdef cnp.int32_t[::1] touched
    # row storage for one column
    cdef object _rz, _rval, _rlen, _rpol, _rcoef
    cdef cnp.int32_t[::1] rz
    cdef cnp.int32_t[::1] rval
    cdef cnp.int32_t[::1] rlen
    cdef cnp.int64_t[::1] rpol
    cdef cnp.int64_t[::1] rcoef
    cdef cnp.int64_t[::1] rx_start
    cdef cnp.int64_t[::1] rx_count
    cdef Py_ssize_t rtop, ctop


def prepare(genrows, xlist, xs, xhat, int n, int rank):
    cdef Arena a = Arena()
    a.n = n
    a.rank = rank
    total = 0
    clen = 0
    maxabs = 0
    for row in genrows.values():
        total += len(row)
        for _, p in row:
            val, coeffs = p
            clen += len(coeffs)
            deg = val + len(coeffs) - 1
            m = max(abs(val), abs(deg))
            if m > maxabs:
                maxabs = m
    bound = 6 * maxabs + 64
    a.dmin = -bound
    a.stride = 2 * bound + 1
    key_start = np.full(rank * n, -1, dtype=np.int64)
    key_count = np.zeros(rank * n, dtype=np.int32)
    gz = np.empty(total, dtype=np.int32)
    gval = np.empty(total, dtype=np.int32)
    glen = np.empty(total, dtype=np.int32)
    gpol = np.empty(total, dtype=np.int64)
    gcoef = np.empty(max(clen, 1), dtype=np.int64)
    pos = 0
    cpos = 0
    for (s, z), row in sorted(genrows.items()):
        key_start[s * n + z] = pos
        key_count[s * n + z] = len(row)
        for z2, p in row:
            val, coeffs = p
            gz[pos] = z2
            gval[pos] = val
            glen[pos] = len(coeffs)
            gpol[pos] = cpos
            for c in coeffs:
                if abs(c) > 2 ** 60:
                    raise OverflowError("generator coefficient too large")
                gcoef[cpos] = c
                cpos += 1
            pos += 1
    a.key_start = key_start
    a.key_count = key_count
    a.gz = gz
    a.gval = gval
    a.glen = glen
    a.gpol = gpol
    a.gcoef = gcoef
    a.xorder = np.array(list(xlist), dtype=np.int32)
    a.xs = np.array([-1 if v is None else v for v in xs], dtype=np.int32)
    a.xhat = np.array([-1 if v is None else v for v in xhat], dtype=np.int32)
    a.ws = np.zeros(<Py_ssize_t> n * a.stride, dtype=np.int64)
    a.flag = np.zeros(n, dtype=np.uint8)
    a.touched = np.empty(n, dtype=np.int32)
    a._rz = np.empty(1024, dtype=np.int32)
    a._rval = np.empty(1024, dtype=np.int32)
    a._rlen = np.empty(1024, dtype=np.int32)
    a._rpol = np.empty(1024, dtype=np.int64)
    a._rcoef = np.empty(4096, dtype=np.int64)
    a.rz = a._rz
    a.rval = a._rval
    a.rlen = a._rlen
    a.rpol = a._rpol
    a.rcoef = a._rcoef
    a.rx_start = np.zeros(n, dtype=np.int64)
    a.rx_count = np.zeros(n, dtype=np.int64)
    return a


cdef inline int _grow_rows(Arena a) except -1:
    cap = len(a._rz)
    rz = np.empty(cap * 2, dtype=np.int32)
    rval = np.empty(cap * 2, dtype=np.int32)
    rlen = np.empty(cap * 2, dtype=np.int32)
    rpol = np.empty(cap * 2, dtype=np.int64)
    rz[:cap] = a._rz
    rval[:cap] = a._rval
    rlen[:cap] = a._rlen
    rpol[:cap] = a._rpol
    a._rz = rz
    a._rval = rval
    a._rlen = rlen
    a._rpol = rpol
    a.rz = rz
    a.rval = rval
    a.rlen = rlen
    a.rpol = rpol
    return 0


cdef inline int _grow_coef(Arena a, Py_ssize_t need) except -1:
    cap = len(a._rcoef)
    while cap < need:
        cap *= 2
    rcoef = np.empty(cap, dtype=np.int64)
    rcoef[: len(a._rcoef)] = a._rcoef
    a._rcoef = rcoef
    a.rcoef = rcoef
    return 0


def scan(Arena a, int y, gdeg_list):
    """Mirror of the pure scan for the plain case. Returns
    (events, None, tr1col, None)."""
    cdef int n = a.n
    cdef int stride = a.stride
    cdef int dmin = a.dmin
    cdef cnp.int64_t[::1] gdeg = np.array(gdeg_list, dtype=np.int64)
    cdef cnp.int64_t[::1] ws = a.ws
    cdef cnp.uint8_t[::1] flag = a.flag
    cdef cnp.int32_t[::1] touched = a.touched
    cdef Py_ssize_t ntouched = 0
    cdef int x, s, xh, z, z2, i, j, k, lo, hi, d
    cdef Py_ssize_t ek, ep, gi, gj, base, off, idx
    cdef cnp.int64_t coef, prod, acc
    cdef int128 wide
    events = []
    tr1col = [0] * n
    tr1col[0] = 1
    # identity row: coefficient one at z = y
    a.rtop = 0
    a.ctop = 0
    if a.rtop + 1 > len(a._rz):
        _grow_rows(a)
    a.rx_start[0] = 0
    a.rx_count[0] = 1
    a.rz[0] = y
    a.rval[0] = 0
    a.rlen[0] = 1
    a.rpol[0] = 0
    if a.ctop + 1 > len(a._rcoef):
        _grow_coef(a, a.ctop + 1)
    a.rcoef[0] = 1
    a.rtop = 1
    a.ctop = 1
    if 0 >= gdeg[y]:
        gdeg[y] = 0
        events.append((y, 0, 0, 1))
    cdef Py_ssize_t xi
    cdef Py_ssize_t nx = len(a.xorder)
    for xi in range(nx):
        x = a.xorder[xi]
        if x == 0:
            continue
        s = a.xs[x]
        xh = a.xhat[x]
        ntouched = 0
        # products of the xh row with the generator rows
        for ek in range(a.rx_start[xh], a.rx_start[xh] + a.rx_count[xh]):
            z = a.rz[ek]
            gi = a.key_start[s * n + z]
            if gi < 0:
                continue
            for gj in range(gi, gi + a.key_count[s * n + z]):
                z2 = a.gz[gj]
                base = <Py_ssize_t> z2 * stride
                off = a.rval[ek] + a.gval[gj] - dmin
                if off < 0 or off + a.rlen[ek] + a.glen[gj] - 1 > stride:
                    raise OverflowError("degree window exceeded")
                if not flag[z2]:
                    flag[z2] = 1
                    touched[ntouched] = z2
                    ntouched += 1
                for i in range(a.rlen[ek]):
                    coef = a.rcoef[a.rpol[ek] + i]
                    if coef == 0:
                        continue
                    for j in range(a.glen[gj]):
                        wide = <int128> coef * a.gcoef[a.gpol[gj] + j]
                        wide += ws[base + off + i + j]
                        if wide > I64MAX or wide < -I64MAX:
                            raise OverflowError("coefficient overflow")
                        ws[base + off + i + j] = <cnp.int64_t> wide
        # subtract the earlier full rows named by the factorization row
        gi = a.key_start[s * n + xh]
        if gi >= 0:
            for gj in range(gi, gi + a.key_count[s * n + xh]):
                z2 = a.gz[gj]
                if z2 == x:
                    continue
                for ek in range(a.rx_start[z2], a.rx_start[z2] + a.rx_count[z2]):
                    z = a.rz[ek]
                    base = <Py_ssize_t> z * stride
                    off = a.rval[ek] + a.gval[gj] - dmin
                    if off < 0 or off + a.rlen[ek] + a.glen[gj] - 1 > stride:
                        raise OverflowError("degree window exceeded")
                    if not flag[z]:
                        flag[z] = 1
                        touched[ntouched] = z
                        ntouched += 1
                    for i in range(a.glen[gj]):
                        coef = a.gcoef[a.gpol[gj] + i]
                        if coef == 0:
                            continue
                        for j in range(a.rlen[ek]):
                            wide = <int128> coef * a.rcoef[a.rpol[ek] + j]
                            wide = <int128> ws[base + off + i + j] - wide
                            if wide > I64MAX or wide < -I64MAX:
                                raise OverflowError("coefficient overflow")
                            ws[base + off + i + j] = <cnp.int64_t> wide
        # finalize row x in ascending z order
        if ntouched > 1:
            tsort = np.asarray(touched[:ntouched]).copy()
            tsort.sort()
            for k in range(ntouched):
                touched[k] = tsort[k]
        a.rx_start[x] = a.rtop
        a.rx_count[x] = 0
        for k in range(ntouched):
            z = touched[k]
            flag[z] = 0
            base = <Py_ssize_t> z * stride
            lo = 0
            while lo < stride and ws[base + lo] == 0:
                lo += 1
            if lo == stride:
                continue
            hi = stride - 1
            while ws[base + hi] == 0:
                hi -= 1
            if a.rtop + 1 > len(a._rz):
                _grow_rows(a)
            if a.ctop + (hi - lo + 1) > len(a._rcoef):
                _grow_coef(a, a.ctop + (hi - lo + 1))
            ep = a.rtop
            a.rz[ep] = z
            a.rval[ep] = lo + dmin
            a.rlen[ep] = hi - lo + 1
            a.rpol[ep] = a.ctop
            for i in range(lo, hi + 1):
                a.rcoef[a.ctop + i - lo] = ws[base + i]
                ws[base + i] = 0
            a.ctop += hi - lo + 1
            a.rtop += 1
            a.rx_count[x] += 1
            d = hi + dmin
            if d >= gdeg[z]:
                gdeg[z] = d
                events.append((z, x, d, int(a.rcoef[a.rpol[ep] + a.rlen[ep] - 1])))
            if z == y:
                acc = 0
                for i in range(a.rlen[ep]):
                    acc += a.rcoef[a.rpol[ep] + i]
                tr1col[x] = int(acc)
    for i in range(n):
        gdeg_list[i] = gdeg[i]
    return events, None, tr1col, None
