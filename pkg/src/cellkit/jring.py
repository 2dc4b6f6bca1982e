"""The leading-term ring of a cell scan.

The leading coefficients collected by the scan are the structure
constants of an associative ring over the integers, with one basis
element t_w per group element.  This module wraps them with the ring
multiplication, the identity and its decomposition into idempotents
indexed by two-sided cells, integer matrix models of the left cells,
and the basis-change matrix expanding the signed canonical basis in
the t-basis, with an exact unit-form determinant at desk scale.

Ring elements are plain sparse dicts mapping a group element to an
integer coefficient.  The defining laws of the identity and of the
idempotents hold only when the positivity conjectures do, so the check
battery records violations in an anomaly list instead of raising;
callers that need a hard guarantee use assert_clean.
"""

import random

from ._kernels.pure import (
    PONE,
    plow,
    pmul,
    pnorm,
    pscale,
    pstr_packed,
    psub,
    pval,
)
from .errors import CellkitError, IdentityFailure


def _pdivexact(p, q):
    """Exact quotient of packed polynomials; the division must come out
    without remainder, as it does for the fraction-free elimination."""
    if p is None:
        return None
    if q is None:
        raise ZeroDivisionError("exact polynomial division by zero")
    vp, cp = p
    vq, cq = q
    if len(cp) < len(cq):
        raise CellkitError("inexact polynomial division")
    rem = list(cp)
    out = [0] * (len(cp) - len(cq) + 1)
    top = cq[-1]
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(cq) - 1]
        if c % top:
            raise CellkitError("inexact polynomial division")
        f = c // top
        out[i] = f
        if f:
            for j, b in enumerate(cq):
                rem[i + j] -= f * b
    if any(rem):
        raise CellkitError("inexact polynomial division")
    return pnorm(vp - vq, out)


def _bareiss_det(rows):
    """Fraction-free determinant of a square matrix of packed
    polynomials; None encodes both the zero entry and the zero result."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return PONE
    sign = 1
    prev = PONE
    for k in range(n - 1):
        if m[k][k] is None:
            swap = next((r for r in range(k + 1, n) if m[r][k] is not None), None)
            if swap is None:
                return None
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(m[i][j], m[k][k]), pmul(m[i][k], m[k][j]))
                m[i][j] = _pdivexact(num, prev)
            m[i][k] = None
        prev = m[k][k]
    return pscale(m[-1][-1], sign)


class CellModule:
    """Integer matrices for the left multiplication action on the span
    of one left cell inside the ring."""

    def __init__(self, ring, ci):
        cd = ring.cd
        self.ring = ring
        self.cell_index = ci
        self.basis = list(cd.left_cells[ci])
        self.duflo = cd.d_of[self.basis[0]]
        if self.duflo is None:
            raise CellkitError(
                "left cell at %d has no distinguished involution" % self.basis[0]
            )
        pos = {y: i for i, y in enumerate(self.basis)}
        m = len(self.basis)
        inv = ring.inv
        action = {}
        for y in self.basis:
            for x, z, g in ring._right_index().get(y, ()):
                u = inv[z]
                if u not in pos:
                    ring.anomalies.append(
                        "cell %d is not stable: t_%d t_%d reaches %d"
                        % (ci, x, y, u)
                    )
                    continue
                mat = action.get(x)
                if mat is None:
                    mat = [[0] * m for _ in range(m)]
                    action[x] = mat
                mat[pos[u]][pos[y]] = g
        self.action = {x: tuple(tuple(r) for r in mat) for x, mat in action.items()}

    def matrix(self, w):
        mat = self.action.get(w)
        if mat is None:
            m = len(self.basis)
            return tuple(tuple(0 for _ in range(m)) for _ in range(m))
        return mat

    def trace(self, w):
        mat = self.action.get(w)
        if mat is None:
            return 0
        return sum(mat[i][i] for i in range(len(self.basis)))

    def traces(self):
        out = {}
        for w in self.action:
            t = self.trace(w)
            if t:
                out[w] = t
        return out

    def check_identity(self):
        """Two identity laws: the block idempotent over the containing
        two-sided cell acts as the identity matrix from the left, and the
        signed involution fixes every basis element from the right."""
        ring = self.ring
        cd = ring.cd
        block = ring.block_idempotents()[cd.tcell_of[self.duflo]]
        m = len(self.basis)
        total = [[0] * m for _ in range(m)]
        for d, nd in block.items():
            mat = self.action.get(d)
            if mat is None:
                continue
            for i in range(m):
                row = mat[i]
                for j in range(m):
                    total[i][j] += nd * row[j]
        for i in range(m):
            for j in range(m):
                if total[i][j] != (1 if i == j else 0):
                    return False
        td = ring.t(self.duflo, cd.nlead[self.duflo])
        for y in self.basis:
            if ring.multiply(ring.t(y), td) != ring.t(y):
                return False
        return True


class PhiMatrix:
    """Expansion of the signed canonical basis in the t-basis.

    Column w holds the image of the w-th signed canonical basis element;
    the entry at row z is the scan polynomial h_{w, d, z} scaled by the
    sign at z's distinguished involution d.  Nonzero entries can only
    sit on rows whose a-value is at least the column's, which makes the
    matrix block triangular when the basis is ordered by a-value."""

    def __init__(self, ring):
        cd = ring.cd
        self.ring = ring
        self.order = sorted(ring.carrier, key=lambda w: (cd.a[w], w))
        cols = {w: {} for w in ring.carrier}
        for ci, cell in enumerate(cd.left_cells):
            d = cd.d_of[cell[0]]
            if d is None:
                ring.anomalies.append(
                    "no distinguished involution for cell %d; its rows are missing"
                    % ci
                )
                continue
            nd = cd.nlead[d]
            _, rows = cd.rescan_column(d, set(cell))
            for w, kept in rows.items():
                col = cols[w]
                for z, h in kept.items():
                    if h is not None:
                        col[z] = pscale(h, nd)
        self.cols = cols
        if cols.get(0) != ring.one_packed():
            raise CellkitError(
                "identity column of the basis change does not give the ring identity"
            )

    def entry(self, z, w):
        return self.cols[w].get(z)

    def check_block_triangular(self):
        """Every nonzero entry must sit on a row with a-value at least
        the column's a-value."""
        a = self.ring.cd.a
        for w, col in self.cols.items():
            for z in col:
                if a[z] < a[w]:
                    return False
        return True

    def determinant(self, limit=200):
        """Exact determinant, or None when the matrix is larger than the
        limit (the computation grows too fast past desk scale)."""
        n = len(self.order)
        if n > limit:
            return None
        pos = {w: i for i, w in enumerate(self.order)}
        if self.check_block_triangular():
            a = self.ring.cd.a
            det = PONE
            i = 0
            while i < n:
                j = i
                while j < n and a[self.order[j]] == a[self.order[i]]:
                    j += 1
                block = [
                    [self.cols[self.order[c]].get(self.order[r]) for c in range(i, j)]
                    for r in range(i, j)
                ]
                det = pmul(det, _bareiss_det(block))
                if det is None:
                    return None
                i = j
            return det
        full = [
            [self.cols[w].get(z) for w in self.order]
            for z in self.order
        ]
        del pos
        return _bareiss_det(full)

    def unit_form(self, limit=200):
        """Report on the determinant's unit form: after clearing a power
        of v it must lie in 1 + v Z[v] up to sign."""
        det = self.determinant(limit)
        if det is None:
            return {"checked": False}
        lead = plow(det)
        return {
            "checked": True,
            "exponent": -pval(det),
            "lowest": lead,
            "unit": abs(lead) == 1,
            "det": pstr_packed(det),
        }


class JRing:
    """Ring structure on the leading coefficients of one scan."""

    def __init__(self, cd):
        if not hasattr(cd, "buckets"):
            raise CellkitError("run the scan before building the leading-term ring")
        self.cd = cd
        self.inv = cd.ctx.W.inv
        self.carrier = sorted(w for cell in cd.left_cells for w in cell)
        self.duflo_set = set(cd.duflo)
        self.anomalies = list(cd.anomalies)
        self._idx = None
        self._modules = {}

    def _right_index(self):
        if self._idx is None:
            idx = {}
            for (x, y), pairs in self.cd.gamma_by_xy().items():
                lst = idx.setdefault(y, [])
                for z, g in pairs:
                    lst.append((x, z, g))
            self._idx = {y: tuple(v) for y, v in idx.items()}
        return self._idx

    def t(self, w, c=1):
        return {w: c} if c else {}

    def one(self):
        return {d: self.cd.nlead[d] for d in self.cd.duflo}

    def one_packed(self):
        return {d: pscale(PONE, self.cd.nlead[d]) for d in self.cd.duflo}

    def multiply(self, a, b):
        gxy = self.cd.gamma_by_xy()
        inv = self.inv
        out = {}
        for x, cx in a.items():
            if not cx:
                continue
            for y, cy in b.items():
                c = cx * cy
                if not c:
                    continue
                for z, g in gxy.get((x, y), ()):
                    u = inv[z]
                    acc = out.get(u, 0) + c * g
                    if acc:
                        out[u] = acc
                    elif u in out:
                        del out[u]
        return out

    def trace_form(self, a):
        """The symmetrizing trace: the sign at each distinguished
        involution, zero on every other basis element."""
        nl = self.cd.nlead
        return sum(c * nl[d] for d, c in a.items() if d in self.duflo_set)

    def block_idempotents(self):
        blocks = [dict() for _ in self.cd.two_cells]
        for d in self.cd.duflo:
            blocks[self.cd.tcell_of[d]][d] = self.cd.nlead[d]
        return blocks

    def cell_module(self, ci):
        mod = self._modules.get(ci)
        if mod is None:
            mod = CellModule(self, ci)
            self._modules[ci] = mod
        return mod

    def phi_matrix(self):
        return PhiMatrix(self)

    def check(self, exhaustive=None, samples=400, triples=200, seed=0xC0DE):
        """Run the defining-law battery, recording any violation.

        Exhaustive mode covers every element and every pair; it is the
        default up to 48 elements.  Above that the pair checks draw the
        given number of samples from a seeded generator, so reruns see
        the same picks.
        """
        n = len(self.carrier)
        if exhaustive is None:
            exhaustive = n <= 48
        rng = random.Random(seed)
        elts = self.carrier
        if exhaustive:
            singles = list(elts)
            pairs = [(x, y) for x in elts for y in elts]
        else:
            singles = sorted(rng.sample(elts, min(n, samples)))
            pairs = [
                (rng.choice(elts), rng.choice(elts)) for _ in range(samples)
            ]
        self._check_identity(singles)
        self._check_blocks(singles)
        self._check_stability(exhaustive, rng, samples)
        self._check_trace_form(pairs)
        self._check_cell_criterion(pairs)
        self._check_associativity(rng, triples)
        return self

    def assert_clean(self):
        if self.anomalies:
            raise IdentityFailure("; ".join(self.anomalies[:4]))
        return self

    def _check_identity(self, singles):
        e = self.one()
        for w in singles:
            tw = self.t(w)
            if self.multiply(e, tw) != tw or self.multiply(tw, e) != tw:
                self.anomalies.append("identity fails on basis element %d" % w)

    def _check_blocks(self, singles):
        blocks = self.block_idempotents()
        for i, bi in enumerate(blocks):
            for j, bj in enumerate(blocks):
                want = bi if i == j else {}
                if self.multiply(bi, bj) != want:
                    self.anomalies.append(
                        "block idempotents %d and %d do not multiply to %s"
                        % (i, j, "themselves" if i == j else "zero")
                    )
        total = {}
        for b in blocks:
            for d, c in b.items():
                total[d] = total.get(d, 0) + c
        if total != self.one():
            self.anomalies.append("block idempotents do not sum to the identity")
        for b in blocks:
            for w in singles:
                tw = self.t(w)
                if self.multiply(b, tw) != self.multiply(tw, b):
                    self.anomalies.append(
                        "a block idempotent fails to commute with element %d" % w
                    )
                    break

    def _check_stability(self, exhaustive, rng, samples):
        cd = self.cd
        pool = []
        for cell in cd.left_cells:
            d = cd.d_of[cell[0]]
            if d is None:
                continue
            td = self.t(d, cd.nlead[d])
            for w in cell:
                pool.append((w, td))
        if not exhaustive:
            pool = rng.sample(pool, min(len(pool), samples))
        for w, td in pool:
            if self.multiply(self.t(w), td) != self.t(w):
                self.anomalies.append(
                    "right multiplication by its signed involution moves %d" % w
                )

    def _check_trace_form(self, pairs):
        inv = self.inv
        for x, y in pairs:
            got = self.trace_form(self.multiply(self.t(x), self.t(y)))
            want = 1 if y == inv[x] else 0
            if got != want:
                self.anomalies.append(
                    "trace form of t_%d t_%d is %d, expected %d" % (x, y, got, want)
                )

    def _check_cell_criterion(self, pairs):
        cd = self.cd
        inv = self.inv
        for x, y in pairs:
            same = cd.cell_of[x] == cd.cell_of[y]
            hit = bool(self.multiply(self.t(x), self.t(inv[y])))
            if same != hit:
                self.anomalies.append(
                    "product criterion disagrees with the cell partition on"
                    " (%d, %d)" % (x, y)
                )

    def _check_associativity(self, rng, triples):
        elts = self.carrier
        for _ in range(triples):
            x = rng.choice(elts)
            y = rng.choice(elts)
            z = rng.choice(elts)
            left = self.multiply(self.multiply(self.t(x), self.t(y)), self.t(z))
            right = self.multiply(self.t(x), self.multiply(self.t(y), self.t(z)))
            if left != right:
                self.anomalies.append(
                    "associativity fails on (%d, %d, %d)" % (x, y, z)
                )

    def records(self, modules=True):
        """JSON-ready dump: distinguished involutions with their signs,
        and per-cell integer action matrices."""
        cd = self.cd
        out = {
            "duflo": [int(d) for d in cd.duflo],
            "signs": {str(d): int(cd.nlead[d]) for d in cd.duflo},
            "cells": [],
        }
        for ci, cell in enumerate(cd.left_cells):
            rec = {"elements": [int(w) for w in cell]}
            d = cd.d_of[cell[0]]
            if d is not None:
                rec["duflo"] = int(d)
                if modules:
                    mod = self.cell_module(ci)
                    rec["action"] = {
                        str(w): [list(row) for row in mat]
                        for w, mat in sorted(mod.action.items())
                    }
            out["cells"].append(rec)
        return out
