"""Generic Iwahori-Hecke algebra with unequal parameters.

Elements are dicts {element index: packed polynomial} in the standard
T-basis. The canonical basis is built column by column: multiply the
previous column by a generator, then peel off lower canonical-basis
terms from the top of the support down. The bar-symmetric part of each
coefficient is the multiplicity to remove; the strictly-negative
remainder stays behind as an entry of the new column. The same peeling,
taking coefficients whole, expands any element in the canonical basis
once all columns are known.
"""

import heapq

from .coxeter import validate_weights
from .errors import CellkitError
from ._kernels.pure import (
    PONE,
    padd,
    pbar,
    pdeg,
    peval1,
    pmono,
    pmul,
    pmul_vsdiff,
    pneg,
    psplit,
)


def add_into(out, z, p):
    if p is None:
        return
    cur = out.get(z)
    if cur is None:
        out[z] = p
    else:
        val = padd(cur, p)
        if val is None:
            del out[z]
        else:
            out[z] = val


class HeckeContext:
    def __init__(self, system, weights):
        self.W = system
        self.L = validate_weights(system, weights)
        W = system
        self.wl = [sum(self.L[s] for s in W.canword[i]) for i in range(W.nelts)]
        self._lmul = None
        self._kl = None
        self._genrows = {}
        self._barT = {}
        self._classpolys = None

    def key(self):
        return (self.W.name, self.L)

    def lmul_table(self, s):
        if self._lmul is None:
            W = self.W
            self._lmul = [
                [W.mul(W.gen_elt[t], y) for y in range(W.nelts)]
                for t in range(W.rank)
            ]
        return self._lmul[s]

    # -- T-basis arithmetic ------------------------------------------

    def mult_gen_T(self, s, X):
        """T_s * X for X in T-coordinates."""
        ls = self.L[s]
        length = self.W.length
        tab = self.lmul_table(s)
        out = {}
        for y, p in X.items():
            sy = tab[y]
            add_into(out, sy, p)
            if length[sy] < length[y] and ls:
                add_into(out, y, pmul_vsdiff(p, ls))
        return out

    def mult_T_gen(self, X, s):
        """X * T_s for X in T-coordinates."""
        W = self.W
        ls = self.L[s]
        length = W.length
        g = W.gen_elt[s]
        out = {}
        for y, p in X.items():
            ys = W.mul(y, g)
            add_into(out, ys, p)
            if length[ys] < length[y] and ls:
                add_into(out, y, pmul_vsdiff(p, ls))
        return out

    def multiply_T(self, X, Y):
        """X * Y, folding the canonical words of Y's support into
        generator multiplications of X."""
        W = self.W
        out = {}
        for y, q in Y.items():
            acc = {}
            for z, p in X.items():
                t = pmul(p, q)
                if t is not None:
                    acc[z] = t
            for s in W.canword[y]:
                acc = self.mult_T_gen(acc, s)
            for z, p in acc.items():
                add_into(out, z, p)
        return out

    def bar_T(self, y):
        """bar(T_y) in T-coordinates, memoized bottom-up.

        bar is the ring involution with bar(v) = v^-1 and
        bar(T_s) = T_s^-1 = T_s - (v^L(s) - v^-L(s)) T_e, extended as a
        homomorphism along any reduced word for y.
        """
        memo = self._barT
        got = memo.get(y)
        if got is not None:
            return got
        W = self.W
        if y == 0:
            memo[0] = {0: PONE}
            return memo[0]
        word = W.canword[y]
        s = word[-1]
        head = W.mul(y, W.gen_elt[s])
        base = self.bar_T(head)
        out = self.mult_T_gen(base, s)
        ls = self.L[s]
        if ls:
            for z, p in base.items():
                add_into(out, z, pneg(pmul_vsdiff(p, ls)))
        memo[y] = out
        return out

    def bar_element(self, X):
        """bar of an arbitrary T-coordinate element."""
        out = {}
        for y, p in X.items():
            bp = pbar(p)
            for z, q in self.bar_T(y).items():
                add_into(out, z, pmul(bp, q))
        return out

    def sign_twist(self, X):
        """The A-linear map sending T_w to (-1)^len(w) bar(T_w)."""
        out = {}
        for y, p in X.items():
            if self.W.length[y] & 1:
                p = pneg(p)
            for z, q in self.bar_T(y).items():
                add_into(out, z, pmul(p, q))
        return out

    # -- canonical basis ---------------------------------------------

    def kl_columns(self):
        """T-coordinates of every canonical-basis element, indexed by
        element. Entry [w][y] is the coefficient of T_y in c_w."""
        if self._kl is not None:
            return self._kl
        W = self.W
        cols = [None] * W.nelts
        cols[0] = {0: PONE}
        for w in range(1, W.nelts):
            s = W.minldesc[w]
            u = W.xhat[w]
            X = self.mult_gen_T(s, cols[u])
            ls = self.L[s]
            if ls:
                shift = pmono(1, -ls)
                for y, p in cols[u].items():
                    add_into(X, y, pmul(p, shift))
            cols[w] = self._peel_new(X, w, cols)
        self._kl = cols
        return cols

    def _peel_new(self, X, w, cols):
        """X = c_w + sum of m_z c_z over shorter z, with every m_z
        bar-symmetric and the entries of c_w in strictly negative
        degrees. Returns the T-coordinates of c_w; the bar-symmetric
        multiplicities found on the way are recorded as the generator
        row of the defining pair."""
        length = self.W.length
        done = set()
        row = {w: PONE}
        heap = [(-length[z], -z) for z in X if z != w]
        heapq.heapify(heap)
        while heap:
            top = -heapq.heappop(heap)[1]
            if top in done or top not in X:
                continue
            done.add(top)
            neg, sym = psplit(X[top])
            if sym is None:
                continue
            row[top] = sym
            if neg is None:
                del X[top]
            else:
                X[top] = neg
            for y, q in cols[top].items():
                if y == top:
                    continue
                fresh = y not in X
                add_into(X, y, pneg(pmul(sym, q)))
                if fresh and y in X:
                    heapq.heappush(heap, (-length[y], -y))
        if X.get(w) != PONE:
            raise CellkitError(
                "column %d: top coefficient is %r" % (w, X.get(w))
            )
        for y, p in X.items():
            if y != w and pdeg(p) >= 0:
                raise CellkitError(
                    "column %d: entry at %d not strictly negative" % (w, y)
                )
        self._genrows[(self.W.minldesc[w], self.W.xhat[w])] = row
        return X

    def expand_in_c(self, X):
        """Coordinates of X in the canonical basis, by top-down peeling
        against the known columns. X is consumed."""
        cols = self.kl_columns()
        length = self.W.length
        out = {}
        heap = [(-length[z], -z) for z in X]
        heapq.heapify(heap)
        while heap:
            top = -heapq.heappop(heap)[1]
            if top not in X:
                continue
            f = X.pop(top)
            out[top] = f
            for y, q in cols[top].items():
                if y == top:
                    continue
                fresh = y not in X
                add_into(X, y, pneg(pmul(f, q)))
                if fresh and y in X:
                    heapq.heappush(heap, (-length[y], -y))
        return out

    def c_elt(self, w):
        return self.kl_columns()[w]

    def genrow(self, s, u):
        """Structure constants of multiplying the generator's canonical
        element into column u on the left: a dict {z: h} with
        c_s c_u = sum h_z c_z."""
        got = self._genrows.get((s, u))
        if got is not None:
            return got
        W = self.W
        cols = self.kl_columns()
        su = self.lmul_table(s)[u]
        ls = self.L[s]
        if W.length[su] < W.length[u] and ls:
            row = {u: (-ls, (1,) + (0,) * (2 * ls - 1) + (1,))}
        else:
            X = self.mult_gen_T(s, cols[u])
            if ls:
                shift = pmono(1, -ls)
                for y, p in cols[u].items():
                    add_into(X, y, pmul(p, shift))
            row = self.expand_in_c(X)
        self._genrows[(s, u)] = row
        return row

    def all_genrows(self):
        for s in range(self.W.rank):
            for u in range(self.W.nelts):
                self.genrow(s, u)
        return self._genrows

    def b_column(self, w):
        """Canonical-basis coordinates of (-1)^len(w) bar(T_w).

        Writing T_w through the canonical basis and applying bar fixes
        every canonical element, so only the coordinates get conjugated;
        no bar columns are ever materialized.
        """
        expansion = self.expand_in_c({w: PONE})
        sign = -1 if self.W.length[w] & 1 else 1
        out = {}
        for z, p in expansion.items():
            q = pbar(p)
            out[z] = pneg(q) if sign < 0 else q
        return out

    # -- certification -----------------------------------------------

    def certify_bar_invariance(self, elements=None):
        """Recheck bar(c_w) == c_w by direct computation through the
        memoized bar columns, independently of how the basis was built."""
        cols = self.kl_columns()
        if elements is None:
            elements = range(self.W.nelts)
        for w in elements:
            if self.bar_element(cols[w]) != cols[w]:
                raise CellkitError("canonical element %d is not bar-invariant" % w)
        return True

    # -- class polynomials -------------------------------------------

    def class_polynomials(self):
        """For every element w, the coefficients f_{w,C} expressing the
        trace of T_w through the traces at the minimal-length class
        representatives: a list over elements of dicts {class: packed}."""
        if self._classpolys is not None:
            return self._classpolys
        W = self.W
        cls = W.conj_classes
        class_of = W.class_of
        minlen = [W.length[c[0]] for c in cls]
        f = [None] * W.nelts
        for w in range(W.nelts):
            lw = W.length[w]
            if lw == minlen[class_of[w]]:
                f[w] = {class_of[w]: PONE}
                continue
            # breadth-first through length-preserving conjugations by
            # generators until some shift strictly drops the length
            found = None
            seen = {w}
            frontier = [w]
            parentless = True
            while found is None:
                nxt = []
                for x in frontier:
                    for s in range(W.rank):
                        g = W.gen_elt[s]
                        y = W.mul(W.mul(g, x), g)
                        if W.length[y] < lw:
                            found = (x, s)
                            break
                        if W.length[y] == lw and y not in seen:
                            seen.add(y)
                            nxt.append(y)
                    if found:
                        break
                if found or not nxt:
                    break
                frontier = nxt
            if found is None:
                raise CellkitError(
                    "no length-reducing conjugation found for element %d" % w
                )
            x, s = found
            g = W.gen_elt[s]
            u = W.mul(W.mul(g, x), g)
            us = W.mul(g, x)
            fu = f[u]
            fus = f[us]
            if fu is None or fus is None:
                raise CellkitError("class polynomial recursion out of order")
            ls = self.L[s]
            out = dict(fu)
            for c, p in fus.items():
                add_into(out, c, pmul_vsdiff(p, ls) if ls else None)
            f[w] = out
        self._classpolys = f
        return f

    def class_poly_check(self):
        """f_{w,C} at v=1 must be the indicator of w's own class."""
        f = self.class_polynomials()
        class_of = self.W.class_of
        for w in range(self.W.nelts):
            for c, p in f[w].items():
                want = 1 if c == class_of[w] else 0
                if peval1(p) != want:
                    return False
            if class_of[w] not in f[w]:
                return False
        return True
