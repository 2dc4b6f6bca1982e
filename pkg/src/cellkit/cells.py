"""Cell partitions and the degree data extracted from structure constants.

Left cells are the strongly connected components of the elementary
relation digraph: an edge w -> z whenever z appears in some c_s c_w.
Right cells come from the same graph through inverses, two-sided cells
from the union. A single pass over all columns of structure constants
then records, per element z, the maximal degree a(z) found in any
h_{x,y,z}, the leading coefficients attaining it, and the v=1 diagonal
values grouped by left cell.
"""

import multiprocessing
from concurrent.futures import ProcessPoolExecutor

from ._kernels import scan_column
from ._kernels.pure import NEGINF, PONE, pdeg, plead
from .errors import CellkitError


def tarjan(n, adj):
    """Strongly connected components, iterative. Components are numbered
    by their smallest node so the labeling is deterministic."""
    index = [0] * n
    low = [0] * n
    onstack = bytearray(n)
    stack = []
    counter = [1]
    comps = []
    for root in range(n):
        if index[root]:
            continue
        work = [(root, 0)]
        while work:
            node, ei = work[-1]
            if ei == 0:
                index[node] = low[node] = counter[0]
                counter[0] += 1
                stack.append(node)
                onstack[node] = 1
            edges = adj[node]
            advanced = False
            while ei < len(edges):
                nxt = edges[ei]
                ei += 1
                if not index[nxt]:
                    work[-1] = (node, ei)
                    work.append((nxt, 0))
                    advanced = True
                    break
                if onstack[nxt] and index[nxt] < low[node]:
                    low[node] = index[nxt]
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                members = []
                while True:
                    m = stack.pop()
                    onstack[m] = 0
                    members.append(m)
                    if m == node:
                        break
                comps.append(sorted(members))
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
    comps.sort(key=lambda c: c[0])
    comp_of = [-1] * n
    for i, c in enumerate(comps):
        for m in c:
            comp_of[m] = i
    return tuple(tuple(c) for c in comps), comp_of


def condensation_reach(cells, cell_of, adj):
    """Bitmask per cell of every cell reachable from it, itself included,
    following edges downward in the preorder. Nodes labeled -1 are
    outside the carrier and are skipped."""
    nc = len(cells)
    cadj = [set() for _ in range(nc)]
    for w in range(len(cell_of)):
        cw = cell_of[w]
        if cw < 0:
            continue
        for z in adj[w]:
            cz = cell_of[z]
            if cz != cw and cz >= 0:
                cadj[cw].add(cz)
    reach = [0] * nc
    state = [0] * nc
    for start in range(nc):
        if state[start]:
            continue
        work = [start]
        while work:
            c = work[-1]
            if state[c] == 0:
                state[c] = 1
                for d in cadj[c]:
                    if state[d] == 0:
                        work.append(d)
                continue
            work.pop()
            if state[c] == 2:
                continue
            m = 1 << c
            for d in cadj[c]:
                m |= reach[d]
            reach[c] = m
            state[c] = 2
    return reach


def pack_genrows(genrows):
    return {key: tuple(sorted(row.items())) for key, row in genrows.items()}


class ScanAccumulator:
    """Re-filters event streams so the kept pairs are exactly those whose
    degree equals the final per-element maximum, independent of how the
    columns were chunked."""

    def __init__(self, n):
        self.best = [NEGINF] * n
        self.pairs = [None] * n

    def feed(self, y, events):
        best = self.best
        pairs = self.pairs
        for z, x, deg, lead in events:
            if deg > best[z]:
                best[z] = deg
                pairs[z] = [(x, y, lead)]
            elif deg == best[z]:
                pairs[z].append((x, y, lead))


_FORK_STATE = {}


def _fork_scan(args):
    ys, gdeg0, gdeg10 = args
    st = _FORK_STATE
    gdeg = list(gdeg0)
    gdeg1 = list(gdeg10) if gdeg10 is not None else None
    w1mask = st["w1mask"]
    out = []
    for y in ys:
        in1 = gdeg1 is not None and w1mask[y]
        ev, ev1, tr1col, _ = scan_column(
            y, st["xlist"], st["xs"], st["xhat"], st["genrows"], gdeg,
            collect=None,
            w1mask=w1mask if in1 else None,
            gdeg1=gdeg1 if in1 else None,
        )
        sparse = [(x, t) for x, t in enumerate(tr1col) if t]
        out.append((y, ev, ev1, sparse))
    return out


class _ScanMixin:
    def _accumulate(self, acc, acc1, tr1, y, ev, ev1, tr1_sparse):
        acc.feed(y, ev)
        if acc1 is not None and ev1 is not None:
            acc1.feed(y, ev1)
        cy = self.cell_of[y]
        for x, t in tr1_sparse:
            tr1[x][cy] = tr1[x].get(cy, 0) + t

    def _finalize_duflo(self, carrier):
        ctx = self.ctx
        n = self.n
        cols = ctx.kl_columns()
        delta = [None] * n
        nlead = [0] * n
        for z in carrier:
            p = cols[z].get(0)
            if p is None:
                continue
            delta[z] = -pdeg(p)
            nlead[z] = plead(p)
        self.delta = delta
        self.nlead = nlead
        self.duflo = tuple(
            z for z in carrier
            if delta[z] is not None and self.a[z] == delta[z]
        )
        d_of = [None] * n
        for cell in self.left_cells:
            ds = [
                z for z in cell
                if delta[z] is not None and self.a[z] == delta[z]
            ]
            if len(ds) != 1:
                self.anomalies.append(
                    "left cell at %d has %d distinguished involutions"
                    % (cell[0], len(ds))
                )
                continue
            for z in cell:
                d_of[z] = ds[0]
        self.d_of = d_of
        self.nhat = [
            nlead[d_of[z]] if d_of[z] is not None else None
            for z in range(n)
        ]

    def gamma_by_xy(self):
        """Index the leading coefficients for multiplication: maps (x, y)
        to the pairs (z, g) with g the leading coefficient at z, so the
        product t_x t_y picks up g on the basis element at z inverse."""
        if self._gamma_by_xy is None:
            inv = self.ctx.W.inv
            table = {}
            for w in self._carrier():
                z = inv[w]
                for x, y, g in self.buckets[w]:
                    table.setdefault((x, y), []).append((z, g))
            self._gamma_by_xy = {k: tuple(sorted(v)) for k, v in table.items()}
        return self._gamma_by_xy

    def gamma(self, x, y, z):
        for zz, g in self.gamma_by_xy().get((x, y), ()):
            if zz == z:
                return g
        return 0


class CellData(_ScanMixin):
    """Cells and scan data for one Hecke context.

    The scan can run serially or over a process pool; events from worker
    chunks are merged in column order against a fresh accumulator, so the
    result never depends on the number of jobs.
    """

    def __init__(self, ctx):
        self.ctx = ctx
        self.n = ctx.W.nelts
        self._gamma_by_xy = None
        self.anomalies = []

    def _carrier(self):
        return range(self.n)

    def build_cells(self):
        ctx = self.ctx
        W = ctx.W
        n = self.n
        genrows = ctx.all_genrows()
        adj = [None] * n
        for w in range(n):
            nbrs = set()
            for s in range(W.rank):
                for z in genrows[(s, w)]:
                    if z != w:
                        nbrs.add(z)
            adj[w] = tuple(sorted(nbrs))
        self.adj = adj
        self.left_cells, self.cell_of = tarjan(n, adj)
        inv = W.inv
        adj_r = [tuple(sorted(inv[z] for z in adj[inv[w]])) for w in range(n)]
        self.adj_r = adj_r
        self.right_cells, self.rcell_of = tarjan(n, adj_r)
        adj2 = [tuple(sorted(set(adj[w]) | set(adj_r[w]))) for w in range(n)]
        self.two_cells, self.tcell_of = tarjan(n, adj2)
        self.lowerL = condensation_reach(self.left_cells, self.cell_of, adj)
        self.lowerR = condensation_reach(self.right_cells, self.rcell_of, adj_r)
        self.lower2 = condensation_reach(self.two_cells, self.tcell_of, adj2)
        self.genrows_packed = pack_genrows(genrows)
        return self

    def leq_L(self, y, w):
        """y below w in the left preorder."""
        return bool(self.lowerL[self.cell_of[w]] & (1 << self.cell_of[y]))

    def leq_R(self, y, w):
        return bool(self.lowerR[self.rcell_of[w]] & (1 << self.rcell_of[y]))

    def leq_LR(self, y, w):
        return bool(self.lower2[self.tcell_of[w]] & (1 << self.tcell_of[y]))

    def run_scan(self, w1=None, jobs=1):
        """One pass over every column. With a marked subgroup, a second
        accumulator sees only contributions with all three indices inside
        it, giving the restricted degree bound for comparison."""
        if not hasattr(self, "left_cells"):
            self.build_cells()
        W = self.ctx.W
        n = self.n
        xlist = list(range(n))
        xs = W.minldesc
        xhat = W.xhat
        genrows = self.genrows_packed
        w1mask = w1.mask if w1 is not None else None
        acc = ScanAccumulator(n)
        acc1 = ScanAccumulator(n) if w1 is not None else None
        tr1 = [{} for _ in range(n)]
        if jobs <= 1:
            gdeg = [NEGINF] * n
            gdeg1 = [NEGINF] * n if w1 is not None else None
            for y in range(n):
                in1 = w1 is not None and w1mask[y]
                ev, ev1, tr1col, _ = scan_column(
                    y, xlist, xs, xhat, genrows, gdeg,
                    collect=None,
                    w1mask=w1mask if in1 else None,
                    gdeg1=gdeg1 if in1 else None,
                )
                sparse = [(x, t) for x, t in enumerate(tr1col) if t]
                self._accumulate(acc, acc1, tr1, y, ev, ev1, sparse)
        else:
            _FORK_STATE.clear()
            _FORK_STATE.update(
                xlist=xlist, xs=xs, xhat=xhat, genrows=genrows, w1mask=w1mask,
            )
            step = max(1, (n + 4 * jobs - 1) // (4 * jobs))
            gdeg0 = [NEGINF] * n
            gdeg10 = [NEGINF] * n if w1 is not None else None
            chunks = [
                (list(range(lo, min(n, lo + step))), gdeg0, gdeg10)
                for lo in range(0, n, step)
            ]
            mp = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=jobs, mp_context=mp) as pool:
                results = list(pool.map(_fork_scan, chunks))
            _FORK_STATE.clear()
            for chunk in results:
                for y, ev, ev1, sparse in chunk:
                    self._accumulate(acc, acc1, tr1, y, ev, ev1, sparse)
        self.a = acc.best
        self.buckets = [tuple(p) if p else () for p in acc.pairs]
        self.tr1 = tr1
        if w1 is not None:
            self.a_restricted = acc1.best
            self.buckets_restricted = [tuple(p) if p else () for p in acc1.pairs]
        self._finalize_duflo(range(n))
        return self

    def rescan_column(self, y, collect):
        """Recompute one column, keeping the rows restricted to the given
        set of basis indices."""
        n = self.n
        W = self.ctx.W
        _, _, tr1col, rows = scan_column(
            y, list(range(n)), W.minldesc, W.xhat, self.genrows_packed,
            [NEGINF] * n, collect=collect,
        )
        return tr1col, rows


class SubgroupCellData(_ScanMixin):
    """Cells and scan data for the index-two reflection subgroup sitting
    inside a type B system whose first generator has weight zero. All
    indexing stays in ambient element numbers; the scan runs over the
    subgroup's own generator factorization."""

    def __init__(self, ctx, w1):
        if ctx.L[0] != 0:
            raise CellkitError("subgroup device needs weight zero on generator 0")
        self.ctx = ctx
        self.w1 = w1
        self.n = ctx.W.nelts
        self._gamma_by_xy = None
        self.anomalies = []

    def _carrier(self):
        return self.w1.elements

    def _filtered_scc(self, adj):
        mask = self.w1.mask
        cells, _ = tarjan(self.n, adj)
        kept = tuple(c for c in cells if mask[c[0]])
        cell_of = [-1] * self.n
        for i, c in enumerate(kept):
            for m in c:
                cell_of[m] = i
        return kept, cell_of

    def build(self, jobs=1):
        ctx = self.ctx
        W = ctx.W
        w1 = self.w1
        cols = ctx.kl_columns()
        mask = w1.mask
        genrows = {}
        for gi, gelt in enumerate(w1.s1elts):
            cg = cols[gelt]
            for x in w1.elements:
                if gi > 0:
                    row = ctx.genrow(gi, x)
                else:
                    row = ctx.expand_in_c(ctx.multiply_T(cg, dict(cols[x])))
                for z in row:
                    if not mask[z]:
                        raise CellkitError(
                            "product left the subgroup span at column %d" % x
                        )
                genrows[(gi, x)] = row
        self.genrows = genrows
        n = self.n
        adj = [()] * n
        for x in w1.elements:
            nbrs = set()
            for gi in range(len(w1.s1elts)):
                for z in genrows[(gi, x)]:
                    if z != x:
                        nbrs.add(z)
            adj[x] = tuple(sorted(nbrs))
        self.adj = adj
        self.left_cells, self.cell_of = self._filtered_scc(adj)
        inv = W.inv
        adj_r = [()] * n
        for x in w1.elements:
            adj_r[x] = tuple(sorted(inv[z] for z in adj[inv[x]]))
        self.adj_r = adj_r
        self.right_cells, self.rcell_of = self._filtered_scc(adj_r)
        adj2 = [()] * n
        for x in w1.elements:
            adj2[x] = tuple(sorted(set(adj[x]) | set(adj_r[x])))
        self.two_cells, self.tcell_of = self._filtered_scc(adj2)
        self.lowerL = condensation_reach(self.left_cells, self.cell_of, adj)
        self.lowerR = condensation_reach(self.right_cells, self.rcell_of, adj_r)
        self.lower2 = condensation_reach(self.two_cells, self.tcell_of, adj2)
        self._scan()
        self._finalize_duflo(w1.elements)
        return self

    def leq_L(self, y, w):
        return bool(self.lowerL[self.cell_of[w]] & (1 << self.cell_of[y]))

    def leq_R(self, y, w):
        return bool(self.lowerR[self.rcell_of[w]] & (1 << self.rcell_of[y]))

    def leq_LR(self, y, w):
        return bool(self.lower2[self.tcell_of[w]] & (1 << self.tcell_of[y]))

    def _scan(self):
        W = self.ctx.W
        w1 = self.w1
        n = self.n
        order = sorted(w1.elements, key=lambda x: (w1.ell1[x], x))
        xs = [None] * n
        xhat = [None] * n
        for x in order:
            if x == 0:
                continue
            g = w1.word1[x][0]
            xs[x] = g
            xhat[x] = W.mul(w1.s1elts[g], x)
        for x in order:
            if x == 0:
                continue
            row = self.genrows[(xs[x], xhat[x])]
            if row.get(x) != PONE:
                raise CellkitError(
                    "generator factorization not unitriangular at %d" % x
                )
        packed = pack_genrows(self.genrows)
        gdeg = [NEGINF] * n
        acc = ScanAccumulator(n)
        tr1 = [{} for _ in range(n)]
        for y in order:
            ev, _, tr1col, _ = scan_column(y, order, xs, xhat, packed, gdeg)
            sparse = [(x, t) for x, t in enumerate(tr1col) if t]
            self._accumulate(acc, None, tr1, y, ev, None, sparse)
        self.a = acc.best
        self.buckets = [tuple(p) if p else () for p in acc.pairs]
        self.tr1 = tr1
        self._order = order
        self._xs = xs
        self._xhat = xhat
        self._packed = packed

    def rescan_column(self, y, collect):
        _, _, tr1col, rows = scan_column(
            y, self._order, self._xs, self._xhat, self._packed,
            [NEGINF] * self.n, collect=collect,
        )
        return tr1col, rows
