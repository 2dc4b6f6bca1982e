from collections import Counter

import networkx as nx
import pytest

from cellkit._kernels.pure import pcoeff, pdeg, peval1
from cellkit.cells import CellData, SubgroupCellData, tarjan
from cellkit.coxeter import W1Context, coxeter_system
from cellkit.hecke import HeckeContext


def brute_h_table(ctx):
    W = ctx.W
    cols = ctx.kl_columns()
    h = {}
    for x in range(W.nelts):
        for y in range(W.nelts):
            prod = ctx.multiply_T(cols[x], cols[y])
            h[(x, y)] = ctx.expand_in_c(prod)
    return h


def built(spec, wts, **kw):
    W = coxeter_system(**spec)
    ctx = HeckeContext(W, wts)
    cd = CellData(ctx)
    cd.build_cells()
    cd.run_scan(**kw)
    return ctx, cd


BRUTE = [
    ({"kind": "A", "rank": 2}, (1, 1)),
    ({"kind": "B", "rank": 2}, (2, 1)),
    ({"kind": "B", "rank": 2}, (0, 1)),
    ({"kind": "I2", "m": 5}, (1, 1)),
]


@pytest.mark.parametrize("spec, wts", BRUTE)
def test_scan_against_brute_force(spec, wts):
    ctx, cd = built(spec, wts)
    W = ctx.W
    h = brute_h_table(ctx)
    n = W.nelts
    amax = [None] * n
    pairs = [set() for _ in range(n)]
    for (x, y), row in h.items():
        for z, p in row.items():
            d = pdeg(p)
            if amax[z] is None or d > amax[z]:
                amax[z] = d
                pairs[z] = set()
            if d == amax[z]:
                pairs[z].add((x, y, pcoeff(p, d)))
    assert cd.a == amax
    for z in range(n):
        assert set(cd.buckets[z]) == pairs[z]
    tr1 = [dict() for _ in range(n)]
    for (x, y), row in h.items():
        t = peval1(row.get(y))
        if t:
            c = cd.cell_of[y]
            tr1[x][c] = tr1[x].get(c, 0) + t
    assert cd.tr1 == tr1
    # leading coefficients against their definition
    inv = W.inv
    for x in range(n):
        for y in range(n):
            row = h[(x, y)]
            for z in range(n):
                expect = pcoeff(row.get(inv[z]), cd.a[inv[z]]) if inv[z] in row else 0
                assert cd.gamma(x, y, z) == expect


@pytest.mark.parametrize("spec, wts", BRUTE)
def test_cells_against_networkx(spec, wts):
    ctx, cd = built(spec, wts)
    W = ctx.W
    g = nx.DiGraph()
    g.add_nodes_from(range(W.nelts))
    for w in range(W.nelts):
        for s in range(W.rank):
            for z in ctx.genrow(s, w):
                if z != w:
                    g.add_edge(w, z)
    want = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(g))
    assert sorted(cd.left_cells) == want
    # preorder against reachability
    for y in range(W.nelts):
        for w in range(W.nelts):
            assert cd.leq_L(y, w) == nx.has_path(g, w, y)


def test_a2_cell_structure():
    ctx, cd = built({"kind": "A", "rank": 2}, (1, 1))
    assert sorted(len(c) for c in cd.left_cells) == [1, 1, 2, 2]
    assert sorted(len(c) for c in cd.two_cells) == [1, 1, 4]
    assert Counter(cd.a) == Counter({0: 1, 1: 4, 3: 1})
    assert cd.duflo == (0, 1, 2, 5)
    assert cd.nhat == [1, 1, 1, 1, 1, 1]
    w0 = 5
    assert cd.a[w0] == ctx.wl[w0]


def test_b2_unequal_cell_counts():
    ctx, cd = built({"kind": "B", "rank": 2}, (2, 1))
    assert sorted(len(c) for c in cd.left_cells) == [1, 1, 1, 1, 2, 2]
    assert cd.a[0] == 0
    for s in range(2):
        g = ctx.W.gen_elt[s]
        assert cd.a[g] == ctx.L[s]
    w0 = ctx.W.nelts - 1
    assert cd.a[w0] == ctx.wl[w0]


def test_right_cells_are_inverted_left_cells():
    ctx, cd = built({"kind": "B", "rank": 2}, (2, 1))
    inv = ctx.W.inv
    want = sorted(tuple(sorted(inv[x] for x in c)) for c in cd.left_cells)
    assert sorted(cd.right_cells) == want


def test_tr1_identity_row_counts_cells():
    for spec, wts in BRUTE:
        ctx, cd = built(spec, wts)
        for i, cell in enumerate(cd.left_cells):
            assert cd.tr1[0].get(i, 0) == len(cell)


def test_parallel_scan_matches_serial():
    ctx, cd = built({"kind": "B", "rank": 2}, (2, 1))
    ctx2, cd2 = built({"kind": "B", "rank": 2}, (2, 1), jobs=2)
    assert cd.a == cd2.a
    assert cd.buckets == cd2.buckets
    assert cd.tr1 == cd2.tr1


def test_duflo_unique_per_left_cell():
    for spec, wts in BRUTE + [({"kind": "B", "rank": 3}, (1, 1, 1))]:
        ctx, cd = built(spec, wts)
        assert cd.anomalies == []
        for cell in cd.left_cells:
            ds = [z for z in cell if z in set(cd.duflo)]
            assert len(ds) == 1


def test_subgroup_d3_matches_a3():
    W = coxeter_system("B", rank=3)
    ctx = HeckeContext(W, (0, 1, 1))
    w1 = W1Context(3, 1)
    sub = SubgroupCellData(ctx, w1)
    sub.build()
    assert sub.anomalies == []
    sizes = sorted(len(c) for c in sub.left_cells)
    assert sizes == [1, 1, 2, 2, 3, 3, 3, 3, 3, 3]
    avals = Counter(sub.a[x] for x in w1.elements)
    assert avals == Counter({0: 1, 1: 9, 2: 4, 3: 9, 6: 1})
    assert len(sub.duflo) == len(sub.left_cells)


def test_subgroup_restricted_scan_agreement():
    W = coxeter_system("B", rank=3)
    ctx = HeckeContext(W, (0, 1, 1))
    w1 = W1Context(3, 1)
    cd = CellData(ctx)
    cd.build_cells()
    cd.run_scan(w1=w1)
    sub = SubgroupCellData(ctx, w1)
    sub.build()
    for x in w1.elements:
        assert cd.a_restricted[x] == sub.a[x]
    for x in w1.elements:
        assert set(cd.buckets_restricted[x]) == set(sub.buckets[x])


def test_backends_agree(monkeypatch):
    import cellkit.cells as cells_mod
    from cellkit._kernels import pure

    ctx, cd = built({"kind": "B", "rank": 3}, (2, 1, 1))
    monkeypatch.setattr(cells_mod, "scan_column", pure.scan_column)
    W = coxeter_system("B", rank=3)
    ctx2 = HeckeContext(W, (2, 1, 1))
    cd2 = CellData(ctx2)
    cd2.build_cells()
    cd2.run_scan()
    assert cd.a == cd2.a
    assert cd.buckets == cd2.buckets
    assert cd.tr1 == cd2.tr1
    assert cd.duflo == cd2.duflo


def test_tarjan_small_graph():
    adj = [(1,), (0, 2), (3,), (2,), ()]
    comps, comp_of = tarjan(5, adj)
    assert comps == ((0, 1), (2, 3), (4,))
    assert comp_of == [0, 0, 1, 1, 2]
