"""Ordinary character data extracted from the leading-term ring.

Specializing the signed canonical basis at v=1 identifies the group
algebra with the ring spanned by the basis elements t_z, and the base
change between the two is block triangular along the a-function strata
with invertible diagonal blocks. Inverting it stratum by stratum yields,
for every irreducible character E and every z, the trace theta(z, E) of
t_z on the matching simple module. Everything downstream lives here:
left-cell module characters computed by two independent routes, traces
of the standard basis elements of the generic algebra, Schur elements,
the block partition of the irreducibles by two-sided cell, and central
characters.
"""

import math
from fractions import Fraction

from ._kernels.pure import NEGINF, PONE, padd, pdeg, peval1, pmul
from .chartable import _row_sort_key, chartable_for, w1_char_table
from .cyclo import CycloReal
from .errors import (
    CellkitError,
    NonPositiveSchur,
    RouteMismatch,
    SingularMatrix,
    SingularSpecialization,
)
from .exactlin import CycloField, QQField, RatFnField, solve_int_exact, solve_linear
from .ratfun import RationalFn


def _as_exact_int(x):
    """The value as a plain int, or None when it is not a rational integer."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else None
    if isinstance(x, CycloReal):
        if not x.is_rational():
            return None
        q = x.as_rational()
        return int(q) if q.denominator == 1 else None
    return None


def _is_positive(x):
    if isinstance(x, CycloReal):
        return x.sign() > 0
    return x > 0


def _inverse(x):
    if isinstance(x, CycloReal):
        return x.inverse()
    return Fraction(1) / Fraction(x)


def _field_for(values):
    """A field adapter rich enough for the given scalars."""
    conductor = 1
    for x in values:
        if isinstance(x, CycloReal) and not x.is_rational():
            conductor = math.lcm(conductor, x.n)
    if conductor == 1:
        return QQField
    return CycloField(conductor)


def _packed_pairs(p):
    if p is None:
        return ()
    val, coeffs = p
    return tuple((val + i, c) for i, c in enumerate(coeffs) if c)


def _dadd_packed(acc, p, scale):
    if p is None:
        return
    val, coeffs = p
    for i, c in enumerate(coeffs):
        if c:
            e = val + i
            cur = acc.get(e, 0)
            cur = cur + scale * c
            if cur == 0:
                acc.pop(e, None)
            else:
                acc[e] = cur


def _dmul(d1, d2):
    out = {}
    for e1, c1 in d1.items():
        for e2, c2 in d2.items():
            e = e1 + e2
            cur = out.get(e, 0)
            cur = cur + c1 * c2
            if cur == 0:
                out.pop(e, None)
            else:
                out[e] = cur
    return out


def _dscale(d, c):
    out = {}
    for e, x in d.items():
        y = c * x
        if y != 0:
            out[e] = y
    return out


def _deval1(d):
    acc = 0
    for x in d.values():
        acc = acc + x
    return acc


def _as_rational(x):
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, CycloReal) and x.is_rational():
        return x.as_rational()
    return None


def _rational_fn(d, shift=0):
    """A Laurent dict with rational coefficients as a rational function."""
    if not d:
        return RationalFn.zero()
    lo = min(d)
    hi = max(d)
    coeffs = [_as_rational(d.get(e, 0)) for e in range(lo, hi + 1)]
    if any(c is None for c in coeffs):
        raise CellkitError("coefficients are not rational")
    return RationalFn.ratio(lo + shift, coeffs, [Fraction(1)])


def _value_str(x):
    q = _as_rational(x)
    if q is not None:
        return str(int(q)) if q.denominator == 1 else str(q)
    return str(x.reduced())


def _laurent_str(d):
    if not d:
        return "0"
    parts = []
    for e in sorted(d):
        parts.append("%s*v^%d" % (_value_str(d[e]), e))
    return " + ".join(parts)


def _json_label(label):
    if isinstance(label, tuple):
        return [_json_label(x) for x in label]
    return label


class _RepCore:
    """Shared pipeline: traces on the t-basis, cell characters, blocks.

    Subclasses provide the carrier (all elements, or the index-two
    subgroup), the class map, the length parity, and the character table
    aligned to that carrier's conjugacy classes.
    """

    def _class_index(self, y):
        raise NotImplementedError

    def _parity(self, y):
        raise NotImplementedError

    def _longest(self):
        raise NotImplementedError

    def _check_alignment(self):
        table = self.table
        for k, rep in enumerate(table.class_reps):
            if self._class_index(rep) != k:
                raise CellkitError("character table classes are misaligned")

    def _build_core(self):
        cd = self.cd
        ctx = self.ctx
        W = ctx.W
        inv = W.inv
        table = self.table
        carrier = self.carrier
        if cd.anomalies:
            raise CellkitError(
                "cell data carries anomalies: %s" % "; ".join(cd.anomalies)
            )
        self._check_alignment()
        nch = table.nchars
        ncl = table.nclasses

        nhat_inv = {}
        for z in carrier:
            d = cd.d_of[inv[z]]
            if d is None:
                raise CellkitError("no distinguished involution behind %d" % z)
            nhat_inv[z] = cd.nlead[d]
        self.nhat_inv = nhat_inv

        # Signed base change out of the standard basis, one column per
        # class representative; indexed by position in the class list.
        bcols = []
        mask = self._carrier_mask()
        for rep in table.class_reps:
            col = ctx.b_column(rep)
            for x in col:
                if not mask[x]:
                    raise CellkitError(
                        "base change column %d leaves the carrier" % rep
                    )
            bcols.append(col)
        self.bcols = bcols
        by_x = {}
        for k, col in enumerate(bcols):
            for x in col:
                by_x.setdefault(x, []).append(k)

        # One pass per distinguished involution d: the structure constant
        # column h_{x, d, z} restricted to z in the left cell of d feeds
        # both the v=1 base change into the t-basis and the generic trace
        # accumulators.
        phi = {w: {} for w in carrier}
        ymat = [dict() for _ in range(ncl)]
        for d in cd.duflo:
            cell = cd.left_cells[cd.cell_of[d]]
            _, rows = cd.rescan_column(d, set(cell))
            for x, row in rows.items():
                if not row:
                    continue
                px = phi[x]
                for z, h in row.items():
                    t = peval1(h)
                    if t:
                        px[z] = nhat_inv[z] * t
                for k in by_x.get(x, ()):
                    coef = bcols[k][x]
                    acc = ymat[k]
                    for z, h in row.items():
                        acc[z] = padd(acc.get(z), pmul(coef, h))
        self.phi_cols = phi
        self._ymat = ymat

        # Character of each signed canonical basis element at v=1,
        # aggregated over classes first.
        cols = ctx.kl_columns()
        xmat = [dict() for _ in range(nch)]
        for w in carrier:
            agg = {}
            for y, p in cols[w].items():
                t = peval1(p)
                if not t:
                    continue
                if self._parity(y):
                    t = -t
                k = self._class_index(y)
                agg[k] = agg.get(k, 0) + t
            for e in range(nch):
                row = table.rows[e]
                acc = 0
                for k, cnt in agg.items():
                    acc = acc + row[k] * cnt
                xmat[e][w] = acc

        self._solve_theta(xmat)
        self._build_blocks()
        self._build_cell_characters()
        self._check_regular_representation()
        self._check_longest_element_twist()

    def _carrier_mask(self):
        raise NotImplementedError

    def _solve_theta(self, xmat):
        cd = self.cd
        table = self.table
        nch = table.nchars
        by_a = {}
        for z in self.carrier:
            av = cd.a[z]
            if av <= NEGINF:
                raise CellkitError("element %d has no a-value" % z)
            by_a.setdefault(av, []).append(z)
        theta = [dict() for _ in range(nch)]
        self._scalar_field = _field_for(
            [x for row in table.rows for x in row]
        )
        for a0 in sorted(by_a, reverse=True):
            zs = sorted(by_a[a0])
            pos = {z: i for i, z in enumerate(zs)}
            m = len(zs)
            M = [[0] * m for _ in range(m)]
            rhs = [[xmat[e][w] for w in zs] for e in range(nch)]
            for i, w in enumerate(zs):
                for z, c in self.phi_cols[w].items():
                    j = pos.get(z)
                    if j is not None:
                        M[i][j] = c
                        continue
                    az = cd.a[z]
                    if az <= a0:
                        raise CellkitError(
                            "base change entry (%d, %d) breaks the "
                            "stratification" % (z, w)
                        )
                    for e in range(nch):
                        te = theta[e].get(z, 0)
                        if te != 0:
                            rhs[e][i] = rhs[e][i] - c * te
            try:
                sols = self._solve_block(M, rhs)
            except SingularMatrix as exc:
                raise SingularSpecialization(
                    "t-basis base change is singular at v=1 on the a=%d "
                    "stratum" % a0
                ) from exc
            for e in range(nch):
                for j, z in enumerate(zs):
                    theta[e][z] = sols[e][j]
        self.theta = theta

    def _solve_block(self, M, rhs):
        if all(isinstance(x, int) for row in rhs for x in row):
            m = len(M)
            B = [[rhs[e][i] for e in range(len(rhs))] for i in range(m)]
            X = solve_int_exact(M, B)
            return [[X[i][e] for i in range(m)] for e in range(len(rhs))]
        return solve_linear(M, rhs, self._scalar_field)

    def theta_value(self, z, e):
        return self.theta[e].get(z, 0)

    def _build_blocks(self):
        cd = self.cd
        table = self.table
        nt = len(cd.two_cells)
        dsets = [[] for _ in range(nt)]
        for d in cd.duflo:
            dsets[cd.tcell_of[d]].append(d)
        block_a = []
        for t, cell in enumerate(cd.two_cells):
            avs = {cd.a[z] for z in cell}
            if len(avs) != 1:
                raise CellkitError(
                    "a-function is not constant on two-sided cell %d" % t
                )
            block_a.append(avs.pop())
        self.block_a = block_a
        block_of = []
        for e in range(table.nchars):
            hits = []
            for t in range(nt):
                val = 0
                for d in dsets[t]:
                    val = val + cd.nlead[d] * self.theta[e][d]
                if val != 0:
                    hits.append((t, val))
            if len(hits) != 1:
                raise CellkitError(
                    "character %d meets %d two-sided cells through its "
                    "t-traces" % (e, len(hits))
                )
            t, val = hits[0]
            if val != table.dims[e]:
                raise CellkitError(
                    "block projection of character %d has trace %s, "
                    "expected its degree %d" % (e, val, table.dims[e])
                )
            block_of.append(t)
        self.block_of = block_of
        chars_of = {}
        for e, t in enumerate(block_of):
            chars_of.setdefault(t, []).append(e)
        self.chars_of_block = chars_of

    def _build_cell_characters(self):
        cd = self.cd
        table = self.table
        ncl = table.nclasses
        bevals = [
            {x: peval1(p) for x, p in col.items()} for col in self.bcols
        ]
        rows = []
        mults = []
        for ci, cell in enumerate(cd.left_cells):
            row = []
            for k in range(ncl):
                acc = 0
                for x, t in bevals[k].items():
                    c = cd.tr1[x].get(ci)
                    if c:
                        acc = acc + t * c
                row.append(acc)
            row = tuple(row)
            dec = table.decompose(row)
            d = cd.d_of[cell[0]]
            other = {}
            for e in range(table.nchars):
                val = cd.nlead[d] * self.theta[e].get(d, 0)
                iv = _as_exact_int(val)
                if iv is None:
                    raise RouteMismatch(
                        "trace of t_%d on character %d is not a rational "
                        "integer" % (d, e)
                    )
                if iv:
                    other[e] = iv
            if dec != other:
                raise RouteMismatch(
                    "left cell %d: base-change route gives %r, t-trace "
                    "route gives %r" % (ci, dec, other)
                )
            blocks = {self.block_of[e] for e in dec}
            if len(blocks) > 1:
                raise CellkitError(
                    "left cell %d mixes characters from blocks %r"
                    % (ci, sorted(blocks))
                )
            rows.append(row)
            mults.append(dec)
        self.cell_rows = rows
        self.cell_mults = mults

    def _check_regular_representation(self):
        table = self.table
        for e in range(table.nchars):
            total = sum(m.get(e, 0) for m in self.cell_mults)
            if total != table.dims[e]:
                raise CellkitError(
                    "character %d appears %d times across left cells, "
                    "expected %d" % (e, total, table.dims[e])
                )

    def _check_longest_element_twist(self):
        cd = self.cd
        W = self.ctx.W
        w0 = self._longest()
        perm = self.table.tensor_sign_perm()
        for ci, cell in enumerate(cd.left_cells):
            image = sorted(W.mul(x, w0) for x in cell)
            cj = cd.cell_of[image[0]]
            if sorted(cd.left_cells[cj]) != image:
                raise CellkitError(
                    "left cell %d times the longest element is not a "
                    "left cell" % ci
                )
            want = {perm[e]: m for e, m in self.cell_mults[ci].items()}
            if want != self.cell_mults[cj]:
                raise CellkitError(
                    "sign twist mismatch between left cells %d and %d"
                    % (ci, cj)
                )

    def _check_trace_form(self):
        """The linear form picking the coefficient of the identity sends
        t_z to its p-leading coefficient on distinguished involutions and
        to zero elsewhere; its expansion through the simple modules must
        agree."""
        cd = self.cd
        duflo = set(cd.duflo)
        finv = self.schur_finv
        nch = self.table.nchars
        for z in self.carrier:
            acc = 0
            for e in range(nch):
                te = self.theta[e].get(z, 0)
                if te != 0:
                    acc = acc + te * finv[e]
            want = cd.nlead[z] if z in duflo else 0
            if acc != want:
                raise CellkitError(
                    "trace form mismatch at %d: %s vs %s" % (z, acc, want)
                )

    def _check_cell_weights(self):
        """Each left cell's multiplicities, weighted by the inverse Schur
        leading coefficients, sum to one."""
        finv = self.schur_finv
        for ci, dec in enumerate(self.cell_mults):
            acc = 0
            for e, mult in dec.items():
                acc = acc + mult * finv[e]
            if acc != 1:
                raise CellkitError(
                    "weighted multiplicities of left cell %d sum to %s"
                    % (ci, acc)
                )

    def irreducible_cells(self):
        """Indices of left cells whose character is irreducible."""
        return [
            ci for ci, dec in enumerate(self.cell_mults)
            if len(dec) == 1 and next(iter(dec.values())) == 1
        ]

    def refined_labels(self):
        """Labels refined by leading exponent and degree; partition-style
        labels are kept as they are."""
        table = self.table
        if self._keep_labels():
            return list(table.labels)
        keyed = sorted(
            range(table.nchars),
            key=lambda e: (
                self.a_char[e],
                table.dims[e],
                _row_sort_key(table.rows[e]),
            ),
        )
        refined = [None] * table.nchars
        seen = {}
        for e in keyed:
            head = (self.a_char[e], table.dims[e])
            j = seen.get(head, 0)
            seen[head] = j + 1
            refined[e] = head + (j,)
        return refined

    def _keep_labels(self):
        raise NotImplementedError

    def irr_records(self, family_of=None):
        """One JSON-ready record per irreducible character."""
        table = self.table
        labels = self.refined_labels()
        out = []
        for e in range(table.nchars):
            rec = {
                "label": _json_label(labels[e]),
                "dim": table.dims[e],
                "a": self.a_char[e],
                "f": _value_str(self.f_char[e]),
                "block": self.block_of[e],
            }
            if family_of is not None:
                rec["family"] = family_of[e]
            out.append(rec)
        return out

    def cell_records(self):
        """One JSON-ready record per left cell."""
        labels = self.refined_labels()
        out = []
        for ci, cell in enumerate(self.cd.left_cells):
            character = {
                str(_json_label(labels[e])): m
                for e, m in sorted(self.cell_mults[ci].items())
            }
            out.append({
                "elements": sorted(cell),
                "d": self.cd.d_of[cell[0]],
                "character": character,
            })
        return out


class WRepData(_RepCore):
    """Traces, cell characters, Schur elements, and blocks for the full
    Coxeter group of a Hecke context with built cell data."""

    def __init__(self, ctx, cd, table=None):
        self.ctx = ctx
        self.cd = cd
        self.W = ctx.W
        self.table = table if table is not None else chartable_for(ctx.W)
        self.carrier = list(range(ctx.W.nelts))
        self._central = None
        self._central_laurent = None

    def _class_index(self, y):
        return self.W.class_of[y]

    def _parity(self, y):
        return self.W.length[y] & 1

    def _longest(self):
        return self.W.w0

    def _carrier_mask(self):
        return [True] * self.W.nelts

    def _keep_labels(self):
        return self.W.kind in ("A", "B")

    def build(self):
        self._build_core()
        self._build_schur()
        self._check_trace_form()
        self._check_cell_weights()
        return self

    def _build_schur(self):
        ctx = self.ctx
        table = self.table
        cd = self.cd
        W = self.W
        nch = table.nchars
        ncl = table.nclasses
        inv = W.inv
        fpol = ctx.class_polynomials()
        G = [[None] * ncl for _ in range(ncl)]
        for w in range(W.nelts):
            fw = fpol[w]
            fwi = fpol[inv[w]]
            for ci, p in fw.items():
                row = G[ci]
                for cj, q in fwi.items():
                    row[cj] = padd(row[cj], pmul(p, q))

        traces = []
        for e in range(nch):
            theta_e = self.theta[e]
            per_class = []
            for k in range(ncl):
                acc = {}
                for u, p in self._ymat[k].items():
                    te = theta_e.get(u, 0)
                    if te == 0:
                        continue
                    _dadd_packed(acc, p, self.nhat_inv[u] * te)
                if _deval1(acc) != table.rows[e][k]:
                    raise RouteMismatch(
                        "generic trace of character %d at class %d does "
                        "not specialize to its table value" % (e, k)
                    )
                per_class.append(acc)
            traces.append(per_class)
        self.class_traces = traces

        schur = []
        a_char = []
        f_char = []
        for e in range(nch):
            tr = traces[e]
            total = {}
            for ci in range(ncl):
                row = {}
                for cj in range(ncl):
                    g = G[ci][cj]
                    if g is None or not tr[cj]:
                        continue
                    for eg, cg in _packed_pairs(g):
                        for ex, cx in tr[cj].items():
                            ee = eg + ex
                            cur = row.get(ee, 0)
                            cur = cur + cg * cx
                            if cur == 0:
                                row.pop(ee, None)
                            else:
                                row[ee] = cur
                if not row:
                    continue
                for ee, cc in _dmul(tr[ci], row).items():
                    cur = total.get(ee, 0)
                    cur = cur + cc
                    if cur == 0:
                        total.pop(ee, None)
                    else:
                        total[ee] = cur
            dim = table.dims[e]
            cE = _dscale(total, Fraction(1, dim))
            if _deval1(cE) != Fraction(W.nelts, dim):
                raise CellkitError(
                    "Schur element of character %d does not specialize "
                    "to group order over degree" % e
                )
            lo = min(cE)
            if lo > 0 or lo % 2:
                raise CellkitError(
                    "Schur element of character %d has valuation %d"
                    % (e, lo)
                )
            f = cE[lo]
            if not _is_positive(f):
                raise NonPositiveSchur(
                    "character %d has leading Schur coefficient %s"
                    % (e, _value_str(f))
                )
            aE = (-lo) // 2
            if aE != self.block_a[self.block_of[e]]:
                raise CellkitError(
                    "leading exponent %d of character %d disagrees with "
                    "the a-value %d of its two-sided cell"
                    % (aE, e, self.block_a[self.block_of[e]])
                )
            schur.append(cE)
            a_char.append(aE)
            f_char.append(f)
        self.schur = schur
        self.a_char = a_char
        self.f_char = f_char
        self.schur_finv = [_inverse(f) for f in f_char]

    def schur_str(self, e):
        return _laurent_str(self.schur[e])

    def _central_system(self):
        """Matrix and right-hand scale of the defining identity for the
        central characters, over rational functions in v."""
        table = self.table
        ctx = self.ctx
        for row in table.rows:
            for x in row:
                if _as_rational(x) is None:
                    raise CellkitError(
                        "central characters need a rational character table"
                    )
        nch = table.nchars
        M = []
        for e in range(nch):
            row = []
            for k, rep in enumerate(table.class_reps):
                row.append(_rational_fn(self.class_traces[e][k], ctx.wl[rep]))
            M.append(row)
        cfns = [_rational_fn(self.schur[e]) for e in range(nch)]
        return M, cfns

    def central_characters(self):
        """Values of each irreducible's central character on the class
        sums, solved from the trace identity with the v**L(w) weighting.

        Verified against the ordinary central characters at v=1; a failure
        there is raised, not repaired."""
        if self._central is not None:
            return self._central
        table = self.table
        nch = table.nchars
        M, cfns = self._central_system()
        rhs = []
        for e in range(nch):
            vec = [RationalFn.zero()] * nch
            vec[e] = cfns[e]
            rhs.append(vec)
        omega = solve_linear(M, rhs, RatFnField)
        laurent = []
        for e in range(nch):
            dim = table.dims[e]
            flags = []
            for k in range(table.nclasses):
                val = omega[e][k]
                want = Fraction(
                    table.class_sizes[k] * _as_rational(table.rows[e][k]),
                    dim,
                )
                try:
                    got = val.evaluate_one()
                except ZeroDivisionError:
                    raise CellkitError(
                        "central character of %d has a pole at v=1 on "
                        "class %d under the v**L(w) weighting" % (e, k)
                    )
                if got != want:
                    raise CellkitError(
                        "central character of %d on class %d specializes "
                        "to %s, expected %s; the v**L(w) weighting does "
                        "not recompose" % (e, k, got, want)
                    )
                flags.append(val.is_laurent())
            laurent.append(flags)
        self._central = omega
        self._central_laurent = laurent
        return omega

    def central_laurent_flags(self):
        self.central_characters()
        return self._central_laurent

    def check_central_condition(self, mults, block, ring="O"):
        """Whether the weighted central-character combination of a virtual
        character supported on one block lies in the given coefficient
        ring, class by class.

        ring is "O" (denominator with unit constant term) or a pair
        ("Ap", p) asking for a denominator prime to p.
        """
        omega = self.central_characters()
        table = self.table
        chars = self.chars_of_block.get(block, [])
        cfns = [_rational_fn(self.schur[e]) for e in range(table.nchars)]
        out = []
        for k in range(table.nclasses):
            acc = RationalFn.zero()
            for e in chars:
                m = mults.get(e, 0)
                if not m:
                    continue
                acc = acc + RationalFn.from_int(m) * omega[e][k] / cfns[e]
            if ring == "O":
                out.append(acc.in_O())
            else:
                kind, p = ring
                if kind != "Ap":
                    raise CellkitError("unknown coefficient ring %r" % (ring,))
                out.append(acc.in_Ap(p))
        return out


class SubgroupWRepData(_RepCore):
    """The same trace and cell-character pipeline for the index-two
    reflection subgroup behind the type D device.

    Class polynomials are not available there, so the Schur leading
    coefficients come from the trace form instead: the linear system
    expressing the identity-coefficient form through the simple modules
    determines their inverses, and leading exponents are read off the
    two-sided cell a-values."""

    def __init__(self, ctx, w1, scd, table=None):
        self.ctx = ctx
        self.w1 = w1
        self.cd = scd
        self.W = ctx.W
        self.table = table if table is not None else w1_char_table(w1)
        self.carrier = list(w1.elements)

    def _class_index(self, y):
        return self.w1.class_of1[y]

    def _parity(self, y):
        return self.w1.ell1[y] & 1

    def _longest(self):
        return max(self.carrier, key=lambda x: self.w1.ell1[x])

    def _carrier_mask(self):
        return self.w1.mask

    def _keep_labels(self):
        return False

    def build(self):
        self._build_core()
        self._solve_trace_form()
        self._check_trace_form()
        self._check_cell_weights()
        return self

    def _solve_trace_form(self):
        cd = self.cd
        table = self.table
        nch = table.nchars
        duflo = set(cd.duflo)
        field = self._scalar_field
        rows = []
        rhs = []
        for z in self.carrier:
            rows.append([self.theta[e].get(z, 0) for e in range(nch)])
            rhs.append(cd.nlead[z] if z in duflo else 0)
        sel = _independent_rows(rows, field)
        if len(sel) != nch:
            raise SingularMatrix(
                "trace form system has rank %d for %d characters"
                % (len(sel), nch)
            )
        sol = solve_linear(
            [rows[i] for i in sel], [rhs[i] for i in sel], field
        )
        for i, row in enumerate(rows):
            acc = 0
            for e in range(nch):
                acc = acc + row[e] * sol[e]
            if acc != rhs[i]:
                raise CellkitError(
                    "trace form solution fails at element %d"
                    % self.carrier[i]
                )
        finv = list(sol)
        for e, x in enumerate(finv):
            if not _is_positive(x):
                raise NonPositiveSchur(
                    "character %d has inverse leading coefficient %s"
                    % (e, _value_str(x))
                )
        self.schur_finv = finv
        self.f_char = [_inverse(x) for x in finv]
        self.a_char = [self.block_a[self.block_of[e]] for e in range(nch)]


def _independent_rows(rows, field):
    """Indices of a maximal set of linearly independent rows, scanning in
    order; stops once the row space is exhausted."""
    if not rows:
        return []
    width = len(rows[0])
    reduced = []
    sel = []
    for i, r in enumerate(rows):
        v = [field.coerce(x) for x in r]
        for pc, pr in reduced:
            c = v[pc]
            if not field.is_zero(c):
                v = [field.sub(a, field.mul(c, b)) for a, b in zip(v, pr)]
        pc = None
        for j, x in enumerate(v):
            if not field.is_zero(x):
                pc = j
                break
        if pc is None:
            continue
        inv = field.div(field.one, v[pc])
        v = [field.mul(inv, x) for x in v]
        reduced.append((pc, v))
        sel.append(i)
        if len(sel) == width:
            break
    return sel
