"""Constructible characters by truncated induction over parabolic subsets.

A character of a parabolic subgroup whose constituents share one lowest
degree induces up to the full group; keeping only the constituents that
stay at that degree is the truncation.  Starting from the unit character
of the trivial subgroup and walking every proper generator subset, with
a sign twist at each step, the truncations generate a finite set of
characters.  This module computes that set with full provenance, the
family partition it induces on the irreducibles, the cuspidal families
that no proper subset can reach bijectively, and the comparison of the
whole set against the left cell characters.

Parabolic subgroups decompose into diagram components, each of a
supported irreducible kind, so their character data is assembled from
the memoized component pipelines: values multiply across components,
lowest degrees add, and constructible sets combine by outer product.
"""

import itertools
from fractions import Fraction

from .chartable import WCharTable
from .coxeter import diagram_components
from .engine import system_for
from .errors import CellkitError, FamilyBlockMismatch, MixedAValues
from .wrep import _inverse, _json_label

_PARABOLIC = {}
_CON = {}
_FAMILIES = {}


class ParabolicChars:
    """Character data of one parabolic subgroup inside a fixed system.

    Classes are computed inside the subgroup; each class knows its
    fusion target among the ambient classes, so restriction of an
    ambient row is a lookup and induction is handled through adjunction
    with restriction.  The table rows come from the diagram components,
    multiplied across factors; lowest degrees add across factors."""

    def __init__(self, system, I):
        W = system.W
        self.system = system
        self.I = tuple(sorted(I))
        elements = W.parabolic_elements(self.I)
        self.order = len(elements)
        gen_elts = [W.gen_elt[s] for s in self.I]
        classes, _ = W.subgroup_classes(elements, gen_elts)
        reps = [c[0] for c in classes]
        self.classes = classes
        self.fusion = [W.class_of[r] for r in reps]
        self.factors = []
        for kind, param, gens in (diagram_components(W, self.I) if self.I else []):
            wts = tuple(system.weights[g] for g in gens)
            self.factors.append((tuple(gens), system_for(kind, param, wts)))
        size = 1
        for _, fac in self.factors:
            size *= fac.W.nelts
        if size != self.order:
            raise CellkitError(
                "parabolic order %d does not match its components (%d)"
                % (self.order, size)
            )
        local = []
        for r in reps:
            parts = []
            for gens, fac in self.factors:
                gi = {g: i for i, g in enumerate(gens)}
                e = 0
                for s in W.canword[r]:
                    if s in gi:
                        e = fac.W.mul(e, fac.W.gen_elt[gi[s]])
                parts.append(e)
            local.append(tuple(parts))
        labels = []
        rows = []
        avals = []
        ranges = [range(fac.table.nchars) for _, fac in self.factors]
        for combo in itertools.product(*ranges):
            labels.append(tuple(
                fac.table.labels[combo[fi]]
                for fi, (_, fac) in enumerate(self.factors)
            ))
            row = []
            for parts in local:
                val = 1
                for fi, (_, fac) in enumerate(self.factors):
                    k = fac.W.class_of[parts[fi]]
                    val = val * fac.table.rows[combo[fi]][k]
                row.append(val)
            rows.append(tuple(row))
            avals.append(sum(
                fac.wrep.a_char[combo[fi]]
                for fi, (_, fac) in enumerate(self.factors)
            ))
        parities = [W.length[r] & 1 for r in reps]
        self.table = WCharTable(labels, rows, [len(c) for c in classes],
                                reps, self.order, parities)
        self.a_vals = avals

    def embed(self, combo):
        """Ambient element for one local element per factor."""
        W = self.system.W
        out = 0
        for fi, (gens, fac) in enumerate(self.factors):
            for s in fac.W.canword[combo[fi]]:
                out = W.mul(out, W.gen_elt[gens[s]])
        return out

    def combo_index(self, chars):
        """Table index of a tuple of per-factor character indices."""
        idx = 0
        for fi, (_, fac) in enumerate(self.factors):
            idx = idx * fac.table.nchars + chars[fi]
        return idx

    def combine(self, vec):
        """Class-function row of a multiplicity vector."""
        row = [0] * self.table.nclasses
        for e, m in vec.items():
            r = self.table.rows[e]
            for k in range(self.table.nclasses):
                row[k] = row[k] + m * r[k]
        return tuple(row)

    def restrict_row(self, ambient_row):
        return tuple(ambient_row[j] for j in self.fusion)

    def restrict(self, vec):
        """Restriction of an ambient multiplicity vector, decomposed."""
        table = self.system.table
        row = [0] * table.nclasses
        for e, m in vec.items():
            r = table.rows[e]
            for k in range(table.nclasses):
                row[k] = row[k] + m * r[k]
        return self.table.decompose(self.restrict_row(tuple(row)))


def parabolic_chars(system, I):
    key = (system.key, tuple(sorted(I)))
    pc = _PARABOLIC.get(key)
    if pc is None:
        pc = ParabolicChars(system, I)
        _PARABOLIC[key] = pc
    return pc


def frobenius_induce(system, pc, vec):
    """Induction of a subgroup multiplicity vector, via adjunction with
    restriction; the exact dimension count is asserted on the result."""
    table = system.table
    xrow = pc.combine(vec)
    out = {}
    for e in range(table.nchars):
        m = pc.table.inner(xrow, pc.restrict_row(table.rows[e]))
        if m.denominator != 1:
            raise CellkitError("induced multiplicity %s is not integral" % m)
        mi = int(m)
        if mi < 0:
            raise CellkitError("induced multiplicity %d is negative" % mi)
        if mi:
            out[e] = mi
    index = system.W.nelts // pc.order
    dim_in = sum(m * pc.table.dims[e] for e, m in vec.items())
    dim_out = sum(m * table.dims[e] for e, m in out.items())
    if dim_out != index * dim_in:
        raise CellkitError(
            "induced dimension %d is not %d times %d" % (dim_out, index, dim_in)
        )
    return out


def truncated_induce(system, pc, vec):
    """Induce and keep only the constituents at the input's a-value."""
    if not vec:
        raise CellkitError("cannot truncate the zero character")
    avals = {pc.a_vals[e] for e in vec}
    if len(avals) != 1:
        raise MixedAValues(
            "support carries a-values %s" % sorted(avals)
        )
    a = avals.pop()
    full = frobenius_induce(system, pc, vec)
    a_char = system.wrep.a_char
    out = {e: m for e, m in full.items() if a_char[e] == a}
    if not out:
        raise CellkitError("truncated induction vanished at a=%d" % a)
    return out


class ConstructibleSet:
    """Deduplicated constructible multiplicity vectors with provenance."""

    def __init__(self, system, entries):
        self.system = system
        self.entries = entries

    def vectors(self):
        return [e["vector"] for e in self.entries]

    def keys(self):
        return {tuple(sorted(e["vector"].items())) for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def matrix(self):
        """Rows are constructibles, columns the irreducibles."""
        nch = self.system.table.nchars
        return [
            [e["vector"].get(j, 0) for j in range(nch)]
            for e in self.entries
        ]

    def records(self):
        labels = [_json_label(lb) for lb in self.system.table.labels]
        return {
            "columns": labels,
            "rows": self.matrix(),
            "derivations": [e["derivations"] for e in self.entries],
        }


def _parabolic_constructibles(pc):
    """Outer products of the factor constructible sets, as subgroup
    multiplicity vectors."""
    lists = [constructible_set(fac).vectors() for _, fac in pc.factors]
    out = []
    for choice in itertools.product(*[range(len(lst)) for lst in lists]):
        vec = {}
        items = [list(lists[fi][choice[fi]].items()) for fi in range(len(lists))]
        for picks in itertools.product(*items):
            chars = tuple(p[0] for p in picks)
            mult = 1
            for p in picks:
                mult *= p[1]
            vec[pc.combo_index(chars)] = mult
        out.append(vec)
    return out


def constructible_set(system):
    """All constructible multiplicity vectors of the system, from the
    recursion over proper generator subsets with sign twists."""
    cached = _CON.get(system.key)
    if cached is not None:
        return cached
    rank = system.W.rank
    perm = system.table.tensor_sign_perm()
    a_char = system.wrep.a_char
    entries = {}
    for size in range(rank):
        for I in itertools.combinations(range(rank), size):
            pc = parabolic_chars(system, I)
            for si, sub in enumerate(_parabolic_constructibles(pc)):
                y = truncated_induce(system, pc, sub)
                for twisted in (False, True):
                    v = {perm[e]: m for e, m in y.items()} if twisted else y
                    if len({a_char[e] for e in v}) != 1:
                        raise CellkitError(
                            "constructible support mixes a-values: %r" % (v,)
                        )
                    key = tuple(sorted(v.items()))
                    ent = entries.get(key)
                    if ent is None:
                        ent = {"vector": dict(v), "derivations": []}
                        entries[key] = ent
                    ent["derivations"].append(
                        {"subset": list(I), "entry": si, "twisted": twisted}
                    )
    con = ConstructibleSet(system, list(entries.values()))
    keys = con.keys()
    for key in keys:
        twist = tuple(sorted((perm[e], m) for e, m in key))
        if twist not in keys:
            raise CellkitError("constructible set is not closed under the twist")
    _CON[system.key] = con
    return con


class FamilyPartition:
    """Partition of the irreducibles by co-appearance in constructibles,
    with the cross-check against the trace-side blocks."""

    def __init__(self, system, families, block_match, mismatch, block_ids):
        self.system = system
        self.families = families
        self.family_of = {}
        for fi, fam in enumerate(families):
            for e in fam:
                self.family_of[e] = fi
        self.block_match = block_match
        self.mismatch = mismatch
        self.block_ids = block_ids
        self.cuspidal = None

    def assert_blocks(self):
        if not self.block_match:
            raise FamilyBlockMismatch(self.mismatch)
        return self

    def records(self):
        labels = self.system.table.labels
        out = {
            "families": [
                {"members": [_json_label(labels[e]) for e in fam],
                 "block": self.block_ids[fi]}
                for fi, fam in enumerate(self.families)
            ],
            "matches_blocks": self.block_match,
        }
        if self.cuspidal is not None:
            for fi, rec in enumerate(out["families"]):
                rec["cuspidal"] = self.cuspidal[fi]
        if self.mismatch:
            out["mismatch"] = self.mismatch
        return out


def families(system):
    cached = _FAMILIES.get(system.key)
    if cached is not None:
        return cached
    con = constructible_set(system)
    nch = system.table.nchars
    parent = list(range(nch))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for vec in con.vectors():
        sup = sorted(vec)
        for e in sup[1:]:
            ra, rb = find(sup[0]), find(e)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for e in range(nch):
        groups.setdefault(find(e), []).append(e)
    fams = tuple(tuple(sorted(g)) for g in
                 sorted(groups.values(), key=lambda g: min(g)))
    wr = system.wrep
    blocks = {frozenset(chars) for chars in wr.chars_of_block.values()}
    mismatch = None
    block_ids = []
    for fam in fams:
        if frozenset(fam) in blocks:
            block_ids.append(wr.block_of[fam[0]])
        else:
            block_ids.append(None)
            if mismatch is None:
                mismatch = (
                    "family %r is not a block of the leading-term traces"
                    % (fam,)
                )
    if mismatch is None and len(fams) != len(blocks):
        mismatch = "family and block counts differ"
    fp = FamilyPartition(system, fams, mismatch is None, mismatch, block_ids)
    _FAMILIES[system.key] = fp
    return fp


def _parabolic_families(pc):
    """Families of the parabolic subgroup: outer products of the factor
    families, as sets of subgroup table indices."""
    lists = [families(fac).families for _, fac in pc.factors]
    out = []
    for choice in itertools.product(*[range(len(lst)) for lst in lists]):
        fam = []
        per = [lists[fi][choice[fi]] for fi in range(len(lists))]
        for chars in itertools.product(*per):
            fam.append(pc.combo_index(chars))
        out.append(tuple(sorted(fam)))
    return out


def _bijection_witness(system, fam_set):
    """A proper subset and a subgroup family that the truncated
    induction maps onto the given family one to one, if any; searched
    from the largest subsets down."""
    rank = system.W.rank
    for size in range(rank - 1, -1, -1):
        for I in itertools.combinations(range(rank), size):
            pc = parabolic_chars(system, I)
            for fam in _parabolic_families(pc):
                if len(fam) != len(fam_set):
                    continue
                images = set()
                ok = True
                for e in fam:
                    y = truncated_induce(system, pc, {e: 1})
                    if len(y) != 1 or next(iter(y.values())) != 1:
                        ok = False
                        break
                    im = next(iter(y))
                    if im not in fam_set or im in images:
                        ok = False
                        break
                    images.add(im)
                if ok and images == fam_set:
                    return {"subset": list(I), "family": list(fam)}
    return None


def cuspidal_families(system):
    """Cuspidal flags per family: a family is cuspidal when neither it
    nor its sign twist is reached bijectively from a proper subset."""
    fp = families(system)
    if fp.cuspidal is not None:
        return fp.cuspidal
    perm = system.table.tensor_sign_perm()
    flags = []
    for fam in fp.families:
        fam_set = frozenset(fam)
        twisted = frozenset(perm[e] for e in fam)
        hit = (_bijection_witness(system, fam_set) is not None
               or _bijection_witness(system, twisted) is not None)
        flags.append(not hit)
    fp.cuspidal = flags
    return flags


def check_diamond(f_map, m_map):
    """Exact test of the unit sum: multiplicities against leading
    coefficients must satisfy sum of m/f equal to one."""
    support = [k for k, m in m_map.items() if m]
    if not support:
        return False
    total = Fraction(0)
    for k in support:
        if k not in f_map:
            raise CellkitError("no leading coefficient for %r" % (k,))
        total = total + m_map[k] * _inverse(f_map[k])
    diff = total - 1
    if isinstance(diff, (int, Fraction)):
        return diff == 0
    return diff.is_zero()


def verify_conjecture(system):
    """Compare the set of left cell characters with the constructible
    set; failures land in the report, never in an exception."""
    con = constructible_set(system)
    wr = system.wrep
    con_keys = {}
    for idx, e in enumerate(con.entries):
        con_keys[tuple(sorted(e["vector"].items()))] = idx
    cells = []
    all_matched = True
    seen = set()
    for ci, mults in enumerate(wr.cell_mults):
        key = tuple(sorted(mults.items()))
        idx = con_keys.get(key)
        if idx is None:
            all_matched = False
        else:
            seen.add(idx)
        cells.append({"cell": ci, "constructible": idx})
    unmatched = sorted(set(range(len(con.entries))) - seen)
    report = {
        "kind": system.kind,
        "param": system.param,
        "weights": list(system.weights),
        "match": all_matched and not unmatched,
        "cells": cells,
        "unmatched_constructibles": unmatched,
        "counts": {
            "cells": len(wr.cell_mults),
            "distinct_cell_characters": len(
                {tuple(sorted(m.items())) for m in wr.cell_mults}
            ),
            "constructibles": len(con.entries),
        },
    }
    return report
