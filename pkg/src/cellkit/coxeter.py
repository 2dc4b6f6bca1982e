"""Finite Coxeter groups as signed permutations of their positive roots.

Elements are enumerated once, in canonical order: by length, then
lexicographically by canonical reduced word (the word obtained by always
stripping the smallest left descent). Every element is identified with its
index in this order throughout the package; index 0 is the identity and the
last index is the longest element.

Supported types: A(n), B(n), I2(m), H3, F4. Type D is realized through a
B-type system with weight zero on the sign-flip generator, see W1Context.
"""

from fractions import Fraction
from functools import lru_cache

from .cyclo import CycloReal
from .errors import DiagramError, InvalidWeights


def _neg(x):
    return ~x


def _compose(a, b):
    """(a after b) as signed permutations: roots go through b first."""
    out = []
    for x in b:
        if x >= 0:
            out.append(a[x])
        else:
            out.append(~a[~x])
    return tuple(out)


def _invert(t):
    out = [0] * len(t)
    for k, x in enumerate(t):
        if x >= 0:
            out[x] = k
        else:
            out[~x] = ~k
    return tuple(out)


class CoxeterSystem:
    def __init__(self, name, kind, rank, bonds, cartan, ring):
        self.name = name
        self.kind = kind
        self.rank = rank
        self.bonds = dict(bonds)
        self._cartan = cartan
        self._ring = ring
        self._build_roots()
        self._enumerate()
        self._mul_table = None
        self._bruhat = None
        self._classes = None

    # -- construction ------------------------------------------------

    def bond(self, i, j):
        if i == j:
            return 1
        key = (min(i, j), max(i, j))
        return self.bonds.get(key, 2)

    def _reflect(self, root, i):
        row = self._cartan[i]
        coeff = None
        for j, c in enumerate(root):
            a = row[j]
            if a == 0 or c == 0:
                continue
            term = a * c
            coeff = term if coeff is None else coeff + term
        new = list(root)
        if coeff is not None:
            new[i] = new[i] - coeff
        return tuple(new)

    def _is_positive(self, root):
        for c in root:
            if isinstance(c, CycloReal):
                s = c.sign()
            else:
                s = (c > 0) - (c < 0)
            if s > 0:
                return True
            if s < 0:
                return False
        raise AssertionError("zero root")

    def _build_roots(self):
        n = self.rank
        zero = self._ring(0)
        one = self._ring(1)
        simples = []
        for i in range(n):
            simples.append(tuple(one if j == i else zero for j in range(n)))
        pos = list(simples)
        seen = set(pos)
        queue = list(pos)
        while queue:
            r = queue.pop()
            for i in range(n):
                nr = self._reflect(r, i)
                if nr in seen:
                    continue
                if self._is_positive(nr):
                    seen.add(nr)
                    pos.append(nr)
                    queue.append(nr)
        # stable order: simples first, then by (height-ish) insertion; make
        # it deterministic by sorting on the exact coordinate vectors
        def key(root):
            out = []
            for c in root:
                if isinstance(c, CycloReal):
                    out.append(tuple(x for x in c.vec))
                else:
                    out.append((Fraction(c),))
            return (sum(float(sum(x)) for x in out), out)

        rest = sorted(pos[n:], key=key)
        self.roots = simples + rest
        self.nroots = len(self.roots)
        self._root_index = {r: k for k, r in enumerate(self.roots)}
        self.gperm = []
        for i in range(n):
            perm = []
            for k, r in enumerate(self.roots):
                nr = self._reflect(r, i)
                if k == i:
                    perm.append(~i)
                else:
                    perm.append(self._root_index[nr])
            self.gperm.append(tuple(perm))

    def _enumerate(self):
        ident = tuple(range(self.nroots))
        perms = [ident]
        index = {ident: 0}
        canword = [()]
        length = [0]
        minldesc = [-1]
        xhat = [-1]
        layer = [0]
        while layer:
            candidates = {}
            for w in layer:
                pw = perms[w]
                for s in range(self.rank):
                    if pw[s] >= 0:  # w(alpha_s) > 0, so w*s is longer
                        np_ = _compose(pw, self.gperm[s])
                        if np_ not in index and np_ not in candidates:
                            candidates[np_] = True
            if not candidates:
                break
            annotated = []
            for p in candidates:
                ip = _invert(p)
                s0 = next(s for s in range(self.rank) if ip[s] < 0)
                head = _compose(self.gperm[s0], p)
                hidx = index[head]
                word = (s0,) + canword[hidx]
                annotated.append((word, p, s0, hidx))
            annotated.sort(key=lambda t: t[0])
            newlayer = []
            for word, p, s0, hidx in annotated:
                idx = len(perms)
                perms.append(p)
                index[p] = idx
                canword.append(word)
                length.append(len(word))
                minldesc.append(s0)
                xhat.append(hidx)
                newlayer.append(idx)
            layer = newlayer
        self.perms = perms
        self.index = index
        self.canword = canword
        self.length = length
        self.minldesc = minldesc
        self.xhat = xhat
        self.nelts = len(perms)
        self.w0 = self.nelts - 1
        assert self.length[self.w0] == self.nroots
        self.inv = [index[_invert(p)] for p in perms]
        self.rdesc = []
        self.ldesc = []
        for i, p in enumerate(perms):
            rd = 0
            for s in range(self.rank):
                if p[s] < 0:
                    rd |= 1 << s
            self.rdesc.append(rd)
            ipv = perms[self.inv[i]]
            ld = 0
            for s in range(self.rank):
                if ipv[s] < 0:
                    ld |= 1 << s
            self.ldesc.append(ld)
        self.gen_elt = [index[self.gperm[s]] for s in range(self.rank)]

    # -- basic operations --------------------------------------------

    def mul(self, i, j):
        if self._mul_table is not None:
            return int(self._mul_table[i][j])
        return self.index[_compose(self.perms[i], self.perms[j])]

    def build_mul_table(self):
        if self._mul_table is None:
            table = []
            for i in range(self.nelts):
                pi = self.perms[i]
                row = [self.index[_compose(pi, pj)] for pj in self.perms]
                table.append(row)
            self._mul_table = table
        return self._mul_table

    def by_word(self, word):
        i = 0
        for s in word:
            i = self.mul(i, self.gen_elt[s])
        return i

    def word_of(self, i):
        return self.canword[i]

    def left_descent_set(self, i):
        return [s for s in range(self.rank) if self.ldesc[i] >> s & 1]

    def right_descent_set(self, i):
        return [s for s in range(self.rank) if self.rdesc[i] >> s & 1]

    def order_of(self, i):
        k = 1
        cur = i
        while cur != 0:
            cur = self.mul(cur, i)
            k += 1
        return k

    # -- Bruhat order ------------------------------------------------

    def _build_bruhat(self):
        n = self.nelts
        lmul = [[self.mul(self.gen_elt[s], y) for y in range(n)] for s in range(self.rank)]
        leq = [0] * n
        leq[0] = 1
        order = sorted(range(n), key=lambda i: self.length[i])
        for w in order:
            if w == 0:
                continue
            s = self.minldesc[w]
            base = leq[self.xhat[w]]
            row = 0
            lm = lmul[s]
            for y in range(n):
                sy = lm[y]
                probe = sy if self.length[sy] < self.length[y] else y
                if base >> probe & 1:
                    row |= 1 << y
            leq[w] = row
        self._bruhat = leq

    def bruhat_leq(self, y, w):
        if self._bruhat is None:
            self._build_bruhat()
        return bool(self._bruhat[w] >> y & 1)

    # -- conjugacy ---------------------------------------------------

    def _build_classes(self):
        n = self.nelts
        class_of = [-1] * n
        classes = []
        for start in range(n):
            if class_of[start] >= 0:
                continue
            orbit = [start]
            class_of[start] = len(classes)
            pos = 0
            while pos < len(orbit):
                w = orbit[pos]
                pos += 1
                for s in range(self.rank):
                    g = self.gen_elt[s]
                    c = self.mul(g, self.mul(w, g))
                    if class_of[c] < 0:
                        class_of[c] = len(classes)
                        orbit.append(c)
            classes.append(tuple(sorted(orbit)))
        self._classes = classes
        self._class_of = class_of

    @property
    def conj_classes(self):
        if self._classes is None:
            self._build_classes()
        return self._classes

    @property
    def class_of(self):
        if self._classes is None:
            self._build_classes()
        return self._class_of

    @property
    def class_reps(self):
        """Minimal-length, canonically smallest representative per class."""
        return [c[0] for c in self.conj_classes]

    def exponent(self):
        e = 1
        for r in self.class_reps:
            o = self.order_of(r)
            g = _gcd(e, o)
            e = e * o // g
        return e

    # -- subgroups ---------------------------------------------------

    def subgroup_closure(self, gens):
        """All elements of the subgroup generated by the given element
        indices, sorted canonically."""
        seen = {0}
        queue = [0]
        while queue:
            w = queue.pop()
            for g in gens:
                x = self.mul(w, g)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
        return sorted(seen)

    def subgroup_classes(self, elements, gens):
        """Conjugacy classes of the subgroup (given as element list plus a
        generating set of it)."""
        elset = set(elements)
        assert all(g in elset for g in gens)
        class_of = {}
        classes = []
        for start in elements:
            if start in class_of:
                continue
            orbit = [start]
            class_of[start] = len(classes)
            pos = 0
            while pos < len(orbit):
                w = orbit[pos]
                pos += 1
                for g in gens:
                    c = self.mul(g, self.mul(w, self.inv[g]))
                    if c not in class_of:
                        class_of[c] = len(classes)
                        orbit.append(c)
            classes.append(tuple(sorted(orbit)))
        return classes, class_of

    def parabolic_elements(self, I):
        return self.subgroup_closure([self.gen_elt[s] for s in I])

    def __repr__(self):
        return "<CoxeterSystem %s, %d elements>" % (self.name, self.nelts)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# -- type registry ----------------------------------------------------


def _int_ring(x):
    return int(x)


def _cyclo_ring(n):
    def make(x):
        return CycloReal.from_rational(n, x)

    return make


def _cos_pi_over(m, conductor):
    """2*cos(pi/m) as an element of the conductor's field."""
    from .cyclo import dickson_poly

    gen = CycloReal.generator(conductor)
    if conductor == 2 * m:
        return gen
    assert conductor == m and m % 2 == 1
    k = (m - 1) // 2
    coeffs = dickson_poly(k)
    acc = CycloReal.from_rational(conductor, 0)
    for c in reversed(coeffs):
        acc = acc * gen + c
    return -acc


def i2_conductor(m):
    if m == 3:
        return 1
    return m if m % 2 == 1 else 2 * m


@lru_cache(maxsize=None)
def coxeter_system(kind, rank=0, m=0):
    if kind == "A":
        n = rank
        if n < 1:
            raise DiagramError("type A needs rank >= 1")
        bonds = {(i, i + 1): 3 for i in range(n - 1)}
        cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]
        return CoxeterSystem("A%d" % n, "A", n, bonds, cartan, _int_ring)
    if kind == "B":
        n = rank
        if n < 2:
            raise DiagramError("type B needs rank >= 2")
        bonds = {(0, 1): 4}
        bonds.update({(i, i + 1): 3 for i in range(1, n - 1)})
        cartan = [[0] * n for _ in range(n)]
        for i in range(n):
            cartan[i][i] = 2
        cartan[0][1] = -2
        cartan[1][0] = -1
        for i in range(1, n - 1):
            cartan[i][i + 1] = -1
            cartan[i + 1][i] = -1
        return CoxeterSystem("B%d" % n, "B", n, bonds, cartan, _int_ring)
    if kind == "I2":
        if m < 3:
            raise DiagramError("I2 needs bond order >= 3")
        bonds = {(0, 1): m}
        if m == 3:
            c = 1
            cartan = [[2, -c], [-c, 2]]
            return CoxeterSystem("I2(3)", "I2", 2, bonds, cartan, _int_ring)
        cond = i2_conductor(m)
        c = _cos_pi_over(m, cond)
        ring = _cyclo_ring(cond)
        two = ring(2)
        cartan = [[two, -c], [-c, two]]
        return CoxeterSystem("I2(%d)" % m, "I2", 2, bonds, cartan, ring)
    if kind == "H3":
        bonds = {(0, 1): 5, (1, 2): 3}
        ring = _cyclo_ring(5)
        c = _cos_pi_over(5, 5)
        two = ring(2)
        zero = ring(0)
        mone = ring(-1)
        cartan = [
            [two, -c, zero],
            [-c, two, mone],
            [zero, mone, two],
        ]
        return CoxeterSystem("H3", "H3", 3, bonds, cartan, ring)
    if kind == "F4":
        bonds = {(0, 1): 3, (1, 2): 4, (2, 3): 3}
        cartan = [
            [2, -1, 0, 0],
            [-1, 2, -1, 0],
            [0, -2, 2, -1],
            [0, 0, -1, 2],
        ]
        return CoxeterSystem("F4", "F4", 4, bonds, cartan, _int_ring)
    raise DiagramError("unknown type %r" % kind)


def validate_weights(system, weights):
    """Check a weight list against the diagram: nonnegative integers, equal
    on generators joined by an odd bond."""
    if len(weights) != system.rank:
        raise InvalidWeights(
            "%s has %d generators, got %d weights" % (system.name, system.rank, len(weights))
        )
    for w in weights:
        if not isinstance(w, int) or w < 0:
            raise InvalidWeights("weights must be nonnegative integers, got %r" % (w,))
    for (i, j), mm in system.bonds.items():
        if mm % 2 == 1 and weights[i] != weights[j]:
            raise InvalidWeights(
                "generators %d and %d sit on an odd bond, weights must agree" % (i, j)
            )
    return tuple(weights)


# -- parabolic diagram recognition ------------------------------------


def diagram_components(system, I):
    """Split a generator subset into diagram components and recognize each.

    Returns a list of (kind, param, gens) with gens ordered canonically for
    the kind: chains are read from the forced end (4-bond end for B, 5-bond
    end for H3) or from the lexicographically smaller end for type A; pairs
    with bond >= 5 are I2 components.
    """
    I = sorted(I)
    comps = []
    unseen = set(I)
    while unseen:
        start = min(unseen)
        comp = {start}
        queue = [start]
        while queue:
            i = queue.pop()
            for j in I:
                if j not in comp and system.bond(i, j) >= 3:
                    comp.add(j)
                    queue.append(j)
        unseen -= comp
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        out.append(_recognize_chain(system, comp))
    return out


def _recognize_chain(system, comp):
    k = len(comp)
    if k == 1:
        return ("A", 1, tuple(comp))
    deg = {i: [j for j in comp if j != i and system.bond(i, j) >= 3] for i in comp}
    ends = [i for i in comp if len(deg[i]) == 1]
    if any(len(deg[i]) > 2 for i in comp) or len(ends) != 2:
        raise DiagramError("subset %r is not a chain" % (comp,))
    # walk the chain from each end
    def walk(start):
        path = [start]
        prev = None
        cur = start
        while True:
            nxts = [j for j in deg[cur] if j != prev]
            if not nxts:
                return path
            prev, cur = cur, nxts[0]
            path.append(cur)

    path = walk(ends[0])
    labels = [system.bond(path[i], path[i + 1]) for i in range(k - 1)]
    if k == 2:
        mval = labels[0]
        if mval == 3:
            return ("A", 2, tuple(sorted(path)))
        if mval == 4:
            return ("B", 2, tuple(sorted(path)))
        return ("I2", mval, tuple(sorted(path)))
    if all(x == 3 for x in labels):
        alt = list(reversed(path))
        return ("A", k, tuple(path if path < alt else alt))
    if labels.count(4) == 1 and (labels[0] == 4 or labels[-1] == 4):
        if labels[-1] == 4:
            path = list(reversed(path))
            labels = list(reversed(labels))
        if labels[0] == 4 and all(x == 3 for x in labels[1:]):
            return ("B", k, tuple(path))
    if k == 3 and 5 in labels:
        if labels[-1] == 5:
            path = list(reversed(path))
            labels = list(reversed(labels))
        if labels == [5, 3]:
            return ("H3", 0, tuple(path))
    raise DiagramError("unrecognized chain with bonds %r" % (labels,))


# -- the type D device ------------------------------------------------


class W1Context:
    """The even subgroup of a B-type system with zero weight on the
    sign-flip generator: the standard model for type D.

    Generators of the subgroup: u0 = t s1 t, then s1 .. s_{m-1}; their
    diagram is the D fork (u0 and s1 both bonded to s2 by order 3 when
    m >= 3, u0-s1 commuting).
    """

    def __init__(self, m, weight):
        if m < 3:
            raise DiagramError("type D needs rank >= 3")
        self.m = m
        self.weight = weight
        self.W = coxeter_system("B", rank=m)
        self.weights = validate_weights(self.W, (0,) + (weight,) * (m - 1))
        W = self.W
        # parity of the number of t letters
        mask = [False] * W.nelts
        for i in range(W.nelts):
            mask[i] = sum(1 for s in W.canword[i] if s == 0) % 2 == 0
        self.mask = mask
        self.s1words = [(0, 1, 0)] + [(s,) for s in range(1, m)]
        self.s1elts = [W.by_word(wd) for wd in self.s1words]
        self.rank1 = m
        self.elements = [i for i in range(W.nelts) if mask[i]]
        self.nelts1 = len(self.elements)
        assert self.nelts1 * 2 == W.nelts
        # lengths and canonical words inside the subgroup
        ell1 = {0: 0}
        parent = {0: None}
        frontier = [0]
        while frontier:
            nxt = []
            for w in frontier:
                for gi, g in enumerate(self.s1elts):
                    x = W.mul(g, w)
                    if x not in ell1:
                        ell1[x] = ell1[w] + 1
                        parent[x] = (gi, w)
                        nxt.append(x)
            frontier = sorted(nxt)
        assert len(ell1) == self.nelts1
        self.ell1 = ell1
        word1 = {}
        for w in sorted(ell1, key=lambda x: ell1[x]):
            if w == 0:
                word1[w] = ()
                continue
            # canonical: smallest S1 left descent
            best = None
            for gi, g in enumerate(self.s1elts):
                x = W.mul(g, w)
                if ell1[x] < ell1[w]:
                    best = (gi, x)
                    break
            word1[w] = (best[0],) + word1[best[1]]
        self.word1 = word1
        self.classes1, self.class_of1 = W.subgroup_classes(self.elements, self.s1elts)
        self.bonds1 = {}
        for a in range(self.rank1):
            for b in range(a + 1, self.rank1):
                prod = W.mul(self.s1elts[a], self.s1elts[b])
                o = W.order_of(prod)
                if o >= 3:
                    self.bonds1[(a, b)] = o

    def bond1(self, a, b):
        if a == b:
            return 1
        key = (min(a, b), max(a, b))
        return self.bonds1.get(key, 2)
