"""Finite strict 2-categories as explicit tables.

One- and two-cells are opaque string ids, globally unique within one
Fin2Cat.  Vertical composition lives in the hom-categories; horizontal
composition is a pair of total tables (on 1-cells and on 2-cells) required
to be strictly associative, unital and functorial.

Also here: the layered pasting-scheme evaluator, iso-comma objects with
their bicategorical universal property, and pseudofunctors into Cat with
their transformations and modifications.
"""

from dataclasses import dataclass
from itertools import product

from .errors import BoundaryMismatch, MalformedTable
from .fincat import (FinCat, Functor, NatTrans, check_functor, check_nat,
                     discrete)
from .report import Budget, failed, inconclusive, passed


class Fin2Cat:
    """A finite strict 2-category given by explicit tables.

    onecells: id -> (src object, tgt object)
    twocells: id -> (src 1-cell, tgt 1-cell)
    identity1: object -> 1-cell, identity2: 1-cell -> 2-cell
    vcomp[(b, a)]: b after a (vertical); hcomp1[(g, f)] / hcomp2: g after f.
    """

    def __init__(self, objects, onecells, twocells, identity1, identity2,
                 vcomp, hcomp1, hcomp2):
        self.objects = tuple(objects)
        self.onecells = dict(onecells)
        self.twocells = dict(twocells)
        self.identity1 = dict(identity1)
        self.identity2 = dict(identity2)
        self.vcomp = dict(vcomp)
        self.hcomp1 = dict(hcomp1)
        self.hcomp2 = dict(hcomp2)

    # --- boundaries ---------------------------------------------------
    def src1(self, f):
        return self.onecells[f][0]

    def tgt1(self, f):
        return self.onecells[f][1]

    def src2(self, a):
        return self.twocells[a][0]

    def tgt2(self, a):
        return self.twocells[a][1]

    def one_cells_between(self, a, b):
        return tuple(sorted(f for f, (s, t) in self.onecells.items()
                            if s == a and t == b))

    def two_cells_between(self, f, g):
        return tuple(sorted(x for x, (s, t) in self.twocells.items()
                            if s == f and t == g))

    # --- composition --------------------------------------------------
    def id1(self, x):
        return self.identity1[x]

    def id2(self, f):
        return self.identity2[f]

    def c1(self, g, f):
        """1-cell composite, g after f."""
        if self.tgt1(f) != self.src1(g):
            raise BoundaryMismatch("1-cells %r after %r" % (g, f))
        try:
            return self.hcomp1[(g, f)]
        except KeyError:
            raise MalformedTable("missing 1-composite (%r, %r)" % (g, f))

    def c1_path(self, path, at=None):
        """Compose a tgt-to-src ordered tuple of 1-cells; () is id1(at)."""
        path = list(path)
        if not path:
            return self.id1(at)
        f = path.pop()
        while path:
            f = self.c1(path.pop(), f)
        return f

    def v(self, b, a):
        """Vertical composite, b after a."""
        if self.tgt2(a) != self.src2(b):
            raise BoundaryMismatch("2-cells %r after %r" % (b, a))
        try:
            return self.vcomp[(b, a)]
        except KeyError:
            raise MalformedTable("missing vertical composite (%r, %r)" % (b, a))

    def v_path(self, cells):
        """Vertically compose, last-listed first (tgt-to-src order)."""
        cells = list(cells)
        a = cells.pop()
        while cells:
            a = self.v(cells.pop(), a)
        return a

    def h(self, b, a):
        """Horizontal composite, b after a."""
        try:
            return self.hcomp2[(b, a)]
        except KeyError:
            raise MalformedTable("missing 2-composite (%r, %r)" % (b, a))

    def wl(self, f, a):
        """Whisker a 2-cell on the left with a later 1-cell: f * a."""
        return self.h(self.id2(f), a)

    def wr(self, a, f):
        """Whisker a 2-cell on the right with an earlier 1-cell: a * f."""
        return self.h(a, self.id2(f))

    # --- derived structure ---------------------------------------------
    def hom_cat(self, a, b):
        objs = self.one_cells_between(a, b)
        cells = {x for f in objs for g in objs
                 for x in self.two_cells_between(f, g)}
        return FinCat(
            objs,
            {x: self.src2(x) for x in cells},
            {x: self.tgt2(x) for x in cells},
            {f: self.id2(f) for f in objs},
            {k: v for k, v in self.vcomp.items()
             if k[0] in cells and k[1] in cells},
        )

    def invertible2(self, a):
        return self.inverse2(a) is not None

    def inverse2(self, a):
        f, g = self.twocells[a]
        for b in self.two_cells_between(g, f):
            if self.v(b, a) == self.id2(f) and self.v(a, b) == self.id2(g):
                return b
        return None

    def iso_1cells(self, f, g):
        """Is there an invertible 2-cell f => g?"""
        return self.invertible_2cell(f, g) is not None

    def invertible_2cell(self, f, g):
        """First invertible 2-cell f => g in canonical order, or None."""
        for a in self.two_cells_between(f, g):
            if self.invertible2(a):
                return a
        return None

    def equivalence_data(self, f, budget=None):
        """(g, unit, counit) with invertible unit: id => g.f and
        counit: f.g => id, or None."""
        budget = budget or Budget()
        a, b = self.onecells[f]
        for g in self.one_cells_between(b, a):
            budget.tick()
            unit = self.invertible_2cell(self.id1(a), self.c1(g, f))
            counit = self.invertible_2cell(self.c1(f, g), self.id1(b))
            if unit is not None and counit is not None:
                return (g, unit, counit)
        return None

    def is_equivalence_1cell(self, f, budget=None):
        return self.equivalence_data(f, budget) is not None

    def equivalent_objects(self, a, b):
        return any(self.is_equivalence_1cell(f)
                   for f in self.one_cells_between(a, b))

    def key(self):
        return (self.objects, tuple(sorted(self.onecells.items())),
                tuple(sorted(self.twocells.items())),
                tuple(sorted(self.identity1.items())),
                tuple(sorted(self.identity2.items())),
                tuple(sorted(self.vcomp.items())),
                tuple(sorted(self.hcomp1.items())),
                tuple(sorted(self.hcomp2.items())))

    def __eq__(self, other):
        return isinstance(other, Fin2Cat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Fin2Cat(%d objects, %d 1-cells, %d 2-cells)" % (
            len(self.objects), len(self.onecells), len(self.twocells))


def from_fincat(c):
    """A category viewed as a locally discrete 2-category."""
    onecells = {m: (c.src[m], c.tgt[m]) for m in c.morphisms}
    id2 = {m: "2id_%s" % m for m in c.morphisms}
    twocells = {id2[m]: (m, m) for m in c.morphisms}
    vcomp = {(id2[m], id2[m]): id2[m] for m in c.morphisms}
    hcomp1 = dict(c.comp)
    hcomp2 = {(id2[g], id2[f]): id2[h] for (g, f), h in c.comp.items()}
    return Fin2Cat(c.objects, onecells, twocells,
                   dict(c.identity), id2, vcomp, hcomp1, hcomp2)


def check_two_category(k, budget=None):
    """Decide whether the tables form a strict 2-category."""
    budget = budget or Budget()
    from .fincat import check_category
    for f, (s, t) in k.onecells.items():
        if s not in k.objects or t not in k.objects:
            return failed("check_two_category",
                          ["1-cell %r has a dangling endpoint" % f],
                          {"onecell": f})
    for x, (f, g) in k.twocells.items():
        if f not in k.onecells or g not in k.onecells \
                or k.onecells[f] != k.onecells[g]:
            return failed("check_two_category",
                          ["2-cell %r is not between parallel 1-cells" % x],
                          {"twocell": x})
    for a in k.objects:
        for b in k.objects:
            r = check_category(k.hom_cat(a, b), budget)
            if not r.ok:
                return failed("check_two_category",
                              ["hom(%r, %r): %s" % (a, b, r.details[0])],
                              r.witness)
    # 1-cell composition: total, typed, unital, associative
    for g in k.onecells:
        for f in k.onecells:
            budget.tick()
            if k.tgt1(f) == k.src1(g):
                h = k.hcomp1.get((g, f))
                if h is None or k.onecells.get(h) != (k.src1(f), k.tgt1(g)):
                    return failed("check_two_category",
                                  ["bad 1-composite (%r, %r)" % (g, f)],
                                  {"pair": [g, f]})
    for f in k.onecells:
        if k.c1(f, k.id1(k.src1(f))) != f or k.c1(k.id1(k.tgt1(f)), f) != f:
            return failed("check_two_category",
                          ["1-cell unit law fails at %r" % f], {"onecell": f})
    ones = sorted(k.onecells)
    for h in ones:
        for g in ones:
            if k.tgt1(g) != k.src1(h):
                continue
            for f in ones:
                if k.tgt1(f) != k.src1(g):
                    continue
                budget.tick()
                if k.c1(k.c1(h, g), f) != k.c1(h, k.c1(g, f)):
                    return failed("check_two_category",
                                  ["1-cell associativity fails at (%r,%r,%r)"
                                   % (h, g, f)], {"triple": [h, g, f]})
    # 2-cell horizontal composition: typed, functorial, associative, unital
    twos = sorted(k.twocells)
    for b in twos:
        for a in twos:
            if k.tgt1(k.src2(a)) != k.src1(k.src2(b)):
                if (b, a) in k.hcomp2:
                    return failed("check_two_category",
                                  ["2-composite of non-composable (%r, %r)"
                                   % (b, a)], {"pair": [b, a]})
                continue
            budget.tick()
            c = k.hcomp2.get((b, a))
            want = (k.c1(k.src2(b), k.src2(a)), k.c1(k.tgt2(b), k.tgt2(a)))
            if c is None or k.twocells.get(c) != want:
                return failed("check_two_category",
                              ["bad 2-composite (%r, %r)" % (b, a)],
                              {"pair": [b, a]})
    for g in ones:
        for f in ones:
            if k.tgt1(f) == k.src1(g):
                if k.h(k.id2(g), k.id2(f)) != k.id2(k.c1(g, f)):
                    return failed("check_two_category",
                                  ["horizontal identity fails at (%r, %r)"
                                   % (g, f)], {"pair": [g, f]})
    # interchange: h(b'.b, a'.a) = h(b', a') . h(b, a)
    for b2 in twos:
        for b1 in twos:
            if k.tgt2(b1) != k.src2(b2):
                continue
            for a2 in twos:
                if k.tgt1(k.src2(a2)) != k.src1(k.src2(b2)):
                    continue
                for a1 in twos:
                    if k.tgt2(a1) != k.src2(a2):
                        continue
                    budget.tick()
                    lhs = k.h(k.v(b2, b1), k.v(a2, a1))
                    rhs = k.v(k.h(b2, a2), k.h(b1, a1))
                    if lhs != rhs:
                        return failed("check_two_category",
                                      ["interchange fails at (%r,%r,%r,%r)"
                                       % (b2, b1, a2, a1)],
                                      {"quad": [b2, b1, a2, a1]})
    for c in twos:
        for b in twos:
            if k.tgt1(k.src2(b)) != k.src1(k.src2(c)):
                continue
            for a in twos:
                if k.tgt1(k.src2(a)) != k.src1(k.src2(b)):
                    continue
                budget.tick()
                if k.h(c, k.h(b, a)) != k.h(k.h(c, b), a):
                    return failed("check_two_category",
                                  ["2-cell associativity fails at (%r,%r,%r)"
                                   % (c, b, a)], {"triple": [c, b, a]})
    for a in twos:
        s, t = k.onecells[k.src2(a)]
        if k.h(a, k.id2(k.id1(s))) != a or k.h(k.id2(k.id1(t)), a) != a:
            return failed("check_two_category",
                          ["2-cell unit law fails at %r" % a], {"twocell": a})
    return passed("check_two_category",
                  ["%d objects, %d 1-cells, %d 2-cells" %
                   (len(k.objects), len(k.onecells), len(k.twocells))])


@dataclass(frozen=True)
class PastingScheme:
    """A 2-cell pasting in layered normal form.

    Each layer is (post, cell, pre): `pre` and `post` are tgt-to-src ordered
    whiskering paths; the layer denotes post * cell * pre.  Layers are
    vertically composed first-to-last.  `identity_on` names a 1-cell when
    there are no layers.
    """

    layers: tuple
    identity_on: str = None


def paste(k, scheme):
    """Evaluate a pasting scheme to a single 2-cell id.

    Raises BoundaryMismatch if consecutive layers do not chain.
    """
    if not scheme.layers:
        if scheme.identity_on is None:
            raise MalformedTable("empty pasting scheme with no identity_on")
        return k.id2(scheme.identity_on)
    out = None
    for post, cell, pre in scheme.layers:
        w = cell
        if pre:
            w = k.h(w, k.id2(k.c1_path(tuple(pre))))
        if post:
            w = k.h(k.id2(k.c1_path(tuple(post))), w)
        out = w if out is None else k.v(w, out)
    return out


# --- iso-comma objects ------------------------------------------------

@dataclass(frozen=True)
class IsoCommaCone:
    """A cone (apex, p, q, theta: f.p => g.q invertible) over a cospan."""

    apex: str
    p: str
    q: str
    theta: str


def _cones(k, f, g):
    """All iso-comma cones over the cospan (f, g), canonically ordered."""
    a, c = k.onecells[f]
    b, c2 = k.onecells[g]
    if c != c2:
        raise BoundaryMismatch("not a cospan: %r, %r" % (f, g))
    out = []
    for v in k.objects:
        for p in k.one_cells_between(v, a):
            for q in k.one_cells_between(v, b):
                for th in k.two_cells_between(k.c1(f, p), k.c1(g, q)):
                    if k.invertible2(th):
                        out.append(IsoCommaCone(v, p, q, th))
    return out


def check_bi_iso_comma(k, f, g, cone, budget=None):
    """Verify the strict 1- and 2-dimensional universal property of a cone."""
    budget = budget or Budget()
    fp = k.c1(f, cone.p)
    gq = k.c1(g, cone.q)
    if k.twocells.get(cone.theta) != (fp, gq) or not k.invertible2(cone.theta):
        return failed("check_bi_iso_comma", ["theta is not an invertible "
                                             "filler"], {"theta": cone.theta})
    # 1-dimensional: every cone factors uniquely and strictly
    for other in _cones(k, f, g):
        budget.tick()
        mediators = [
            u for u in k.one_cells_between(other.apex, cone.apex)
            if k.c1(cone.p, u) == other.p and k.c1(cone.q, u) == other.q
            and k.wr(cone.theta, u) == other.theta
        ]
        if len(mediators) != 1:
            return failed(
                "check_bi_iso_comma",
                ["cone at %r has %d strict factorizations" %
                 (other.apex, len(mediators))],
                {"cone": [other.apex, other.p, other.q, other.theta],
                 "mediators": mediators})
    # 2-dimensional: pairs of 2-cells compatible with theta are whiskerings
    # of a unique 2-cell between mediators
    for w in k.objects:
        for u in k.one_cells_between(w, cone.apex):
            for u2 in k.one_cells_between(w, cone.apex):
                pu, pu2 = k.c1(cone.p, u), k.c1(cone.p, u2)
                qu, qu2 = k.c1(cone.q, u), k.c1(cone.q, u2)
                for mu in k.two_cells_between(pu, pu2):
                    for nu in k.two_cells_between(qu, qu2):
                        budget.tick()
                        lhs = k.v(k.wr(cone.theta, u2), k.wl(f, mu))
                        rhs = k.v(k.wl(g, nu), k.wr(cone.theta, u))
                        if lhs != rhs:
                            continue
                        lam = [x for x in k.two_cells_between(u, u2)
                               if k.wl(cone.p, x) == mu
                               and k.wl(cone.q, x) == nu]
                        if len(lam) != 1:
                            return failed(
                                "check_bi_iso_comma",
                                ["compatible pair (%r, %r) has %d fillers"
                                 % (mu, nu, len(lam))],
                                {"pair": [mu, nu], "fillers": lam})
    return passed("check_bi_iso_comma")


def find_iso_comma(k, f, g, budget=None):
    """First cone in canonical order satisfying the universal property.

    Returns (cone, report); cone is None when no candidate passes.  The
    report notes when several candidate apexes pass (they are then pairwise
    equivalent; the first is the canonical choice).
    """
    budget = budget or Budget()
    winners = []
    for cone in _cones(k, f, g):
        budget.tick()
        if check_bi_iso_comma(k, f, g, cone, budget).ok:
            winners.append(cone)
    if not winners:
        return None, failed("find_iso_comma",
                            ["no iso-comma object for (%r, %r)" % (f, g)],
                            {"cospan": [f, g]})
    details = ["selected apex %r" % winners[0].apex]
    apexes = sorted({w.apex for w in winners})
    if len(apexes) > 1:
        details.append("equivalent alternatives exist: %s" % (apexes[1:],))
    return winners[0], passed("find_iso_comma", details,
                              {"alternatives": apexes[1:]})


def iso_comma_in_cat(F, G):
    """The iso-comma category of functors F: A -> C <- B : G.

    Objects are triples (a, b, j) with j: F(a) -> G(b) an isomorphism of C;
    morphisms are pairs making the evident square commute.  Object and
    morphism ids encode the triples/pairs canonically.
    """
    A, B, C = F.dom, G.dom, F.cod
    objs = []
    data = {}
    for a in sorted(A.objects):
        for b in sorted(B.objects):
            for j in C.hom(F.o(a), G.o(b)):
                if C.is_iso(j):
                    name = "(%s|%s|%s)" % (a, b, j)
                    objs.append(name)
                    data[name] = (a, b, j)
    src, tgt, identity, comp = {}, {}, {}, {}
    mdata = {}
    for x in objs:
        a, b, j = data[x]
        for y in objs:
            a2, b2, j2 = data[y]
            for r in A.hom(a, a2):
                for s in B.hom(b, b2):
                    if C.compose(j2, F.m(r)) == C.compose(G.m(s), j):
                        name = "(%s|%s)@%s>%s" % (r, s, x, y)
                        src[name], tgt[name] = x, y
                        mdata[name] = (r, s)
    for x in objs:
        a, b, _ = data[x]
        identity[x] = "(%s|%s)@%s>%s" % (A.id(a), B.id(b), x, x)
    for m2 in src:
        for m1 in src:
            if tgt[m1] == src[m2]:
                r = A.compose(mdata[m2][0], mdata[m1][0])
                s = B.compose(mdata[m2][1], mdata[m1][1])
                comp[(m2, m1)] = "(%s|%s)@%s>%s" % (r, s, src[m1], tgt[m2])
    cat = FinCat(objs, src, tgt, identity, comp)
    cat.decode = {"objects": data, "morphisms": mdata}
    return cat


# --- pseudofunctors into Cat -------------------------------------------

class PsFunctorToCat:
    """A pseudofunctor from base^op (1-cells reversed) to Cat.

    ob: base object -> FinCat; on1: base 1-cell f: D -> C -> Functor
    ob[C] -> ob[D]; on2: base 2-cell -> NatTrans (same direction);
    compositor[(f, g)]: on1[g] . on1[f] => on1[f.g] for g: E -> D;
    unitor[C]: Id => on1[id_C].  Components must be invertible.
    """

    def __init__(self, base, ob, on1, on2, compositor, unitor):
        self.base = base
        self.ob = dict(ob)
        self.on1 = dict(on1)
        self.on2 = dict(on2)
        self.compositor = dict(compositor)
        self.unitor = dict(unitor)

    def chi(self, f, g):
        return self.compositor[(f, g)]

    def key(self):
        return (tuple(sorted((c, v.key()) for c, v in self.ob.items())),
                tuple(sorted((f, v.key()) for f, v in self.on1.items())),
                tuple(sorted((x, v.key()) for x, v in self.on2.items())),
                tuple(sorted((p, v.key())
                             for p, v in self.compositor.items())),
                tuple(sorted((c, v.key()) for c, v in self.unitor.items())))

    def __eq__(self, other):
        return isinstance(other, PsFunctorToCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def check_ps_functor(F, budget=None):
    """Typing, strict vertical functoriality, naturality and coherence."""
    budget = budget or Budget()
    k = F.base
    for c in k.objects:
        if c not in F.ob:
            return failed("check_ps_functor", ["no value at object %r" % c],
                          {"object": c})
    for f, (d, c) in k.onecells.items():
        fun = F.on1.get(f)
        if fun is None or fun.dom != F.ob[c] or fun.cod != F.ob[d] \
                or not check_functor(fun).ok:
            return failed("check_ps_functor", ["bad value at 1-cell %r" % f],
                          {"onecell": f})
    for x, (f, g) in k.twocells.items():
        t = F.on2.get(x)
        if t is None or t.dom != F.on1[f] or t.cod != F.on1[g] \
                or not check_nat(t).ok:
            return failed("check_ps_functor", ["bad value at 2-cell %r" % x],
                          {"twocell": x})
    # strict functoriality on hom-categories
    for f in k.onecells:
        if F.on2[k.id2(f)].comp != {x: F.ob[k.onecells[f][0]].id(F.on1[f].o(x))
                                    for x in F.on1[f].dom.objects}:
            return failed("check_ps_functor",
                          ["identity 2-cell at %r not sent to identity" % f],
                          {"onecell": f})
    for (b, a), c in k.vcomp.items():
        budget.tick()
        d = F.on1[k.src2(a)].cod
        got = {x: d.compose(F.on2[b].at(x), F.on2[a].at(x))
               for x in F.on2[a].dom.dom.objects}
        if F.on2[c].comp != got:
            return failed("check_ps_functor",
                          ["vertical composition not preserved at (%r, %r)"
                           % (b, a)], {"pair": [b, a]})
    # compositor: typed, invertible, natural in both arguments
    for f, (d, c) in k.onecells.items():
        for g in k.onecells:
            if k.tgt1(g) != d:
                continue
            e = k.src1(g)
            budget.tick()
            chi = F.compositor.get((f, g))
            from .fincat import compose_functors
            if chi is None \
                    or chi.dom != compose_functors(F.on1[g], F.on1[f]) \
                    or chi.cod != F.on1[k.c1(f, g)] \
                    or not check_nat(chi).ok \
                    or not all(F.ob[e].is_iso(m) for m in chi.comp.values()):
                return failed("check_ps_functor",
                              ["bad compositor at (%r, %r)" % (f, g)],
                              {"pair": [f, g]})
    for x, (f, f2) in k.twocells.items():
        for g in k.onecells:
            if k.tgt1(g) != k.src1(f):
                continue
            e = k.src1(g)
            for X in F.ob[k.tgt1(f)].objects:
                budget.tick()
                lhs = F.ob[e].compose(F.chi(f2, g).at(X),
                                      F.on1[g].m(F.on2[x].at(X)))
                rhs = F.ob[e].compose(F.on2[k.wr(x, g)].at(X),
                                      F.chi(f, g).at(X))
                if lhs != rhs:
                    return failed("check_ps_functor",
                                  ["compositor unnatural in first arg at "
                                   "(%r, %r, %r)" % (x, g, X)],
                                  {"witness": [x, g, X]})
    for y, (g, g2) in k.twocells.items():
        for f in k.onecells:
            if k.src1(f) != k.tgt1(g):
                continue
            c = k.tgt1(f)
            e = k.src1(g)
            for X in F.ob[c].objects:
                budget.tick()
                lhs = F.ob[e].compose(F.chi(f, g2).at(X),
                                      F.on2[y].at(F.on1[f].o(X)))
                rhs = F.ob[e].compose(F.on2[k.wl(f, y)].at(X),
                                      F.chi(f, g).at(X))
                if lhs != rhs:
                    return failed("check_ps_functor",
                                  ["compositor unnatural in second arg at "
                                   "(%r, %r, %r)" % (y, f, X)],
                                  {"witness": [y, f, X]})
    # unitor: typed, invertible; triangle coherences
    from .fincat import identity_functor
    for c in k.objects:
        u = F.unitor.get(c)
        if u is None or u.dom != identity_functor(F.ob[c]) \
                or u.cod != F.on1[k.id1(c)] or not check_nat(u).ok \
                or not all(F.ob[c].is_iso(m) for m in u.comp.values()):
            return failed("check_ps_functor", ["bad unitor at %r" % c],
                          {"object": c})
    for f, (d, c) in k.onecells.items():
        for X in F.ob[c].objects:
            budget.tick()
            lhs = F.ob[d].compose(F.chi(f, k.id1(d)).at(X),
                                  F.unitor[d].at(F.on1[f].o(X)))
            if lhs != F.ob[d].id(F.on1[f].o(X)):
                return failed("check_ps_functor",
                              ["right unit triangle fails at (%r, %r)"
                               % (f, X)], {"witness": [f, X]})
            rhs = F.ob[d].compose(F.chi(k.id1(c), f).at(X),
                                  F.on1[f].m(F.unitor[c].at(X)))
            if rhs != F.ob[d].id(F.on1[f].o(X)):
                return failed("check_ps_functor",
                              ["left unit triangle fails at (%r, %r)"
                               % (f, X)], {"witness": [f, X]})
    # associativity hexagon
    for f, (d, c) in k.onecells.items():
        for g in k.onecells:
            if k.tgt1(g) != d:
                continue
            e = k.src1(g)
            for h in k.onecells:
                if k.tgt1(h) != e:
                    continue
                l = k.src1(h)
                for X in F.ob[c].objects:
                    budget.tick()
                    lhs = F.ob[l].compose(
                        F.chi(k.c1(f, g), h).at(X),
                        F.on1[h].m(F.chi(f, g).at(X)))
                    rhs = F.ob[l].compose(
                        F.chi(f, k.c1(g, h)).at(X),
                        F.chi(g, h).at(F.on1[f].o(X)))
                    if lhs != rhs:
                        return failed("check_ps_functor",
                                      ["coherence hexagon fails at "
                                       "(%r, %r, %r, %r)" % (f, g, h, X)],
                                      {"witness": [f, g, h, X]})
    return passed("check_ps_functor")


class PsNatTrans:
    """Pseudonatural transformation between pseudofunctors into Cat.

    comp: base object C -> Functor F(C) -> G(C); cells: base 1-cell
    f: D -> C -> invertible NatTrans comp_D . F(f) => G(f) . comp_C.
    """

    def __init__(self, dom, cod, comp, cells):
        self.dom = dom
        self.cod = cod
        self.comp = dict(comp)
        self.cells = dict(cells)

    def key(self):
        return (tuple(sorted((c, v.key()) for c, v in self.comp.items())),
                tuple(sorted((f, v.key()) for f, v in self.cells.items())))

    def __eq__(self, other):
        return isinstance(other, PsNatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def check_ps_nat(t, budget=None):
    budget = budget or Budget()
    F, G = t.dom, t.cod
    k = F.base
    from .fincat import compose_functors
    for c in k.objects:
        fun = t.comp.get(c)
        if fun is None or fun.dom != F.ob[c] or fun.cod != G.ob[c] \
                or not check_functor(fun).ok:
            return failed("check_ps_nat", ["bad component at %r" % c],
                          {"object": c})
    for f, (d, c) in k.onecells.items():
        cell = t.cells.get(f)
        if cell is None \
                or cell.dom != compose_functors(t.comp[d], F.on1[f]) \
                or cell.cod != compose_functors(G.on1[f], t.comp[c]) \
                or not check_nat(cell).ok \
                or not all(G.ob[d].is_iso(m) for m in cell.comp.values()):
            return failed("check_ps_nat", ["bad structure cell at %r" % f],
                          {"onecell": f})
    for x, (f, f2) in k.twocells.items():
        d, c = k.onecells[f]
        for X in F.ob[c].objects:
            budget.tick()
            lhs = G.ob[d].compose(G.on2[x].at(t.comp[c].o(X)),
                                  t.cells[f].at(X))
            rhs = G.ob[d].compose(t.cells[f2].at(X),
                                  t.comp[d].m(F.on2[x].at(X)))
            if lhs != rhs:
                return failed("check_ps_nat",
                              ["2-cell naturality fails at (%r, %r)" % (x, X)],
                              {"witness": [x, X]})
    for f, (d, c) in k.onecells.items():
        for g in k.onecells:
            if k.tgt1(g) != d:
                continue
            e = k.src1(g)
            for X in F.ob[c].objects:
                budget.tick()
                lhs = G.ob[e].compose(t.cells[k.c1(f, g)].at(X),
                                      t.comp[e].m(F.chi(f, g).at(X)))
                rhs = G.ob[e].compose(
                    G.chi(f, g).at(t.comp[c].o(X)),
                    G.ob[e].compose(G.on1[g].m(t.cells[f].at(X)),
                                    t.cells[g].at(F.on1[f].o(X))))
                if lhs != rhs:
                    return failed("check_ps_nat",
                                  ["composition coherence fails at "
                                   "(%r, %r, %r)" % (f, g, X)],
                                  {"witness": [f, g, X]})
    for c in k.objects:
        for X in F.ob[c].objects:
            budget.tick()
            lhs = G.ob[c].compose(t.cells[k.id1(c)].at(X),
                                  t.comp[c].m(F.unitor[c].at(X)))
            if lhs != G.unitor[c].at(t.comp[c].o(X)):
                return failed("check_ps_nat",
                              ["unit coherence fails at (%r, %r)" % (c, X)],
                              {"witness": [c, X]})
    return passed("check_ps_nat")


class CatModification:
    """Modification between pseudonatural transformations into Cat."""

    def __init__(self, dom, cod, comp):
        self.dom = dom          # source PsNatTrans
        self.cod = cod          # target PsNatTrans
        self.comp = dict(comp)  # base object -> NatTrans

    def key(self):
        return tuple(sorted((c, v.key()) for c, v in self.comp.items()))

    def __eq__(self, other):
        return isinstance(other, CatModification) \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def check_modification(m, budget=None):
    budget = budget or Budget()
    t, s = m.dom, m.cod
    F, G = t.dom, t.cod
    k = F.base
    for c in k.objects:
        nt = m.comp.get(c)
        if nt is None or nt.dom != t.comp[c] or nt.cod != s.comp[c] \
                or not check_nat(nt).ok:
            return failed("check_modification", ["bad component at %r" % c],
                          {"object": c})
    for f, (d, c) in k.onecells.items():
        for X in F.ob[c].objects:
            budget.tick()
            lhs = G.ob[d].compose(s.cells[f].at(X),
                                  m.comp[d].at(F.on1[f].o(X)))
            rhs = G.ob[d].compose(G.on1[f].m(m.comp[c].at(X)),
                                  t.cells[f].at(X))
            if lhs != rhs:
                return failed("check_modification",
                              ["modification square fails at (%r, %r)"
                               % (f, X)], {"witness": [f, X]})
    return passed("check_modification")
