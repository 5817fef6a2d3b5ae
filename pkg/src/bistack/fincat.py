"""Finite categories as explicit tables, with exact decision procedures.

Objects and morphisms are opaque string ids.  Composition is a total table
on composable pairs; comp[(g, f)] is "g after f".  Nothing is generated or
quotiented: what is in the tables is the whole category.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import BoundaryMismatch, MalformedTable
from .report import Budget, failed, inconclusive, passed


class FinCat:
    """A finite category given by explicit tables."""

    def __init__(self, objects, src, tgt, identity, comp):
        self.objects = tuple(objects)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.identity = dict(identity)
        self.comp = dict(comp)

    @property
    def morphisms(self):
        return tuple(sorted(self.src))

    def hom(self, a, b):
        return tuple(
            m for m in self.morphisms if self.src[m] == a and self.tgt[m] == b
        )

    def id(self, x):
        try:
            return self.identity[x]
        except KeyError:
            raise MalformedTable("no identity for object %r" % (x,))

    def compose(self, g, f):
        """g after f."""
        if self.tgt.get(f) != self.src.get(g):
            raise BoundaryMismatch("cannot compose %r after %r" % (g, f))
        try:
            return self.comp[(g, f)]
        except KeyError:
            raise MalformedTable("missing composite (%r, %r)" % (g, f))

    def compose_path(self, path):
        """Compose a tgt-to-src ordered tuple of morphisms; () not allowed."""
        it = list(path)
        m = it.pop()
        while it:
            m = self.compose(it.pop(), m)
        return m

    def is_identity(self, m):
        return self.identity.get(self.src.get(m)) == m

    def inverse(self, m):
        for n in self.hom(self.tgt[m], self.src[m]):
            if (
                self.compose(n, m) == self.id(self.src[m])
                and self.compose(m, n) == self.id(self.tgt[m])
            ):
                return n
        return None

    def is_iso(self, m):
        return self.inverse(m) is not None

    def isomorphic_objects(self, a, b):
        return any(self.is_iso(m) for m in self.hom(a, b))

    def iso_classes(self):
        """Partition of objects into isomorphism classes, canonically sorted."""
        rest = sorted(self.objects)
        classes = []
        while rest:
            a = rest.pop(0)
            cls = [a] + [b for b in rest if self.isomorphic_objects(a, b)]
            rest = [b for b in rest if b not in cls]
            classes.append(tuple(cls))
        return classes

    def skeleton(self):
        """Full subcategory on the first representative of each iso class."""
        reps = [cls[0] for cls in self.iso_classes()]
        return self.full_subcategory(reps)

    def full_subcategory(self, objs):
        objs = [o for o in self.objects if o in set(objs)]
        keep = {
            m for m in self.morphisms
            if self.src[m] in objs and self.tgt[m] in objs
        }
        return FinCat(
            objs,
            {m: self.src[m] for m in keep},
            {m: self.tgt[m] for m in keep},
            {o: self.identity[o] for o in objs},
            {k: v for k, v in self.comp.items() if k[0] in keep and k[1] in keep},
        )

    def key(self):
        return (
            self.objects,
            tuple(sorted(self.src.items())),
            tuple(sorted(self.tgt.items())),
            tuple(sorted(self.identity.items())),
            tuple(sorted(self.comp.items())),
        )

    def __eq__(self, other):
        return isinstance(other, FinCat) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FinCat(%d objects, %d morphisms)" % (
            len(self.objects), len(self.morphisms))


def discrete(objects):
    objects = list(objects)
    ids = {o: "id_%s" % o for o in objects}
    return FinCat(
        objects,
        {ids[o]: o for o in objects},
        {ids[o]: o for o in objects},
        ids,
        {(ids[o], ids[o]): ids[o] for o in objects},
    )


def walking_arrow():
    """Two objects and one non-identity arrow between them."""
    c = discrete(["0", "1"])
    src = dict(c.src, a="0")
    tgt = dict(c.tgt, a="1")
    comp = dict(c.comp)
    comp[("a", "id_0")] = "a"
    comp[("id_1", "a")] = "a"
    return FinCat(c.objects, src, tgt, c.identity, comp)


def check_category(c, budget=None):
    """Decide whether the tables form a category; witness the first failure."""
    budget = budget or Budget()
    for m in c.morphisms:
        if c.src[m] not in c.objects or c.tgt.get(m) not in c.objects:
            return failed("check_category",
                          ["morphism %r has a dangling endpoint" % m],
                          {"morphism": m})
    for o in c.objects:
        i = c.identity.get(o)
        if i is None or c.src.get(i) != o or c.tgt.get(i) != o:
            return failed("check_category",
                          ["bad identity for object %r" % o], {"object": o})
    mors = c.morphisms
    for g in mors:
        for f in mors:
            budget.tick()
            if c.tgt[f] == c.src[g]:
                h = c.comp.get((g, f))
                if h is None:
                    return failed("check_category",
                                  ["missing composite (%r, %r)" % (g, f)],
                                  {"pair": [g, f]})
                if c.src.get(h) != c.src[f] or c.tgt.get(h) != c.tgt[g]:
                    return failed("check_category",
                                  ["ill-typed composite (%r, %r)" % (g, f)],
                                  {"pair": [g, f], "composite": h})
            elif (g, f) in c.comp:
                return failed("check_category",
                              ["composite of non-composable pair (%r, %r)" % (g, f)],
                              {"pair": [g, f]})
    for f in mors:
        if c.comp.get((f, c.identity[c.src[f]])) != f:
            return failed("check_category", ["right unit fails at %r" % f],
                          {"morphism": f})
        if c.comp.get((c.identity[c.tgt[f]], f)) != f:
            return failed("check_category", ["left unit fails at %r" % f],
                          {"morphism": f})
    for h in mors:
        for g in mors:
            if c.tgt[g] != c.src[h]:
                continue
            for f in mors:
                if c.tgt[f] != c.src[g]:
                    continue
                budget.tick()
                if c.comp[(c.comp[(h, g)], f)] != c.comp[(h, c.comp[(g, f)])]:
                    return failed("check_category",
                                  ["associativity fails at (%r, %r, %r)" % (h, g, f)],
                                  {"triple": [h, g, f]})
    return passed("check_category",
                  ["%d objects, %d morphisms" % (len(c.objects), len(mors))])


class Functor:
    def __init__(self, dom, cod, ob, mor):
        self.dom = dom
        self.cod = cod
        self.ob = dict(ob)
        self.mor = dict(mor)

    def o(self, x):
        return self.ob[x]

    def m(self, f):
        return self.mor[f]

    def key(self):
        return (tuple(sorted(self.ob.items())), tuple(sorted(self.mor.items())))

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key() \
            and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Functor(%s)" % (sorted(self.ob.items()),)


def identity_functor(c):
    return Functor(c, c, {o: o for o in c.objects},
                   {m: m for m in c.morphisms})


def compose_functors(g, f):
    """g after f."""
    if f.cod != g.dom:
        raise BoundaryMismatch("functors not composable")
    return Functor(f.dom, g.cod,
                   {x: g.o(f.o(x)) for x in f.dom.objects},
                   {m: g.m(f.m(m)) for m in f.dom.morphisms})


def check_functor(F):
    for x in F.dom.objects:
        if F.ob.get(x) not in F.cod.objects:
            return failed("check_functor", ["object %r unmapped" % x],
                          {"object": x})
    for f in F.dom.morphisms:
        g = F.mor.get(f)
        if g is None or F.cod.src.get(g) != F.o(F.dom.src[f]) \
                or F.cod.tgt.get(g) != F.o(F.dom.tgt[f]):
            return failed("check_functor", ["morphism %r ill-mapped" % f],
                          {"morphism": f})
    for x in F.dom.objects:
        if F.m(F.dom.id(x)) != F.cod.id(F.o(x)):
            return failed("check_functor", ["identity at %r not preserved" % x],
                          {"object": x})
    for g in F.dom.morphisms:
        for f in F.dom.morphisms:
            if F.dom.tgt[f] == F.dom.src[g]:
                if F.m(F.dom.comp[(g, f)]) != F.cod.compose(F.m(g), F.m(f)):
                    return failed("check_functor",
                                  ["composition not preserved at (%r, %r)" % (g, f)],
                                  {"pair": [g, f]})
    return passed("check_functor")


class NatTrans:
    def __init__(self, dom, cod, comp):
        self.dom = dom          # source functor
        self.cod = cod          # target functor
        self.comp = dict(comp)  # object -> morphism of the target category

    def at(self, x):
        return self.comp[x]

    def key(self):
        return tuple(sorted(self.comp.items()))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key() \
            and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "NatTrans(%s)" % (sorted(self.comp.items()),)


def check_nat(t):
    F, G = t.dom, t.cod
    d = F.cod
    for x in F.dom.objects:
        m = t.comp.get(x)
        if m is None or d.src.get(m) != F.o(x) or d.tgt.get(m) != G.o(x):
            return failed("check_nat", ["bad component at %r" % x],
                          {"object": x})
    for f in F.dom.morphisms:
        a, b = F.dom.src[f], F.dom.tgt[f]
        if d.compose(t.at(b), F.m(f)) != d.compose(G.m(f), t.at(a)):
            return failed("check_nat", ["naturality fails at %r" % f],
                          {"morphism": f})
    return passed("check_nat")


def is_equivalence(F, budget=None):
    """Decide fully-faithful + essentially-surjective, with witnesses."""
    budget = budget or Budget()
    c, d = F.dom, F.cod
    for y in d.objects:
        budget.tick()
        if not any(d.isomorphic_objects(F.o(x), y) for x in c.objects):
            return failed("is_equivalence",
                          ["object %r not in the essential image" % y],
                          {"object": y, "reason": "essential surjectivity"})
    for a in c.objects:
        for b in c.objects:
            budget.tick()
            image = [F.m(f) for f in c.hom(a, b)]
            target = d.hom(F.o(a), F.o(b))
            for g in target:
                if g not in image:
                    return failed("is_equivalence",
                                  ["%r has no preimage in hom(%r, %r)" % (g, a, b)],
                                  {"pair": [a, b], "morphism": g,
                                   "reason": "fullness"})
            if len(set(image)) != len(image):
                seen = {}
                for f in c.hom(a, b):
                    if F.m(f) in seen:
                        return failed(
                            "is_equivalence",
                            ["%r and %r collapse" % (seen[F.m(f)], f)],
                            {"pair": [seen[F.m(f)], f], "reason": "faithfulness"})
                    seen[F.m(f)] = f
    return passed("is_equivalence")


def _iso_search(c, d, budget):
    """Search for an isomorphism of categories c -> d by backtracking."""
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    cobs = sorted(c.objects)

    def extend_obs(i, ob):
        if i == len(cobs):
            yield dict(ob)
            return
        a = cobs[i]
        for b in d.objects:
            budget.tick()
            if b in ob.values():
                continue
            ok = True
            for a2, b2 in ob.items():
                if len(c.hom(a, a2)) != len(d.hom(b, b2)) \
                        or len(c.hom(a2, a)) != len(d.hom(b2, b)):
                    ok = False
                    break
            if ok and len(c.hom(a, a)) == len(d.hom(b, b)):
                ob[a] = b
                yield from extend_obs(i + 1, ob)
                del ob[a]

    cmors = sorted(c.morphisms, key=lambda m: (c.is_identity(m), m))

    def extend_mors(ob, i, mm):
        if i == len(cmors):
            return dict(mm)
        f = cmors[i]
        if c.is_identity(f):
            cand = [d.id(ob[c.src[f]])]
        else:
            cand = [g for g in d.hom(ob[c.src[f]], ob[c.tgt[f]])
                    if not d.is_identity(g)]
        for g in cand:
            budget.tick()
            if g in mm.values():
                continue
            mm[f] = g
            ok = True
            for f2, g2 in list(mm.items()):
                if c.tgt[f2] == c.src[f]:
                    h = c.comp[(f, f2)]
                    if h in mm and mm[h] != d.compose(g, g2):
                        ok = False
                        break
                if c.tgt[f] == c.src[f2]:
                    h = c.comp[(f2, f)]
                    if h in mm and mm[h] != d.compose(g2, g):
                        ok = False
                        break
            if ok:
                out = extend_mors(ob, i + 1, mm)
                if out is not None:
                    return out
            del mm[f]
        return None

    for ob in extend_obs(0, {}):
        mm = extend_mors(ob, 0, {})
        if mm is not None:
            return Functor(c, d, ob, mm)
    return None


def equivalent_categories(c, d, budget=None):
    """Three-valued equivalence test via skeleton isomorphism.

    Two finite categories are equivalent iff their skeletons are isomorphic;
    the isomorphism search is budgeted, so the verdict may be inconclusive.
    """
    budget = budget or Budget()
    from .errors import SearchBudgetExceeded
    sc, sd = c.skeleton(), d.skeleton()
    try:
        iso = _iso_search(sc, sd, budget)
    except SearchBudgetExceeded as exc:
        return inconclusive("equivalent_categories",
                            ["budget exhausted after %d steps" % exc.steps],
                            {"steps": exc.steps})
    if iso is None:
        return failed("equivalent_categories",
                      ["skeletons are not isomorphic"],
                      {"skeleton_sizes": [len(sc.objects), len(sd.objects)]})
    return passed("equivalent_categories",
                  ["skeleton isomorphism on %d objects" % len(sc.objects)],
                  {"on_objects": iso.ob})


def all_functors(c, d, budget=None):
    """Enumerate every functor c -> d, in a deterministic order."""
    budget = budget or Budget()
    out = []
    cobs = sorted(c.objects)
    nonid = [m for m in c.morphisms if not c.is_identity(m)]
    for obs in product(*(sorted(d.objects) for _ in cobs)):
        ob = dict(zip(cobs, obs))
        pools = []
        for f in nonid:
            pools.append(d.hom(ob[c.src[f]], ob[c.tgt[f]]))
        for choice in product(*pools):
            budget.tick()
            mor = dict(zip(nonid, choice))
            for o in c.objects:
                mor[c.id(o)] = d.id(ob[o])
            F = Functor(c, d, ob, mor)
            if check_functor(F).ok:
                out.append(F)
    return out


def all_nat_trans(F, G, budget=None):
    budget = budget or Budget()
    c, d = F.dom, F.cod
    cobs = sorted(c.objects)
    pools = [d.hom(F.o(x), G.o(x)) for x in cobs]
    out = []
    for choice in product(*pools):
        budget.tick()
        t = NatTrans(F, G, dict(zip(cobs, choice)))
        if check_nat(t).ok:
            out.append(t)
    return out


def functor_category(c, d, budget=None):
    """The category of all functors c -> d and natural transformations."""
    budget = budget or Budget()
    functors = all_functors(c, d, budget)
    names = {F.key(): "F%d" % i for i, F in enumerate(functors)}
    objects, src, tgt, identity, comp = [], {}, {}, {}, {}
    mor_of = {}
    for F in functors:
        objects.append(names[F.key()])
    arrows = {}
    for F in functors:
        for G in functors:
            for t in all_nat_trans(F, G, budget):
                mid = "t%d" % len(arrows)
                arrows[mid] = t
                src[mid] = names[F.key()]
                tgt[mid] = names[G.key()]
                mor_of[(names[F.key()], names[G.key()], t.key())] = mid
    for F in functors:
        ident = NatTrans(F, F, {x: d.id(F.o(x)) for x in c.objects})
        identity[names[F.key()]] = mor_of[(names[F.key()], names[F.key()],
                                           ident.key())]
    for m2, t2 in arrows.items():
        for m1, t1 in arrows.items():
            if src[m2] == tgt[m1]:
                budget.tick()
                t = NatTrans(t1.dom, t2.cod,
                             {x: d.compose(t2.at(x), t1.at(x))
                              for x in c.objects})
                comp[(m2, m1)] = mor_of[(src[m1], tgt[m2], t.key())]
    cat = FinCat(objects, src, tgt, identity, comp)
    cat.decode = {"functors": {names[F.key()]: F for F in functors},
                  "nats": arrows}
    return cat
