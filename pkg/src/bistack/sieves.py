"""Sieves on a strict 2-category, their 2-category of elements, and
coverage axioms.

A sieve here is a family of 1-cells into a fixed target, closed under
precomposition up to invertible 2-cells, together with a chosen canonical
restriction: tilde(f, g) is the selected member isomorphic to f.g, and
sigma[(f, g)] the selected invertible 2-cell tilde(f, g) => f.g.  The
selection is deterministic (first in sorted order), and normalized so that
restriction along an identity is strict.
"""

from .errors import BoundaryMismatch, MalformedTable
from .fincat import FinCat, Functor, NatTrans, identity_functor
from .two_cat import Fin2Cat, PsFunctorToCat, PsNatTrans
from .builders import identity_nat
from .report import Budget, failed, inconclusive, passed


class Bisieve:
    def __init__(self, k, target, members, tilde, sigma):
        self.k = k
        self.target = target
        self.members = {d: frozenset(ms) for d, ms in members.items()}
        self.tilde = dict(tilde)
        self.sigma = dict(sigma)

    def member_list(self, d):
        return tuple(sorted(self.members.get(d, ())))

    def all_members(self):
        return tuple((d, f) for d in sorted(self.members)
                     for f in self.member_list(d))

    def key(self):
        return (self.target,
                tuple(sorted((d, tuple(sorted(ms)))
                             for d, ms in self.members.items())))

    def __eq__(self, other):
        return isinstance(other, Bisieve) and self.k == other.k \
            and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "Bisieve(on %r, %d members)" % (
            self.target, sum(len(m) for m in self.members.values()))


def build_bisieve(k, target, members):
    """Assemble a sieve with canonical restriction witnesses.

    Raises MalformedTable when the member family is not closed under
    precomposition up to invertible 2-cells.
    """
    members = {d: frozenset(ms) for d, ms in members.items() if ms}
    for d, ms in members.items():
        for f in ms:
            if k.onecells.get(f) != (d, target):
                raise MalformedTable("member %r is not a 1-cell %r -> %r"
                                     % (f, d, target))
    tilde, sigma = {}, {}
    for d, ms in members.items():
        for f in sorted(ms):
            for g, (e, d2) in sorted(k.onecells.items()):
                if d2 != d:
                    continue
                if g == k.id1(d):
                    tilde[(f, g)] = f
                    sigma[(f, g)] = k.id2(f)
                    continue
                fg = k.c1(f, g)
                found = None
                for m in sorted(members.get(e, ())):
                    cell = k.invertible_2cell(m, fg)
                    if cell is not None:
                        found = (m, cell)
                        break
                if found is None:
                    raise MalformedTable(
                        "not closed: no member isomorphic to %r . %r" % (f, g))
                tilde[(f, g)], sigma[(f, g)] = found
    return Bisieve(k, target, members, tilde, sigma)


def maximal_bisieve(k, target):
    members = {}
    for f, (d, c) in k.onecells.items():
        if c == target:
            members.setdefault(d, set()).add(f)
    return build_bisieve(k, target, members)


def check_bisieve(s, budget=None):
    """Typing, closure, normality and invertibility of the witnesses."""
    budget = budget or Budget()
    k = s.k
    if s.target not in k.objects:
        return failed("check_bisieve", ["unknown target %r" % s.target], {})
    for d, ms in s.members.items():
        for f in ms:
            if k.onecells.get(f) != (d, s.target):
                return failed("check_bisieve",
                              ["member %r is not %r -> %r"
                               % (f, d, s.target)], {"member": f})
    for d, f in s.all_members():
        for g, (e, d2) in k.onecells.items():
            if d2 != d:
                continue
            budget.tick()
            t = s.tilde.get((f, g))
            cell = s.sigma.get((f, g))
            if t is None or t not in s.members.get(e, ()):
                return failed("check_bisieve",
                              ["no member restriction for (%r, %r)" % (f, g)],
                              {"pair": [f, g]})
            if k.twocells.get(cell) != (t, k.c1(f, g)) \
                    or not k.invertible2(cell):
                return failed("check_bisieve",
                              ["bad restriction witness at (%r, %r)" % (f, g)],
                              {"pair": [f, g]})
            if g == k.id1(d) and (t != f or cell != k.id2(f)):
                return failed("check_bisieve",
                              ["identity restriction not strict at %r" % f],
                              {"member": f})
    return passed("check_bisieve",
                  ["%d members over %d objects"
                   % (len(s.all_members()), len(s.members))])


def sieve_equivalence(s1, s2, budget=None):
    """Mutual domination up to invertible 2-cells."""
    budget = budget or Budget()
    if s1.k != s2.k or s1.target != s2.target:
        return failed("sieve_equivalence", ["different ambient data"], {})
    k = s1.k
    for a, b, tag in ((s1, s2, "first"), (s2, s1, "second")):
        for d, f in a.all_members():
            budget.tick()
            if not any(k.iso_1cells(f, m) for m in b.member_list(d)):
                return failed(
                    "sieve_equivalence",
                    ["member %r of the %s sieve has no isomorph" % (f, tag)],
                    {"member": f, "side": tag})
    return passed("sieve_equivalence")


def pullback_sieve(s, f, budget=None):
    """The sieve f*S: 1-cells g with f.g isomorphic to a member."""
    budget = budget or Budget()
    k = s.k
    d, c = k.onecells[f]
    if c != s.target:
        raise BoundaryMismatch("%r does not land in %r" % (f, s.target))
    members = {}
    witnesses = {}
    for g, (e, d2) in sorted(k.onecells.items()):
        if d2 != d:
            continue
        budget.tick()
        fg = k.c1(f, g)
        for m in sorted(s.members.get(e, ())):
            cell = k.invertible_2cell(m, fg)
            if cell is not None:
                members.setdefault(e, set()).add(g)
                witnesses[g] = (m, cell)
                break
    out = build_bisieve(k, d, members)
    out.pullback_witnesses = witnesses
    return out


# --- the 2-category of elements -----------------------------------------

def _restrict_cell(s, f, g, delta, g2):
    """R(delta)_f: tilde(f, g) => tilde(f, g2) for delta: g => g2."""
    k = s.k
    return k.v_path([
        k.inverse2(s.sigma[(f, g2)]),
        k.wl(f, delta),
        s.sigma[(f, g)],
    ])


def _compositor_cell(s, f, g1, g2):
    """tilde(tilde(f, g1), g2) => tilde(f, g1.g2)."""
    k = s.k
    t1 = s.tilde[(f, g1)]
    return k.v_path([
        k.inverse2(s.sigma[(f, k.c1(g1, g2))]),
        k.wr(s.sigma[(f, g1)], g2),
        s.sigma[(t1, g2)],
    ])


class GrothTwoCat:
    """The 2-category of elements of a sieve, with decoding tables."""

    def __init__(self, sieve, two_cat, ob_of, one_of, two_of):
        self.sieve = sieve
        self.two_cat = two_cat
        self.ob_of = dict(ob_of)    # object id -> (D, f)
        self.one_of = dict(one_of)  # 1-cell id -> (g, alpha)
        self.two_of = dict(two_of)  # 2-cell id -> delta

    def ob_name(self, d, f):
        return "(%s|%s)" % (d, f)


def groth(s, budget=None):
    """Build the 2-category of elements of a sieve as explicit tables."""
    budget = budget or Budget()
    k = s.k
    ob_of, one_of, two_of = {}, {}, {}
    objects = []
    for d, f in s.all_members():
        name = "(%s|%s)" % (d, f)
        objects.append(name)
        ob_of[name] = (d, f)
    onecells = {}
    for tgt_name in objects:
        d, f = ob_of[tgt_name]
        for src_name in objects:
            e, h = ob_of[src_name]
            for g in k.one_cells_between(e, d):
                for alpha in k.two_cells_between(h, s.tilde[(f, g)]):
                    budget.tick()
                    name = "(%s|%s)>%s" % (g, alpha, tgt_name)
                    onecells[name] = (src_name, tgt_name)
                    one_of[name] = (g, alpha)
    twocells = {}
    by_pair = {}
    for n2, (src2, tgt2) in onecells.items():
        by_pair.setdefault((src2, tgt2), []).append(n2)
    for (src_name, tgt_name), cells in by_pair.items():
        d, f = ob_of[tgt_name]
        for n1 in cells:
            g1, a1 = one_of[n1]
            for n2 in cells:
                g2, a2 = one_of[n2]
                for delta in k.two_cells_between(g1, g2):
                    budget.tick()
                    if k.v(_restrict_cell(s, f, g1, delta, g2), a1) == a2:
                        name = "[%s]:%s=>%s" % (delta, n1, n2)
                        twocells[name] = (n1, n2)
                        two_of[name] = delta
    identity1, identity2 = {}, {}
    for name in objects:
        d, f = ob_of[name]
        identity1[name] = "(%s|%s)>%s" % (k.id1(d), k.id2(f), name)
    for n, (src_name, tgt_name) in onecells.items():
        g, a = one_of[n]
        identity2[n] = "[%s]:%s=>%s" % (k.id2(g), n, n)
    # vertical composition: compose the underlying base 2-cells
    index2 = {}
    for name, (n1, n2) in twocells.items():
        index2[(n1, n2, two_of[name])] = name
    vcomp = {}
    for nb, (nb1, nb2) in twocells.items():
        for na, (na1, na2) in twocells.items():
            if na2 == nb1:
                vcomp[(nb, na)] = index2[(na1, nb2,
                                          k.v(two_of[nb], two_of[na]))]
    index1 = {}
    for n, (src_name, tgt_name) in onecells.items():
        index1[(src_name, tgt_name) + one_of[n]] = n
    hcomp1 = {}
    for nb, (eb, db) in onecells.items():        # later factor
        for na, (ea, eb2) in onecells.items():   # earlier factor
            if eb2 != eb:
                continue
            budget.tick()
            g2, a2 = one_of[nb]
            g1, a1 = one_of[na]
            d, f = ob_of[db]
            e, h = ob_of[eb]
            alpha = k.v_path([
                _compositor_cell(s, f, g2, g1),
                k.v_path([
                    k.inverse2(s.sigma[(s.tilde[(f, g2)], g1)]),
                    k.wr(a2, g1),
                    s.sigma[(h, g1)],
                ]),
                a1,
            ])
            hcomp1[(nb, na)] = index1[(ea, db, k.c1(g2, g1), alpha)]
    hcomp2 = {}
    for nb, (nb1, nb2) in twocells.items():
        sb = onecells[nb1][0]
        for na, (na1, na2) in twocells.items():
            if onecells[na1][1] != sb:
                continue
            budget.tick()
            m1 = hcomp1[(nb1, na1)]
            m2 = hcomp1[(nb2, na2)]
            hcomp2[(nb, na)] = index2[(m1, m2,
                                       k.h(two_of[nb], two_of[na]))]
    cat = Fin2Cat(objects, onecells, twocells, identity1, identity2,
                  vcomp, hcomp1, hcomp2)
    return GrothTwoCat(s, cat, ob_of, one_of, two_of)


def factor_groth_morphism(gt, name):
    """Split (g, alpha) as (g, identity) after (identity, alpha).

    Returns (later, earlier): two 1-cell ids of the element 2-category whose
    composite is the given one.
    """
    k = gt.sieve.k
    s = gt.sieve
    src_name, tgt_name = gt.two_cat.onecells[name]
    d, f = gt.ob_of[tgt_name]
    e, h = gt.ob_of[src_name]
    g, alpha = gt.one_of[name]
    t = s.tilde[(f, g)]
    mid = "(%s|%s)" % (e, t)
    later = "(%s|%s)>%s" % (g, k.id2(t), tgt_name)
    earlier = "(%s|%s)>%s" % (k.id1(e), alpha, mid)
    if later not in gt.two_cat.onecells or earlier not in gt.two_cat.onecells:
        raise MalformedTable("factorization cells missing for %r" % name)
    return later, earlier


# --- presheaves attached to a sieve --------------------------------------

def representable(k, c):
    """The 2-functor represented by an object, as a PsFunctorToCat."""
    ob = {d: k.hom_cat(d, c) for d in k.objects}
    on1, on2 = {}, {}
    for g, (e, d) in k.onecells.items():
        on1[g] = Functor(ob[d], ob[e],
                         {f: k.c1(f, g) for f in ob[d].objects},
                         {x: k.wr(x, g) for x in ob[d].morphisms})
    for delta, (g, g2) in k.twocells.items():
        e, d = k.onecells[g]
        on2[delta] = NatTrans(on1[g], on1[g2],
                              {f: k.wl(f, delta) for f in ob[d].objects})
    from .builders import strict_ps_functor
    return strict_ps_functor(k, ob, on1, on2)


def sieve_presheaf(s):
    """A sieve as a Cat-valued pseudofunctor via canonical restrictions."""
    k = s.k
    ob = {}
    for d in k.objects:
        full = k.hom_cat(d, s.target)
        ob[d] = full.full_subcategory(s.member_list(d))
    on1, on2, compositor = {}, {}, {}
    for g, (e, d) in k.onecells.items():
        on1[g] = Functor(
            ob[d], ob[e],
            {f: s.tilde[(f, g)] for f in ob[d].objects},
            {x: k.v_path([
                k.inverse2(s.sigma[(k.tgt2(x), g)]),
                k.wr(x, g),
                s.sigma[(k.src2(x), g)],
            ]) for x in ob[d].morphisms})
    for delta, (g, g2) in k.twocells.items():
        e, d = k.onecells[g]
        on2[delta] = NatTrans(on1[g], on1[g2],
                              {f: _restrict_cell(s, f, g, delta, g2)
                               for f in ob[d].objects})
    from .fincat import compose_functors
    for f1, (d1, c1) in k.onecells.items():
        for g1 in k.onecells:
            if k.tgt1(g1) != d1:
                continue
            dom = compose_functors(on1[g1], on1[f1])
            compositor[(f1, g1)] = NatTrans(
                dom, on1[k.c1(f1, g1)],
                {f: _compositor_cell(s, f, f1, g1) for f in ob[c1].objects})
    unitor = {d: identity_nat(identity_functor(ob[d])) for d in k.objects}
    return PsFunctorToCat(k, ob, on1, on2, compositor, unitor)


def inclusion_transformation(s):
    """The fully faithful inclusion of a sieve into its representable."""
    k = s.k
    R = sieve_presheaf(s)
    Y = representable(k, s.target)
    from .fincat import compose_functors
    comp = {d: Functor(R.ob[d], Y.ob[d],
                       {f: f for f in R.ob[d].objects},
                       {x: x for x in R.ob[d].morphisms})
            for d in k.objects}
    cells = {}
    for g, (e, d) in k.onecells.items():
        cells[g] = NatTrans(
            compose_functors(comp[e], R.on1[g]),
            compose_functors(Y.on1[g], comp[d]),
            {f: s.sigma[(f, g)] for f in R.ob[d].objects})
    return PsNatTrans(R, Y, comp, cells)


# --- coverage axioms ------------------------------------------------------

class Bitopology:
    def __init__(self, k, covering):
        self.k = k
        self.covering = {c: tuple(sieves) for c, sieves in covering.items()}

    def sieves_on(self, c):
        return self.covering.get(c, ())


def _covers(tau, s, budget):
    return any(sieve_equivalence(s, t, budget).ok
               for t in tau.sieves_on(s.target))


def check_T1(tau, budget=None):
    """The maximal sieve covers every object (up to sieve equivalence)."""
    budget = budget or Budget()
    for c in tau.k.objects:
        budget.tick()
        if not _covers(tau, maximal_bisieve(tau.k, c), budget):
            return failed("check_T1", ["maximal sieve on %r not covering" % c],
                          {"object": c})
    return passed("check_T1")


def check_T2(tau, budget=None):
    """Stability under pullback, decided via the f*S characterization."""
    budget = budget or Budget()
    for c in tau.k.objects:
        for i, s in enumerate(tau.sieves_on(c)):
            for f, (d, c2) in tau.k.onecells.items():
                if c2 != c:
                    continue
                budget.tick()
                if not _covers(tau, pullback_sieve(s, f, budget), budget):
                    return failed(
                        "check_T2",
                        ["T2 via f*S: pullback of sieve #%d on %r along %r "
                         "is not covering" % (i, c, f)],
                        {"object": c, "sieve": i, "onecell": f})
    return passed("check_T2", ["T2 via f*S"])


def candidate_sieves(k, c, budget=None):
    """All sieves on c that are unions of closed sets of iso-classes."""
    budget = budget or Budget()
    into = sorted(f for f, (d, t) in k.onecells.items() if t == c)
    classes = []
    rest = list(into)
    while rest:
        f = rest.pop(0)
        cls = [f] + [g for g in rest
                     if k.onecells[f] == k.onecells[g] and k.iso_1cells(f, g)]
        rest = [g for g in rest if g not in cls]
        classes.append(tuple(cls))
    idx = {f: i for i, cls in enumerate(classes) for f in cls}
    succ = {}
    for i, cls in enumerate(classes):
        f = cls[0]
        need = set()
        for g, (e, d) in k.onecells.items():
            if d == k.onecells[f][0]:
                need.add(idx[k.c1(f, g)])
        succ[i] = need
    out = []
    n = len(classes)
    for mask in range(0, 1 << n):
        budget.tick()
        chosen = {i for i in range(n) if mask & (1 << i)}
        if all(succ[i] <= chosen for i in chosen):
            members = {}
            for i in chosen:
                for f in classes[i]:
                    members.setdefault(k.onecells[f][0], set()).add(f)
            out.append(build_bisieve(k, c, members))
    return out


def check_T3(tau, budget=None):
    """Local character: a sieve covered along a covering sieve must cover."""
    budget = budget or Budget()
    k = tau.k
    for c in k.objects:
        for s in candidate_sieves(k, c, budget):
            locally_covering = False
            for t in tau.sieves_on(c):
                if all(_covers(tau, pullback_sieve(s, f, budget), budget)
                       for d, f in t.all_members()):
                    locally_covering = True
                    break
            if locally_covering and not _covers(tau, s, budget):
                return failed(
                    "check_T3",
                    ["sieve on %r is locally covering but not covering" % c],
                    {"object": c,
                     "members": {d: list(s.member_list(d))
                                 for d in s.members}})
    return passed("check_T3")


def check_bitopology(tau, budget=None):
    """T1-T3 together, plus validity of every declared sieve.

    Also reports (informationally, never failing) when the covering family
    is not literally closed under sieve equivalence.
    """
    budget = budget or Budget()
    reports = []
    for c in tau.k.objects:
        for i, s in enumerate(tau.sieves_on(c)):
            r = check_bisieve(s, budget)
            if not r.ok:
                r.details.insert(0, "sieve #%d on %r" % (i, c))
                return r
    from .report import merge
    out = merge("check_bitopology",
                [check_T1(tau, budget), check_T2(tau, budget),
                 check_T3(tau, budget)])
    for c in tau.k.objects:
        for s in candidate_sieves(tau.k, c, budget):
            if _covers(tau, s, budget) \
                    and not any(s == t for t in tau.sieves_on(c)):
                out.details.append(
                    "note: covering-equivalent sieve on %r not literally "
                    "listed (family not closed under equivalence)" % c)
                break
    return out
