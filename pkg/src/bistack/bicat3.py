"""Pseudofunctors between finite strict 2-categories and the three levels
of cells between 2-category-valued homomorphisms of a base 2-category:
transformations, modifications between those, and perturbations.

Values are represented as strict finite 2-categories; homomorphisms carry
compositor and unitor transformations (with invertible-component
witnesses) plus the associativity and unit comparison families needed to
state the displayed axioms.  Local composition (vertical composition of
2-cells of the base) is required to be preserved strictly; this is a
normalization, recorded by the checkers, not an extra axiom.
"""

from itertools import product as _product

from .errors import BoundaryMismatch, MalformedTable
from .report import Budget, CheckReport, failed, merge, passed


# --- pseudofunctors between strict 2-categories ---------------------------

class PsTwoFunctor:
    """ob/on1/on2 tables plus compositor chi[(b, a)]: H(b).H(a) => H(b.a)
    and unitor unit[x]: id_{H(x)} => H(id_x), both invertible."""

    def __init__(self, dom, cod, ob, on1, on2, chi=None, unit=None):
        self.dom = dom
        self.cod = cod
        self.ob = dict(ob)
        self.on1 = dict(on1)
        self.on2 = dict(on2)
        if chi is None:
            chi = {(b, a): cod.id2(on1[c])
                   for (b, a), c in dom.hcomp1.items()}
        if unit is None:
            unit = {x: cod.id2(on1[dom.id1(x)]) for x in dom.objects}
        self.chi = dict(chi)
        self.unit = dict(unit)

    def o(self, x):
        return self.ob[x]

    def m1(self, f):
        return self.on1[f]

    def m2(self, a):
        return self.on2[a]

    def key(self):
        return (tuple(sorted(self.ob.items())),
                tuple(sorted(self.on1.items())),
                tuple(sorted(self.on2.items())),
                tuple(sorted(self.chi.items())),
                tuple(sorted(self.unit.items())))

    def __eq__(self, other):
        return isinstance(other, PsTwoFunctor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def identity_ps_two_functor(c):
    return PsTwoFunctor(c, c, {x: x for x in c.objects},
                        {f: f for f in c.onecells},
                        {a: a for a in c.twocells})


def compose_ps_two_functors(k2, h):
    """k2 after h."""
    if h.cod is not k2.dom and h.cod != k2.dom:
        raise BoundaryMismatch("pseudofunctors not composable")
    cod = k2.cod
    chi = {}
    for (b, a), c in h.dom.hcomp1.items():
        chi[(b, a)] = cod.v(k2.on2[h.chi[(b, a)]],
                            k2.chi[(h.on1[b], h.on1[a])])
    unit = {}
    for x in h.dom.objects:
        unit[x] = cod.v(k2.on2[h.unit[x]], k2.unit[h.ob[x]])
    return PsTwoFunctor(h.dom, cod,
                        {x: k2.ob[h.ob[x]] for x in h.dom.objects},
                        {f: k2.on1[h.on1[f]] for f in h.dom.onecells},
                        {a: k2.on2[h.on2[a]] for a in h.dom.twocells},
                        chi, unit)


def check_ps_two_functor(h, budget=None):
    budget = budget or Budget()
    d, c = h.dom, h.cod
    for x in d.objects:
        if h.ob.get(x) not in c.objects:
            return failed("check_ps_two_functor", ["object %r unmapped" % x],
                          {"object": x})
    for f, (s, t) in d.onecells.items():
        g = h.on1.get(f)
        if g is None or c.onecells.get(g) != (h.ob[s], h.ob[t]):
            return failed("check_ps_two_functor",
                          ["bad 1-cell image at %r" % f], {"onecell": f})
    for a, (f, f2) in d.twocells.items():
        b = h.on2.get(a)
        if b is None or c.twocells.get(b) != (h.on1[f], h.on1[f2]):
            return failed("check_ps_two_functor",
                          ["bad 2-cell image at %r" % a], {"twocell": a})
    for f in d.onecells:
        if h.on2[d.id2(f)] != c.id2(h.on1[f]):
            return failed("check_ps_two_functor",
                          ["identity 2-cell not preserved at %r" % f],
                          {"onecell": f})
    for (b, a), v in d.vcomp.items():
        budget.tick()
        if h.on2[v] != c.v(h.on2[b], h.on2[a]):
            return failed("check_ps_two_functor",
                          ["vertical composition not preserved at (%r, %r)"
                           % (b, a)], {"pair": [b, a]})
    for (b, a), comp in d.hcomp1.items():
        cell = h.chi.get((b, a))
        want = (c.c1(h.on1[b], h.on1[a]), h.on1[comp])
        if cell is None or c.twocells.get(cell) != want \
                or not c.invertible2(cell):
            return failed("check_ps_two_functor",
                          ["bad compositor at (%r, %r)" % (b, a)],
                          {"pair": [b, a]})
    for x in d.objects:
        cell = h.unit.get(x)
        want = (c.id1(h.ob[x]), h.on1[d.id1(x)])
        if cell is None or c.twocells.get(cell) != want \
                or not c.invertible2(cell):
            return failed("check_ps_two_functor", ["bad unitor at %r" % x],
                          {"object": x})
    # naturality of the compositor in both arguments
    for (b2, b), vb in d.hcomp2.items():
        budget.tick()
        sb2, tb2 = d.twocells[b2]
        sb, tb = d.twocells[b]
        lhs = c.v(h.on2[vb], h.chi[(sb2, sb)])
        rhs = c.v(h.chi[(tb2, tb)], c.h(h.on2[b2], h.on2[b]))
        if lhs != rhs:
            return failed("check_ps_two_functor",
                          ["compositor not natural at (%r, %r)" % (b2, b)],
                          {"pair": [b2, b]})
    # associativity and unit coherence of the compositor
    for (b, a) in d.hcomp1:
        for e in d.onecells:
            if d.tgt1(b) != d.src1(e):
                continue
            budget.tick()
            lhs = c.v(h.chi[(d.c1(e, b), a)], c.wr(h.chi[(e, b)], h.on1[a]))
            rhs = c.v(h.chi[(e, d.c1(b, a))], c.wl(h.on1[e], h.chi[(b, a)]))
            if lhs != rhs:
                return failed("check_ps_two_functor",
                              ["compositor not associative at (%r, %r, %r)"
                               % (e, b, a)], {"triple": [e, b, a]})
    for f, (s, t) in d.onecells.items():
        budget.tick()
        left = c.v(h.chi[(d.id1(t), f)], c.wr(h.unit[t], h.on1[f]))
        right = c.v(h.chi[(f, d.id1(s))], c.wl(h.on1[f], h.unit[s]))
        if left != c.id2(h.on1[f]) or right != c.id2(h.on1[f]):
            return failed("check_ps_two_functor",
                          ["unit coherence fails at %r" % f], {"onecell": f})
    return passed("check_ps_two_functor")


# --- transformations and modifications between pseudofunctors -------------

class PsTwoNatTrans:
    """comp[x]: 1-cell G(x) -> H(x); cell[a: x -> y]: invertible 2-cell
    H(a) . comp[x] => comp[y] . G(a)."""

    def __init__(self, dom, cod, comp, cell=None):
        self.dom = dom
        self.cod = cod
        self.comp = dict(comp)
        if cell is None:
            # strict default: both sides must coincide literally
            c = dom.cod
            cell = {}
            for a, (x, y) in dom.dom.onecells.items():
                lhs = c.c1(cod.on1[a], comp[x])
                rhs = c.c1(comp[y], dom.on1[a])
                if lhs != rhs:
                    raise MalformedTable(
                        "no strict default cell at %r" % a)
                cell[a] = c.id2(lhs)
        self.cell = dict(cell)

    def at(self, x):
        return self.comp[x]

    def key(self):
        return (tuple(sorted(self.comp.items())),
                tuple(sorted(self.cell.items())))

    def __eq__(self, other):
        return isinstance(other, PsTwoNatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def identity_ps_two_nat(h):
    c = h.cod
    return PsTwoNatTrans(h, h, {x: c.id1(h.ob[x]) for x in h.dom.objects},
                         {a: c.id2(h.on1[a]) for a in h.dom.onecells})


def check_ps_two_nat(t, budget=None):
    budget = budget or Budget()
    g, h = t.dom, t.cod
    c = g.cod
    for x in g.dom.objects:
        r = t.comp.get(x)
        if r is None or c.onecells.get(r) != (g.ob[x], h.ob[x]):
            return failed("check_ps_two_nat", ["bad component at %r" % x],
                          {"object": x})
    for a, (x, y) in g.dom.onecells.items():
        cell = t.cell.get(a)
        want = (c.c1(h.on1[a], t.comp[x]), c.c1(t.comp[y], g.on1[a]))
        if cell is None or c.twocells.get(cell) != want \
                or not c.invertible2(cell):
            return failed("check_ps_two_nat",
                          ["bad structure cell at %r" % a], {"onecell": a})
    for al, (a, a2) in g.dom.twocells.items():
        x, y = g.dom.onecells[a]
        budget.tick()
        lhs = c.v(t.cell[a2], c.wr(h.on2[al], t.comp[x]))
        rhs = c.v(c.wl(t.comp[y], g.on2[al]), t.cell[a])
        if lhs != rhs:
            return failed("check_ps_two_nat",
                          ["2-cell naturality fails at %r" % al],
                          {"twocell": al})
    for (b, a), comp in g.dom.hcomp1.items():
        budget.tick()
        x, y = g.dom.onecells[a]
        z = g.dom.onecells[b][1]
        lhs = c.v(t.cell[comp], c.wr(h.chi[(b, a)], t.comp[x]))
        rhs = c.v(c.wl(t.comp[z], g.chi[(b, a)]),
                  c.v(c.wr(t.cell[b], g.on1[a]),
                      c.wl(h.on1[b], t.cell[a])))
        if lhs != rhs:
            return failed("check_ps_two_nat",
                          ["composition coherence fails at (%r, %r)"
                           % (b, a)], {"pair": [b, a]})
    for x in g.dom.objects:
        budget.tick()
        lhs = c.v(t.cell[g.dom.id1(x)], c.wr(h.unit[x], t.comp[x]))
        rhs = c.wl(t.comp[x], g.unit[x])
        if lhs != rhs:
            return failed("check_ps_two_nat",
                          ["unit coherence fails at %r" % x], {"object": x})
    return passed("check_ps_two_nat")


class TwoModification:
    """comp[x]: 2-cell s(x) => t(x) between parallel transformations."""

    def __init__(self, dom, cod, comp):
        self.dom = dom
        self.cod = cod
        self.comp = dict(comp)

    def key(self):
        return tuple(sorted(self.comp.items()))

    def __eq__(self, other):
        return isinstance(other, TwoModification) \
            and self.key() == other.key()


def check_two_modification(m, budget=None):
    budget = budget or Budget()
    s, t = m.dom, m.cod
    g, h = s.dom, s.cod
    c = g.cod
    for x in g.dom.objects:
        cell = m.comp.get(x)
        if cell is None or c.twocells.get(cell) != (s.comp[x], t.comp[x]):
            return failed("check_two_modification",
                          ["bad component at %r" % x], {"object": x})
    for a, (x, y) in g.dom.onecells.items():
        budget.tick()
        lhs = c.v(t.cell[a], c.wl(h.on1[a], m.comp[x]))
        rhs = c.v(c.wr(m.comp[y], g.on1[a]), s.cell[a])
        if lhs != rhs:
            return failed("check_two_modification",
                          ["modification square fails at %r" % a],
                          {"onecell": a})
    return passed("check_two_modification")


# --- regrouping helpers for transported pastings ---------------------------

def _merge(h, cells):
    """2-cell c1(H u_n, ..., H u_1) => H(c1(u_n, ..., u_1)) from the
    compositor; cells are listed target-to-source.  Empty/singleton lists
    merge trivially."""
    c = h.cod
    d = h.dom
    us = list(cells)
    if not us:
        raise MalformedTable("cannot merge an empty composite")
    acc_dom = us[-1]
    acc = c.id2(h.on1[acc_dom])
    for u in reversed(us[:-1]):
        step = h.chi[(u, acc_dom)]
        acc = c.v(step, c.wl(h.on1[u], acc))
        acc_dom = d.c1(u, acc_dom)
    return acc, acc_dom


def _transport(h, gamma, us, ws):
    """Image of gamma: c1(us) => c1(ws) under h, regrouped so domain and
    codomain are literal composites of the individual images."""
    c = h.cod
    m_in, dom_in = _merge(h, us)
    m_out, _ = _merge(h, ws)
    return c.v(c.inverse2(m_out), c.v(h.on2[gamma], m_in))


def _transport_to_id(h, gamma, us, at):
    """Image of gamma: c1(us) => id1(at), regrouped and de-unitized."""
    c = h.cod
    m_in, _ = _merge(h, us)
    return c.v(c.inverse2(h.unit[at]), c.v(h.on2[gamma], m_in))


# --- homomorphisms of the base into 2-categories ---------------------------

class TrihomData:
    """Contravariant 2-category-valued homomorphism data on a base.

    ob[C]: value 2-category; on1[f]: PsTwoFunctor ob[C] -> ob[D] for
    f: D -> C; on2[gamma]: PsTwoNatTrans (local composition preserved
    strictly); chi[(f, g)]: PsTwoNatTrans on1[g] . on1[f] => on1[f.g] with
    equivalence components; iota[C]: Id => on1[id_C]; omega[(f, g, h)],
    delta_hat[f], gamma_hat[f]: per-object comparison 2-cells for the
    associativity and unit displays.
    """

    def __init__(self, base, ob, on1, on2, chi, iota,
                 omega=None, delta_hat=None, gamma_hat=None):
        self.base = base
        self.ob = dict(ob)
        self.on1 = dict(on1)
        self.on2 = dict(on2)
        self.chi = dict(chi)
        self.iota = dict(iota)
        self.omega = dict(omega or {})
        self.delta_hat = dict(delta_hat or {})
        self.gamma_hat = dict(gamma_hat or {})

    def value(self, c):
        return self.ob[c]

    def is_strictly_compositional(self):
        """True when every compositor/unitor datum is an identity."""
        for (f, g), t in self.chi.items():
            cod = self.on1[g].cod
            for x, r in t.comp.items():
                if r != cod.id1(cod.src1(r)):
                    return False
            for a, cell in t.cell.items():
                if not cod.twocells[cell][0] == cod.twocells[cell][1] \
                        or cell != cod.id2(cod.twocells[cell][0]):
                    return False
        for c, t in self.iota.items():
            cod = self.ob[c]
            for x, r in t.comp.items():
                if r != cod.id1(cod.src1(r)):
                    return False
        return True


def strict_trihom(k, ob, on1, on2):
    """Assemble homomorphism data with identity compositors and unitors.

    Validates that on1 is strictly functorial, that on2 preserves vertical
    composition strictly, and that whiskered 2-cells act componentwise.
    """
    for c in k.objects:
        if on1[k.id1(c)] != identity_ps_two_functor(ob[c]):
            raise MalformedTable("value at id_%r is not the identity" % c)
    for (f, g), comp in k.hcomp1.items():
        # f: D -> C after g: E -> D contravariantly: on1[g] after on1[f]
        if compose_ps_two_functors(on1[g], on1[f]) != on1[comp]:
            raise MalformedTable(
                "values not strictly functorial at (%r, %r)" % (f, g))
    for f in k.onecells:
        x = k.id2(f)
        if x not in on2:
            on2 = dict(on2)
            on2[x] = identity_ps_two_nat(on1[f])
    for (b, a), v in k.vcomp.items():
        f = k.twocells[a][0]
        c = k.onecells[f][1]
        val = ob[c]
        dom_val = on1[f].cod
        for z in val.objects:
            if on2[v].comp[z] != dom_val.c1(on2[b].comp[z], on2[a].comp[z]):
                raise MalformedTable(
                    "local composition not strict at (%r, %r)" % (b, a))
    for al, (f, f2) in k.twocells.items():
        d, c = k.onecells[f]
        for g, (e, d2) in k.onecells.items():
            if d2 != d:
                continue
            w = k.h(al, k.id2(g))
            for z in ob[c].objects:
                if on2[w].comp[z] != on1[g].on1[on2[al].comp[z]]:
                    raise MalformedTable(
                        "whiskering not componentwise at (%r, %r)" % (al, g))
        for g, (d2, e) in k.onecells.items():
            if d2 != c:
                continue
            w = k.h(k.id2(g), al)
            for z in ob[k.onecells[g][1]].objects:
                if on2[w].comp[z] != on2[al].comp[on1[g].ob[z]]:
                    raise MalformedTable(
                        "whiskering not componentwise at (%r, %r)" % (g, al))
    chi = {}
    for (f, g), comp in k.hcomp1.items():
        chi[(f, g)] = identity_ps_two_nat(on1[comp])
    iota = {c: identity_ps_two_nat(on1[k.id1(c)]) for c in k.objects}
    omega, delta_hat, gamma_hat = {}, {}, {}
    for f, (d, c) in k.onecells.items():
        val = ob[c]
        tgt = on1[f]
        delta_hat[f] = {z: tgt.cod.id2(tgt.cod.id1(tgt.ob[z]))
                        for z in val.objects}
        gamma_hat[f] = {z: tgt.cod.id2(tgt.cod.id1(tgt.ob[z]))
                        for z in val.objects}
        for g, (e, d2) in k.onecells.items():
            if d2 != d:
                continue
            for h, (l, e2) in k.onecells.items():
                if e2 != e:
                    continue
                val_l = ob[l]
                omega[(f, g, h)] = {
                    z: val_l.id2(val_l.id1(on1[k.c1(k.c1(f, g), h)].ob[z]))
                    for z in val.objects}
    return TrihomData(k, ob, on1, on2, chi, iota, omega, delta_hat,
                      gamma_hat)


def representable_trihom(k, c0):
    """The homomorphism represented by an object: values are hom
    2-categories (locally discrete), action by precomposition."""
    from .two_cat import from_fincat
    ob = {d: from_fincat(k.hom_cat(d, c0)) for d in k.objects}
    on1 = {}
    for g, (e, d) in k.onecells.items():
        src_v, tgt_v = ob[d], ob[e]
        on1[g] = PsTwoFunctor(
            src_v, tgt_v,
            {f: k.c1(f, g) for f in src_v.objects},
            {x: k.wr(x, g) for x in src_v.onecells},
            {a: tgt_v.id2(k.wr(src_v.twocells[a][0], g))
             for a in src_v.twocells})
    on2 = {}
    for delta, (g, g2) in k.twocells.items():
        e, d = k.onecells[g]
        on2[delta] = PsTwoNatTrans(
            on1[g], on1[g2],
            {f: k.wl(f, delta) for f in ob[d].objects},
            {x: ob[e].id2(k.v(k.wl(k.tgt2(x), delta), k.wr(x, g)))
             for x in ob[d].onecells})
    return strict_trihom(k, ob, on1, on2)


def check_trihom_data(t, budget=None):
    budget = budget or Budget()
    k = t.base
    reports = []
    for f in k.onecells:
        d, c = k.onecells[f]
        h = t.on1.get(f)
        if h is None or h.dom != t.ob[c] or h.cod != t.ob[d]:
            return failed("check_trihom_data",
                          ["bad value pseudofunctor at %r" % f],
                          {"onecell": f})
        r = check_ps_two_functor(h, budget)
        if not r.ok:
            r.details.insert(0, "value pseudofunctor at %r" % f)
            return r
    for al, (f, f2) in k.twocells.items():
        tr = t.on2.get(al)
        if tr is None or tr.dom != t.on1[f] or tr.cod != t.on1[f2]:
            return failed("check_trihom_data",
                          ["bad value transformation at %r" % al],
                          {"twocell": al})
        r = check_ps_two_nat(tr, budget)
        if not r.ok:
            r.details.insert(0, "value transformation at %r" % al)
            return r
    # local strictness (the normalization this representation relies on)
    for (b, a), v in k.vcomp.items():
        budget.tick()
        f = k.twocells[a][0]
        c = k.onecells[f][1]
        cod = t.on1[f].cod
        for z in t.ob[c].objects:
            if t.on2[v].comp[z] != cod.c1(t.on2[b].comp[z],
                                          t.on2[a].comp[z]):
                return failed(
                    "check_trihom_data",
                    ["local composition not strict at (%r, %r)" % (b, a)],
                    {"pair": [b, a]})
    for (f, g), comp in k.hcomp1.items():
        tr = t.chi.get((f, g))
        want_dom = compose_ps_two_functors(t.on1[g], t.on1[f])
        if tr is None or tr.dom != want_dom or tr.cod != t.on1[comp]:
            return failed("check_trihom_data",
                          ["bad compositor boundary at (%r, %r)" % (f, g)],
                          {"pair": [f, g]})
        r = check_ps_two_nat(tr, budget)
        if not r.ok:
            r.details.insert(0, "compositor at (%r, %r)" % (f, g))
            return r
        cod = t.on1[g].cod
        for z, comp1 in tr.comp.items():
            budget.tick()
            if cod.equivalence_data(comp1, budget) is None:
                return failed(
                    "check_trihom_data",
                    ["compositor component at (%r, %r, %r) is not an "
                     "equivalence" % (f, g, z)],
                    {"pair": [f, g], "object": z, "component": comp1})
    for c in k.objects:
        tr = t.iota.get(c)
        if tr is None or tr.dom != identity_ps_two_functor(t.ob[c]) \
                or tr.cod != t.on1[k.id1(c)]:
            return failed("check_trihom_data",
                          ["bad unitor boundary at %r" % c], {"object": c})
        r = check_ps_two_nat(tr, budget)
        if not r.ok:
            r.details.insert(0, "unitor at %r" % c)
            return r
        for z, comp1 in tr.comp.items():
            if t.ob[c].equivalence_data(comp1, budget) is None:
                return failed("check_trihom_data",
                              ["unitor component at (%r, %r) is not an "
                               "equivalence" % (c, z)],
                              {"object": c, "component": comp1})
    # comparison families: completeness, boundaries and invertibility
    for f, (d, c) in k.onecells.items():
        if f not in t.delta_hat or f not in t.gamma_hat:
            return failed("check_trihom_data",
                          ["missing unit comparison family at %r" % f],
                          {"onecell": f})
        for g, (e, d2) in k.onecells.items():
            if d2 != d:
                continue
            for h2, (l, e2) in k.onecells.items():
                if e2 == e and (f, g, h2) not in t.omega:
                    return failed(
                        "check_trihom_data",
                        ["missing associativity comparison family at "
                         "(%r, %r, %r)" % (f, g, h2)],
                        {"triple": [f, g, h2]})
    for (f, g, h), table in t.omega.items():
        d, c = k.onecells[f]
        l = k.onecells[h][0]
        val_l, val_c = t.ob[l], t.ob[c]
        gh, fg = k.c1(g, h), k.c1(f, g)
        for z in val_c.objects:
            budget.tick()
            src = val_l.c1(t.chi[(f, gh)].comp[z],
                           t.chi[(g, h)].comp[t.on1[f].ob[z]])
            tgt = val_l.c1(t.chi[(fg, h)].comp[z],
                           t.on1[h].on1[t.chi[(f, g)].comp[z]])
            cell = table.get(z)
            if cell is None or val_l.twocells.get(cell) != (src, tgt) \
                    or not val_l.invertible2(cell):
                return failed("check_trihom_data",
                              ["bad associativity comparison at "
                               "(%r, %r, %r, %r)" % (f, g, h, z)],
                              {"triple": [f, g, h], "object": z})
    for f, table in t.delta_hat.items():
        d, c = k.onecells[f]
        val_d, val_c = t.ob[d], t.ob[c]
        for z in val_c.objects:
            src = val_d.c1(t.chi[(f, k.id1(d))].comp[z],
                           t.iota[d].comp[t.on1[f].ob[z]])
            cell = table.get(z)
            want = (src, val_d.id1(t.on1[f].ob[z]))
            if cell is None or val_d.twocells.get(cell) != want \
                    or not val_d.invertible2(cell):
                return failed("check_trihom_data",
                              ["bad right unit comparison at (%r, %r)"
                               % (f, z)], {"onecell": f, "object": z})
    for f, table in t.gamma_hat.items():
        d, c = k.onecells[f]
        val_d, val_c = t.ob[d], t.ob[c]
        for z in val_c.objects:
            src = val_d.c1(t.chi[(k.id1(c), f)].comp[z],
                           t.on1[f].on1[t.iota[c].comp[z]])
            cell = table.get(z)
            want = (src, val_d.id1(t.on1[f].ob[z]))
            if cell is None or val_d.twocells.get(cell) != want \
                    or not val_d.invertible2(cell):
                return failed("check_trihom_data",
                              ["bad left unit comparison at (%r, %r)"
                               % (f, z)], {"onecell": f, "object": z})
    return passed(
        "check_trihom_data",
        ["data-level invariants verified; coherence axioms beyond the "
         "recorded comparison families not checked"])


# --- transformations between homomorphisms ---------------------------------

class Tritransformation:
    """comp[C]: PsTwoFunctor R(C) -> F(C); square[f]: PsTwoNatTrans
    comp[D].R(f) => F(f).comp[C] with equivalence components; beta[(f, g)]
    and gamma[C]: per-object comparison 2-cells."""

    def __init__(self, dom, cod, comp, square, beta, gamma):
        self.dom = dom
        self.cod = cod
        self.comp = dict(comp)
        self.square = dict(square)
        self.beta = dict(beta)
        self.gamma = dict(gamma)


def identity_tritransformation(t):
    k = t.base
    comp = {c: identity_ps_two_functor(t.ob[c]) for c in k.objects}
    square, beta, gamma = {}, {}, {}
    for f in k.onecells:
        h = t.on1[f]
        square[f] = PsTwoNatTrans(
            h, h, {x: h.cod.id1(h.ob[x]) for x in h.dom.objects},
            {a: h.cod.id2(h.on1[a]) for a in h.dom.onecells})
    for (f, g), comp1 in k.hcomp1.items():
        d, c = k.onecells[f]
        e = k.onecells[g][0]
        val_e, val_c = t.ob[e], t.ob[c]
        # with identity squares both pasted sides reduce to the
        # compositor component, provided the value pseudofunctors
        # preserve identity 1-cells on the nose
        beta[(f, g)] = {x: val_e.id2(t.chi[(f, g)].comp[x])
                        for x in val_c.objects}
    for c in k.objects:
        val = t.ob[c]
        gamma[c] = {x: val.id2(t.iota[c].comp[x]) for x in val.objects}
    return Tritransformation(t, t, comp, square, beta, gamma)


def check_tritransformation(t, budget=None):
    budget = budget or Budget()
    R, F = t.dom, t.cod
    k = R.base
    for c in k.objects:
        h = t.comp.get(c)
        if h is None or h.dom != R.ob[c] or h.cod != F.ob[c]:
            return failed("check_tritransformation",
                          ["bad component at %r" % c], {"object": c})
        r = check_ps_two_functor(h, budget)
        if not r.ok:
            r.details.insert(0, "component at %r" % c)
            return r
    for f, (d, c) in k.onecells.items():
        sq = t.square.get(f)
        want_dom = compose_ps_two_functors(t.comp[d], R.on1[f])
        want_cod = compose_ps_two_functors(F.on1[f], t.comp[c])
        if sq is None or sq.dom != want_dom or sq.cod != want_cod:
            return failed("check_tritransformation",
                          ["bad square boundary at %r" % f], {"onecell": f})
        r = check_ps_two_nat(sq, budget)
        if not r.ok:
            r.details.insert(0, "square at %r" % f)
            return r
        val_d = F.ob[d]
        for x, comp1 in sq.comp.items():
            budget.tick()
            if val_d.equivalence_data(comp1, budget) is None:
                return failed("check_tritransformation",
                              ["square component at (%r, %r) is not an "
                               "equivalence" % (f, x)],
                              {"onecell": f, "object": x, "component": comp1})
    # squares are natural in base 2-cells: the two whiskered composites
    # around each delta: f => g agree componentwise (strict setting)
    for delta, (f, g) in k.twocells.items():
        d, c = k.onecells[f]
        val_d = F.ob[d]
        for x in R.ob[c].objects:
            budget.tick()
            left = val_d.c1(t.square[g].comp[x],
                            t.comp[d].on1[R.on2[delta].comp[x]])
            right = val_d.c1(F.on2[delta].comp[t.comp[c].ob[x]],
                             t.square[f].comp[x])
            if left != right:
                return failed("check_tritransformation",
                              ["square not natural in 2-cell %r at %r"
                               % (delta, x)],
                              {"twocell": delta, "object": x})
    # comparison 2-cell boundaries
    for (f, g), comp1 in k.hcomp1.items():
        d, c = k.onecells[f]
        e = k.onecells[g][0]
        val_e = F.ob[e]
        table = t.beta.get((f, g))
        if table is None:
            return failed("check_tritransformation",
                          ["missing composition comparison at (%r, %r)"
                           % (f, g)], {"pair": [f, g]})
        for x in R.ob[c].objects:
            budget.tick()
            xc = t.comp[c].ob[x]
            rf_x = R.on1[f].ob[x]
            src = val_e.c1_path([
                F.chi[(f, g)].comp[xc],
                F.on1[g].on1[t.square[f].comp[x]],
                t.square[g].comp[rf_x],
            ])
            tgt = val_e.c1(t.square[comp1].comp[x],
                           t.comp[e].on1[R.chi[(f, g)].comp[x]])
            cell = table.get(x)
            if cell is None or val_e.twocells.get(cell) != (src, tgt) \
                    or not val_e.invertible2(cell):
                return failed("check_tritransformation",
                              ["bad composition comparison at (%r, %r, %r)"
                               % (f, g, x)], {"pair": [f, g], "object": x})
    for c in k.objects:
        val_c = F.ob[c]
        table = t.gamma.get(c)
        if table is None:
            return failed("check_tritransformation",
                          ["missing unit comparison at %r" % c],
                          {"object": c})
        for x in R.ob[c].objects:
            src = val_c.c1(t.square[k.id1(c)].comp[x],
                           t.comp[c].on1[R.iota[c].comp[x]])
            tgt = F.iota[c].comp[t.comp[c].ob[x]]
            cell = table.get(x)
            if cell is None or val_c.twocells.get(cell) != (src, tgt) \
                    or not val_c.invertible2(cell):
                return failed("check_tritransformation",
                              ["bad unit comparison at (%r, %r)" % (c, x)],
                              {"object": c, "twocell": cell})
    r = _tritrans_assoc_axiom(t, budget)
    if not r.ok:
        return r
    r = _tritrans_unit_axioms(t, budget)
    if not r.ok:
        return r
    return passed("check_tritransformation")


def _tritrans_assoc_axiom(t, budget):
    R, F = t.dom, t.cod
    k = R.base
    for f, (d, c) in k.onecells.items():
        for g, (e, d2) in k.onecells.items():
            if d2 != d:
                continue
            for h, (l, e2) in k.onecells.items():
                if e2 != e:
                    continue
                gh, fg = k.c1(g, h), k.c1(f, g)
                fgh = k.c1(f, gh)
                val_l = F.ob[l]
                thC, thD = t.comp[c], t.comp[d]
                thE, thL = t.comp[e], t.comp[l]
                for x in R.ob[c].objects:
                    budget.tick(4)
                    xc = thC.ob[x]
                    rf_x = R.on1[f].ob[x]
                    rgrf_x = R.on1[g].ob[rf_x]
                    af_x = t.square[f].comp[x]
                    ag_rfx = t.square[g].comp[rf_x]
                    ah_rgrfx = t.square[h].comp[rgrf_x]
                    a_fg_x = t.square[fg].comp[x]
                    a_fgh_x = t.square[fgh].comp[x]
                    chiF_f_gh = F.chi[(f, gh)].comp[xc]
                    chiF_g_h_dd = F.chi[(g, h)].comp[thD.ob[rf_x]]
                    chiF_fg_h = F.chi[(fg, h)].comp[xc]
                    chiF_f_g = F.chi[(f, g)].comp[xc]
                    chiR_f_g = R.chi[(f, g)].comp[x]
                    chiR_g_h_rfx = R.chi[(g, h)].comp[rf_x]
                    chiR_f_gh = R.chi[(f, gh)].comp[x]
                    chiR_fg_h = R.chi[(fg, h)].comp[x]
                    # right-hand route
                    r1 = val_l.wl(
                        val_l.c1(chiF_f_gh, F.on1[gh].on1[af_x]),
                        t.beta[(g, h)][rf_x])
                    r2 = val_l.wr(t.beta[(f, gh)][x],
                                  thL.on1[chiR_g_h_rfx])
                    r3 = val_l.wl(
                        a_fgh_x,
                        _transport(thL, R.omega[(f, g, h)][x],
                                   [chiR_f_gh, chiR_g_h_rfx],
                                   [chiR_fg_h,
                                    R.on1[h].on1[chiR_f_g]]))
                    rhs = val_l.v_path([r3, r2, r1])
                    # left-hand route
                    s_a = val_l.wl(
                        chiF_f_gh,
                        val_l.wr(F.chi[(g, h)].cell[af_x],
                                 val_l.c1(F.on1[h].on1[ag_rfx],
                                          ah_rgrfx)))
                    tail3 = val_l.c1_path([
                        F.on1[h].on1[F.on1[g].on1[af_x]],
                        F.on1[h].on1[ag_rfx],
                        ah_rgrfx,
                    ])
                    s_b = val_l.wr(F.omega[(f, g, h)][xc], tail3)
                    l2 = val_l.wl(
                        chiF_fg_h,
                        val_l.wr(
                            _transport(F.on1[h], t.beta[(f, g)][x],
                                       [chiF_f_g, F.on1[g].on1[af_x],
                                        ag_rfx],
                                       [a_fg_x, thE.on1[chiR_f_g]]),
                            ah_rgrfx))
                    l3 = val_l.wl(
                        val_l.c1(chiF_fg_h, F.on1[h].on1[a_fg_x]),
                        t.square[h].cell[chiR_f_g])
                    l4 = val_l.wr(t.beta[(fg, h)][x],
                                  thL.on1[R.on1[h].on1[chiR_f_g]])
                    lhs = val_l.v_path([l4, l3, l2, s_b, s_a])
                    if lhs != rhs:
                        return failed(
                            "check_tritransformation",
                            ["associativity axiom fails at "
                             "(%r, %r, %r, %r)" % (f, g, h, x)],
                            {"triple": [f, g, h], "object": x,
                             "lhs": lhs, "rhs": rhs})
    return passed("_assoc")


def _tritrans_unit_axioms(t, budget):
    R, F = t.dom, t.cod
    k = R.base
    for f, (d, c) in k.onecells.items():
        id_d, id_c = k.id1(d), k.id1(c)
        val_d = F.ob[d]
        thC, thD = t.comp[c], t.comp[d]
        for x in R.ob[c].objects:
            budget.tick(2)
            xc = thC.ob[x]
            rf_x = R.on1[f].ob[x]
            af_x = t.square[f].comp[x]
            # right unit display
            chiF_f_id = F.chi[(f, id_d)].comp[xc]
            r1 = val_d.wr(t.beta[(f, id_d)][x],
                          thD.on1[R.iota[d].comp[rf_x]])
            r2 = val_d.wl(
                af_x,
                _transport_to_id(thD, R.delta_hat[f][x],
                                 [R.chi[(f, id_d)].comp[x],
                                  R.iota[d].comp[rf_x]], rf_x))
            rhs = val_d.v(r2, r1)
            l1 = val_d.wl(val_d.c1(chiF_f_id, F.on1[id_d].on1[af_x]),
                          t.gamma[d][rf_x])
            l2 = val_d.wl(chiF_f_id, F.iota[d].cell[af_x])
            l3 = val_d.wr(F.delta_hat[f][xc], af_x)
            lhs = val_d.v_path([l3, l2, l1])
            if lhs != rhs:
                return failed("check_tritransformation",
                              ["right unit axiom fails at (%r, %r)"
                               % (f, x)],
                              {"onecell": f, "object": x,
                               "lhs": lhs, "rhs": rhs})
            # left unit display
            chiF_id_f = F.chi[(id_c, f)].comp[xc]
            sq_id_x = t.square[id_c].comp[x]
            iota_x = R.iota[c].comp[x]
            r1 = val_d.wr(t.beta[(id_c, f)][x],
                          thD.on1[R.on1[f].on1[iota_x]])
            r2 = val_d.wl(
                af_x,
                _transport_to_id(thD, R.gamma_hat[f][x],
                                 [R.chi[(id_c, f)].comp[x],
                                  R.on1[f].on1[iota_x]], rf_x))
            rhs = val_d.v(r2, r1)
            l1 = val_d.wl(
                val_d.c1(chiF_id_f, F.on1[f].on1[sq_id_x]),
                val_d.inverse2(t.square[f].cell[iota_x]))
            l2 = val_d.wr(
                val_d.wl(chiF_id_f,
                         _transport(F.on1[f], t.gamma[c][x],
                                    [sq_id_x, thC.on1[iota_x]],
                                    [F.iota[c].comp[xc]])),
                af_x)
            l3 = val_d.wr(F.gamma_hat[f][xc], af_x)
            lhs = val_d.v_path([l3, l2, l1])
            if lhs != rhs:
                return failed("check_tritransformation",
                              ["left unit axiom fails at (%r, %r)"
                               % (f, x)],
                              {"onecell": f, "object": x,
                               "lhs": lhs, "rhs": rhs})
    return passed("_unit")


# --- modifications between transformations ---------------------------------

class Trimodification:
    """comp[D]: PsTwoNatTrans theta_D => phi_D; cell[g]: per-object
    comparison 2-cells for the square displays."""

    def __init__(self, dom, cod, comp, cell):
        self.dom = dom
        self.cod = cod
        self.comp = dict(comp)
        self.cell = dict(cell)


def identity_trimodification(t):
    R, F = t.dom, t.cod
    k = R.base
    comp = {c: identity_ps_two_nat(t.comp[c]) for c in k.objects}
    cell = {}
    for g, (e, d) in k.onecells.items():
        val_e = F.ob[e]
        cell[g] = {x: val_e.id2(t.square[g].comp[x])
                   for x in R.ob[d].objects}
    return Trimodification(t, t, comp, cell)


def check_trimodification(m, budget=None):
    budget = budget or Budget()
    th, ph = m.dom, m.cod
    R, F = th.dom, th.cod
    k = R.base
    for c in k.objects:
        tr = m.comp.get(c)
        if tr is None or tr.dom != th.comp[c] or tr.cod != ph.comp[c]:
            return failed("check_trimodification",
                          ["bad component at %r" % c], {"object": c})
        r = check_ps_two_nat(tr, budget)
        if not r.ok:
            r.details.insert(0, "component at %r" % c)
            return r
    for g, (e, d) in k.onecells.items():
        val_e = F.ob[e]
        table = m.cell.get(g)
        if table is None:
            return failed("check_trimodification",
                          ["missing square comparison at %r" % g],
                          {"onecell": g})
        for x in R.ob[d].objects:
            budget.tick()
            src = val_e.c1(F.on1[g].on1[m.comp[d].comp[x]],
                           th.square[g].comp[x])
            tgt = val_e.c1(ph.square[g].comp[x],
                           m.comp[e].comp[R.on1[g].ob[x]])
            cell = table.get(x)
            if cell is None or val_e.twocells.get(cell) != (src, tgt) \
                    or not val_e.invertible2(cell):
                return failed("check_trimodification",
                              ["bad square comparison at (%r, %r)" % (g, x)],
                              {"onecell": g, "object": x})
    # composition axiom
    for (f, g), fg in k.hcomp1.items():
        d, c = k.onecells[f]
        e = k.onecells[g][0]
        val_e = F.ob[e]
        for x in R.ob[c].objects:
            budget.tick(2)
            mc_x = m.comp[c].comp[x]
            phc_x = ph.comp[c].ob[x]
            rf_x = R.on1[f].ob[x]
            rgrf_x = R.on1[g].ob[rf_x]
            chiR = R.chi[(f, g)].comp[x]
            a1 = val_e.wl(F.on1[fg].on1[mc_x], th.beta[(f, g)][x])
            a2 = val_e.wr(m.cell[fg][x], th.comp[e].on1[chiR])
            path_a = val_e.v(a2, a1)
            b1a = val_e.wr(
                F.chi[(f, g)].cell[mc_x],
                val_e.c1(F.on1[g].on1[th.square[f].comp[x]],
                         th.square[g].comp[rf_x]))
            b1b = val_e.wl(
                F.chi[(f, g)].comp[phc_x],
                val_e.wr(
                    _transport(F.on1[g], m.cell[f][x],
                               [F.on1[f].on1[mc_x], th.square[f].comp[x]],
                               [ph.square[f].comp[x],
                                m.comp[d].comp[rf_x]]),
                    th.square[g].comp[rf_x]))
            b2 = val_e.wl(
                val_e.c1(F.chi[(f, g)].comp[phc_x],
                         F.on1[g].on1[ph.square[f].comp[x]]),
                m.cell[g][rf_x])
            b3 = val_e.wr(ph.beta[(f, g)][x], m.comp[e].comp[rgrf_x])
            b4 = val_e.wl(ph.square[fg].comp[x], m.comp[e].cell[chiR])
            path_b = val_e.v_path([b4, b3, b2, b1b, b1a])
            if path_a != path_b:
                return failed("check_trimodification",
                              ["composition axiom fails at (%r, %r, %r)"
                               % (f, g, x)],
                              {"pair": [f, g], "object": x,
                               "lhs": path_a, "rhs": path_b})
    # unit axiom
    for c in k.objects:
        id_c = k.id1(c)
        val_c = F.ob[c]
        for x in R.ob[c].objects:
            budget.tick()
            mc_x = m.comp[c].comp[x]
            iota_x = R.iota[c].comp[x]
            l1 = val_c.wl(F.on1[id_c].on1[mc_x], th.gamma[c][x])
            l2 = F.iota[c].cell[mc_x]
            path_l = val_c.v(l2, l1)
            r1 = val_c.wr(m.cell[id_c][x], th.comp[c].on1[iota_x])
            r2 = val_c.wl(ph.square[id_c].comp[x],
                          val_c.inverse2(m.comp[c].cell[iota_x]))
            r3 = val_c.wr(ph.gamma[c][x], mc_x)
            path_r = val_c.v_path([r3, r2, r1])
            if path_l != path_r:
                return failed("check_trimodification",
                              ["unit axiom fails at (%r, %r)" % (c, x)],
                              {"object": c, "lhs": path_l, "rhs": path_r})
    return passed("check_trimodification")


# --- perturbations ----------------------------------------------------------

class Perturbation:
    """comp[D]: per-object 2-cells m_D(x) => n_D(x)."""

    def __init__(self, dom, cod, comp):
        self.dom = dom
        self.cod = cod
        self.comp = {c: dict(v) for c, v in comp.items()}


def check_perturbation(p, budget=None):
    budget = budget or Budget()
    m, n = p.dom, p.cod
    th, ph = m.dom, m.cod
    R, F = th.dom, th.cod
    k = R.base
    for c in k.objects:
        table = p.comp.get(c)
        if table is None:
            return failed("check_perturbation",
                          ["missing component at %r" % c], {"object": c})
        mod = TwoModification(m.comp[c], n.comp[c], table)
        r = check_two_modification(mod, budget)
        if not r.ok:
            r.details.insert(0, "component at %r" % c)
            return r
    for g, (e, d) in k.onecells.items():
        val_e = F.ob[e]
        for x in R.ob[d].objects:
            budget.tick()
            lhs = val_e.v(n.cell[g][x],
                          val_e.wr(F.on1[g].on2[p.comp[d][x]],
                                   th.square[g].comp[x]))
            rhs = val_e.v(val_e.wl(ph.square[g].comp[x],
                                   p.comp[e][R.on1[g].ob[x]]),
                          m.cell[g][x])
            if lhs != rhs:
                return failed("check_perturbation",
                              ["square axiom fails at (%r, %r)" % (g, x)],
                              {"onecell": g, "object": x,
                               "lhs": lhs, "rhs": rhs})
    return passed("check_perturbation")


# --- the Yoneda actions -----------------------------------------------------

def _require_strict(f):
    if not f.is_strictly_compositional():
        raise MalformedTable(
            "Yoneda actions are implemented for strictly-compositional "
            "homomorphism data (identity compositors and unitors)")


def yoneda_tritrans(f_hom, c0, x0):
    """The transformation induced by an object of the value at c0: its
    component at D sends a 1-cell f: D -> c0 to the restriction of x0
    along f."""
    _require_strict(f_hom)
    k = f_hom.base
    rep = representable_trihom(k, c0)
    comp, square, beta, gamma = {}, {}, {}, {}
    for d in k.objects:
        val_rep = rep.ob[d]
        val = f_hom.ob[d]
        ob = {f: f_hom.on1[f].ob[x0] for f in val_rep.objects}
        # every 1-cell of the locally discrete value is a 2-cell of the
        # base (identity 1-cells included)
        on1 = {gam: f_hom.on2[gam].comp[x0] for gam in val_rep.onecells}
        on2 = {a: val.id2(on1[val_rep.twocells[a][0]])
               for a in val_rep.twocells}
        comp[d] = PsTwoFunctor(val_rep, val, ob, on1, on2)
    for g, (e, d) in k.onecells.items():
        dom = compose_ps_two_functors(comp[e], rep.on1[g])
        cod = compose_ps_two_functors(f_hom.on1[g], comp[d])
        val_e = f_hom.ob[e]
        sq_comp = {f: val_e.id1(dom.ob[f]) for f in rep.ob[d].objects}
        sq_cell = {a: val_e.id2(dom.on1[a]) for a in rep.ob[d].onecells}
        square[g] = PsTwoNatTrans(dom, cod, sq_comp, sq_cell)
    for (f, g), fg in k.hcomp1.items():
        d, c = k.onecells[f]
        e = k.onecells[g][0]
        val_e = f_hom.ob[e]
        beta[(f, g)] = {r: val_e.id2(val_e.id1(
            comp[e].ob[k.c1(k.c1(r, f), g)]))
            for r in rep.ob[c].objects}
    for c in k.objects:
        val_c = f_hom.ob[c]
        gamma[c] = {r: val_c.id2(val_c.id1(comp[c].ob[r]))
                    for r in rep.ob[c].objects}
    return Tritransformation(rep, f_hom, comp, square, beta, gamma)


def yoneda_trimod(f_hom, c0, a0, sigma_x=None, sigma_y=None):
    """The modification induced by a 1-cell a0: X -> Y of the value at c0:
    its component at a member f is the restriction of a0 along f."""
    _require_strict(f_hom)
    k = f_hom.base
    val_c0 = f_hom.ob[c0]
    x0, y0 = val_c0.onecells[a0]
    sx = sigma_x or yoneda_tritrans(f_hom, c0, x0)
    sy = sigma_y or yoneda_tritrans(f_hom, c0, y0)
    rep = sx.dom
    comp, cell = {}, {}
    for d in k.objects:
        val = f_hom.ob[d]
        cps = {f: f_hom.on1[f].on1[a0] for f in rep.ob[d].objects}
        cls = {gam: val.inverse2(f_hom.on2[gam].cell[a0])
               for gam in rep.ob[d].onecells}
        comp[d] = PsTwoNatTrans(sx.comp[d], sy.comp[d], cps, cls)
    for g, (e, d) in k.onecells.items():
        val_e = f_hom.ob[e]
        cell[g] = {f: val_e.id2(f_hom.on1[k.c1(f, g)].on1[a0])
                   for f in rep.ob[d].objects}
    return Trimodification(sx, sy, comp, cell)


def yoneda_pert(f_hom, c0, al0, m_a=None, m_b=None):
    """The perturbation induced by a 2-cell al0: a => b of the value at
    c0: its component at f is the restriction of al0 along f."""
    _require_strict(f_hom)
    k = f_hom.base
    val_c0 = f_hom.ob[c0]
    a0, b0 = val_c0.twocells[al0]
    ma = m_a or yoneda_trimod(f_hom, c0, a0)
    mb = m_b or yoneda_trimod(f_hom, c0, b0,
                              sigma_x=ma.dom, sigma_y=ma.cod)
    rep = ma.dom.dom
    comp = {}
    for d in k.objects:
        comp[d] = {f: f_hom.on1[f].on2[al0] for f in rep.ob[d].objects}
    return Perturbation(ma, mb, comp)
