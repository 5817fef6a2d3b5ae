"""Sigma-bicocones and sigma-bicolimits over element 2-categories.

A sigma-bicocone is an oplax cocone whose structure 2-cell is invertible on
every marked shape morphism (those whose 2-cell component is invertible).
An object is the sigma-bicolimit of a diagram when, for every test object,
whiskering the universal cocone is an equivalence between the hom-category
out of the apex and the category of cocones.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import BoundaryMismatch, SearchBudgetExceeded
from .fincat import FinCat, Functor, check_functor, is_equivalence
from .report import (Budget, CheckReport, FAIL, INCONCLUSIVE, PASS, failed,
                     passed)
from .sieves import groth
from .two_cat import find_iso_comma


class Diagram:
    """A strict 2-functor from a finite shape 2-category into K.

    marked lists the shape 1-cells on which sigma-cocones must have
    invertible structure 2-cells.
    """

    def __init__(self, shape, k, ob, on1, on2, marked=()):
        self.shape = shape
        self.k = k
        self.ob = dict(ob)
        self.on1 = dict(on1)
        self.on2 = dict(on2)
        self.marked = frozenset(marked)


def check_diagram(d, budget=None):
    budget = budget or Budget()
    sh, k = d.shape, d.k
    for s in sh.objects:
        if d.ob.get(s) not in k.objects:
            return failed("check_diagram", ["bad object image at %r" % s],
                          {"object": s})
    for m, (s, t) in sh.onecells.items():
        g = d.on1.get(m)
        if g is None or k.onecells.get(g) != (d.ob[s], d.ob[t]):
            return failed("check_diagram", ["bad 1-cell image at %r" % m],
                          {"onecell": m})
    for x, (m, m2) in sh.twocells.items():
        g = d.on2.get(x)
        if g is None or k.twocells.get(g) != (d.on1[m], d.on1[m2]):
            return failed("check_diagram", ["bad 2-cell image at %r" % x],
                          {"twocell": x})
    for s in sh.objects:
        if d.on1[sh.id1(s)] != k.id1(d.ob[s]):
            return failed("check_diagram", ["identity 1-cell not preserved "
                                            "at %r" % s], {"object": s})
    for (b, a), c in sh.hcomp1.items():
        budget.tick()
        if d.on1[c] != k.c1(d.on1[b], d.on1[a]):
            return failed("check_diagram",
                          ["composition not preserved at (%r, %r)" % (b, a)],
                          {"pair": [b, a]})
    for m in sh.onecells:
        if d.on2[sh.id2(m)] != k.id2(d.on1[m]):
            return failed("check_diagram", ["identity 2-cell not preserved "
                                            "at %r" % m], {"onecell": m})
    for (b, a), c in sh.vcomp.items():
        budget.tick()
        if d.on2[c] != k.v(d.on2[b], d.on2[a]):
            return failed("check_diagram",
                          ["vertical composition not preserved at (%r, %r)"
                           % (b, a)], {"pair": [b, a]})
    for (b, a), c in sh.hcomp2.items():
        budget.tick()
        if d.on2[c] != k.h(d.on2[b], d.on2[a]):
            return failed("check_diagram",
                          ["horizontal composition not preserved at "
                           "(%r, %r)" % (b, a)], {"pair": [b, a]})
    return passed("check_diagram")


def projection_diagram(gt):
    """The first-component projection of the 2-category of elements."""
    k = gt.sieve.k
    ob = {name: df[0] for name, df in gt.ob_of.items()}
    on1 = {name: ga[0] for name, ga in gt.one_of.items()}
    on2 = {name: delta for name, delta in gt.two_of.items()}
    marked = [name for name, (g, a) in gt.one_of.items()
              if k.invertible2(a)]
    return Diagram(gt.two_cat, k, ob, on1, on2, marked)


@dataclass(frozen=True)
class SigmaCocone:
    """legs: shape object -> 1-cell into the apex; cells: shape 1-cell m
    with m: s -> t mapped to a 2-cell legs[s] => legs[t] . F(m)."""

    apex: str
    legs: tuple     # sorted pairs
    cells: tuple    # sorted pairs

    @staticmethod
    def make(apex, legs, cells):
        return SigmaCocone(apex, tuple(sorted(legs.items())),
                           tuple(sorted(cells.items())))

    def leg(self, s):
        return dict(self.legs)[s]

    def cell(self, m):
        return dict(self.cells)[m]


def check_sigma_cocone(d, cc, budget=None):
    """The oplax cocone equations plus the sigma invertibility filter."""
    budget = budget or Budget()
    k = d.k
    sh = d.shape
    legs, cells = dict(cc.legs), dict(cc.cells)
    for s in sh.objects:
        r = legs.get(s)
        if r is None or k.onecells.get(r) != (d.ob[s], cc.apex):
            return failed("check_sigma_cocone", ["bad leg at %r" % s],
                          {"object": s})
    for m, (s, t) in sh.onecells.items():
        c = cells.get(m)
        want = (legs[s], k.c1(legs[t], d.on1[m]))
        if c is None or k.twocells.get(c) != want:
            return failed("check_sigma_cocone",
                          ["bad structure 2-cell at %r" % m], {"onecell": m})
    for s in sh.objects:
        if cells[sh.id1(s)] != k.id2(legs[s]):
            return failed("check_sigma_cocone",
                          ["identity condition fails at %r" % s],
                          {"object": s})
    for (b, a), c in sh.hcomp1.items():
        budget.tick()
        got = k.v(k.wr(cells[b], d.on1[a]), cells[a])
        if cells[c] != got:
            return failed("check_sigma_cocone",
                          ["composition condition fails at (%r, %r)" % (b, a)],
                          {"pair": [b, a]})
    for x, (m, m2) in sh.twocells.items():
        budget.tick()
        t = sh.onecells[m][1]
        if k.v(k.wl(legs[t], d.on2[x]), cells[m]) != cells[m2]:
            return failed("check_sigma_cocone",
                          ["2-cell condition fails at %r" % x],
                          {"twocell": x})
    for m in d.marked:
        if not k.invertible2(cells[m]):
            return failed("check_sigma_cocone",
                          ["structure 2-cell not invertible on marked %r" % m],
                          {"onecell": m})
    return passed("check_sigma_cocone")


def _free_generators(sh):
    """A set of shape 1-cells from which every other 1-cell is derivable
    by composition (identities are always derivable).  Chosen greedily in
    sorted order so the choice is deterministic."""
    identities = {sh.id1(s) for s in sh.objects}
    known = set(identities)
    remaining = [m for m in sorted(sh.onecells) if m not in identities]
    free = []
    while remaining:
        progressed = True
        while progressed:
            progressed = False
            for m in list(remaining):
                if any(c == m and b in known and a in known
                       for (b, a), c in sh.hcomp1.items()):
                    known.add(m)
                    remaining.remove(m)
                    progressed = True
        if remaining:
            m = remaining.pop(0)
            free.append(m)
            known.add(m)
    return free


def enumerate_sigma_cocones(d, u, budget=None):
    """All sigma-bicocones of the diagram on the object u."""
    budget = budget or Budget()
    k, sh = d.k, d.shape
    sobs = sorted(sh.objects)
    leg_pools = [k.one_cells_between(d.ob[s], u) for s in sobs]
    free = _free_generators(sh)
    out = []
    for leg_choice in product(*leg_pools):
        legs = dict(zip(sobs, leg_choice))
        pools = []
        for m in free:
            s, t = sh.onecells[m]
            cand = k.two_cells_between(legs[s], k.c1(legs[t], d.on1[m]))
            if m in d.marked:
                cand = tuple(c for c in cand if k.invertible2(c))
            pools.append(cand)
        for choice in product(*pools):
            budget.tick()
            cells = dict(zip(free, choice))
            for s in sobs:
                cells[sh.id1(s)] = k.id2(legs[s])
            ok = _complete_cells(k, sh, d, legs, cells)
            if not ok:
                continue
            cc = SigmaCocone.make(u, legs, cells)
            if check_sigma_cocone(d, cc, budget).ok:
                out.append(cc)
    return sorted(out, key=lambda c: (c.legs, c.cells))


def _complete_cells(k, sh, d, legs, cells):
    """Derive composite structure cells; False on irrecoverable clash."""
    changed = True
    while changed:
        changed = False
        for (b, a), c in sh.hcomp1.items():
            if b in cells and a in cells and c not in cells:
                cells[c] = k.v(k.wr(cells[b], d.on1[a]), cells[a])
                changed = True
    return all(m in cells for m in sh.onecells)


def cocone_morphisms(d, c1, c2, budget=None):
    """Modifications between two cocones: compatible component families."""
    budget = budget or Budget()
    k, sh = d.k, d.shape
    sobs = sorted(sh.objects)
    legs1, legs2 = dict(c1.legs), dict(c2.legs)
    pools = [k.two_cells_between(legs1[s], legs2[s]) for s in sobs]
    out = []
    for choice in product(*pools):
        budget.tick()
        mu = dict(zip(sobs, choice))
        ok = True
        for m, (s, t) in sh.onecells.items():
            lhs = k.v(c2.cell(m), mu[s])
            rhs = k.v(k.wr(mu[t], d.on1[m]), c1.cell(m))
            if lhs != rhs:
                ok = False
                break
        if ok:
            out.append(tuple(sorted(mu.items())))
    return out


def sigma_cocone_category(d, u, budget=None):
    """The category of sigma-bicocones on u and their modifications."""
    budget = budget or Budget()
    k = d.k
    cocones = enumerate_sigma_cocones(d, u, budget)
    names = {cc: "cc%d" % i for i, cc in enumerate(cocones)}
    src, tgt, identity, comp = {}, {}, {}, {}
    mor_names = {}
    for a in cocones:
        for b in cocones:
            for mu in cocone_morphisms(d, a, b, budget):
                mid = "md%d" % len(mor_names)
                mor_names[(names[a], names[b], mu)] = mid
                src[mid], tgt[mid] = names[a], names[b]
    decode_m = {v: key for key, v in mor_names.items()}
    for a in cocones:
        ident = tuple(sorted((s, k.id2(r)) for s, r in a.legs))
        identity[names[a]] = mor_names[(names[a], names[a], ident)]
    for m2, (sa2, sb2, mu2) in decode_m.items():
        for m1, (sa1, sb1, mu1) in decode_m.items():
            if sb1 == sa2:
                mu = tuple(sorted(
                    (s, k.v(dict(mu2)[s], dict(mu1)[s])) for s, _ in mu1))
                comp[(m2, m1)] = mor_names[(sa1, sb2, mu)]
    cat = FinCat([names[c] for c in cocones], src, tgt, identity, comp)
    cat.decode = {"cocones": {names[c]: c for c in cocones},
                  "morphisms": decode_m}
    return cat


def whisker_cocone(d, cc, r):
    """Postcompose a cocone with a 1-cell out of its apex."""
    k = d.k
    legs = {s: k.c1(r, leg) for s, leg in cc.legs}
    cells = {m: k.wl(r, c) for m, c in cc.cells}
    return SigmaCocone.make(k.tgt1(r), legs, cells)


def comparison_functor(d, mu, u, budget=None):
    """Whiskering Hom(apex, u) into the cocone category on u."""
    budget = budget or Budget()
    k = d.k
    cc_cat = sigma_cocone_category(d, u, budget)
    hom = k.hom_cat(mu.apex, u)
    by_cocone = {cc: name for name, cc in cc_cat.decode["cocones"].items()}
    mor_index = {key: name for name, key in cc_cat.decode["morphisms"].items()}
    ob, mor = {}, {}
    for r in hom.objects:
        img = whisker_cocone(d, mu, r)
        if img not in by_cocone:
            return None, cc_cat, failed(
                "comparison_functor",
                ["whiskering %r does not yield a valid cocone" % r],
                {"onecell": r})
    for r in hom.objects:
        ob[r] = by_cocone[whisker_cocone(d, mu, r)]
    for gam in hom.morphisms:
        r1, r2 = hom.src[gam], hom.tgt[gam]
        comps = tuple(sorted((s, k.wr(gam, leg)) for s, leg in mu.legs))
        key = (ob[r1], ob[r2], comps)
        if key not in mor_index:
            return None, cc_cat, failed(
                "comparison_functor",
                ["whiskered 2-cell %r is not a modification" % gam],
                {"twocell": gam})
        mor[gam] = mor_index[key]
    fun = Functor(hom, cc_cat, ob, mor)
    r = check_functor(fun)
    if not r.ok:
        return None, cc_cat, r
    return fun, cc_cat, passed("comparison_functor")


@dataclass
class SigmaColimCertificate:
    apex: str
    verdict: str
    per_object: dict
    details: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.verdict == PASS

    def report(self):
        return CheckReport("verify_sigma_bicolim", self.verdict,
                           list(self.details),
                           dict(self.witness,
                                per_object={k: v.verdict
                                            for k, v in
                                            self.per_object.items()}))


def verify_sigma_bicolim(c, d, mu, budget=None):
    """Decide whether c (with cocone mu) is the sigma-bicolimit of d."""
    budget = budget or Budget()
    k = d.k
    per_object = {}
    details = []
    witness = {}
    verdict = PASS
    r0 = check_sigma_cocone(d, mu, budget)
    if not r0.ok:
        return SigmaColimCertificate(c, FAIL, {}, ["cocone invalid: %s"
                                                   % r0.details], r0.witness)
    try:
        for u in sorted(k.objects):
            fun, cc_cat, rep = comparison_functor(d, mu, u, budget)
            if fun is None:
                per_object[u] = rep
                verdict = FAIL
                witness = dict(rep.witness, test_object=u)
                break
            req = is_equivalence(fun, budget)
            per_object[u] = req
            if not req.ok:
                verdict = FAIL
                witness = dict(req.witness, test_object=u)
                details.append("comparison at %r: %s" % (u, req.details))
                break
            details.append("comparison at %r: equivalence onto %d cocones"
                           % (u, len(cc_cat.objects)))
        else:
            # pseudonaturality in the test object (strict by construction;
            # failures are reported distinctly from objectwise failures)
            for e, (u1, u2) in k.onecells.items():
                for r in k.one_cells_between(mu.apex, u1):
                    budget.tick()
                    lhs = whisker_cocone(d, mu, k.c1(e, r))
                    rhs = whisker_cocone(d, whisker_cocone(d, mu, r), e)
                    if lhs != rhs:
                        verdict = FAIL
                        details.append("pseudonaturality fails along %r" % e)
                        witness = {"onecell": e, "at": r,
                                   "reason": "pseudonaturality"}
                        break
                if verdict == FAIL:
                    break
    except SearchBudgetExceeded as exc:
        return SigmaColimCertificate(c, INCONCLUSIVE, per_object,
                                     ["budget exhausted after %d steps"
                                      % exc.steps], {"steps": exc.steps})
    return SigmaColimCertificate(c, verdict, per_object, details, witness)


def universal_cocone(s, gt=None):
    """The canonical cocone presenting the target over a sieve's elements."""
    gt = gt or groth(s)
    k = s.k
    d = projection_diagram(gt)
    legs = {name: df[1] for name, df in gt.ob_of.items()}
    cells = {}
    for name, (g, alpha) in gt.one_of.items():
        src_name, tgt_name = gt.two_cat.onecells[name]
        f = gt.ob_of[tgt_name][1]
        cells[name] = k.v(s.sigma[(f, g)], alpha)
    return d, SigmaCocone.make(s.target, legs, cells)


def is_sigma_bicolim_bisieve(s, budget=None):
    d, mu = universal_cocone(s)
    cert = verify_sigma_bicolim(s.target, d, mu, budget)
    return cert.report()


def conicalize(s, gt, w, apex=None):
    """Turn a transformation from the sieve presheaf into a representable
    (a weighted cocone) into a sigma-cocone over the element 2-category."""
    k = s.k
    d = projection_diagram(gt)
    legs, cells = {}, {}
    for name, (dd, f) in gt.ob_of.items():
        legs[name] = w.comp[dd].o(f)
    for name, (g, alpha) in gt.one_of.items():
        src_name, tgt_name = gt.two_cat.onecells[name]
        e, h = gt.ob_of[src_name]
        dd, f = gt.ob_of[tgt_name]
        cells[name] = k.v(w.cells[g].at(f), w.comp[e].m(alpha))
    if apex is None:
        apex = k.tgt1(next(iter(legs.values())))
    return d, SigmaCocone.make(apex, legs, cells)


# --- change of base along a morphism into the target ---------------------

def _induced_1cell(k, cone, v, w, filler):
    """1-cells u into the cone apex with p.u = v, q.u = w and theta.u equal
    to the given filler (strict iso-comma factorizations)."""
    out = []
    for u in k.one_cells_between(k.src1(v), cone.apex):
        if k.c1(cone.p, u) == v and k.c1(cone.q, u) == w \
                and k.wr(cone.theta, u) == filler:
            out.append(u)
    return out


def coconofstar_diagram(s, f, budget=None):
    """The iso-comma diagram of Prop-style change of base, plus its cocone.

    Returns (diagram, cocone, report); diagram/cocone are None when some
    iso-comma or induced cell is missing or ambiguous.
    """
    budget = budget or Budget()
    k = s.k
    x, y = k.onecells[f]
    if y != s.target:
        raise BoundaryMismatch("%r does not land in %r" % (f, s.target))
    gt = groth(s)
    sh = gt.two_cat
    cones = {}
    for name, (dd, h) in gt.ob_of.items():
        cone, rep = find_iso_comma(k, f, h, budget)
        if cone is None:
            return None, None, failed(
                "verify_coconofstar",
                ["iso-comma missing for member %r" % h],
                {"member": h, "reason": "IsoCommaMissing"})
        cones[name] = cone
    ob = {name: cones[name].apex for name in sh.objects}
    on1 = {}
    for name, (g, alpha) in gt.one_of.items():
        src_name, tgt_name = sh.onecells[name]
        e, h = gt.ob_of[src_name]
        dd, l = gt.ob_of[tgt_name]
        t = s.tilde[(l, g)]
        mid_name = "(%s|%s)" % (e, t)
        ch, ct, cl = cones[src_name], cones[mid_name], cones[tgt_name]
        # first factor: induced by the 2-cell component alpha
        filler1 = k.v(k.wr(alpha, ch.q), ch.theta)
        us1 = _induced_1cell(k, ct, ch.p, ch.q, filler1)
        # second factor: induced by the restriction witness
        filler2 = k.v(k.wr(s.sigma[(l, g)], ct.q), ct.theta)
        us2 = _induced_1cell(k, cl, ct.p, k.c1(g, ct.q), filler2)
        if len(us1) != 1 or len(us2) != 1:
            return None, None, failed(
                "verify_coconofstar",
                ["induced morphism for %r missing or ambiguous (%d, %d "
                 "candidates)" % (name, len(us1), len(us2))],
                {"onecell": name, "candidates": [us1, us2]})
        on1[name] = k.c1(us2[0], us1[0])
    on2 = {}
    for name2, (m1, m2) in sh.twocells.items():
        delta = gt.two_of[name2]
        src_name, tgt_name = sh.onecells[m1]
        cl = cones[tgt_name]
        ch = cones[src_name]
        nu = k.wr(delta, ch.q)
        gammas = [
            gam for gam in k.two_cells_between(on1[m1], on1[m2])
            if k.wl(cl.p, gam) == k.id2(k.c1(cl.p, on1[m1]))
            and k.wl(cl.q, gam) == nu
        ]
        budget.tick()
        if len(gammas) != 1:
            return None, None, failed(
                "verify_coconofstar",
                ["induced 2-cell for %r missing or ambiguous (%d candidates)"
                 % (name2, len(gammas))],
                {"twocell": name2, "candidates": gammas})
        on2[name2] = gammas[0]
    marked = [name for name, (g, a) in gt.one_of.items() if k.invertible2(a)]
    d = Diagram(sh, k, ob, on1, on2, marked)
    legs = {name: cones[name].p for name in sh.objects}
    cells = {m: k.id2(legs[sh.onecells[m][0]]) for m in sh.onecells}
    mu = SigmaCocone.make(x, legs, cells)
    return d, mu, passed("coconofstar_diagram")


def verify_coconofstar(s, f, budget=None):
    """Change of base: the domain of f is the sigma-bicolimit of the
    iso-comma diagram over the sieve's 2-category of elements."""
    budget = budget or Budget()
    d, mu, rep = coconofstar_diagram(s, f, budget)
    if d is None:
        return rep
    rd = check_diagram(d, budget)
    if not rd.ok:
        rd.details.insert(0, "induced diagram is not a 2-functor")
        return rd
    x = s.k.onecells[f][0]
    cert = verify_sigma_bicolim(x, d, mu, budget)
    return cert.report()
