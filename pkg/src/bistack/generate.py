"""Deterministic seeded instance generators.

Three profiles:

* ``locally-discrete-site``: a random finite poset category embedded as a
  locally discrete 2-category, with a saturated covering family and a
  random discrete-valued homomorphism.
* ``tiny-2site``: a genuinely 2-categorical base drawn from a small family
  of shapes, with a saturated covering family and a representable value.
* ``mutant``: a valid document with exactly one labeled table corruption;
  generation re-runs the document's own check battery and keeps only
  mutations that fail exactly the labeled check.

All profiles self-validate before returning, so a generated document is a
usable fixture by construction.
"""

import json
import random
from itertools import product

from .fincat import FinCat, discrete
from .two_cat import check_two_category, from_fincat
from .sieves import Bisieve, candidate_sieves, check_bitopology, \
    maximal_bisieve, pullback_sieve, sieve_equivalence
from .builders import thin_two_cat
from .report import Budget
from .workspace import SCHEMA, load_data, _encode_two_cat, _encode_bisieve

PROFILES = ("locally-discrete-site", "tiny-2site", "mutant")


# --- random sites ------------------------------------------------------------

def _random_poset_cat(rng, max_objects=4, max_morphisms=12):
    """A finite poset as a category: at most one morphism per ordered pair."""
    while True:
        n = rng.randint(2, max_objects)
        objs = ["O%d" % i for i in range(n)]
        rel = set()
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.45:
                    rel.add((i, j))
        changed = True
        while changed:
            changed = False
            for (i, j) in list(rel):
                for (j2, k) in list(rel):
                    if j2 == j and (i, k) not in rel:
                        rel.add((i, k))
                        changed = True
        if n + len(rel) > max_morphisms:
            continue
        src, tgt, identity = {}, {}, {}
        for i, o in enumerate(objs):
            m = "id_%s" % o
            src[m], tgt[m], identity[o] = o, o, m
        for (i, j) in sorted(rel):
            m = "m_%d_%d" % (i, j)
            src[m], tgt[m] = objs[i], objs[j]
        def name(i, j):
            return identity[objs[i]] if i == j else "m_%d_%d" % (i, j)
        comp = {}
        idx = {m: (objs.index(src[m]), objs.index(tgt[m])) for m in src}
        for g in src:
            for f in src:
                if tgt[f] == src[g]:
                    comp[(g, f)] = name(idx[f][0], idx[g][1])
        return FinCat(objs, src, tgt, identity, comp)


def _covered(existing, s, budget):
    return any(sieve_equivalence(s, t, budget).ok for t in existing)


def _literalize(s):
    """The same member family with literal closure witnesses: tilde is
    base composition and every sigma is an identity.  Only valid for
    member sets literally closed under precomposition (maximal sieves and
    pullbacks of literal sieves are)."""
    k = s.k
    tilde, sigma = {}, {}
    for (f, g) in s.tilde:
        t = k.c1(f, g)
        tilde[(f, g)] = t
        sigma[(f, g)] = k.id2(t)
    return Bisieve(k, s.target, s.members, tilde, sigma)


def _literal_candidates(k, c, budget):
    """Candidate sieves whose closure witnesses are literal composites
    (tilde agrees with base composition), one per member set.  These are
    the sieves the direct descent checker can restrict along."""
    seen = set()
    out = []
    for s in candidate_sieves(k, c, budget):
        if any(k.c1(f, g) != t for (f, g), t in s.tilde.items()):
            continue
        key = tuple(sorted((d, tuple(sorted(ms)))
                           for d, ms in s.members.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(s)
    return out


def _saturate_topology(k, chosen, budget):
    """Close a covering family under pullback (T2) and local character
    (T3), starting from the maximal sieves."""
    cands = {c: _literal_candidates(k, c, budget) for c in k.objects}

    def canonical(c, s):
        for t in cands[c]:
            if sieve_equivalence(s, t, budget).ok:
                return t
        return s

    cov = {c: [_literalize(maximal_bisieve(k, c))] for c in k.objects}
    for c, extra in chosen.items():
        for s in extra:
            if not _covered(cov[c], s, budget):
                cov[c].append(s)
    changed = True
    while changed:
        changed = False
        for c in k.objects:
            for s in list(cov[c]):
                for f, (d, c2) in sorted(k.onecells.items()):
                    if c2 != c:
                        continue
                    p = pullback_sieve(s, f, budget)
                    if not _covered(cov[d], p, budget):
                        cov[d].append(canonical(d, p))
                        changed = True
        for c in k.objects:
            for s in cands[c]:
                if _covered(cov[c], s, budget):
                    continue
                for r in cov[c]:
                    if all(_covered(cov[k.onecells[f][0]],
                                    pullback_sieve(s, f, budget), budget)
                           for _, f in r.all_members()):
                        cov[c].append(s)
                        changed = True
                        break
    return cov


def _random_covering(k, rng, budget):
    chosen = {}
    for c in sorted(k.objects):
        pool = _literal_candidates(k, c, budget)
        picks = [s for s in pool if rng.random() < 0.4]
        chosen[c] = picks[:2]
    return _saturate_topology(k, chosen, budget)


# --- random discrete-valued homomorphism over a poset site --------------------

def _random_discrete_presheaf(cat, rng, max_elems=2):
    """Element sets and contravariant restriction maps, strictly
    functorial (found by backtracking with a seeded candidate order)."""
    elems = {c: ["%s_e%d" % (c, i) for i in range(rng.randint(1, max_elems))]
             for c in cat.objects}
    morphs = [m for m in sorted(cat.morphisms) if not cat.is_identity(m)]
    maps = {cat.id(c): {x: x for x in elems[c]} for c in cat.objects}

    def consistent(assigned):
        for g in assigned:
            for f in assigned:
                if cat.tgt[f] != cat.src[g]:
                    continue
                h = cat.compose(g, f)
                if h in assigned or cat.is_identity(h):
                    table = maps if cat.is_identity(h) else assigned
                    want = table[h] if not cat.is_identity(h) else maps[h]
                    for x in elems[cat.tgt[g]]:
                        if assigned[f][assigned[g][x]] != want[x]:
                            return False
        return True

    def extend(i, assigned):
        if i == len(morphs):
            return dict(assigned)
        m = morphs[i]
        dom = elems[cat.tgt[m]]
        cod = elems[cat.src[m]]
        cands = list(product(cod, repeat=len(dom)))
        rng.shuffle(cands)
        for choice in cands:
            assigned[m] = dict(zip(dom, choice))
            if consistent(assigned):
                out = extend(i + 1, assigned)
                if out is not None:
                    return out
            del assigned[m]
        return None

    solution = extend(0, {})
    maps.update(solution)
    return elems, maps


def _encode_discrete_trihom(two_cat_name, k, elems, maps):
    values = {}
    for c in k.objects:
        values[c] = _encode_two_cat(from_fincat(discrete(elems[c])))
    on1 = {}
    for f in k.onecells:
        e, d = k.onecells[f]
        ob = dict(maps[f])
        one = {"id_%s" % x: "id_%s" % ob[x] for x in elems[d]}
        two = {"2id_id_%s" % x: "2id_id_%s" % ob[x] for x in elems[d]}
        on1[f] = {"ob": ob, "on1": one, "on2": two}
    return {"kind": "tables", "two_cat": two_cat_name,
            "values": values, "on1": on1, "on2": {}}


# --- 2-categorical base shapes -------------------------------------------------

def _split_idempotent_base():
    onecells = {"id_A": ("A", "A"), "id_B": ("B", "B"),
                "u": ("A", "B"), "v": ("B", "A"), "e": ("A", "A")}
    table = {("id_A", "id_A"): "id_A", ("id_B", "id_B"): "id_B",
             ("u", "id_A"): "u", ("id_B", "u"): "u",
             ("v", "id_B"): "v", ("id_A", "v"): "v",
             ("e", "id_A"): "e", ("id_A", "e"): "e",
             ("v", "u"): "e", ("u", "v"): "id_B",
             ("e", "e"): "e", ("u", "e"): "u", ("e", "v"): "v"}
    return thin_two_cat(["A", "B"], onecells, {"A": "id_A", "B": "id_B"},
                        table, [("id_A", "e"), ("e", "id_A")])


def _parallel_iso_base():
    """Two parallel 1-cells joined by an invertible 2-cell."""
    onecells = {"id_A": ("A", "A"), "id_B": ("B", "B"),
                "u": ("A", "B"), "w": ("A", "B")}
    table = {("id_A", "id_A"): "id_A", ("id_B", "id_B"): "id_B",
             ("u", "id_A"): "u", ("id_B", "u"): "u",
             ("w", "id_A"): "w", ("id_B", "w"): "w"}
    return thin_two_cat(["A", "B"], onecells, {"A": "id_A", "B": "id_B"},
                        table, [("u", "w"), ("w", "u")])


def _z2_base():
    """One object with an order-two 2-cell on the identity."""
    z2 = {("2id_id_P", "2id_id_P"): "2id_id_P", ("2id_id_P", "t"): "t",
          ("t", "2id_id_P"): "t", ("t", "t"): "2id_id_P"}
    from .two_cat import Fin2Cat
    return Fin2Cat(["P"], {"id_P": ("P", "P")},
                   {"2id_id_P": ("id_P", "id_P"), "t": ("id_P", "id_P")},
                   {"P": "id_P"}, {"id_P": "2id_id_P"},
                   z2, {("id_P", "id_P"): "id_P"}, dict(z2))


_TINY_BASES = (_split_idempotent_base, _parallel_iso_base, _z2_base)


# --- document assembly ---------------------------------------------------------

def _site_document(k, cov, trihom=None):
    sieve_names = {}
    bisieves = {}
    for c in sorted(cov):
        for i, s in enumerate(cov[c]):
            name = "S_%s_%d" % (c, i)
            sieve_names[(c, i)] = name
            bisieves[name] = _encode_bisieve("K", s)
    raw = {
        "schema": SCHEMA,
        "two_cats": {"K": _encode_two_cat(k)},
        "bisieves": bisieves,
        "bitopologies": {"tau": {
            "two_cat": "K",
            "covering": {c: [sieve_names[(c, i)]
                             for i in range(len(cov[c]))]
                         for c in sorted(cov)}}},
        "checks": {
            "two_cat:K": {"op": "two_category", "two_cat": "K"},
            "T1": {"op": "T1", "bitopology": "tau"},
            "T2": {"op": "T2", "bitopology": "tau"},
            "T3": {"op": "T3", "bitopology": "tau"},
        },
    }
    for name in sorted(bisieves):
        raw["checks"]["bisieve:%s" % name] = {"op": "bisieve",
                                              "bisieve": name}
    if trihom is not None:
        raw["trihoms"] = {"F1": trihom}
        raw["checks"]["2stack:F1"] = {"op": "2stack", "trihom": "F1",
                                      "bitopology": "tau"}
    return raw


def _generate_locally_discrete(rng):
    budget = Budget()
    cat = _random_poset_cat(rng)
    k = from_fincat(cat)
    cov = _random_covering(k, rng, budget)
    elems, maps = _random_discrete_presheaf(cat, rng)
    return _site_document(k, cov, _encode_discrete_trihom("K", k,
                                                          elems, maps))


def _generate_tiny_2site(rng):
    budget = Budget()
    k = _TINY_BASES[rng.randrange(len(_TINY_BASES))]()
    cov = _random_covering(k, rng, budget)
    at = sorted(k.objects)[rng.randrange(len(k.objects))]
    raw = _site_document(k, cov)
    raw["trihoms"] = {"F1": {"kind": "representable", "two_cat": "K",
                             "at": at}}
    raw["checks"]["2stack:F1"] = {"op": "2stack", "trihom": "F1",
                                  "bitopology": "tau"}
    return raw


# --- mutants -------------------------------------------------------------------

def _mutations(raw):
    """Candidate (label, failing-check, mutated-doc) triples, in a
    deterministic order."""
    out = []
    for kname in sorted(raw.get("two_cats", {})):
        body = raw["two_cats"][kname]
        twos = sorted(body["twocells"])
        for i, row in enumerate(body["vcomp"]):
            for wrong in twos:
                if wrong == row[-1]:
                    continue
                mutated = json.loads(json.dumps(raw))
                mutated["two_cats"][kname]["vcomp"][i][-1] = wrong
                mutated["mutation"] = {"label": "vcomp-corrupt",
                                       "check": "two_cat:%s" % kname}
                out.append(mutated)
    for sname in sorted(raw.get("bisieves", {})):
        body = raw["bisieves"][sname]
        for i, row in enumerate(body["sigma"]):
            k = raw["two_cats"][body["two_cat"]]
            for wrong in sorted(k["twocells"]):
                if wrong == row[-1]:
                    continue
                mutated = json.loads(json.dumps(raw))
                mutated["bisieves"][sname]["sigma"][i][-1] = wrong
                mutated["mutation"] = {"label": "sigma-corrupt",
                                       "check": "bisieve:%s" % sname}
                out.append(mutated)
    for tname in sorted(raw.get("bitopologies", {})):
        body = raw["bitopologies"][tname]
        for c in sorted(body["covering"]):
            mutated = json.loads(json.dumps(raw))
            del mutated["bitopologies"][tname]["covering"][c]
            mutated["mutation"] = {"label": "T1-missing", "check": "T1"}
            out.append(mutated)
    return out


def _battery(raw):
    """Run every check of a raw document; {name: verdict}."""
    from .runner import run_check
    doc = load_data(raw)
    return {name: run_check(doc, name)["verdict"]
            for name in sorted(doc.checks)}


def _generate_mutant(rng):
    base = _generate_tiny_2site(rng) if rng.random() < 0.5 \
        else _generate_locally_discrete(rng)
    base.pop("trihoms", None)
    base["checks"] = {n: b for n, b in base["checks"].items()
                      if not n.startswith("2stack")}
    for mutated in _mutations(base):
        try:
            verdicts = _battery(mutated)
        except Exception:
            continue
        failing = sorted(n for n, v in verdicts.items() if v != "pass")
        if failing == [mutated["mutation"]["check"]]:
            return mutated
    raise AssertionError("no single-failure mutation found")


def generate(seed, profile):
    """A deterministic raw workspace document for the given profile."""
    if profile not in PROFILES:
        raise ValueError("unknown profile %r (choose from %s)"
                         % (profile, ", ".join(PROFILES)))
    rng = random.Random(("bistack", profile, seed).__repr__())
    if profile == "locally-discrete-site":
        raw = _generate_locally_discrete(rng)
    elif profile == "tiny-2site":
        raw = _generate_tiny_2site(rng)
    else:
        return _generate_mutant(rng)
    # self-validation: the declared base and topology must be well-formed
    doc = load_data(raw)
    for name, k in doc.two_cats.items():
        assert check_two_category(k).ok, name
    for name, tau in doc.bitopologies.items():
        assert check_bitopology(tau).ok, name
    return raw
