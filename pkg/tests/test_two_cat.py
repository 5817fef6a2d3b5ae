import pytest

from bistack.builders import (strict_ps_functor, suspension_two_cat,
                              thin_two_cat)
from bistack.errors import MalformedTable
from bistack.fincat import (FinCat, Functor, discrete, identity_functor,
                            walking_arrow)
from bistack.two_cat import (Fin2Cat, PastingScheme, PsNatTrans,
                             CatModification, check_bi_iso_comma,
                             check_modification, check_ps_functor,
                             check_ps_nat, check_two_category, find_iso_comma,
                             from_fincat, iso_comma_in_cat, paste)
from bistack.fincat import NatTrans


def split_idempotent_2cat():
    """Objects A, B; u: A -> B an equivalence that is not an isomorphism:
    u.v = id_B but v.u = e with an invertible 2-cell id_A => e."""
    onecells = {"id_A": ("A", "A"), "id_B": ("B", "B"),
                "u": ("A", "B"), "v": ("B", "A"), "e": ("A", "A")}
    hcomp1 = {}
    # composition: e is idempotent, absorbed by u and v
    table = {("id_A", "id_A"): "id_A", ("id_B", "id_B"): "id_B",
             ("u", "id_A"): "u", ("id_B", "u"): "u",
             ("v", "id_B"): "v", ("id_A", "v"): "v",
             ("e", "id_A"): "e", ("id_A", "e"): "e",
             ("v", "u"): "e", ("u", "v"): "id_B",
             ("e", "e"): "e", ("u", "e"): "u", ("e", "v"): "v"}
    hcomp1.update(table)
    return thin_two_cat(["A", "B"], onecells,
                        {"A": "id_A", "B": "id_B"}, hcomp1,
                        [("id_A", "e"), ("e", "id_A")])


def test_locally_discrete_is_a_two_category():
    k = from_fincat(walking_arrow())
    assert check_two_category(k).ok


def test_split_idempotent_2cat_valid():
    assert check_two_category(split_idempotent_2cat()).ok


def test_thin_builder_rejects_unclosed_relation():
    onecells = {"id_A": ("A", "A"), "e": ("A", "A"), "f": ("A", "A")}
    hcomp1 = {("id_A", "id_A"): "id_A", ("e", "id_A"): "e",
              ("id_A", "e"): "e", ("f", "id_A"): "f", ("id_A", "f"): "f",
              ("e", "e"): "e", ("f", "f"): "f", ("e", "f"): "e",
              ("f", "e"): "e"}
    with pytest.raises(MalformedTable):
        # whiskering e => id_A with f needs a cell e.f => id_A.f, i.e.
        # e => f, which is not in the relation
        thin_two_cat(["A"], onecells, {"A": "id_A"}, hcomp1, [("e", "id_A")])


def test_check_two_category_flags_corrupt_vertical_table():
    k = split_idempotent_2cat()
    bad_v = dict(k.vcomp)
    bad_v[("c[id_A>e]", "c[e>id_A]")] = "c[e>id_A]"
    bad = Fin2Cat(k.objects, k.onecells, k.twocells, k.identity1,
                  k.identity2, bad_v, k.hcomp1, k.hcomp2)
    assert not check_two_category(bad).ok


def test_check_two_category_flags_corrupt_whiskering():
    k = split_idempotent_2cat()
    bad_h = dict(k.hcomp2)
    # u * (id_A => e) should be 2id_u; retype it to a wrong identity
    bad_h[("2id_u", "c[id_A>e]")] = "2id_e"
    bad = Fin2Cat(k.objects, k.onecells, k.twocells, k.identity1,
                  k.identity2, k.vcomp, k.hcomp1, bad_h)
    assert not check_two_category(bad).ok


def test_equivalence_data_finds_non_invertible_equivalence():
    k = split_idempotent_2cat()
    got = k.equivalence_data("u")
    assert got is not None
    g, unit, counit = got
    assert g == "v"
    assert k.invertible2(unit) and k.invertible2(counit)
    # e is equivalent to id_A but u is not an isomorphism-like 1-cell
    assert k.equivalent_objects("A", "B")


def test_paste_layers_against_direct_composition():
    k = split_idempotent_2cat()
    a = "c[id_A>e]"     # id_A => e
    b = "c[e>id_A]"     # e => id_A
    # layer 1: a whiskered by nothing; layer 2: b; vertical composite = 2id
    s = PastingScheme(layers=(((), a, ()), ((), b, ())))
    assert paste(k, s) == k.id2("id_A")
    # whiskering with u on the outside: u * (b . a) = 2id_u
    s2 = PastingScheme(layers=((("u",), a, ()), (("u",), b, ())))
    assert paste(k, s2) == k.id2("u")
    # empty scheme denotes an identity 2-cell
    assert paste(k, PastingScheme(layers=(), identity_on="v")) == k.id2("v")


def test_paste_rejects_non_chaining_layers():
    from bistack.errors import BoundaryMismatch, MalformedTable
    k = split_idempotent_2cat()
    s = PastingScheme(layers=(((), "c[id_A>e]", ()), ((), "c[id_A>e]", ())))
    with pytest.raises((BoundaryMismatch, MalformedTable)):
        paste(k, s)


def cospan_with_pullback():
    """A commuting square P -> A, B -> C, as a 1-category."""
    objs = ["P", "A", "B", "C"]
    mors = {"p": ("P", "A"), "q": ("P", "B"), "f": ("A", "C"),
            "g": ("B", "C"), "d": ("P", "C")}
    src = {m: s for m, (s, t) in mors.items()}
    tgt = {m: t for m, (s, t) in mors.items()}
    for o in objs:
        src["id_%s" % o] = tgt["id_%s" % o] = o
    identity = {o: "id_%s" % o for o in objs}
    comp = {}
    for m in src:
        comp[(m, identity[src[m]])] = m
        comp[(identity[tgt[m]], m)] = m
    comp[("f", "p")] = "d"
    comp[("g", "q")] = "d"
    return FinCat(objs, src, tgt, identity, comp)


def test_find_iso_comma_in_locally_discrete_base_is_pullback():
    k = from_fincat(cospan_with_pullback())
    cone, report = find_iso_comma(k, "f", "g")
    assert report.ok
    assert cone.apex == "P" and cone.p == "p" and cone.q == "q"
    assert check_bi_iso_comma(k, "f", "g", cone).ok


def test_iso_comma_of_mono_cospan_is_trivial():
    # a is (vacuously) mono in the walking arrow: the iso-comma of (a, a)
    # is the domain with identity legs
    k = from_fincat(walking_arrow())
    cone, report = find_iso_comma(k, "a", "a")
    assert report.ok and cone.apex == "0"


def test_find_iso_comma_reports_absence():
    # bare cospan A -> C <- B with no object mapping to both legs
    objs = ["A", "B", "C"]
    src = {"f": "A", "g": "B"}
    tgt = {"f": "C", "g": "C"}
    for o in objs:
        src["id_%s" % o] = tgt["id_%s" % o] = o
    identity = {o: "id_%s" % o for o in objs}
    comp = {}
    for m in src:
        comp[(m, identity[src[m]])] = m
        comp[(identity[tgt[m]], m)] = m
    k = from_fincat(FinCat(objs, src, tgt, identity, comp))
    cone, report = find_iso_comma(k, "f", "g")
    assert cone is None and report.verdict == "fail"


def test_iso_comma_in_cat_point_against_triple_count():
    A, B = discrete(["a"]), discrete(["b"])
    # C: x ~ y via u, v
    C = FinCat(["x", "y"],
               {"id_x": "x", "id_y": "y", "u": "x", "v": "y"},
               {"id_x": "x", "id_y": "y", "u": "y", "v": "x"},
               {"x": "id_x", "y": "id_y"},
               {("id_x", "id_x"): "id_x", ("id_y", "id_y"): "id_y",
                ("u", "id_x"): "u", ("id_y", "u"): "u",
                ("v", "id_y"): "v", ("id_x", "v"): "v",
                ("v", "u"): "id_x", ("u", "v"): "id_y"})
    F = Functor(A, C, {"a": "x"}, {"id_a": "id_x"})
    G = Functor(B, C, {"b": "y"}, {"id_b": "id_y"})
    cat = iso_comma_in_cat(F, G)
    # oracle: isos x -> y are exactly {u}; one object, one (identity) morphism
    assert len(cat.objects) == 1
    assert len(cat.morphisms) == 1


def presheaf_on_walking_arrow():
    """F(1) = walking arrow, F(0) = point, restriction collapses."""
    k = from_fincat(walking_arrow())
    pt = discrete(["p"])
    wa = walking_arrow()
    coll = Functor(wa, pt, {"0": "p", "1": "p"},
                   {m: "id_p" for m in wa.morphisms})
    on1 = {"id_0": identity_functor(pt), "id_1": identity_functor(wa),
           "a": coll}
    return strict_ps_functor(k, {"0": pt, "1": wa}, on1)


def test_check_ps_functor_passes_and_catches_mutation():
    F = presheaf_on_walking_arrow()
    assert check_ps_functor(F).ok
    # mutate: restriction along `a` no longer a functor on identities
    bad_on1 = dict(F.on1)
    wa = walking_arrow()
    pt = F.ob["0"]
    bad_on1["a"] = Functor(wa, pt, {"0": "p", "1": "p"},
                           {"id_0": "id_p", "id_1": "id_p", "a": "id_p"})
    from bistack.two_cat import PsFunctorToCat
    bad = PsFunctorToCat(F.base, F.ob, bad_on1, F.on2, F.compositor, F.unitor)
    # still a functor here, but compositors were built for the old value
    r = check_ps_functor(bad)
    assert r.ok  # same underlying map: collapse functor is unique
    bad2 = PsFunctorToCat(F.base, F.ob, F.on1,
                          {x: F.on2[x] for x in F.on2}, F.compositor,
                          {c: F.unitor[c] for c in F.unitor})
    bad2.compositor = dict(F.compositor)
    from bistack.builders import identity_nat
    # retype a compositor: wrong codomain functor
    bad2.compositor[("a", "id_0")] = identity_nat(identity_functor(pt))
    assert not check_ps_functor(bad2).ok


def test_ps_nat_and_modification_roundtrip():
    F = presheaf_on_walking_arrow()
    # identity transformation and identity modification
    from bistack.builders import identity_nat
    comp = {c: identity_functor(F.ob[c]) for c in F.base.objects}
    from bistack.fincat import compose_functors
    cells = {f: identity_nat(compose_functors(identity_functor(F.ob[d]),
                                              F.on1[f]))
             for f, (d, c) in F.base.onecells.items()}
    t = PsNatTrans(F, F, comp, cells)
    assert check_ps_nat(t).ok
    m = CatModification(t, t, {c: identity_nat(comp[c])
                               for c in F.base.objects})
    assert check_modification(m).ok
    # corrupt a structure cell: swap a component for a non-commuting one
    wa = F.ob["1"]
    bad_cells = dict(cells)
    bad_cells["id_1"] = NatTrans(cells["id_1"].dom, cells["id_1"].cod,
                                 {"0": "id_0", "1": "a"})
    t2 = PsNatTrans(F, F, comp, bad_cells)
    assert not check_ps_nat(t2).ok
