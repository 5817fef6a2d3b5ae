import pytest

from bistack.bicat3 import (Perturbation, PsTwoFunctor, PsTwoNatTrans,
                            Trimodification, Tritransformation,
                            TwoModification, check_perturbation,
                            check_ps_two_functor, check_ps_two_nat,
                            check_trihom_data, check_trimodification,
                            check_tritransformation, check_two_modification,
                            compose_ps_two_functors, identity_ps_two_functor,
                            identity_ps_two_nat, identity_trimodification,
                            identity_tritransformation, representable_trihom,
                            strict_trihom, yoneda_pert, yoneda_trimod,
                            yoneda_tritrans)
from bistack.fincat import walking_arrow
from bistack.two_cat import Fin2Cat, check_two_category, from_fincat

from test_two_cat import split_idempotent_2cat


@pytest.fixture
def wa2():
    return from_fincat(walking_arrow())


@pytest.fixture
def ksplit():
    return split_idempotent_2cat()


def one_object_z2():
    """One object, one 1-cell, and a 2-cell of order two on it."""
    z2 = {("2id_id_P", "2id_id_P"): "2id_id_P", ("2id_id_P", "t"): "t",
          ("t", "2id_id_P"): "t", ("t", "t"): "2id_id_P"}
    return Fin2Cat(["P"], {"id_P": ("P", "P")},
                   {"2id_id_P": ("id_P", "id_P"), "t": ("id_P", "id_P")},
                   {"P": "id_P"}, {"id_P": "2id_id_P"},
                   z2, {("id_P", "id_P"): "id_P"}, dict(z2))


def collapse_functor(k):
    """ksplit -> ksplit: everything onto the object A via identities."""
    return PsTwoFunctor(
        k, k, {"A": "A", "B": "A"},
        {f: "id_A" for f in k.onecells},
        {a: "2id_id_A" for a in k.twocells})


def e_transformation(k):
    """Id => Id on ksplit with the idempotent e as component at A."""
    comp = {"A": "e", "B": "id_B"}
    i = identity_ps_two_functor(k)
    cell = {f: k.id2(k.c1(f, comp[k.src1(f)])) for f in k.onecells}
    return PsTwoNatTrans(i, i, comp, cell)


def trihom_over_arrow(values, action=None):
    """Strict homomorphism data on the walking arrow."""
    k = from_fincat(walking_arrow())
    ob = {"0": values, "1": values}
    on1 = {"id_0": identity_ps_two_functor(values),
           "id_1": identity_ps_two_functor(values),
           "a": action or identity_ps_two_functor(values)}
    return strict_trihom(k, ob, on1, {})


# --- pseudofunctors ---------------------------------------------------------

def test_one_object_z2_is_a_two_category():
    assert check_two_category(one_object_z2()).ok


def test_identity_pseudofunctor_passes(ksplit):
    i = identity_ps_two_functor(ksplit)
    assert check_ps_two_functor(i).ok
    assert compose_ps_two_functors(i, i) == i


def test_collapse_pseudofunctor_passes_and_absorbs(ksplit):
    c = collapse_functor(ksplit)
    assert check_ps_two_functor(c).ok
    assert compose_ps_two_functors(c, identity_ps_two_functor(ksplit)) == c
    assert compose_ps_two_functors(c, c) == c


def test_nonfunctorial_one_cell_table_is_flagged(ksplit):
    # u, v kept but their composite e sent elsewhere: the default
    # compositor at (v, u) cannot have the right boundary
    on1 = {f: f for f in ksplit.onecells}
    on1["e"] = "id_A"
    on2 = {a: a for a in ksplit.twocells}
    on2["2id_e"] = "2id_id_A"
    h = PsTwoFunctor(ksplit, ksplit, {x: x for x in ksplit.objects},
                     on1, on2)
    r = check_ps_two_functor(h)
    assert not r.ok


# --- transformations and modifications --------------------------------------

def test_idempotent_component_transformation_passes(ksplit):
    assert check_ps_two_nat(e_transformation(ksplit)).ok
    assert check_ps_two_nat(
        identity_ps_two_nat(collapse_functor(ksplit))).ok


def test_transformation_with_wrong_cell_is_flagged(ksplit):
    t = e_transformation(ksplit)
    t.cell["u"] = "2id_e"
    r = check_ps_two_nat(t)
    assert not r.ok
    assert r.witness["onecell"] == "u"


def test_modification_between_parallel_transformations(ksplit):
    s = identity_ps_two_nat(identity_ps_two_functor(ksplit))
    t = e_transformation(ksplit)
    m = TwoModification(s, t, {"A": "c[id_A>e]", "B": "2id_id_B"})
    assert check_two_modification(m).ok
    bad = TwoModification(s, t, {"A": "c[e>id_A]", "B": "2id_id_B"})
    r = check_two_modification(bad)
    assert not r.ok and r.witness["object"] == "A"


# --- homomorphism data -------------------------------------------------------

def test_strict_trihom_data_passes(ksplit):
    t = trihom_over_arrow(ksplit, collapse_functor(ksplit))
    r = check_trihom_data(t)
    assert r.ok
    assert any("not checked" in d for d in r.details)


def test_representable_trihom_data_passes(ksplit):
    t = representable_trihom(ksplit, "A")
    assert check_trihom_data(t).ok
    # values are the morphisms into A; the action is precomposition
    assert sorted(t.ob["B"].objects) == ["v"]
    assert t.on1["u"].ob["v"] == "e"


def test_nonequivalence_compositor_component_is_flagged():
    v = one_object_z2()
    # replace a 1-cell component of the compositor by an idempotent that
    # is not an equivalence: build a 3-element monoid value instead
    mono = Fin2Cat(
        ["M"], {"id_M": ("M", "M"), "s": ("M", "M")},
        {"2id_id_M": ("id_M", "id_M"), "2id_s": ("s", "s")},
        {"M": "id_M"}, {"id_M": "2id_id_M", "s": "2id_s"},
        {("2id_id_M", "2id_id_M"): "2id_id_M", ("2id_s", "2id_s"): "2id_s"},
        {("id_M", "id_M"): "id_M", ("id_M", "s"): "s",
         ("s", "id_M"): "s", ("s", "s"): "s"},
        {("2id_id_M", "2id_id_M"): "2id_id_M", ("2id_id_M", "2id_s"): "2id_s",
         ("2id_s", "2id_id_M"): "2id_s", ("2id_s", "2id_s"): "2id_s"})
    assert check_two_category(mono).ok
    t = trihom_over_arrow(mono)
    i = t.on1["a"]
    t.chi[("a", "id_0")] = PsTwoNatTrans(
        i, i, {"M": "s"}, {f: "2id_s" for f in mono.onecells})
    r = check_trihom_data(t)
    assert not r.ok
    assert any("equivalence" in d for d in r.details)
    assert r.witness["component"] == "s"


# --- transformations between homomorphisms -----------------------------------

def test_identity_tritransformation_passes(ksplit):
    t = trihom_over_arrow(ksplit, collapse_functor(ksplit))
    assert check_tritransformation(identity_tritransformation(t)).ok
    z = trihom_over_arrow(one_object_z2())
    assert check_tritransformation(identity_tritransformation(z)).ok


def test_wrong_composition_comparison_is_detected_via_associativity():
    t = trihom_over_arrow(one_object_z2())
    tr = identity_tritransformation(t)
    tr.beta[("a", "id_0")]["P"] = "t"
    r = check_tritransformation(tr)
    assert not r.ok
    assert any("associativity axiom" in d for d in r.details)
    # the mutated pair appears an odd number of times across the display
    assert r.witness["triple"] == ["a", "id_0", "id_0"]


def test_wrong_composition_comparison_other_slot():
    t = trihom_over_arrow(one_object_z2())
    tr = identity_tritransformation(t)
    tr.beta[("id_1", "a")]["P"] = "t"
    r = check_tritransformation(tr)
    assert not r.ok
    assert any("associativity axiom" in d for d in r.details)


def test_wrong_unit_comparison_is_detected():
    t = trihom_over_arrow(one_object_z2())
    tr = identity_tritransformation(t)
    tr.gamma["0"]["P"] = "t"
    r = check_tritransformation(tr)
    assert not r.ok


# --- modifications and perturbations -----------------------------------------

def test_identity_trimodification_passes(ksplit):
    t = trihom_over_arrow(ksplit, collapse_functor(ksplit))
    m = identity_trimodification(identity_tritransformation(t))
    assert check_trimodification(m).ok


def test_trimodification_with_wrong_square_cell_fails():
    t = trihom_over_arrow(one_object_z2())
    m = identity_trimodification(identity_tritransformation(t))
    m.cell["id_0"]["P"] = "t"
    r = check_trimodification(m)
    assert not r.ok


def test_identity_perturbation_passes_and_mutant_fails():
    t = trihom_over_arrow(one_object_z2())
    tr = identity_tritransformation(t)
    m = identity_trimodification(tr)
    val = t.ob["0"]
    comp = {c: {x: val.id2(m.comp[c].comp[x])
                for x in t.ob[c].objects}
            for c in ("0", "1")}
    p = Perturbation(m, m, comp)
    assert check_perturbation(p).ok
    p.comp["0"]["P"] = "t"
    r = check_perturbation(p)
    assert not r.ok
    assert r.witness["onecell"] == "a"


# --- Yoneda actions ----------------------------------------------------------

def test_yoneda_transformation_restricts_the_chosen_object(ksplit):
    f = representable_trihom(ksplit, "A")
    s = yoneda_tritrans(f, "A", "id_A")
    assert check_tritransformation(s).ok
    # component at D sends g: D -> A to the restriction id_A . g
    for d in ksplit.objects:
        for g in s.dom.ob[d].objects:
            assert s.comp[d].ob[g] == f.on1[g].ob["id_A"]


def test_yoneda_transformation_on_nondiscrete_values():
    t = trihom_over_arrow(one_object_z2())
    s = yoneda_tritrans(t, "1", "P")
    assert check_tritransformation(s).ok
    assert s.comp["0"].ob["a"] == "P"


def test_yoneda_modification_restricts_the_chosen_one_cell(ksplit):
    f = representable_trihom(ksplit, "A")
    m = yoneda_trimod(f, "A", "c[id_A>e]")
    assert check_trimodification(m).ok
    for d in ksplit.objects:
        for g in m.dom.dom.ob[d].objects:
            assert m.comp[d].comp[g] == f.on1[g].on1["c[id_A>e]"]


def test_yoneda_perturbation_restricts_the_chosen_two_cell():
    t = trihom_over_arrow(one_object_z2())
    p = yoneda_pert(t, "1", "t")
    assert check_perturbation(p).ok
    for d in ("0", "1"):
        for g in p.dom.dom.dom.ob[d].objects:
            assert p.comp[d][g] == t.on1[g].on2["t"]
