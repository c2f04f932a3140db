from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicat import catalog
from multicat.cones import discrete_shape, make_diagram, span_diagram
from multicat.core import identity_functor, validate_category
from multicat.errors import AmbientMismatch, NotMultiAdjoint
from multicat.families import (
    FamilyMorphism,
    FinFamily,
    connected_limit_creation,
    embed,
    embed_full_faithful,
    family,
    family_compose,
    family_hom,
    family_hom_count,
    family_identity,
    family_product,
    initial_family_check,
    is_coconnected,
    pi_commutes_with_embed,
    pi_functor,
    relative_left_adjoint,
    verify_pi_adjunction,
    verify_product,
)
from multicat.multiadjoint import is_right_multi_adjoint

from .strategies import categories, functors


@pytest.fixture
def D2():
    return catalog.discrete(["x", "y"])


def test_hom_into_singleton(D2):
    homs = family_hom(family(D2, ["x", "y"]), family(D2, ["x"]))
    assert len(homs) == 1
    (m,) = homs
    assert m.reindex == (0,) and m.components == ("id_x",)


def test_identity_is_a_hom(chain3):
    F = family(chain3, ["0", "2", "2"])
    keys = {(m.reindex, m.components) for m in family_hom(F, F)}
    ident = family_identity(F)
    assert (ident.reindex, ident.components) in keys


def test_hom_from_empty_family(D2):
    empty = family(D2, [])
    assert family_hom(empty, family(D2, ["x"])) == []
    assert len(family_hom(family(D2, ["x"]), empty)) == 1


def test_ambient_mismatch(D2, chain3):
    with pytest.raises(AmbientMismatch):
        family_hom(family(D2, ["x"]), family(chain3, ["0"]))


def test_products(D2, chain3):
    P, projs = family_product([], ambient=D2)
    assert len(P) == 0 and projs == []
    P, _ = family_product([embed(D2, "x"), embed(D2, "y")])
    assert P.members == ("x", "y")
    P, _ = family_product([family(chain3, ["0", "1"]), family(chain3, ["0", "1", "2"])])
    assert len(P) == 5
    assert verify_product([family(chain3, ["0", "1"]), embed(chain3, "2")], bound=2)


def test_embedding(D2, chain3):
    assert family_hom_count(embed(D2, "x"), embed(D2, "y")) == 0
    assert embed_full_faithful(chain3)
    counts = sorted(family_hom_count(embed(chain3, x), embed(chain3, y))
                    for x in chain3.objects for y in chain3.objects)
    assert sum(counts) == 6
    One = catalog.terminal_category()
    assert family_hom_count(embed(One, "*"), embed(One, "*")) == 1


def test_coconnected(D2):
    assert is_coconnected(embed(D2, "x"), 3)
    chk = is_coconnected(family(D2, ["x", "y"]), 3)
    assert not chk and chk.witness[0] == "binary product"
    assert not is_coconnected(family(D2, []), 3)


def test_pi_functor(vinc):
    P = pi_functor(vinc)
    assert pi_commutes_with_embed(vinc)
    F = family(vinc.source, ["a", "b"])
    assert P.on_family(F).members == ("a", "b") and P.on_family(F).index == F.index
    Id = pi_functor(identity_functor(catalog.chain(3)))
    F = family(catalog.chain(3), ["0", "1"])
    assert Id.on_family(F) == F


def test_relative_left_adjoint_v(vinc):
    L = relative_left_adjoint(vinc)
    assert L.on_object("⊥").members == ("a", "b")
    assert L.on_object("a").members == ("a",)
    m = L.on_morphism("id_⊥")
    ident = family_identity(L.on_object("⊥"))
    assert (m.reindex, m.components) == (ident.reindex, ident.components)


def test_relative_left_adjoint_identity(chain3):
    L = relative_left_adjoint(identity_functor(chain3))
    for B in chain3.objects:
        assert L.on_object(B).members == (B,)


def test_relative_left_adjoint_rejects_non_multiadjoint():
    with pytest.raises(NotMultiAdjoint):
        relative_left_adjoint(catalog.cospan_collapse())


def test_pi_adjunction_v(vinc):
    L = relative_left_adjoint(vinc)
    assert family_hom_count(L.on_object("⊥"), embed(vinc.source, "a")) == 1
    assert len(vinc.target.hom("⊥", "a")) == 1
    rep = verify_pi_adjunction(vinc, 4)
    assert rep.holds and rep.pairs > 0


def test_pi_adjunction_identity(chain3):
    rep = verify_pi_adjunction(identity_functor(chain3), 3)
    assert rep.holds and rep.naturality_checks > 0


def test_pi_adjunction_rejects_cospan():
    with pytest.raises(NotMultiAdjoint):
        verify_pi_adjunction(catalog.cospan_collapse(), 2)


def test_pi_adjunction_detects_a_broken_left_adjoint(vinc):
    # swap the two units under ⊥: transposition then lands in the wrong member
    L = relative_left_adjoint(vinc)
    rec = L.units["⊥"]
    flipped = type(rec)(rec.base, rec.entries,
                        {k: (1 - i, u) for k, (i, u) in rec.factoring.items()})
    L.units["⊥"] = flipped
    rep = verify_pi_adjunction(vinc, 3, L=L)
    assert not rep.holds


def test_pi_adjunction_detects_a_twisted_transposition():
    # composing every transpose with the generator of Z/2 keeps it bijective and
    # well typed, but breaks naturality
    G = validate_category(["*"], [("s", "*", "*")], [("s", "s", "id_*")], "Z2")
    U = identity_functor(G)
    assert verify_pi_adjunction(U, 3).holds
    L = relative_left_adjoint(U)
    rec = L.units["*"]
    L.units["*"] = type(rec)(rec.base, rec.entries,
                             {k: (i, G.compose("s", u)) for k, (i, u) in rec.factoring.items()})
    rep = verify_pi_adjunction(U, 3, L=L)
    assert not rep.holds
    assert rep.failures[0][0].startswith("natural")


def test_initial_family(D2, chain3):
    assert initial_family_check(D2, 3)
    assert initial_family_check(chain3, 3)
    assert initial_family_check(catalog.cospan(), 3)


def test_connected_limits_are_created(chain3):
    D = span_diagram(chain3, "0≤1", "0≤2")
    assert connected_limit_creation(chain3, D, 3)
    with pytest.raises(ValueError):
        connected_limit_creation(chain3, make_diagram(discrete_shape(2), chain3, {"0": "0", "1": "1"}, {}), 2)


@st.composite
def families_over(draw, C, max_size=3):
    members = draw(st.lists(st.sampled_from(C.objects), max_size=max_size)) if C.objects else []
    return family(C, members)


@given(categories(), st.data())
def test_every_family_is_a_product_of_embeddings(C, data):
    F = data.draw(families_over(C))
    P, _ = family_product([embed(C, x) for x in F.members], ambient=C)
    assert P.members == F.members and len(P.index) == len(F.index)


@given(categories(), st.data())
def test_hom_count_matches_enumeration(C, data):
    F = data.draw(families_over(C))
    G = data.draw(families_over(C))
    assert len(family_hom(F, G)) == family_hom_count(F, G)


@given(categories(), st.data())
def test_family_composition_is_associative(C, data):
    F, G, H, K = (data.draw(families_over(C, 2)) for _ in range(4))
    for m1 in family_hom(F, G)[:4]:
        for m2 in family_hom(G, H)[:4]:
            for m3 in family_hom(H, K)[:4]:
                a = family_compose(m3, family_compose(m2, m1))
                b = family_compose(family_compose(m3, m2), m1)
                assert (a.reindex, a.components) == (b.reindex, b.components)


@given(categories())
def test_embedding_is_full_and_faithful(C):
    assert embed_full_faithful(C)


@given(categories())
def test_initial_family_iff_multi_initial(C):
    assert initial_family_check(C, 3)


@given(functors())
def test_pi_adjunction_for_multiadjoints(U):
    if is_right_multi_adjoint(U):
        assert verify_pi_adjunction(U, 3).holds


def test_family_records():
    C = catalog.chain(2)
    F = FinFamily(C, ("p", "q"), ("0", "1"))
    assert F.assignment == {"p": "0", "q": "1"} and F.position("q") == 1
    with pytest.raises(ValueError):
        FinFamily(C, ("p", "p"), ("0", "1"))
    m = FamilyMorphism(F, embed(C, "1"), ("q",), ("id_1",))
    assert family_compose(family_identity(embed(C, "1")), m).components == ("id_1",)
