from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicat import catalog
from multicat.core import identity_functor, validate_category, validate_functor
from multicat.errors import ApexMismatch, GlidingViolation, NotASquare, NotAFactorizationSystem
from multicat.orthogonality import (
    all_class,
    candidate_factorizations,
    candidates,
    coequalizer_lemma,
    equalized_pairs_lemma,
    factor_via_classes,
    gliding_inclusion,
    is_candidate,
    is_diagonally_universal,
    is_relatively_full_faithful,
    is_stable,
    isos_class,
    left_orthogonal,
    lift,
    lifts_R_maps,
    morphism_class,
    orthogonal,
    orthogonality_structures,
    right_orthogonal,
    saturate,
    saturation_report,
    split_mono_lemma,
    stable_factorization,
    stable_factorizations_unique,
    validate_factorization_system,
)
from multicat.multiadjoint import is_local_right_adjoint, is_slicewise_local_right_adjoint

from .strategies import categories, functors

IDS = ["id_0", "id_1", "id_2"]
L3 = IDS + ["0≤1"]
R3 = IDS + ["1≤2"]


def test_lift_identity_has_top_as_filler(chain3):
    assert lift(chain3, "id_0", "0≤1", "id_0", "0≤1").fillers == ("id_0",)
    assert lift(chain3, "id_1", "1≤2", "id_1", "1≤2").fillers == ("id_1",)


def test_lift_chain(chain3):
    rep = lift(chain3, "0≤1", "1≤2", "0≤1", "1≤2")
    assert rep.fillers == ("id_1",) and rep.unique
    assert lift(chain3, "0≤2", "1≤2", "0≤1", "id_2").fillers == ()


def test_lift_rejects_non_square(chain3):
    with pytest.raises(NotASquare):
        lift(chain3, "0≤1", "1≤2", "0≤1", "0≤2")


def test_orthogonal_classes(chain3):
    assert set(right_orthogonal(chain3, isos_class(chain3))) == set(chain3.morphisms)
    R = right_orthogonal(chain3, ["0≤1"])
    assert "1≤2" in R and "0≤1" not in R
    assert set(right_orthogonal(chain3, chain3.morphisms)) == set(chain3.isos())


def test_candidates(vinc, chain3):
    Id = identity_functor(chain3)
    assert is_candidate(Id, "id_1", "1")
    assert is_candidate(vinc, "⊥≤a", "a")
    assert candidates(catalog.cospan_collapse(), "*") == []
    with pytest.raises(ApexMismatch):
        is_candidate(vinc, "⊥≤a", "b")


def test_diagonal_universality(vinc, chain3):
    Id = identity_functor(chain3)
    assert is_diagonally_universal(Id, "id_1")
    assert is_diagonally_universal(vinc, "⊥≤a")
    assert not is_diagonally_universal(Id, "0≤1")


def test_stable_factorization(vinc, chain3):
    sf = stable_factorization(identity_functor(chain3), "0≤2", "2")
    assert (sf.candidate, sf.right_part) == ("id_0", "0≤2")
    sf = stable_factorization(vinc, "⊥≤a", "a")
    assert (sf.candidate, sf.apex, sf.right_part) == ("⊥≤a", "a", "id_a")


def test_stable_verdicts(vinc, chain3):
    assert is_stable(vinc)
    assert is_stable(identity_functor(chain3))
    chk = is_stable(catalog.cospan_collapse())
    assert not chk and chk.witness[0] == "id_*"


def test_factorization_systems(chain3):
    assert validate_factorization_system(chain3, chain3.isos(), chain3.morphisms)
    assert validate_factorization_system(chain3, chain3.morphisms, chain3.isos())
    assert validate_factorization_system(chain3, L3, R3)
    bad = validate_factorization_system(chain3, IDS, IDS)
    assert not bad
    assert ("every morphism factors", "0≤1") in bad.failures


def test_factor_via_classes(chain3):
    (fac,) = factor_via_classes(chain3, "0≤2", L3, R3)
    assert (fac.left, fac.apex, fac.right) == ("0≤1", "1", "1≤2")
    assert any(f.left == "id_0" for f in factor_via_classes(chain3, "id_0", chain3.isos(), chain3.morphisms))
    assert any(f.right == "id_1" for f in factor_via_classes(chain3, "0≤1", L3, R3))


def test_saturation(chain3):
    assert set(saturate(chain3, [])) == set(chain3.isos())
    S = saturate(chain3, ["0≤1"])
    assert set(S) == set(L3)
    assert set(saturate(chain3, S)) == set(S)


def test_saturation_report_lists_missing_colimits():
    rep = saturation_report(catalog.discrete(), [])
    assert any("initial object" in s for s in rep.skipped)


def test_relative_full_faithfulness(vinc, chain3):
    assert is_relatively_full_faithful(identity_functor(chain3))
    assert is_relatively_full_faithful(vinc)
    Two = catalog.walking_arrow()
    One = catalog.terminal_category()
    collapse = validate_functor(Two, One, {"0": "*", "1": "*"}, {"0≤1": "id_*"})
    chk = is_relatively_full_faithful(collapse)
    # id_* : U(1) -> U(0) has no preimage, yet it sits in the triangle over 1
    # formed by id_1 and 0≤1
    assert not chk and chk.witness == ("1", "0", "id_*", "1")


def test_relative_full_faithfulness_fails_for_collapsed_pair():
    P = catalog.parallel_pair()
    Two = catalog.walking_arrow()
    U = validate_functor(P, Two, {"0": "0", "1": "1"}, {"s": "0≤1", "t": "0≤1"})
    chk = is_relatively_full_faithful(U)
    assert not chk and chk.witness[2] == "0≤1"


def test_lifting_right_maps(vinc, chain3):
    assert lifts_R_maps(identity_functor(chain3), IDS)
    assert lifts_R_maps(vinc, ["id_a", "id_b"])
    chk = lifts_R_maps(vinc, ["⊥≤a"])
    assert not chk and chk.witness == ("⊥≤a", "a")


def test_gliding(chain3):
    incl = gliding_inclusion(chain3, L3, R3, ["1", "2"])
    assert is_stable(incl)
    assert set(incl.source.objects) == {"1", "2"}
    with pytest.raises(GlidingViolation) as info:
        gliding_inclusion(chain3, L3, R3, ["2"])
    assert info.value.witness == "1≤2"
    full = gliding_inclusion(chain3, L3, R3, chain3.objects)
    assert is_stable(full)


def test_gliding_rejects_non_system(chain3):
    with pytest.raises(NotAFactorizationSystem):
        gliding_inclusion(chain3, IDS, IDS, ["2"])


def test_group_is_stable_but_not_comma_lra():
    G = validate_category(["*"], [("s", "*", "*")], [("s", "s", "id_*")], "Z2")
    U = validate_functor(G, catalog.terminal_category(), {"*": "*"}, {"s": "id_*"})
    assert is_stable(U)
    assert [n for n, _ in candidates(U, "*")] == ["id_*"]
    assert not is_local_right_adjoint(U)


@given(functors())
def test_stable_matches_slicewise_reading(U):
    assert bool(is_stable(U)) == bool(is_slicewise_local_right_adjoint(U))


@given(functors())
def test_comma_lra_implies_stable(U):
    if is_local_right_adjoint(U):
        assert is_stable(U)


@given(functors())
def test_candidate_factorizations_unique(U):
    if not is_stable(U):
        return
    S, T = U.source, U.target
    for B in T.objects:
        cands = candidates(U, B)
        for A in S.objects:
            for f in T.hom(B, U.obj(A)):
                assert candidate_factorizations(U, f, A, cands)
                assert stable_factorizations_unique(U, f, A, cands)


@given(functors())
def test_diagonally_universal_implies_candidate_when_relff(U):
    if not is_relatively_full_faithful(U):
        return
    S, T = U.source, U.target
    for A in S.objects:
        for n in T.into(U.obj(A)):
            if is_diagonally_universal(U, n):
                assert is_candidate(U, n, A)


def isolated_point_and_idempotent():
    # an isolated object next to an idempotent e, both sent onto the monoid {1, e}
    S = validate_category(["0", "1"], [("e", "1", "1")], [("e", "e", "e")])
    T = validate_category(["*"], [("e", "*", "*")], [("e", "e", "e")])
    return validate_functor(S, T, {"0": "*", "1": "*"}, {"e": "e"})


def test_candidate_need_not_be_diagonally_universal():
    U = isolated_point_and_idempotent()
    assert is_relatively_full_faithful(U)
    assert is_local_right_adjoint(U)
    # the only squares under 0 are identity squares, so e is a candidate
    assert is_candidate(U, "e", "0")
    # but the square e . id = e . e against U(e) has no filler d with d . e = id
    assert not is_diagonally_universal(U, "e")
    assert lift(U.target, "e", "e", "id_*", "e").fillers == ()


@pytest.mark.xfail(strict=True, reason="candidates of a relatively full and faithful functor can fail "
                   "orthogonality against its range when the bottom edge of a square is not an image")
def test_candidate_equals_diagonally_universal_when_relff():
    U = isolated_point_and_idempotent()
    S, T = U.source, U.target
    for A in S.objects:
        for n in T.into(U.obj(A)):
            assert is_candidate(U, n, A) == is_diagonally_universal(U, n)


@given(categories(), st.data())
def test_orthogonal_closure_laws(C, data):
    R = data.draw(st.lists(st.sampled_from(C.morphisms), unique=True)) if C.morphisms else []
    Rperp = right_orthogonal(C, left_orthogonal(C, R))
    assert morphism_class(C, R) <= Rperp
    X = morphism_class(C, R)
    once = right_orthogonal(C, X)
    thrice = right_orthogonal(C, left_orthogonal(C, once))
    assert once.members == thrice.members


@given(categories())
def test_orthogonality_is_symmetric_in_definition(C):
    for l in C.morphisms:
        for r in C.isos():
            assert orthogonal(C, l, r)


@given(categories())
def test_lemmas_on_every_structure(C):
    for L, R in orthogonality_structures(C):
        assert split_mono_lemma(C, L, R)
        assert coequalizer_lemma(C, L)[0]
        assert equalized_pairs_lemma(C, L, R)


@given(categories())
def test_structures_are_galois_closed(C):
    for L, R in orthogonality_structures(C):
        assert right_orthogonal(C, L).members == R.members
        assert left_orthogonal(C, R).members == L.members


@given(categories())
def test_saturation_is_idempotent(C):
    S = saturate(C, [m for m in C.non_identities()][:1])
    assert saturate(C, S).members == S.members
    assert all_class(C) >= S
