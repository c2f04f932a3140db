from __future__ import annotations

import pytest
from hypothesis import given

from multicat import catalog
from multicat.cones import (
    ConeRecord,
    cocone_category,
    colimit,
    cone_category,
    cones,
    discrete_diagram,
    discrete_shape,
    make_diagram,
    span_diagram,
)
from multicat.core import full_subcategory, identity_functor, opposite, validate_functor
from multicat.errors import NoTargetColimit, NotFull
from multicat.multilimits import (
    connected_limit_via_units,
    multicolimit,
    multilimit,
    multireflective_multicolimit,
    preserves_multilimits,
    same_up_to_iso,
    verify_multicolimit_hom_formula,
)
from multicat.multiadjoint import is_right_multi_adjoint

from .strategies import categories


def point(C, x):
    return make_diagram(discrete_shape(1), C, {"0": x}, {})


def test_cone_category_of_a_point_is_the_slice(chain3):
    K = cone_category(chain3, point(chain3, "0"))
    assert len(K.objects) == 1
    K = cone_category(chain3, point(chain3, "2"))
    assert len(K.objects) == 3 and len(K.morphisms) == 6


def test_cone_categories_v(vpos):
    K = cone_category(vpos, discrete_diagram(vpos, ["a", "b"]))
    assert [K.obj_key[x].apex for x in K.objects] == ["⊥"]
    D2 = catalog.discrete()
    assert len(cocone_category(D2, discrete_diagram(D2, ["x", "y"])).objects) == 0


def test_multiproduct_v(vpos):
    fam = multilimit(vpos, discrete_diagram(vpos, ["a", "b"]))
    assert [c.apex for c in fam] == ["⊥"]


def test_multicoproduct_in_discrete_is_empty():
    D2 = catalog.discrete()
    fam = multicolimit(D2, discrete_diagram(D2, ["x", "y"]))
    assert fam and len(fam) == 0


def test_multicoproduct_in_discrete_category_of_one_object():
    D2 = catalog.discrete()
    fam = multicolimit(D2, discrete_diagram(D2, ["x", "x"]))
    assert [c.apex for c in fam] == ["x"]


def test_absent_multicolimit():
    # the empty diagram asks for a multi-initial family of the cospan itself
    C = catalog.cospan()
    fam = multicolimit(C, discrete_diagram(C, []))
    assert not fam and fam.component


def test_empty_and_point_multilimits():
    Sp = catalog.span()
    fam = multicolimit(Sp, discrete_diagram(Sp, ["a", "b"]))
    assert len(fam) == 0
    P = catalog.parallel_pair()
    D = make_diagram(discrete_shape(1), P, {"0": "1"}, {})
    assert [c.apex for c in multilimit(P, D)] == ["1"]


def test_honest_limits_are_singletons(chain3):
    fam = multilimit(chain3, span_diagram(chain3, "0≤1", "0≤2"))
    assert len(fam) == 1


def test_preservation_identity(chain3):
    D = discrete_diagram(chain3, ["1", "2"])
    assert preserves_multilimits(identity_functor(chain3), D)


def test_preservation_v(vinc):
    D = discrete_diagram(vinc.source, ["a", "b"])
    rep = preserves_multilimits(vinc, D)
    assert len(rep.source) == 0
    assert [c.apex for c in rep.target] == ["⊥"]
    (row,) = rep.rows
    # nothing factors through ⊥, and the empty coproduct of V is ⊥ itself
    assert row.vacuous and row.sources == ()
    assert rep.holds


def test_preservation_of_a_point(vinc):
    assert preserves_multilimits(vinc, point(vinc.source, "a"))


def test_multireflective_identity(chain3):
    U = identity_functor(chain3)
    D = discrete_diagram(chain3, ["0", "1"])
    fam = multireflective_multicolimit(U, D)
    assert [c.apex for c in fam] == ["1"]


def test_multireflective_empty_diagram(vpos):
    C, incl = full_subcategory(vpos, ["a", "b"])
    D = discrete_diagram(C, [])
    fam = multireflective_multicolimit(incl, D)
    # the units under the initial object ⊥
    assert sorted(c.apex for c in fam) == ["a", "b"]
    assert same_up_to_iso(C, fam, multicolimit(C, D))


def test_multireflective_requires_target_colimit():
    D2 = catalog.discrete()
    U = identity_functor(D2)
    with pytest.raises(NoTargetColimit):
        multireflective_multicolimit(U, discrete_diagram(D2, ["x", "y"]))


def test_multireflective_requires_full(vinc):
    Two = catalog.walking_arrow()
    D1 = catalog.discrete(["0", "1"])
    U = validate_functor(D1, Two, {"0": "0", "1": "1"}, {})
    with pytest.raises(NotFull):
        multireflective_multicolimit(U, discrete_diagram(D1, ["0"]))


def test_connected_limit_via_units(chain3):
    U = identity_functor(chain3)
    cone = connected_limit_via_units(U, span_diagram(chain3, "0≤1", "0≤2"))
    assert cone.apex == "0"
    assert connected_limit_via_units(U, point(chain3, "1")).apex == "1"


def test_hom_formula(vpos, chain3):
    D2 = catalog.discrete()
    D = discrete_diagram(D2, ["x", "y"])
    ok, rows = verify_multicolimit_hom_formula(D2, D, multicolimit(D2, D))
    assert ok and all(r.cocones == r.hom_sum == 0 for r in rows)
    D = span_diagram(chain3, "0≤1", "0≤2")
    fam = multicolimit(chain3, D)
    ok, rows = verify_multicolimit_hom_formula(chain3, D, fam)
    assert ok and [(r.cocones, r.hom_sum) for r in rows] == [(0, 0), (0, 0), (1, 1)]
    Vop = opposite(vpos)
    D = discrete_diagram(Vop, ["a", "b"])
    ok, rows = verify_multicolimit_hom_formula(Vop, D, multicolimit(Vop, D))
    assert ok and {r.obj: r.cocones for r in rows} == {"⊥": 1, "a": 0, "b": 0}


@given(categories())
def test_limits_are_singleton_multilimits(C):
    for x in C.objects:
        for y in C.objects:
            D = discrete_diagram(C, [x, y])
            fam = multicolimit(C, D)
            q = colimit(C, D)
            if q is not None:
                assert len(fam) == 1 and C.isomorphic(fam.members[0].apex, q.apex)


@given(categories())
def test_multicolimit_is_dual_multilimit(C):
    Op = opposite(C)
    for x in C.objects:
        for y in C.objects:
            a = multicolimit(C, discrete_diagram(C, [x, y]))
            b = multilimit(Op, discrete_diagram(Op, [x, y]))
            assert bool(a) == bool(b)
            if a:
                assert sorted(c.apex for c in a) == sorted(c.apex for c in b)


@given(categories())
def test_hom_formula_for_every_family(C):
    for x in C.objects:
        for y in C.objects:
            D = discrete_diagram(C, [x, y])
            fam = multicolimit(C, D)
            if fam:
                assert verify_multicolimit_hom_formula(C, D, fam)[0]


@given(categories())
def test_multireflective_matches_direct_search(C):
    for n in range(1, len(C.objects) + 1):
        sub, incl = full_subcategory(C, C.objects[:n])
        if not is_right_multi_adjoint(incl):
            continue
        for x in sub.objects:
            for y in sub.objects:
                D = discrete_diagram(sub, [x, y])
                try:
                    fam = multireflective_multicolimit(incl, D)
                except NoTargetColimit:
                    continue
                assert same_up_to_iso(sub, fam, multicolimit(sub, D))


def test_cone_record_helpers():
    c = ConeRecord("⊥", (("0", "⊥≤a"), ("1", "⊥≤b")))
    assert c.leg("1") == "⊥≤b" and c.leg_map == {"0": "⊥≤a", "1": "⊥≤b"}
    V = catalog.v_poset()
    assert c in list(cones(V, discrete_diagram(V, ["a", "b"])))
