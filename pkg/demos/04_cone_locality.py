"""Objects that see a set of cones as covers, and where the finite picture breaks."""
from multicat import catalog
from multicat.core import validate_category
from multicat.gamma import build_B_gamma, gamma_class, gamma_local_morphisms, local_objects, verify_gamma_theorem
from multicat.multiadjoint import is_slicewise_local_right_adjoint, local_units

C = catalog.chain(3)
G = gamma_class(C, [("0", ["0≤1"])])
print("local objects:", local_objects(C, G))
print("local morphisms:", gamma_local_morphisms(C, G))

B, U = build_B_gamma(C, G)
print("subcategory:", B.objects, B.non_identities())
print("unit under 0:", [(e.unit, e.apex) for e in local_units(U, "0").entries])
print("theorem holds here:", verify_gamma_theorem(C, G).holds)

# an involution s with an absorbing element z, and a single cone with legs id and z
M = validate_category(["*"], [("s", "*", "*"), ("z", "*", "*")],
                      [("s", "s", "id_*"), ("z", "z", "z"), ("s", "z", "z"), ("z", "s", "z")], "M")
G = gamma_class(M, [("*", ["id_*", "z"])])
B, U = build_B_gamma(M, G)
print("local part of M:", B.morphisms)
rep = verify_gamma_theorem(M, G, strict=False)
print("failed sub-checks:", rep.failures)
print("but every slice has its left adjoint:", bool(is_slicewise_local_right_adjoint(U)))
