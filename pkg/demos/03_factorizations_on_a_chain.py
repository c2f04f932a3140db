"""A factorization system on the chain 0 ≤ 1 ≤ 2 and the objects it sorts out."""
from multicat import catalog
from multicat.lrgeometry import classify_lr, lprime_forms, reflection_universal, stalkwise_classify
from multicat.orthogonality import (
    factor_via_classes,
    left_orthogonal,
    right_orthogonal,
    validate_factorization_system,
)

C = catalog.chain(3)
ids = ["id_0", "id_1", "id_2"]
L = ids + ["0≤1"]
R = ids + ["1≤2"]

# the classes determine each other by orthogonality
print("L^⊥ =", right_orthogonal(C, L).members)
print("^⊥R =", left_orthogonal(C, R).members)
print("factorization system:", bool(validate_factorization_system(C, L, R)))
for fac in factor_via_classes(C, "0≤2", L, R):
    print("0≤2 =", fac.right, ".", fac.left, "through", fac.apex)

# objects are sorted by the class of their map to the terminal object 2
cls = classify_lr(C, L, R)
print("left objects:", cls.l_objects, "right objects:", cls.r_objects)
refl = cls.reflection("0")
print("reflection of 0:", refl.left, "into", refl.apex)
print("reflection is universal:", all(reflection_universal(C, L, R, A) for A in C.objects))

# pulling 0≤2 back along the only point of 2 gives a fiber outside L
rep = stalkwise_classify(C, "0≤2", L)
for row in rep.rows:
    print("stalk at", row.point, "has fiber", row.fiber, "in L:", row.passes)
print("right maps into 2 from left objects:", lprime_forms(C, L, R, "2"))
