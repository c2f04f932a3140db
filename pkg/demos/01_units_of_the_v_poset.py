"""Local units of the inclusion of the two maximal points of V = {⊥ ≤ a, ⊥ ≤ b}."""
from multicat import catalog
from multicat.families import embed, family_hom_count, relative_left_adjoint, verify_pi_adjunction
from multicat.multiadjoint import is_right_multi_adjoint, local_units

U = catalog.v_inclusion()
V = U.target
print(U.source.objects, "->", V.objects)

# the comma category under ⊥ splits into two components, one per maximal point,
# and each component has an initial object: the two local units
units = local_units(U, "⊥")
for e in units.entries:
    print("unit", e.unit, "with apex", e.apex)

# together they form a multi-initial family, so U is a right multi-adjoint
print("right multi-adjoint:", bool(is_right_multi_adjoint(U)))

# every arrow from ⊥ into the image factors through exactly one unit
for A in U.source.objects:
    for f in V.hom("⊥", U.obj(A)):
        entry, rest = units.factor(A, f)
        print(f, "=", rest, ".", entry.unit)

# gathering the apexes gives a left adjoint into families of objects
L = relative_left_adjoint(U)
print("L(⊥) =", L.on_object("⊥").members)
print("|hom(L(⊥), a)| =", family_hom_count(L.on_object("⊥"), embed(U.source, "a")))

rep = verify_pi_adjunction(U, 4)
print("transposition checked on", rep.pairs, "pairs of families;", rep.naturality_checks, "naturality squares; holds:", rep.holds)
