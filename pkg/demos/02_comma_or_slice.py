"""Two readings of "local right adjoint" that come apart on a group.

Reading one asks every comma category B|U to have an initial object in each
connected component. Reading two asks each slice restriction to have a left
adjoint, that is, every f: B -> U(A) to have an initial factorization through
U over A. Stability agrees with the second.
"""
from multicat import catalog
from multicat.core import comma, validate_category, validate_functor
from multicat.connectivity import connected_components
from multicat.multiadjoint import is_local_right_adjoint, is_slicewise_local_right_adjoint
from multicat.orthogonality import candidates, is_stable

Z2 = validate_category(["*"], [("s", "*", "*")], [("s", "s", "id_*")], "Z2")
U = validate_functor(Z2, catalog.terminal_category(), {"*": "*"}, {"s": "id_*"}, name="collapse")

K, _ = comma("*", U)
print("comma category:", K.objects, K.morphisms)
print("components:", connected_components(K))
# the only object has two endomorphisms, so nothing in it is initial
print("comma reading:", bool(is_local_right_adjoint(U)))

# over the point, id factors as v . id with v = id or v = s; a comparison w must
# satisfy v' . w = v, which fixes w, so the factorization through id is initial
print("slice reading:", bool(is_slicewise_local_right_adjoint(U)))
print("stable:", bool(is_stable(U)), "with candidates", [n for n, _ in candidates(U, "*")])
