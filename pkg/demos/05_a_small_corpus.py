"""Enumerate every category with at most 2 objects and 3 arrows and run the theorem suite."""
from multicat.corpus import enumerate_categories, run_corpus

for C in enumerate_categories(2, 3):
    print(C.name, len(C.objects), "objects", C.non_identities())

rep = run_corpus(2, 3)
print(rep.categories, "categories,", rep.functors, "functors,", rep.local_right_adjoints, "local right adjoints")
for name, t in rep.tallies.items():
    print(f"{name:22s} checked {t.checked:5d}  violations {t.violations}")
# both kinds of violation come from the comma-versus-slice disagreement shown in
# 02_comma_or_slice.py: with the slice reading the counts drop to zero
print("first witnesses:", rep.tallies["stable_vs_local"].witnesses[:2])
