"""Objects and morphisms local with respect to a class of cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .connectivity import Check
from .core import FinCategory, FinFunctor, subcategory
from .errors import InternalInconsistency, ValidationError
from .multiadjoint import all_local_units, is_right_multi_adjoint
from .orthogonality import (
    MorphismClass,
    gliding_witness,
    is_relatively_full_faithful,
    is_stable,
    morphism_class,
    right_orthogonal,
    saturation_report,
)

__all__ = [
    "ConeSpec", "GammaClass", "gamma_class", "is_gamma_local", "is_strongly_gamma_local",
    "local_objects", "gamma_local_morphisms", "build_B_gamma", "GammaReport",
    "verify_gamma_theorem", "enumerate_gammas",
]


@dataclass(frozen=True)
class ConeSpec:
    """A vertex with a list of legs out of it; an empty list is allowed."""

    vertex: str
    legs: tuple[str, ...]


@dataclass(frozen=True)
class GammaClass:
    category: FinCategory = field(compare=False, repr=False)
    cones: tuple[ConeSpec, ...]
    v_gamma: MorphismClass = field(compare=False, repr=False)


def gamma_class(C: FinCategory, cones: Iterable[ConeSpec | tuple]) -> GammaClass:
    specs = []
    for c in cones:
        if not isinstance(c, ConeSpec):
            c = ConeSpec(c[0], tuple(c[1]))
        C.check_object(c.vertex)
        for g in c.legs:
            C.check_morphism(g)
            if C.dom[g] != c.vertex:
                raise ValidationError(f"leg {g} does not start at {c.vertex}", (c.vertex, g))
        specs.append(ConeSpec(c.vertex, tuple(c.legs)))
    legs = [g for c in specs for g in c.legs]
    return GammaClass(C, tuple(specs), morphism_class(C, legs))


def _surjective(C: FinCategory, cone: ConeSpec, A: str) -> bool:
    hits = {C.compose(h, g) for g in cone.legs for h in C.hom(C.cod[g], A)}
    return all(x in hits for x in C.hom(cone.vertex, A))


def _injective(C: FinCategory, g: str, A: str) -> bool:
    images = [C.compose(h, g) for h in C.hom(C.cod[g], A)]
    return len(images) == len(set(images))


def is_gamma_local(C: FinCategory, G: GammaClass, A: str) -> bool:
    """Every map from a vertex to ``A`` factors through some leg."""
    C.check_object(A)
    return all(_surjective(C, c, A) for c in G.cones)


def is_strongly_gamma_local(C: FinCategory, G: GammaClass, A: str) -> bool:
    """Local, and precomposition with each leg is injective on maps into ``A``."""
    return is_gamma_local(C, G, A) and all(_injective(C, g, A) for c in G.cones for g in c.legs)


def local_objects(C: FinCategory, G: GammaClass, strong: bool = False) -> tuple[str, ...]:
    test = is_strongly_gamma_local if strong else is_gamma_local
    return tuple(A for A in C.objects if test(C, G, A))


def gamma_local_morphisms(C: FinCategory, G: GammaClass) -> MorphismClass:
    return right_orthogonal(C, G.v_gamma)


def build_B_gamma(C: FinCategory, G: GammaClass, strong: bool = False) -> tuple[FinCategory, FinFunctor]:
    """Local objects and the local morphisms between them, with the inclusion."""
    objs = set(local_objects(C, G, strong))
    R = gamma_local_morphisms(C, G)
    mors = [m for m in R if C.dom[m] in objs and C.cod[m] in objs]
    tag = "strong" if strong else "local"
    return subcategory(C, objs, mors, name=f"{C.name or 'C'}_{tag}")


@dataclass(frozen=True)
class GammaReport:
    strong: bool
    objects: tuple[str, ...]
    relatively_full_faithful: Check
    stable: Check
    multi_adjoint: Check
    gliding: Check
    units_saturated: bool | None
    skipped: tuple = ()

    @property
    def failures(self) -> tuple[str, ...]:
        names = ("relatively_full_faithful", "stable", "multi_adjoint", "gliding")
        return tuple(n for n in names if not getattr(self, n))

    @property
    def holds(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.holds


def verify_gamma_theorem(C: FinCategory, G: GammaClass, strong: bool = False,
                         strict: bool = True, saturation: bool = True) -> GammaReport:
    """Check the locality theorem on one instance.

    ``units_saturated`` reports whether every local unit lies in the finite
    saturation of the legs. It is a finite stand-in and is not part of the
    verdict, and ``saturation=False`` skips computing it.
    """
    B, U = build_B_gamma(C, G, strong)
    R = gamma_local_morphisms(C, G)
    glide = gliding_witness(C, R, B.objects)
    gliding = Check(glide is None, glide)
    relff = is_relatively_full_faithful(U)
    stable = is_stable(U)
    madj = is_right_multi_adjoint(U)
    units_sat = None
    skipped: tuple = ()
    if madj and saturation:
        sat = saturation_report(C, G.v_gamma)
        skipped = sat.skipped
        units_sat = all(e.unit in sat.result for rec in all_local_units(U).values() for e in rec.entries)
    report = GammaReport(strong, B.objects, relff, stable, madj, gliding, units_sat, skipped)
    if strict and not report:
        raise InternalInconsistency(f"locality theorem fails: {', '.join(report.failures)}", report)
    return report


def _cones_in(C: FinCategory) -> Iterator[ConeSpec]:
    for K in C.objects:
        legs = C.out_of(K)
        for r in range(len(legs) + 1):
            for sub in combinations(legs, r):
                yield ConeSpec(K, tuple(sub))


def enumerate_gammas(C: FinCategory, max_cones: int = 2) -> Iterator[GammaClass]:
    """Every set of at most ``max_cones`` distinct cones, smaller sets first."""
    all_cones: Sequence[ConeSpec] = list(_cones_in(C))
    for k in range(max_cones + 1):
        for combo in combinations(all_cones, k):
            yield gamma_class(C, combo)
