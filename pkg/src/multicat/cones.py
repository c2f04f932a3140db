"""Cones, cocones and (co)limits of finite diagrams by exhaustive search."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .core import (
    FinCategory,
    FinFunctor,
    _ID,
    _build,
    identity_name,
    opposite,
    opposite_functor,
    validate_category,
)


@dataclass(frozen=True)
class ConeRecord:
    """A cone (or cocone): an apex with one leg per shape object."""

    apex: str
    legs: tuple[tuple[str, str], ...]

    def leg(self, i: str) -> str:
        for j, m in self.legs:
            if j == i:
                return m
        raise KeyError(i)

    @property
    def leg_map(self) -> dict[str, str]:
        return dict(self.legs)

    def label(self) -> str:
        return "|".join([self.apex, *(m for _, m in self.legs)])


def make_diagram(shape: FinCategory, C: FinCategory, obj_map: Mapping[str, str],
                 mor_map: Mapping[str, str] | None = None, name: str = "") -> FinFunctor:
    from .core import validate_functor

    return validate_functor(shape, C, obj_map, mor_map or {}, name)


def _shape_constraints(D: FinFunctor):
    I = D.source
    order = I.objects
    pos = {i: k for k, i in enumerate(order)}
    checks: list[list[tuple[str, str, str]]] = [[] for _ in order]
    for s in I.non_identities():
        i, j = I.dom[s], I.cod[s]
        checks[max(pos[i], pos[j])].append((i, D.mor_map[s], j))
    return order, checks


def cones(C: FinCategory, D: FinFunctor, apex: str | None = None) -> Iterator[ConeRecord]:
    """All cones over ``D`` (optionally with a fixed apex), in canonical order."""
    order, checks = _shape_constraints(D)
    apexes = C.objects if apex is None else (C.check_object(apex),)
    for X in apexes:
        choices = [C.hom(X, D.obj_map[i]) for i in order]
        if any(not c for c in choices):
            continue
        legs: dict[str, str] = {}

        def rec(k):
            if k == len(order):
                yield ConeRecord(X, tuple((i, legs[i]) for i in order))
                return
            i = order[k]
            for m in choices[k]:
                legs[i] = m
                if all(C.compose(s, legs[a]) == legs[b] for a, s, b in checks[k]):
                    yield from rec(k + 1)
            legs.pop(i, None)

        yield from rec(0)


def cocones(C: FinCategory, D: FinFunctor, apex: str | None = None) -> Iterator[ConeRecord]:
    return cones(opposite(C), opposite_functor(D), apex)


def cone_maps(C: FinCategory, c: ConeRecord, d: ConeRecord) -> tuple[str, ...]:
    """Arrows ``h: c.apex -> d.apex`` with ``d.leg(i) . h = c.leg(i)`` for all i."""
    return tuple(h for h in C.hom(c.apex, d.apex)
                 if all(C.compose(m, h) == c.leg(i) for i, m in d.legs))


def cocone_maps(C: FinCategory, c: ConeRecord, d: ConeRecord) -> tuple[str, ...]:
    return tuple(h for h in C.hom(c.apex, d.apex)
                 if all(C.compose(h, m) == d.leg(i) for i, m in c.legs))


def cone_category(C: FinCategory, D: FinFunctor, cap: int | None = None) -> FinCategory:
    """Cones over D; the object key of each cone is its ConeRecord."""
    records = list(cones(C, D))
    names = {r: r.label() for r in records}
    arrows = []
    for r in records:
        arrows.append(((_ID, r), identity_name(names[r]), names[r], names[r]))
    for c in records:
        for d in records:
            for h in cone_maps(C, c, d):
                if c == d and C.is_identity(h):
                    continue
                arrows.append(((h, c, d), f"{h}@{names[d]}", names[c], names[d]))
    under = {}
    for a in arrows:
        k = a[0]
        under[k] = C.identity[k[1].apex] if k[0] is _ID else k[0]

    def composer(k2, k1):
        h = C.compose(under[k2], under[k1])
        s = k1[1]
        t = k2[2] if k2[0] is not _ID else k2[1]
        return (_ID, s) if s == t and C.is_identity(h) else (h, s, t)

    return _build([names[r] for r in records], {names[r]: r for r in records}, arrows,
                  f"Cone({D.name})" if D.name else "Cone", composer, cap, "cone category")


def cocone_category(C: FinCategory, D: FinFunctor, cap: int | None = None) -> FinCategory:
    K = opposite(cone_category(opposite(C), opposite_functor(D), cap))
    return K.with_name(f"Cocone({D.name})" if D.name else "Cocone")


def is_limit(C: FinCategory, D: FinFunctor, cone: ConeRecord) -> bool:
    return all(len(cone_maps(C, d, cone)) == 1 for d in cones(C, D))


def is_colimit(C: FinCategory, D: FinFunctor, cocone: ConeRecord) -> bool:
    return all(len(cocone_maps(C, cocone, d)) == 1 for d in cocones(C, D))


def limit(C: FinCategory, D: FinFunctor) -> ConeRecord | None:
    """The first limiting cone in canonical order, or None."""
    everything = list(cones(C, D))
    for c in everything:
        if all(len(cone_maps(C, d, c)) == 1 for d in everything):
            return c
    return None


def colimit(C: FinCategory, D: FinFunctor) -> ConeRecord | None:
    everything = list(cocones(C, D))
    for c in everything:
        if all(len(cocone_maps(C, c, d)) == 1 for d in everything):
            return c
    return None


# standard small shapes, built once


@lru_cache(maxsize=None)
def discrete_shape(n: int) -> FinCategory:
    return validate_category([str(i) for i in range(n)], [], [], f"Disc{n}")


@lru_cache(maxsize=None)
def cospan_shape() -> FinCategory:
    return validate_category(["x", "y", "z"], [("f", "x", "z"), ("g", "y", "z")], [], "CospanShape")


@lru_cache(maxsize=None)
def span_shape() -> FinCategory:
    return validate_category(["z", "x", "y"], [("f", "z", "x"), ("g", "z", "y")], [], "SpanShape")


@lru_cache(maxsize=None)
def parallel_shape() -> FinCategory:
    return validate_category(["x", "y"], [("s", "x", "y"), ("t", "x", "y")], [], "ParallelShape")


@lru_cache(maxsize=None)
def wide_cospan_shape(k: int) -> FinCategory:
    legs = [(f"p{i}", str(i), "top") for i in range(k)]
    return validate_category([*(str(i) for i in range(k)), "top"], legs, [], f"WideCospan{k}")


def _diagram(shape: FinCategory, C: FinCategory, obj_map, mor_map) -> FinFunctor:
    mm = {shape.identity[x]: C.identity[obj_map[x]] for x in shape.objects}
    mm.update(mor_map)
    return FinFunctor(shape, C, obj_map, mm)


def cospan_diagram(C: FinCategory, f: str, g: str) -> FinFunctor:
    if C.cod[f] != C.cod[g]:
        raise ValueError(f"{f} and {g} do not share a codomain")
    return _diagram(cospan_shape(), C, {"x": C.dom[f], "y": C.dom[g], "z": C.cod[f]}, {"f": f, "g": g})


def span_diagram(C: FinCategory, f: str, g: str) -> FinFunctor:
    if C.dom[f] != C.dom[g]:
        raise ValueError(f"{f} and {g} do not share a domain")
    return _diagram(span_shape(), C, {"z": C.dom[f], "x": C.cod[f], "y": C.cod[g]}, {"f": f, "g": g})


def parallel_diagram(C: FinCategory, s: str, t: str) -> FinFunctor:
    if C.dom[s] != C.dom[t] or C.cod[s] != C.cod[t]:
        raise ValueError(f"{s} and {t} are not parallel")
    return _diagram(parallel_shape(), C, {"x": C.dom[s], "y": C.cod[s]}, {"s": s, "t": t})


def discrete_diagram(C: FinCategory, xs: Sequence[str]) -> FinFunctor:
    return _diagram(discrete_shape(len(xs)), C, {str(i): x for i, x in enumerate(xs)}, {})


def wide_cospan_diagram(C: FinCategory, fs: Sequence[str]) -> FinFunctor:
    top = C.cod[fs[0]]
    if any(C.cod[f] != top for f in fs):
        raise ValueError("arrows do not share a codomain")
    omap = {str(i): C.dom[f] for i, f in enumerate(fs)}
    omap["top"] = top
    return _diagram(wide_cospan_shape(len(fs)), C, omap, {f"p{i}": f for i, f in enumerate(fs)})


def pullback_cone(C: FinCategory, f: str, g: str) -> ConeRecord | None:
    return limit(C, cospan_diagram(C, f, g))


def pushout_cocone(C: FinCategory, f: str, g: str) -> ConeRecord | None:
    return colimit(C, span_diagram(C, f, g))


def coequalizer_cocone(C: FinCategory, s: str, t: str) -> ConeRecord | None:
    return colimit(C, parallel_diagram(C, s, t))


def coproduct_cocone(C: FinCategory, xs: Sequence[str]) -> ConeRecord | None:
    return colimit(C, discrete_diagram(C, xs))


def product_cone(C: FinCategory, xs: Sequence[str]) -> ConeRecord | None:
    return limit(C, discrete_diagram(C, xs))
