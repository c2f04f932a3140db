"""Small named categories and functors used in tests, demos and fixtures."""
from __future__ import annotations

from typing import Iterable, Sequence

from .core import FinCategory, FinFunctor, validate_category, validate_functor


def leq(x: str, y: str) -> str:
    return f"{x}≤{y}"


def poset(elements: Sequence[str], relations: Iterable[tuple[str, str]], name: str = "") -> FinCategory:
    """Poset category from generating relations; strict arrows are named ``x≤y``."""
    elements = list(elements)
    below = {x: {x} for x in elements}
    for x, y in relations:
        below[y].add(x)
    changed = True
    while changed:
        changed = False
        for y in elements:
            grown = set(below[y])
            for x in below[y]:
                grown |= below[x]
            if grown != below[y]:
                below[y] = grown
                changed = True
    for x in elements:
        for y in elements:
            if x != y and x in below[y] and y in below[x]:
                raise ValueError(f"relations are not antisymmetric at {x}, {y}")
    def arrow(x, y):
        return f"id_{x}" if x == y else leq(x, y)
    arrows = [(leq(x, y), x, y) for x in elements for y in elements if x != y and x in below[y]]
    comp = []
    for x in elements:
        for y in elements:
            for z in elements:
                if x in below[y] and y in below[z] and x != y and y != z:
                    comp.append((arrow(y, z), arrow(x, y), arrow(x, z)))
    return validate_category(elements, arrows, comp, name)


def terminal_category(obj: str = "*") -> FinCategory:
    return validate_category([obj], [], [], "One")


def walking_arrow() -> FinCategory:
    return poset(["0", "1"], [("0", "1")], "Two")


def chain(n: int) -> FinCategory:
    xs = [str(i) for i in range(n)]
    return poset(xs, list(zip(xs, xs[1:])), f"Chain{n}")


def discrete(names: Sequence[str] = ("x", "y")) -> FinCategory:
    return validate_category(list(names), [], [], f"D{len(names)}")


def v_poset() -> FinCategory:
    """Bottom below two incomparable points."""
    return poset(["⊥", "a", "b"], [("⊥", "a"), ("⊥", "b")], "V")


def cospan() -> FinCategory:
    return poset(["a", "c", "b"], [("a", "c"), ("b", "c")], "Cospan")


def span() -> FinCategory:
    return poset(["a", "c", "b"], [("c", "a"), ("c", "b")], "Span")


def parallel_pair() -> FinCategory:
    return validate_category(["0", "1"], [("s", "0", "1"), ("t", "0", "1")], [], "Par")


def v_inclusion() -> FinFunctor:
    """The discrete pair {a, b} included into the V poset."""
    V = v_poset()
    D = discrete(["a", "b"])
    return validate_functor(D, V, {"a": "a", "b": "b"}, {}, "U")


def cospan_collapse() -> FinFunctor:
    C = cospan()
    one = terminal_category()
    return validate_functor(C, one, {x: "*" for x in C.objects},
                            {m: "id_*" for m in C.morphisms}, "U")


def constant_functor(S: FinCategory, T: FinCategory, obj: str, name: str = "") -> FinFunctor:
    return FinFunctor(S, T, {x: obj for x in S.objects}, {m: T.identity[obj] for m in S.morphisms}, name)
