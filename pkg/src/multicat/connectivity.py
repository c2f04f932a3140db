"""Connected components, initial objects and multi-initial families."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple

from .core import FinCategory


class Check(NamedTuple):
    """A verdict with an optional witness; truthy exactly when it holds."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Absent:
    """Marks a missing universal object; ``component`` is where it fails."""

    component: tuple = ()
    reason: str = ""
    detail: Any = None

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class ComponentPartition:
    blocks: tuple[tuple[str, ...], ...]
    representative: tuple[str, ...]
    block_of: dict = field(compare=False, repr=False)

    def same(self, x: str, y: str) -> bool:
        return self.block_of[x] == self.block_of[y]


@dataclass(frozen=True)
class MultiInitialFamily:
    members: tuple[str, ...]
    witness: dict = field(compare=False)

    def __iter__(self):
        return iter(self.members)

    def __bool__(self) -> bool:
        # an empty family is still a valid answer
        return True

    def __len__(self) -> int:
        return len(self.members)


def connected_components(C: FinCategory) -> ComponentPartition:
    parent = {x: x for x in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in C.morphisms:
        a, b = find(C.dom[m]), find(C.cod[m])
        if a != b:
            # keep the earliest object as root so blocks come out in order
            if C.object_index(a) < C.object_index(b):
                parent[b] = a
            else:
                parent[a] = b
    blocks: dict[str, list[str]] = {}
    for x in C.objects:
        blocks.setdefault(find(x), []).append(x)
    ordered = tuple(tuple(b) for b in blocks.values())
    block_of = {x: i for i, b in enumerate(ordered) for x in b}
    return ComponentPartition(ordered, tuple(b[0] for b in ordered), block_of)


def is_connected(C: FinCategory) -> bool:
    return len(connected_components(C).blocks) == 1


def _initial_in(C: FinCategory, x: str, among: Iterable[str]) -> bool:
    return all(len(C.hom(x, y)) == 1 for y in among)


def initial_objects(C: FinCategory) -> tuple[str, ...]:
    return tuple(x for x in C.objects if _initial_in(C, x, C.objects))


def terminal_objects(C: FinCategory) -> tuple[str, ...]:
    return tuple(y for y in C.objects if all(len(C.hom(x, y)) == 1 for x in C.objects))


def multi_initial_family(C: FinCategory, components: ComponentPartition | None = None
                         ) -> MultiInitialFamily | Absent:
    """One initial object per connected component, or the first failing component."""
    parts = components or connected_components(C)
    members = []
    witness = {}
    for block in parts.blocks:
        top = next((x for x in block if _initial_in(C, x, block)), None)
        if top is None:
            return Absent(block, "component has no initial object")
        members.append(top)
        for y in block:
            witness[y] = (top, C.hom(top, y)[0])
    return MultiInitialFamily(tuple(members), witness)


def multi_terminal_family(C: FinCategory, components: ComponentPartition | None = None
                          ) -> MultiInitialFamily | Absent:
    parts = components or connected_components(C)
    members = []
    witness = {}
    for block in parts.blocks:
        top = next((y for y in block if all(len(C.hom(x, y)) == 1 for x in block)), None)
        if top is None:
            return Absent(block, "component has no terminal object")
        members.append(top)
        for x in block:
            witness[x] = (top, C.hom(x, top)[0])
    return MultiInitialFamily(tuple(members), witness)


def is_weakly_initial(C: FinCategory, S: Iterable[str]) -> bool:
    S = [C.check_object(x) for x in S]
    return all(any(C.hom(s, y) for s in S) for y in C.objects)


def check_multi_initial(C: FinCategory, fam: MultiInitialFamily) -> Check:
    """Exhaustive check: each object gets exactly one arrow from exactly one member."""
    for y in C.objects:
        hits = [(x, C.hom(x, y)) for x in fam.members if C.hom(x, y)]
        if len(hits) != 1 or len(hits[0][1]) != 1:
            return Check(False, y)
        if fam.witness.get(y) != (hits[0][0], hits[0][1][0]):
            return Check(False, y)
    return Check(True)
