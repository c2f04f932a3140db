"""Left and right objects of a factorization system over a terminal object."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .cones import ConeRecord, pullback_cone
from .connectivity import Absent, Check, terminal_objects
from .core import _ID, FinCategory, FinFunctor, opposite_functor, slice_category, subcategory
from .errors import CancellationFails, InternalInconsistency, NoTerminal, NotAFactorizationSystem, NotASubclass
from .orthogonality import (
    Factorization,
    factor_via_classes,
    is_relatively_full_faithful,
    is_stable,
    validate_factorization_system,
)

__all__ = [
    "terminal_object", "terminal_map", "LRClassification", "classify_lr", "lr_remark_checks",
    "reflection_universal", "check_right_L_cancellation", "pullback", "StalkRow", "StalkReport",
    "stalkwise_classify", "lprime_forms", "lprime_objects_over", "CostableReport",
    "costable_inclusion_check",
]


def terminal_object(C: FinCategory) -> str | Absent:
    ts = terminal_objects(C)
    if not ts:
        return Absent(tuple(C.objects), "no terminal object")
    return ts[0]


def _require_terminal(C: FinCategory) -> str:
    t = terminal_object(C)
    if isinstance(t, Absent):
        raise NoTerminal(f"{C.name or 'category'} has no terminal object", C.name)
    return t


def terminal_map(C: FinCategory, X: str, one: str | None = None) -> str:
    one = one or _require_terminal(C)
    return C.hom(X, one)[0]


@dataclass(frozen=True)
class LRClassification:
    terminal: str
    l_objects: tuple[str, ...]
    r_objects: tuple[str, ...]
    reflections: dict = field(repr=False)
    remarks: dict = field(repr=False, compare=False)

    def reflection(self, X: str) -> Factorization:
        return self.reflections[X]


def _require_system(C: FinCategory, L, R) -> None:
    report = validate_factorization_system(C, L, R)
    if not report:
        raise NotAFactorizationSystem(f"not a factorization system: {report.failures[0][0]}", report.failures)


def lr_remark_checks(C: FinCategory, L: Iterable[str], R: Iterable[str], one: str,
                     l_objects: Iterable[str], r_objects: Iterable[str],
                     reflections: dict) -> dict[str, Check]:
    Ls, Rs = set(L), set(R)
    lo, ro = set(l_objects), set(r_objects)
    out: dict[str, Check] = {}
    both = [X for X in C.objects if X in lo and X in ro]
    bad = next((X for X in both if not C.isomorphic(X, one)), None)
    out["only the terminal is both"] = Check(bad is None and one in both, bad)
    bad = next((X for X in lo if not C.isomorphic(reflections[X].apex, one)), None)
    out["reflection of a left object is terminal"] = Check(bad is None, bad)
    bad = next((p for X in ro for p in C.hom(one, X) if p not in Rs), None)
    out["points of right objects are right maps"] = Check(bad is None, bad)
    bad = next((l for X in lo for l in C.out_of(X) if l in Ls and C.cod[l] not in lo), None)
    out["left maps out of left objects land in left objects"] = Check(bad is None, bad)
    bad = None
    for f in C.morphisms:
        A, B = C.dom[f], C.cod[f]
        for K, objs in ((Ls, lo), (Rs, ro)):
            if f in K and B in objs and A not in objs:
                bad = f
    out["terminal maps glide along class maps"] = Check(bad is None, bad)
    return out


def classify_lr(C: FinCategory, L: Iterable[str], R: Iterable[str], strict: bool = True) -> LRClassification:
    """Sort objects by the class of their terminal map and reflect every object."""
    L, R = list(L), list(R)
    one = _require_terminal(C)
    _require_system(C, L, R)
    Ls, Rs = set(L), set(R)
    bang = {X: terminal_map(C, X, one) for X in C.objects}
    lo = tuple(X for X in C.objects if bang[X] in Ls)
    ro = tuple(X for X in C.objects if bang[X] in Rs)
    refl = {}
    for X in C.objects:
        facts = factor_via_classes(C, bang[X], L, R)
        if not facts:
            raise InternalInconsistency(f"terminal map of {X} has no factorization", X)
        refl[X] = facts[0]
    remarks = lr_remark_checks(C, L, R, one, lo, ro, refl)
    if strict:
        for name, chk in remarks.items():
            if not chk:
                raise InternalInconsistency(f"classification property fails: {name}", chk.witness)
    return LRClassification(one, lo, ro, refl, remarks)


def reflection_universal(C: FinCategory, L: Iterable[str], R: Iterable[str], A: str) -> Check:
    """Each map from ``A`` to a right object has exactly one mediator from the reflection, a right map."""
    cls = classify_lr(C, L, R)
    Rs = set(R)
    refl = cls.reflection(C.check_object(A))
    for X in cls.r_objects:
        for f in C.hom(A, X):
            ms = [m for m in C.hom(refl.apex, X) if C.compose(m, refl.left) == f]
            if len(ms) != 1 or ms[0] not in Rs:
                return Check(False, (f, tuple(ms)))
    return Check(True)


def check_right_L_cancellation(C: FinCategory, L: Iterable[str], Lprime: Iterable[str]) -> Check:
    """For ``f . l = l'`` with l in L and l' in L', f must lie in L'."""
    Ls, Lp = set(L), set(Lprime)
    extra = [m for m in C.sort_morphisms(Lp) if m not in Ls]
    if extra:
        raise NotASubclass(f"{extra[0]} is not in the left class", extra[0])
    for l in C.morphisms:
        if l not in Ls:
            continue
        for f in C.out_of(C.cod[l]):
            if C.compose(f, l) in Lp and f not in Lp:
                return Check(False, (l, f, C.compose(f, l)))
    return Check(True)


def pullback(C: FinCategory, f: str, g: str) -> ConeRecord | Absent:
    """Legs ``x`` and ``y`` project to the domains of ``f`` and ``g``."""
    c = pullback_cone(C, f, g)
    if c is None:
        return Absent((f, g), "no pullback")
    return c


@dataclass(frozen=True)
class StalkRow:
    point: str
    apex: str
    fiber: str
    passes: bool


@dataclass(frozen=True)
class StalkReport:
    of: str
    rows: tuple[StalkRow, ...]
    missing: tuple[str, ...]

    @property
    def verdict(self) -> bool | None:
        """False on any failing stalk, None when stalks are missing, else True."""
        if not all(r.passes for r in self.rows):
            return False
        return None if self.missing else True


def stalkwise_classify(C: FinCategory, f: str, Lprime: Iterable[str],
                       points: Iterable[str] | None = None) -> StalkReport:
    """Pull ``f`` back along each point of its codomain and test the fibers."""
    one = _require_terminal(C)
    Lp = set(Lprime)
    B = C.cod[C.check_morphism(f)]
    pts = C.hom(one, B) if points is None else tuple(points)
    rows, missing = [], []
    for p in pts:
        c = pullback_cone(C, f, p)
        if c is None:
            missing.append(p)
            continue
        fib = c.leg("y")
        rows.append(StalkRow(p, c.apex, fib, fib in Lp))
    return StalkReport(f, tuple(rows), tuple(missing))


def lprime_forms(C: FinCategory, Lprime: Iterable[str], R: Iterable[str], X: str) -> tuple[str, ...]:
    """Right maps into ``X`` whose domain has its terminal map in L'."""
    one = _require_terminal(C)
    Lp, Rs = set(Lprime), set(R)
    return tuple(r for r in C.into(C.check_object(X))
                 if r in Rs and terminal_map(C, C.dom[r], one) in Lp)


def lprime_objects_over(C: FinCategory, L: Iterable[str], Lprime: Iterable[str], B: str
                        ) -> tuple[FinCategory, FinFunctor]:
    """L'-maps into ``B`` with L-triangles between them, included in the slice."""
    Ls, Lp = set(L), set(Lprime)
    S, _ = slice_category(C, B)
    objs = [x for x in S.objects if x in Lp]
    oset = set(objs)
    mors = []
    for m in S.morphisms:
        key = S.mor_key[m]
        if key[0] == _ID:
            continue
        h, src, tgt = key
        if h in Ls and src in oset and tgt in oset:
            mors.append(m)
    return subcategory(S, objs, mors, name=f"L'[{B}]")


@dataclass(frozen=True)
class CostableReport:
    base: str
    objects: tuple[str, ...]
    stable: Check
    relatively_full_faithful: Check

    @property
    def holds(self) -> bool:
        return bool(self.stable) and bool(self.relatively_full_faithful)

    def __bool__(self) -> bool:
        return self.holds


def costable_inclusion_check(C: FinCategory, L: Iterable[str], Lprime: Iterable[str], B: str) -> CostableReport:
    """The opposite of the inclusion of L'-maps over ``B`` into the slice is stable."""
    L, Lprime = list(L), list(Lprime)
    canc = check_right_L_cancellation(C, L, Lprime)
    if not canc:
        raise CancellationFails("L' lacks right cancellation along L", canc.witness)
    K, incl = lprime_objects_over(C, L, Lprime, C.check_object(B))
    op = opposite_functor(incl)
    return CostableReport(B, K.objects, is_stable(op), is_relatively_full_faithful(op))
