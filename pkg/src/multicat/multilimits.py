"""Multilimits and multicolimits of finite diagrams."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .cones import (
    ConeRecord,
    cocone_category,
    cocone_maps,
    cocones,
    colimit,
    cone_category,
    cone_maps,
    coproduct_cocone,
    is_limit,
    limit,
)
from .connectivity import Absent, is_connected, multi_initial_family, multi_terminal_family
from .core import _ID, FinCategory, FinFunctor, compose_functors, is_faithful, is_full
from .errors import InternalInconsistency, NoTargetColimit, NoTargetLimit, NotFull, NotMultiAdjoint
from .multiadjoint import local_units

__all__ = [
    "MultiversalFamily", "cone_category", "cocone_category", "multilimit", "multicolimit",
    "preserves_multilimits", "multireflective_multicolimit", "connected_limit_via_units",
    "verify_multicolimit_hom_formula", "same_up_to_iso",
]


@dataclass(frozen=True)
class MultiversalFamily:
    """Members are (co)cones; ``witness`` sends each (co)cone to ``(member index, mediating arrow)``."""

    members: tuple[ConeRecord, ...]
    witness: dict = field(compare=False, repr=False)

    def __bool__(self) -> bool:
        # an empty family is still a valid answer
        return True

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def _family(C: FinCategory, K: FinCategory, fam) -> MultiversalFamily:
    index = {m: i for i, m in enumerate(fam.members)}
    witness = {}
    for obj, (m, arrow) in fam.witness.items():
        key = K.mor_key[arrow]
        under = C.identity[K.obj_key[m].apex] if key[0] == _ID else key[0]
        witness[K.obj_key[obj]] = (index[m], under)
    return MultiversalFamily(tuple(K.obj_key[m] for m in fam.members), witness)


def multilimit(C: FinCategory, D: FinFunctor, cap: int | None = None) -> MultiversalFamily | Absent:
    K = cone_category(C, D, cap)
    fam = multi_terminal_family(K)
    if not fam:
        return Absent(tuple(K.obj_key[x] for x in fam.component), "a component of the cone category has no terminal cone")
    return _family(C, K, fam)


def multicolimit(C: FinCategory, D: FinFunctor, cap: int | None = None) -> MultiversalFamily | Absent:
    K = cocone_category(C, D, cap)
    fam = multi_initial_family(K)
    if not fam:
        return Absent(tuple(K.obj_key[x] for x in fam.component), "a component of the cocone category has no initial cocone")
    return _family(C, K, fam)


def _image(U: FinFunctor, c: ConeRecord) -> ConeRecord:
    return ConeRecord(U.obj_map[c.apex], tuple((i, U.mor_map[m]) for i, m in c.legs))


@dataclass(frozen=True)
class PreservationRow:
    target_cone: ConeRecord
    sources: tuple[int, ...]
    coproduct: bool
    vacuous: bool


@dataclass(frozen=True)
class MultilimitPreservation:
    source: MultiversalFamily
    target: MultiversalFamily
    rows: tuple[PreservationRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.coproduct for r in self.rows)

    def __bool__(self) -> bool:
        return self.holds


def preserves_multilimits(U: FinFunctor, D: FinFunctor) -> MultilimitPreservation:
    """Each target multilimit cone must be the coproduct of the images factoring through it."""
    S, T = U.source, U.target
    src = multilimit(S, D)
    if not src:
        raise NoTargetLimit("the diagram has no multilimit in the source", src)
    UD = compose_functors(U, D)
    tgt = multilimit(T, UD)
    if not tgt:
        raise NoTargetLimit("the image diagram has no multilimit in the target", tgt)
    parts: list[list[int]] = [[] for _ in tgt.members]
    maps: dict[int, str] = {}
    for j, c in enumerate(src.members):
        k, h = tgt.witness[_image(U, c)]
        parts[k].append(j)
        maps[j] = h
    rows = []
    for k, M in enumerate(tgt.members):
        J = parts[k]
        apexes = [U.obj_map[src.members[j].apex] for j in J]
        cop = coproduct_cocone(T, apexes)
        ok = False
        if cop is not None:
            # the map out of the coproduct induced by the factoring arrows must be invertible
            for h in T.hom(cop.apex, M.apex):
                if all(T.compose(h, cop.leg(str(n))) == maps[j] for n, j in enumerate(J)):
                    ok = T.is_iso(h)
                    break
        rows.append(PreservationRow(M, tuple(J), ok, not J))
    return MultilimitPreservation(src, tgt, tuple(rows))


def _require_inclusion(U: FinFunctor) -> None:
    if not is_full(U) or not is_faithful(U):
        raise NotFull("expected a full and faithful inclusion", U.name)
    for B in U.target.objects:
        rec = local_units(U, B)
        if not rec:
            raise NotMultiAdjoint(f"no multi-initial family under {B}", (B, rec.component))


def _preimage_cocone(U: FinFunctor, D: FinFunctor, apex: str, legs: dict[str, str]) -> ConeRecord | None:
    S = U.source
    shape = D.source
    options = []
    for i in shape.objects:
        pre = [m for m in S.hom(D.obj_map[i], apex) if U.mor_map[m] == legs[i]]
        if not pre:
            return None
        options.append(pre)
    for choice in product(*options):
        leg = dict(zip(shape.objects, choice))
        if all(S.compose(leg[shape.cod[s]], D.mor_map[s]) == leg[shape.dom[s]] for s in shape.non_identities()):
            return ConeRecord(apex, tuple((i, leg[i]) for i in shape.objects))
    return None


def multireflective_multicolimit(U: FinFunctor, D: FinFunctor) -> MultiversalFamily:
    """Multicolimit built from the local units under the target colimit."""
    _require_inclusion(U)
    S, T = U.source, U.target
    UD = compose_functors(U, D)
    Q = colimit(T, UD)
    if Q is None:
        raise NoTargetColimit("the image diagram has no colimit in the target", D.name)
    rec = local_units(U, Q.apex)
    members = []
    for e in rec.entries:
        legs = {i: T.compose(e.unit, q) for i, q in Q.legs}
        c = _preimage_cocone(U, D, e.apex, legs)
        if c is None:
            raise InternalInconsistency("unit cocone has no preimage", e)
        members.append(c)
    witness = {}
    for c in cocones(S, D):
        hits = [(k, h) for k, m in enumerate(members) for h in cocone_maps(S, m, c)]
        if len(hits) != 1:
            raise InternalInconsistency("unit cocones are not multi-initial", c)
        witness[c] = hits[0]
    return MultiversalFamily(tuple(members), witness)


def same_up_to_iso(C: FinCategory, F1: MultiversalFamily, F2: MultiversalFamily, cocone: bool = True) -> bool:
    """Members match one-to-one through invertible (co)cone maps."""
    if len(F1) != len(F2):
        return False
    maps = cocone_maps if cocone else cone_maps
    used = set()
    for a in F1.members:
        match = None
        for k, b in enumerate(F2.members):
            if k in used:
                continue
            if any(C.is_iso(h) for h in maps(C, a, b)):
                match = k
                break
        if match is None:
            return False
        used.add(match)
    return True


def connected_limit_via_units(U: FinFunctor, D: FinFunctor) -> ConeRecord:
    """Limit of a connected diagram obtained by factoring the target limit through one unit."""
    _require_inclusion(U)
    S, T = U.source, U.target
    if not is_connected(D.source):
        raise ValueError("diagram shape is not connected")
    UD = compose_functors(U, D)
    M = limit(T, UD)
    if M is None:
        raise NoTargetLimit("the image diagram has no limit in the target", D.name)
    rec = local_units(U, M.apex)
    used = set()
    legs = {}
    for i, p in M.legs:
        entry, u = rec.factor(D.obj_map[i], p)
        used.add(entry.index)
        legs[i] = u
    if len(used) != 1:
        raise InternalInconsistency("limit projections factor through different units", used)
    entry = rec.entries[used.pop()]
    if not T.is_iso(entry.unit):
        raise InternalInconsistency("the unit under the limit is not invertible", entry)
    cone = ConeRecord(entry.apex, tuple((i, legs[i]) for i in D.source.objects))
    if not is_limit(S, D, cone):
        raise InternalInconsistency("the unit cone is not a limit in the source", cone)
    return cone


@dataclass(frozen=True)
class HomFormulaRow:
    obj: str
    cocones: int
    hom_sum: int


def verify_multicolimit_hom_formula(C: FinCategory, D: FinFunctor, fam: MultiversalFamily) -> tuple[bool, tuple[HomFormulaRow, ...]]:
    """``|Cocone(D, X)| = sum_j |hom(X_j, X)|`` for every object X."""
    rows = []
    for X in C.objects:
        n = sum(1 for _ in cocones(C, D, X))
        s = sum(len(C.hom(m.apex, X)) for m in fam.members)
        rows.append(HomFormulaRow(X, n, s))
    return all(r.cocones == r.hom_sum for r in rows), tuple(rows)
