"""Local units, local left adjoints and the Beck-Chevalley mate.

A functor ``U: A -> B`` is a local right adjoint when every comma category
``B|U`` has an initial object in each connected component. Those initial
objects are the local units. Between finite categories every family is
small, so right multi-adjoints and local right adjoints coincide.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from .cones import is_limit, limit, wide_cospan_diagram
from .connectivity import Absent, Check, connected_components, multi_initial_family
from .core import (
    FinFunctor,
    NatTrans,
    _ID,
    comma,
    compose_functors,
    identity_functor,
    slice_arrow,
    slice_category,
    validate_functor,
    validate_nat_trans,
)
from .errors import InternalInconsistency, NotFunctorial, NotLocalRightAdjoint, NotNatural

MULTI_ADJOINT_NOTE = (
    "finite categories: every multi-initial family is small and the object set is a "
    "weakly initial family, so right multi-adjoint coincides with local right adjoint"
)


@dataclass(frozen=True)
class UnitEntry:
    index: int
    unit: str
    apex: str


@dataclass(frozen=True)
class LocalUnitRecord:
    """The local units under ``base``, one per component of ``base|U``.

    ``factoring[A, f] = (index, u)`` says ``f = U(u) . unit[index]``.
    """

    base: str
    entries: tuple[UnitEntry, ...]
    factoring: dict = field(compare=False, repr=False)

    def __iter__(self):
        return iter(self.entries)

    def __bool__(self) -> bool:
        # an empty family is still a valid answer
        return True

    def __len__(self) -> int:
        return len(self.entries)

    def factor(self, A: str, f: str) -> tuple[UnitEntry, str]:
        i, u = self.factoring[A, f]
        return self.entries[i], u


def local_units(U: FinFunctor, B: str, cap: int | None = None) -> LocalUnitRecord | Absent:
    K, proj = comma(B, U, cap)
    fam = multi_initial_family(K)
    if not fam:
        return Absent(tuple(K.obj_key[x] for x in fam.component), f"a component of {B}|U has no initial object",
                      B)
    entries = []
    index = {}
    for i, m in enumerate(fam.members):
        A, eta = K.obj_key[m]
        entries.append(UnitEntry(i, eta, A))
        index[m] = i
    factoring = {}
    for y, (m, arrow) in fam.witness.items():
        factoring[K.obj_key[y]] = (index[m], proj.mor_map[arrow])
    return LocalUnitRecord(B, tuple(entries), factoring)


def all_local_units(U: FinFunctor, cap: int | None = None) -> dict[str, LocalUnitRecord]:
    out = {}
    for B in U.target.objects:
        rec = local_units(U, B, cap)
        if not rec:
            raise NotLocalRightAdjoint(f"no local unit for a component under {B}", (B, rec.component))
        out[B] = rec
    return out


def is_local_right_adjoint(U: FinFunctor, cap: int | None = None) -> Check:
    """Witness on failure: ``(B, component)`` with the component as (A, f) pairs."""
    for B in U.target.objects:
        rec = local_units(U, B, cap)
        if not rec:
            return Check(False, (B, rec.component))
    return Check(True)


def is_right_multi_adjoint(U: FinFunctor, cap: int | None = None) -> Check:
    return is_local_right_adjoint(U, cap)


def factorizations(U: FinFunctor, A: str, f: str) -> list[tuple[str, str, str]]:
    """Every ``(A', g, v)`` with ``v: A' -> A`` and ``U(v) . g = f``."""
    S, T = U.source, U.target
    B = T.dom[f]
    out = []
    for A2 in S.objects:
        for v in S.hom(A2, A):
            Uv = U.mor_map[v]
            for g in T.hom(B, U.obj_map[A2]):
                if T.compose(Uv, g) == f:
                    out.append((A2, g, v))
    return out


def _comparisons(U: FinFunctor, c, d) -> list[str]:
    """Maps ``w`` from factorization ``c`` to ``d``: ``U(w) . g_c = g_d``, ``v_d . w = v_c``."""
    S, T = U.source, U.target
    return [w for w in S.hom(c[0], d[0])
            if T.compose(U.mor_map[w], c[1]) == d[1] and S.compose(d[2], w) == c[2]]


def local_unit_at(U: FinFunctor, A: str, f: str) -> tuple[str, str, str] | None:
    """The initial factorization ``(A_f, eta, L_A(f))`` of ``f: B -> U(A)``, if any."""
    U.target.check_morphism(f)
    if U.target.cod[f] != U.obj(A):
        raise ValueError(f"{f} does not land in U({A})")
    facts = factorizations(U, A, f)
    for c in facts:
        if all(len(_comparisons(U, c, d)) == 1 for d in facts):
            return c
    return None


def is_slicewise_local_right_adjoint(U: FinFunctor) -> Check:
    """Every ``f: B -> U(A)`` has an initial factorization through ``U`` over ``A``.

    This is the slice-by-slice form of the definition. It can hold while some
    component of ``B|U`` lacks an initial object, e.g. for a nontrivial group
    collapsed onto the terminal category. Witness: ``(f, A)``.
    """
    S, T = U.source, U.target
    for A in S.objects:
        for f in T.into(U.obj_map[A]):
            if local_unit_at(U, A, f) is None:
                return Check(False, (f, A))
    return Check(True)


def comparison(U: FinFunctor, c, d) -> str:
    ws = _comparisons(U, c, d)
    if len(ws) != 1:
        raise InternalInconsistency(f"expected one comparison between factorizations, found {len(ws)}", (c, d))
    return ws[0]


@dataclass(frozen=True)
class LocalAdjunction:
    at: str
    L: FinFunctor
    U_A: FinFunctor
    unit: NatTrans
    counit: NatTrans
    factorization: dict = field(repr=False)

    def apex(self, f: str) -> str:
        return self.factorization[f][0]

    def eta(self, f: str) -> str:
        return self.factorization[f][1]

    def left(self, f: str) -> str:
        return self.factorization[f][2]


def local_left_adjoint(U: FinFunctor, A: str, cap: int | None = None) -> LocalAdjunction:
    """``L_A: B/U(A) -> A/A`` with unit, counit and both triangle identities checked."""
    S, T = U.source, U.target
    S.check_object(A)
    ST, _ = slice_category(T, U.obj_map[A], cap)
    SS, _ = slice_category(S, A, cap)
    fact = {}
    for f in ST.objects:
        c = local_unit_at(U, A, f)
        if c is None:
            raise NotLocalRightAdjoint(f"{f} has no initial factorization through U", (A, f))
        fact[f] = c
    U_A = FinFunctor(SS, ST, {v: U.mor_map[v] for v in SS.objects}, {}, f"U/{A}")
    for m, key in SS.mor_key.items():
        if key[0] == _ID:
            v = key[1]
            U_A.mor_map[m] = ST.identity[U.mor_map[v]]
        else:
            h, v, v2 = key
            U_A.mor_map[m] = slice_arrow(ST, U.mor_map[h], U.mor_map[v], U.mor_map[v2], T)
    L_obj = {f: fact[f][2] for f in ST.objects}
    L_mor = {}
    for m, key in ST.mor_key.items():
        if key[0] == _ID:
            L_mor[m] = SS.identity[L_obj[key[1]]]
            continue
        k, f, g = key
        cf, cg = fact[f], fact[g]
        w = comparison(U, cf, (cg[0], T.compose(cg[1], k), cg[2]))
        L_mor[m] = slice_arrow(SS, w, cf[2], cg[2], S)
    try:
        L = validate_functor(ST, SS, L_obj, L_mor, f"L_{A}")
    except NotFunctorial as exc:
        raise InternalInconsistency(f"L_{A} is not functorial: {exc}", exc.witness) from exc
    UL = compose_functors(U_A, L)
    LU = compose_functors(L, U_A)
    eta = {}
    for f in ST.objects:
        A_f, e, v = fact[f]
        eta[f] = slice_arrow(ST, e, f, U.mor_map[v], T)
    eps = {}
    for v in SS.objects:
        Uv = U.mor_map[v]
        c = fact[Uv]
        w = comparison(U, c, (S.dom[v], T.identity[U.obj_map[S.dom[v]]], v))
        eps[v] = slice_arrow(SS, w, c[2], v, S)
    try:
        unit = validate_nat_trans(identity_functor(ST), UL, eta)
        counit = validate_nat_trans(LU, identity_functor(SS), eps)
    except NotNatural as exc:
        raise InternalInconsistency(f"unit or counit is not natural: {exc}", exc.witness) from exc
    for f in ST.objects:
        if SS.compose(eps[L_obj[f]], L_mor[eta[f]]) != SS.identity[L_obj[f]]:
            raise InternalInconsistency(f"triangle identity fails at {f}", ("L", f))
        if T.compose(U.mor_map[fact[f][2]], fact[f][1]) != f:
            raise InternalInconsistency(f"unit factorization fails at {f}", f)
    for v in SS.objects:
        Uv = U.mor_map[v]
        if ST.compose(U_A.mor_map[eps[v]], eta[Uv]) != ST.identity[Uv]:
            raise InternalInconsistency(f"triangle identity fails at {v}", ("U", v))
    return LocalAdjunction(A, L, U_A, unit, counit, fact)


@dataclass(frozen=True)
class BCResult:
    at: tuple[str, str]
    sigma: str
    is_iso: bool
    inverse: str | None


def beck_chevalley(U: FinFunctor, u: str, f: str, strict: bool = True) -> BCResult:
    """The mate comparing the local unit of ``U(u) . f`` with that of ``f``.

    Both units are computed independently. ``strict`` turns a non-invertible
    mate into InternalInconsistency; the corpus runner counts it instead.
    """
    S, T = U.source, U.target
    A1, A2 = S.dom[S.check_morphism(u)], S.cod[u]
    if T.cod[T.check_morphism(f)] != U.obj_map[A1]:
        raise ValueError(f"{f} does not land in U({A1})")
    c1 = local_unit_at(U, A1, f)
    uf = T.compose(U.mor_map[u], f)
    c2 = local_unit_at(U, A2, uf)
    if c1 is None or c2 is None:
        raise NotLocalRightAdjoint("missing local unit", (u, f))
    shifted = (c1[0], c1[1], S.compose(u, c1[2]))
    sigma = comparison(U, c2, shifted)
    if T.compose(U.mor_map[sigma], c2[1]) != c1[1]:
        raise InternalInconsistency("mate does not relate the units", (u, f))
    inv = S.inverse(sigma)
    result = BCResult((u, f), sigma, inv is not None, inv)
    if strict and inv is None:
        raise InternalInconsistency(f"Beck-Chevalley mate at ({u}, {f}) is not invertible", result)
    return result


def beck_chevalley_all(U: FinFunctor, strict: bool = True) -> list[BCResult]:
    S, T = U.source, U.target
    out = []
    for u in S.morphisms:
        for f in T.into(U.obj_map[S.dom[u]]):
            out.append(beck_chevalley(U, u, f, strict))
    return out


@dataclass(frozen=True)
class ConerveRow:
    obj: str
    homs: int
    unit_sum: int
    bijective: bool


@dataclass(frozen=True)
class ConerveReport:
    base: str
    units: LocalUnitRecord
    rows: tuple[ConerveRow, ...]

    @property
    def holds(self) -> bool:
        return all(r.homs == r.unit_sum and r.bijective for r in self.rows)

    def __bool__(self) -> bool:
        return self.holds


def conerve_decomposition(U: FinFunctor, B: str, strict: bool = True) -> ConerveReport:
    """Check that ``hom(B, U-)`` splits as a sum of ``hom(A_x, -)`` over the units."""
    S, T = U.source, U.target
    rec = local_units(U, B)
    if not rec:
        raise NotLocalRightAdjoint(f"no local units under {B}", (B, rec.component))
    rows = []
    for A in S.objects:
        target_side = T.hom(B, U.obj_map[A])
        image = [T.compose(U.mor_map[u], e.unit) for e in rec.entries for u in S.hom(e.apex, A)]
        bij = len(set(image)) == len(image) and set(image) == set(target_side)
        rows.append(ConerveRow(A, len(target_side), len(image), bij))
    report = ConerveReport(B, rec, tuple(rows))
    if strict and not report.holds:
        raise InternalInconsistency(f"co-nerve decomposition fails under {B}", report)
    return report


@dataclass(frozen=True)
class PreservationReport:
    holds: bool
    witness: object
    checked: int
    skipped: int

    def __bool__(self) -> bool:
        return self.holds


def preserves_wide_pullbacks(U: FinFunctor, arity: int = 3) -> PreservationReport:
    """Image of every existing wide pullback of arity 1..``arity`` must be a limit."""
    S, T = U.source, U.target
    checked = skipped = 0
    for top in S.objects:
        legs = S.into(top)
        for k in range(1, arity + 1):
            for fs in combinations_with_replacement(legs, k):
                D = wide_cospan_diagram(S, fs)
                lim = limit(S, D)
                if lim is None:
                    skipped += 1
                    continue
                checked += 1
                UD = compose_functors(U, D)
                image = type(lim)(U.obj_map[lim.apex], tuple((i, U.mor_map[m]) for i, m in lim.legs))
                if not is_limit(T, UD, image):
                    return PreservationReport(False, fs, checked, skipped)
    return PreservationReport(True, None, checked, skipped)


def comma_components_agree(U: FinFunctor, B: str) -> Check:
    """Objects in one component of ``B|U`` factor through the same unit."""
    K, _ = comma(B, U)
    rec = local_units(U, B)
    if not rec:
        return Check(False, rec.component)
    parts = connected_components(K)
    for block in parts.blocks:
        seen = {rec.factoring[K.obj_key[y]][0] for y in block}
        if len(seen) != 1:
            return Check(False, block)
    return Check(True)
