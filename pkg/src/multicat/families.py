"""The free product completion, restricted to finite families.

A family over a category is a finite indexed list of objects. A morphism
from ``(A_i)_{i in I}`` to ``(B_j)_{j in J}`` picks ``alpha: J -> I`` and an
arrow ``A_alpha(j) -> B_j`` for each ``j``. The completion is never built
as a whole; every universal statement takes an explicit size bound.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from typing import Hashable, Iterator, Sequence

from .connectivity import Check, is_connected, multi_initial_family
from .core import FinCategory, FinFunctor
from .errors import AmbientMismatch, NotMultiAdjoint
from .multiadjoint import LocalUnitRecord, local_units


@dataclass(frozen=True)
class FinFamily:
    ambient: FinCategory = field(compare=False, repr=False)
    index: tuple[Hashable, ...]
    members: tuple[str, ...]

    def __post_init__(self):
        if len(self.index) != len(self.members):
            raise ValueError("index and members differ in length")
        if len(set(self.index)) != len(self.index):
            raise ValueError("repeated index label")

    @property
    def assignment(self) -> dict:
        return dict(zip(self.index, self.members))

    def __len__(self) -> int:
        return len(self.index)

    def position(self, i: Hashable) -> int:
        return self.index.index(i)


def family(C: FinCategory, members: Sequence[str], index: Sequence[Hashable] | None = None) -> FinFamily:
    for x in members:
        C.check_object(x)
    return FinFamily(C, tuple(range(len(members))) if index is None else tuple(index), tuple(members))


@dataclass(frozen=True)
class FamilyMorphism:
    source: FinFamily
    target: FinFamily
    reindex: tuple[Hashable, ...]
    components: tuple[str, ...]


def _same_ambient(F: FinFamily, G: FinFamily) -> None:
    if F.ambient is not G.ambient and F.ambient != G.ambient:
        raise AmbientMismatch("families live over different categories", (F, G))


def family_hom(F: FinFamily, G: FinFamily) -> list[FamilyMorphism]:
    """All morphisms ``F -> G``, with ``alpha`` varying slowest."""
    _same_ambient(F, G)
    C = F.ambient
    out = []
    for alpha in product(range(len(F)), repeat=len(G)):
        choices = [C.hom(F.members[a], G.members[j]) for j, a in enumerate(alpha)]
        for comps in product(*choices):
            out.append(FamilyMorphism(F, G, tuple(F.index[a] for a in alpha), comps))
    return out


def family_hom_count(F: FinFamily, G: FinFamily) -> int:
    _same_ambient(F, G)
    C = F.ambient
    total = 1
    for y in G.members:
        total *= sum(len(C.hom(x, y)) for x in F.members)
    return total


def family_identity(F: FinFamily) -> FamilyMorphism:
    C = F.ambient
    return FamilyMorphism(F, F, F.index, tuple(C.identity[x] for x in F.members))


def family_compose(m2: FamilyMorphism, m1: FamilyMorphism) -> FamilyMorphism:
    """``m2 . m1`` for ``m1: F -> G`` and ``m2: G -> H``."""
    if m1.target != m2.source:
        raise ValueError("family morphisms are not composable")
    C = m1.source.ambient
    G = m1.target
    reindex, comps = [], []
    for j, g_comp in zip(m2.reindex, m2.components):
        p = G.position(j)
        reindex.append(m1.reindex[p])
        comps.append(C.compose(g_comp, m1.components[p]))
    return FamilyMorphism(m1.source, m2.target, tuple(reindex), tuple(comps))


def family_product(families: Sequence[FinFamily], ambient: FinCategory | None = None
                   ) -> tuple[FinFamily, list[FamilyMorphism]]:
    """Product indexed by the disjoint union, with its projections."""
    if not families and ambient is None:
        raise ValueError("the empty product needs an explicit ambient")
    C = ambient if ambient is not None else families[0].ambient
    for F in families:
        if F.ambient is not C and F.ambient != C:
            raise AmbientMismatch("families live over different categories", F)
    index = tuple((k, i) for k, F in enumerate(families) for i in F.index)
    members = tuple(x for F in families for x in F.members)
    P = FinFamily(C, index, members)
    projections = [FamilyMorphism(P, F, tuple((k, i) for i in F.index),
                                  tuple(C.identity[x] for x in F.members))
                   for k, F in enumerate(families)]
    return P, projections


def embed(C: FinCategory, A: str) -> FinFamily:
    return FinFamily(C, (0,), (C.check_object(A),))


def families_up_to(C: FinCategory, bound: int) -> Iterator[FinFamily]:
    """One family per multiset of objects, sizes 0 to ``bound``."""
    for k in range(bound + 1):
        for ms in combinations_with_replacement(C.objects, k):
            yield FinFamily(C, tuple(range(k)), ms)


def verify_product(families: Sequence[FinFamily], bound: int, ambient: FinCategory | None = None) -> Check:
    """Projections induce a bijection ``hom(G, P) -> prod_k hom(G, F_k)`` for small G."""
    P, projs = family_product(families, ambient)
    C = P.ambient
    for G in families_up_to(C, bound):
        seen = set()
        for m in family_hom(G, P):
            key = tuple((family_compose(p, m).reindex, family_compose(p, m).components) for p in projs)
            if key in seen:
                return Check(False, ("not injective", G))
            seen.add(key)
        expected = 1
        for F in families:
            expected *= family_hom_count(G, F)
        if len(seen) != expected:
            return Check(False, ("not surjective", G))
    return Check(True)


def embed_full_faithful(C: FinCategory) -> Check:
    for x in C.objects:
        for y in C.objects:
            homs = family_hom(embed(C, x), embed(C, y))
            if sorted(m.components[0] for m in homs) != sorted(C.hom(x, y)):
                return Check(False, (x, y))
    return Check(True)


def family_isomorphic(F: FinFamily, G: FinFamily) -> bool:
    """Bijective reindexing with invertible components."""
    if len(F) != len(G):
        return False
    C = F.ambient
    return any(len(set(m.reindex)) == len(m.reindex) and all(C.is_iso(c) for c in m.components)
               for m in family_hom(F, G))


def is_coconnected(F: FinFamily, probe_bound: int) -> Check:
    """``hom(G1 x G2, F)`` is the disjoint union of ``hom(G1, F)`` and ``hom(G2, F)``.

    Binary products with total size up to ``probe_bound`` are probed, as is
    the empty product, which makes the empty family fail.
    """
    C = F.ambient
    fams = list(families_up_to(C, probe_bound))
    empty = FinFamily(C, (), ())
    if family_hom_count(empty, F) != 0:
        return Check(False, ("empty product", empty))
    for a, G1 in enumerate(fams):
        for G2 in fams[a:]:
            if len(G1) + len(G2) > probe_bound:
                continue
            P, (p1, p2) = family_product([G1, G2])
            homs = {(m.reindex, m.components) for m in family_hom(P, F)}
            image = []
            for p, G in ((p1, G1), (p2, G2)):
                for m in family_hom(G, F):
                    c = family_compose(m, p)
                    image.append((c.reindex, c.components))
            if len(set(image)) != len(image) or set(image) != homs:
                return Check(False, ("binary product", G1, G2))
    return Check(True)


class PiFunctor:
    """Componentwise extension of a functor to families."""

    def __init__(self, U: FinFunctor):
        self.U = U

    def on_family(self, F: FinFamily) -> FinFamily:
        return FinFamily(self.U.target, F.index, tuple(self.U.obj_map[x] for x in F.members))

    def on_morphism(self, m: FamilyMorphism) -> FamilyMorphism:
        return FamilyMorphism(self.on_family(m.source), self.on_family(m.target), m.reindex,
                              tuple(self.U.mor_map[c] for c in m.components))


def pi_functor(U: FinFunctor) -> PiFunctor:
    return PiFunctor(U)


def pi_commutes_with_embed(U: FinFunctor) -> Check:
    P = pi_functor(U)
    for x in U.source.objects:
        if P.on_family(embed(U.source, x)) != embed(U.target, U.obj_map[x]):
            return Check(False, x)
    return Check(True)


class RelativeLeftAdjoint:
    """``L(B)`` is the family of apexes of the local units under ``B``."""

    def __init__(self, U: FinFunctor, units: dict[str, LocalUnitRecord]):
        self.U = U
        self.units = units

    def on_object(self, B: str) -> FinFamily:
        rec = self.units[B]
        return FinFamily(self.U.source, tuple(e.index for e in rec.entries), tuple(e.apex for e in rec.entries))

    def on_morphism(self, f: str) -> FamilyMorphism:
        """For ``f: B1 -> B2`` each unit of B2 pulls back to a unit of B1."""
        T = self.U.target
        B1, B2 = T.dom[T.check_morphism(f)], T.cod[f]
        rec1, rec2 = self.units[B1], self.units[B2]
        reindex, comps = [], []
        for e in rec2.entries:
            entry, u = rec1.factor(e.apex, T.compose(e.unit, f))
            reindex.append(entry.index)
            comps.append(u)
        return FamilyMorphism(self.on_object(B1), self.on_object(B2), tuple(reindex), tuple(comps))

    def transpose(self, f: str, A: str) -> FamilyMorphism:
        """``f: B -> U(A)`` to the matching morphism ``L(B) -> embed(A)``."""
        B = self.U.target.dom[f]
        entry, u = self.units[B].factor(A, f)
        return FamilyMorphism(self.on_object(B), embed(self.U.source, A), (entry.index,), (u,))

    def untranspose(self, m: FamilyMorphism) -> str:
        B = None
        for b, rec in self.units.items():
            if self.on_object(b) == m.source:
                B = b
                break
        if B is None:
            raise ValueError("source is not of the form L(B)")
        return self.untranspose_at(B, m)

    def untranspose_at(self, B: str, m: FamilyMorphism) -> str:
        entry = self.units[B].entries[m.reindex[0]]
        return self.U.target.compose(self.U.mor_map[m.components[0]], entry.unit)

    def on_family(self, F: FinFamily) -> FinFamily:
        index, members = [], []
        for i, B in zip(F.index, F.members):
            for e in self.units[B].entries:
                index.append((i, e.index))
                members.append(e.apex)
        return FinFamily(self.U.source, tuple(index), tuple(members))

    def on_family_morphism(self, m: FamilyMorphism) -> FamilyMorphism:
        src, tgt = self.on_family(m.source), self.on_family(m.target)
        reindex, comps = [], []
        for j, a, g in zip(m.target.index, m.reindex, m.components):
            Lg = self.on_morphism(g)
            for y, (x, c) in zip(Lg.target.index, zip(Lg.reindex, Lg.components)):
                reindex.append((a, x))
                comps.append(c)
        return FamilyMorphism(src, tgt, tuple(reindex), tuple(comps))


def relative_left_adjoint(U: FinFunctor) -> RelativeLeftAdjoint:
    units = {}
    for B in U.target.objects:
        rec = local_units(U, B)
        if not rec:
            raise NotMultiAdjoint(f"no multi-initial family under {B}", (B, rec.component))
        units[B] = rec
    return RelativeLeftAdjoint(U, units)


@dataclass(frozen=True)
class PiAdjunctionReport:
    bound: int
    pairs: int
    naturality_checks: int
    failures: tuple

    @property
    def holds(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.holds


def _key(m: FamilyMorphism):
    return (m.reindex, m.components)


# Plain-tuple forms used by the bounded adjunction check: a family is a tuple
# of objects indexed by position, and a morphism F -> G is a tuple holding,
# for each position j of G, the pair (position in F, component arrow).


def _homs(C: FinCategory, F: tuple, G: tuple) -> list[tuple]:
    per = [[(a, c) for a in range(len(F)) for c in C.hom(F[a], y)] for y in G]
    return list(product(*per))


def _count(C: FinCategory, F: tuple, G: tuple) -> int:
    total = 1
    for y in G:
        total *= sum(len(C.hom(x, y)) for x in F)
    return total


def _then(C: FinCategory, m2: tuple, m1: tuple) -> tuple:
    return tuple((m1[a][0], C.compose(c, m1[a][1])) for a, c in m2)


def verify_pi_adjunction(U: FinFunctor, family_size_bound: int = 4, naturality: bool = True,
                         L: RelativeLeftAdjoint | None = None) -> PiAdjunctionReport:
    """Transposition is a bijection ``hom(L F, G) = hom(F, PiU G)``, natural in both.

    ``F`` ranges over families in the target, ``G`` over families in the
    source, with ``|F| + |G| <= family_size_bound``. Both sides are counted
    independently.

    A morphism into a family is a tuple of independent components, and
    composing on either side acts on each component separately. So once
    transposition is checked to act componentwise (every table entry agrees
    with the one-member tables), naturality against all morphisms within the
    bound is equivalent to naturality for one-member ``G``, which is what is
    then checked exhaustively.
    """
    L = relative_left_adjoint(U) if L is None else L
    S, T = U.source, U.target
    units = L.units
    bound = family_size_bound
    fails: list = []
    pairs = nat = 0
    src_fams = [F.members for F in families_up_to(S, bound)]
    tgt_fams = [F.members for F in families_up_to(T, bound)]

    flat: dict[tuple, tuple[tuple, dict]] = {}

    def lfam(F: tuple) -> tuple[tuple, dict]:
        if F not in flat:
            members, pos = [], {}
            for i, B in enumerate(F):
                for e in units[B].entries:
                    pos[i, e.index] = len(members)
                    members.append(e.apex)
            flat[F] = (tuple(members), pos)
        return flat[F]

    def image(G: tuple) -> tuple:
        return tuple(U.obj_map[x] for x in G)

    def transpose(F: tuple, f: tuple, G: tuple) -> tuple:
        _, pos = lfam(F)
        out = []
        for (i, c), A in zip(f, G):
            entry, u = units[F[i]].factor(A, c)
            out.append((pos[i, entry.index], u))
        return tuple(out)

    tables: dict[tuple, dict] = {}
    rhs_of: dict[tuple, list] = {}
    for F in tgt_fams:
        LF, _ = lfam(F)
        for G in src_fams:
            if len(F) + len(G) > bound:
                continue
            pairs += 1
            rhs = _homs(T, F, image(G))
            n_lhs = _count(S, LF, G)
            if n_lhs != len(rhs):
                fails.append(("cardinality", F, G, n_lhs, len(rhs)))
                continue
            table = {f: transpose(F, f, G) for f in rhs}
            if any(S.dom[u] != LF[p] or S.cod[u] != A for t in table.values() for (p, u), A in zip(t, G)):
                fails.append(("ill-typed transpose", F, G))
                continue
            if len(set(table.values())) != len(rhs):
                fails.append(("bijection", F, G))
                continue
            tables[F, G] = table
            rhs_of[F, G] = rhs
    if not naturality or fails:
        return PiAdjunctionReport(bound, pairs, nat, tuple(fails))

    Lmor: dict[str, tuple] = {}

    def lmor(g: str) -> tuple:
        # for g: B1 -> B2, each unit of B2 pulls back to (unit index of B1, arrow)
        if g not in Lmor:
            B1 = T.dom[g]
            Lmor[g] = tuple(units[B1].factoring[e.apex, T.compose(e.unit, g)] for e in units[T.cod[g]].entries)
        return Lmor[g]

    def lift(F2: tuple, psi: tuple, F: tuple) -> tuple:
        _, pos2 = lfam(F2)
        out = []
        for a, g in psi:
            for x, u in lmor(g):
                out.append((pos2[a, x], u))
        return tuple(out)

    for (F, G), table in tables.items():
        if len(G) < 2:
            continue
        singles = [tables[F, (y,)] for y in G]
        for f, image in table.items():
            nat += 1
            if any(singles[j][(c,)][0] != image[j] for j, c in enumerate(f)):
                fails.append(("componentwise", F, G, f))
                break
    ones = [G for G in src_fams if len(G) == 1]
    for F in tgt_fams:
        for G in ones:
            table = tables.get((F, G))
            if table is None:
                continue
            for G2 in ones:
                for phi in _homs(S, G, G2):
                    Uphi = tuple((a, U.mor_map[c]) for a, c in phi)
                    for f in table:
                        nat += 1
                        if tables[F, G2][_then(T, Uphi, f)] != _then(S, phi, table[f]):
                            fails.append(("natural in the source family", F, G, G2))
                            break
        for F2 in tgt_fams:
            psis = None
            for G in ones:
                table, table2 = tables.get((F, G)), tables.get((F2, G))
                if table is None or table2 is None:
                    continue
                if psis is None:
                    psis = [(psi, lift(F2, psi, F)) for psi in _homs(T, F2, F)]
                for psi, Lpsi in psis:
                    for f in table:
                        nat += 1
                        if table2[_then(T, f, psi)] != _then(S, table[f], Lpsi):
                            fails.append(("natural in the target family", F2, F, G))
                            break
    return PiAdjunctionReport(bound, pairs, nat, tuple(fails))


def initial_family_check(C: FinCategory, bound: int) -> Check:
    """A multi-initial family exists iff its family is initial among small families."""
    fam = multi_initial_family(C)
    if fam:
        F = FinFamily(C, tuple(range(len(fam.members))), fam.members)
        for G in families_up_to(C, bound):
            if family_hom_count(F, G) != 1:
                return Check(False, ("family is not initial", G.members))
        return Check(True)
    # without a multi-initial family no small family may be initial
    fams = list(families_up_to(C, bound))
    for F in fams:
        if all(family_hom_count(F, G) == 1 for G in fams):
            return Check(False, ("unexpected initial family", F.members))
    return Check(True)


def connected_limit_creation(C: FinCategory, D: FinFunctor, bound: int) -> Check:
    """An existing limit of a connected diagram stays a limit after embedding."""
    from .cones import limit

    if not is_connected(D.source):
        raise ValueError("diagram shape is not connected")
    lim = limit(C, D)
    if lim is None:
        return Check(True, "no limit")
    shape = D.source
    targets = {i: embed(C, D.obj_map[i]) for i in shape.objects}
    legs = {i: FamilyMorphism(embed(C, lim.apex), targets[i], (0,), (lim.leg(i),)) for i in shape.objects}
    for G in families_up_to(C, bound):
        homs = {i: family_hom(G, targets[i]) for i in shape.objects}
        fam_cones = []
        for choice in product(*(homs[i] for i in shape.objects)):
            legs_of = dict(zip(shape.objects, choice))
            ok = True
            for s in shape.non_identities():
                i, j = shape.dom[s], shape.cod[s]
                Ds = FamilyMorphism(targets[i], targets[j], (0,), (D.mor_map[s],))
                if _key(family_compose(Ds, legs_of[i])) != _key(legs_of[j]):
                    ok = False
                    break
            if ok:
                fam_cones.append(tuple(_key(legs_of[i]) for i in shape.objects))
        induced = [tuple(_key(family_compose(legs[i], m)) for i in shape.objects)
                   for m in family_hom(G, embed(C, lim.apex))]
        if len(set(induced)) != len(induced) or set(induced) != set(fam_cones):
            return Check(False, G.members)
    return Check(True)
