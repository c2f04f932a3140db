"""Exhaustive enumeration of small categories and functors, and the theorem suite run over them.

Categories are produced up to isomorphism in a fixed order: by number of
morphisms, then number of objects, then hom-count matrix, then the order in
which the table search meets them. Objects are named ``0``, ``1``, ``2``;
non-identity arrows ``f0``, ``f1``, ...; the k-th category is ``C<k>``.
Pairs of categories are visited by the larger index first, so a run cut
short by a deadline has covered every pair among an initial segment.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Iterable, Iterator

from .cones import colimit, discrete_shape, parallel_shape, span_shape
from .core import FinCategory, FinFunctor, compose_functors, find_functors, is_faithful, is_full
from .errors import InternalInconsistency, MulticatError
from .families import verify_pi_adjunction
from .gamma import build_B_gamma, enumerate_gammas, verify_gamma_theorem
from .multiadjoint import beck_chevalley_all, is_local_right_adjoint, is_slicewise_local_right_adjoint
from .multilimits import multicolimit, multireflective_multicolimit, same_up_to_iso
from .orthogonality import (
    candidate_rigidity,
    coequalizer_lemma,
    equalized_pairs_lemma,
    is_stable,
    orthogonality_structures,
    split_mono_lemma,
)

__all__ = [
    "hom_matrices", "categories_for_matrix", "enumerate_categories", "count_categories",
    "Tally", "CorpusReport", "SUITES", "run_corpus",
]


# enumeration


def hom_matrices(n: int, total: int) -> Iterator[tuple[int, ...]]:
    """Hom-count matrices (row-major) with the given total, one per object relabelling."""
    cells = [(x, y) for x in range(n) for y in range(n)]
    perms = list(permutations(range(n)))

    def rec(i: int, left: int, cur: list[int]):
        if i == len(cells):
            if left == 0:
                yield tuple(cur)
            return
        x, y = cells[i]
        for k in range(1 if x == y else 0, left + 1):
            cur.append(k)
            yield from rec(i + 1, left - k, cur)
            cur.pop()

    for mat in rec(0, total, []):
        if all(tuple(mat[p[x] * n + p[y]] for x in range(n) for y in range(n)) >= mat for p in perms):
            yield mat


def _tables(n: int, mat: tuple[int, ...]) -> Iterator[tuple[list[int], list[int], dict]]:
    dom, cod = list(range(n)), list(range(n))
    for x in range(n):
        for y in range(n):
            for _ in range(mat[x * n + y] - (x == y)):
                dom.append(x)
                cod.append(y)
    M = len(dom)
    homs: dict[tuple[int, int], list[int]] = {}
    for i in range(M):
        homs.setdefault((dom[i], cod[i]), []).append(i)
    pairs = [(g, f) for f in range(n, M) for g in range(n, M) if cod[f] == dom[g]]
    if any((dom[f], cod[g]) not in homs for g, f in pairs):
        return
    comp: dict[tuple[int, int], int] = {}
    for f in range(M):
        comp[cod[f], f] = f
        comp[f, dom[f]] = f
    # Associativity propagates: once both inner composites of a triple
    # (h, g, f) are known, a known outer composite forces the other one.
    # Triples whose outer composites are both open wait under those pairs.
    nonid = range(n, M)
    watch: dict[tuple[int, int], list] = {p: [] for p in pairs}
    for f in nonid:
        for g in nonid:
            if cod[f] != dom[g]:
                continue
            for h in nonid:
                if cod[g] == dom[h]:
                    watch[g, f].append((h, g, f))
                    watch[h, g].append((h, g, f))
    waiting: dict[tuple[int, int], list] = {p: [] for p in pairs}

    def visit(t, trail: list, queue: list) -> bool:
        h, g, f = t
        gf, hg = comp.get((g, f)), comp.get((h, g))
        if gf is None or hg is None:
            return True
        p1, p2 = (h, gf), (hg, f)
        a, b = comp.get(p1), comp.get(p2)
        if a is not None and b is not None:
            return a == b
        if a is None and b is None:
            for q in (p1, p2):
                waiting[q].append(t)
                trail.append((False, q))
            return True
        q, v = (p1, b) if a is None else (p2, a)
        comp[q] = v
        trail.append((True, q))
        queue.append(q)
        return True

    def propagate(p, trail: list) -> bool:
        queue = [p]
        while queue:
            q = queue.pop()
            for t in watch[q] + waiting[q]:
                if not visit(t, trail, queue):
                    return False
        return True

    def rec(i: int):
        while i < len(pairs) and pairs[i] in comp:
            i += 1
        if i == len(pairs):
            yield dom, cod, dict(comp)
            return
        g, f = pairs[i]
        for c in homs[dom[f], cod[g]]:
            comp[g, f] = c
            trail: list = [(True, (g, f))]
            if propagate((g, f), trail):
                yield from rec(i + 1)
            for assigned, q in reversed(trail):
                if assigned:
                    del comp[q]
                else:
                    waiting[q].pop()

    yield from rec(0)


def _refine(n: int, dom, cod, comp) -> list:
    """Colour arrows by iterated composition data; equal colours are candidates for relabelling."""
    M = len(dom)
    colour = [(i < n, dom[i] == cod[i]) for i in range(M)]
    while True:
        new = []
        for i in range(M):
            after = sorted((colour[g], colour[comp[g, i]]) for g in range(M) if dom[g] == cod[i])
            before = sorted((colour[h], colour[comp[i, h]]) for h in range(M) if cod[h] == dom[i])
            new.append((colour[i], tuple(after), tuple(before)))
        ranks = {c: k for k, c in enumerate(sorted(set(new)))}
        new = [ranks[c] for c in new]
        if len(set(new)) == len(set(colour)):
            return new
        colour = new


def _canonical(n: int, dom, cod, comp) -> tuple:
    """Smallest relabelled table; arrows are labelled in colour order, so only ties are permuted."""
    M = len(dom)
    colour = _refine(n, dom, cod, comp)
    best = None
    for p in permutations(range(n)):
        groups: dict = {}
        for i in range(n, M):
            groups.setdefault((colour[i], p[dom[i]], p[cod[i]]), []).append(i)
        keys = sorted(groups)
        for choice in product(*(permutations(groups[k]) for k in keys)):
            lab = {x: p[x] for x in range(n)}
            nxt = n
            for grp in choice:
                for i in grp:
                    lab[i] = nxt
                    nxt += 1
            ends = tuple(sorted((lab[i], p[dom[i]], p[cod[i]]) for i in range(n, M)))
            table = tuple(sorted((lab[g], lab[f], lab[c]) for (g, f), c in comp.items() if g >= n and f >= n))
            key = (ends, table)
            if best is None or key < best:
                best = key
    return best


def _build(n: int, dom, cod, comp, name: str) -> FinCategory:
    from .core import validate_category

    objs = [str(x) for x in range(n)]
    arrow = {x: f"id_{x}" for x in range(n)}
    for i in range(n, len(dom)):
        arrow[i] = f"f{i - n}"
    arrows = [(arrow[i], str(dom[i]), str(cod[i])) for i in range(n, len(dom))]
    comps = [(arrow[g], arrow[f], arrow[c]) for (g, f), c in comp.items() if g >= n and f >= n]
    return validate_category(objs, arrows, comps, name=name)


def categories_for_matrix(n: int, mat: tuple[int, ...]) -> Iterator[tuple]:
    """Raw tables for one matrix with isomorphic duplicates removed."""
    seen = set()
    for dom, cod, comp in _tables(n, mat):
        key = _canonical(n, dom, cod, comp)
        if key in seen:
            continue
        seen.add(key)
        yield dom, cod, comp


def enumerate_categories(max_obj: int = 3, max_mor: int = 6, include_empty: bool = True) -> Iterator[FinCategory]:
    """Every category with at most ``max_obj`` objects and ``max_mor`` morphisms, up to isomorphism."""
    k = 0
    if include_empty:
        yield _build(0, [], [], {}, "C0")
        k = 1
    for m in range(1, max_mor + 1):
        for n in range(1, min(max_obj, m) + 1):
            for mat in hom_matrices(n, m):
                for dom, cod, comp in categories_for_matrix(n, mat):
                    yield _build(n, dom, cod, comp, f"C{k}")
                    k += 1


def count_categories(max_obj: int, max_mor: int) -> int:
    return sum(1 for _ in enumerate_categories(max_obj, max_mor))


# the theorem suite


@dataclass
class Tally:
    checked: int = 0
    violations: int = 0
    skipped: int = 0
    witnesses: list = field(default_factory=list)

    def fail(self, witness, keep: int = 5) -> None:
        self.violations += 1
        if len(self.witnesses) < keep:
            self.witnesses.append(witness)


SUITES = (
    "beck_chevalley", "stable_vs_local", "stable_vs_slicewise", "pi_adjunction", "multireflective",
    "unit_rigidity", "gamma_theorem", "gamma_slicewise", "orthogonality_lemmas",
)


@dataclass
class CorpusReport:
    max_obj: int
    max_mor: int
    family_bound: int
    tallies: dict[str, Tally]
    categories: int = 0
    pairs: int = 0
    functors: int = 0
    local_right_adjoints: int = 0
    complete: bool = False
    elapsed: float = 0.0
    deadline: float | None = None
    errors: list = field(default_factory=list)

    def clean(self, suite: str) -> bool:
        return self.tallies[suite].violations == 0

    @property
    def holds(self) -> bool:
        return all(t.violations == 0 for t in self.tallies.values()) and not self.errors


def _colimit_shapes() -> list[FinCategory]:
    return [discrete_shape(0), discrete_shape(1), discrete_shape(2), span_shape(), parallel_shape()]


def _check_functor(U: FinFunctor, suites: set, rep: CorpusReport, tag) -> None:
    t = rep.tallies
    lra = is_local_right_adjoint(U)
    if lra:
        rep.local_right_adjoints += 1
    if suites & {"stable_vs_local", "stable_vs_slicewise"}:
        stable = bool(is_stable(U))
        if "stable_vs_local" in suites:
            t["stable_vs_local"].checked += 1
            if stable != bool(lra):
                t["stable_vs_local"].fail((tag, bool(lra)))
        if "stable_vs_slicewise" in suites:
            t["stable_vs_slicewise"].checked += 1
            if stable != bool(is_slicewise_local_right_adjoint(U)):
                t["stable_vs_slicewise"].fail((tag, stable))
    if "unit_rigidity" in suites:
        t["unit_rigidity"].checked += 1
        for B in U.target.objects:
            chk = candidate_rigidity(U, B)
            if not chk:
                t["unit_rigidity"].fail((tag, B, chk.witness))
                break
    if not lra:
        return
    if "beck_chevalley" in suites:
        for r in beck_chevalley_all(U, strict=False):
            t["beck_chevalley"].checked += 1
            if not r.is_iso:
                t["beck_chevalley"].fail((tag, r.at, r.sigma))
    if "pi_adjunction" in suites:
        t["pi_adjunction"].checked += 1
        pi = verify_pi_adjunction(U, rep.family_bound)
        if not pi:
            t["pi_adjunction"].fail((tag, pi.failures[:1]))
    if "multireflective" in suites and is_full(U) and is_faithful(U):
        S, T = U.source, U.target
        for shape in _colimit_shapes():
            for D in find_functors(shape, S):
                if colimit(T, compose_functors(U, D)) is None:
                    t["multireflective"].skipped += 1
                    continue
                t["multireflective"].checked += 1
                try:
                    built = multireflective_multicolimit(U, D)
                except InternalInconsistency as exc:
                    t["multireflective"].fail((tag, shape.name, D.obj_map, str(exc)))
                    continue
                direct = multicolimit(S, D)
                if not direct or not same_up_to_iso(S, built, direct):
                    t["multireflective"].fail((tag, shape.name, D.obj_map))


def _check_category(C: FinCategory, suites: set, rep: CorpusReport, max_cones: int) -> None:
    t = rep.tallies
    if suites & {"gamma_theorem", "gamma_slicewise"}:
        for G in enumerate_gammas(C, max_cones):
            for strong in (False, True):
                r = verify_gamma_theorem(C, G, strong, strict=False, saturation=False)
                cones_ = [(c.vertex, c.legs) for c in G.cones]
                if "gamma_theorem" in suites:
                    t["gamma_theorem"].checked += 1
                if "gamma_theorem" in suites and not r:
                    t["gamma_theorem"].fail((C.name, cones_, strong, r.failures))
                if "gamma_slicewise" in suites:
                    # the same check with the slice-by-slice adjointness test
                    t["gamma_slicewise"].checked += 1
                    rest = [f for f in r.failures if f != "multi_adjoint"]
                    if r.failures and not rest:
                        _, U = build_B_gamma(C, G, strong)
                        if not is_slicewise_local_right_adjoint(U):
                            rest.append("slicewise")
                    if rest:
                        t["gamma_slicewise"].fail((C.name, cones_, strong, tuple(rest)))
    if "orthogonality_lemmas" in suites:
        for L, R in orthogonality_structures(C):
            t["orthogonality_lemmas"].checked += 1
            for chk in (split_mono_lemma(C, L, R), equalized_pairs_lemma(C, L, R), coequalizer_lemma(C, L)[0]):
                if not chk:
                    t["orthogonality_lemmas"].fail((C.name, L.members, R.members, chk.witness))
                    break
            t["orthogonality_lemmas"].skipped += coequalizer_lemma(C, L)[1]


def run_corpus(max_obj: int = 3, max_mor: int = 6, family_bound: int = 4, max_cones: int = 2,
               suites: Iterable[str] = SUITES, deadline: float | None = None,
               categories: Iterable[FinCategory] | None = None,
               progress: Callable[[CorpusReport], None] | None = None) -> CorpusReport:
    """Run the theorem suite over the corpus; stops early (``complete=False``) past ``deadline`` seconds."""
    suites = set(suites)
    unknown = suites - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}")
    rep = CorpusReport(max_obj, max_mor, family_bound, {s: Tally() for s in SUITES}, deadline=deadline)
    start = time.monotonic()
    cats: list[FinCategory] = []
    source = enumerate_categories(max_obj, max_mor) if categories is None else iter(categories)
    functor_suites = suites - {"gamma_theorem", "gamma_slicewise", "orthogonality_lemmas"}

    def out_of_time() -> bool:
        return deadline is not None and time.monotonic() - start > deadline

    try:
        for C in source:
            if out_of_time():
                return rep
            cats.append(C)
            rep.categories += 1
            _check_category(C, suites, rep, max_cones)
            if not functor_suites:
                continue
            k = len(cats) - 1
            pairs = [(cats[k], cats[j]) for j in range(k + 1)] + [(cats[i], cats[k]) for i in range(k)]
            for S, T in pairs:
                if out_of_time():
                    return rep
                rep.pairs += 1
                for n, U in enumerate(find_functors(S, T)):
                    rep.functors += 1
                    try:
                        _check_functor(U, functor_suites, rep, (S.name, T.name, n))
                    except MulticatError as exc:
                        rep.errors.append(((S.name, T.name, n), repr(exc)))
                    if out_of_time():
                        return rep
            if progress is not None:
                progress(rep)
        rep.complete = True
        return rep
    finally:
        rep.elapsed = time.monotonic() - start
