"""Finite categories, functors, natural transformations and derived categories.

A category is stored as an explicit composition table over string names.
Identities are named ``id_<object>``; ``compose(g, f)`` is ``g`` after ``f``.
Every set-valued answer comes back in declaration order.
"""
from __future__ import annotations

import os
from itertools import product
from typing import Any, Iterable, Mapping, Sequence

from .errors import (
    DanglingRef,
    LawViolation,
    MissingComposite,
    NotFunctorial,
    NotNatural,
    SizeCap,
    UnknownMorphism,
    UnknownObject,
    ValidationError,
)

DEFAULT_CAP = 10_000


def default_cap() -> int:
    raw = os.environ.get("MULTICAT_CAP")
    return int(raw) if raw else DEFAULT_CAP


def resolve_cap(cap: int | None) -> int:
    return default_cap() if cap is None else cap


# key marking identity arrows of derived categories
_ID = "\x00id"


def identity_name(obj: str) -> str:
    return f"id_{obj}"


class FinCategory:
    """An immutable finite category given by its full composition table.

    ``obj_key`` and ``mor_key`` optionally attach structured data to names;
    derived categories (slices, commas, cones) use them to remember what
    each object or arrow stands for.
    """

    __slots__ = (
        "name", "objects", "morphisms", "dom", "cod", "identity", "_comp",
        "_hom", "_out", "_in", "_ids", "obj_key", "mor_key", "_obj_by_key",
        "_mor_by_key", "_pos", "_opos", "_opc",
    )

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[str],
        dom: Mapping[str, str],
        cod: Mapping[str, str],
        identity: Mapping[str, str],
        comp: Mapping[tuple[str, str], str],
        name: str = "",
        obj_key: Mapping[str, Any] | None = None,
        mor_key: Mapping[str, Any] | None = None,
    ):
        # Trusted constructor: callers outside this module go through
        # validate_category.
        self.name = name
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom = dict(dom)
        self.cod = dict(cod)
        self.identity = dict(identity)
        self._comp = dict(comp)
        self._ids = frozenset(self.identity.values())
        self._pos = {m: i for i, m in enumerate(self.morphisms)}
        self._opos = {x: i for i, x in enumerate(self.objects)}
        hom: dict[tuple[str, str], list[str]] = {(x, y): [] for x in self.objects for y in self.objects}
        out: dict[str, list[str]] = {x: [] for x in self.objects}
        inc: dict[str, list[str]] = {x: [] for x in self.objects}
        for m in self.morphisms:
            hom[self.dom[m], self.cod[m]].append(m)
            out[self.dom[m]].append(m)
            inc[self.cod[m]].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}
        self.obj_key = dict(obj_key or {})
        self.mor_key = dict(mor_key or {})
        self._obj_by_key = {v: k for k, v in self.obj_key.items()}
        self._mor_by_key = {v: k for k, v in self.mor_key.items()}
        self._opc = None

    # basic queries

    def __repr__(self) -> str:
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {len(self.morphisms)} morphisms>"

    def __len__(self) -> int:
        return len(self.morphisms)

    def has_object(self, x: str) -> bool:
        return x in self._opos

    def has_morphism(self, f: str) -> bool:
        return f in self._pos

    def check_object(self, x: str) -> str:
        if x not in self._opos:
            raise UnknownObject(f"unknown object {x!r} in {self.name or 'category'}", x)
        return x

    def check_morphism(self, f: str) -> str:
        if f not in self._pos:
            raise UnknownMorphism(f"unknown morphism {f!r} in {self.name or 'category'}", f)
        return f

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        try:
            return self._hom[x, y]
        except KeyError:
            self.check_object(x)
            self.check_object(y)
            raise

    def out_of(self, x: str) -> tuple[str, ...]:
        return self._out[self.check_object(x)]

    def into(self, x: str) -> tuple[str, ...]:
        return self._in[self.check_object(x)]

    def id(self, x: str) -> str:
        return self.identity[self.check_object(x)]

    def is_identity(self, f: str) -> bool:
        return f in self._ids

    def non_identities(self) -> tuple[str, ...]:
        return tuple(m for m in self.morphisms if m not in self._ids)

    def compose(self, *fs: str) -> str:
        """Composite of ``fs`` read right to left: ``compose(h, g, f) = h.g.f``."""
        result = fs[-1]
        for g in reversed(fs[:-1]):
            try:
                result = self._comp[g, result]
            except KeyError:
                self.check_morphism(g)
                self.check_morphism(result)
                raise ValidationError(f"{g} . {result} is not composable", (g, result)) from None
        return result

    def composable(self, g: str, f: str) -> bool:
        return (g, f) in self._comp

    def comp_table(self) -> dict[tuple[str, str], str]:
        return dict(self._comp)

    def index(self, f: str) -> int:
        return self._pos[f]

    def object_index(self, x: str) -> int:
        return self._opos[x]

    def sort_morphisms(self, ms: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(set(ms), key=self._pos.__getitem__))

    def sort_objects(self, xs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(set(xs), key=self._opos.__getitem__))

    def obj_by_key(self, key: Any) -> str:
        return self._obj_by_key[key]

    def mor_by_key(self, key: Any) -> str:
        return self._mor_by_key[key]

    def table(self) -> tuple:
        """Everything that defines the category, for strict comparison."""
        return (
            self.objects,
            tuple((m, self.dom[m], self.cod[m]) for m in self.morphisms),
            tuple(sorted(self._comp.items())),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinCategory):
            return NotImplemented
        return self is other or self.table() == other.table()

    def __hash__(self) -> int:
        return hash((self.objects, self.morphisms))

    def with_name(self, name: str) -> "FinCategory":
        return FinCategory(self.objects, self.morphisms, self.dom, self.cod, self.identity,
                           self._comp, name, self.obj_key, self.mor_key)

    # isomorphisms

    def inverse(self, f: str) -> str | None:
        x, y = self.dom[self.check_morphism(f)], self.cod[f]
        idx, idy = self.identity[x], self.identity[y]
        for g in self._hom[y, x]:
            if self._comp[g, f] == idx and self._comp[f, g] == idy:
                return g
        return None

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def isomorphisms(self, x: str, y: str) -> tuple[str, ...]:
        return tuple(f for f in self.hom(x, y) if self.inverse(f) is not None)

    def isomorphic(self, x: str, y: str) -> bool:
        return bool(self.isomorphisms(x, y))

    def isos(self) -> tuple[str, ...]:
        return tuple(f for f in self.morphisms if self.inverse(f) is not None)


def _check_name(name: Any, what: str) -> str:
    if not isinstance(name, str) or not name:
        raise ValidationError(f"{what} names must be non-empty strings, got {name!r}", name)
    return name


def validate_category(
    objects: Sequence[str],
    arrows: Mapping[str, tuple[str, str]] | Sequence[tuple[str, str, str]],
    compose: Mapping[tuple[str, str], str] | Sequence[tuple[str, str, str]] = (),
    name: str = "",
) -> FinCategory:
    """Build a category from objects, non-identity arrows and composites.

    ``arrows`` maps a name to ``(dom, cod)`` (or is a list of
    ``(name, dom, cod)``); ``compose`` maps ``(g, f)`` to ``g . f`` (or is a
    list of ``(g, f, h)``). Composites with an identity are implicit.
    """
    objs = [_check_name(x, "object") for x in objects]
    if len(set(objs)) != len(objs):
        dup = next(x for x in objs if objs.count(x) > 1)
        raise ValidationError(f"duplicate object {dup!r}", dup)
    oset = set(objs)
    if isinstance(arrows, Mapping):
        arrow_list = [(m, d, c) for m, (d, c) in arrows.items()]
    else:
        arrow_list = [tuple(a) for a in arrows]
    identity = {x: identity_name(x) for x in objs}
    morphisms = list(identity.values())
    dom = {identity[x]: x for x in objs}
    cod = dict(dom)
    for m, d, c in arrow_list:
        _check_name(m, "morphism")
        if m in dom:
            raise ValidationError(f"duplicate morphism {m!r}", m)
        for end in (d, c):
            if end not in oset:
                raise DanglingRef(f"morphism {m!r} refers to undeclared object {end!r}", (m, end))
        morphisms.append(m)
        dom[m], cod[m] = d, c
    if isinstance(compose, Mapping):
        entries = [(g, f, h) for (g, f), h in compose.items()]
    else:
        entries = [tuple(e) for e in compose]
    comp: dict[tuple[str, str], str] = {}
    for m in morphisms:
        comp[identity[cod[m]], m] = m
        comp[m, identity[dom[m]]] = m
    for g, f, h in entries:
        for ref in (g, f, h):
            if ref not in dom:
                raise DanglingRef(f"composition entry refers to undeclared morphism {ref!r}", (g, f, h))
        if cod[f] != dom[g]:
            raise ValidationError(f"{g} . {f} is not composable", (g, f))
        if dom[h] != dom[f] or cod[h] != cod[g]:
            raise LawViolation(f"{g} . {f} = {h} has the wrong domain or codomain", (g, f, h))
        if (g, f) in comp and comp[g, f] != h:
            raise LawViolation(f"{g} . {f} is given two values {comp[g, f]!r} and {h!r}", (g, f, h))
        comp[g, f] = h
    C = FinCategory(objs, morphisms, dom, cod, identity, comp, name)
    check_laws(C)
    return C


def check_laws(C: FinCategory) -> None:
    """Totality on composable pairs and associativity, exhaustively."""
    for f in C.morphisms:
        for g in C._out[C.cod[f]]:
            if (g, f) not in C._comp:
                raise MissingComposite(f"no composite given for {g} . {f}", (g, f))
    for f in C.morphisms:
        for g in C._out[C.cod[f]]:
            gf = C._comp[g, f]
            for h in C._out[C.cod[g]]:
                if C._comp[h, gf] != C._comp[C._comp[h, g], f]:
                    raise LawViolation(f"associativity fails for {h}, {g}, {f}", (h, g, f))


def hom_set(C: FinCategory, X: str, Y: str) -> tuple[str, ...]:
    return C.hom(X, Y)


def opposite(C: FinCategory) -> FinCategory:
    if C._opc is not None:
        return C._opc
    comp = {(f, g): h for (g, f), h in C._comp.items()}
    name = C.name[:-3] if C.name.endswith("^op") else (C.name + "^op" if C.name else "")
    op = FinCategory(C.objects, C.morphisms, C.cod, C.dom, C.identity, comp, name,
                     C.obj_key, C.mor_key)
    op._opc = C
    C._opc = op
    return op


def _guard(count: int, cap: int | None, what: str) -> None:
    limit = resolve_cap(cap)
    if count > limit:
        raise SizeCap(f"{what} would have {count} morphisms, over the cap of {limit}", count)


def _build(objects, obj_key, arrows, name, composer, cap, what) -> FinCategory:
    """Assemble a derived category.

    ``arrows`` is a list of (key, name, dom, cod) with identities keyed
    ``(_ID, obj)``; ``composer(g_key, f_key)`` returns the composite's key.
    """
    _guard(len(arrows), cap, what)
    names = [a[1] for a in arrows]
    if len(set(names)) != len(names) or len(set(objects)) != len(objects):
        raise ValidationError(f"derived names collide while building {what}", what)
    by_key = {a[0]: a for a in arrows}
    dom = {a[1]: a[2] for a in arrows}
    cod = {a[1]: a[3] for a in arrows}
    identity = {x: identity_name(x) for x in objects}
    out: dict[str, list] = {x: [] for x in objects}
    for a in arrows:
        out[a[2]].append(a)
    comp = {}
    for f in arrows:
        for g in out[f[3]]:
            comp[g[1], f[1]] = by_key[composer(g[0], f[0])][1]
    return FinCategory(objects, names, dom, cod, identity, comp, name, obj_key,
                       {a[1]: a[0] for a in arrows})


def slice_category(C: FinCategory, A: str, cap: int | None = None) -> tuple[FinCategory, "FinFunctor"]:
    """C/A: objects are arrows into A, arrows are commuting triangles.

    The object for ``f`` is named ``f``; the triangle ``g . h = f`` is named
    ``h@g`` and keyed ``(h, f, g)``.
    """
    C.check_object(A)
    objs = list(C.into(A))
    arrows = []
    for f in objs:
        arrows.append(((_ID, f), identity_name(f), f, f, C.identity[C.dom[f]]))
    for g in objs:
        for f in objs:
            for h in C.hom(C.dom[f], C.dom[g]):
                if C.is_identity(h) and f == g:
                    continue
                if C.compose(g, h) == f:
                    arrows.append(((h, f, g), f"{h}@{g}", f, g, h))
    under = {a[0]: a[4] for a in arrows}

    def composer(k2, k1):
        h = C.compose(under[k2], under[k1])
        src = k1[1]
        tgt = k2[2] if k2[0] is not _ID else k2[1]
        return (_ID, src) if src == tgt and C.is_identity(h) else (h, src, tgt)

    S = _build(objs, {f: ("over", f) for f in objs}, [a[:4] for a in arrows],
               f"{C.name}/{A}", composer, cap, "slice category")
    proj = FinFunctor(S, C, {f: C.dom[f] for f in objs}, {a[1]: a[4] for a in arrows})
    return S, proj


def slice_arrow(S: FinCategory, h: str, f: str, g: str, C: FinCategory) -> str:
    """Name of the slice arrow over ``h`` from object ``f`` to object ``g``."""
    if f == g and C.is_identity(h):
        return identity_name(f)
    return S.mor_by_key((h, f, g))


def coslice_category(C: FinCategory, A: str, cap: int | None = None) -> tuple[FinCategory, "FinFunctor"]:
    """A/C: objects are arrows out of A; ``h@f`` is ``h`` with ``h . f = g``."""
    C.check_object(A)
    objs = list(C.out_of(A))
    arrows = []
    for f in objs:
        arrows.append(((_ID, f), identity_name(f), f, f, C.identity[C.cod[f]]))
    for f in objs:
        for g in objs:
            for h in C.hom(C.cod[f], C.cod[g]):
                if C.is_identity(h) and f == g:
                    continue
                if C.compose(h, f) == g:
                    arrows.append(((h, f, g), f"{h}@{f}", f, g, h))
    under = {a[0]: a[4] for a in arrows}

    def composer(k2, k1):
        h = C.compose(under[k2], under[k1])
        src = k1[1]
        tgt = k2[2] if k2[0] is not _ID else k2[1]
        return (_ID, src) if src == tgt and C.is_identity(h) else (h, src, tgt)

    S = _build(objs, {f: ("under", f) for f in objs}, [a[:4] for a in arrows],
               f"{A}/{C.name}", composer, cap, "coslice category")
    proj = FinFunctor(S, C, {f: C.cod[f] for f in objs}, {a[1]: a[4] for a in arrows})
    return S, proj


def arrow_category(C: FinCategory, cap: int | None = None) -> FinCategory:
    """Objects are the arrows of C; a square ``g . a = b . f`` is ``a|b@f~g``.

    The square from f to g with top ``a`` (between domains) and bottom
    ``b`` (between codomains) is keyed ``(a, b, f, g)``.
    """
    objs = list(C.morphisms)
    arrows = []
    for f in objs:
        arrows.append(((_ID, f), identity_name(f), f, f))
    for f in objs:
        for g in objs:
            for a in C.hom(C.dom[f], C.dom[g]):
                for b in C.hom(C.cod[f], C.cod[g]):
                    if f == g and C.is_identity(a) and C.is_identity(b):
                        continue
                    if C.compose(g, a) == C.compose(b, f):
                        arrows.append(((a, b, f, g), f"{a}|{b}@{f}~{g}", f, g))
    _guard(len(arrows), cap, "arrow category")

    def parts(k):
        if k[0] is _ID:
            f = k[1]
            return C.identity[C.dom[f]], C.identity[C.cod[f]], f, f
        return k

    def composer(k2, k1):
        a2, b2, _, g = parts(k2)
        a1, b1, f, _ = parts(k1)
        a, b = C.compose(a2, a1), C.compose(b2, b1)
        if f == g and C.is_identity(a) and C.is_identity(b):
            return (_ID, f)
        return (a, b, f, g)

    return _build(objs, {f: ("arrow", f) for f in objs}, arrows, f"{C.name}^2", composer, cap,
                  "arrow category")


def arrow_square(Arr: FinCategory, C: FinCategory, a: str, b: str, f: str, g: str) -> str:
    if f == g and C.is_identity(a) and C.is_identity(b):
        return identity_name(f)
    return Arr.mor_by_key((a, b, f, g))


def comma(B: str, U: "FinFunctor", cap: int | None = None) -> tuple[FinCategory, "FinFunctor"]:
    """B|U: objects (A, f: B -> U(A)), arrows u with U(u) . f1 = f2.

    Object ``(A, f)`` is named ``A|f``; arrow ``u`` out of ``(A1, f1)`` is
    named ``u@f1`` and keyed ``(u, (A1, f1), (A2, f2))``.
    """
    src, tgt = U.source, U.target
    tgt.check_object(B)
    keys = [(A, f) for A in src.objects for f in tgt.hom(B, U.obj_map[A])]
    names = {k: f"{k[0]}|{k[1]}" for k in keys}
    arrows = []
    for k in keys:
        arrows.append(((_ID, k), identity_name(names[k]), names[k], names[k], src.identity[k[0]]))
    for k1 in keys:
        for k2 in keys:
            for u in src.hom(k1[0], k2[0]):
                if k1 == k2 and src.is_identity(u):
                    continue
                if tgt.compose(U.mor_map[u], k1[1]) == k2[1]:
                    arrows.append(((u, k1, k2), f"{u}@{names[k1]}", names[k1], names[k2], u))
    under = {a[0]: a[4] for a in arrows}

    def composer(key2, key1):
        u = src.compose(under[key2], under[key1])
        s = key1[1]
        t = key2[2] if key2[0] is not _ID else key2[1]
        return (_ID, s) if s == t and src.is_identity(u) else (u, s, t)

    label = f"{B}|{U.name}" if U.name else f"{B}|U"
    K = _build([names[k] for k in keys], {names[k]: k for k in keys}, [a[:4] for a in arrows],
               label, composer, cap, "comma category")
    proj = FinFunctor(K, src, {names[k]: k[0] for k in keys}, {a[1]: a[4] for a in arrows})
    return K, proj


class FinFunctor:
    """A functor between finite categories; ``obj_map`` and ``mor_map`` are total."""

    __slots__ = ("source", "target", "obj_map", "mor_map", "name")

    def __init__(self, source: FinCategory, target: FinCategory, obj_map: Mapping[str, str],
                 mor_map: Mapping[str, str], name: str = ""):
        self.source = source
        self.target = target
        self.obj_map = dict(obj_map)
        self.mor_map = dict(mor_map)
        self.name = name

    def __repr__(self) -> str:
        return f"<FinFunctor {self.name or ''}: {self.source.name or '?'} -> {self.target.name or '?'}>"

    def obj(self, x: str) -> str:
        try:
            return self.obj_map[x]
        except KeyError:
            raise UnknownObject(f"unknown object {x!r} in the source of {self.name or 'functor'}", x) from None

    def mor(self, f: str) -> str:
        try:
            return self.mor_map[f]
        except KeyError:
            raise UnknownMorphism(f"unknown morphism {f!r} in the source of {self.name or 'functor'}", f) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.obj_map == other.obj_map and self.mor_map == other.mor_map)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.obj_map.items())), tuple(sorted(self.mor_map.items()))))

    def with_name(self, name: str) -> "FinFunctor":
        return FinFunctor(self.source, self.target, self.obj_map, self.mor_map, name)


def validate_functor(source: FinCategory, target: FinCategory, obj_map: Mapping[str, str],
                     mor_map: Mapping[str, str] | None = None, name: str = "") -> FinFunctor:
    """Check totality and functoriality; identities may be left out of ``mor_map``."""
    obj_map = dict(obj_map)
    mor_map = dict(mor_map or {})
    for x in source.objects:
        if x not in obj_map:
            raise NotFunctorial(f"object {x!r} is not mapped", x)
        if not target.has_object(obj_map[x]):
            raise DanglingRef(f"object {x!r} maps to undeclared {obj_map[x]!r}", (x, obj_map[x]))
    for x in obj_map:
        if not source.has_object(x):
            raise DanglingRef(f"{x!r} is not an object of the source", x)
    for f in mor_map:
        if not source.has_morphism(f):
            raise DanglingRef(f"{f!r} is not a morphism of the source", f)
    for x in source.objects:
        i = source.identity[x]
        want = target.identity[obj_map[x]]
        if mor_map.setdefault(i, want) != want:
            raise NotFunctorial(f"identity {i} must map to {want}", (i,))
    for f in source.morphisms:
        if f not in mor_map:
            raise NotFunctorial(f"morphism {f!r} is not mapped", f)
        Ff = mor_map[f]
        if not target.has_morphism(Ff):
            raise DanglingRef(f"morphism {f!r} maps to undeclared {Ff!r}", (f, Ff))
        if target.dom[Ff] != obj_map[source.dom[f]] or target.cod[Ff] != obj_map[source.cod[f]]:
            raise NotFunctorial(f"{f} maps to {Ff}, whose ends do not match the object map", (f,))
    for (g, f), h in source._comp.items():
        if target.compose(mor_map[g], mor_map[f]) != mor_map[h]:
            raise NotFunctorial(f"composite {g} . {f} is not preserved", (g, f))
    return FinFunctor(source, target, obj_map, mor_map, name)


def identity_functor(C: FinCategory, name: str = "") -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, name or f"id_{C.name}")


def compose_functors(G: FinFunctor, F: FinFunctor, name: str = "") -> FinFunctor:
    """``G . F``."""
    return FinFunctor(F.source, G.target,
                      {x: G.obj_map[y] for x, y in F.obj_map.items()},
                      {m: G.mor_map[n] for m, n in F.mor_map.items()}, name)


def opposite_functor(F: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(F.source), opposite(F.target), F.obj_map, F.mor_map,
                      F.name + "^op" if F.name else "")


def is_full(F: FinFunctor) -> bool:
    S, T = F.source, F.target
    for x in S.objects:
        for y in S.objects:
            image = {F.mor_map[m] for m in S.hom(x, y)}
            if len(image) != len(T.hom(F.obj_map[x], F.obj_map[y])):
                return False
    return True


def is_faithful(F: FinFunctor) -> bool:
    S = F.source
    for x in S.objects:
        for y in S.objects:
            ms = S.hom(x, y)
            if len({F.mor_map[m] for m in ms}) != len(ms):
                return False
    return True


def is_injective_on_objects(F: FinFunctor) -> bool:
    return len(set(F.obj_map.values())) == len(F.obj_map)


class NatTrans:
    """A natural transformation ``source => target`` between parallel functors."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source: FinFunctor, target: FinFunctor, components: Mapping[str, str]):
        self.source = source
        self.target = target
        self.components = dict(components)

    def __getitem__(self, x: str) -> str:
        return self.components[x]

    def __repr__(self) -> str:
        return f"<NatTrans {self.source.name or '?'} => {self.target.name or '?'}>"


def validate_nat_trans(source: FinFunctor, target: FinFunctor, components: Mapping[str, str]) -> NatTrans:
    C, D = source.source, source.target
    if target.source is not C and target.source != C or target.target is not D and target.target != D:
        raise ValidationError("natural transformation between non-parallel functors")
    for x in C.objects:
        if x not in components:
            raise NotNatural(f"no component at {x!r}", x)
        a = components[x]
        if D.dom.get(a) != source.obj_map[x] or D.cod.get(a) != target.obj_map[x]:
            raise NotNatural(f"component at {x!r} has the wrong ends", x)
    for m in C.morphisms:
        x, y = C.dom[m], C.cod[m]
        if D.compose(components[y], source.mor_map[m]) != D.compose(target.mor_map[m], components[x]):
            raise NotNatural(f"naturality square at {m!r} does not commute", m)
    return NatTrans(source, target, components)


def subcategory(C: FinCategory, objects: Iterable[str], morphisms: Iterable[str],
                name: str = "") -> tuple[FinCategory, FinFunctor]:
    """The subcategory on the given objects and arrows (identities added).

    Raises ValidationError if the selection is not closed under composition.
    """
    objs = C.sort_objects(C.check_object(x) for x in objects)
    oset = set(objs)
    ms = set(C.identity[x] for x in objs)
    for m in morphisms:
        C.check_morphism(m)
        if C.dom[m] not in oset or C.cod[m] not in oset:
            raise ValidationError(f"{m} leaves the chosen objects", m)
        ms.add(m)
    mors = C.sort_morphisms(ms)
    comp = {}
    for f in mors:
        for g in mors:
            if C.cod[f] == C.dom[g]:
                h = C.compose(g, f)
                if h not in ms:
                    raise ValidationError(f"{g} . {f} = {h} is missing from the selection", (g, f))
                comp[g, f] = h
    S = FinCategory(objs, mors, {m: C.dom[m] for m in mors}, {m: C.cod[m] for m in mors},
                    {x: C.identity[x] for x in objs}, comp, name)
    return S, FinFunctor(S, C, {x: x for x in objs}, {m: m for m in mors}, name + "_incl" if name else "")


def full_subcategory(C: FinCategory, objects: Iterable[str], name: str = "") -> tuple[FinCategory, FinFunctor]:
    objs = set(objects)
    return subcategory(C, objs, [m for m in C.morphisms if C.dom[m] in objs and C.cod[m] in objs], name)


def find_functors(S: FinCategory, T: FinCategory, limit: int | None = None) -> list[FinFunctor]:
    """All functors S -> T by backtracking over the composition table."""
    out: list[FinFunctor] = []
    non_ids = S.non_identities()
    pos = {f: i for i, f in enumerate(non_ids)}
    # constraints checked once every factor of a composite is assigned
    checks: list[list[tuple[str, str, str]]] = [[] for _ in non_ids]
    for (g, f), h in S._comp.items():
        if S.is_identity(g) or S.is_identity(f):
            continue
        last = max(pos[g], pos[f], pos.get(h, -1))
        checks[last].append((g, f, h))
    for images in product(T.objects, repeat=len(S.objects)):
        omap = dict(zip(S.objects, images))
        mmap = {S.identity[x]: T.identity[omap[x]] for x in S.objects}
        choices = [T.hom(omap[S.dom[f]], omap[S.cod[f]]) for f in non_ids]
        if any(not c for c in choices):
            continue

        def rec(i):
            if i == len(non_ids):
                out.append(FinFunctor(S, T, omap, dict(mmap)))
                return limit is not None and len(out) >= limit
            f = non_ids[i]
            for c in choices[i]:
                mmap[f] = c
                if all(T._comp[mmap[g], mmap[f2]] == mmap[h] for g, f2, h in checks[i]):
                    if rec(i + 1):
                        return True
            del mmap[f]
            return False

        if rec(0):
            break
    return out
