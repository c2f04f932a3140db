"""Text format for workspaces of categories, functors, classes, cone sets and diagrams.

A workspace file is a sequence of blocks::

    category Chain3 {
      objects: 0, 1, 2
      arrows: 0≤1: 0 -> 1, 1≤2: 1 -> 2, 0≤2: 0 -> 2
      compose: 1≤2 . 0≤1 = 0≤2
    }
    functor U : A -> B { obj: a => b  mor: f => g }
    class L in Chain3 { id_0, 0≤1 }
    gamma G in Chain3 { cone 0 -> [0≤1]; cone 1 -> [] }
    diagram D : Shape -> Chain3 { obj: x => 0  mor: s => 0≤1 }

Identities are implicit and named ``id_<object>``; ``g . f`` is g after f.
Entries may be separated by commas or semicolons. ``//`` starts a comment.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .core import FinCategory, FinFunctor, validate_category, validate_functor
from .errors import MulticatError, ParseError, ValidationError, WorkspaceError
from .gamma import ConeSpec, GammaClass, gamma_class
from .orthogonality import MorphismClass, morphism_class

__all__ = ["Token", "tokenize", "Workspace", "parse", "parse_file", "print_workspace", "load_workspaces"]

KEYWORDS = ("category", "functor", "class", "gamma", "diagram")


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "punct" or "eof"
    text: str
    line: int
    column: int


def _name_char(ch: str) -> bool:
    return not ch.isspace() and ch not in "{}[]():,;.=->/" and ch != "\x00"


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        two = text[i:i + 2]
        if two in ("->", "=>"):
            toks.append(Token("punct", two, line, col))
            i, col = i + 2, col + 2
            continue
        if ch in "{}[]:,;.=":
            toks.append(Token("punct", ch, line, col))
            i, col = i + 1, col + 1
            continue
        if not _name_char(ch):
            raise ParseError(f"unexpected character {ch!r}", line, col, ch)
        j = i
        while j < n and _name_char(text[j]):
            j += 1
        toks.append(Token("name", text[i:j], line, col))
        col += j - i
        i = j
    toks.append(Token("eof", "", line, col))
    return toks


@dataclass
class Workspace:
    categories: dict[str, FinCategory] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    classes: dict[str, MorphismClass] = field(default_factory=dict)
    gammas: dict[str, GammaClass] = field(default_factory=dict)
    diagrams: dict[str, FinFunctor] = field(default_factory=dict)

    def category(self, name: str) -> FinCategory:
        return self._get(self.categories, name, "category")

    def functor(self, name: str) -> FinFunctor:
        return self._get(self.functors, name, "functor")

    def morphism_class(self, name: str) -> MorphismClass:
        return self._get(self.classes, name, "class")

    def gamma(self, name: str) -> GammaClass:
        return self._get(self.gammas, name, "gamma")

    def diagram(self, name: str) -> FinFunctor:
        return self._get(self.diagrams, name, "diagram")

    @staticmethod
    def _get(table: dict, name: str, what: str):
        try:
            return table[name]
        except KeyError:
            known = ", ".join(table) or "none"
            raise MulticatError(f"no {what} named {name!r} (known: {known})", name) from None

    def merged(self, other: "Workspace") -> "Workspace":
        out = Workspace(dict(self.categories), dict(self.functors), dict(self.classes),
                        dict(self.gammas), dict(self.diagrams))
        for kind in ("categories", "functors", "classes", "gammas", "diagrams"):
            mine, theirs = getattr(out, kind), getattr(other, kind)
            for k, v in theirs.items():
                if k in mine:
                    raise MulticatError(f"{kind[:-1] if kind != 'classes' else 'class'} {k!r} defined twice", k)
                mine[k] = v
        return out


class _Parser:
    def __init__(self, text: str, base: Workspace | None):
        self.toks = tokenize(text)
        self.i = 0
        self.ws = Workspace() if base is None else base.merged(Workspace())

    # token helpers

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        shown = tok.text or "end of input"
        return ParseError(f"{msg} (found {shown!r})", tok.line, tok.column, tok.text)

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        t = self.tok
        self.i += 1
        return t

    def name(self, what: str = "a name") -> Token:
        if self.tok.kind != "name":
            raise self.error(f"expected {what}")
        t = self.tok
        self.i += 1
        return t

    def section(self, word: str) -> bool:
        """True at ``word :`` unless that is an arrow declaration ``word : a -> b``."""
        if self.tok.kind != "name" or self.tok.text != word:
            return False
        if self.peek().kind != "punct" or self.peek().text != ":":
            return False
        return not (self.peek(2).kind == "name" and self.peek(3).text == "->")

    def separator(self) -> bool:
        if self.at(",") or self.at(";"):
            self.i += 1
            return True
        return False

    def entries(self, stop_words: tuple[str, ...], parse_entry) -> list:
        """Entries until ``}`` or a section word; a separator forces another entry."""
        out = []
        forced = False
        while True:
            if self.at("}") or (not forced and any(self.section(w) for w in stop_words)):
                if forced:
                    raise self.error("expected an entry after the separator")
                return out
            out.append(parse_entry())
            forced = self.separator()
            if not forced and not self.at("}") and not any(self.section(w) for w in stop_words):
                raise self.error("expected ',' or '}'")

    # blocks

    def run(self) -> Workspace:
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "name" or t.text not in KEYWORDS:
                raise self.error("expected one of " + ", ".join(KEYWORDS))
            self.i += 1
            getattr(self, "block_" + t.text)(t)
        return self.ws

    def declare(self, kind: str, tok: Token) -> None:
        table = getattr(self.ws, kind)
        if tok.text in table:
            raise WorkspaceError(f"{tok.text!r} is already defined", tok.line, tok.column, tok.text)

    def wrap(self, exc: ValidationError, positions: dict[str, Token], header: Token) -> WorkspaceError:
        tok = header
        for ref in _flatten(exc.witness):
            if isinstance(ref, str) and ref in positions:
                tok = positions[ref]
                break
        return WorkspaceError(str(exc), tok.line, tok.column, tok.text)

    def block_category(self, kw: Token) -> None:
        head = self.name("a category name")
        self.declare("categories", head)
        self.expect("{")
        objects: list[str] = []
        arrows: list[tuple[str, str, str]] = []
        comps: list[tuple[str, str, str]] = []
        pos: dict[str, Token] = {}
        sections = ("objects", "arrows", "compose")
        seen = set()
        while not self.at("}"):
            word = next((w for w in sections if self.section(w)), None)
            if word is None:
                raise self.error("expected 'objects:', 'arrows:', 'compose:' or '}'")
            if word in seen:
                raise self.error(f"section {word!r} appears twice")
            seen.add(word)
            self.i += 2
            if word == "objects":
                for t in self.entries(sections, lambda: self.name("an object name")):
                    objects.append(t.text)
                    pos.setdefault(t.text, t)
            elif word == "arrows":
                def arrow():
                    m = self.name("an arrow name")
                    self.expect(":")
                    d = self.name("a domain")
                    self.expect("->")
                    c = self.name("a codomain")
                    for end in (d, c):
                        if end.text not in objects:
                            raise WorkspaceError(f"undeclared object {end.text!r}", end.line, end.column, end.text)
                    pos.setdefault(m.text, m)
                    return (m.text, d.text, c.text)
                arrows.extend(self.entries(sections, arrow))
            else:
                def entry():
                    g = self.name("an arrow name")
                    self.expect(".")
                    f = self.name("an arrow name")
                    self.expect("=")
                    h = self.name("an arrow name")
                    known = {a[0] for a in arrows} | {f"id_{x}" for x in objects}
                    for t in (g, f, h):
                        if t.text not in known:
                            raise WorkspaceError(f"undeclared arrow {t.text!r}", t.line, t.column, t.text)
                    return (g.text, f.text, h.text)
                comps.extend(self.entries(sections, entry))
        self.expect("}")
        try:
            C = validate_category(objects, arrows, comps, name=head.text)
        except ValidationError as exc:
            raise self.wrap(exc, pos, head) from exc
        self.ws.categories[head.text] = C

    def _category_ref(self) -> tuple[Token, FinCategory]:
        t = self.name("a category name")
        if t.text not in self.ws.categories:
            raise WorkspaceError(f"unknown category {t.text!r}", t.line, t.column, t.text)
        return t, self.ws.categories[t.text]

    def _map_block(self, kind: str) -> None:
        head = self.name(f"a {kind} name")
        table = "functors" if kind == "functor" else "diagrams"
        self.declare(table, head)
        self.expect(":")
        _, S = self._category_ref()
        self.expect("->")
        _, T = self._category_ref()
        self.expect("{")
        maps: dict[str, dict[str, str]] = {"obj": {}, "mor": {}}
        pos: dict[str, Token] = {}
        mapped: set[tuple[str, str]] = set()
        sections = ("obj", "mor")
        while not self.at("}"):
            word = next((w for w in sections if self.section(w)), None)
            if word is None:
                raise self.error("expected 'obj:', 'mor:' or '}'")
            self.i += 2
            src, dst = (S.has_object, T.has_object) if word == "obj" else (S.has_morphism, T.has_morphism)

            def pair():
                a = self.name()
                self.expect("=>")
                b = self.name()
                if not src(a.text):
                    raise WorkspaceError(f"{a.text!r} is not in {S.name}", a.line, a.column, a.text)
                if not dst(b.text):
                    raise WorkspaceError(f"{b.text!r} is not in {T.name}", b.line, b.column, b.text)
                if (word, a.text) in mapped:
                    raise WorkspaceError(f"{a.text!r} is mapped twice", a.line, a.column, a.text)
                mapped.add((word, a.text))
                pos.setdefault(a.text, a)
                return a.text, b.text
            maps[word].update(self.entries(sections, pair))
        self.expect("}")
        try:
            F = validate_functor(S, T, maps["obj"], maps["mor"], name=head.text)
        except ValidationError as exc:
            raise self.wrap(exc, pos, head) from exc
        getattr(self.ws, table)[head.text] = F

    def block_functor(self, kw: Token) -> None:
        self._map_block("functor")

    def block_diagram(self, kw: Token) -> None:
        self._map_block("diagram")

    def _in_category(self) -> tuple[Token, FinCategory]:
        t = self.name()
        if t.text != "in":
            raise self.error("expected 'in'", t)
        return self._category_ref()

    def block_class(self, kw: Token) -> None:
        head = self.name("a class name")
        self.declare("classes", head)
        _, C = self._in_category()
        self.expect("{")

        def member():
            t = self.name("an arrow name")
            if not C.has_morphism(t.text):
                raise WorkspaceError(f"{t.text!r} is not an arrow of {C.name}", t.line, t.column, t.text)
            return t.text
        ms = self.entries((), member)
        self.expect("}")
        self.ws.classes[head.text] = morphism_class(C, ms)

    def block_gamma(self, kw: Token) -> None:
        head = self.name("a cone set name")
        self.declare("gammas", head)
        _, C = self._in_category()
        self.expect("{")

        def cone():
            t = self.name("'cone'")
            if t.text != "cone":
                raise self.error("expected 'cone'", t)
            v = self.name("a vertex")
            if not C.has_object(v.text):
                raise WorkspaceError(f"{v.text!r} is not an object of {C.name}", v.line, v.column, v.text)
            self.expect("->")
            self.expect("[")
            legs = []
            while not self.at("]"):
                g = self.name("a leg")
                if not C.has_morphism(g.text) or C.dom[g.text] != v.text:
                    raise WorkspaceError(f"{g.text!r} is not an arrow out of {v.text}", g.line, g.column, g.text)
                legs.append(g.text)
                if not self.at("]"):
                    self.expect(",")
            self.expect("]")
            return ConeSpec(v.text, tuple(legs))
        cones = self.entries((), cone)
        self.expect("}")
        self.ws.gammas[head.text] = gamma_class(C, cones)


def _flatten(x) -> Iterator:
    if isinstance(x, (tuple, list)):
        for y in x:
            yield from _flatten(y)
    else:
        yield x


def parse(text: str, base: Workspace | None = None) -> Workspace:
    """Parse a workspace; ``base`` supplies names declared in earlier files."""
    return _Parser(text, base).run()


def parse_file(path, base: Workspace | None = None) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), base)


def load_workspaces(paths) -> Workspace:
    ws = Workspace()
    for p in paths:
        ws = parse_file(p, ws)
    return ws


# printing


def _printable(name: str) -> str:
    if not name or not all(_name_char(ch) for ch in name):
        raise ValueError(f"name {name!r} cannot be written in the text format")
    return name


def _lines(entries: list[str], indent: str = "    ") -> list[str]:
    return [indent + e + ("," if k < len(entries) - 1 else "") for k, e in enumerate(entries)]


def print_category(C: FinCategory, name: str | None = None) -> str:
    out = [f"category {_printable(name or C.name)} {{"]
    out.append("  objects: " + ", ".join(_printable(x) for x in C.objects))
    arrows = [f"{_printable(m)}: {C.dom[m]} -> {C.cod[m]}" for m in C.non_identities()]
    if arrows:
        out.append("  arrows:")
        out.extend(_lines(arrows))
    comps = []
    for f in C.non_identities():
        for g in C.out_of(C.cod[f]):
            if not C.is_identity(g):
                comps.append(f"{g} . {f} = {C.compose(g, f)}")
    if comps:
        out.append("  compose:")
        out.extend(_lines(comps))
    out.append("}")
    return "\n".join(out)


def _print_map(kind: str, name: str, F: FinFunctor) -> str:
    S, T = F.source, F.target
    out = [f"{kind} {_printable(name)} : {S.name} -> {T.name} {{"]
    out.append("  obj: " + ", ".join(f"{x} => {F.obj_map[x]}" for x in S.objects))
    mors = [f"{m} => {F.mor_map[m]}" for m in S.non_identities()]
    if mors:
        out.append("  mor:")
        out.extend(_lines(mors))
    out.append("}")
    return "\n".join(out)


def print_workspace(ws: Workspace) -> str:
    """Deterministic text whose parse gives back the same tables."""
    blocks = [print_category(C, n) for n, C in ws.categories.items()]
    blocks += [_print_map("functor", n, F) for n, F in ws.functors.items()]
    for name, K in ws.classes.items():
        blocks.append(f"class {_printable(name)} in {K.category.name} {{ {', '.join(K.members)} }}")
    for name, G in ws.gammas.items():
        cones = "; ".join(f"cone {c.vertex} -> [{', '.join(c.legs)}]" for c in G.cones)
        blocks.append(f"gamma {_printable(name)} in {G.category.name} {{ {cones} }}")
    blocks += [_print_map("diagram", n, D) for n, D in ws.diagrams.items()]
    return "\n\n".join(blocks) + "\n"
