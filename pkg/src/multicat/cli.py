"""The ``multicat`` command line: one subcommand per library operation.

Every subcommand reads workspaces given with ``-w`` and returns a Report.
Exit status is 0 for a positive verdict or a finished computation, 1 for a
negative verdict (with a witness) and 2 for errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from . import connectivity as conn
from . import lrgeometry as lr
from . import multiadjoint as madj
from . import multilimits as ml
from . import orthogonality as orth
from .corpus import SUITES, enumerate_categories, run_corpus
from .core import FinCategory, comma
from .dsl import Workspace, load_workspaces, print_workspace
from .errors import MulticatError
from .families import (
    embed_full_faithful,
    family,
    family_hom,
    is_coconnected,
    verify_pi_adjunction,
)
from .gamma import build_B_gamma, gamma_local_morphisms, is_gamma_local, is_strongly_gamma_local, verify_gamma_theorem
from .report import Report

BUILTIN = "builtin:"

COMMANDS: dict[str, tuple[Callable, str, list]] = {}


def command(name: str, help: str, *arguments: tuple):
    """Register a subcommand; ``arguments`` are (flags, kwargs) pairs for argparse."""
    def wrap(fn):
        COMMANDS[name] = (fn, help, list(arguments))
        return fn
    return wrap


def arg(*flags, **kw) -> tuple:
    return flags, kw


# shared selectors
CAT = arg("-c", "--category", help="category name (defaults to the only one, or the class's)")
FUN = arg("-f", "--functor", required=True, help="functor name")
DIA = arg("-d", "--diagram", required=True, help="diagram name")
LEFT = arg("-L", "--left", required=True, help="left class name")
RIGHT = arg("-R", "--right", required=True, help="right class name")
LPRIME = arg("-P", "--lprime", required=True, help="name of the class L'")
GAM = arg("-g", "--gamma", required=True, help="cone set name")
STRONG = arg("--strong", action="store_true", help="use strong locality")


def _list(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(",")) if t] if text else []


# workspace access


def _resolve_path(p: str):
    if p.startswith(BUILTIN):
        return resources.files("multicat").joinpath("fixtures", p[len(BUILTIN):])
    return Path(p)


def _workspace(ns) -> Workspace:
    paths = [_resolve_path(p) for p in ns.workspace or []]
    return load_workspaces(paths)


def _category(ns, ws: Workspace, *classes) -> FinCategory:
    if ns.category:
        return ws.category(ns.category)
    for k in classes:
        if k is not None:
            return k.category
    if len(ws.categories) == 1:
        return next(iter(ws.categories.values()))
    raise MulticatError("several categories are loaded; pick one with -c", tuple(ws.categories))


def _klass(ws: Workspace, name: str | None):
    return None if name is None else ws.morphism_class(name)


def _yes(flag) -> str:
    return "yes" if flag else "no"


def _units(rec) -> list[dict]:
    return [{"unit": e.unit, "apex": e.apex} for e in rec.entries]


def _check_report(name: str, ns, inputs: dict, chk, data: dict | None = None) -> Report:
    return Report(name, inputs, _yes(chk), [] if chk else [chk.witness], data or {})


# parsing and basic structure


@command("parse", "validate workspaces and summarize them",
         arg("--print", dest="print_text", action="store_true", help="include the normalized text"))
def cmd_parse(ns, ws):
    data = {
        "categories": {n: {"objects": len(C.objects), "morphisms": len(C.morphisms)} for n, C in ws.categories.items()},
        "functors": {n: f"{F.source.name} -> {F.target.name}" for n, F in ws.functors.items()},
        "classes": {n: list(K.members) for n, K in ws.classes.items()},
        "gammas": {n: len(G.cones) for n, G in ws.gammas.items()},
        "diagrams": {n: f"{D.source.name} -> {D.target.name}" for n, D in ws.diagrams.items()},
    }
    if ns.print_text:
        data["text"] = print_workspace(ws)
    return Report("parse", {}, "computed", [], data)


@command("homs", "list the arrows from X to Y", CAT, arg("X"), arg("Y"))
def cmd_homs(ns, ws):
    C = _category(ns, ws)
    return Report("homs", {"category": C.name, "X": ns.X, "Y": ns.Y}, "computed", [],
                  {"hom": list(C.hom(C.check_object(ns.X), C.check_object(ns.Y)))})


@command("components", "connected components of a category, or of B|U with --base",
         CAT, arg("-f", "--functor", help="functor U for the comma B|U"), arg("--base", help="object B"))
def cmd_components(ns, ws):
    if ns.functor:
        U = ws.functor(ns.functor)
        if not ns.base:
            raise MulticatError("--base is required with a functor", ns.functor)
        K, _ = comma(ns.base, U, ns.cap)
        part = conn.connected_components(K)
        blocks = [[f"{K.obj_key[x][1]}@{K.obj_key[x][0]}" for x in b] for b in part.blocks]
        return Report("components", {"functor": U.name, "base": ns.base}, "computed", [],
                      {"components": blocks, "count": len(blocks)})
    C = _category(ns, ws)
    part = conn.connected_components(C)
    return Report("components", {"category": C.name}, "computed", [],
                  {"components": [list(b) for b in part.blocks], "count": len(part.blocks)})


@command("multiinit", "a multi-initial family: one initial object per component", CAT)
def cmd_multiinit(ns, ws):
    C = _category(ns, ws)
    fam = conn.multi_initial_family(C)
    if not fam:
        return Report("multiinit", {"category": C.name}, "no", [{"component": list(fam.component)}],
                      {"reason": fam.reason})
    return Report("multiinit", {"category": C.name}, "yes", [], {"members": list(fam.members)})


def _blockers(C: FinCategory, outgoing: bool) -> list[dict]:
    """For each object, one object it fails to reach (or be reached from) by exactly one arrow."""
    if not C.objects:
        return [{"reason": "the category is empty"}]
    out = []
    for X in C.objects:
        for Y in C.objects:
            n = len(C.hom(X, Y) if outgoing else C.hom(Y, X))
            if n != 1:
                out.append({"object": X, "other": Y, "arrows": n})
                break
    return out


@command("initial", "initial objects", CAT)
def cmd_initial(ns, ws):
    C = _category(ns, ws)
    xs = conn.initial_objects(C)
    return Report("initial", {"category": C.name}, _yes(xs), [] if xs else _blockers(C, True),
                  {"initial": list(xs)})


@command("terminal", "terminal objects", CAT)
def cmd_terminal(ns, ws):
    C = _category(ns, ws)
    xs = conn.terminal_objects(C)
    return Report("terminal", {"category": C.name}, _yes(xs), [] if xs else _blockers(C, False),
                  {"terminal": list(xs)})


@command("weakly-initial", "does every object receive a map from the given set", CAT,
         arg("objects", help="comma-separated objects"))
def cmd_weakly_initial(ns, ws):
    C = _category(ns, ws)
    S = [C.check_object(x) for x in _list(ns.objects)]
    ok = conn.is_weakly_initial(C, S)
    return Report("weakly-initial", {"category": C.name, "objects": S}, _yes(ok), [], {})


# local right adjoints


@command("is-multiadjoint", "is U a right multi-adjoint; lists local units", FUN)
def cmd_is_multiadjoint(ns, ws):
    U = ws.functor(ns.functor)
    chk = madj.is_right_multi_adjoint(U, ns.cap)
    data = {}
    if chk:
        data["units"] = {B: _units(rec) for B, rec in madj.all_local_units(U, ns.cap).items()}
    return _check_report("is-multiadjoint", ns, {"functor": U.name}, chk, data)


@command("slicewise", "does every arrow into the range of U have an initial factorization over its target", FUN)
def cmd_slicewise(ns, ws):
    U = ws.functor(ns.functor)
    return _check_report("slicewise", ns, {"functor": U.name}, madj.is_slicewise_local_right_adjoint(U))


@command("local-units", "the local units under B and the family L(B) of their apexes", FUN, arg("B"))
def cmd_local_units(ns, ws):
    U = ws.functor(ns.functor)
    rec = madj.local_units(U, U.target.check_object(ns.B), ns.cap)
    inputs = {"functor": U.name, "B": ns.B}
    if not rec:
        return Report("local-units", inputs, "no", [{"component": list(rec.component)}], {"reason": rec.reason})
    return Report("local-units", inputs, "computed", [],
                  {"count": len(rec), "units": _units(rec), "L": [e.apex for e in rec.entries]})


@command("left-adjoint", "the left adjoint of U restricted over A, with unit and counit", FUN, arg("A"))
def cmd_left_adjoint(ns, ws):
    U = ws.functor(ns.functor)
    adj = madj.local_left_adjoint(U, ns.A, ns.cap)
    table = {f: {"apex": adj.apex(f), "unit": adj.eta(f), "image": adj.left(f)} for f in adj.factorization}
    return Report("left-adjoint", {"functor": U.name, "A": ns.A}, "computed", [], {"factorizations": table})


@command("beck-chevalley", "is the mate invertible, at (u, f) or everywhere", FUN,
         arg("u", nargs="?"), arg("f", nargs="?"))
def cmd_beck_chevalley(ns, ws):
    U = ws.functor(ns.functor)
    if (ns.u is None) != (ns.f is None):
        raise MulticatError("give both u and f, or neither", (ns.u, ns.f))
    rows = [madj.beck_chevalley(U, ns.u, ns.f, strict=False)] if ns.u else madj.beck_chevalley_all(U, strict=False)
    bad = [r for r in rows if not r.is_iso]
    return Report("beck-chevalley", {"functor": U.name, "u": ns.u, "f": ns.f}, _yes(not bad),
                  [list(r.at) for r in bad],
                  {"checked": len(rows), "mates": [{"at": list(r.at), "sigma": r.sigma, "inverse": r.inverse}
                                                   for r in rows]})


@command("conerve", "hom(B, U X) against the sum over local units, for every X", FUN, arg("B"))
def cmd_conerve(ns, ws):
    U = ws.functor(ns.functor)
    rep = madj.conerve_decomposition(U, ns.B, strict=False)
    bad = [r.obj for r in rep.rows if not r.bijective]
    return Report("conerve", {"functor": U.name, "B": ns.B}, _yes(not bad), bad,
                  {"units": _units(rep.units), "rows": rep.rows})


@command("stable-factor", "factor f: B -> U(A) as a candidate then a U-image", FUN, arg("f"), arg("A"))
def cmd_stable_factor(ns, ws):
    U = ws.functor(ns.functor)
    sf = orth.stable_factorization(U, ns.f, ns.A)
    return Report("stable-factor", {"functor": U.name, "f": ns.f, "A": ns.A}, "computed", [], sf)


@command("is-stable", "does every arrow into the range of U factor stably", FUN)
def cmd_is_stable(ns, ws):
    U = ws.functor(ns.functor)
    return _check_report("is-stable", ns, {"functor": U.name}, orth.is_stable(U))


@command("candidate", "is n: B -> U(A) a candidate", FUN, arg("n"), arg("A"))
def cmd_candidate(ns, ws):
    U = ws.functor(ns.functor)
    return Report("candidate", {"functor": U.name, "n": ns.n, "A": ns.A}, _yes(orth.is_candidate(U, ns.n, ns.A)))


@command("diag-universal", "is n left orthogonal to the range of U", FUN, arg("n"))
def cmd_diag_universal(ns, ws):
    U = ws.functor(ns.functor)
    return Report("diag-universal", {"functor": U.name, "n": ns.n}, _yes(orth.is_diagonally_universal(U, ns.n)))


@command("wide-pullbacks", "does U preserve the wide pullbacks that exist", FUN,
         arg("--arity", type=int, default=3))
def cmd_wide_pullbacks(ns, ws):
    U = ws.functor(ns.functor)
    rep = madj.preserves_wide_pullbacks(U, ns.arity)
    return Report("wide-pullbacks", {"functor": U.name, "arity": ns.arity}, _yes(rep.holds),
                  [] if rep.holds else [rep.witness], {"checked": rep.checked, "skipped": rep.skipped})


# orthogonality and factorization systems


@command("lift", "diagonal fillers of the square r . top = bottom . l", CAT,
         arg("l"), arg("r"), arg("top"), arg("bottom"))
def cmd_lift(ns, ws):
    C = _category(ns, ws)
    rep = orth.lift(C, ns.l, ns.r, ns.top, ns.bottom)
    return Report("lift", {"category": C.name, "square": [ns.l, ns.r, ns.top, ns.bottom]},
                  _yes(len(rep.fillers) == 1), [], {"fillers": list(rep.fillers)})


@command("orthogonal", "is l orthogonal to r", CAT, arg("l"), arg("r"))
def cmd_orthogonal(ns, ws):
    C = _category(ns, ws)
    w = orth.orthogonality_witness(C, ns.l, ns.r)
    return Report("orthogonal", {"category": C.name, "l": ns.l, "r": ns.r}, _yes(w is None),
                  [] if w is None else [w])


@command("validate-fs", "is (L, R) a factorization system", CAT, LEFT, RIGHT)
def cmd_validate_fs(ns, ws):
    L, R = ws.morphism_class(ns.left), ws.morphism_class(ns.right)
    C = _category(ns, ws, L)
    rep = orth.validate_factorization_system(C, L, R)
    return Report("validate-fs", {"category": C.name, "L": ns.left, "R": ns.right}, _yes(rep),
                  [{"property": p, "witness": w} for p, w in rep.failures])


@command("saturate", "the saturation of a class", CAT, arg("-V", "--seed-class", required=True, help="class name"))
def cmd_saturate(ns, ws):
    V = ws.morphism_class(ns.seed_class)
    C = _category(ns, ws, V)
    rep = orth.saturation_report(C, V, ns.cap)
    return Report("saturate", {"category": C.name, "class": ns.seed_class}, "computed", [],
                  {"members": list(rep.result.members), "rounds": rep.rounds}, list(rep.skipped))


@command("factor", "the (L, R) factorizations of f", CAT, LEFT, RIGHT, arg("f"))
def cmd_factor(ns, ws):
    L, R = ws.morphism_class(ns.left), ws.morphism_class(ns.right)
    C = _category(ns, ws, L)
    facts = orth.factor_via_classes(C, ns.f, L, R)
    return Report("factor", {"category": C.name, "L": ns.left, "R": ns.right, "f": ns.f},
                  _yes(facts), [], {"factorizations": facts})


@command("relff", "is U relatively full and faithful", FUN)
def cmd_relff(ns, ws):
    U = ws.functor(ns.functor)
    return _check_report("relff", ns, {"functor": U.name}, orth.is_relatively_full_faithful(U))


@command("lifts-r", "does U lift the R-maps between its images", FUN, RIGHT)
def cmd_lifts_r(ns, ws):
    U = ws.functor(ns.functor)
    return _check_report("lifts-r", ns, {"functor": U.name, "R": ns.right},
                         orth.lifts_R_maps(U, ws.morphism_class(ns.right)))


@command("glide", "is a set of objects closed under domains of R-maps into it", CAT, RIGHT,
         arg("objects", help="comma-separated objects"))
def cmd_glide(ns, ws):
    R = ws.morphism_class(ns.right)
    C = _category(ns, ws, R)
    objs = [C.check_object(x) for x in _list(ns.objects)]
    w = orth.gliding_witness(C, R, objs)
    return Report("glide", {"category": C.name, "R": ns.right, "objects": objs}, _yes(w is None),
                  [] if w is None else [w])


@command("pullback", "the pullback of a cospan f, g", CAT, arg("f"), arg("g"))
def cmd_pullback(ns, ws):
    C = _category(ns, ws)
    c = lr.pullback(C, ns.f, ns.g)
    inputs = {"category": C.name, "f": ns.f, "g": ns.g}
    if not c:
        return Report("pullback", inputs, "no", [[ns.f, ns.g]], {"reason": c.reason})
    return Report("pullback", inputs, "yes", [], {"cone": c})


# free product completion


@command("family-hom", "morphisms between two families of objects", CAT,
         arg("--source", required=True, help="comma-separated members"),
         arg("--target", required=True, help="comma-separated members"),
         arg("--list", dest="list_all", action="store_true", help="list every morphism"))
def cmd_family_hom(ns, ws):
    C = _category(ns, ws)
    F, G = family(C, _list(ns.source)), family(C, _list(ns.target))
    homs = family_hom(F, G)
    data: dict = {"count": len(homs)}
    if ns.list_all:
        data["morphisms"] = [{"reindex": list(m.reindex), "components": list(m.components)} for m in homs]
    return Report("family-hom", {"category": C.name, "source": list(F.members), "target": list(G.members)},
                  "computed", [], data)


@command("pi-adjunction", "check the adjunction between families, bounded by --family-bound", FUN)
def cmd_pi_adjunction(ns, ws):
    U = ws.functor(ns.functor)
    rep = verify_pi_adjunction(U, ns.family_bound)
    return Report("pi-adjunction", {"functor": U.name, "family_bound": ns.family_bound}, _yes(rep),
                  list(rep.failures[:5]), {"pairs": rep.pairs, "naturality_checks": rep.naturality_checks})


@command("coconnected", "is a family coconnected, probing products up to --family-bound", CAT,
         arg("members", help="comma-separated members, may be empty", nargs="?", default=""))
def cmd_coconnected(ns, ws):
    C = _category(ns, ws)
    F = family(C, _list(ns.members))
    return _check_report("coconnected", ns, {"category": C.name, "members": list(F.members)},
                         is_coconnected(F, ns.family_bound))


@command("embed", "is the embedding into families full and faithful", CAT)
def cmd_embed(ns, ws):
    C = _category(ns, ws)
    return _check_report("embed", ns, {"category": C.name}, embed_full_faithful(C))


# multilimits


def _family_data(fam) -> dict:
    return {"count": len(fam), "members": list(fam.members)}


@command("multilimit", "the multilimit of a diagram", DIA, CAT)
def cmd_multilimit(ns, ws):
    D = ws.diagram(ns.diagram)
    fam = ml.multilimit(D.target, D, ns.cap)
    if not fam:
        return Report("multilimit", {"diagram": D.name}, "no", [{"component": fam.component}], {"reason": fam.reason})
    return Report("multilimit", {"diagram": D.name}, "yes", [], _family_data(fam))


@command("multicolimit", "the multicolimit of a diagram", DIA, CAT)
def cmd_multicolimit(ns, ws):
    D = ws.diagram(ns.diagram)
    fam = ml.multicolimit(D.target, D, ns.cap)
    if not fam:
        return Report("multicolimit", {"diagram": D.name}, "no", [{"component": fam.component}],
                      {"reason": fam.reason})
    return Report("multicolimit", {"diagram": D.name}, "yes", [], _family_data(fam))


@command("hom-formula", "hom out of a multicolimit against cocones, object by object", DIA)
def cmd_hom_formula(ns, ws):
    D = ws.diagram(ns.diagram)
    fam = ml.multicolimit(D.target, D, ns.cap)
    if not fam:
        return Report("hom-formula", {"diagram": D.name}, "no", [{"component": fam.component}],
                      {"reason": fam.reason})
    ok, rows = ml.verify_multicolimit_hom_formula(D.target, D, fam)
    return Report("hom-formula", {"diagram": D.name}, _yes(ok), [r.obj for r in rows if r.cocones != r.hom_sum],
                  {"rows": rows})


@command("preserve", "does U preserve the multilimit of a diagram", FUN, DIA)
def cmd_preserve(ns, ws):
    U, D = ws.functor(ns.functor), ws.diagram(ns.diagram)
    rep = ml.preserves_multilimits(U, D)
    bad = [r.target_cone for r in rep.rows if not r.coproduct]
    return Report("preserve", {"functor": U.name, "diagram": D.name}, _yes(rep), bad,
                  {"rows": rep.rows})


@command("mreflect", "the multicolimit built from units along a multireflective inclusion", FUN, DIA)
def cmd_mreflect(ns, ws):
    U, D = ws.functor(ns.functor), ws.diagram(ns.diagram)
    fam = ml.multireflective_multicolimit(U, D)
    direct = ml.multicolimit(U.source, D, ns.cap)
    agree = bool(direct) and ml.same_up_to_iso(U.source, fam, direct)
    return Report("mreflect", {"functor": U.name, "diagram": D.name}, _yes(agree), [],
                  {**_family_data(fam), "matches_direct": agree})


@command("connected-limit", "a connected limit computed from local units", FUN, DIA)
def cmd_connected_limit(ns, ws):
    U, D = ws.functor(ns.functor), ws.diagram(ns.diagram)
    return Report("connected-limit", {"functor": U.name, "diagram": D.name}, "computed", [],
                  {"limit": ml.connected_limit_via_units(U, D)})


# cone locality


@command("gamma-local", "which objects are local for a cone set", GAM, STRONG)
def cmd_gamma_local(ns, ws):
    G = ws.gamma(ns.gamma)
    C = G.category
    test = is_strongly_gamma_local if ns.strong else is_gamma_local
    local = {A: test(C, G, A) for A in C.objects}
    return Report("gamma-local", {"gamma": ns.gamma, "strong": ns.strong}, "computed", [],
                  {"local": local, "morphisms": list(gamma_local_morphisms(C, G).members)})


@command("b-gamma", "the subcategory of local objects and local morphisms", GAM, STRONG)
def cmd_b_gamma(ns, ws):
    G = ws.gamma(ns.gamma)
    B, _ = build_B_gamma(G.category, G, ns.strong)
    return Report("b-gamma", {"gamma": ns.gamma, "strong": ns.strong}, "computed", [],
                  {"objects": list(B.objects), "morphisms": list(B.morphisms)})


@command("gamma-verify", "check the locality theorem for a cone set", GAM, STRONG)
def cmd_gamma_verify(ns, ws):
    G = ws.gamma(ns.gamma)
    rep = verify_gamma_theorem(G.category, G, ns.strong, strict=False)
    return Report("gamma-verify", {"gamma": ns.gamma, "strong": ns.strong}, _yes(rep),
                  [{"property": p, "witness": getattr(rep, p).witness} for p in rep.failures],
                  {"objects": list(rep.objects), "relatively_full_faithful": rep.relatively_full_faithful.holds,
                   "stable": rep.stable.holds, "multi_adjoint": rep.multi_adjoint.holds,
                   "gliding": rep.gliding.holds, "units_saturated": rep.units_saturated}, list(rep.skipped))


# left and right objects


@command("classify-lr", "left and right objects of a factorization system with a terminal", CAT, LEFT, RIGHT)
def cmd_classify_lr(ns, ws):
    L, R = ws.morphism_class(ns.left), ws.morphism_class(ns.right)
    C = _category(ns, ws, L)
    cls = lr.classify_lr(C, L, R)
    refl = {X: {"apex": f.apex, "left": f.left, "right": f.right} for X, f in cls.reflections.items()}
    return Report("classify-lr", {"category": C.name, "L": ns.left, "R": ns.right}, "computed", [],
                  {"terminal": cls.terminal, "l_objects": list(cls.l_objects), "r_objects": list(cls.r_objects),
                   "reflections": refl})


@command("reflect", "the right reflection of A and its universal property", CAT, LEFT, RIGHT, arg("A"))
def cmd_reflect(ns, ws):
    L, R = ws.morphism_class(ns.left), ws.morphism_class(ns.right)
    C = _category(ns, ws, L)
    f = lr.classify_lr(C, L, R).reflection(C.check_object(ns.A))
    chk = lr.reflection_universal(C, L, R, ns.A)
    return _check_report("reflect", ns, {"category": C.name, "L": ns.left, "R": ns.right, "A": ns.A}, chk,
                         {"apex": f.apex, "left": f.left, "right": f.right})


@command("cancel", "does L' cancel on the right along L", CAT, LEFT, LPRIME)
def cmd_cancel(ns, ws):
    L, Lp = ws.morphism_class(ns.left), ws.morphism_class(ns.lprime)
    C = _category(ns, ws, L)
    return _check_report("cancel", ns, {"category": C.name, "L": ns.left, "L'": ns.lprime},
                         lr.check_right_L_cancellation(C, L, Lp))


@command("stalks", "pull f back along the points of its codomain and test the fibers", CAT, LPRIME, arg("f"))
def cmd_stalks(ns, ws):
    Lp = ws.morphism_class(ns.lprime)
    C = _category(ns, ws, Lp)
    rep = lr.stalkwise_classify(C, ns.f, Lp)
    verdict = {True: "yes", False: "no", None: "computed"}[rep.verdict]
    return Report("stalks", {"category": C.name, "L'": ns.lprime, "f": ns.f}, verdict,
                  [r.point for r in rep.rows if not r.passes],
                  {"rows": rep.rows, "in_class": ns.f in Lp}, [f"no pullback along {p}" for p in rep.missing])


@command("forms", "right maps into X whose domain is an L'-object", CAT, LPRIME, RIGHT, arg("X"))
def cmd_forms(ns, ws):
    Lp, R = ws.morphism_class(ns.lprime), ws.morphism_class(ns.right)
    C = _category(ns, ws, Lp)
    return Report("forms", {"category": C.name, "L'": ns.lprime, "R": ns.right, "X": ns.X}, "computed", [],
                  {"forms": list(lr.lprime_forms(C, Lp, R, ns.X))})


@command("costable", "is the opposite inclusion of L'-objects over B stable", CAT, LEFT, LPRIME, arg("B"))
def cmd_costable(ns, ws):
    L, Lp = ws.morphism_class(ns.left), ws.morphism_class(ns.lprime)
    C = _category(ns, ws, L)
    rep = lr.costable_inclusion_check(C, L, Lp, ns.B)
    return Report("costable", {"category": C.name, "L": ns.left, "L'": ns.lprime, "B": ns.B}, _yes(rep),
                  [w for w in (rep.stable.witness, rep.relatively_full_faithful.witness) if w is not None],
                  {"objects": list(rep.objects), "stable": rep.stable.holds,
                   "relatively_full_faithful": rep.relatively_full_faithful.holds})


# corpus


@command("corpus", "run the theorem suite over every small category and functor",
         arg("--deadline", type=float, default=None, help="stop after this many seconds"),
         arg("--suite", action="append", choices=SUITES, help="restrict to a suite (repeatable)"),
         arg("--max-cones", type=int, default=2),
         arg("--count-only", action="store_true", help="only count the categories"))
def cmd_corpus(ns, ws):
    inputs = {"max_obj": ns.max_obj, "max_mor": ns.max_mor, "family_bound": ns.family_bound}
    if ns.count_only:
        n = sum(1 for _ in enumerate_categories(ns.max_obj, ns.max_mor))
        return Report("corpus", inputs, "computed", [], {"categories": n})
    rep = run_corpus(ns.max_obj, ns.max_mor, ns.family_bound, ns.max_cones, ns.suite or SUITES, ns.deadline)
    tallies = {s: {"checked": t.checked, "violations": t.violations, "skipped": t.skipped}
               for s, t in rep.tallies.items()}
    witnesses = [w for t in rep.tallies.values() for w in t.witnesses] + rep.errors
    verdict = "yes" if rep.holds and rep.complete else ("no" if not rep.holds else "computed")
    skipped = [] if rep.complete else [f"stopped at the deadline after {rep.categories} categories"]
    return Report("corpus", inputs, verdict, witnesses,
                  {"categories": rep.categories, "pairs": rep.pairs, "functors": rep.functors,
                   "local_right_adjoints": rep.local_right_adjoints, "complete": rep.complete,
                   "tallies": tallies}, skipped)


# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-w", "--workspace", action="append", metavar="FILE",
                        help=f"workspace file, repeatable; {BUILTIN}NAME reads a bundled fixture")
    common.add_argument("--json", action="store_true", help="print the report as JSON")
    common.add_argument("--max-obj", type=int, default=3)
    common.add_argument("--max-mor", type=int, default=6)
    common.add_argument("--family-bound", type=int, default=4)
    common.add_argument("--cap", type=int, default=None, help="size guard for derived categories")
    common.add_argument("--seed", type=int, default=None, help="reserved; enumeration is deterministic")
    parser = argparse.ArgumentParser(prog="multicat", description="Finite category computations.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, help_, arguments) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        for flags, kw in arguments:
            p.add_argument(*flags, **kw)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[Report, bool]:
    """Parse the command line and produce a report; the flag says whether JSON was requested."""
    ns = build_parser().parse_args(argv)
    saved = os.environ.get("MULTICAT_CAP")
    if ns.cap is not None:
        os.environ["MULTICAT_CAP"] = str(ns.cap)
    fn = COMMANDS[ns.command][0]
    try:
        ws = _workspace(ns)
        return fn(ns, ws), ns.json
    except (MulticatError, ValueError, OSError) as exc:
        return Report(ns.command, {"workspaces": ns.workspace or []}, "error", [],
                      {"error": str(exc), "kind": type(exc).__name__}), ns.json
    finally:
        if saved is None:
            os.environ.pop("MULTICAT_CAP", None)
        else:
            os.environ["MULTICAT_CAP"] = saved


def main(argv: Sequence[str] | None = None) -> int:
    report, as_json = run(argv)
    if as_json:
        sys.stdout.write(report.to_json())
    elif report.verdict == "error":
        sys.stderr.write(f"multicat {report.command}: {report.data['error']}\n")
    else:
        sys.stdout.write(report.to_text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
