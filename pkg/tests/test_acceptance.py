"""Acceptance criteria, each reported as one PASS/FAIL line on the terminal.

The corpus criteria run over the complete corpus of categories with at most 3
objects and 4 morphisms, every functor between them, and every cone set of at
most 2 cones. The Beck-Chevalley criterion is also run at the full bound of 6
morphisms under its ten minute budget (``MULTICAT_FULL_BUDGET`` seconds), and
the line reports how far that run got.

Tolerances are exact: every corpus criterion requires 0 violations.
Criteria that are red are marked as strict expected failures with the reason.
"""
from __future__ import annotations

import json
import os
from importlib import resources
from pathlib import Path

import pytest

from multicat.cli import main
from multicat.corpus import run_corpus
from multicat.dsl import parse, print_workspace
from multicat.errors import ParseError

from .malformed import CASES
from .test_dsl import FIXTURES, fixture_text, tables

SNAPSHOTS = Path(__file__).parent / "snapshots"
BOUND = (3, 4)
FULL_BOUND = (3, 6)
FAMILY_BOUND = 4
MAX_CONES = 2
BUDGET = float(os.environ.get("MULTICAT_FULL_BUDGET", "600"))


@pytest.fixture(scope="module")
def corpus():
    return run_corpus(*BOUND, family_bound=FAMILY_BOUND, max_cones=MAX_CONES)


@pytest.fixture(scope="module")
def full_bc():
    return run_corpus(*FULL_BOUND, suites=["beck_chevalley"], deadline=BUDGET)


def report(capsys, n: int, ok: bool, title: str, detail: str) -> None:
    with capsys.disabled():
        print(f"\nACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'} {title}: {detail}")


def where(rep) -> str:
    return (f"{rep.categories} categories, {rep.functors} functors, "
            f"{rep.local_right_adjoints} local right adjoints, ≤{rep.max_obj} objects/≤{rep.max_mor} morphisms")


def tally(rep, suite: str) -> str:
    t = rep.tallies[suite]
    return f"{t.violations} violations in {t.checked} checks"


def cli_json(argv, capsys) -> tuple[int, str]:
    capsys.readouterr()
    code = main([*argv, "--json"])
    return code, capsys.readouterr().out


def test_corpus_is_complete(corpus):
    assert corpus.complete and not corpus.errors
    assert corpus.categories == 70 and corpus.functors == 19277


# 1


def test_beck_chevalley_mates_are_isomorphisms(corpus, full_bc, capsys):
    small, full = corpus.tallies["beck_chevalley"], full_bc.tallies["beck_chevalley"]
    ok = small.violations == 0 and full.violations == 0 and full_bc.complete and full_bc.elapsed <= BUDGET
    report(capsys, 1, ok, "Beck-Chevalley mates are isomorphisms",
           f"{tally(corpus, 'beck_chevalley')} over {where(corpus)}; full bound: {tally(full_bc, 'beck_chevalley')} "
           f"over {where(full_bc)}, {'complete' if full_bc.complete else 'INCOMPLETE'} after {full_bc.elapsed:.0f} s "
           f"of a {BUDGET:.0f} s budget")
    assert small.checked > 0 and small.violations == 0
    assert full.violations == 0


@pytest.mark.xfail(strict=True, reason="the corpus with 6 morphisms holds over 2237 monoids of order 6 alone, "
                   "so the pairs of categories run to millions and the functor sweep cannot finish in 10 minutes "
                   "on one core; no violation was found in the part that was covered")
def test_beck_chevalley_full_bound_within_budget(full_bc):
    assert full_bc.complete and full_bc.elapsed <= BUDGET


# 2


@pytest.mark.xfail(strict=True, reason="the comma reading and the stable reading differ: the two-element group over "
                   "the point is stable, while its comma category has an object with two automorphisms and so no "
                   "initial object; stability agrees with the slice-wise reading instead")
def test_stable_iff_local_right_adjoint(corpus, capsys):
    sv = corpus.tallies["stable_vs_slicewise"]
    report(capsys, 2, corpus.clean("stable_vs_local"), "stable functors are the local right adjoints",
           f"comma reading: {tally(corpus, 'stable_vs_local')}; slice-wise reading: "
           f"{sv.violations} violations in {sv.checked} checks; over {where(corpus)}")
    assert corpus.clean("stable_vs_local")


def test_stable_iff_slicewise_local_right_adjoint(corpus):
    assert corpus.tallies["stable_vs_slicewise"].checked == corpus.functors
    assert corpus.clean("stable_vs_slicewise")


# 3


def test_pi_adjunction(corpus, capsys):
    ok = corpus.clean("pi_adjunction") and corpus.tallies["pi_adjunction"].checked == corpus.local_right_adjoints
    report(capsys, 3, ok, "the product-completion adjunction for right multi-adjoints",
           f"{tally(corpus, 'pi_adjunction')} at family bound {FAMILY_BOUND}, over {where(corpus)}")
    assert ok


# 4


def test_multireflective_multicolimits(corpus, capsys):
    t = corpus.tallies["multireflective"]
    ok = corpus.clean("multireflective") and t.checked > 0
    report(capsys, 4, ok, "unit-built multicolimits of full multireflective inclusions",
           f"{tally(corpus, 'multireflective')} ({t.skipped} diagrams without a target colimit), over {where(corpus)}")
    assert ok


# 5


def test_unit_rigidity(corpus, capsys):
    ok = corpus.clean("unit_rigidity") and corpus.tallies["unit_rigidity"].checked == corpus.functors
    report(capsys, 5, ok, "maps between candidates are isomorphisms",
           f"{tally(corpus, 'unit_rigidity')} over {where(corpus)}")
    assert ok


# 6


@pytest.mark.xfail(strict=True, reason="every failure is on the comma-wise multi-adjointness sub-check; e.g. an "
                   "involution s with an absorbing z, and one cone with legs id and z, keeps only the group {1, s}, "
                   "whose comma category under the object has an object with two automorphisms")
def test_gamma_theorem(corpus, capsys):
    sw = corpus.tallies["gamma_slicewise"]
    report(capsys, 6, corpus.clean("gamma_theorem"), "local objects form a locally multi-presentable inclusion",
           f"{tally(corpus, 'gamma_theorem')} (all on multi-adjointness; with the slice-wise reading "
           f"{sw.violations} violations in {sw.checked} checks), over {corpus.categories} categories "
           f"with ≤{MAX_CONES} cones, weak and strong locality")
    assert corpus.clean("gamma_theorem")


def test_gamma_theorem_slicewise(corpus):
    assert corpus.tallies["gamma_slicewise"].checked == corpus.tallies["gamma_theorem"].checked > 0
    assert corpus.clean("gamma_slicewise")
    assert all(w[3] == ("multi_adjoint",) for w in corpus.tallies["gamma_theorem"].witnesses)


# 7


V_CASES = [
    (["local-units", "-w", "builtin:v.mcat", "-f", "U", "⊥"], "v_local_units.json"),
    (["family-hom", "-w", "builtin:v.mcat", "-c", "D2", "--source", "a,b", "--target", "a"], "v_family_hom.json"),
]


def test_v_fixture_snapshot(capsys):
    outs = []
    for argv, snap in V_CASES:
        code, out = cli_json(argv, capsys)
        outs.append((code, out, (SNAPSHOTS / snap).read_text(encoding="utf-8")))
    units = json.loads(outs[0][1])["data"]
    count = json.loads(outs[1][1])["data"]["count"]
    exact = all(code == 0 and out == snap for code, out, snap in outs)
    ok = (exact and units["count"] == 2 and [u["apex"] for u in units["units"]] == ["a", "b"]
          and units["L"] == ["a", "b"] and count == 1)
    report(capsys, 7, ok, "D2 into V: two local units under ⊥",
           f"apexes {[u['apex'] for u in units['units']]}, L(⊥) = {tuple(units['L'])}, "
           f"|Π[L(⊥), a]| = {count}, JSON byte-identical to snapshot: {exact}")
    assert ok


# 8


C_CASES = [
    (["validate-fs", "-w", "builtin:chain3.mcat", "-L", "L", "-R", "R"], "chain3_validate_fs.json"),
    (["classify-lr", "-w", "builtin:chain3.mcat", "-L", "L", "-R", "R"], "chain3_classify_lr.json"),
]


def test_chain3_fixture_snapshot(capsys):
    outs = []
    for argv, snap in C_CASES:
        code, out = cli_json(argv, capsys)
        outs.append((code, out, (SNAPSHOTS / snap).read_text(encoding="utf-8")))
    fs = json.loads(outs[0][1])
    cls = json.loads(outs[1][1])["data"]
    exact = all(code == 0 and out == snap for code, out, snap in outs)
    ok = (exact and fs["verdict"] == "yes" and cls["r_objects"] == ["1", "2"] and cls["l_objects"] == ["2"]
          and cls["reflections"]["0"]["apex"] == "1")
    report(capsys, 8, ok, "factorization system on the 3-chain",
           f"validate-fs {fs['verdict']}, right objects {cls['r_objects']}, left objects {cls['l_objects']}, "
           f"reflection of 0 through {cls['reflections']['0']['apex']}, JSON byte-identical to snapshot: {exact}")
    assert ok


# 9


def test_orthogonality_lemmas(corpus, capsys):
    t = corpus.tallies["orthogonality_lemmas"]
    ok = corpus.clean("orthogonality_lemmas") and t.checked > 0
    report(capsys, 9, ok, "split monomorphism and equalized pair lemmas",
           f"{tally(corpus, 'orthogonality_lemmas')} over every orthogonal pair of classes in {corpus.categories} "
           f"categories ({t.skipped} coequalizer instances without a coequalizer)")
    assert ok


# 10


def test_parser(capsys):
    round_trips = 0
    for name in FIXTURES:
        ws = parse(fixture_text(name))
        text = print_workspace(ws)
        if tables(parse(text)) == tables(ws) and print_workspace(parse(text)) == text:
            round_trips += 1
    positioned = 0
    for text, token in CASES:
        try:
            parse(text)
        except ParseError as err:
            lines = text.split("\n")
            at = lines[err.line - 1][err.column - 1:] if err.line <= len(lines) else ""
            if err.token == token and at.startswith(token):
                positioned += 1
    ok = round_trips == len(FIXTURES) and positioned == len(CASES) == 50
    report(capsys, 10, ok, "parser round-trip and positioned errors",
           f"{round_trips}/{len(FIXTURES)} fixtures round-trip table-identically, "
           f"{positioned}/{len(CASES)} malformed inputs raise an error at the offending token")
    assert ok


def test_fixtures_are_bundled():
    for name in FIXTURES:
        assert resources.files("multicat").joinpath("fixtures", name).is_file()
