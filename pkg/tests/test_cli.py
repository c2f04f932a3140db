from __future__ import annotations

import json
import shutil
import subprocess

import jsonschema
import pytest

from multicat.cli import COMMANDS, main, run
from multicat.report import Report, load_schema

SPEC_COMMANDS = (
    "parse homs components multiinit is-multiadjoint local-units left-adjoint beck-chevalley conerve "
    "stable-factor is-stable orthogonal validate-fs saturate factor relff glide family-hom pi-adjunction "
    "multilimit multicolimit preserve mreflect gamma-local b-gamma gamma-verify classify-lr reflect "
    "stalks forms costable corpus"
).split()

EXTRA = """
diagram P : D2 -> V { obj: a => a, b => b }
diagram Q : D2 -> D2 { obj: a => a, b => b }
"""

CHAIN_EXTRA = """
category W { objects: p, q, r arrows: s: p -> q, t: p -> r }
diagram X : W -> Chain3 { obj: p => 0, q => 1, r => 2 mor: s => 0≤1, t => 0≤2 }
"""


@pytest.fixture(scope="module")
def extra(tmp_path_factory):
    d = tmp_path_factory.mktemp("ws")
    (d / "dia.mcat").write_text(EXTRA, encoding="utf-8")
    (d / "chain.mcat").write_text(CHAIN_EXTRA, encoding="utf-8")
    (d / "bad.mcat").write_text("category Broken { objects: a arrows: f: a -> nowhere }", encoding="utf-8")
    return d


V = ["-w", "builtin:v.mcat"]
C = ["-w", "builtin:chain3.mcat"]


def invocations(d):
    D = V + ["-w", str(d / "dia.mcat")]
    X = C + ["-w", str(d / "chain.mcat")]
    return [
        (["parse", *V], 0),
        (["homs", *V, "-c", "V", "⊥", "a"], 0),
        (["components", *V, "-f", "U", "--base", "⊥"], 0),
        (["multiinit", *V, "-c", "V"], 0),
        (["multiinit", "-w", "builtin:cospan.mcat", "-c", "Cospan"], 1),
        (["initial", *V, "-c", "D2"], 1),
        (["terminal", *C], 0),
        (["weakly-initial", *V, "-c", "D2", "a,b"], 0),
        (["is-multiadjoint", *V, "-f", "U"], 0),
        (["is-multiadjoint", "-w", "builtin:cospan.mcat", "-f", "U"], 1),
        (["slicewise", *V, "-f", "U"], 0),
        (["local-units", *V, "-f", "U", "⊥"], 0),
        (["left-adjoint", *V, "-f", "U", "a"], 0),
        (["beck-chevalley", *V, "-f", "U", "id_a", "⊥≤a"], 0),
        (["conerve", *V, "-f", "U", "⊥"], 0),
        (["stable-factor", *V, "-f", "U", "⊥≤a", "a"], 0),
        (["is-stable", *V, "-f", "U"], 0),
        (["is-stable", "-w", "builtin:cospan.mcat", "-f", "U"], 1),
        (["candidate", *V, "-f", "U", "⊥≤a", "a"], 0),
        (["diag-universal", *V, "-f", "U", "⊥≤a"], 0),
        (["wide-pullbacks", *V, "-f", "U", "--arity", "2"], 0),
        (["lift", *C, "0≤1", "1≤2", "0≤1", "1≤2"], 0),
        (["orthogonal", *C, "0≤1", "1≤2"], 0),
        (["orthogonal", *C, "0≤1", "0≤1"], 1),
        (["validate-fs", *C, "-L", "L", "-R", "R"], 0),
        (["validate-fs", *C, "-L", "Ids", "-R", "Ids"], 1),
        (["saturate", *C, "-V", "L"], 0),
        (["factor", *C, "-L", "L", "-R", "R", "0≤2"], 0),
        (["relff", *V, "-f", "U"], 0),
        (["lifts-r", *C, "-f", "Id", "-R", "R"], 0),
        (["glide", *C, "-R", "R", "1,2"], 0),
        (["pullback", *C, "1≤2", "0≤2"], 0),
        (["family-hom", *V, "-c", "D2", "--source", "a,b", "--target", "a"], 0),
        (["pi-adjunction", *V, "-f", "U", "--family-bound", "2"], 0),
        (["coconnected", *V, "-c", "D2", "a"], 0),
        (["coconnected", *V, "-c", "D2", "a,b"], 1),
        (["embed", *C], 0),
        (["multilimit", *D, "-d", "P"], 0),
        (["multicolimit", *D, "-d", "Q"], 0),
        (["hom-formula", *D, "-d", "Q"], 0),
        (["preserve", *D, "-f", "U", "-d", "Q"], 0),
        (["mreflect", *D, "-f", "U", "-d", "Q"], 2),
        (["mreflect", *X, "-f", "Id", "-d", "X"], 0),
        (["connected-limit", *X, "-f", "Id", "-d", "X"], 0),
        (["gamma-local", *C, "-g", "G"], 0),
        (["b-gamma", *C, "-g", "G"], 0),
        (["gamma-verify", *C, "-g", "G"], 0),
        (["classify-lr", *C, "-L", "L", "-R", "R"], 0),
        (["reflect", *C, "-L", "L", "-R", "R", "0"], 0),
        (["cancel", *C, "-L", "L", "-P", "Ids"], 0),
        (["stalks", *C, "-P", "L", "0≤2"], 1),
        (["forms", *C, "-P", "L", "-R", "R", "2"], 0),
        (["costable", *C, "-L", "L", "-P", "Ids", "2"], 0),
        (["corpus", "--max-obj", "1", "--max-mor", "1"], 0),
        (["corpus", "--count-only", "--max-obj", "2", "--max-mor", "2"], 0),
        (["parse", "-w", str(d / "bad.mcat")], 2),
        (["parse", "-w", str(d / "missing.mcat")], 2),
        (["homs", *V, "⊥", "a"], 2),
    ]


def test_every_spec_command_exists():
    assert set(SPEC_COMMANDS) <= set(COMMANDS)


def test_every_command_is_exercised(extra):
    used = {argv[0] for argv, _ in invocations(extra)}
    assert used == set(COMMANDS)


def test_exit_codes_and_schema(extra, capsys):
    schema = load_schema()
    for argv, code in invocations(extra):
        assert main(argv) == code, argv
        capsys.readouterr()
        assert main([*argv, "--json"]) == code, argv
        out = capsys.readouterr().out
        doc = json.loads(out)
        jsonschema.validate(doc, schema)
        assert list(doc) == ["command", "inputs", "verdict", "witnesses", "data", "skipped"]
        assert doc["command"] == argv[0]
        assert Report.from_json(out).to_json() == out
        if code == 1:
            assert doc["witnesses"], argv


def test_examples_from_the_interface(extra, capsys):
    assert main(["is-multiadjoint", *V, "-f", "U"]) == 0
    assert "⊥≤a" in capsys.readouterr().out
    assert main(["multiinit", "-w", "builtin:cospan.mcat", "-c", "Cospan"]) == 1
    assert "component" in capsys.readouterr().out
    assert main(["parse", "-w", str(extra / "bad.mcat")]) == 2
    err = capsys.readouterr().err
    assert "1:46" in err and "nowhere" in err


def test_unknown_option_exits_with_two():
    with pytest.raises(SystemExit) as info:
        main(["homs", "--no-such-flag"])
    assert info.value.code == 2


def test_output_is_deterministic(capsys):
    argv = ["pi-adjunction", *V, "-f", "U", "--family-bound", "2", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_cap_flag(capsys, monkeypatch):
    monkeypatch.delenv("MULTICAT_CAP", raising=False)
    report, _ = run(["pi-adjunction", *V, "-f", "U", "--cap", "1"])
    assert report.verdict == "error" and report.data["kind"] == "SizeCap"


@pytest.mark.skipif(shutil.which("multicat") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["multicat", "local-units", *V, "-f", "U", "⊥", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert [u["apex"] for u in json.loads(proc.stdout)["data"]["units"]] == ["a", "b"]
