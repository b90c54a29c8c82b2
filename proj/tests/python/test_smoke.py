import json
import os
import pathlib
import stat

import pytest

import quantasp

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
STUBS = pathlib.Path(__file__).resolve().parent.parent / "stubs"


def fixture(name):
    return (FIXTURES / name).read_text()


def test_answer_sets():
    assert quantasp.answer_sets("a :- not b. b :- not a.") == [["a"], ["b"]]
    assert quantasp.answer_sets("p :- not p.") == []


def test_normalize_round_trip():
    text = fixture("exists_forall.aspq")
    once = quantasp.normalize(text)
    assert quantasp.normalize(once) == once


def test_coherence_and_solve_agree():
    for name in ["exists_forall.aspq", "guess_check.aspq", "pruned_exists.aspq", "pruned_forall.aspq"]:
        text = fixture(name)
        expected = "COHERENT" if quantasp.coherent(text) else "INCOHERENT"
        for encoding in ["base", "wf", "wf+gc"]:
            assert quantasp.solve(text, encoding=encoding) == expected, (name, encoding)


def test_well_founded_levels():
    levels = quantasp.well_founded(fixture("pruned_exists.aspq"))
    assert levels[0]["false"] == ["a"]
    assert levels[0]["residual"] == "p :- not p.\n"
    assert levels[-1]["quantifier"] == "constraint"


def test_compile_reports_pruning():
    text, report = quantasp.compile(fixture("pruned_exists.aspq"), encoding="wf", format="qcir")
    assert text.startswith("#QCIR-G14\n")
    assert report["pruned_at"] == 1
    assert report["constant_result"] is False


def test_compile_guess_check():
    text, report = quantasp.compile(fixture("guess_check.aspq"), encoding="wf+gc")
    assert text.startswith("p cnf ")
    assert report["tseytin_vars"] == 0
    assert report["warnings"] == []


def test_gc_chain():
    out = quantasp.gc_chain(fixture("guess_check.aspq"))
    assert "_u_1" in out


def test_features_and_selection():
    f = quantasp.features(fixture("features/two_levels.aspq"))
    assert len(f) == 21
    expected = json.loads((FIXTURES / "features/two_levels.json").read_text())
    assert f == pytest.approx(expected)
    assert quantasp.select_backend(fixture("exists_forall.aspq")) == "quabs"
    table = json.dumps([{"when": "QL>=2", "use": "x"}, {"default": "y"}])
    assert quantasp.select_backend(fixture("exists_forall.aspq"), table) == "x"


def test_external_stub(tmp_path):
    config = tmp_path / "solvers.json"
    config.write_text(json.dumps({"solvers": [
        {"name": "sat", "command": f"sh {STUBS / 'sat.sh'} {{input}}"},
        {"name": "sleeper", "command": f"sh {STUBS / 'sleeper.sh'} {{input}}", "timeout_s": 1},
    ]}))
    verdict, backend, _ = quantasp.solve_external(fixture("exists_forall.aspq"), str(config))
    assert (verdict, backend) == ("COHERENT", "sat")
    verdict, _, diagnostic = quantasp.solve_external(fixture("exists_forall.aspq"), str(config), backend="sleeper")
    assert verdict == "UNKNOWN"
    assert "timeout" in diagnostic


def test_errors():
    with pytest.raises(quantasp.ParseError):
        quantasp.normalize("%@exists\na :- .\n%@constraint\n")
    with pytest.raises(quantasp.ParseError):
        quantasp.normalize("%@exists\n_na_x.\n%@constraint\n")
    with pytest.raises(quantasp.GcError):
        quantasp.gc_chain("%@exists\na.\n%@exists\nb.\n%@constraint\n")
    assert issubclass(quantasp.ParseError, quantasp.Error)
