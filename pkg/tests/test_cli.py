import json
import subprocess
import sys

import pytest

from levelgraph_lab.cli import main
from levelgraph_lab.corpus import CorpusSpec, default_corpus
from levelgraph_lab.fixtures import fixture_path, load_fixture
from levelgraph_lab.graph import load_graph
from levelgraph_lab.suite import command_result, enumerate_lines, format_report, run_suite


def _cli(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "levelgraph_lab", *args], input=stdin, capture_output=True, text=True, check=False
    )
    return proc.returncode, proc.stdout, proc.stderr


CASES = [
    ("validate", {}),
    ("slopes", {}),
    ("twist", {}),
    ("prongs", {}),
    ("monoid", {}),
    ("ideal", {"scheme": "j"}),
    ("ideal", {"scheme": "nguyen"}),
    ("ideal", {"scheme": "general-j"}),
    ("ideal", {"scheme": "local-maxima"}),
    ("fan", {"method": "newton"}),
    ("fan", {"method": "hyperplane"}),
    ("check-gluing", {}),
    ("fan-check", {"lemma": "equality"}),
    ("fan-check", {"lemma": "principal"}),
]


@pytest.mark.parametrize("command,options", CASES)
@pytest.mark.parametrize("output", ["json", "table"])
def test_cli_matches_library_byte_for_byte(command, options, output):
    path = fixture_path("star")
    flags = [f"--{k}={v}" for k, v in options.items()]
    code, out, _ = _cli(command, path, *flags, f"--output={output}")
    report = run_suite(command, [load_graph(path)], **options)
    assert out == format_report(report, output)
    assert code == report.exit_code == 0


def test_prongs_on_triangle():
    code, out, _ = _cli("prongs", fixture_path("triangle3"))
    rec = json.loads(out)
    assert code == 0 and rec["result"] == {"pm_classes": 1, "K": [3]}


def test_validate_corrupted_fixture(tmp_path):
    data = load_fixture("star").to_dict()
    data["edges"][0]["kappa"] = 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = _cli("validate", str(bad))
    rec = json.loads(out)
    assert code == 1 and not rec["ok"]
    assert {v["kind"] for v in rec["result"]["violations"]} == {"degree"}
    assert rec["graph"] == data


def test_stdin_and_structural_errors():
    text = open(fixture_path("star")).read()
    code, out, _ = _cli("validate", "-", stdin=text)
    assert code == 0 and json.loads(out)["ok"]
    code, _, err = _cli("validate", "-", stdin='{"vertices": [], "legs": [], "edges": []}')
    assert code == 2 and "vertex list is empty" in err
    code, _, err = _cli("validate", "-", stdin="{")
    assert code == 2 and "line 1" in err


def test_enumerate_matches_library():
    code, out, _ = _cli("enumerate", "--n", "5", "--mu=3,-1,-1,-1,-2")
    assert code == 0 and out == enumerate_lines(CorpusSpec((3, -1, -1, -1, -2)))
    assert len(out.splitlines()) == 26
    assert main(["enumerate", "--n", "4", "--mu=3,-1,-1,-1,-2"]) == 2


def test_corpus_run_is_order_stable_under_jobs():
    serial = format_report(run_suite("check-gluing", default_corpus()))
    code, out, _ = _cli("check-gluing", "--jobs", "3")
    assert code == 0 and out == serial


def test_sample_is_seeded():
    a = _cli("prongs", "--sample", "5", "--seed", "11")[1]
    b = _cli("prongs", "--sample", "5", "--seed", "11")[1]
    c = _cli("prongs", "--sample", "5", "--seed", "12")[1]
    assert a == b and len(a.splitlines()) == 5 and a != c


def test_unknown_command_errors():
    with pytest.raises(ValueError):
        run_suite("frobnicate", [])
    with pytest.raises(ValueError):
        command_result("frobnicate", load_fixture("star"))
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_non_tree_command_reports_failure():
    rec = command_result("slopes", load_fixture("triangle3"))
    assert not rec["ok"] and "tree" in rec["error"] and "graph" in rec
