import json
import subprocess
import sys
from pathlib import Path

import pytest

from greedybase.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def jrun(*argv):
    code, out, err = run([*argv, "--format", "json"])
    assert code == 0, err
    return json.loads(out)


def test_greedy():
    assert jrun("greedy", "fixture:S4", "--max")["results"]["greedy_max"] == 3
    assert jrun("greedy", "fixture:C5")["results"]["trace"]["base"] == [0]
    assert jrun("greedy", "fixture:M12", "--max")["results"]["greedy_max"] == 5
    r = jrun("greedy", str(DATA / "s4.json"), "--policy", "random", "--seed", "3")
    assert r["results"]["length"] == 3 and r["seed"] == 3


def test_bounds_paths_agree():
    live = jrun("bounds", "fixture:S4", "--c", "3", "--stabilizer", "0")["results"]
    assert live["qhat"] == {"num": "7", "den": "8"}
    assert live["certificate"]["verdict"] == "established"
    assert live["certificate"]["conclusion"] == "b(G) <= 3"
    ingested = jrun("bounds", "--class-data", str(DATA / "s4_s3_classes.json"), "--c", "3")["results"]
    assert ingested["qhat"] == live["qhat"]
    sub = jrun("bounds", "fixture:S4", "--subgroup-file", str(DATA / "s3_in_s4.json"))["results"]
    assert sub["qhat"] == live["qhat"]
    assert jrun("bounds", "fixture:C6", "--stabilizer", "0")["results"]["qhat"] == {"num": "0", "den": "1"}


def test_bounds_rejects_uncertified(tmp_path):
    doc = (DATA / "s4_s3_classes.json").read_text().replace('"complete": true', '"complete": false')
    p = tmp_path / "c.json"
    p.write_text(doc)
    code, _, err = run(["bounds", "--class-data", str(p)])
    assert code != 0 and "certified" in err


def test_certify():
    r = jrun("certify", "--greedy4", "13571955000", "11174042880", "3523215360", "3/10")
    assert r["results"]["certificate"]["verdict"] == "established"
    assert jrun("certify", "--prop-key", "3", "4", "7/8")["results"]["certificate"]["verdict"] == "established"
    r = jrun("certify", "--cor-int", "5", "4", "24", "1/2")["results"]["certificate"]
    assert r["verdict"] == "not-established"
    assert r["values"]["t"] == {"num": "2", "den": "15"}
    assert jrun("certify", "--compare", "1536", "4300")["results"]["certificate"]["verdict"] == "established"


@pytest.mark.parametrize(
    "argv",
    [
        ["certify", "--prop-key", "3", "4", "0.5"],
        ["certify", "--prop-key", "3", "4", "1"],
        ["certify", "--greedy4", "10", "9", "6", "3/2"],
        ["greedy", "/nonexistent.json"],
        ["rank", "fixture:E16_trap", "--stabilizer", "0"],
        ["rank", "--index", "10"],
        ["bounds", "fixture:S4"],
        ["nosuchcommand"],
    ],
)
def test_errors_are_nonzero(argv):
    code, out, _ = run(argv)
    assert code != 0 and out == ""


def test_rank():
    r = jrun("rank", "--index", "148642560", "--rank", "14")
    assert r["results"]["subdegree_lower_bound"] == {"num": "11434043", "den": "1"}
    r = jrun("rank", "fixture:S4", "--stabilizer", "0")["results"]["profile"]
    assert r["rank"] == 2 and r["largest_subdegree"] == 3
    assert jrun("rank", "--index", "9", "--rank", "2")["results"]["subdegree_lower_bound"]["num"] == "8"


def test_search():
    r = jrun("search", "fixture:S4", str(DATA / "s3_in_s4.json"), "--threshold", "3", "--seed", "1")
    out = r["results"]["outcome"]
    assert out["success"] and out["intersection_order"] == "2"
    r = jrun("search", "fixture:S4", str(DATA / "s3_in_s4.json"), "--threshold", "7", "--verbose")
    assert r["results"]["outcome"]["iterations_used"] == 1 and r["results"]["outcome"]["trace"]


def test_same_seed_same_bytes():
    argv = ["search", "fixture:M11", "fixture:M11", "--threshold", "1", "--max-iters", "5", "--seed", "4", "--format", "json"]
    assert run(argv) == run(argv)
    argv = ["greedy", "fixture:M12", "--policy", "random", "--seed", "9", "--format", "json"]
    assert run(argv) == run(argv)


def test_json_roundtrip_and_text_agree():
    code, out, _ = run(["bounds", "fixture:S5", "--stabilizer", "0", "--format", "json"])
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc
    code, text, _ = run(["bounds", "fixture:S5", "--stabilizer", "0"])
    q = doc["results"]["qhat"]
    assert f"qhat: {q['num']}/{q['den']}" in text


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "greedybase.cli", "rank", "--index", "148642560", "--rank", "14"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "subdegree_lower_bound: 11434043" in proc.stdout
