from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest
from corpus import corpus

from supergeo.cli import COMMANDS, main, run
from supergeo.expr import parse
from supergeo.superpoly import render

PASSING = [
    ["azumaya-check"],
    ["canonicalize"],
    ["canonicalize", "--expr", "3/2 + i"],
    ["group-check"],
    ["invariant-check", "--n", "1", "--i", "0", "--expr", "z1*z0^-1 - zeta0*zeta1*z0^-2"],
    ["decompose", "--n", "2", "--i", "1", "--expr", "z0*z1^-1 - zeta1*zeta0*z1^-2"],
    ["identities", "--n", "2"],
    ["bundle-check", "--n", "1"],
    ["opi-relations", "--n", "2"],
    ["global-sections", "--n", "1", "--degree-bound", "2"],
    ["global-sections", "--n", "0", "--degree-bound", "2", "--laurent"],
    ["compose", "--seed", "3"],
    ["morita-check"],
]

FAILING = [
    ["invariant-check", "--n", "1", "--i", "0", "--expr", "z1*z0^-1"],
    ["decompose", "--n", "1", "--expr", "z1"],
]

USAGE = [
    [],
    ["no-such-command"],
    ["identities", "--n", "two"],
    ["invariant-check", "--n", "1", "--expr", "z1 +"],
    ["invariant-check", "--n", "1", "--expr", "q7"],
    ["invariant-check", "--n", "1", "--i", "0", "--expr", "z1^-1"],
    ["invariant-check", "--n", "1", "--i", "5", "--expr", "z1"],
    ["canonicalize", "--expr", "alpha"],
]


def test_every_command_is_exercised():
    assert {argv[0] for argv in PASSING} == set(COMMANDS)


@pytest.mark.parametrize("argv", PASSING, ids=" ".join)
def test_exit_zero_on_pass(argv):
    code, report, _ = run(argv)
    assert code == 0 and report.verdict == "pass" and report.witnesses == []


@pytest.mark.parametrize("argv", FAILING, ids=" ".join)
def test_exit_one_with_witness(argv):
    code, report, output = run(argv + ["--json"])
    assert code == 1
    doc = json.loads(output)
    assert doc["verdict"] == "fail" and doc["witnesses"]


@pytest.mark.parametrize("argv", USAGE, ids=" ".join)
def test_exit_two_on_usage_errors(argv, capsys):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_identities_report_four_blocks():
    code, _, output = run(["identities", "--n", "2", "--json"])
    doc = json.loads(output)
    assert code == 0 and doc["verdict"] == "pass"
    blocks = doc["certificate"]["identities"]
    assert sorted(blocks) == ["1", "2", "3", "4"]
    assert all(b["failed"] == 0 and b["checked"] > 0 for b in blocks.values())


def test_invariant_check_witness_carries_tau():
    _, report, _ = run(["invariant-check", "--n", "1", "--i", "0", "--expr", "z1*z0^-1"])
    [witness] = report.witnesses
    assert witness["defect"] == parse(
        "t^-1*tau*(zeta0*z1*z0^-2 - zeta1*z0^-1)", witness["defect"].ring
    )


def test_azumaya_prints_the_four_matrices():
    _, _, output = run(["azumaya-check", "--json"])
    psi = json.loads(output)["certificate"]["psi"]
    assert psi == {
        "1(x)1": [["1", "0"], ["0", "1"]],
        "theta(x)1": [["0", "-1"], ["1", "0"]],
        "1(x)theta": [["0", "1"], ["1", "0"]],
        "theta(x)theta": [["-1", "0"], ["0", "1"]],
    }


def test_scalars_serialize_exactly():
    _, _, output = run(["azumaya-check", "--json"])
    coeffs = json.loads(output)["certificate"]["coefficients"]
    assert coeffs["E11"]["1(x)1"] == {"re": "1/2", "im": "0"}


def test_json_is_byte_stable(monkeypatch):
    argv = ["compose", "--seed", "11", "--json"]
    first, second = run(argv)[2], run(argv)[2]
    assert first == second
    monkeypatch.setenv("SUPERGEO_SEED", "11")
    assert run(["compose", "--json"])[2] == first
    monkeypatch.setenv("SUPERGEO_SEED", "not-a-number")
    assert run(["compose", "--json"])[0] == 2


def test_text_output_names_the_verdict():
    _, _, output = run(["morita-check"])
    assert output.splitlines()[0] == "morita-check: PASS"


def test_end_to_end_subprocess():
    env = dict(os.environ)
    env.pop("SUPERGEO_SEED", None)
    cmd = [sys.executable, "-m", "supergeo.cli"]
    outs = [
        subprocess.run(cmd + ["canonicalize", "--json"], capture_output=True, env=env, check=False)
        for _ in range(2)
    ]
    assert [o.returncode for o in outs] == [0, 0]
    assert outs[0].stdout == outs[1].stdout
    bad = subprocess.run(cmd + ["identities", "--n"], capture_output=True, env=env, check=False)
    assert bad.returncode == 2 and bad.stderr


def test_round_trip_corpus():
    items = corpus()
    assert len(items) >= 500
    for ring, p in items:
        assert parse(render(p), ring) == p
