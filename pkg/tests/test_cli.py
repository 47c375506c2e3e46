"""Command-line behavior: pipelines, exit codes, report output."""

import json
import subprocess
import sys

import pytest

from shadowlab.families import Family

RUN = [sys.executable, "-m", "shadowlab.cli"]


def run_cli(args, stdin=""):
    return subprocess.run(
        RUN + args, input=stdin, capture_output=True, text=True, timeout=300
    )


def test_construct_then_diversity_pipeline():
    made = run_cli(["construct", "L_uv", "--n", "7", "--k", "3", "--u", "3", "--v", "3"])
    assert made.returncode == 0
    div = run_cli(["diversity", "--metric", "gamma"], stdin=made.stdout)
    assert div.returncode == 0
    out = json.loads(div.stdout)
    assert out == {"metric": "gamma", "value": 1, "witness": 1}


def test_construct_output_round_trips():
    made = run_cli(["construct", "colex_seg", "--n", "5", "--t", "4", "--k", "2"])
    fam = Family.from_text(made.stdout)
    assert fam.to_text() == made.stdout


def test_shadow_pipeline():
    made = run_cli(["construct", "full_level", "--n", "5", "--k", "3"])
    sh = run_cli(["shadow", "-l", "2"], stdin=made.stdout)
    assert sh.returncode == 0
    level = run_cli(["construct", "full_level", "--n", "5", "--k", "2"])
    assert sh.stdout == level.stdout


def test_bound_kk():
    out = run_cli(["bound", "--name", "kk", "--m", "4", "--k", "2"])
    assert out.returncode == 0
    assert float(out.stdout) == pytest.approx(3.372281323, abs=1e-8)


def test_bound_exact_integer():
    out = run_cli(
        ["bound", "--name", "intersecting-diversity-size",
         "--n", "7", "--k", "3", "--u", "3"]
    )
    assert out.stdout.strip() == "13"


def test_shift_to_colex_with_trace():
    made = run_cli(["construct", "lex_seg", "--n", "5", "--t", "4", "--k", "2"])
    out = run_cli(["shift", "--op", "to-colex"], stdin=made.stdout)
    assert out.returncode == 0
    final = Family.from_text(out.stdout)
    colex = run_cli(["construct", "colex_seg", "--n", "5", "--t", "4", "--k", "2"])
    assert final == Family.from_text(colex.stdout)
    assert "daykin" in out.stderr  # the trace goes to stderr


def test_compress_alias():
    made = run_cli(["construct", "lex_seg", "--n", "5", "--t", "4", "--k", "2"])
    a = run_cli(["shift", "--op", "to-colex"], stdin=made.stdout)
    b = run_cli(["compress"], stdin=made.stdout)
    assert a.stdout == b.stdout


def test_shift_ij():
    text = "n=3 k=2\n2,3\n"
    out = run_cli(["shift", "--op", "ij", "--i", "1", "--j", "2"], stdin=text)
    assert out.stdout == "n=3 k=2\n1,3\n"


def test_influence_json():
    made = run_cli(["construct", "kalai_circle", "--n", "3"])
    out = run_cli(["influence"], stdin=made.stdout)
    data = json.loads(out.stdout)
    assert data["influences"] == [0.5, 0.5, 0.5]
    assert data["total"] == 1.5
    single = run_cli(["influence", "-i", "2"], stdin=made.stdout)
    assert json.loads(single.stdout)["influence"] == 0.5


def test_verify_pass_exit_zero():
    out = run_cli(
        ["verify", "--claim", "shadow-colex-lower", "--space", "all-families:n=4,k=2"]
    )
    assert out.returncode == 0
    rep = json.loads(out.stdout)
    assert rep["violations"] == 0
    assert rep["checked"] + rep["skipped"] == 64


def test_verify_counterexample_exit_two():
    out = run_cli(
        ["verify", "--claim", "rwise-diversity",
         "--space", "all-shifted-families:n=6,k=4",
         "--param", "r=2", "--param", "t=2"]
    )
    assert out.returncode == 2
    rep = json.loads(out.stdout)
    assert rep["violations"] > 0 and rep["exploratory"]


def test_verify_budget_exit_three():
    out = run_cli(
        ["verify", "--claim", "shadow-colex-lower",
         "--space", "all-families:n=6,k=3", "--budget", "1000"]
    )
    assert out.returncode == 3


def test_budget_env_var_override():
    proc = subprocess.run(
        RUN + ["verify", "--claim", "shadow-colex-lower",
               "--space", "all-families:n=4,k=2"],
        capture_output=True, text=True, timeout=60,
        env={**__import__("os").environ, "SHADOWLAB_BUDGET": "10"},
    )
    assert proc.returncode == 3


def test_usage_error_exit_64():
    assert run_cli(["no-such-command"]).returncode == 64
    assert run_cli(["construct", "L_uv", "--n", "7"]).returncode == 64
    assert run_cli(["verify", "--claim", "x"]).returncode == 64


def test_io_error_exit_74():
    out = run_cli(["shadow", "-l", "1", "/no/such/file"])
    assert out.returncode == 74
    bad = run_cli(["diversity"], stdin="not a family\n")
    assert bad.returncode == 74


def test_verify_output_file(tmp_path):
    target = tmp_path / "report.json"
    out = run_cli(
        ["verify", "--claim", "shadow-colex-lower",
         "--space", "all-families:n=4,k=2", "--output", str(target)]
    )
    assert out.returncode == 0
    assert json.loads(target.read_text())["claim"] == "shadow-colex-lower"
