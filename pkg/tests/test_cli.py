import csv
import json
import subprocess
import sys

import pytest

from flexpuiseux.cli import main

from cases import DATA, P_BC


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_cusp(capsys):
    code, out, _ = run(["expand", "y^2 - x^3", "--vars", "x,y", "--base", "x"], capsys)
    assert code == 0
    assert out.splitlines()[0].startswith("x=t^2, y=t^3")


def test_expand_node_json(capsys):
    code, out, _ = run(["expand", "x^2 - 2*x*y - y^2", "--json"], capsys)
    slopes = sorted(b["series"]["y"][0]["re"] for b in json.loads(out))
    assert code == 0
    assert slopes == pytest.approx([-1 - 2**0.5, -1 + 2**0.5], abs=1e-12)


def test_expand_projection_text(capsys):
    code, out, _ = run(["expand", P_BC, "--vars", "b,c", "--json"], capsys)
    leads = sorted((b["series"]["c"][0]["re"], b["series"]["c"][0]["im"]) for b in json.loads(out))
    assert code == 0
    assert leads == pytest.approx([(-8 / 25, -6 / 25), (-8 / 25, 6 / 25)], abs=1e-12)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["expand", "y^2 -"], 2),
        (["expand", "y - 1"], 2),
        (["expand", "w + y"], 2),
        (["expand", "x*(y - x)"], 3),
        (["analyze", "/nonexistent.json"], 2),
        (["analyze", str(DATA / "three_quadrics_system.json"), "--lambda", "1,2,3"], 2),
        (["analyze", str(DATA / "three_quadrics_system.json"), "--trunc-order", "1"], 2),
    ],
)
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_ambiguity_exit_code(tmp_path, capsys):
    path = tmp_path / "amb.json"
    path.write_text(json.dumps({"variables": ["x", "y", "z"], "generators": ["(y - x)*(y - x - x^9)", "z"]}))
    code, _, err = run(["branches", str(path), "--trunc-order", "4"], capsys)
    assert code == 4 and "error" in err


def test_branches_of_i3(capsys):
    code, out, _ = run(["branches", str(DATA / "ideal_i3_system.json"), "--json"], capsys)
    slopes = sorted(b["series"]["y"][0]["re"] for b in json.loads(out))
    assert code == 0
    assert slopes == pytest.approx([-1 - 3**0.5, -1 + 3**0.5], abs=1e-9)


def test_plot_csv(tmp_path, capsys):
    target = tmp_path / "pts.csv"
    code, _, _ = run(["branches", str(DATA / "four_bar_system.json"), "--base", "b", "--plot-csv", str(target)], capsys)
    rows = list(csv.reader(target.open()))
    assert code == 0
    assert rows[0] == ["branch", "t", "a", "b", "c", "d"]
    assert len(rows) == 1 + 2 * 41


def test_analyze_table_and_json_agree(capsys):
    args = ["analyze", str(DATA / "three_quadrics_system.json"), "--samples", "0"]
    _, table, _ = run(args, capsys)
    _, raw, _ = run(args + ["--json"], capsys)
    data = json.loads(raw)
    assert f"multiplicity: {data['multiplicity']}  r: {data['r']}" in table
    assert len(data["classes"]) == 3


def test_zero_lambda_reproduces_removal(capsys):
    path = str(DATA / "three_quadrics_system.json")
    _, plain, _ = run(["analyze", path, "--samples", "0", "--json"], capsys)
    _, zero, _ = run(["analyze", path, "--samples", "0", "--lambda", "0,0", "--json"], capsys)
    assert plain == zero


def test_explicit_lambda_finds_cusp(capsys):
    path = str(DATA / "three_quadrics_system.json")
    code, out, _ = run(["analyze", path, "--samples", "0", "--remove", "3", "--lambda", "3:5,2", "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert {(c["k"], c["n"]) for c in data["classes"]} == {(1, 1), (2, 3)}
    assert {c["removed"] for c in data["classes"]} == {3}


def test_stdin_and_byte_identical_reruns():
    payload = (DATA / "three_quadrics_system.json").read_text()
    cmd = [sys.executable, "-m", "flexpuiseux.cli", "analyze", "-", "--samples", "3", "--json"]
    first = subprocess.run(cmd, input=payload.encode(), capture_output=True, check=True).stdout
    second = subprocess.run(cmd, input=payload.encode(), capture_output=True, check=True).stdout
    assert first == second and first


def test_triangle_framework(capsys):
    code, out, _ = run(["analyze", str(DATA / "triangle_framework.json"), "--json"], capsys)
    data = json.loads(out)
    assert code == 0
    assert data["classes"] == [] and data["r"] == 0
