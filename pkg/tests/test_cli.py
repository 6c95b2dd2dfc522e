import json
import subprocess
import sys

import pytest

from iwasawa import FiniteMeasure, Measure, Point, amice, delta, mom_hat
from iwasawa.cli import main
from iwasawa.serialize import dumps, gamma_series_to_json, measure_to_json, series_to_json


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def delta_file(tmp_path, p, r, x):
    return write(tmp_path, "mu.json", measure_to_json(delta(Point(p, r, (x,)))))


def test_moments_of_delta(tmp_path, capsys):
    code, out, _ = run(["moments", "--in", delta_file(tmp_path, 5, 2, 2), "-K", "3"], capsys)
    assert code == 0
    data = json.loads(out)
    assert [c["terms"][0]["c"] for c in data["components"]] == [1, 2, 4, 8]
    assert [c["terms"][0]["i"] for c in data["components"]] == [[0], [1], [2], [3]]


def test_moments_of_zero_measure(tmp_path, capsys):
    path = write(tmp_path, "z.json", {"p": 3, "r": 2, "d": 2, "entries": []})
    code, out, _ = run(["moments", "--in", path, "-K", "4"], capsys)
    assert code == 0
    assert all(c["terms"] == [] for c in json.loads(out)["components"])


def test_moments_match_library_bit_for_bit(tmp_path, capsys):
    mu = FiniteMeasure(3, 2, 2, {(1, 2): 4, (5, 7): 2, (0, 8): 1})
    path = write(tmp_path, "mu.json", measure_to_json(mu))
    out_path = tmp_path / "out.json"
    assert main(["moments", "--in", path, "--out", str(out_path), "-K", "5"]) == 0
    assert out_path.read_text() == dumps(gamma_series_to_json(mom_hat(mu, 5)))


def test_single_moment(tmp_path, capsys):
    code, out, _ = run(["moments", "--in", delta_file(tmp_path, 5, 2, 2), "-k", "3"], capsys)
    assert code == 0
    assert json.loads(out)["terms"] == [{"i": [3], "c": 8}]


@pytest.mark.parametrize("x,expected", [(1, [1, 1, 0, 0, 0]), (0, [1, 0, 0, 0, 0])])
def test_amice_of_delta(tmp_path, capsys, x, expected):
    code, out, _ = run(["amice", "--in", delta_file(tmp_path, 3, 3, x), "--n-max", "4", "--r", "1"], capsys)
    assert code == 0
    assert json.loads(out) == {"p": 3, "r": 1, "coeffs": expected}


def test_amice_matches_library(tmp_path, capsys):
    mu = FiniteMeasure(3, 4, 1, {(5,): 2, (40,): 7})
    path = write(tmp_path, "mu.json", measure_to_json(mu))
    code, out, _ = run(["amice", "--in", path, "--n-max", "8"], capsys)
    assert code == 0
    assert out == dumps(series_to_json(amice(Measure(mu), 8)))


def test_amice_insufficient_precision(tmp_path, capsys):
    code, out, err = run(["amice", "--in", delta_file(tmp_path, 3, 4, 2), "--n-max", "9", "--r", "1"], capsys)
    assert code == 3
    assert out == ""
    e = json.loads(err)
    assert e["error"] == "PrecisionExhausted"
    assert (e["needed"], e["available"]) == (5, 4)


def test_laplace_and_trace(tmp_path, capsys):
    code, out, _ = run(["laplace", "--in", delta_file(tmp_path, 5, 2, 3), "-K", "3"], capsys)
    assert code == 0 and json.loads(out)["coeffs"] == [1, 3, 9, 2]
    code, out, _ = run(["trace", "--in", delta_file(tmp_path, 3, 2, 7)], capsys)
    assert code == 0 and json.loads(out) == {"p": 3, "r": 1, "d": 1, "entries": [{"x": [1], "c": 1}]}
    code, _, _ = run(["trace", "--in", delta_file(tmp_path, 3, 2, 7), "--level", "3"], capsys)
    assert code == 3


def test_comp_and_interpolate(tmp_path, capsys):
    code, out, _ = run(["comp", "--in", delta_file(tmp_path, 5, 2, 2), "-k", "2"], capsys)
    assert code == 0
    assert json.loads(out)["terms"] == [{"i": [2, 0], "c": 1}, {"i": [1, 1], "c": 2}, {"i": [0, 2], "c": 4}]
    code, out, _ = run(["interpolate", "--in", delta_file(tmp_path, 5, 2, 3), "--N", "2", "-k", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["holds"] is True
    assert data["lhs"] == data["rhs"] == {"k": 2, "terms": [{"i": [2], "c": 11}]}


def test_ml_command(tmp_path, capsys):
    tower = {"levels": [{"p": 3, "r": 1, "n": 1}] * 4, "transitions": [[[3]]] * 3}
    code, out, _ = run(["ml", "--in", write(tmp_path, "t.json", tower)], capsys)
    assert code == 0
    data = json.loads(out)
    assert (data["verdict"], data["s"], data["zero_at"]) == ("ZeroAt", 1, 1)
    tower = {"levels": [{"p": 3, "r": 2, "n": 2}] * 4, "transitions": [[[1, 0], [0, 1]]] * 3}
    path = write(tmp_path, "t.json", tower)
    code, out, _ = run(["ml", "--in", path], capsys)
    assert json.loads(out)["verdict"] == "StabilizedAt" and json.loads(out)["s"] == 1
    code, out, _ = run(["ml", "--in", path, "--r", "2"], capsys)
    assert json.loads(out) | {"images": None} == {
        "verdict": "Undetermined",
        "window": 1,
        "base": 2,
        "stabilized_at": None,
        "zero_at": None,
        "images": None,
    }
    assert run(["ml", "--in", path, "--r", "3"], capsys)[0] == 2


def test_verify_is_deterministic_and_counts_instances(capsys):
    code, first, _ = run(["verify", "--seed", "7"], capsys)
    assert code == 0
    code, second, _ = run(["verify", "--seed", "7"], capsys)
    assert first == second
    data = json.loads(first)
    assert data["seed"] == 7 and data["passed"] is True
    names = [s["name"] for s in data["suites"]]
    assert names == sorted(names) == sorted(
        ["ring-hom", "trace-compat", "amice-mult", "interpolation", "gamma-identities", "log-transition", "ml-examples"]
    )
    counts = {s["name"]: s["instances"] for s in data["suites"]}
    assert counts["ring-hom"] == 200 and counts["trace-compat"] == 200 and counts["interpolation"] == 500
    assert all(s["failed"] == 0 for s in data["suites"])


def test_verify_single_suite(capsys):
    code, out, _ = run(["verify", "--suite", "ml-examples", "--seed", "1"], capsys)
    assert code == 0
    assert [s["name"] for s in json.loads(out)["suites"]] == ["ml-examples"]


@pytest.mark.parametrize(
    "payload",
    [
        "not json",
        json.dumps({"p": 4, "r": 1, "d": 1, "entries": []}),
        json.dumps({"p": 3, "r": 0, "d": 1, "entries": []}),
        json.dumps({"p": 3, "r": 1, "d": 2, "entries": [{"x": [1], "c": 1}]}),
        json.dumps({"p": 3, "r": 1, "d": 1, "entries": [{"x": [1.5], "c": 1}]}),
        json.dumps({"p": 3, "r": 1}),
    ],
)
def test_malformed_input(tmp_path, capsys, payload):
    path = tmp_path / "bad.json"
    path.write_text(payload)
    code, out, err = run(["moments", "--in", str(path), "-K", "2"], capsys)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_flag_validation(tmp_path, capsys):
    path = delta_file(tmp_path, 5, 2, 2)
    assert run(["moments", "--in", path, "--p", "3"], capsys)[0] == 2
    assert run(["moments", "--in", path, "--p", "6"], capsys)[0] == 2
    assert run(["moments", "--in", path, "-K", "-1"], capsys)[0] == 2
    assert run(["interpolate", "--in", path, "--N", "0"], capsys)[0] == 2
    assert run(["moments", "--in", str(tmp_path / "missing.json")], capsys)[0] == 2


def test_dense_cap(tmp_path, capsys):
    mu = FiniteMeasure(5, 2, 1, {(x,): 1 for x in range(10)})
    path = write(tmp_path, "mu.json", measure_to_json(mu))
    assert run(["moments", "--in", path, "--dense-cap", "5"], capsys)[0] == 2
    assert run(["moments", "--in", path, "--dense-cap", "10"], capsys)[0] == 0


def test_console_entry_point(tmp_path):
    path = delta_file(tmp_path, 5, 2, 2)
    cmd = [sys.executable, "-m", "iwasawa.cli", "laplace", "--in", path, "-K", "2"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["coeffs"] == [1, 2, 4]
