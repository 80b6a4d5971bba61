import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from crsym import catalog, cli
from crsym.encoding import (
    SchemaError,
    decode_coeff,
    dumps,
    field_from_json,
    field_to_json,
    model_from_json,
    model_to_json,
)
from crsym.fields import grading_element
from crsym.model import ValidationError
from crsym.structure import Discrepancy

import make_golden

GOLDEN = Path(__file__).parent / "golden"


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj), encoding="utf-8")
    return str(p)


def _example(tmp_path, name):
    model = catalog.get(name)
    return _write(tmp_path, f"{name}.json", model_to_json(model))


# -- encoding -------------------------------------------------------------


def test_coefficient_forms():
    assert decode_coeff(3) == decode_coeff([3, 0]) == decode_coeff([3, 1, 0, 1])
    assert decode_coeff([1, 2, -1, 3]).im == -decode_coeff([0, 1, 1, 3]).im
    for bad in (1.5, "1", [1, 2, 3], [1, 0, 0, 1, 0], True, [1, 0, 1, 0]):
        with pytest.raises(SchemaError):
            decode_coeff(bad)


@pytest.mark.parametrize("name", list(catalog.CATALOG))
def test_model_roundtrip(name):
    m = catalog.get(name)
    back = model_from_json(json.loads(json.dumps(model_to_json(m))))
    assert back.phi == m.phi and back.name == m.name


def test_field_roundtrip():
    x = grading_element(3, 4) + catalog.imag_diagonal_rotation()
    assert field_from_json(json.loads(json.dumps(field_to_json(x)))) == x


@pytest.mark.parametrize(
    "spec",
    [
        [],
        {"n": 3},
        {"pqr": {"alpha": [1, 0, 0]}, "terms": []},
        {"pqr": {"alpha": [1, 0], "beta": [0, 1, 0], "gamma": [0, 0, 1]}},
        {"pqr": {"alpha": [1, 0, -1], "beta": [0, 1, 0], "gamma": [0, 0, 1]}},
        {"n": 2, "terms": [{"z": [1, 0], "coeff": 1}]},
        {"n": 2, "terms": [{"z": [1, 0], "zbar": [1, 0], "coeff": 0.5}]},
    ],
)
def test_schema_errors(spec):
    with pytest.raises(SchemaError):
        model_from_json(spec)


def test_validation_errors_surface():
    with pytest.raises(ValidationError):
        model_from_json({"n": 1, "terms": [{"z": [2], "zbar": [0], "coeff": 1}]})


# -- golden reports -------------------------------------------------------


@pytest.mark.parametrize("name", list(catalog.CATALOG))
def test_golden_report(name):
    expected = (GOLDEN / f"{name}.json").read_text(encoding="utf-8")
    assert make_golden.render(name) == expected


@pytest.mark.parametrize("name", ["dim13-l3", "imag-diag"])
def test_report_bytes_stable_across_processes(tmp_path, name):
    path = _example(tmp_path, name)
    outs = []
    for seed in ("0", "12345"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        env.pop("CRSYM_DIAG_WEIGHTS", None)
        res = subprocess.run([sys.executable, "-m", "crsym", "analyze", path], capture_output=True, text=True, env=env)
        assert res.returncode == 0, res.stderr
        outs.append(res.stdout)
    assert outs[0] == outs[1] == (GOLDEN / f"{name}.json").read_text(encoding="utf-8")


# -- analyze --------------------------------------------------------------


def test_analyze_odd_model(tmp_path, capsys):
    assert cli.main(["analyze", _example(tmp_path, "dim13-l3")]) == 0
    out = capsys.readouterr().out
    assert '"gc": 3' in out
    data = json.loads(out)
    assert data["totals"] == {"computed": 13, "stated": 13, "agrees": True}
    assert cli.main(["analyze", _example(tmp_path, "dim13-l3"), "--format", "text"]) == 0
    assert "total dimension: 13 (stated 13, agreement)" in capsys.readouterr().out


def test_analyze_five_term_model(tmp_path, capsys):
    assert cli.main(["analyze", _example(tmp_path, "imag-diag")]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["g1"] == 0
    assert data["structure"]["flags"]["imaginary_diagonal"] is True


def test_analyze_degenerate(tmp_path, capsys):
    path = _write(tmp_path, "deg.json", {"pqr": {"alpha": [1, 1, 1], "beta": [1, 1, 1], "gamma": [1, 1, 1]}})
    assert cli.main(["analyze", path]) == cli.EXIT_DEGENERATE == 3
    data = json.loads(capsys.readouterr().out)
    assert data["certificate"]["nondegenerate"] is False
    assert data["certificate"]["witness"]


def test_analyze_schema_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    for path in (str(bad), str(tmp_path / "missing.json"), _write(tmp_path, "v.json", {"n": 1, "terms": [{"z": [2], "zbar": [0], "coeff": 1}]})):
        with pytest.raises(SystemExit) as exc:
            cli.main(["analyze", path])
        assert exc.value.code == 2
    assert "error" in capsys.readouterr().err


def test_analyze_discrepancy_exit(tmp_path, monkeypatch, capsys):
    real = cli.annotate

    def corrupt(report):
        pred = real(report)
        report.structure["discrepancies"].append(Discrepancy("gc_dimension", 4, 3).to_json())
        return pred

    monkeypatch.setattr(cli, "annotate", corrupt)
    assert cli.main(["analyze", _example(tmp_path, "gc3")]) == cli.EXIT_DISCREPANCY == 4
    capsys.readouterr()


# -- check-field ----------------------------------------------------------


def test_check_field_tangent_rotation(tmp_path, capsys):
    f = _write(tmp_path, "x.json", field_to_json(catalog.imag_diagonal_rotation()))
    assert cli.main(["check-field", _example(tmp_path, "imag-diag"), f]) == 0
    assert capsys.readouterr().out.splitlines() == ["weight: 0", "tangent: yes"]


def test_check_field_not_tangent(tmp_path, capsys):
    f = _write(tmp_path, "d1.json", {"n": 3, "F": [[{"z": [0, 0, 0], "coeff": 1}], [], []]})
    assert cli.main(["check-field", _example(tmp_path, "dim13-l3"), f]) == cli.EXIT_NOT_TANGENT
    out = capsys.readouterr().out.splitlines()
    assert out[:2] == ["weight: -1/4", "tangent: no"]
    assert out[2] == "residual: -z2^3 - zb2^3"


def test_check_field_grading_element(tmp_path, capsys):
    for name in ("gc3", "dim9-k1"):
        m = catalog.get(name)
        f = _write(tmp_path, "e.json", field_to_json(grading_element(m.n, m.d)))
        assert cli.main(["check-field", _example(tmp_path, name), f]) == 0
        assert capsys.readouterr().out.splitlines() == ["weight: 0", "tangent: yes"]


def test_check_field_inhomogeneous_and_bad(tmp_path, capsys):
    f = _write(tmp_path, "m.json", {"n": 3, "F": [[{"z": [0, 0, 0], "coeff": 1}], [], []], "G": [{"z": [0, 0, 0], "w": 0, "coeff": 1}]})
    cli.main(["check-field", _example(tmp_path, "dim13-l3"), f])
    assert capsys.readouterr().out.splitlines()[0] == "weight: inhomogeneous"
    bad = _write(tmp_path, "b.json", {"n": 2, "F": [[], []]})
    assert cli.main(["check-field", _example(tmp_path, "dim13-l3"), bad]) == 2


# -- examples -------------------------------------------------------------


def test_examples_command(capsys):
    assert cli.main(["examples"]) == 0
    names = capsys.readouterr().out.split()
    assert set(catalog.CATALOG) <= set(names)
    for name in catalog.CATALOG:
        assert cli.main(["examples", name]) == 0
        assert model_from_json(json.loads(capsys.readouterr().out)).phi == catalog.get(name).phi
    assert cli.main(["examples", "imag-diag-rotation"]) == 0
    assert field_from_json(json.loads(capsys.readouterr().out)) == catalog.imag_diagonal_rotation()
    assert cli.main(["examples", "nope"]) == 2


def test_odd_family_parity_enforced():
    with pytest.raises(ValueError):
        catalog.odd_family_model(4)
    assert catalog.odd_family_model(5).d == 6


# -- scan -----------------------------------------------------------------


def test_scan_dedupe_on_off(tmp_path, capsys):
    on, off = tmp_path / "on.json", tmp_path / "off.json"
    assert cli.main(["scan", "--degree-bound", "4", "--dedupe", "-o", str(on)]) == 0
    assert cli.main(["scan", "--degree-bound", "4", "-o", str(off)]) == 0
    capsys.readouterr()
    a, b = json.loads(on.read_text()), json.loads(off.read_text())
    sa, sb = a["summary"], b["summary"]
    assert sa["models"] < sb["models"]
    assert all(v == sa["models"] for v in sa["checks_passed"].values())
    assert all(v == sb["models"] for v in sb["checks_passed"].values())
    assert sa["ranges"] == sb["ranges"]
    assert sa["discrepancies"] == sb["discrepancies"] == []


def test_scan_deterministic_and_parallel(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["scan", "--degree-bound", "4", "--dedupe", "-o", str(p1)]) == 0
    assert cli.main(["scan", "--degree-bound", "4", "--dedupe", "--jobs", "2", "-o", str(p2)]) == 0
    capsys.readouterr()
    assert p1.read_bytes() == p2.read_bytes()


def test_scan_random_coefficients_same_dimensions(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main(["scan", "--degree-bound", "4", "--dedupe", "-o", str(p1)]) == 0
    assert cli.main(["scan", "--degree-bound", "4", "--dedupe", "--random-coefficients", "--seed", "4", "-o", str(p2)]) == 0
    capsys.readouterr()
    a, b = json.loads(p1.read_text()), json.loads(p2.read_text())
    assert [m["dims"] for m in a["models"]] == [m["dims"] for m in b["models"]]
    assert any(m["spec"]["cP"] != [1, 1, 0, 1] for m in b["models"])


def test_scan_bad_bound(capsys):
    assert cli.main(["scan", "--degree-bound", "1", "-o", "-"]) == 2


def test_dumps_is_stable():
    obj = {"b": 1, "a": [1, 2]}
    assert dumps(obj) == dumps(json.loads(dumps(obj)))
