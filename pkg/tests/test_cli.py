import json

import numpy as np
import pytest

import gluequant as gq
from gluequant import catalog
from gluequant.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_catalog_lists_reference_values(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert "GluedE6E6" in out
    assert "200359601790277/2859883842816000" in out
    assert "Zn" in out
    e6_line = next(ln for ln in out.splitlines() if ln.startswith("E6 "))
    assert " 3 " in e6_line


def test_catalog_formats(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema_version"] == 1
    assert any(e["name"] == "GluedD6D6" for e in data["entries"])
    code, out, _ = run(capsys, "catalog", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("name,")


def test_nsm_command_z1(capsys):
    code, out, _ = run(capsys, "nsm", "Z1", "--samples", "20000", "--seed", "3", "--streams", "2")
    assert code == 0
    assert "±" in out
    payload = json.loads(out.splitlines()[-1])
    assert abs(payload["g_hat"] - 1.0 / 12.0) < 4 * payload["sigma_hat"]


def test_nsm_json_byte_identical_for_same_config(capsys):
    args = ("nsm", "D4", "--samples", "30000", "--seed", "5", "--streams", "3", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    data = json.loads(out1)
    assert data["seed"] == 5 and data["streams"] == 3


def test_nsm_product_spec(capsys):
    code, out, _ = run(capsys, "nsm", "E6xE6*", "--samples", "20000", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["lattice_id"] == "E6xE6*"


def test_nsm_from_generator_file(capsys, tmp_path):
    path = tmp_path / "d4.txt"
    gq.write_generator_text(catalog.get("D4").lattice, path)
    code, out, _ = run(capsys, "nsm", str(path), "--samples", "20000", "--format", "json")
    assert code == 0
    assert json.loads(out)["samples"] == 20000


def test_glue_survey_smoke_d6d6(capsys):
    code, out, _ = run(capsys, "glue-survey", "D6xD6", "--samples", "10",
                       "--streams", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["group_count"] == 67
    assert data["class_count"] == 22
    assert data["nonproduct_count"] == 12
    assert len(data["rows"]) == 12
    # smoke mode: tiny samples give usable rows with large error bars
    assert all(r["two_sigma"] > 1e-3 for r in data["rows"])
    assert [r["seed"] for r in data["rows"]] == [1 + i for i in range(12)]


def test_glue_survey_smoke_e6e6(capsys):
    code, out, _ = run(capsys, "glue-survey", "E6xE6", "--samples", "2000",
                       "--streams", "1", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["group_count"] == 6
    assert data["class_count"] is None
    assert len(data["rows"]) == 6
    best = min(data["rows"], key=lambda r: r["g_hat"])
    assert best["glue_words"] in (["g00", "g11", "g22"], ["g00", "g12", "g21"])


def test_geometry_command(capsys):
    code, out, _ = run(capsys, "geometry", "Z3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["relevant_count"] == 6
    assert data["thickness"] is not None
    code, out, _ = run(capsys, "geometry", "E6", "--format", "json")
    data = json.loads(out)
    assert data["relevant_count"] == 72
    assert data["covering_radius_source"] == "asserted"


def test_geometry_command_12d(capsys):
    code, out, _ = run(capsys, "geometry", "GluedE6E6", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["relevant_count"] == 1602
    assert data["kissing"] == 144
    assert data["thickness"] == pytest.approx(7.502, abs=1e-3)
    code, out, _ = run(capsys, "geometry", "GluedD6D6", "--format", "json")
    data = json.loads(out)
    assert data["relevant_count"] == 1912
    assert data["kissing"] == 120


def test_export_import_round_trip(capsys, tmp_path):
    path = str(tmp_path / "eq4.txt")
    code, _, _ = run(capsys, "export", "GluedE6E6", path)
    assert code == 0
    code, out, _ = run(capsys, "import", path, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 12
    assert data["det_gram"] == pytest.approx(1.0, rel=1e-9)
    assert data["min_norm2"] == pytest.approx(2.0, abs=1e-9)
    again = gq.make_lattice(gq.read_generator_text(path))
    orig = catalog.get("GluedE6E6").lattice
    assert float(np.max(np.abs(again.gram - orig.gram))) < 1e-12


def test_import_12d_user_file(capsys, tmp_path):
    # stands in for any user-supplied 12x12 generator import
    path = str(tmp_path / "user12.txt")
    gq.write_generator_text(catalog.get("GluedD6D6").lattice, path)
    code, out, _ = run(capsys, "import", path)
    assert code == 0
    assert "n=12" in out


def test_malformed_file_single_error_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 2\n1 0\nbroken row\n")
    code, _, err = run(capsys, "import", str(path))
    assert code != 0
    assert err.count("\n") == 1
    assert err.startswith("error: ParseError:")


def test_unknown_lattice_error(capsys):
    code, _, err = run(capsys, "nsm", "NOPE", "--samples", "100")
    assert code == 2
    assert err.startswith("error: UnsupportedLattice:")


def test_missing_file_error(capsys):
    code, _, err = run(capsys, "import", "/nonexistent/path.txt")
    assert code == 2
    assert err.startswith("error: IOError:")
