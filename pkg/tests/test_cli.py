import csv
import io
import json

import pytest

from singcurv import catalog
from singcurv.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, _ = run(*argv, "--json")
    return code, json.loads(out)


def test_plane_json_schema():
    code, rep = run_json("plane", "--f", catalog.PLANE[1], "--point", "0,0")
    assert code == 0
    assert set(rep) == {"version", "kind", "f", "g", "point", "multiplicity", "branches", "errors"}
    assert rep["kind"] == "plane" and rep["multiplicity"] == 2 and rep["errors"] == []
    assert len(rep["branches"]) == 2
    for b in rep["branches"]:
        assert set(b) >= {"tangent", "tangent_is_real", "multiplicity", "curvature", "diagnostics"}
        assert b["curvature"]["finite"] and b["curvature"]["value"] == pytest.approx(2 ** 0.5 / 4)


def test_output_is_deterministic():
    argv = ("plane", "--f", catalog.PLANE[6], "--point", "0,0", "--json")
    assert run(*argv)[1] == run(*argv)[1]


def test_infinite_curvature_is_null():
    code, rep = run_json("plane", "--f", catalog.PLANE[3], "--point", "0,0")
    (b,) = rep["branches"]
    assert code == 0 and b["curvature"] == {"finite": False, "value": None} and b["diagnostics"] == "Cusp"


def test_human_output():
    code, out, _ = run("plane", "--f", catalog.PLANE[1], "--point", "0,0")
    assert code == 0 and out.count("k = 0.353553390593") == 2


def test_surface_and_space():
    code, rep = run_json("surface", "--f", catalog.plane_sphere(1), "--point", "0,0,0")
    assert code == 0
    assert sorted(b["mean_abs"] for b in rep["branches"]) == pytest.approx([0.0, 1.0])
    F, G = catalog.two_cylinders(1, 1)
    code, rep = run_json("space", "--f", F, "--g", G, "--point", "0,0,0")
    assert code == 0 and rep["multiplicity"] == 2
    for b in rep["branches"]:
        assert b["curvature"]["value"] == pytest.approx(0.5)
        assert b["torsion"]["defined"] and b["torsion"]["value"] == pytest.approx(0.0, abs=1e-12)


def test_custom_variables():
    code, rep = run_json("plane", "--f", "u^3-u^2+v^2", "--point", "0,0", "--vars", "u,v")
    assert code == 0 and len(rep["branches"]) == 2
    code, _, _ = run("plane", "--f", "u^2", "--point", "0,0", "--vars", "u")
    assert code == 2


@pytest.mark.parametrize("argv, want", [
    (("plane", "--f", "x^2+y^2-1", "--point", "2,0"), 2),
    (("plane", "--f", "x^^2", "--point", "0,0"), 2),
    (("plane", "--f", "x+y", "--point", "0"), 2),
    (("plane", "--f", "x+y"), 2),
    (("plane", "--f", "x+y", "--point", "0,0", "--max-order", "0"), 2),
    (("plane", "--bogus"), 2),
    (("surface", "--f", "x^2+y^2-z^2", "--point", "0,0,0"), 3),
    (("plane", "--f", catalog.PLANE[4], "--point", "0,0", "--max-order", "3"), 3),
    (("space", "--f", "x^2+y^2+z^2-1", "--g", "z", "--point", "0,0,0"), 2),
])
def test_exit_codes(argv, want):
    assert run(*argv)[0] == want


def test_error_json():
    code, rep = run_json("surface", "--f", "x^2+y^2-z^2", "--point", "0,0,0")
    assert code == 3 and rep["branches"] == []
    assert rep["errors"][0]["type"] == "NonLinearTangentCone"


def test_trace_csv(tmp_path):
    code, out, _ = run("trace", "--f", catalog.PLANE[1], "--point", "0,0", "--direction", "1,1",
                       "--h0", "0.1", "--steps", "5")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["idx", "h", "x", "y", "residual"] and len(rows) == 6
    assert float(rows[1][1]) == 0.1
    path = tmp_path / "t.csv"
    code, out, _ = run("trace", "--f", "z", "--g", "x^2+y^2-2x", "--point", "0,0,0", "--direction", "0,1,0",
                       "--steps", "4", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[0] == "idx,h,x,y,z,residual"
    code, _, err = run("trace", "--f", catalog.PLANE[2], "--point", "0,0", "--direction", "1,0")
    assert code == 3 and "NoBranch" in err
    assert run("trace", "--f", "x-y", "--point", "0,0", "--direction", "0,0")[0] == 2


def test_oracle_fields():
    code, rep = run_json("plane", "--f", catalog.line_circle(1), "--point", "0,0", "--oracle")
    assert code == 0
    for b in rep["branches"]:
        assert "oracle" in b
        assert b["oracle"]["curvature"] == pytest.approx(b["curvature"]["value"], abs=1e-3)
