#!/usr/bin/env python3
"""Smoke test for the extactica_py extension module.

Builds the cdylib if needed, makes it importable under the module name, and
exercises the main entry points against known exact values.
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build_module() -> pathlib.Path:
    subprocess.run(
        ["cargo", "build", "-p", "extactica-py"], cwd=ROOT, check=True
    )
    lib = ROOT / "target" / "debug" / "libextactica_py.so"
    if not lib.exists():  # e.g. macOS
        lib = ROOT / "target" / "debug" / "libextactica_py.dylib"
    if not lib.exists():
        sys.exit("built library not found under target/debug")
    stage = pathlib.Path(tempfile.mkdtemp(prefix="extactica_py_"))
    shutil.copy(lib, stage / "extactica_py.so")
    return stage


def main() -> None:
    sys.path.insert(0, str(build_module()))
    import extactica_py as ex

    # degree formula
    assert ex.expected_degree(2, 1) == 6
    assert ex.expected_degree(2, 2) == 27

    # polynomial utilities
    g = ex.gcd("x^2 - y^2", "x^2 + 2*x*y + y^2", ["x", "y"])
    assert g == "x + y", g
    sf = ex.squarefree_part("x^2*y", ["x", "y"])
    assert sf == "x*y", sf

    # a field with six invariant lines
    f = ex.VectorField(
        '{"kind": "projective", "vars": ["x", "y", "z"],'
        ' "coeffs": {"x": "(x - z)*x", "y": "(y - z)*y", "z": "0"}}'
    )
    assert f.degree() == 2
    assert f.kind() == "projective"
    rep = json.loads(f.extactic(1))
    assert rep["expected_degree"] == 6
    assert not rep["vanished"]
    lines = f.invariant_lines()
    assert len(lines) == 6, lines
    curve, cofactor, invariant = f.invariance("x - y")
    assert invariant and cofactor == "x + y - z"

    # first integrals
    radial = ex.VectorField("projective; vars x y z; dx: x; dy: y; dz: 0")
    assert radial.first_integral_degree(3) == 1
    # x*(y - z)/(x - y) is constant along solutions of f
    assert f.first_integral_degree(2) == 2
    jouanolou = ex.VectorField(
        "projective; vars x y z; dx: y^2; dy: z^2; dz: x^2"
    )
    assert jouanolou.first_integral_degree(2) is None

    # bounds
    bounds = json.loads(f.bounds(1))
    assert bounds["solution_count_bound"] == 6
    assert bounds["jouanolou_bound"]["floor"] == 4
    assert bounds["field_extension_bound"] == 4

    # pencil analysis
    fam = json.loads(
        ex.family(
            "projective; vars x y z; dx: x; dy: 0; dz: 0",
            "projective; vars x y z; dx: 0; dy: y; dz: 0",
            1,
        )
    )
    assert fam["rational_roots"] == ["(0:1)", "(1:0)", "(1:1)"], fam

    print("smoke test: all checks passed")


if __name__ == "__main__":
    main()
