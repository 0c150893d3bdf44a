"""Smoke test for the qimm_py extension module.

Builds nothing itself: it locates the compiled extension under target/,
copies it to an importable name, and checks a handful of exact values
against hand-computed rationals.

Usage:
    cargo build -p qimm-py          (or --release)
    python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("qimm_py.so", "libqimm_py.so")
    ]
    lib = next((p for p in candidates if p.exists()), None)
    if lib is None:
        sys.exit("extension not found; run: cargo build -p qimm-py")
    workdir = tempfile.mkdtemp(prefix="qimm-smoke-")
    shutil.copy2(lib, pathlib.Path(workdir) / "qimm_py.so")
    sys.path.insert(0, workdir)
    import qimm_py

    return qimm_py


def main():
    qimm = load_module()

    r = qimm.r_matrix(2, "3/2")
    assert r[0][0] == "3/2" and r[3][3] == "3/2", "diagonal q entries"
    assert r[1][1] == "1" and r[2][2] == "1", "off-diagonal identity entries"
    assert r[1][2] == "5/6" and r[2][1] == "0", "upper-triangular q - 1/q entry"

    rc = qimm.r_check(2, "3/2")
    assert rc[1][2] == "1" and rc[2][1] == "1" and rc[2][2] == "5/6", "braided form swaps rows"

    d = qimm.d_matrix(2, "3/2")
    assert d[0][0] == "1" and d[1][1] == "4/9", "q-trace weights"

    tableaux = qimm.standard_tableaux([2, 1])
    assert sorted(tableaux) == [[[1, 2], [3]], [[1, 3], [2]]], "standard tableaux of (2,1)"
    assert qimm.ssyt_count([2], 2) == 3 and qimm.ssyt_count([1, 1], 2) == 1
    assert len(qimm.semistandard_tableaux([2], 2)) == 3

    assert qimm.immanant_eigenvalue(2, [1], [1], "0", "3/2") == "97/36"
    assert qimm.gelfand_eigenvalue(2, 1, [1], "3/2") == "97/36"

    op = qimm.immanant_operator(2, 1, [1], "0", "3/2")
    assert op == [["97/36", "0"], ["0", "97/36"]], "degree-one immanant is scalar on C^2"

    report_one = qimm.run_verify(json.dumps({"suites": ["rmatrix"]}))
    report_two = qimm.run_verify(json.dumps({"suites": ["rmatrix"]}))
    assert report_one == report_two, "reports are deterministic"
    parsed = json.loads(report_one)
    assert parsed["version"] == 1
    assert all(check["status"] == "pass" for check in parsed["checks"])

    try:
        qimm.run_verify(json.dumps({"suites": ["nonsense"]}))
    except ValueError:
        pass
    else:
        raise AssertionError("invalid suite name must raise")

    print("all smoke checks passed")


if __name__ == "__main__":
    main()
