#!/usr/bin/env python3
"""Smoke test for the pl_py extension module.

Builds the cdylib with cargo (set PL_PY_SKIP_BUILD=1 to reuse an existing
build), stages it under an importable name, and exercises the main entry
points against known values.
"""

import math
import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

_checks = 0


def check(condition, label):
    global _checks
    if not condition:
        print(f"not ok - {label}")
        sys.exit(1)
    _checks += 1
    print(f"ok - {label}")


def stage_module():
    if not os.environ.get("PL_PY_SKIP_BUILD"):
        subprocess.run(
            ["cargo", "build", "-p", "pl-py", "--release"], cwd=ROOT, check=True
        )
    candidates = [
        os.path.join(ROOT, "target", "release", "libpl_py.so"),
        os.path.join(ROOT, "target", "release", "libpl_py.dylib"),
        os.path.join(ROOT, "target", "release", "pl_py.dll"),
    ]
    built = next((p for p in candidates if os.path.exists(p)), None)
    if built is None:
        print("extension library not found; run `cargo build -p pl-py --release`")
        sys.exit(1)
    suffix = ".pyd" if built.endswith(".dll") else ".so"
    stage = tempfile.mkdtemp(prefix="pl_py_")
    shutil.copy2(built, os.path.join(stage, "pl_py" + suffix))
    sys.path.insert(0, stage)


def main():
    stage_module()
    import pl_py

    # spin matrices
    s1, s2, s3 = pl_py.spin_matrices("1/2")
    check(abs(s1[0][1] - 0.5) < 1e-15, "S1 off-diagonal at spin 1/2")
    check(abs(s2[0][1] + 0.5j) < 1e-15, "S2 is -i/2 above the diagonal")
    check(abs(s3[0][0] - 0.5) < 1e-15 and abs(s3[1][1] + 0.5) < 1e-15, "S3 diagonal")

    checks = pl_py.verify_spin_identities("5/2")
    check(all(c.passed for c in checks), "spin identities pass at spin 5/2")

    checks = pl_py.verify_t_algebra("2", tol=1e-10)
    check(all(c.passed for c in checks), "operator algebra passes at spin 2")

    # block operator and spectrum
    s = pl_py.s_matrix("1")
    check(len(s) == 12, "S is 12-dimensional at spin 1")
    trace3 = pl_py.trace_power_direct(s, 3)
    check(abs(trace3 - 12.0) < 1e-10, "tr(S^3) = 12 at spin 1")
    closed = pl_py.trace_power_closed_form("1", 3)
    check(abs(closed - 12.0) < 1e-10, "closed form agrees")

    spectrum = pl_py.predict_spectrum("1")
    check(sum(m for _, m in spectrum) == 12, "multiplicities sum to the dimension")
    check(any(abs(ev + 2.0) < 1e-12 and m == 1 for ev, m in spectrum), "eigenvalue -2 once")

    result = pl_py.eigenvalues(s)
    check(len(result.eigenvalues) == 12, "dense solver returns all eigenvalues")
    check(result.residual < 1e-9, "solver residual is tiny")
    check(
        pl_py.geometric_multiplicity(s, 1.0 + 0.0j) == 5,
        "geometric multiplicity of the eigenvalue 1 is 5",
    )
    jordan = [[1.0 + 0.0j, 1.0 + 0.0j], [0.0j, 1.0 + 0.0j]]
    result = pl_py.eigenvalues(jordan)
    check(
        all(abs(ev - 1.0) < 1e-6 for ev in result.eigenvalues),
        "solver survives a defective Jordan block",
    )

    # W matrices and the Casimir
    check(abs(pl_py.minkowski_dot((1, 0, 0, 0), (1, 0, 0, 0)) + 1.0) < 1e-15, "metric signature")
    report = pl_py.casimir("3/2", (1.0, 0.2, -0.3, 0.5))
    check(all(c.passed for c in report.checks), "Casimir checks pass")
    sv = 1.5
    check(
        abs(report.ratio - pl_py.CASIMIR_NORMALIZATION * sv * (sv + 1.0)) < 1e-9,
        "Casimir ratio is the frozen constant times s(s+1)",
    )

    w = pl_py.w_matrices("1/2", (1.0, 0.0, 0.0, 0.0))
    check(max(abs(z) for row in w[0] for z in row) < 1e-15, "W^0 vanishes for a rest momentum")

    # entanglement
    v = pl_py.spin_half_eigenvectors()
    check(abs(v[0][2] - 1 / math.sqrt(2)) < 1e-15, "v1 amplitude layout")
    check(pl_py.three_tangle(v[0]) < 1e-12, "v1 is tangle-free")

    amps = pl_py.parse_state("v1+v4")
    check(abs(pl_py.three_tangle(amps) - 0.25) < 1e-12, "tangle(v1+v4) = 1/4")
    verdict = pl_py.classify(amps)
    check(verdict.class_name == "ghz-class" and verdict.entangled, "v1+v4 is ghz-class")

    rank, coefficients = pl_py.schmidt_analysis(v[1], "1|23")
    check(rank == 1, "v2 factorizes across 1|23")
    check(abs(sum(c * c for c in coefficients) - 1.0) < 1e-12, "Schmidt normalization")

    bell = [1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2)]
    check(abs(pl_py.n_tangle(bell, 2) - 1.0) < 1e-12, "Bell pair has unit 2-tangle")

    try:
        pl_py.parse_state("v1-v1")
        check(False, "cancellation must raise")
    except ValueError:
        check(True, "cancellation raises ValueError")

    print(f"all {_checks} checks passed")


if __name__ == "__main__":
    main()
