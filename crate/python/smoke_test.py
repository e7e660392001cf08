"""Smoke test for the ito_hermite_py extension module.

Build with `maturin develop -m crates/py/Cargo.toml`, or
`cargo build --release -p ito-hermite-py --features extension-module` and copy
target/release/libito_hermite_py.so to ito_hermite_py.so on PYTHONPATH.
"""

import cmath
import math

import ito_hermite_py as ih


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    p = ih.FamilyParams(1.0, 0.5)
    z = 1 + 1j
    assert close(p.psi(1, 2, z), -0.5 - 0.5j, 1e-14)
    for route in ["explicit", "laguerre", "kummer", "hyp2f0", "rodrigues"]:
        assert close(p.psi(2, 1, z, route), p.psi(2, 1, z), 1e-10), route

    q = ih.FamilyParams(1.0, 0.0)
    assert close(q.norm_sq(0, 0), math.pi, 1e-15)
    assert close(q.psi(0, 3, 2j), -8j, 1e-15)
    assert ih.FamilyParams(1.0, 2.0).biorder(5, 1) == (-2, 2)
    assert not q.is_admissible(1, -1)

    nodes, weights = ih.gauss_laguerre(8, 0.5)
    assert close(sum(w * t**3 for t, w in zip(nodes, weights)), math.gamma(4.5), 1e-13)

    assert q.eigen_residual("delta", 3, 2, cmath.rect(1.2, 0.4), 3.0) < 1e-9

    rows = ih.verify(["closed-forms", "biorder"], samples=3)
    assert rows and all(r.passed for r in rows), rows

    rows = ih.transform_reports(q, 0, 3)
    assert all(r.passed for r in rows), rows

    try:
        ih.transform_reports(p)
    except ValueError:
        pass
    else:
        raise AssertionError("fractional beta must be refused")

    try:
        ih.FamilyParams(1.0, 0.5).psi(1, 0, -2 + 0j, "rodrigues")
    except ih.BranchCutError:
        pass
    else:
        raise AssertionError("rodrigues on the cut must raise")

    print("smoke test passed")


if __name__ == "__main__":
    main()
