"""Run every brute-force and numeric check at a modest size and print a summary line each.

The acceptance suite runs the same checks at full size.
"""

from markovsurf import oracle

checks = [
    oracle.check_dio_equals_squared_markov(10 ** 4),
    oracle.delta_never_square(10 ** 5, grid_points=2000),
    oracle.case_D_k2_bound(),
    oracle.tree_suite(6),
    oracle.verify_fibers(12, tol=1e-9),
    oracle.cone_roundtrip(60),
    oracle.cstar_k9_scan(8, 3),
]
for r in checks:
    status = "ok  " if r.passed else "FAIL"
    print(f"{status} {r.name:<34} bound {r.bound!s:<10} {len(r.counterexamples)} counterexamples  {r.elapsed:.2f} s")
