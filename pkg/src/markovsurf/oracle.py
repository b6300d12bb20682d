"""Independent brute-force and numeric checks.

Everything here recomputes a claim by a second route: Diophantine
enumeration instead of the tree, lattice-point counting instead of the
unimodular normal form, floating point fibers instead of degree formulas.
Double precision complex arithmetic is used only in this module.
"""

from __future__ import annotations

import cmath
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .cstar import CstarMatrix, covering_package, cstar_report, degeneration_package, k_squared_by_class_groups
from .errors import MarkovSurfError, NonSquareEntry, PreconditionError, ToleranceExceeded
from .exact import det2, ext_gcd, integer_sqrt, is_square, rat_to_json
from .fwpp import classify_cone, toric_markov_surface
from .markov import MarkovTriple, expand_tree
from .markov_cstar import build_markov_surface, classify_plane_degeneration


@dataclass
class VerificationReport:
    name: str
    bound: object
    passed: bool
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "check": self.name,
            "bound": _jsonable(self.bound),
            "passed": self.passed,
            "counterexamples": [_jsonable(c) for c in self.counterexamples],
            "details": {k: _jsonable(v) for k, v in self.details.items()},
        }


def _jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, float):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return rat_to_json(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


# --- Diophantine equation (w0 + w1 + w2)^2 = 9 w0 w1 w2 ---------------------

class DioSolution(NamedTuple):
    w0: int
    w1: int
    w2: int


def is_dio_solution(w: Sequence[int]) -> bool:
    w0, w1, w2 = w
    return (w0 + w1 + w2) ** 2 == 9 * w0 * w1 * w2


def _third_roots(w0: int, w1: int) -> list[int]:
    # w2^2 + (2(w0+w1) - 9 w0 w1) w2 + (w0+w1)^2 = 0
    b = 2 * (w0 + w1) - 9 * w0 * w1
    c = (w0 + w1) ** 2
    disc = b * b - 4 * c
    if disc < 0:
        return []
    r, exact = integer_sqrt(disc)
    if not exact or (r - b) % 2:
        return []
    return sorted({(-b - r) // 2, (-b + r) // 2})


def enumerate_dio_solutions(bound: int, exhaustive: bool = False) -> list[DioSolution]:
    """All solutions ``w0 <= w1 <= w2 <= bound``, lexicographically sorted.

    Scans pairs ``(w0, w1)`` and solves for ``w2``.  Unless ``exhaustive`` is
    set, the scan over ``w1`` stops as soon as ``9 w0 w1 - 2 w0 - 2 w1``
    exceeds ``2 * bound``: for ``w0 >= 2`` the admissible root is then the
    larger one, which is at least half the root sum.
    """
    if bound < 1:
        return []
    out = set()
    for w0 in range(1, bound + 1):
        if not exhaustive and w0 >= 2 and 9 * w0 * w0 - 4 * w0 > 2 * bound:
            break
        for w1 in range(w0, bound + 1):
            if not exhaustive and w0 >= 2 and 9 * w0 * w1 - 2 * w0 - 2 * w1 > 2 * bound:
                break
            for w2 in _third_roots(w0, w1):
                if w1 <= w2 <= bound:
                    out.add(DioSolution(w0, w1, w2))
    for s in out:
        assert is_dio_solution(s)
    return sorted(out)


def lambda_map(u: Sequence[int]) -> tuple[int, int, int]:
    """``(u0, u1, u2) -> (u0, u1, (3 sqrt(u0 u1) - sqrt(u2))^2)``."""
    roots = []
    for x in u:
        r, exact = integer_sqrt(x)
        if not exact:
            raise NonSquareEntry(f"{x} is not a perfect square")
        roots.append(r)
    return (u[0], u[1], (3 * roots[0] * roots[1] - roots[2]) ** 2)


def lambda_involution_check(u: Sequence[int]) -> bool:
    u = tuple(u)
    image = lambda_map(u)
    if not is_dio_solution(image) or not all(is_square(x) for x in image):
        return False
    if lambda_map(image) != u:
        return False
    if u[0] <= u[1] <= u[2] and u[2] >= 3 and not image[2] < u[2]:
        return False
    return True


def _squared_markov_up_to(bound: int) -> set[tuple[int, int, int]]:
    # entries grow along every branch past (1,1,2), so stop once a whole level exceeds the bound
    depth = 1
    while True:
        levels = expand_tree(depth)
        if min(v.z * v.z for v in levels[-1].vertices) > bound:
            break
        depth += 1
    return {v.squared() for lv in levels for v in lv.vertices if v.z * v.z <= bound}


def check_dio_equals_squared_markov(bound: int) -> VerificationReport:
    with _Timer() as t:
        sols = enumerate_dio_solutions(bound)
        dio = {tuple(s) for s in sols}
        markov = _squared_markov_up_to(bound) if bound >= 1 else set()
        bad = [("onlyDiophantine", s) for s in sorted(dio - markov)]
        bad += [("onlyMarkov", s) for s in sorted(markov - dio)]
        for s in sols:
            if not lambda_involution_check(s):
                bad.append(("lambda", tuple(s)))
            elif tuple(sorted(lambda_map(s))) not in dio and max(lambda_map(s)) <= bound:
                bad.append(("notClosed", tuple(s)))
    return VerificationReport("diophantine", bound, not bad, bad, t.elapsed,
                              {"solutions": len(sols), "list": [list(s) for s in sols[:50]]})


# --- the discriminant a(9a - 4) ------------------------------------------------

def delta(d1: int, l1: int) -> int:
    return 36 * d1 * d1 + 36 * d1 * l1 + 9 * l1 * l1 - 8 * d1 - 4 * l1


def k_squared_case_122(l1: int, d0, d1: int) -> Fraction:
    """Canonical self-intersection for upper entries ``(1, 2, l1, 2)``."""
    m_plus = Fraction(d1, l1) + Fraction(1, 2)
    m_minus = Fraction(d0, 2) + Fraction(d1, l1) + Fraction(1, 2)
    return (Fraction(1, l1) + Fraction(1, 2)) ** 2 / m_plus + Fraction(1, 2 * d0) - 1 / (l1 * l1 * m_minus)


def d0_quadratic(d1: int, l1: int) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of ``K^2 = 9`` for the case ``(1, 2, l1, 2)`` as a quadratic in ``d0``."""
    A = (Fraction(1, l1) + Fraction(1, 2)) ** 2 / (Fraction(d1, l1) + Fraction(1, 2))
    B = Fraction(d1, l1) + Fraction(1, 2)
    # (A-9) + 1/(2 d0) - 1/(l1^2 (d0/2 + B)) = 0, times 2 d0 (d0/2 + B)
    return A - 9, 2 * (A - 9) * B + Fraction(1, 2) - Fraction(2, l1 * l1), B


def _is_rational_square(q: Fraction) -> bool:
    return q >= 0 and is_square(q.numerator) and is_square(q.denominator)


def delta_never_square(bound_a: int, grid_points: int = 10_000, seed: int = 0) -> VerificationReport:
    bad = []
    with _Timer() as t:
        isqrt = math.isqrt
        for a in range(1, bound_a + 1):
            D = a * (9 * a - 4)
            r = isqrt(D)
            if r * r == D:
                bad.append(("square", a))
            if not (3 * a - 1) ** 2 < D < (3 * a) ** 2:
                bad.append(("bracket", a))
        rng = random.Random(seed)
        checked = 0
        while checked < grid_points:
            l1 = rng.randint(2, 10 ** 6)
            d1 = rng.randint(-l1, 10 ** 6)
            a = 2 * d1 + l1
            if a <= 0 or math.gcd(l1, d1) != 1:
                continue
            checked += 1
            if delta(d1, l1) != a * (9 * a - 4):
                bad.append(("identity", (d1, l1)))
            if checked <= 2000:
                al, be, ga = d0_quadratic(d1, l1)
                disc = be * be - 4 * al * ga
                # the roots are rational exactly when delta is a square
                if disc == 0 or not _is_rational_square(disc / delta(d1, l1)):
                    bad.append(("discriminant", (d1, l1)))
                d0 = -1 - l1  # spot check of the quadratic against the formula
                lhs = al * d0 * d0 + be * d0 + ga
                m = Fraction(d0, 2) + ga
                if m != 0 and lhs != (k_squared_case_122(l1, d0, d1) - 9) * 2 * d0 * m:
                    bad.append(("quadratic", (d1, l1)))
    return VerificationReport("delta", bound_a, not bad, bad, t.elapsed, {"gridPoints": grid_points})


# --- case (1, y, 2, 2): K^2 < 4 ----------------------------------------------

def k_squared_case_y22(l0: int, d0: int, d1: int) -> Fraction:
    """Unsimplified form through the slopes of the two elliptic points."""
    m_plus = Fraction(d1, 2) + Fraction(1, 2)
    m_minus = Fraction(d0, l0) + Fraction(d1, 2) + Fraction(1, 2)
    return 1 / m_plus - (2 - l0 - Fraction(1, l0)) / d0 - 1 / (l0 * l0 * m_minus)


def k_squared_case_y22_simplified(l0: int, d0: int, d1: int) -> Fraction:
    return (Fraction(2, d1 + 1) + Fraction((l0 - 1) ** 2, d0 * l0)
            - Fraction(2, l0 * (d1 * l0 + 2 * d0 + l0)))


def case_D_grid(l0_range: Iterable[int] = range(2, 31), d0_range: Iterable[int] = range(-30, 0),
                d1_range: Iterable[int] = range(-30, 31)):
    for l0 in l0_range:
        for d0 in d0_range:
            if d0 >= 0 or l0 < 2 or math.gcd(l0, d0) != 1:
                continue
            for d1 in d1_range:
                if d1 % 2 == 0 or d1 + 1 <= 0:
                    continue
                if not Fraction(d0, l0) + Fraction(d1 + 1, 2) < 0:
                    continue
                yield l0, d0, d1


def case_D_k2_bound(l0_range=range(2, 31), d0_range=range(-30, 0), d1_range=range(-30, 31)) -> VerificationReport:
    bad = []
    n = 0
    with _Timer() as t:
        for l0, d0, d1 in case_D_grid(l0_range, d0_range, d1_range):
            n += 1
            k2 = k_squared_case_y22(l0, d0, d1)
            if k2 != k_squared_case_y22_simplified(l0, d0, d1):
                bad.append(("simplification", (l0, d0, d1)))
            if not k2 < 4:
                bad.append(("bound", (l0, d0, d1), k2))
    return VerificationReport("case-d", {"l0": _span(l0_range), "d0": _span(d0_range), "d1": _span(d1_range)},
                              not bad, bad, t.elapsed, {"gridPoints": n})


def _span(r) -> list:
    r = list(r)
    return [min(r), max(r)] if r else []


# --- numeric fibers of the two coverings ------------------------------------

def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _monomial(row: Sequence[int], s: Sequence[complex]) -> complex:
    out = 1 + 0j
    for e, x in zip(row, s):
        out *= x ** e
    return out


def numeric_fiber_count(M: CstarMatrix, xi: Sequence[complex] = (cmath.exp(2j * math.pi / 3), cmath.exp(0.7j)),
                        tol: float = 1e-9, strict: bool = False) -> VerificationReport:
    """Count the points of a general fiber of both coverings numerically.

    The candidates ``(xi1, -1-xi1, zeta xi2)`` with ``zeta^l = 1`` must all
    map to one image, be pairwise distinct and match the roots of the
    polynomial describing the full fiber.
    """
    xi1, xi2 = complex(xi[0]), complex(xi[1])
    if xi1 in (0, -1) or xi2 == 0:
        raise PreconditionError(f"sample {xi} hits an excluded value")
    if M.l2 > 64:
        raise PreconditionError(f"l2 = {M.l2} is too large for double precision roots of unity")
    cov = covering_package(M)
    bad = []
    counts = {}
    for name, F, l in (("phi1", cov.F1, M.l1), ("phi2", cov.F2, M.l2)):
        rows = F.tolist()
        pts = [(xi1, -1 - xi1, cmath.exp(2j * math.pi * k / l) * xi2) for k in range(l)]
        if any(1 + s[0] + s[1] != 0 for s in pts):
            bad.append((name, "relation"))
        images = [tuple(_monomial(r, s) for r in rows) for s in pts]
        ref = images[0]
        coincide = sum(all(_close(a, b, tol) for a, b in zip(img, ref)) for img in images)
        if coincide != l:
            bad.append((name, "images", coincide))
        s3 = [s[2] for s in pts]
        if any(_close(s3[i], s3[j], tol) for i in range(l) for j in range(i)):
            bad.append((name, "distinct"))
        # second route: the whole fiber is s3^l = c with s1, s2 fixed by the first coordinate
        r = rows[1]
        check_first = rows[0]
        if check_first not in ([0, 1, 0], [1, 0, 0]):
            bad.append((name, "shape"))
        c = ref[1] / (xi1 ** r[0] * (-1 - xi1) ** r[1])
        roots = np.roots([1] + [0] * (l - 1) + [-c])
        nearest = [min(range(l), key=lambda k: abs(roots[k] - z)) for z in s3]
        # polynomial roots are less accurate than the direct construction
        if len(set(nearest)) != l or not all(_close(complex(roots[k]), z, 1e3 * tol) for k, z in zip(nearest, s3)):
            bad.append((name, "roots"))
        counts[name] = coincide
    rep = VerificationReport("fibers", tuple(M.params), not bad, bad, 0.0, counts)
    if strict and bad:
        raise ToleranceExceeded(f"fiber check failed for {M}: {bad}")
    return rep


def fixture_cstar_matrices(lmax: int = 20, per_pair: int = 2, d0_values=(-1, -2)) -> list[CstarMatrix]:
    """A deterministic set of valid matrices with ``l2 <= lmax``."""
    out = []
    for l1 in range(1, lmax + 1):
        for l2 in range(l1, lmax + 1):
            for d0 in d0_values:
                d1s = [d for d in range(1, l1 + 1) if math.gcd(l1, d) == 1][:per_pair]
                for d1 in d1s:
                    # need -d1/l1 < d2/l2 < -d0 - d1/l1
                    lo = math.floor(Fraction(-d1 * l2, l1)) + 1
                    found = 0
                    d2 = lo
                    while found < per_pair and Fraction(d2, l2) < -d0 - Fraction(d1, l1):
                        if math.gcd(l2, d2) == 1:
                            out.append(CstarMatrix(l1, l2, d0, d1, d2))
                            found += 1
                        d2 += 1
    return out


def verify_fibers(lmax: int = 20, tol: float = 1e-9) -> VerificationReport:
    bad = []
    with _Timer() as t:
        mats = fixture_cstar_matrices(lmax)
        for lv in expand_tree(12):
            for e in lv.edges:
                if e.l2 <= lmax:
                    mats.append(build_markov_surface(e).matrix)
        for M in mats:
            rep = numeric_fiber_count(M, tol=tol)
            if not rep.passed:
                bad.append((M.params, rep.counterexamples))
    return VerificationReport("fibers", lmax, not bad, bad, t.elapsed, {"matrices": len(mats), "tol": tol})


# --- cones --------------------------------------------------------------------

def cone_type_bruteforce(v1: Sequence[int], v2: Sequence[int]) -> tuple[int, int, int]:
    """``(n, q, iota)`` by listing the lattice points of the half-open parallelogram."""
    d = det2(v1, v2)
    n = abs(d)
    s = 1 if d > 0 else -1
    xs = [0, v1[0], v2[0], v1[0] + v2[0]]
    ys = [0, v1[1], v2[1], v1[1] + v2[1]]
    q = 0 if n == 1 else None
    count = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            # (x, y) = (A v1 + B v2) / n in the basis v1, v2
            A = s * det2((x, y), v2)
            B = s * det2(v1, (x, y))
            if 0 <= A < n and 0 <= B < n:
                count += 1
                if A == 1:
                    q = B
    assert count == n
    # order of the canonical class of 1/n(1,q)
    return n, q, n // math.gcd(n, q + 1)


def normal_form_cone(k: int, p: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Columns of ``[[k, k], [k+b, b]]`` with ``a k - b p = 1``."""
    g, x, y = ext_gcd(k, p)
    assert g == 1
    b = -y
    return (k, k + b), (k, b)


def _random_unimodular(rng: random.Random) -> tuple[tuple[int, int], tuple[int, int]]:
    A = [[1, 0], [0, 1]]
    for _ in range(rng.randint(1, 6)):
        c = rng.randint(-3, 3)
        if rng.random() < 0.5:
            A = [[A[0][0] + c * A[1][0], A[0][1] + c * A[1][1]], A[1]]
        else:
            A = [A[0], [A[1][0] + c * A[0][0], A[1][1] + c * A[0][1]]]
    if rng.random() < 0.5:
        A = [A[1], A[0]]
    return tuple(map(tuple, A))


def _apply(A, v):
    return (A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1])


def cone_roundtrip(n_max: int, k_max: Optional[int] = None, brute_max: int = 30, seed: int = 0) -> VerificationReport:
    bad = []
    rng = random.Random(seed)
    pairs = 0
    with _Timer() as t:
        for n in range(2, n_max + 1):
            for q in range(1, n):
                if math.gcd(n, q) != 1:
                    continue
                pairs += 1
                v1, v2 = (n, -q), (0, 1)
                A = _random_unimodular(rng)
                for a, b in ((v1, v2), (_apply(A, v1), _apply(A, v2))):
                    cs = classify_cone(a, b)
                    if (cs.order, cs.q) != (n, q):
                        bad.append(("roundtrip", (n, q), a, b, (cs.order, cs.q)))
                    if n <= brute_max and cone_type_bruteforce(a, b) != (n, q, cs.gorenstein_index):
                        bad.append(("bruteforce", (n, q), a, b))
        if k_max is None:
            k_max = math.isqrt(n_max)
        for k in range(1, k_max + 1):
            for p in range(1, k + 1):
                if math.gcd(k, p) != 1:
                    continue
                v1, v2 = normal_form_cone(k, p)
                cs = classify_cone(v1, v2)
                expected = (k * k, (p * k - 1) % (k * k), k, True, p if k > 1 else 1)
                got = (cs.order, cs.q, cs.gorenstein_index, cs.is_one_over_k_squared, cs.p)
                if got != expected:
                    bad.append(("normalForm", (k, p), got))
    return VerificationReport("cones", {"nMax": n_max, "kMax": k_max}, not bad, bad, t.elapsed, {"pairs": pairs})


# --- whole-tree suites -------------------------------------------------------

def tree_suite(depth: int) -> VerificationReport:
    """Every edge surface and every toric vertex surface down to ``depth``."""
    bad = []
    edges = vertices = 0
    with _Timer() as t:
        for lv in expand_tree(depth):
            for v in lv.vertices:
                vertices += 1
                try:
                    toric_markov_surface(v)
                except (MarkovSurfError, AssertionError) as exc:
                    bad.append(("vertex", v.as_tuple(), str(exc)))
            for e in lv.edges:
                edges += 1
                try:
                    S = build_markov_surface(e)
                    if classify_plane_degeneration(S.matrix).edge != e:
                        bad.append(("classify", e.label()))
                except (MarkovSurfError, AssertionError) as exc:
                    bad.append(("edge", e.label(), str(exc)))
    return VerificationReport("tree", depth, not bad, bad, t.elapsed, {"vertices": vertices, "edges": edges})


def covering_structure_check(M: CstarMatrix) -> list:
    """Ray/cone, fake weight and K^2 checks for one matrix; empty when all pass."""
    try:
        covering_package(M)
        deg = degeneration_package(M)
        w = M.weights
        for i, l in enumerate((M.l1, M.l2)):
            if deg.weights[i] != (w[0], w[1], -l * l * M.d0):
                return [("weights", M.params, i)]
        kx = cstar_report(M).k_squared
        if not deg.k_squared[0] == deg.k_squared[1] == kx:
            return [("kSquared", M.params)]
    except (MarkovSurfError, AssertionError) as exc:
        return [("structure", M.params, str(exc))]
    return []


def random_cstar_matrices(count: int, seed: int = 0, lmax: int = 40, dmax: int = 6) -> list[CstarMatrix]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        l1 = rng.randint(1, lmax)
        l2 = rng.randint(l1, lmax)
        d0 = -rng.randint(1, dmax)
        d1 = rng.randint(1, l1)
        d2 = rng.randint(-dmax * l2, dmax * l2)
        try:
            M = CstarMatrix(l1, l2, d0, d1, d2)
        except MarkovSurfError:
            continue
        if k_squared_by_class_groups(M) != 9:
            out.append(M)
    return out


def cstar_k9_scan(lmax: int = 12, dmax: int = 4) -> VerificationReport:
    """Every valid matrix in a box with ``K^2 = 9`` must be the surface of a Markov edge."""
    bad = []
    hits = 0
    with _Timer() as t:
        for l1 in range(1, lmax + 1):
            for l2 in range(l1, lmax + 1):
                for d0 in range(-dmax, 0):
                    for d1 in range(1, l1 + 1):
                        for d2 in range(-dmax * l2, dmax * l2 + 1):
                            try:
                                M = CstarMatrix(l1, l2, d0, d1, d2)
                            except MarkovSurfError:
                                continue
                            if k_squared_by_class_groups(M) != 9:
                                continue
                            hits += 1
                            try:
                                if classify_plane_degeneration(M).kind != "MarkovCstar":
                                    bad.append(M.params)
                            except (MarkovSurfError, AssertionError) as exc:
                                bad.append((M.params, str(exc)))
    return VerificationReport("cstar-k9", {"lMax": lmax, "dMax": dmax}, not bad, bad, t.elapsed, {"hits": hits})
