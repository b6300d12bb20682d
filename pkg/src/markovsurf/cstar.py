"""Quasismooth rational C*-surfaces of Picard number one.

Such a surface ``X(P)`` is cut out by ``T1*T2 + T3^l1 + T4^l2`` in the fake
weighted projective space of the ``3 x 4`` generator matrix::

    [[-1, -1, l1,  0],
     [-1, -1,  0, l2],
     [ 0, d0, d1, d2]]

This module validates such data and computes the invariants, the two finite
coverings onto fake weighted projective planes and the two toric
degenerations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateCentralFiber,
    GcdViolation,
    MarkovSurfError,
    OrderingViolation,
    SlopeInequalityViolation,
    ToricMorphismViolation,
    check,
)
from .exact import IntMat, det2, rat_to_json, to_int
from .fwpp import (
    GeneratorMatrix,
    canonical_self_intersection,
    class_group,
    fake_weights,
    validate_generator_matrix,
)


@dataclass(frozen=True)
class CstarMatrix:
    l1: int
    l2: int
    d0: int
    d1: int
    d2: int

    def __post_init__(self):
        l1, l2, d0, d1, d2 = self.params
        if not 1 <= d1 <= l1 <= l2:
            raise OrderingViolation(f"need 1 <= d1 <= l1 <= l2, got d1={d1}, l1={l1}, l2={l2}")
        if math.gcd(l1, d1) != 1:
            raise GcdViolation(f"gcd(l1, d1) = gcd({l1}, {d1}) != 1")
        if math.gcd(l2, d2) != 1:
            raise GcdViolation(f"gcd(l2, d2) = gcd({l2}, {d2}) != 1")
        if not self.slope_sum > 0:
            raise SlopeInequalityViolation(f"d1/l1 + d2/l2 = {self.slope_sum} is not > 0")
        if not d0 + self.slope_sum < 0:
            raise SlopeInequalityViolation(f"d0 + d1/l1 + d2/l2 = {d0 + self.slope_sum} is not < 0")

    @property
    def params(self) -> tuple[int, int, int, int, int]:
        return self.l1, self.l2, self.d0, self.d1, self.d2

    @property
    def slope_sum(self) -> Fraction:
        return Fraction(self.d1, self.l1) + Fraction(self.d2, self.l2)

    @property
    def P(self) -> IntMat:
        return IntMat([
            [-1, -1, self.l1, 0],
            [-1, -1, 0, self.l2],
            [0, self.d0, self.d1, self.d2],
        ])

    @property
    def generator_matrix(self) -> GeneratorMatrix:
        return validate_generator_matrix(self.P)

    @property
    def weights(self) -> tuple[int, int, int, int]:
        l1, l2, d0, d1, d2 = self.params
        return (-l1 * l2 * d0 - l2 * d1 - l1 * d2, l2 * d1 + l1 * d2, -l2 * d0, -l1 * d0)

    def to_dict(self) -> dict:
        return {k: str(v) for k, v in zip(("l1", "l2", "d0", "d1", "d2"), self.params)}


def validate_cstar(l1, l2, d0, d1, d2) -> CstarMatrix:
    return CstarMatrix(*(to_int(x) for x in (l1, l2, d0, d1, d2)))


def cstar_from_matrix(P) -> CstarMatrix:
    """Read the parameters off a ``3 x 4`` matrix already in the C*-surface shape."""
    P = P if isinstance(P, IntMat) else IntMat(P)
    if P.shape != (3, 4):
        raise MarkovSurfError(f"expected a 3 x 4 matrix, got {P.shape}")
    rows = P.tolist()
    l1, l2 = rows[0][2], rows[1][3]
    if rows[0][:2] != [-1, -1] or rows[1][:2] != [-1, -1] or rows[0][3] != 0 or rows[1][2] != 0 or rows[2][0] != 0:
        raise MarkovSurfError(f"matrix {rows} is not of the C*-surface shape")
    return CstarMatrix(l1, l2, rows[2][1], rows[2][2], rows[2][3])


@dataclass(frozen=True)
class FixedPoint:
    name: str
    coordinates: str
    kind: str
    cl: int


@dataclass(frozen=True)
class CstarReport:
    matrix: CstarMatrix
    weights: tuple[int, int, int, int]
    cl: tuple[int, int, int]
    k_squared: Fraction
    fixed_points: tuple[FixedPoint, ...]
    isotropy: tuple[tuple[str, int], tuple[str, int]]

    @property
    def cl_x0(self) -> int:
        return self.cl[0]

    @property
    def cl_x1(self) -> int:
        return self.cl[1]

    @property
    def cl_x2(self) -> int:
        return self.cl[2]

    def to_dict(self) -> dict:
        return {
            **self.matrix.to_dict(),
            "matrix": [[str(x) for x in r] for r in self.matrix.P.tolist()],
            "weights": [str(w) for w in self.weights],
            "kSquared": rat_to_json(self.k_squared),
            "cl": [str(c) for c in self.cl],
            "fixedPoints": [
                {"name": f.name, "coordinates": f.coordinates, "kind": f.kind, "cl": str(f.cl)}
                for f in self.fixed_points
            ],
            "isotropy": [{"orbitThrough": z, "order": str(o)} for z, o in self.isotropy],
        }


def k_squared_by_weights(M: CstarMatrix) -> Fraction:
    w1, w2, _, _ = M.weights
    return (Fraction(1, w1) + Fraction(1, w2)) * (2 + Fraction(M.l1, M.l2) + Fraction(M.l2, M.l1))


def k_squared_by_class_groups(M: CstarMatrix) -> Fraction:
    w1, w2, _, _ = M.weights
    return Fraction(-M.d0, w2 * w1) * (M.l1 + M.l2) ** 2


def k_squared_by_slopes(M: CstarMatrix) -> Fraction:
    """The same number written through the two slope sums of the matrix."""
    c = (Fraction(1, M.l1) + Fraction(1, M.l2)) ** 2
    return c / M.slope_sum - c / (M.d0 + M.slope_sum)


def cstar_report(M: CstarMatrix) -> CstarReport:
    G = M.generator_matrix
    w = M.weights
    check(fake_weights(G) == w, lambda: f"closed-form weights {w} disagree with minors {fake_weights(G)}")
    check(all(x >= 1 for x in w))
    # the weight vector spans the relations among the columns
    check(all(sum(wi * vi for wi, vi in zip(w, row)) == 0 for row in M.P.tolist()))
    cl = (-M.d0, w[1], w[0])
    check(cl[1] + cl[2] == M.l1 * M.l2 * cl[0])
    k2 = k_squared_by_weights(M)
    check(k2 == k_squared_by_class_groups(M) == k_squared_by_slopes(M),
          lambda: f"K^2 formulas disagree for {M}")
    fps = (
        FixedPoint("x0", "[0,0,zeta,1] with zeta^l1 = -1", "hyperbolic", cl[0]),
        FixedPoint("x1", "[0,1,0,0]", "elliptic", cl[1]),
        FixedPoint("x2", "[1,0,0,0]", "elliptic", cl[2]),
    )
    return CstarReport(M, w, cl, k2, fps, (("[-1,1,0,1]", M.l1), ("[-1,1,1,0]", M.l2)))


def _in_cone2(x: Sequence[int], a: Sequence[int], b: Sequence[int]) -> bool:
    s = det2(a, b)
    return det2(a, x) * s >= 0 and det2(x, b) * s >= 0


def _on_ray(x: Sequence[int], u: Sequence[int]) -> bool:
    return det2(x, u) == 0 and x[0] * u[0] + x[1] * u[1] > 0


def check_toric_morphism(F: IntMat, source_cols, source_cones, target: GeneratorMatrix) -> None:
    """Raise unless ``F`` maps every ray to a target ray or 0 and every cone into a target cone."""
    tcols = target.columns()
    images = [F @ v for v in source_cols]
    for v, img in zip(source_cols, images):
        if any(img) and not any(_on_ray(img, u) for u in tcols):
            raise ToricMorphismViolation(f"image {img} of ray {v} is not on a target ray")
    tcones = [(tcols[i], tcols[j]) for i in range(3) for j in range(i + 1, 3)]
    for cone in source_cones:
        imgs = [images[i] for i in cone if any(images[i])]
        if not any(all(_in_cone2(x, a, b) for x in imgs) for a, b in tcones):
            raise ToricMorphismViolation(f"cone {cone} does not map into a single target cone")


# maximal cones of the subfan containing X: sigma1 = (v1,v3,v4), sigma2 = (v2,v3,v4), tau = (v1,v2)
SUBFAN_CONES = ((0, 2, 3), (1, 2, 3), (0, 1))


@dataclass(frozen=True)
class CoveringPackage:
    P1: GeneratorMatrix
    P2: GeneratorMatrix
    F1: IntMat
    F2: IntMat
    degrees: tuple[int, int]
    ell: int
    target_weights: tuple[tuple[int, ...], tuple[int, ...]]

    def to_dict(self) -> dict:
        out = {"ell": str(self.ell)}
        for i, (P, F, deg, w) in enumerate(
            zip((self.P1, self.P2), (self.F1, self.F2), self.degrees, self.target_weights), 1
        ):
            out[f"Z{i}"] = {
                "matrix": [[str(x) for x in r] for r in P.P.tolist()],
                "map": [[str(x) for x in r] for r in F.tolist()],
                "degree": str(deg),
                "weights": [str(x) for x in w],
            }
        return out


def covering_package(M: CstarMatrix) -> CoveringPackage:
    l1, l2, d0, d1, d2 = M.params
    ell = math.gcd(l1, l2)
    e1, e2 = l1 // ell, l2 // ell
    top = e2 * d1 + e1 * d2
    P1 = validate_generator_matrix([[-1, -1, e2], [0, d0 * l1, top]])
    P2 = validate_generator_matrix([[-1, -1, e1], [0, d0 * l2, top]])
    F1 = IntMat([[0, 1, 0], [-d1, d1, l1]])
    F2 = IntMat([[1, 0, 0], [d2, -d2, l2]])

    w = M.weights
    w_P1, w_P2 = fake_weights(P1), fake_weights(P2)
    # the target over the l1-covering carries the weight -l1*d0 = w4, the other one w3
    check(w_P1 == (w[0] // ell, w[1] // ell, w[3]), lambda: f"w(P1) = {w_P1}")
    check(w_P2 == (w[0] // ell, w[1] // ell, w[2]), lambda: f"w(P2) = {w_P2}")

    v = M.P.columns()
    c1, c2 = P1.columns(), P2.columns()
    scale = lambda u: tuple(ell * x for x in u)  # noqa: E731
    expected1 = [c1[0], c1[1], (0, 0), scale(c1[2])]
    expected2 = [c2[0], c2[1], scale(c2[2]), (0, 0)]
    for F, exp, name in ((F1, expected1, "F1"), (F2, expected2, "F2")):
        got = [F @ x for x in v]
        if got != [tuple(e) for e in exp]:
            raise ToricMorphismViolation(f"{name} maps the rays to {got}, expected {exp}")
    check_toric_morphism(F1, v, SUBFAN_CONES, P1)
    check_toric_morphism(F2, v, SUBFAN_CONES, P2)
    return CoveringPackage(P1, P2, F1, F2, (l1, l2), ell, (w_P1, w_P2))


@dataclass(frozen=True)
class Term:
    coeff: int
    monomial: tuple[tuple[str, int], ...]

    def degree(self, grading: dict) -> int:
        return sum(grading.get(var, 0) * e for var, e in self.monomial)

    def to_dict(self) -> dict:
        return {"coeff": str(self.coeff), "monomial": {v: e for v, e in self.monomial}}


def relation_terms(M: CstarMatrix, deform: int = 0) -> tuple[Term, ...]:
    """``T1 T2 + T3^l1 + T4^l2``; ``deform`` = 1 or 2 puts the family parameter S on term 2 or 3."""
    t3 = (("T3", M.l1),) + ((("S", 1),) if deform == 1 else ())
    t4 = (("T4", M.l2),) + ((("S", 1),) if deform == 2 else ())
    return Term(1, (("T1", 1), ("T2", 1))), Term(1, t3), Term(1, t4)


def terms_to_string(terms: Sequence[Term]) -> str:
    parts = []
    for t in terms:
        factors = [v if e == 1 else f"{v}^{e}" for v, e in sorted(t.monomial, key=lambda p: p[0] != "S")]
        parts.append("*".join(factors))
    return " + ".join(parts)


def grading(M: CstarMatrix) -> dict:
    return dict(zip(("T1", "T2", "T3", "T4"), M.weights))


@dataclass(frozen=True)
class DegenerationPackage:
    Ptilde1: GeneratorMatrix
    Ptilde2: GeneratorMatrix
    weights: tuple[tuple[int, ...], tuple[int, ...]]
    k_squared: tuple[Fraction, Fraction]
    families: tuple[tuple[Term, ...], tuple[Term, ...]]
    torsion: tuple[tuple[int, ...], tuple[int, ...]]

    def to_list(self) -> list:
        return [
            {
                "matrix": [[str(x) for x in r] for r in P.P.tolist()],
                "weights": [str(x) for x in w],
                "torsion": [str(x) for x in tor],
                "kSquared": rat_to_json(k2),
                "family": [t.to_dict() for t in fam],
                "familyString": terms_to_string(fam),
            }
            for P, w, tor, k2, fam in zip(
                (self.Ptilde1, self.Ptilde2), self.weights, self.torsion, self.k_squared, self.families
            )
        ]


def degeneration_package(M: CstarMatrix) -> DegenerationPackage:
    l1, l2, d0, d1, d2 = M.params
    raw = (
        [[d1, d1 + l1 * d0, d2], [l1, l1, -l2]],
        [[d2, d2 + l2 * d0, d1], [l2, l2, -l1]],
    )
    mats = []
    for i, rows in enumerate(raw, 1):
        try:
            mats.append(validate_generator_matrix(rows))
        except MarkovSurfError as exc:
            raise DegenerateCentralFiber(f"central fiber {i} of {M}: {exc}") from exc
    w = M.weights
    ws = tuple(fake_weights(P) for P in mats)
    check(ws[0] == (w[0], w[1], -l1 * l1 * d0), lambda: f"w(P~1) = {ws[0]}")
    check(ws[1] == (w[0], w[1], -l2 * l2 * d0), lambda: f"w(P~2) = {ws[1]}")
    k2 = tuple(canonical_self_intersection(x) for x in ws)
    kx = cstar_report(M).k_squared
    check(k2[0] == kx == k2[1], lambda: f"K^2 of X and central fibers differ: {kx} vs {k2}")
    families = (relation_terms(M, 1), relation_terms(M, 2))
    g = grading(M)
    for fam in families:
        check(len({t.degree(g) for t in fam}) == 1, "family equation is not homogeneous")
    torsion = tuple(class_group(P).torsion for P in mats)
    return DegenerationPackage(mats[0], mats[1], ws, k2, families, torsion)


def cstar_to_dict(M: CstarMatrix) -> dict:
    rep = cstar_report(M)
    out = {"kind": "cstarSurface", **rep.to_dict()}
    out["relation"] = [t.to_dict() for t in relation_terms(M)]
    out["coverings"] = covering_package(M).to_dict()
    out["centralFibers"] = degeneration_package(M).to_list()
    return out
