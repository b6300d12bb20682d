"""Markov C*-surfaces: one rational C*-surface per edge of the Markov tree.

For adjacent triples ``(l1, k1, k2)`` and ``(k1, k2, l2)`` the surface is
``V(T1 T2 + T3^l1 + T4^l2)`` in ``P(k1^2, k2^2, l2, l1)``.  Building it runs
every identity the construction relies on, exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .cstar import (
    CoveringPackage,
    CstarMatrix,
    CstarReport,
    DegenerationPackage,
    Term,
    covering_package,
    cstar_from_matrix,
    cstar_report,
    degeneration_package,
    grading,
    relation_terms,
    terms_to_string,
)
from .errors import InvariantViolation, NotExtendable, NotMarkovPair, NotSquares, check
from .exact import IntMat, integer_sqrt, mod_inverse, rat_to_json, smith_normal_form
from .fwpp import GeneratorMatrix, toric_surface_report, validate_generator_matrix
from .markov import MarkovEdge, MarkovTriple, adjacent_thirds


def solve_d1_d2(edge: MarkovEdge) -> tuple[int, int]:
    """The unique ``(d1, d2)`` with ``k2^2 = l2*d1 + l1*d2`` and ``1 <= d1 <= l1``."""
    k2sq, l1, l2 = edge.k2 ** 2, edge.l1, edge.l2
    d1 = (mod_inverse(l2, l1) * k2sq) % l1 or l1
    num = k2sq - l2 * d1
    check(num % l1 == 0, "k2^2 - l2*d1 is not divisible by l1")
    d2 = num // l1
    check(1 <= d1 <= l1)
    return d1, d2


@dataclass(frozen=True)
class EllipticSingularity:
    name: str
    coordinates: str
    cl: int
    gorenstein_index: int

    @property
    def k(self) -> int:
        return self.gorenstein_index

    @property
    def is_one_over_k_squared(self) -> bool:
        return self.cl == self.gorenstein_index ** 2

    def type_label(self) -> str:
        # the weight p is only known to exist and be coprime to k
        return f"1/{self.cl}(1,p*{self.k}-1)"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "coordinates": self.coordinates,
            "cl": str(self.cl),
            "iota": str(self.gorenstein_index),
            "type": self.type_label(),
            "oneOverKSquared": self.is_one_over_k_squared,
            "p": None,
        }


@dataclass(frozen=True)
class MarkovCstarSurface:
    edge: MarkovEdge
    matrix: CstarMatrix
    report: CstarReport
    singularities: tuple[EllipticSingularity, EllipticSingularity]
    gorenstein_forms: tuple[tuple[Fraction, ...], tuple[Fraction, ...]]
    coverings: CoveringPackage
    degenerations: DegenerationPackage
    relation: tuple[Term, ...]

    @property
    def d1(self) -> int:
        return self.matrix.d1

    @property
    def d2(self) -> int:
        return self.matrix.d2

    @property
    def cox_degrees(self) -> tuple[int, int, int, int]:
        e = self.edge
        return (e.k1 ** 2, e.k2 ** 2, e.l2, e.l1)

    @property
    def ambient(self) -> tuple[int, int, int, int]:
        return self.cox_degrees

    @property
    def relation_degree(self) -> int:
        return self.edge.l1 * self.edge.l2

    @property
    def k_squared(self) -> Fraction:
        return self.report.k_squared

    @property
    def is_toric(self) -> bool:
        return self.edge.l1 == 1

    @property
    def central_fiber_weights(self) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
        e = self.edge
        return (e.k1 ** 2, e.k2 ** 2, e.l1 ** 2), (e.k1 ** 2, e.k2 ** 2, e.l2 ** 2)

    @property
    def covering_degrees(self) -> tuple[int, int]:
        """Degrees of ``X -> P(k1^2, k2^2, l_i^2)``: ``l_i`` onto ``P(k1^2, k2^2, l_i)`` times ``l_i``."""
        return tuple(l * l for l in self.coverings.degrees)

    def to_dict(self) -> dict:
        e = self.edge
        cov = self.coverings.to_dict()
        for i, l in enumerate((e.l1, e.l2), 1):
            z = cov[f"Z{i}"]
            z["composedTarget"] = [str(x) for x in self.central_fiber_weights[i - 1]]
            z["quotientMap"] = f"[z1,z2,z3] -> [z1,z2,z3^{l}]"
            z["quotientDegree"] = str(l)
            z["composedDegree"] = str(l * l)
            z["isIsomorphism"] = l == 1
        return {
            "kind": "markovCstarSurface",
            "edge": {"k1": str(e.k1), "k2": str(e.k2), "l1": str(e.l1), "l2": str(e.l2),
                     "triples": [[str(x) for x in t] for t in e.triples]},
            **self.report.to_dict(),
            "coxDegrees": [str(x) for x in self.cox_degrees],
            "ambient": [str(x) for x in self.ambient],
            "relation": [t.to_dict() for t in self.relation],
            "relationString": terms_to_string(self.relation),
            "relationDegree": str(self.relation_degree),
            "classGroup": {"freeRank": 1, "torsion": []},
            "isToric": self.is_toric,
            "singularities": [s.to_dict() for s in self.singularities],
            "gorensteinForms": [[rat_to_json(x) for x in u] for u in self.gorenstein_forms],
            "coverings": cov,
            "centralFibers": self.degenerations.to_list(),
        }


def gorenstein_forms(edge: MarkovEdge, d1: int, d2: int):
    k1, k2, l1, l2 = edge.k1, edge.k2, edge.l1, edge.l2
    u1 = (Fraction(d2 - d1, k2 ** 2), Fraction(d1 - d2, k2 ** 2), Fraction(3 * k1, k2))
    u2 = (Fraction(d1 - d2 + l2, k1 ** 2), Fraction(d2 - d1 + l1, k1 ** 2), Fraction(-3 * k2, k1))
    return u1, u2


def _pair(u, v) -> Fraction:
    return sum(a * b for a, b in zip(u, v))


def _primitive_integral(u) -> bool:
    return all(x.denominator == 1 for x in u) and math.gcd(*(int(x) for x in u)) == 1


def build_markov_surface(edge: MarkovEdge) -> MarkovCstarSurface:
    k1, k2, l1, l2 = edge.k1, edge.k2, edge.l1, edge.l2
    d1, d2 = solve_d1_d2(edge)
    check(math.gcd(l1, d1) == 1 and math.gcd(l2, d2) == 1)
    check(-1 + Fraction(d1, l1) + Fraction(d2, l2) == Fraction(-k1 * k1, l1 * l2))
    check(Fraction(d1, l1) + Fraction(d2, l2) == Fraction(k2 * k2, l1 * l2))
    M = CstarMatrix(l1, l2, -1, d1, d2)
    rep = cstar_report(M)
    check(rep.weights == (k1 ** 2, k2 ** 2, l2, l1), lambda: f"w(P) = {rep.weights} for {edge}")
    check(smith_normal_form(M.P.T).diag == (1, 1, 1), "Cl(X) has torsion")
    check(rep.k_squared == 9, lambda: f"K^2 = {rep.k_squared} for {edge}")
    check(Fraction((l1 + l2) ** 2, (k1 * k2) ** 2) == 9)
    check(rep.cl_x1 * rep.cl_x2 == (k1 * k2) ** 2)

    rel = relation_terms(M)
    g = grading(M)
    check({t.degree(g) for t in rel} == {k1 ** 2 + k2 ** 2} and k1 ** 2 + k2 ** 2 == l1 * l2)

    u1, u2 = gorenstein_forms(edge, d1, d2)
    v = M.P.columns()
    check((_pair(u1, v[0]), _pair(u1, v[2]), _pair(u1, v[3])) == (0, 1, 1), "u1 evaluations")
    check((_pair(u2, v[1]), _pair(u2, v[2]), _pair(u2, v[3])) == (0, 1, 1), "u2 evaluations")
    check(_primitive_integral([k2 * x for x in u1]), "k2*u1 not primitive integral")
    check(_primitive_integral([k1 * x for x in u2]), "k1*u2 not primitive integral")
    sing = (
        EllipticSingularity("x1", "[0,1,0,0]", rep.cl_x1, k2),
        EllipticSingularity("x2", "[1,0,0,0]", rep.cl_x2, k1),
    )
    check(all(s.is_one_over_k_squared for s in sing))

    cov = covering_package(M)
    check(cov.ell == 1)
    check(cov.target_weights == ((k1 ** 2, k2 ** 2, l1), (k1 ** 2, k2 ** 2, l2)))
    deg = degeneration_package(M)
    check(deg.weights == ((k1 ** 2, k2 ** 2, l1 ** 2), (k1 ** 2, k2 ** 2, l2 ** 2)))
    check(deg.torsion == ((), ()), "central fiber is a fake weighted projective plane")
    return MarkovCstarSurface(edge, M, rep, sing, (u1, u2), cov, deg, rel)


def surface_for_pair(k1: int, k2: int) -> MarkovCstarSurface:
    k1, k2 = sorted((k1, k2))
    try:
        l1, l2 = adjacent_thirds(k1, k2)
    except NotExtendable as exc:
        raise NotMarkovPair(str(exc)) from exc
    return build_markov_surface(MarkovEdge(k1, k2, l1, l2))


def recognize_by_local_class_groups(c1: int, c2: int) -> MarkovCstarSurface:
    """The Markov C*-surface with ``cl(x1) = c1`` and ``cl(x2) = c2`` (order-insensitive)."""
    if c1 < 1 or c2 < 1:
        raise NotSquares(f"local class group orders must be positive, got ({c1}, {c2})")
    roots = []
    for c in (c1, c2):
        r, exact = integer_sqrt(c)
        if not exact:
            raise NotSquares(f"{c} is not a perfect square")
        roots.append(r)
    return surface_for_pair(*roots)


@dataclass(frozen=True)
class Verdict:
    kind: str  # "ToricMarkov" | "MarkovCstar" | "NotADegeneration"
    k_squared: Fraction
    triple: Optional[MarkovTriple] = None
    edge: Optional[MarkovEdge] = None
    is_toric: Optional[bool] = None
    swapped: bool = False
    reason: str = ""

    @property
    def is_degeneration(self) -> bool:
        return self.kind != "NotADegeneration"

    def to_dict(self) -> dict:
        d = {"verdict": self.kind, "kSquared": rat_to_json(self.k_squared)}
        if self.triple is not None:
            d["markovTriple"] = [str(x) for x in self.triple]
        if self.edge is not None:
            e = self.edge
            d["edge"] = {"k1": str(e.k1), "k2": str(e.k2), "l1": str(e.l1), "l2": str(e.l2)}
            d["isToric"] = self.is_toric
            d["swappedElliptic"] = self.swapped
        if self.reason:
            d["reason"] = self.reason
        return d


def classify_plane_degeneration(obj: Union[GeneratorMatrix, CstarMatrix, IntMat, list]) -> Verdict:
    if isinstance(obj, CstarMatrix):
        return _classify_cstar(obj)
    P = obj.P if isinstance(obj, GeneratorMatrix) else (obj if isinstance(obj, IntMat) else IntMat(obj))
    if P.shape == (3, 4):
        return _classify_cstar(cstar_from_matrix(P))
    rep = toric_surface_report(validate_generator_matrix(P))
    if rep.markov_triple is not None:
        return Verdict("ToricMarkov", rep.k_squared, triple=rep.markov_triple)
    if rep.k_squared == 9:
        raise InvariantViolation(f"toric surface with K^2 = 9 and weights {rep.weights} is not Markov")
    return Verdict("NotADegeneration", rep.k_squared, reason=f"K^2 = {rep.k_squared} != 9")


def _classify_cstar(M: CstarMatrix) -> Verdict:
    rep = cstar_report(M)
    k2 = rep.k_squared
    if k2 != 9:
        return Verdict("NotADegeneration", k2, reason=f"K^2 = {k2} != 9")
    w1, w2, w3, w4 = rep.weights
    check(M.d0 == -1, lambda: f"K^2 = 9 with d0 = {M.d0}")
    a, ea = integer_sqrt(w1)
    b, eb = integer_sqrt(w2)
    check(ea and eb, lambda: f"K^2 = 9 but weights {rep.weights} have non-square entries")
    edge = MarkovEdge.from_pair(a, b)
    check((edge.l1, edge.l2) == (w4, w3), lambda: f"thirds {(edge.l1, edge.l2)} vs weights {rep.weights}")
    swapped = a > b
    if not swapped:
        check(build_markov_surface(edge).matrix == M, "matrix differs from the edge surface")
    return Verdict("MarkovCstar", k2, edge=edge, is_toric=edge.l1 == 1, swapped=swapped)


def diagram_text(S: MarkovCstarSurface) -> str:
    e = S.edge
    k1s, k2s = e.k1 ** 2, e.k2 ** 2
    amb = f"P({k1s},{k2s},{e.l2},{e.l1})"
    z1, z2 = f"P({k1s},{k2s},{e.l1 ** 2})", f"P({k1s},{k2s},{e.l2 ** 2})"
    lines = [
        f"edge {e.label()}   (d1, d2) = ({S.d1}, {S.d2})",
        f"X = V({terms_to_string(S.relation)}) in {amb}",
        f"  {amb} --> {z1} : [z1,z2,z3,z4] -> [z1,z2,z4^{e.l1}]",
        f"  {amb} --> {z2} : [z1,z2,z3,z4] -> [z1,z2,z3^{e.l2}]",
        f"  X --({e.l1 ** 2}:1)--> {z1}" + ("  (isomorphism)" if e.l1 == 1 else ""),
        f"  X --({e.l2 ** 2}:1)--> {z2}",
    ]
    for i, fib in enumerate(S.degenerations.to_list(), 1):
        central = (z1, z2)[i - 1]
        lines.append(f"  family psi_{i}: V({fib['familyString']}), general fiber X, central fiber {central}")
    lines.append(f"  K^2 = {S.k_squared}, cl(x1) = {S.report.cl_x1}, cl(x2) = {S.report.cl_x2}, "
                 f"iota(x1) = {e.k2}, iota(x2) = {e.k1}")
    return "\n".join(lines) + "\n"


def diagram_dot(S: MarkovCstarSurface) -> str:
    e = S.edge
    k1s, k2s = e.k1 ** 2, e.k2 ** 2
    amb = f"P({k1s},{k2s},{e.l2},{e.l1})"
    z1, z2 = f"P({k1s},{k2s},{e.l1 ** 2})", f"P({k1s},{k2s},{e.l2 ** 2})"
    return "\n".join([
        "digraph markov_cstar {",
        f'  "X" [label="X{e.label()}"];',
        f'  "{amb}"; "{z1}"; "{z2}";',
        f'  "X" -> "{amb}" [label="embedding"];',
        f'  "{amb}" -> "{z1}" [style=dashed, label="[z1,z2,z4^{e.l1}]"];',
        f'  "{amb}" -> "{z2}" [style=dashed, label="[z1,z2,z3^{e.l2}]"];',
        f'  "X" -> "{z1}" [label="degree {e.l1 ** 2}"];',
        f'  "X" -> "{z2}" [label="degree {e.l2 ** 2}"];',
        f'  "{z1}" -> "X" [style=dotted, label="degenerates (psi_1)"];',
        f'  "{z2}" -> "X" [style=dotted, label="degenerates (psi_2)"];',
        "}",
    ]) + "\n"
