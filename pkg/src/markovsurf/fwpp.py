"""Fake weighted projective planes given by generator matrices.

A generator matrix is an integral ``n x (n+1)`` matrix whose columns are
pairwise distinct, primitive and positively span ``Q^n``.  For ``n = 2`` the
associated toric surface has Picard number one; its fixed points correspond
to the two-dimensional cones spanned by all columns but one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DependentGenerators,
    DuplicateColumn,
    NonPrimitiveColumn,
    NonPrimitiveGenerator,
    NotMarkov,
    NotPositivelySpanning,
    ShapeMismatch,
    check,
)
from .exact import (
    IntMat,
    det2,
    ext_gcd,
    integer_sqrt,
    is_primitive,
    lcm,
    minor_det,
    rat_to_json,
    smith_normal_form,
)
from .markov import MarkovTriple, is_markov


@dataclass(frozen=True)
class GeneratorMatrix:
    P: IntMat

    @property
    def dim(self) -> int:
        return self.P.nrows

    def columns(self) -> list[tuple[int, ...]]:
        return self.P.columns()

    def signed_minors(self) -> tuple[int, ...]:
        return signed_minors(self.P)


def signed_minors(P: IntMat) -> tuple[int, ...]:
    """``c_i = (-1)^i det(P without column i)``; these satisfy ``sum c_i v_i = 0``."""
    return tuple((-1) ** i * minor_det(P, i) for i in range(P.ncols))


def validate_generator_matrix(P) -> GeneratorMatrix:
    P = P if isinstance(P, IntMat) else IntMat(P)
    n, m = P.shape
    if n < 1 or m != n + 1:
        raise ShapeMismatch(f"generator matrix must be n x (n+1), got {P.shape}")
    cols = P.columns()
    # duplicates first: they would otherwise surface as a vanishing minor
    if len(set(cols)) != len(cols):
        raise DuplicateColumn(f"columns are not pairwise distinct: {cols}")
    c = signed_minors(P)
    if any(x == 0 for x in c) or len({x > 0 for x in c}) != 1:
        raise NotPositivelySpanning(f"signed complementary minors {c} do not share a strict sign")
    for j, v in enumerate(cols):
        if not is_primitive(v):
            raise NonPrimitiveColumn(f"column {j} = {v} is not primitive")
    return GeneratorMatrix(P)


def fake_weights(P: GeneratorMatrix) -> tuple[int, ...]:
    return tuple(abs(x) for x in P.signed_minors())


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion


def cokernel(A: IntMat) -> ClassGroup:
    """Structure of ``Z^rows / im(A)``."""
    snf = smith_normal_form(A)
    return ClassGroup(A.nrows - snf.rank, tuple(d for d in snf.diag if d > 1))


def class_group(P: GeneratorMatrix) -> ClassGroup:
    cg = cokernel(P.P.T)
    check(cg.free_rank == 1)
    check(cg.torsion_order == math.gcd(*fake_weights(P)))
    return cg


def canonical_self_intersection(w: Sequence[int]) -> Fraction:
    if len(w) != 3:
        raise ShapeMismatch(f"expected three weights, got {len(w)}")
    w0, w1, w2 = w
    return Fraction((w0 + w1 + w2) ** 2, w0 * w1 * w2)


@dataclass(frozen=True)
class ConeSingularity:
    """Cyclic quotient singularity ``1/n(1,q)`` of a two-dimensional cone.

    ``q`` is taken with respect to the ordered generators ``(v1, v2)``:
    it is the residue with ``v1 + q*v2 = 0 mod n``.  Swapping the generators
    replaces ``q`` by its inverse modulo ``n``.
    """

    order: int
    q: int
    gorenstein_index: int
    is_one_over_k_squared: bool
    k: Optional[int] = None
    p: Optional[int] = None

    @property
    def cl(self) -> int:
        return self.order

    @property
    def is_smooth(self) -> bool:
        return self.order == 1

    def type_label(self) -> str:
        return f"1/{self.order}(1,{self.q})"

    def to_dict(self) -> dict:
        d = {
            "cl": str(self.order),
            "iota": str(self.gorenstein_index),
            "type": self.type_label(),
            "q": str(self.q),
            "oneOverKSquared": self.is_one_over_k_squared,
        }
        if self.is_one_over_k_squared:
            d["k"], d["p"] = str(self.k), str(self.p)
        return d


def _unimodular_to_e2(v: Sequence[int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Rows of an SL(2,Z) matrix sending the primitive vector ``v`` to ``(0, 1)``."""
    a, b = v
    g, x, y = ext_gcd(a, b)
    check(g == 1)
    return (b, -a), (x, y)


def gorenstein_form(v1: Sequence[int], v2: Sequence[int]) -> tuple[Fraction, Fraction]:
    """The rational linear form ``u`` with ``<u, v1> = <u, v2> = 1``."""
    d = det2(v1, v2)
    # u = (1, 1) @ inverse([v1 v2]) via the adjugate
    return Fraction(v2[1] - v1[1], d), Fraction(v1[0] - v2[0], d)


def classify_cone(v1: Sequence[int], v2: Sequence[int]) -> ConeSingularity:
    v1, v2 = tuple(v1), tuple(v2)
    for v in (v1, v2):
        if not is_primitive(v):
            raise NonPrimitiveGenerator(f"{v} is not primitive")
    d = det2(v1, v2)
    if d == 0:
        raise DependentGenerators(f"{v1} and {v2} are linearly dependent")
    n = abs(d)
    u = gorenstein_form(v1, v2)
    iota = lcm(u[0].denominator, u[1].denominator)

    r1, r2 = _unimodular_to_e2(v2)
    c = r1[0] * v1[0] + r1[1] * v1[1]
    e = r2[0] * v1[0] + r2[1] * v1[1]
    check(abs(c) == n)
    q = -e % n

    flagged = n == iota * iota
    k = p = None
    if flagged:
        k = iota
        check((q + 1) % k == 0)
        p = (q + 1) // k
        check(1 <= p <= k and math.gcd(p, k) == 1)
    return ConeSingularity(n, q, iota, flagged, k, p)


def fixed_point_cones(P: GeneratorMatrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    cols = P.columns()
    return [tuple(cols[j] for j in range(len(cols)) if j != i) for i in range(len(cols))]


def generator_matrix_for_weights(w: Sequence[int]) -> GeneratorMatrix:
    """A generator matrix of ``P(w0, w1, w2)`` for a primitive weight vector.

    Completes ``w`` to a unimodular matrix and takes the remaining rows of
    its inverse, so the columns span the lattice and satisfy
    ``sum w_i v_i = 0``.  Raises if the weights are not well formed.
    """
    w = tuple(int(x) for x in w)
    if math.gcd(*w) != 1:
        raise ValueError(f"weights {w} are not primitive")
    snf = smith_normal_form(IntMat([[x] for x in w]))
    U = snf.U
    P = IntMat([U.row(i) for i in range(1, len(w))])
    return validate_generator_matrix(P)


@dataclass(frozen=True)
class ToricSurfaceReport:
    matrix: GeneratorMatrix
    weights: tuple[int, ...]
    class_group: ClassGroup
    k_squared: Fraction
    fixed_points: tuple[ConeSingularity, ...]
    markov_triple: Optional[MarkovTriple] = None

    @property
    def is_toric_markov(self) -> bool:
        return self.markov_triple is not None

    def to_dict(self) -> dict:
        return {
            "kind": "toricSurface",
            "matrix": [[str(x) for x in r] for r in self.matrix.P.tolist()],
            "weights": [str(x) for x in self.weights],
            "torsion": [str(x) for x in self.class_group.torsion],
            "kSquared": rat_to_json(self.k_squared),
            "fixedPoints": [fp.to_dict() for fp in self.fixed_points],
            "isToricMarkov": self.is_toric_markov,
            "markovTriple": [str(x) for x in self.markov_triple] if self.markov_triple else None,
        }


def toric_surface_report(P) -> ToricSurfaceReport:
    G = P if isinstance(P, GeneratorMatrix) else validate_generator_matrix(P)
    if G.dim != 2:
        raise ShapeMismatch("toric surface reports need a 2 x 3 generator matrix")
    w = fake_weights(G)
    cg = class_group(G)
    fps = tuple(classify_cone(a, b) for a, b in fixed_point_cones(G))
    for fp, wi in zip(fps, w):
        check(fp.order == wi)
    return ToricSurfaceReport(G, w, cg, canonical_self_intersection(w), fps, _markov_from_weights(w, cg))


def _markov_from_weights(w, cg: ClassGroup) -> Optional[MarkovTriple]:
    if cg.torsion or canonical_self_intersection(w) != 9:
        return None
    roots = []
    for x in w:
        r, exact = integer_sqrt(x)
        if not exact:
            return None
        roots.append(r)
    if not is_markov(roots):
        return None
    return MarkovTriple.of(roots)


def recognize_toric_markov(P) -> Optional[MarkovTriple]:
    return toric_surface_report(P).markov_triple


def toric_markov_surface(t) -> ToricSurfaceReport:
    """The weighted projective plane ``P(k0^2, k1^2, k2^2)`` of a Markov triple.

    All reported data is recomputed from a synthesized generator matrix and
    then checked against the expected values.
    """
    if not isinstance(t, MarkovTriple):
        if not is_markov(tuple(t)):
            raise NotMarkov(f"{tuple(t)} is not a Markov triple")
        t = MarkovTriple.of(t)
    G = generator_matrix_for_weights(t.squared())
    rep = toric_surface_report(G)
    check(rep.weights == t.squared())
    check(rep.class_group.is_torsion_free)
    check(rep.k_squared == 9)
    check(rep.markov_triple == t)
    for fp, k in zip(rep.fixed_points, t):
        check(fp.order == k * k and fp.gorenstein_index == k and fp.is_one_over_k_squared)
    return rep
