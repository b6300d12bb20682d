from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovsurf.cstar import (
    CstarMatrix,
    covering_package,
    cstar_from_matrix,
    cstar_report,
    cstar_to_dict,
    degeneration_package,
    grading,
    k_squared_by_class_groups,
    k_squared_by_slopes,
    k_squared_by_weights,
    relation_terms,
    validate_cstar,
)
from markovsurf.errors import GcdViolation, MarkovSurfError, OrderingViolation, SlopeInequalityViolation
from markovsurf.fwpp import canonical_self_intersection, fake_weights


def test_validate_examples():
    validate_cstar(2, 3, -1, 1, 1)
    validate_cstar("1", "29", "-1", "1", "-4")
    with pytest.raises(SlopeInequalityViolation):
        validate_cstar(2, 3, -1, 1, -2)
    with pytest.raises(OrderingViolation):
        validate_cstar(3, 2, -1, 1, 1)
    with pytest.raises(OrderingViolation):
        validate_cstar(2, 3, -1, 3, 1)
    with pytest.raises(GcdViolation):
        validate_cstar(2, 4, -1, 1, 2)
    with pytest.raises(SlopeInequalityViolation):
        validate_cstar(2, 5, -1, 1, 3)


def test_report_examples():
    rep = cstar_report(CstarMatrix(2, 3, -1, 1, 1))
    assert rep.weights == (1, 5, 3, 2)
    assert rep.k_squared == 5
    assert rep.cl == (1, 5, 1)
    rep = cstar_report(CstarMatrix(1, 29, -1, 1, -4))
    assert rep.weights == (4, 25, 29, 1) and rep.k_squared == 9
    assert [f.kind for f in rep.fixed_points] == ["hyperbolic", "elliptic", "elliptic"]
    assert rep.isotropy == (("[-1,1,0,1]", 1), ("[-1,1,1,0]", 29))


def test_cstar_from_matrix():
    M = CstarMatrix(2, 3, -1, 1, 1)
    assert cstar_from_matrix(M.P) == M
    with pytest.raises(MarkovSurfError):
        cstar_from_matrix([[-1, -1, 2, 0], [-1, 0, 0, 3], [0, -1, 1, 1]])


def test_covering_examples():
    cov = covering_package(CstarMatrix(2, 3, -1, 1, 1))
    assert cov.P2.P.tolist() == [[-1, -1, 2], [0, -3, 5]]
    v = CstarMatrix(2, 3, -1, 1, 1).P.columns()
    assert cov.F2 @ v[3] == (0, 0)
    assert cov.F2 @ v[2] == (2, 5)
    assert cov.F1 @ v[0] == (-1, 0) == cov.P1.P.col(0)
    assert cov.degrees == (2, 3) and cov.ell == 1
    # the l2-covering target carries w3, the l1-covering target w4
    assert cov.target_weights == ((1, 5, 2), (1, 5, 3))


def test_covering_with_common_factor():
    M = CstarMatrix(2, 4, -1, 1, 1)
    cov = covering_package(M)
    w = M.weights
    assert cov.ell == 2
    assert cov.target_weights == ((w[0] // 2, w[1] // 2, w[3]), (w[0] // 2, w[1] // 2, w[2]))


def test_degeneration_examples():
    deg = degeneration_package(CstarMatrix(2, 3, -1, 1, 1))
    assert deg.Ptilde1.P.tolist() == [[1, -1, 1], [2, 2, -3]]
    assert deg.weights[0] == (1, 5, 4)
    assert deg.k_squared[0] == Fraction(100, 20) == 5
    deg = degeneration_package(CstarMatrix(1, 29, -1, 1, -4))
    assert deg.weights[1] == (4, 25, 841)
    fam = [t.to_dict() for t in deg.families[0]]
    assert fam[1] == {"coeff": "1", "monomial": {"T3": 1, "S": 1}}


def _valid(params):
    try:
        return CstarMatrix(*params)
    except MarkovSurfError:
        return None


params = st.integers(1, 12).flatmap(lambda l1: st.tuples(
    st.just(l1), st.integers(l1, 14), st.integers(-6, -1), st.integers(1, l1), st.integers(-60, 60)))


@settings(max_examples=400)
@given(params)
def test_random_valid_matrices(p):
    M = _valid(p)
    if M is None:
        return
    rep = cstar_report(M)
    w = rep.weights
    assert all(x >= 1 for x in w)
    assert w[0] + w[1] == M.l1 * M.l2 * -M.d0
    assert rep.cl_x1 + rep.cl_x2 == M.l1 * M.l2 * rep.cl_x0
    assert k_squared_by_weights(M) == k_squared_by_class_groups(M) == k_squared_by_slopes(M)
    assert fake_weights(M.generator_matrix) == w
    g = grading(M)
    assert len({t.degree(g) for t in relation_terms(M)}) == 1
    covering_package(M)
    deg = degeneration_package(M)
    for (l, wt) in zip((M.l1, M.l2), deg.weights):
        assert wt == (w[0], w[1], -l * l * M.d0)
        assert canonical_self_intersection(wt) == rep.k_squared


def test_json_export():
    d = cstar_to_dict(CstarMatrix(2, 3, -1, 1, 1))
    assert d["weights"] == ["1", "5", "3", "2"]
    assert d["kSquared"] == {"num": "5", "den": "1"}
    assert d["l1"] == "2" and len(d["centralFibers"]) == 2
    assert d["relation"][0]["monomial"] == {"T1": 1, "T2": 1}
