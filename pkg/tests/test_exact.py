import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markovsurf.errors import NegativeInput, NotCoprime, ShapeMismatch
from markovsurf.exact import (
    IntMat,
    det,
    ext_gcd,
    gcd,
    integer_sqrt,
    lcm,
    minor_det,
    mod_inverse,
    rat_from_json,
    rat_to_json,
    smith_normal_form,
    to_int,
)

ints = st.integers(min_value=-10 ** 30, max_value=10 ** 30)


def test_gcd_examples():
    assert gcd(433, 204) == 1
    assert gcd(0, 7) == 7
    assert gcd(6, -4) == 2
    assert gcd(0, 0) == 0


@given(ints, ints)
def test_gcd_lcm_relation(a, b):
    g = gcd(a, b)
    if g:
        assert a % g == 0 and b % g == 0
    assert g * lcm(a, b) == abs(a * b)


@given(ints, ints)
def test_ext_gcd_bezout(a, b):
    g, x, y = ext_gcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g


def test_mod_inverse_examples():
    assert mod_inverse(433, 2) == 1
    assert mod_inverse(1, 7) == 1
    assert mod_inverse(2, 5) == 3
    assert mod_inverse(5, 1) == 0
    with pytest.raises(NotCoprime):
        mod_inverse(4, 6)


@given(st.integers(-10 ** 20, 10 ** 20), st.integers(2, 10 ** 20))
def test_mod_inverse_roundtrip(a, m):
    if math.gcd(a, m) != 1:
        with pytest.raises(NotCoprime):
            mod_inverse(a, m)
    else:
        b = mod_inverse(a, m)
        assert 0 <= b < m and (a * b) % m == 1


def test_integer_sqrt_examples():
    assert integer_sqrt(37249) == (193, True)
    assert integer_sqrt(0) == (0, True)
    assert integer_sqrt(45) == (6, False)
    with pytest.raises(NegativeInput):
        integer_sqrt(-1)


@given(st.integers(0, 10 ** 80))
def test_integer_sqrt_bracket(n):
    r, exact = integer_sqrt(n)
    assert r * r <= n < (r + 1) ** 2
    assert exact == (r * r == n)


def test_to_int_rejects_floats_and_bools():
    assert to_int("  -12345678901234567890 ") == -12345678901234567890
    with pytest.raises(TypeError):
        to_int(1.0)
    with pytest.raises(TypeError):
        to_int(True)


def test_det_examples():
    assert det(IntMat([[2, 2], [3, 1]])) == -4
    assert det(IntMat.identity(4)) == 1
    assert minor_det(IntMat([[1, 0, -1], [0, 1, -1]]), 0) == 1
    with pytest.raises(ShapeMismatch):
        det(IntMat([[1, 2, 3]]))
    with pytest.raises(ShapeMismatch):
        minor_det(IntMat([[1, 2], [3, 4]]), 0)


def _cofactor_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    return sum((-1) ** j * rows[0][j] * _cofactor_det([r[:j] + r[j + 1:] for r in rows[1:]])
               for j in range(len(rows)))


@given(st.integers(1, 5).flatmap(lambda n: st.lists(
    st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(rows):
    assert det(IntMat(rows)) == _cofactor_det(rows)


def test_snf_examples():
    assert smith_normal_form(IntMat([[2, 0], [0, 3]])).diag == (1, 6)
    assert smith_normal_form(IntMat.identity(3)).diag == (1, 1, 1)
    assert smith_normal_form(IntMat([[1, 2], [1, -2], [-1, 0]])).diag == (1, 2)
    assert smith_normal_form(IntMat([[0, 0], [0, 0]])).diag == (0, 0)


matrices = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda s: st.lists(st.lists(st.integers(-40, 40), min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


@settings(max_examples=200)
@given(matrices)
def test_snf_verified(rows):
    A = IntMat(rows)
    snf = smith_normal_form(A)
    assert snf.U @ A @ snf.V == snf.D
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    for a, b in zip(snf.diag, snf.diag[1:]):
        assert (b % a == 0) if a else b == 0
    if A.nrows == A.ncols:
        assert math.prod(snf.diag) == abs(det(A))


def test_snf_is_deterministic():
    A = IntMat([[4, 6, 2], [8, -2, 10]])
    assert smith_normal_form(A) == smith_normal_form(A)


def test_intmat_value_semantics():
    A = IntMat([[1, 2], [3, 4]])
    assert A == IntMat([["1", "2"], ["3", "4"]])
    assert hash(A) == hash(IntMat([[1, 2], [3, 4]]))
    assert A.T == IntMat([[1, 3], [2, 4]])
    assert A @ (1, 1) == (3, 7)
    with pytest.raises(ShapeMismatch):
        IntMat([[1], [2, 3]])


@given(st.fractions())
def test_rational_json_roundtrip(q):
    d = rat_to_json(q)
    assert int(d["den"]) > 0
    assert math.gcd(int(d["num"]), int(d["den"])) == 1
    assert rat_from_json(d) == q


def test_rationals_normalize_eagerly():
    assert rat_to_json(Fraction(6, -4)) == {"num": "-3", "den": "2"}
