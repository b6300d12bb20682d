"""Exact integer and rational arithmetic shared by the whole package.

Python's ``int`` is already arbitrary precision and ``fractions.Fraction``
normalizes eagerly (positive denominator, reduced), so those serve as the
big-integer and rational types.  This module adds the integer linear algebra
on top: an immutable :class:`IntMat`, fraction-free determinants and a Smith
normal form with verified unimodular transforms.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import NegativeInput, NotCoprime, ShapeMismatch, check

Rat = Fraction
IntLike = Union[int, str]


def to_int(x: IntLike) -> int:
    """Coerce an integer or a decimal string to ``int``; reject floats and bools."""
    if isinstance(x, bool):
        raise TypeError("booleans are not integers here")
    if isinstance(x, str):
        return int(x.strip())
    return operator.index(x)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    return abs(a * b) // math.gcd(a, b) if a and b else 0


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` in ``[0, m)``; returns 0 for ``m == 1``."""
    if m < 1:
        raise ValueError(f"modulus must be >= 1, got {m}")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    return pow(a, -1, m)


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise NegativeInput(f"integer_sqrt of negative number {n}")
    r = math.isqrt(n)
    return r, r * r == n


def is_square(n: int) -> bool:
    return n >= 0 and integer_sqrt(n)[1]


class IntMat:
    """Immutable rectangular integer matrix with value semantics."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[IntLike]]):
        data = tuple(tuple(to_int(x) for x in r) for r in rows)
        widths = {len(r) for r in data}
        if len(widths) > 1:
            raise ShapeMismatch(f"ragged rows with lengths {sorted(widths)}")
        self._rows = data
        self._ncols = widths.pop() if widths else 0

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[IntLike]]) -> "IntMat":
        return cls(zip(*cols)) if cols else cls(())

    @classmethod
    def identity(cls, n: int) -> "IntMat":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self._rows), self._ncols

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self._ncols)]

    @property
    def T(self) -> "IntMat":
        return IntMat.from_columns(self._rows)

    def drop_column(self, j: int) -> "IntMat":
        return IntMat([r[:j] + r[j + 1:] for r in self._rows])

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __matmul__(self, other):
        if isinstance(other, IntMat):
            if self._ncols != other.nrows:
                raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMat([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows])
        vec = tuple(other)
        if len(vec) != self._ncols:
            raise ShapeMismatch(f"cannot apply {self.shape} matrix to vector of length {len(vec)}")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._rows)

    def __eq__(self, other):
        if not isinstance(other, IntMat):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, self._rows))

    def __repr__(self):
        return f"IntMat({self.tolist()!r})"


def det(A: IntMat) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n, m = A.shape
    if n != m:
        raise ShapeMismatch(f"determinant of non-square matrix {A.shape}")
    if n == 0:
        return 1
    M = A.tolist()
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def minor_det(A: IntMat, dropped_col: int) -> int:
    """Determinant of the ``n x n`` matrix left after deleting one column of an ``n x (n+1)`` matrix."""
    n, m = A.shape
    if m != n + 1:
        raise ShapeMismatch(f"minor_det expects an n x (n+1) matrix, got {A.shape}")
    if not 0 <= dropped_col < m:
        raise IndexError(dropped_col)
    return det(A.drop_column(dropped_col))


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and ``diag[0] | diag[1] | ...``.

    ``diag`` lists the ``min(rows, cols)`` diagonal entries, zeros included.
    """

    diag: tuple[int, ...]
    U: IntMat
    V: IntMat
    D: IntMat

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diag if d != 0)


def smith_normal_form(A: IntMat) -> SmithForm:
    m, n = A.shape
    D = A.tolist()
    U = IntMat.identity(m).tolist()
    V = IntMat.identity(n).tolist()

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        for M in (D, U):
            M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]

    def add_col(src, dst, c):
        for M in (D, V):
            for r in M:
                r[dst] += c * r[src]

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] and (pivot is None or abs(D[i][j]) < abs(D[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            if pivot[0] != t:
                swap_rows(t, pivot[0])
            if pivot[1] != t:
                swap_cols(t, pivot[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(t, i, -(D[i][t] // p))
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(t, j, -(D[t][j] // p))
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None
            )
            if bad is not None:
                add_row(bad, t, 1)
                continue
            if p < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            break

    Um, Vm, Dm = IntMat(U), IntMat(V), IntMat(D)
    diag = tuple(D[i][i] for i in range(min(m, n)))
    # re-multiply and check every structural claim
    check(Um @ A @ Vm == Dm, "Smith transform does not reproduce D")
    check(all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j))
    check(all(d >= 0 for d in diag))
    check(all(b % a == 0 if a else b == 0 for a, b in zip(diag, diag[1:])))
    check(abs(det(Um)) == 1 and abs(det(Vm)) == 1)
    return SmithForm(diag=diag, U=Um, V=Vm, D=Dm)


def invariant_factors(A: IntMat) -> tuple[int, ...]:
    return smith_normal_form(A).diag


def is_primitive(v: Sequence[int]) -> bool:
    return math.gcd(*v) == 1


def int_to_json(x: int) -> str:
    return str(x)


def rat_to_json(q: Fraction) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def rat_from_json(d: dict) -> Fraction:
    return Fraction(to_int(d["num"]), to_int(d["den"]))
