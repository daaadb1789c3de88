"""Exact matrix arithmetic over the rationals and the integers.

Matrices are ``sympy.ImmutableMatrix`` instances whose entries are sympy
``Integer``/``Rational`` numbers. Rank, inverse and determinant go through
``DomainMatrix`` over ``QQ``; Smith normal form goes through ``DomainMatrix``
over ``ZZ``. Nothing here ever touches floating point.
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from sympy import ImmutableMatrix, Integer, Rational
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from schober.errors import (
    DimensionMismatchError, InconsistentSystemError, InputFormatError, SingularMatrixError,
)

logger = logging.getLogger(__name__)

Matrix = ImmutableMatrix

_RATIONAL_RE = re.compile(r'^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$')


# ===== Scalars =====

def to_rational(value) -> Rational:
    """Convert an int, a sympy number or a "p/q" string into a reduced Rational."""
    if isinstance(value, bool):
        raise InputFormatError(f"Boolean {value!r} is not a rational number")
    if isinstance(value, int):
        return Integer(value)
    if isinstance(value, Rational):
        return value
    if isinstance(value, str):
        match = _RATIONAL_RE.match(value)
        if not match:
            raise InputFormatError(f"'{value}' is not a rational of the form p or p/q")
        p, q = int(match.group(1)), int(match.group(2) or 1)
        if q == 0:
            raise InputFormatError(f"'{value}' has a zero denominator")
        return Rational(p, q)
    raise InputFormatError(f"Cannot read {value!r} ({type(value).__name__}) as a rational")


def format_rational(value: Rational) -> str:
    """Render as "p/q", omitting q when it is 1."""
    value = Rational(value)
    if value.q == 1:
        return str(value.p)
    return f"{value.p}/{value.q}"


# ===== Construction =====

def mat(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Build an exact matrix from nested rows; ``ncols`` fixes the width of an empty matrix."""
    rows = [list(r) for r in rows]
    if not rows:
        return ImmutableMatrix.zeros(0, ncols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatchError('Matrix rows have different lengths',
                                     lengths=[len(r) for r in rows])
    if ncols is not None and ncols != width:
        raise DimensionMismatchError(f'Expected {ncols} columns, got {width}')
    if width == 0:
        return ImmutableMatrix.zeros(len(rows), 0)
    return ImmutableMatrix([[to_rational(x) for x in r] for r in rows])


def identity(n: int) -> Matrix:
    return ImmutableMatrix.eye(n) if n else ImmutableMatrix.zeros(0, 0)


def zeros(rows: int, cols: int) -> Matrix:
    return ImmutableMatrix.zeros(rows, cols)


def column(values: Iterable) -> Matrix:
    values = list(values)
    return mat([[v] for v in values], ncols=1) if values else zeros(0, 1)


def hstack(blocks: Sequence[Matrix], nrows: int) -> Matrix:
    """Column-join blocks of height ``nrows`` (blocks may have zero columns)."""
    blocks = [b for b in blocks if b.cols]
    if not blocks:
        return zeros(nrows, 0)
    for b in blocks:
        if b.rows != nrows:
            raise DimensionMismatchError(f'Block has {b.rows} rows, expected {nrows}')
    return ImmutableMatrix.hstack(*blocks)


def matmul(*factors: Matrix) -> Matrix:
    """Left-to-right product with shape checks."""
    result = factors[0]
    for f in factors[1:]:
        if result.cols != f.rows:
            raise DimensionMismatchError(
                f'Cannot multiply {result.rows}x{result.cols} by {f.rows}x{f.cols}')
        result = ImmutableMatrix(result * f) if result.rows and f.cols else zeros(result.rows, f.cols)
    return result


def is_identity(m: Matrix) -> bool:
    return m.rows == m.cols and m == identity(m.rows)


def is_integral(m: Matrix) -> bool:
    return all(Rational(x).q == 1 for x in m)


def entries(m: Matrix) -> list[list[Rational]]:
    return [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]


# ===== Rank, inverse, solve =====

def _domain(m: Matrix, domain=QQ) -> DomainMatrix:
    return DomainMatrix.from_Matrix(m).convert_to(domain)


def mat_rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return int(_domain(m).rank())


def mat_det(m: Matrix) -> Rational:
    if m.rows != m.cols:
        raise DimensionMismatchError(f'Determinant of non-square {m.rows}x{m.cols} matrix')
    if m.rows == 0:
        return Integer(1)
    return QQ.to_sympy(_domain(m).det())


def mat_inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError instead of approximating."""
    if m.rows != m.cols:
        raise DimensionMismatchError(f'Inverse of non-square {m.rows}x{m.cols} matrix')
    if m.rows == 0:
        return identity(0)
    dm = _domain(m)
    if dm.rank() < m.rows:
        raise SingularMatrixError('Matrix is singular', matrix=entries(m))
    return ImmutableMatrix(dm.inv().to_Matrix())


def is_invertible(m: Matrix) -> bool:
    return m.rows == m.cols and mat_rank(m) == m.rows


def mat_solve(m: Matrix, rhs: Matrix) -> Matrix:
    """Particular solution x of m·x = rhs with free variables set to zero."""
    if m.rows != rhs.rows:
        raise DimensionMismatchError(
            f'Right-hand side has {rhs.rows} rows, matrix has {m.rows}')
    if m.cols == 0 or rhs.cols == 0:
        if any(x != 0 for x in rhs):
            raise InconsistentSystemError('System has no solution')
        return zeros(m.cols, rhs.cols)
    augmented = ImmutableMatrix.hstack(m, rhs)
    reduced, pivots = augmented.rref()
    if any(p >= m.cols for p in pivots):
        raise InconsistentSystemError('System has no solution')
    solution = [[Integer(0)] * rhs.cols for _ in range(m.cols)]
    for row, p in enumerate(pivots):
        for k in range(rhs.cols):
            solution[p][k] = reduced[row, m.cols + k]
    return ImmutableMatrix(solution)


@dataclass(frozen=True)
class RankInverseSolve:
    rank: int
    inverse: Optional[Matrix] = None
    singular: bool = False
    solution: Optional[Matrix] = None
    consistent: Optional[bool] = None


def mat_rank_inverse_solve(m: Matrix, rhs: Optional[Matrix] = None) -> RankInverseSolve:
    """Rank, inverse (square nonsingular only) and an exact solution of m·x = rhs."""
    if rhs is not None and rhs.rows != m.rows:
        raise DimensionMismatchError(
            f'Right-hand side has {rhs.rows} rows, matrix has {m.rows}')
    rank = mat_rank(m)
    inverse, singular = None, False
    if m.rows == m.cols:
        if rank == m.rows:
            inverse = mat_inverse(m)
        else:
            singular = True
            logger.info('Square %dx%d matrix is singular (rank %d)', m.rows, m.cols, rank)
    solution, consistent = None, None
    if rhs is not None:
        try:
            solution, consistent = mat_solve(m, rhs), True
        except InconsistentSystemError:
            consistent = False
    return RankInverseSolve(rank=rank, inverse=inverse, singular=singular,
                            solution=solution, consistent=consistent)


def is_unimodular(m: Matrix) -> bool:
    return m.rows == m.cols and is_integral(m) and abs(mat_det(m)) == 1


def rank_one_factor(m: Matrix) -> tuple[Matrix, Matrix]:
    """Return (left, right) with left·right = m and rank(m) inner dimension."""
    if m.rows == 0 or m.cols == 0:
        return zeros(m.rows, 0), zeros(0, m.cols)
    reduced, pivots = m.rref()
    k = len(pivots)
    if k == 0:
        return zeros(m.rows, 0), zeros(0, m.cols)
    left = ImmutableMatrix.hstack(*[m[:, p] for p in pivots])
    right = ImmutableMatrix(reduced[:k, :])
    return left, right


def charpoly(m: Matrix) -> list[Rational]:
    """Characteristic polynomial coefficients, leading coefficient first."""
    if m.rows != m.cols:
        raise DimensionMismatchError('Characteristic polynomial of non-square matrix')
    if m.rows == 0:
        return [Integer(1)]
    return [QQ.to_sympy(c) for c in _domain(m).charpoly()]


# ===== Smith normal form =====

@dataclass(frozen=True)
class SmithForm:
    diag: Matrix
    left: Matrix
    right: Matrix

    def invariant_factors(self) -> list[int]:
        n = min(self.diag.rows, self.diag.cols)
        return [int(self.diag[i, i]) for i in range(n) if self.diag[i, i] != 0]


def smith_normal_form(m: Matrix) -> SmithForm:
    """Smith normal form with unimodular transforms: left·m·right = diag."""
    if not is_integral(m):
        raise InputFormatError('Smith normal form needs integer entries')
    if m.rows == 0 or m.cols == 0:
        return SmithForm(diag=zeros(m.rows, m.cols), left=identity(m.rows), right=identity(m.cols))
    diag, left, right = smith_normal_decomp(_domain(m, ZZ))
    diag = [list(r) for r in diag.to_Matrix().tolist()]
    left = [list(r) for r in left.to_Matrix().tolist()]
    # Normalize signs so the diagonal is nonnegative
    for i in range(min(m.rows, m.cols)):
        if diag[i][i] < 0:
            diag[i][i] = -diag[i][i]
            left[i] = [-x for x in left[i]]
    return SmithForm(diag=ImmutableMatrix(diag), left=ImmutableMatrix(left),
                     right=ImmutableMatrix(right.to_Matrix()))
