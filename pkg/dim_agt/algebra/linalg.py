"""Exact matrix routines over QQ or QQ(q), thin wrappers around sympy's DomainMatrix."""

from __future__ import annotations

from enum import Enum
from typing import Any, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from dim_agt.algebra.scalars import QField, is_symbolic
from dim_agt.errors import SingularSystem

Matrix = list[list[Any]]

SYMBOLIC_DOMAIN = QField.to_domain()


def domain_of(rows: Sequence[Sequence[Any]]) -> Any:
    for row in rows:
        for x in row:
            if is_symbolic(x):
                return SYMBOLIC_DOMAIN
    return QQ


def _lift(rows: Sequence[Sequence[Any]], domain: Any) -> DomainMatrix:
    height = len(rows)
    width = len(rows[0]) if height else 0
    converted = [[domain.convert(x) for x in row] for row in rows]
    return DomainMatrix(converted, (height, width), domain)


def to_domain_matrix(rows: Sequence[Sequence[Any]]) -> DomainMatrix:
    return _lift(rows, domain_of(rows))


def det(rows: Sequence[Sequence[Any]]) -> Any:
    if not rows:
        return QQ.one
    return to_domain_matrix(rows).det()


def rank(rows: Sequence[Sequence[Any]]) -> int:
    if not rows or not rows[0]:
        return 0
    return to_domain_matrix(rows).rank()


def inverse(rows: Sequence[Sequence[Any]]) -> Matrix:
    if not rows:
        return []
    matrix = to_domain_matrix(rows)
    if not matrix.det():
        raise SingularSystem(f"{len(rows)}x{len(rows)} matrix is singular")
    return matrix.inv().to_list()


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    if not a or not b:
        return [[] for _ in a]
    domain = SYMBOLIC_DOMAIN if SYMBOLIC_DOMAIN in (domain_of(a), domain_of(b)) else QQ
    return (_lift(a, domain) * _lift(b, domain)).to_list()


def transpose(rows: Sequence[Sequence[Any]]) -> Matrix:
    return [list(col) for col in zip(*rows)]


def identity(size: int, one: Any = QQ.one, zero: Any = QQ.zero) -> Matrix:
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def is_zero_matrix(rows: Sequence[Sequence[Any]]) -> bool:
    return all(not x for row in rows for x in row)


def matrices_equal(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> bool:
    if len(a) != len(b):
        return False
    return all(len(ra) == len(rb) and all(not (x - y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


class SolveStatus(str, Enum):
    UNIQUE = "unique"
    UNDERDETERMINED = "underdetermined"
    INCONSISTENT = "inconsistent"


def solve_linear(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> tuple[list[Any] | None, SolveStatus]:
    """Solve A x = b through the reduced row echelon form of [A | b].

    Over- and under-determined systems are accepted; the status says which
    case occurred. Free variables of an under-determined system are set to 0.
    """
    width = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    if not augmented:
        return [], SolveStatus.UNIQUE if width == 0 else SolveStatus.UNDERDETERMINED
    domain = domain_of(augmented)
    reduced, pivots = _lift(augmented, domain).rref()
    if width in pivots:
        return None, SolveStatus.INCONSISTENT
    table = reduced.to_list()
    solution = [domain.zero] * width
    for row, column in enumerate(pivots):
        solution[column] = table[row][width]
    status = SolveStatus.UNIQUE if len(pivots) == width else SolveStatus.UNDERDETERMINED
    return solution, status


def solve_unique(rows: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any]:
    solution, status = solve_linear(rows, rhs)
    if status is not SolveStatus.UNIQUE or solution is None:
        raise SingularSystem(f"linear system is {status.value}")
    return solution
