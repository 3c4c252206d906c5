"""Intertwining vertex operators Φ: F_u⃗ → F_v⃗ and their crystal limit Φ̃.

Φ is determined through its matrix elements φ(C, B) = ⟨v⃗| a_C Φ(1) a_{-B} |u⃗⟩
between boson monomials. The exchange relations with the generators give a
linear system in these unknowns; together with ⟨v⃗|Φ|u⃗⟩ = 1 it is solved
exactly on a truncated module and the solver reports whether the truncated
system is unique, under-determined or inconsistent. Dependence on the
spectral variable is a pure grading: ⟨A|Φ(z)|B⟩ = z^{|A|-|B|} ⟨A|Φ(1)|B⟩.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from dim_agt.algebra.combinat import EMPTY, Partition, PartitionTuple, partitions_of
from dim_agt.algebra.fock import BosonKind, Current, FockSpace, FockState, VertexOperator, apply_mode
from dim_agt.algebra.generators import (
    Frame,
    crystal_pbw_bra,
    crystal_pbw_ket,
    crystal_space,
    crystal_X1,
    crystal_X2,
    generator_X,
)
from dim_agt.algebra.linalg import SolveStatus, solve_linear
from dim_agt.algebra.scalars import ScalarPoint, inv, power
from dim_agt.config import MAX_PHI_LEVEL
from dim_agt.errors import CostGuardError
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

Terms = tuple[tuple[int, Any], ...]


def _always(n: int) -> bool:
    return True


@dataclass(frozen=True)
class ExchangeRelation:
    """Σ_k cL_k X^{v⃗}_{n-k} Φ = Σ_k cR_k Φ X^{u⃗}_{n-k} for the modes n that ``modes`` admits."""

    bra_current: Current
    ket_current: Current
    left: Terms
    right: Terms
    modes: Callable[[int], bool] = _always


@dataclass
class PhiTable:
    space: FockSpace
    level: int
    values: dict[tuple[PartitionTuple, PartitionTuple], Any]
    status: SolveStatus
    equations: int = 0

    def value(self, bra_key: PartitionTuple, ket_key: PartitionTuple) -> Any:
        return self.values.get((bra_key, ket_key), self.space.point.zero)

    def element(self, bra: FockState, ket: FockState, z: Any = 1) -> Any:
        """⟨F| Φ(z) |G⟩ for a bra F on F_v⃗ and a ket G on F_u⃗, both of level ≤ the table level."""
        total = self.space.point.zero
        for c_key, c_value in bra:
            for d_key, d_value in ket:
                phi = self.values.get((c_key, d_key))
                if phi:
                    total += c_value * d_value * phi * power(z, c_key.size - d_key.size)
        return total


def _keys(space: FockSpace, level: int) -> list[PartitionTuple]:
    return [key for n in range(level + 1) for key in space.basis(n)]


def _guard(level: int) -> None:
    if level > MAX_PHI_LEVEL:
        raise CostGuardError(f"vertex operator level {level} exceeds the cap {MAX_PHI_LEVEL}")


def solve_phi(space: FockSpace, relations: Sequence[ExchangeRelation], level: int) -> PhiTable:
    """Assemble every exchange equation whose states stay within ``level`` and solve."""
    _guard(level)
    point = space.point
    keys = _keys(space, level)
    index = {(c, b): i for i, (c, b) in enumerate((c, b) for c in keys for b in keys)}
    rows: list[list[Any]] = []
    rhs: list[Any] = []
    normalization = [point.zero] * len(index)
    vacuum = space.vacuum_key()
    normalization[index[(vacuum, vacuum)]] = point.one
    rows.append(normalization)
    rhs.append(point.one)
    for relation in relations:
        for a_key in keys:
            bra = space.monomial(a_key)
            for b_key in keys:
                ket = space.monomial(b_key)
                for n in range(-level - 1, level + 2):
                    if not relation.modes(n):
                        continue
                    if any(a_key.size + n - k > level for k, _ in relation.left):
                        continue
                    if any(b_key.size - n + k > level for k, _ in relation.right):
                        continue
                    row = [point.zero] * len(index)
                    for k, c in relation.left:
                        for c_key, value in relation.bra_current.apply_bra(n - k, bra):
                            row[index[(c_key, b_key)]] += c * value
                    for k, c in relation.right:
                        for d_key, value in relation.ket_current.apply(n - k, ket):
                            row[index[(a_key, d_key)]] -= c * value
                    if any(row):
                        rows.append(row)
                        rhs.append(point.zero)
    logger.debug("vertex operator system: %s equations, %s unknowns", len(rows), len(index))
    solution, status = solve_linear(rows, rhs)
    values = {}
    if solution is not None:
        values = {pair: point.convert(solution[i]) for pair, i in index.items() if solution[i]}
    if status is not SolveStatus.UNIQUE:
        logger.warning("vertex operator system at level %s is %s", level, status.value)
    return PhiTable(space, level, values, status, equations=len(rows))


def vertex_phi(point: ScalarPoint, level: int) -> PhiTable:
    """Φ^{v⃗}_{u⃗} from (X^{(i)}_n - e_N(v⃗) X^{(i)}_{n-1}) Φ = Φ (X^{(i)}_n - (t/q)^i e_N(v⃗) X^{(i)}_{n-1})."""
    space = FockSpace(point, point.n_components, BosonKind.QT, level)
    e_v = point.e_n(point.vv)
    ratio = point.t / point.q
    relations = []
    for i in range(1, point.n_components + 1):
        relations.append(
            ExchangeRelation(
                bra_current=generator_X(space, i, Frame.ORIGINAL, point.vv),
                ket_current=generator_X(space, i, Frame.ORIGINAL, point.uu),
                left=((0, point.one), (1, -e_v)),
                right=((0, point.one), (1, -power(ratio, i) * e_v)),
            )
        )
    return solve_phi(space, relations, level)


def phi_n1_operator(space: FockSpace) -> VertexOperator:
    """exp{-Σ (v^n - (t/q)^n u^n)/(n(1-q^n)) a_{-n} z^n} exp{Σ (v^{-n} - u^{-n})/(n(1-q^{-n})) a_n z^{-n}}."""
    point = space.point
    (u,), (v,) = point.uu, point.vv
    q, t = point.q, point.t

    def creation(_: int, n: int) -> Any:
        return -(power(v, n) - power(t / q, n) * power(u, n)) / (point.const(n) * (1 - power(q, n)))

    def annihilation(_: int, n: int) -> Any:
        return (power(v, -n) - power(u, -n)) / (point.const(n) * (1 - power(q, -n)))

    return VertexOperator.build(space, creation, annihilation)


def operator_table(space: FockSpace, operator: VertexOperator, level: int) -> PhiTable:
    """φ(C, B) of an explicitly known vertex operator, by direct mode expansion at z=1."""
    keys = _keys(space, level)
    values = {}
    for b_key in keys:
        ket = space.monomial(b_key)
        image = FockState(space)
        for m in range(b_key.size - level, b_key.size + 1):
            image = image + apply_mode(operator, m, ket)
        for c_key, value in image:
            values[(c_key, b_key)] = value * space.norm(c_key)
    return PhiTable(space, level, values, SolveStatus.UNIQUE)


def phi_n1_closed(point: ScalarPoint, level: int) -> PhiTable:
    space = FockSpace(point, 1, BosonKind.QT, level)
    return operator_table(space, phi_n1_operator(space), level)


def crystal_phi(point: ScalarPoint, level: int) -> PhiTable:
    """Φ̃^{v⃗}_{u⃗} on the N=2 crystal module.

    X̃^(1)_n commutes past Φ̃ with an X̃^(1)_{n-1} correction for n ≤ 0 and
    freely for n ≥ 1; X̃^(2)_n always carries the correction.
    """
    space = crystal_space(point, 2, level)
    e_v = point.e_n(point.vv)
    x1_v, x1_u = crystal_X1(space, point.vv), crystal_X1(space, point.uu)
    x2_v, x2_u = crystal_X2(space, point.vv), crystal_X2(space, point.uu)
    one = point.one
    relations = [
        ExchangeRelation(x1_v, x1_u, ((0, one),), ((0, one), (1, -e_v)), lambda n: n <= 0),
        ExchangeRelation(x1_v, x1_u, ((0, one),), ((0, one),), lambda n: n >= 1),
        ExchangeRelation(x2_v, x2_u, ((0, one),), ((0, one), (1, -e_v))),
    ]
    return solve_phi(space, relations, level)


def crystal_phi_column_recursion(lam: Partition, point: ScalarPoint, z: Any = 1) -> Any:
    """⟨v⃗|Φ̃(z)|X̃_{∅,λ}⟩ by sliding blocks of equal parts of λ down to mode -1.

    A block (X̃^(2)_{-i})^m moves to (X̃^(2)_{-i+1})^m at the cost of
    (v_1v_2z)^{-m} t^{-m(m-1)/2}; at mode -1 each factor is peeled off with
    -(v_1v_2 - t^{-k+1}u_1u_2)/(v_1v_2z).
    """
    e_v = point.e_n(point.vv)
    e_u = point.e_n(point.uu)
    step = inv(e_v * point.convert(z))
    t = point.t
    value = point.one
    heights = sorted(lam.multiplicities().items(), reverse=True)
    block = 0
    for index, (part, mult) in enumerate(heights):
        block += mult
        below = heights[index + 1][0] if index + 1 < len(heights) else 1
        drop = part - below
        value *= power(step, block * drop) * power(t, -(block * (block - 1) // 2) * drop)
    for k in range(1, block + 1):
        value *= -step * (e_v - power(t, 1 - k) * e_u)
    return value


def crystal_phi_column_closed(lam: Partition, point: ScalarPoint, z: Any = 1) -> Any:
    e_v = point.e_n(point.vv)
    e_u = point.e_n(point.uu)
    t = point.t
    value = (-1) ** lam.length * power(e_v * point.convert(z), -lam.size) * power(t, -lam.n())
    for k in range(1, lam.length + 1):
        value *= power(t, k - 1) * e_v - e_u
    return value


def phi_check(level: int, point: ScalarPoint) -> CheckReport:
    """Solvability and normalisation of Φ; at N=1 agreement with the closed exponential form."""
    report = CheckReport("agt-generic")
    table = vertex_phi(point, level)
    report.record(
        f"phi.solve.N{point.n_components}.L{level}",
        "vertex operator exchange relations",
        table.status is SolveStatus.UNIQUE,
        point,
        status=table.status.value,
        equations=table.equations,
    )
    vacuum = table.space.vacuum_key()
    report.compare("phi.normalization", "⟨v⃗|Φ|u⃗⟩ = 1", table.value(vacuum, vacuum), point.one, point)
    if point.n_components == 1:
        closed = phi_n1_closed(point, level)
        mismatches = [
            (c, b) for c in _keys(table.space, level) for b in _keys(table.space, level)
            if table.value(c, b) - closed.value(c, b)
        ]
        report.record(
            f"phi.n1-closed-form.L{level}",
            "N=1 vertex operator as an exponential of bosons",
            not mismatches,
            point,
            mismatches=[f"{c!r},{b!r}" for c, b in mismatches[:5]],
        )
    return report


def crystal_phi_check(level: int, point: ScalarPoint) -> CheckReport:
    """Crystal Φ̃: solvability, the column lemma, the left PBW property and single insertions."""
    report = CheckReport("agt-crystal")
    table = crystal_phi(point, level)
    space = table.space
    report.record(
        f"crystal-phi.solve.L{level}",
        "crystal vertex operator relations",
        table.status is SolveStatus.UNIQUE,
        point,
        status=table.status.value,
        equations=table.equations,
    )
    z = point.convert(point.x)
    vacuum = space.vacuum()
    e_u, e_v = point.e_n(point.uu), point.e_n(point.vv)
    report.compare("crystal-phi.normalization", "⟨v⃗|Φ̃|u⃗⟩ = 1", table.element(vacuum, vacuum, z), point.one, point)
    for n in range(1, level + 1):
        for lam in partitions_of(n):
            ket = crystal_pbw_ket(EMPTY, lam, space, point.uu)
            recursion = crystal_phi_column_recursion(lam, point, z)
            report.compare(
                f"crystal-phi.column-lemma.{lam}",
                "matrix elements with PBW vectors X̃_{∅,λ}",
                table.element(vacuum, ket, z),
                recursion,
                point,
            )
            report.compare(
                f"crystal-phi.column-closed.{lam}",
                "matrix elements with PBW vectors X̃_{∅,λ}",
                recursion,
                crystal_phi_column_closed(lam, point, z),
                point,
            )
    for n in range(level + 1):
        for key in space.basis(n):
            bra = crystal_pbw_bra(key[0], key[1], space, point.vv)
            if not key[0] and key[1] == Partition((1,) * n):
                expected = power(-e_v * e_u * z, n)
            else:
                expected = point.zero
            report.compare(
                f"crystal-phi.left-pbw.{key!r}",
                "left PBW matrix elements survive only for one column",
                table.element(bra, vacuum, z),
                expected,
                point,
            )
    x1, x2 = crystal_X1(space, point.uu), crystal_X2(space, point.uu)
    u1, u2 = point.uu
    v1, v2 = point.vv
    for n in range(1, level + 1):
        scale = power(e_v * z, -n)
        report.compare(
            f"crystal-phi.insert-x1.{n}",
            "⟨v⃗|Φ̃ X̃^(1)_{-n}|u⃗⟩",
            table.element(vacuum, x1.apply(-n, vacuum), z),
            scale * (u1 + u2 - v1 - v2),
            point,
        )
        report.compare(
            f"crystal-phi.insert-x2.{n}",
            "⟨v⃗|Φ̃ X̃^(2)_{-n}|u⃗⟩",
            table.element(vacuum, x2.apply(-n, vacuum), z),
            scale * (e_u - e_v),
            point,
        )
    return report
