"""Representation matrices of the universal R-matrix on tensor products of Fock modules.

R maps each generalized Macdonald vector |P_λ⃗⟩ to k_λ⃗ |P^op_λ⃗⟩, where
|P^op_λ⃗⟩ is the function of the swapped tuple computed at the swapped
weights with the two boson species exchanged back. The constants k_λ⃗ are
fixed by demanding that R acts trivially on states carried by the spectator
boson alone. Matrices use the column convention: ``M[α][β]`` is the
coefficient of the basis vector α in R applied to the basis vector β.

Only R12 on three modules is solved directly, with a^(3) as spectator.
R13 and R23 are the two-module blocks at (u1, u3) and (u2, u3) embedded
around the remaining boson; the generalized Macdonald functions are
ordered, so spectator constraints on a^(1) do not fix R23.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import EMPTY, PartitionTuple, nek_factor
from dim_agt.algebra.fock import FockSpace, FockState, pair
from dim_agt.algebra.genmac import IntegralForms, gen_macdonald, integral_forms
from dim_agt.algebra.scalars import ScalarPoint, scalar_to_json
from dim_agt.config import MAX_RMATRIX_LEVEL
from dim_agt.errors import CostGuardError, ScalarModeError, SingularSystem
from dim_agt.fixtures import table_check
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

R_ANCHOR = "R maps |P_λ⃗⟩ to k_λ⃗ |P^op_λ⃗⟩ and is trivial on the spectator boson"
YANG_BAXTER_ANCHOR = "R12 R13 R23 = R23 R13 R12 on three Fock modules"
INTEGRAL_ANCHOR = "R |K_λ⃗⟩ = |K^op_λ⃗⟩ in the basis of integral forms"
CONSTANT_ANCHOR = "k_AB = (q/t)^{(|A|+|B|)/2} N_AB(u1/u2) / N_AB(q u1/(t u2))"

Pair = tuple[int, int]
PAIRS: tuple[Pair, ...] = ((1, 2), (1, 3), (2, 3))


class RBasis(str, Enum):
    BOSON = "boson"
    GENMAC = "genmac"
    INTEGRAL = "integral"


@dataclass
class RBlock:
    level: int
    n_components: int
    pair: Pair
    keys: list[PartitionTuple]
    constants: dict[PartitionTuple, Any]
    matrices: dict[RBasis, linalg.Matrix] = field(default_factory=dict)

    def matrix(self, basis: RBasis | str = RBasis.BOSON) -> linalg.Matrix:
        basis = RBasis(basis)
        if basis not in self.matrices:
            raise ValueError(f"no {basis.value} matrix for R{self.pair} at level {self.level}")
        return self.matrices[basis]

    def entry(self, row: PartitionTuple, column: PartitionTuple, basis: RBasis | str = RBasis.BOSON) -> Any:
        return self.matrix(basis)[self.keys.index(row)][self.keys.index(column)]

    def to_json(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "N": self.n_components,
            "pair": list(self.pair),
            "keys": [key.to_json() for key in self.keys],
            "constants": {str(key.to_json()): scalar_to_json(k) for key, k in self.constants.items()},
            "matrices": {
                basis.value: [[scalar_to_json(x) for x in row] for row in matrix]
                for basis, matrix in self.matrices.items()
            },
        }


def _guard(n: int, point: ScalarPoint) -> None:
    if n > MAX_RMATRIX_LEVEL:
        raise CostGuardError(f"level {n} exceeds the R-matrix cap {MAX_RMATRIX_LEVEL}")
    if point.symbolic:
        raise ScalarModeError("R-matrix blocks involve (q/t)^{1/2} and need a numeric point")
    if len(point.u) != 3:
        raise ValueError(f"R-matrix blocks are solved on three weights, got {len(point.u)}")


def _reordered(point: ScalarPoint, order: Sequence[int]) -> ScalarPoint:
    order = tuple(order)
    if order == tuple(range(len(point.u))):
        return point
    return point.cache(f"reordered:{order}", lambda: point.with_u([point.u[k] for k in order]))


def _spectator(a: int, b: int) -> int:
    return ({0, 1, 2} - {a, b}).pop()


def _relabel(state: FockState, space: FockSpace, i: int, j: int) -> FockState:
    """Exchange boson species i and j."""
    return FockState(space, {key.swapped(i, j): c for key, c in state})


def _apply(matrix: linalg.Matrix, vector: Sequence[Any], zero: Any) -> list[Any]:
    return [sum((x * y for x, y in zip(row, vector) if x and y), zero) for row in matrix]


def _first_mismatch(left: linalg.Matrix, right: linalg.Matrix, keys: Sequence[PartitionTuple]) -> dict[str, Any]:
    for i, (row_l, row_r) in enumerate(zip(left, right)):
        for j, (x, y) in enumerate(zip(row_l, row_r)):
            if x - y:
                return {"row": repr(keys[i]), "column": repr(keys[j]), "left": x, "right": y}
    return {}


def _change_basis(boson: linalg.Matrix, vectors: linalg.Matrix) -> linalg.Matrix:
    """Column-convention matrix of R over the basis whose boson coefficients are the rows of ``vectors``."""
    return linalg.transpose(linalg.matmul(linalg.matmul(vectors, linalg.transpose(boson)), linalg.inverse(vectors)))


def _forms(n: int, point: ScalarPoint) -> IntegralForms | None:
    def build() -> IntegralForms | None:
        try:
            forms = integral_forms(gen_macdonald(n, point))
        except SingularSystem:
            return None
        return None if forms.vanishing else forms

    return point.cache(f"integral-forms:{n}", build)


def _with_bases(boson: linalg.Matrix, n: int, point: ScalarPoint, keys: list[PartitionTuple]) -> dict[RBasis, linalg.Matrix]:
    basis = gen_macdonald(n, point)
    matrices = {
        RBasis.BOSON: boson,
        RBasis.GENMAC: _change_basis(boson, [basis.ket(lam).vector(keys) for lam in keys]),
    }
    forms = _forms(n, point)
    if forms is None:
        logger.warning("integral forms unavailable at level %s, seed %s", n, point.seed)
    else:
        matrices[RBasis.INTEGRAL] = _change_basis(boson, [forms.kets[lam].vector(keys) for lam in keys])
    return matrices


def _identity_block(n_components: int, pair_: Pair, point: ScalarPoint) -> RBlock:
    empty = PartitionTuple.empty(n_components)
    one = [[point.one]]
    return RBlock(0, n_components, pair_, [empty], {empty: point.one}, {basis: one for basis in RBasis})


def _adjacent_block(n: int, point: ScalarPoint, a: int, b: int) -> RBlock:
    def build() -> RBlock:
        basis = gen_macdonald(n, point)
        swapped = gen_macdonald(n, _reordered(point, [b if k == a else a if k == b else k for k in range(3)]))
        keys = list(basis.space.basis(n))
        labels = [key.swapped(a, b) for key in keys]
        inverse = linalg.inverse([basis.ket(lam).vector(keys) for lam in keys])
        image = [swapped.ket(lam.swapped(a, b)).vector(labels) for lam in keys]
        spectator_only = [j for j, key in enumerate(keys) if not key[a] and not key[b]]
        rows, rhs = [], []
        for j in spectator_only:
            for i in range(len(keys)):
                rows.append([inverse[j][m] * image[m][i] for m in range(len(keys))])
                rhs.append(point.one if i == j else point.zero)
        solution, status = linalg.solve_linear(rows, rhs)
        if status is not linalg.SolveStatus.UNIQUE or solution is None:
            raise SingularSystem(
                f"spectator constraints for R{a + 1}{b + 1} at level {n} are {status.value} "
                f"(rank {linalg.rank(rows)} of {len(keys)})"
            )
        constants = dict(zip(keys, solution))
        boson = [
            [sum((inverse[j][m] * solution[m] * image[m][i] for m in range(len(keys))), point.zero) for j in range(len(keys))]
            for i in range(len(keys))
        ]
        logger.debug("solved R%s%s at level %s, seed %s", a + 1, b + 1, n, point.seed)
        return RBlock(n, 3, (a + 1, b + 1), keys, constants, _with_bases(boson, n, point, keys))

    return point.cache(f"rblock3:{n}:{a}{b}", build)


def _two_component_block(n: int, point: ScalarPoint, first: int, second: int) -> RBlock:
    """R on F_{u_first} ⊗ F_{u_second}, read off the three-module solve with the remaining weight as spectator."""

    def build() -> RBlock:
        if n == 0:
            return _identity_block(2, (first + 1, second + 1), point)
        base = _reordered(point, (first, second, _spectator(first, second)))
        block = _adjacent_block(n, base, 0, 1)
        index = {key: k for k, key in enumerate(block.keys)}
        pair_point = _reordered(point, (first, second))
        keys = list(FockSpace(pair_point, 2).basis(n))
        lifted = [PartitionTuple(key.components + (EMPTY,)) for key in keys]
        boson = [[block.matrices[RBasis.BOSON][index[row]][index[col]] for col in lifted] for row in lifted]
        constants = {key: block.constants[lift] for key, lift in zip(keys, lifted)}
        return RBlock(n, 2, (first + 1, second + 1), keys, constants, _with_bases(boson, n, pair_point, keys))

    return point.cache(f"rblock2:{n}:{first}{second}", build)


def _embedded_block(n: int, point: ScalarPoint, a: int, b: int) -> RBlock:
    """R_ab on three modules from the two-module blocks at (u_a, u_b), one per spectator level."""

    def build() -> RBlock:
        c = _spectator(a, b)
        keys = list(FockSpace(point, 3).basis(n))
        blocks = {m: _two_component_block(m, point, a, b) for m in range(n + 1)}
        boson = []
        for row in keys:
            entries = []
            for col in keys:
                if row[c] != col[c]:
                    entries.append(point.zero)
                    continue
                block = blocks[n - col[c].size]
                entries.append(
                    block.entry(PartitionTuple((row[a], row[b])), PartitionTuple((col[a], col[b])))
                )
            boson.append(entries)
        return RBlock(n, 3, (a + 1, b + 1), keys, dict(blocks[n].constants), _with_bases(boson, n, point, keys))

    return point.cache(f"rblock-embedded:{n}:{a}{b}", build)


def solve_r_block(n: int, n_components: int, pair_: Pair, point: ScalarPoint) -> RBlock:
    """R at level n on N = 2 or 3 Fock modules.

    ``point`` carries three weights. For N=2 only the pair (1,2) exists and
    u3 is the spectator the constants are solved against.
    """
    _guard(n, point)
    pair_ = tuple(pair_)
    if n_components == 2:
        if pair_ != (1, 2):
            raise ValueError(f"two modules only carry R12, got {pair_}")
        return _two_component_block(n, point, 0, 1)
    if n_components != 3 or pair_ not in PAIRS:
        raise ValueError(f"unsupported R-matrix block N={n_components}, pair={pair_}")
    if n == 0:
        return _identity_block(3, pair_, point)
    a, b = pair_[0] - 1, pair_[1] - 1
    if pair_ == (1, 2):
        return _adjacent_block(n, point, a, b)
    return _embedded_block(n, point, a, b)


def conjectured_constant(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """(q/t)^{(|A|+|B|)/2} N_AB(u1/u2) / N_AB(q u1/(t u2)) for λ⃗ = (A, B)."""
    first, second = lam
    u1, u2 = point.uu[:2]
    q, t = point.q, point.t
    ratio = u1 / u2
    return point.p_half(lam.size) * nek_factor(first, second, ratio, q, t) / nek_factor(first, second, q * ratio / t, q, t)


def yang_baxter_check(n: int, point: ScalarPoint) -> CheckReport:
    """Yang-Baxter on three modules, plus the solved R12 against its embedded two-module block."""
    _guard(n, point)
    report = CheckReport("rmatrix")
    r12, r13, r23 = (solve_r_block(n, 3, pair_, point) for pair_ in PAIRS)
    keys = r12.keys
    left = linalg.matmul(linalg.matmul(r12.matrix(), r13.matrix()), r23.matrix())
    right = linalg.matmul(linalg.matmul(r23.matrix(), r13.matrix()), r12.matrix())
    report.record(
        f"rmatrix.yang-baxter.L{n}",
        YANG_BAXTER_ANCHOR,
        linalg.matrices_equal(left, right),
        point,
        **_first_mismatch(left, right, keys),
    )
    if n:
        embedded = _embedded_block(n, point, 0, 1).matrix()
        report.record(
            f"rmatrix.embedding.R12.L{n}",
            "R12 solved on three modules equals the two-module block at (u1, u2)",
            linalg.matrices_equal(r12.matrix(), embedded),
            point,
            **_first_mismatch(r12.matrix(), embedded, keys),
        )
    return report


def unitarity_check(n: int, point: ScalarPoint) -> CheckReport:
    """R(u2, u1), conjugated by the module swap, inverts R(u1, u2) on two modules."""
    _guard(n, point)
    report = CheckReport("rmatrix")
    forward = _two_component_block(n, point, 0, 1)
    backward = _two_component_block(n, point, 1, 0)
    keys = forward.keys
    index = {key: k for k, key in enumerate(keys)}
    conjugated = [
        [backward.matrix()[index[row.swapped(0, 1)]][index[col.swapped(0, 1)]] for col in keys] for row in keys
    ]
    product = linalg.matmul(conjugated, forward.matrix())
    unit = linalg.identity(len(keys), point.one, point.zero)
    report.record(
        f"rmatrix.unitarity.L{n}",
        "Π R(u2,u1) Π R(u1,u2) = 1",
        linalg.matrices_equal(product, unit),
        point,
        **_first_mismatch(product, unit, keys),
    )
    for lam in keys:
        report.compare(
            f"rmatrix.unitarity.constant.{lam!r}",
            "k_λ⃗(u1,u2) k_{swap λ⃗}(u2,u1) = 1",
            forward.constants[lam] * backward.constants[lam.swapped(0, 1)],
            point.one,
            point,
        )
    return report


def product_route_check(n: int, point: ScalarPoint) -> CheckReport:
    """R12 rebuilt from the transition matrices over products of Macdonald functions."""
    _guard(n, point)
    report = CheckReport("rmatrix")
    block = solve_r_block(n, 3, (1, 2), point)
    keys = block.keys
    basis = gen_macdonald(n, point)
    swapped = gen_macdonald(n, _reordered(point, (1, 0, 2)))
    transition = [[basis.coefficient(lam, nu) for nu in keys] for lam in keys]
    transition_op = [
        [block.constants[lam] * swapped.coefficient(lam.swapped(0, 1), nu.swapped(0, 1)) for nu in keys] for lam in keys
    ]
    products = [basis.product_ket(nu).vector(keys) for nu in keys]
    middle = linalg.matmul(linalg.inverse(transition), transition_op)
    boson = linalg.transpose(linalg.matmul(linalg.matmul(linalg.inverse(products), middle), products))
    report.record(
        f"rmatrix.product-route.R12.L{n}",
        R_ANCHOR,
        linalg.matrices_equal(boson, block.matrix()),
        point,
        **_first_mismatch(boson, block.matrix(), keys),
    )
    return report


def integral_form_r_check(n: int, point: ScalarPoint) -> CheckReport:
    """Integral-form image, pairing formula and the conjectured constants on two modules."""
    _guard(n, point)
    report = CheckReport("rmatrix")
    block = _two_component_block(n, point, 0, 1)
    for lam in block.keys:
        report.compare(f"rmatrix.constant.{lam!r}", CONSTANT_ANCHOR, block.constants[lam], conjectured_constant(lam, point), point)
    if not n:
        return report
    pair_point, swapped_point = _reordered(point, (0, 1)), _reordered(point, (1, 0))
    forms, swapped_forms = _forms(n, pair_point), _forms(n, swapped_point)
    if forms is None or swapped_forms is None or RBasis.INTEGRAL not in block.matrices:
        report.skip(f"rmatrix.integral.L{n}", INTEGRAL_ANCHOR, "integral forms are not normalisable at this point")
        return report
    keys = block.keys
    space = forms.kets[keys[0]].space
    basis = gen_macdonald(n, pair_point)
    boson, integral = block.matrix(RBasis.BOSON), block.matrix(RBasis.INTEGRAL)
    images = {lam: _relabel(swapped_forms.kets[lam.swapped(0, 1)], space, 0, 1) for lam in keys}
    for column, lam in enumerate(keys):
        ket, image = forms.kets[lam], images[lam]
        report.record(
            f"rmatrix.integral.image.{lam!r}",
            INTEGRAL_ANCHOR,
            _apply(boson, ket.vector(keys), point.zero) == image.vector(keys),
            point,
        )
        support = next(key for key, _ in basis.ket(lam))
        scale = ket.coefficient(support) / basis.ket(lam).coefficient(support)
        swapped_ket = gen_macdonald(n, swapped_point).ket(lam.swapped(0, 1))
        swapped_support = next(key for key, _ in swapped_ket)
        swapped_scale = swapped_forms.kets[lam.swapped(0, 1)].coefficient(swapped_support) / swapped_ket.coefficient(
            swapped_support
        )
        report.compare(
            f"rmatrix.integral.normalisation.{lam!r}",
            "k_λ⃗ times the ratio of integral-form normalisations is 1",
            block.constants[lam] * scale / swapped_scale,
            point.one,
            point,
        )
        for row, mu in enumerate(keys):
            report.compare(
                f"rmatrix.integral.pairing.{lam!r}.{mu!r}",
                "R_λ⃗μ⃗ = ⟨K_μ⃗|K^op_λ⃗⟩ / ⟨K_μ⃗|K_μ⃗⟩",
                integral[row][column],
                pair(forms.bras[mu], image) / forms.norm(mu),
                point,
            )
    kets = linalg.transpose([forms.kets[lam].vector(keys) for lam in keys])
    kets_op = linalg.transpose([images[lam].vector(keys) for lam in keys])
    routed = linalg.matmul(kets_op, linalg.inverse(kets))
    report.record(
        f"rmatrix.integral.product.L{n}",
        "K^op K^{-1} equals the boson block",
        linalg.matrices_equal(routed, boson),
        point,
        **_first_mismatch(routed, boson, keys),
    )
    return report


def reference_check(point: ScalarPoint) -> CheckReport:
    """Every committed R-matrix reference table at one point."""
    report = CheckReport("rmatrix")
    two = {n: solve_r_block(n, 2, (1, 2), point) for n in (1, 2)}
    table_check(report, "rmatrix", "k-constants", lambda row, _: two[row.size].constants[row], point)
    for pair_ in ((1, 2), (2, 3), (1, 3)):
        block = solve_r_block(1, 3, pair_, point)
        table_check(
            report, "rmatrix", f"boson-{pair_[0]}{pair_[1]}", lambda row, col, block=block: block.entry(row, col), point
        )
    r12 = solve_r_block(1, 3, (1, 2), point)
    table_check(report, "rmatrix", "genmac-12", lambda row, col: r12.entry(row, col, RBasis.GENMAC), point)
    transition = gen_macdonald(2, point)
    table_check(report, "rmatrix", "transition-n3-level2", transition.coefficient, point)
    table_check(report, "rmatrix", "genmac-level2", lambda row, col: two[2].entry(row, col, RBasis.GENMAC), point)
    table_check(report, "rmatrix", "boson-level2-diagonal", two[2].entry, point)
    return report
