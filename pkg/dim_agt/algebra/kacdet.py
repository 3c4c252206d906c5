"""Gram matrices of PBW vectors, the Kac determinant, Whittaker vectors and singular vectors."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Sequence

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import (
    Partition,
    PartitionTuple,
    b_factors,
    enumerate_tuples,
    one_column,
    partitions_of,
    rectangle,
    tuple_count,
)
from dim_agt.algebra.fock import BosonKind, FockSpace, FockState, apply_word, apply_word_bra, pair
from dim_agt.algebra.generators import (
    all_generators,
    crystal_T,
    crystal_pbw_bra,
    crystal_pbw_ket,
    crystal_space,
    generator_X,
    pbw_bra,
    pbw_ket,
    virasoro_T,
)
from dim_agt.algebra.genmac import gen_macdonald_vector
from dim_agt.algebra.nekrasov import CRYSTAL_VARIABLE, PURE_VARIABLE, inverse_shapovalov_column, z_pure, z_pure_crystal
from dim_agt.algebra.scalars import ScalarPoint, Series, constrained_point, inv, power, scalar_to_json
from dim_agt.algebra.symfunc import SymFunc, hall_littlewood, inner_qt, macdonald
from dim_agt.config import KAC_LEVEL_GUARD, MAX_CRYSTAL_ORDER
from dim_agt.errors import CostGuardError, EigenvalueCollision, SingularSystem
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

KAC_ANCHOR = "Kac determinant of the level-N representation"


class GramTag(str, Enum):
    PBW = "pbw"
    PBW_PRIME = "pbw-prime"
    VIRASORO = "virasoro"
    CRYSTAL = "crystal"
    CRYSTAL_VIRASORO = "crystal-virasoro"


@dataclass
class GramMatrix:
    """⟨A_λ⃗|A_μ⃗⟩ over the level-n keys in canonical order."""

    level: int
    tag: GramTag
    keys: list[PartitionTuple]
    entries: linalg.Matrix

    def entry(self, lam: PartitionTuple, mu: PartitionTuple) -> Any:
        return self.entries[self.keys.index(lam)][self.keys.index(mu)]

    def det(self) -> Any:
        return linalg.det(self.entries)

    def inverse(self) -> linalg.Matrix:
        return linalg.inverse(self.entries)

    def to_json(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "tag": self.tag.value,
            "keys": [key.to_json() for key in self.keys],
            "entries": [[scalar_to_json(x) for x in row] for row in self.entries],
        }


def _level_cap(tag: GramTag, n_components: int) -> int:
    if tag in (GramTag.VIRASORO, GramTag.CRYSTAL_VIRASORO):
        return KAC_LEVEL_GUARD[1]
    if tag is GramTag.CRYSTAL:
        return KAC_LEVEL_GUARD[2]
    return KAC_LEVEL_GUARD.get(n_components, 0)


def _single(lam: Partition) -> PartitionTuple:
    return PartitionTuple((lam,))


def _gram(bras: Sequence[FockState], kets: Sequence[FockState]) -> linalg.Matrix:
    return [[pair(bra, ket) for ket in kets] for bra in bras]


def pbw_gram(n: int, point: ScalarPoint, tag: GramTag | str = GramTag.PBW, k: Any = None) -> GramMatrix:
    """Gram matrix of one of the PBW-type bases at level n.

    ``k`` is the Virasoro highest weight for the two Virasoro tags and
    defaults to the point's k.
    """
    tag = GramTag(tag)
    n_components = 2 if tag is GramTag.CRYSTAL else point.n_components
    cap = _level_cap(tag, n_components)
    if n > cap:
        raise CostGuardError(f"{tag.value} Gram matrix at level {n} exceeds the cap {cap} for N={n_components}")
    k = point.k if k is None else k
    if tag in (GramTag.PBW, GramTag.PBW_PRIME):
        space = FockSpace(point, n_components, BosonKind.QT, n)
        currents = all_generators(space)
        prime = tag is GramTag.PBW_PRIME
        keys = list(space.basis(n))
        bras = [pbw_bra(key, space, currents, prime) for key in keys]
        kets = [pbw_ket(key, space, currents, prime) for key in keys]
    elif tag is GramTag.CRYSTAL:
        if point.n_components != 2:
            raise ValueError("the crystal PBW basis is defined for N=2")
        space = crystal_space(point, 2, n)
        keys = list(space.basis(n))
        bras = [crystal_pbw_bra(key[0], key[1], space) for key in keys]
        kets = [crystal_pbw_ket(key[0], key[1], space) for key in keys]
    else:
        if tag is GramTag.VIRASORO:
            space = FockSpace(point, 1, BosonKind.QT, n)
            current = virasoro_T(space, k)
        else:
            space = crystal_space(point, 1, n)
            current = crystal_T(space, k)
        keys = [_single(lam) for lam in partitions_of(n)]
        bras = [apply_word_bra(space.vacuum(), [(current, part) for part in reversed(key[0].parts)]) for key in keys]
        kets = [apply_word([(current, -part) for part in key[0]], space.vacuum()) for key in keys]
    return GramMatrix(n, tag, keys, _gram(bras, kets))


def kac_formula(n: int, point: ScalarPoint) -> Any:
    """∏_{λ⃗⊢n}∏_k b_{λ^(k)}(q) b'_{λ^(k)}(t^{-1}) × ∏_{rs≤n} ((u_1⋯u_N)² ∏_{i<j}(u_i-q^s t^{-r} u_j)(u_i-q^{-r} t^s u_j))^{P^(N)(n-rs)}."""
    q, t, u = point.q, point.t, point.uu
    n_components = len(u)
    t_inv = inv(t)
    value = point.one
    for lam in enumerate_tuples(n_components, n):
        for component in lam:
            value *= b_factors(component, q)[0] * b_factors(component, t_inv)[1]
    for r in range(1, n + 1):
        for s in range(1, n // r + 1):
            factor = power(point.e_n(u), 2)
            for i in range(n_components):
                for j in range(i + 1, n_components):
                    factor *= (u[i] - power(q, s) * power(t, -r) * u[j]) * (u[i] - power(q, -r) * power(t, s) * u[j])
            value *= power(factor, tuple_count(n_components, n - r * s))
    return value


def kac_det_check(n: int, n_components: int, points: Sequence[ScalarPoint]) -> CheckReport:
    report = CheckReport("kacdet")
    cap = KAC_LEVEL_GUARD.get(n_components, 0)
    if n > cap:
        raise CostGuardError(f"Kac determinant at level {n} exceeds the cap {cap} for N={n_components}")
    for point in points:
        if point.n_components != n_components:
            raise ValueError(f"point has N={point.n_components}, expected {n_components}")
        with report.timed():
            report.compare(
                f"kacdet.det.N{n_components}.n{n}.seed{point.seed}",
                KAC_ANCHOR,
                pbw_gram(n, point).det(),
                kac_formula(n, point),
                point,
            )
    return report


def whittaker(order: int, k: Any, point: ScalarPoint) -> Series:
    """⟨G|G⟩ = Σ_n Λ^{4n} B^{(1^n),(1^n)} with B_{λμ} = ⟨T_λ|T_{-μ}⟩ on |k⟩."""
    cap = KAC_LEVEL_GUARD[1]
    if order > cap:
        raise CostGuardError(f"Whittaker order {order} exceeds the cap {cap}")
    coeffs = [point.zero] * (4 * order + 1)
    for n in range(order + 1):
        gram = pbw_gram(n, point, GramTag.VIRASORO, k)
        column = gram.keys.index(_single(one_column(n)))
        coeffs[4 * n] = gram.inverse()[column][column]
    return Series(coeffs, 4 * order + 1, PURE_VARIABLE)


def crystal_whittaker(order: int, point: ScalarPoint) -> Series:
    """⟨G̃|G̃⟩ = Σ_n Λ̃^{4n} / b_{(1^n)}(t^{-1})."""
    if order > MAX_CRYSTAL_ORDER:
        raise CostGuardError(f"crystal Whittaker order {order} exceeds the cap {MAX_CRYSTAL_ORDER}")
    t_inv = inv(point.t)
    coeffs = [point.zero] * (4 * order + 1)
    for n in range(order + 1):
        coeffs[4 * n] = inv(b_factors(one_column(n), t_inv)[0])
    return Series(coeffs, 4 * order + 1, CRYSTAL_VARIABLE)


def whittaker_check(order: int, point: ScalarPoint) -> CheckReport:
    """⟨G|G⟩ against Z_pure at Q = k², and the crystal norm by inversion, closed form and Z̃_pure."""
    report = CheckReport("kacdet")
    k = point.convert(point.k)
    with report.timed():
        report.record(
            f"kacdet.whittaker.order{order}",
            "norm of the Whittaker vector equals the pure gauge partition function at k = Q^{1/2}",
            whittaker(order, k, point) == z_pure(order, k * k, point),
            point,
        )
    closed = crystal_whittaker(order, point)
    for n in range(min(order, KAC_LEVEL_GUARD[1]) + 1):
        gram = pbw_gram(n, point, GramTag.CRYSTAL_VIRASORO)
        column = gram.keys.index(_single(one_column(n)))
        report.compare(
            f"kacdet.crystal-whittaker.inversion.{n}",
            "crystal Whittaker norm from the inverse crystal Shapovalov form",
            gram.inverse()[column][column],
            closed[4 * n],
            point,
        )
    report.record(
        f"kacdet.crystal-whittaker.order{order}",
        "crystal Whittaker norm equals the crystal pure gauge partition function",
        closed == z_pure_crystal(order, k * k, point),
        point,
    )
    return report


def _hl_overlap(lam: Partition, mu: Partition, point: ScalarPoint, negate_left: bool) -> Any:
    """⟨Q_λ(±p;t^{-1}), Q_μ(∓p;t^{-1})⟩_{0,t^{-1}}."""
    t_inv = inv(point.t)
    _, q_lam = hall_littlewood(lam, point, t_inv)
    _, q_mu = hall_littlewood(mu, point, t_inv)
    left, right = (q_lam.negate_arguments(), q_mu) if negate_left else (q_lam, q_mu.negate_arguments())
    return inner_qt(left, right, point, q=point.zero, t=t_inv)


def crystal_shapovalov(n: int, point: ScalarPoint) -> tuple[GramMatrix, GramMatrix]:
    """Closed Hall-Littlewood forms of S_{λ⃗μ⃗} = ⟨X̃_λ⃗|X̃_μ⃗⟩ and of its inverse (N=2).

    S is diagonal in the first component with weight b_{λ^(1)}(t^{-1}) and
    carries ⟨Q_{λ^(2)}(p), Q_{μ^(2)}(-p)⟩_{0,t^{-1}} in the second.
    """
    if n > KAC_LEVEL_GUARD[2] + 1:
        raise CostGuardError(f"crystal Shapovalov level {n} exceeds the cap {KAC_LEVEL_GUARD[2] + 1}")
    u1, u2 = point.uu
    t_inv = inv(point.t)
    keys = list(enumerate_tuples(2, n))
    forward: linalg.Matrix = []
    backward: linalg.Matrix = []
    for lam in keys:
        row, inverse_row = [], []
        for mu in keys:
            if lam[0] != mu[0]:
                row.append(point.zero)
                inverse_row.append(point.zero)
                continue
            b_first = b_factors(lam[0], t_inv)[0]
            row.append(
                power(u1 * u2, lam[1].length + mu[1].length)
                * power(u1, lam[0].length)
                * power(u2, mu[0].length)
                * b_first
                * _hl_overlap(lam[1], mu[1], point, negate_left=False)
            )
            inverse_row.append(
                power(u1 * u2, -lam[1].length - mu[1].length)
                * power(u1, -mu[0].length)
                * power(u2, -lam[0].length)
                * _hl_overlap(lam[1], mu[1], point, negate_left=True)
                / (b_first * b_factors(lam[1], t_inv)[0] * b_factors(mu[1], t_inv)[0])
            )
        forward.append(row)
        backward.append(inverse_row)
    return GramMatrix(n, GramTag.CRYSTAL, keys, forward), GramMatrix(n, GramTag.CRYSTAL, keys, backward)


def crystal_shapovalov_check(level: int, point: ScalarPoint, lemma_level: int = 4) -> CheckReport:
    report = CheckReport("kacdet")
    anchor = "crystal Shapovalov matrix through Hall-Littlewood functions"
    for n in range(level + 1):
        closed, closed_inverse = crystal_shapovalov(n, point)
        direct = pbw_gram(n, point, GramTag.CRYSTAL)
        report.record(f"kacdet.crystal-shapovalov.{n}", anchor, linalg.matrices_equal(direct.entries, closed.entries), point)
        report.record(
            f"kacdet.crystal-shapovalov-inverse.{n}",
            anchor,
            linalg.matrices_equal(direct.inverse(), closed_inverse.entries),
            point,
        )
        size = len(closed.keys)
        report.record(
            f"kacdet.crystal-shapovalov-product.{n}",
            anchor,
            linalg.matrices_equal(linalg.matmul(closed_inverse.entries, closed.entries), linalg.identity(size, point.one, point.zero)),
            point,
        )
    lemma_anchor = "inverse Shapovalov entries against the single column (1^n)"
    for n in range(1, lemma_level + 1):
        _, closed_inverse = crystal_shapovalov(n, point)
        column = PartitionTuple.of((), one_column(n))
        for lam in partitions_of(n):
            report.compare(
                f"kacdet.crystal-lemma.{lam}",
                lemma_anchor,
                closed_inverse.entry(column, PartitionTuple.of((), lam)),
                inverse_shapovalov_column(lam, point.uu, point.t),
                point,
            )
    return report


def singular_point(base: ScalarPoint, n_components: int, i: int, r: int, s: int) -> ScalarPoint:
    """``base`` restricted to N components with u_{N-i} = q^s t^{-r} u_{N-i+1}."""
    if not 1 <= i < n_components:
        raise ValueError(f"i must lie in 1..{n_components - 1}, got {i}")
    u = list(base.u[:n_components])
    if len(u) != n_components:
        raise ValueError(f"base point has only {len(base.u)} weights")
    u[n_components - i - 1] = power(base.q, s) * power(base.t, -r) * u[n_components - i]
    return constrained_point(base, u)


def multi_singular_point(base: ScalarPoint, r: Sequence[int], s: Sequence[int]) -> ScalarPoint:
    """u_i = q^{s_{N-i}} t^{-r_{N-i}+r_{N-i-1}} u_{i+1} for every i, with r_0 = 0."""
    n_components = len(r) + 1
    rr = [0, *r]
    u: list[Any] = [None] * n_components
    u[-1] = base.u[n_components - 1]
    for i in range(n_components - 1, 0, -1):
        k = n_components - i
        u[i - 1] = power(base.q, s[k - 1]) * power(base.t, rr[k - 1] - rr[k]) * u[i]
    return constrained_point(base, u)


def staircase_tuple(r: Sequence[int], s: Sequence[int]) -> PartitionTuple:
    """(∅,…,∅,λ) with λ built from columns of heights r_k - r_{k+1} and widths s_1+…+s_k (r_k ≥ r_{k+1})."""
    n_components = len(r) + 1
    rr = [*r, 0]
    parts: list[int] = []
    for k in range(n_components - 1, 0, -1):
        parts.extend([sum(s[:k])] * (rr[k - 1] - rr[k]))
    empties = [Partition()] * (n_components - 1)
    return PartitionTuple((*empties, Partition(tuple(p for p in parts if p))))


def theta_tuple(r: Sequence[int], s: Sequence[int]) -> PartitionTuple:
    """(∅, (s_{N-1}^{r_{N-1}-r_{N-2}}), …, ((s_1+…+s_{N-1})^{r_1})) for increasing r."""
    n_components = len(r) + 1
    rr = [0, *r]
    components = [Partition()]
    for j in range(2, n_components + 1):
        first = n_components - j + 1
        components.append(rectangle(rr[first] - rr[first - 1], sum(s[first - 1:])))
    return PartitionTuple(tuple(components))


def _h_weight(point: ScalarPoint, n_components: int, k: int, n: int) -> Any:
    """Coefficient of a^{(k)}_n in -h^{(N)}_n/(1-q^n)."""
    p, q, t = point.p, point.q, point.t
    shared = (1 - power(p, n)) / (1 - power(p, n_components * n)) * power(p, (n_components - 1) * n)
    coefficient = shared * point.p_half(-(k - 1) * n)
    if k == n_components:
        coefficient -= point.p_half((n_components - 1) * n)
    coefficient *= (1 - power(t, n)) / point.const(n)
    return -coefficient / (1 - power(q, n))


def h_projection(state: FockState) -> SymFunc:
    """⟨u⃗| exp(-Σ p_n h^{(N)}_n/(1-q^n)) |state⟩ as a function of the power sums p_n."""
    space = state.space
    point = space.point
    terms: dict[Partition, Any] = {}
    for key, c in state:
        value = c
        parts: list[int] = []
        for k, component in enumerate(key, start=1):
            for m in component:
                value *= _h_weight(point, space.n_bosons, k, m) * space.kappa(m)
                parts.append(m)
        lam = Partition(tuple(sorted(parts, reverse=True)))
        terms[lam] = terms.get(lam, point.zero) + value
    return SymFunc({lam: c for lam, c in terms.items() if c})


def _proportional(f: SymFunc, g: SymFunc) -> bool:
    for lam, c in g:
        if c:
            ratio = f.coefficient(lam) / c
            return bool(ratio) and (f - g.scale(ratio)).is_zero()
    return False


def _annihilation(report: CheckReport, tag: str, lam: PartitionTuple, point: ScalarPoint, anchor: str) -> FockState | None:
    try:
        state = gen_macdonald_vector(lam, point)
    except (EigenvalueCollision, SingularSystem) as exc:
        report.record(f"{tag}.exists", anchor, False, point, error=str(exc))
        return None
    space = state.space
    level = lam.size
    for j in range(1, space.n_bosons + 1):
        current = generator_X(space, j)
        for m in range(1, level + 1):
            image = current.apply(m, state)
            report.record(
                f"{tag}.X{j}.{m}",
                anchor,
                image.is_zero(),
                point,
                mode=m,
                generator=j,
            )
    return state


def _projection(report: CheckReport, tag: str, state: FockState, lam: PartitionTuple, point: ScalarPoint) -> None:
    if any(component for component in lam[:-1]):
        return
    report.record(
        f"{tag}.projection",
        "projection of a singular generalized Macdonald function onto h^(N) is an ordinary Macdonald function",
        _proportional(h_projection(state), macdonald(lam[-1], point)[0]),
        point,
    )


def _kac_vanishes(report: CheckReport, tag: str, point: ScalarPoint, level: int) -> None:
    cap = KAC_LEVEL_GUARD.get(point.n_components, 0)
    if level > cap:
        report.skip(f"{tag}.kac-zero", KAC_ANCHOR, f"level {level} above the cap {cap}")
        return
    report.record(f"{tag}.kac-zero", KAC_ANCHOR, not pbw_gram(level, point).det(), point)


def singular_vector_check(n_components: int, i: int, r: int, s: int, base: ScalarPoint) -> CheckReport:
    """P_{(∅,…,(s^r),…,∅)} is annihilated by every X^(j)_{m>0} at u_{N-i} = q^s t^{-r} u_{N-i+1}."""
    if r * s > 3:
        raise CostGuardError(f"singular vectors at level {r * s} exceed the cap 3")
    report = CheckReport("kacdet")
    tag = f"kacdet.singular.N{n_components}.i{i}.r{r}.s{s}"
    anchor = "singular vector at a single degenerate weight"
    generic = base.with_u(base.u[:n_components])
    report.record(f"{tag}.generic-basis", "PBW vectors are a basis at generic weights", bool(pbw_gram(1, generic).det()), generic)
    point = singular_point(base, n_components, i, r, s)
    components = [Partition()] * n_components
    components[n_components - i] = rectangle(r, s)
    lam = PartitionTuple(tuple(components))
    with report.timed():
        state = _annihilation(report, tag, lam, point, anchor)
    if state is not None:
        _projection(report, tag, state, lam, point)
    _kac_vanishes(report, tag, point, r * s)
    logger.info("singular vector N=%s i=%s r=%s s=%s: %s", n_components, i, r, s, report.summary())
    return report


def multi_singular_tuple(r: Sequence[int], s: Sequence[int]) -> tuple[PartitionTuple, str]:
    """The staircase tuple (case A, weakly decreasing r) or the Θ tuple (case B, strictly increasing r)."""
    if all(r[k] >= r[k + 1] for k in range(len(r) - 1)):
        return staircase_tuple(r, s), "A"
    if all(r[k] < r[k + 1] for k in range(len(r) - 1)):
        return theta_tuple(r, s), "B"
    raise ValueError(f"r must be weakly decreasing or strictly increasing, got {list(r)}")


def multi_singular_check(r: Sequence[int], s: Sequence[int], base: ScalarPoint) -> CheckReport:
    """Staircase tuples for decreasing r and Θ tuples for increasing r at the multi-constraint weights."""
    n_components = len(r) + 1
    lam, case = multi_singular_tuple(r, s)
    if lam.size > 3:
        raise CostGuardError(f"singular vectors at level {lam.size} exceed the cap 3")
    report = CheckReport("kacdet")
    tag = f"kacdet.singular-{case}.r{'-'.join(map(str, r))}.s{'-'.join(map(str, s))}"
    point = multi_singular_point(base, r, s)
    anchor = f"singular vector at multiple degenerate weights, case {case}"
    logger.debug("N=%s singular tuple %r", n_components, lam)
    with report.timed():
        state = _annihilation(report, tag, lam, point, anchor)
    if state is not None and case == "A":
        _projection(report, tag, state, lam, point)
    return report

