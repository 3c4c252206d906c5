"""Nekrasov factors, pure-gauge partition functions, crystal limits and the AFLT checks."""

from __future__ import annotations

import logging
from typing import Any, Sequence

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import (
    EMPTY,
    Partition,
    PartitionTuple,
    b_factors,
    check_part,
    crystal_nek,
    enumerate_tuples,
    nek_factor,
    one_column,
    partitions_of,
)
from dim_agt.algebra.fock import VertexOperator, pair, product_state
from dim_agt.algebra.generators import Frame, crystal_pbw_bra, crystal_pbw_ket, crystal_space
from dim_agt.algebra.genmac import crystal_integral_forms, gen_macdonald, integral_forms
from dim_agt.algebra.scalars import ScalarPoint, Series, Slot, inv, is_symbolic, power, value_at_zero
from dim_agt.algebra.symfunc import hall_littlewood
from dim_agt.algebra.vertex_phi import crystal_phi, operator_table, vertex_phi
from dim_agt.config import MAX_CRYSTAL_ORDER, MAX_PHI_LEVEL
from dim_agt.errors import CostGuardError, EvaluationError
from dim_agt.reports import CheckReport

__all__ = [
    "nek_factor",
    "crystal_nek",
    "z_pure",
    "z_pure_crystal",
    "crystal_limit_check",
    "norm_conjecture",
    "phi_conjecture",
    "conjecture_checks",
    "crystal_norm_conjecture",
    "crystal_phi_conjecture",
    "crystal_conjecture_checks",
    "crystal_n1_check",
    "four_point_closed",
    "four_point_pbw",
    "four_point_aflt",
    "four_point_fock",
    "grouped_aflt",
    "factorization_rhs",
    "four_point_check",
]

logger = logging.getLogger(__name__)

PURE_VARIABLE = "Lambda"
CRYSTAL_VARIABLE = "Lambda~"
FOUR_POINT_VARIABLE = "x"


def _guard(order: int, cap: int, what: str) -> None:
    if order > cap:
        raise CostGuardError(f"{what} order {order} exceeds the cap {cap}")


def _safe_inverse(value: Any, point: ScalarPoint, what: str) -> Any:
    if not value:
        raise EvaluationError(f"vanishing {what}", point.describe())
    return inv(value)


def pure_weight(lam: Partition, mu: Partition, Q: Any, q: Any, t: Any) -> Any:
    """N_{λλ}(1) N_{λμ}(Q) N_{μμ}(1) N_{μλ}(Q^{-1})."""
    one = Q**0
    return (
        nek_factor(lam, lam, one, q, t)
        * nek_factor(lam, mu, Q, q, t)
        * nek_factor(mu, mu, one, q, t)
        * nek_factor(mu, lam, inv(Q), q, t)
    )


def z_pure(order: int, Q: Any, point: ScalarPoint) -> Series:
    """Σ_{|λ|+|μ| ≤ order} (Λ⁴t/q)^{|λ|+|μ|} / (N_{λλ}(1)N_{λμ}(Q)N_{μμ}(1)N_{μλ}(Q^{-1}))."""
    _guard(order, 4, "pure gauge")
    q, t = point.q, point.t
    Q = point.convert(Q)
    coeffs = [point.zero] * (4 * order + 1)
    for k in range(order + 1):
        total = point.zero
        for lam, mu in enumerate_tuples(2, k):
            total += _safe_inverse(pure_weight(lam, mu, Q, q, t), point, "Nekrasov denominator")
        coeffs[4 * k] = power(t / q, k) * total
    return Series(coeffs, 4 * order + 1, PURE_VARIABLE)


def z_pure_crystal(order: int, Q: Any, point: ScalarPoint) -> Series:
    """Σ_{n,m} Λ̃^{4(n+m)} / ∏_{s≤n}(1-t^{-s})(1-Q^{-1}t^{n-m-s}) ∏_{s≤m}(1-t^{-s})(1-Q t^{m-n-s})."""
    _guard(order, MAX_CRYSTAL_ORDER, "crystal pure gauge")
    t = point.t
    Q = point.convert(Q)
    coeffs = [point.zero] * (4 * order + 1)
    for k in range(order + 1):
        total = point.zero
        for n in range(k + 1):
            m = k - n
            denominator = point.one
            for s in range(1, n + 1):
                denominator *= (1 - power(t, -s)) * (1 - inv(Q) * power(t, n - m - s))
            for s in range(1, m + 1):
                denominator *= (1 - power(t, -s)) * (1 - Q * power(t, m - n - s))
            total += _safe_inverse(denominator, point, "crystal denominator")
        coeffs[4 * k] = total
    return Series(coeffs, 4 * order + 1, CRYSTAL_VARIABLE)


def crystal_limit_check(order: int, Q: Any, point: ScalarPoint, extra_q: Sequence[Any] = ()) -> CheckReport:
    """Z_pure at Λ⁴ = Λ̃⁴ t/q has the q → 0 limit Z̃_pure; Z̃_pure does not depend on Q."""
    report = CheckReport("agt-crystal")
    formal = point.with_slot(Slot.Q)
    q, t = formal.q, formal.t
    Qf = formal.convert(Q)
    crystal = z_pure_crystal(order, Q, point)
    for k in range(order + 1):
        total = formal.zero
        for lam, mu in enumerate_tuples(2, k):
            total += inv(pure_weight(lam, mu, Qf, q, t))
        total *= power(t / q, 2 * k)
        report.compare(
            f"crystal.pure-limit.{k}",
            "q → 0 limit of the pure gauge partition function at fixed Λ̃",
            value_at_zero(total),
            crystal[4 * k],
            point,
        )
    for other in extra_q:
        report.record(
            f"crystal.pure-q-independent.{other}",
            "Z̃_pure is independent of Q",
            z_pure_crystal(order, other, point) == crystal,
            point,
            Q=str(other),
        )
    return report


def _e_n(values: Sequence[Any], point: ScalarPoint) -> Any:
    return point.e_n(values)


def norm_conjecture(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """(-1)^{N|λ⃗|} e_N(u⃗)^{|λ⃗|} ∏_i t^{-Nn(λ^(i))} q^{Nn(λ^(i)')} u_i^{N|λ^(i)|} ∏_{i,j} N_{λ^(i)λ^(j)}(qu_i/tu_j)."""
    q, t, u = point.q, point.t, point.uu
    n_comp = len(lam)
    value = (-1) ** (n_comp * lam.size) * power(_e_n(u, point), lam.size)
    for i, component in enumerate(lam):
        value *= power(t, -n_comp * component.n()) * power(q, n_comp * component.conjugate().n())
        value *= power(u[i], n_comp * component.size)
    for i, a in enumerate(lam):
        for j, b in enumerate(lam):
            value *= nek_factor(a, b, q * u[i] / (t * u[j]), q, t)
    return value


def phi_conjecture(lam: PartitionTuple, mu: PartitionTuple, point: ScalarPoint, w: Any) -> Any:
    """Conjectured ⟨K_λ⃗|Φ^{v⃗}_{u⃗}(w)|K_μ⃗⟩."""
    q, t, u, v = point.q, point.t, point.uu, point.vv
    n_comp = len(lam)
    shift = lam.size - mu.size
    value = (-1) ** (lam.size + (n_comp - 1) * mu.size)
    value *= power(t / q, n_comp * shift) * power(_e_n(u, point), lam.size)
    value *= power(_e_n(v, point) * w, shift)
    for i, component in enumerate(mu):
        value *= power(u[i], n_comp * component.size)
        value *= power(q, n_comp * component.conjugate().n()) * power(t, -n_comp * component.n())
    for i, a in enumerate(lam):
        for j, b in enumerate(mu):
            value *= nek_factor(a, b, q * v[i] / (t * u[j]), q, t)
    return value


def _swap_weights(point: ScalarPoint) -> ScalarPoint:
    """The point whose highest weight is v⃗; used for bras on F_v⃗."""
    return point.with_u(point.v, point.u)


def conjecture_checks(level: int, point: ScalarPoint) -> CheckReport:
    """Norms of |K_λ⃗⟩, matrix elements of Φ between integral forms, and integrality of α."""
    if level > 2 or point.n_components > 2:
        raise CostGuardError("the integral-form conjectures are checked for N ≤ 2 and level ≤ 2")
    report = CheckReport("agt-generic")
    w = point.convert(point.w)
    kets = {n: integral_forms(gen_macdonald(n, point)) for n in range(level + 1)}
    bras = {n: integral_forms(gen_macdonald(n, _swap_weights(point))) for n in range(level + 1)}
    for n, forms in kets.items():
        for lam in forms.order:
            if lam in forms.vanishing:
                report.skip(f"norm.{lam!r}", "norm of |K_λ⃗⟩", "designated PBW coefficient vanishes")
                continue
            report.compare(
                f"norm.{lam!r}",
                "norm of |K_λ⃗⟩ as a product of Nekrasov factors",
                forms.norm(lam),
                norm_conjecture(lam, point),
                point,
            )
    table = vertex_phi(point, level)
    for n, bra_forms in bras.items():
        for m, ket_forms in kets.items():
            for lam in bra_forms.order:
                for mu in ket_forms.order:
                    if lam not in bra_forms.bras or mu not in ket_forms.kets:
                        continue
                    report.compare(
                        f"phi.{lam!r}.{mu!r}",
                        "matrix elements of Φ between integral forms",
                        table.element(bra_forms.bras[lam], ket_forms.kets[mu], w),
                        phi_conjecture(lam, mu, point, w),
                        point,
                    )
    report.extend(integrality_check(level, point))
    return report


def integrality_check(level: int, point: ScalarPoint) -> CheckReport:
    """The α, β coefficients of the integral forms have monomial denominators in q."""
    report = CheckReport("agt-generic")
    formal = point.with_slot(Slot.Q)
    for n in range(1, level + 1):
        forms = integral_forms(gen_macdonald(n, formal, Frame.BALANCED))
        bad = [
            f"{tag}:{lam!r}:{mu!r}"
            for tag, table in (("alpha", forms.alpha), ("beta", forms.beta))
            for lam, row in table.items()
            for mu, c in row.items()
            if is_symbolic(c) and len(c.denom.terms()) != 1
        ]
        report.record(
            f"integrality.N{point.n_components}.L{n}",
            "integral-form coefficients are polynomial in q up to a power of q",
            not bad,
            point,
            offending=bad[:5],
        )
    return report


def crystal_norm_conjecture(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """(u_1u_2)^{|λ⃗|} u_1^{2|λ¹|} u_2^{2|λ²|} t^{-2(n(λ¹)+n(λ²))} ∏ Ñ_{λ^(i)λ^(j)}(u_i/u_j)."""
    t, u = point.t, point.uu
    value = power(u[0] * u[1], lam.size) * power(u[0], 2 * lam[0].size) * power(u[1], 2 * lam[1].size)
    value *= power(t, -2 * (lam[0].n() + lam[1].n()))
    for i, a in enumerate(lam):
        for j, b in enumerate(lam):
            value *= crystal_nek(a, b, u[i] / u[j], t)
    return value


def crystal_phi_conjecture(lam: PartitionTuple, mu: PartitionTuple, point: ScalarPoint, z: Any) -> Any:
    """Conjectured ⟨K̃_λ⃗|Φ̃(z)|K̃_μ⃗⟩."""
    t, u, v = point.t, point.uu, point.vv
    value = (-1) ** (lam.size + mu.size) * power(u[0] * u[1] * v[0] * v[1] * z, lam.size - mu.size)
    value *= power(u[0], 2 * mu[0].size) * power(u[1], 2 * mu[1].size) * power(u[0] * u[1], mu.size)
    value *= power(t, -2 * (mu[0].n() + mu[1].n()))
    for i, a in enumerate(lam):
        for j, b in enumerate(mu):
            value *= crystal_nek(a, b, v[i] / u[j], t)
    return value


def crystal_conjecture_checks(level: int, point: ScalarPoint) -> CheckReport:
    """Crystal norms ⟨K̃|K̃⟩ and matrix elements of Φ̃ between crystal integral forms (N=2)."""
    if point.n_components != 2 or level > 2:
        raise CostGuardError("the crystal integral-form conjectures are checked for N=2 and level ≤ 2")
    report = CheckReport("agt-crystal")
    z = point.convert(point.x)
    kets = {n: crystal_integral_forms(n, point) for n in range(level + 1)}
    bras = {n: crystal_integral_forms(n, _swap_weights(point)) for n in range(level + 1)}
    for forms in kets.values():
        for lam in forms.order:
            if lam in forms.vanishing:
                report.skip(f"crystal-norm.{lam!r}", "crystal norm", "crystal integral form unavailable")
                continue
            report.compare(
                f"crystal-norm.{lam!r}",
                "norm of |K̃_λ⃗⟩ as a product of crystal Nekrasov factors",
                forms.norm(lam),
                crystal_norm_conjecture(lam, point),
                point,
            )
    table = crystal_phi(point, level)
    for bra_forms in bras.values():
        for ket_forms in kets.values():
            for lam, bra in bra_forms.bras.items():
                for mu, ket in ket_forms.kets.items():
                    report.compare(
                        f"crystal-phi-conjecture.{lam!r}.{mu!r}",
                        "matrix elements of Φ̃ between crystal integral forms",
                        table.element(bra, ket, z),
                        crystal_phi_conjecture(lam, mu, point, z),
                        point,
                    )
    return report


def crystal_n1_operator(point: ScalarPoint, max_level: int) -> tuple[Any, VertexOperator]:
    """exp{Σ u^n/n b_{-n} x^n} exp{Σ (u^{-n} - v^{-n}) t^n/n b_n x^{-n}} on the N=1 crystal module."""
    u, v, t = point.uu[0], point.vv[0], point.t
    space = crystal_space(point, 1, max_level)
    operator = VertexOperator.build(
        space,
        lambda _, n: power(u, n) / point.const(n),
        lambda _, n: (power(u, -n) - power(v, -n)) * power(t, n) / point.const(n),
    )
    return space, operator


def crystal_n1_element(lam: Partition, mu: Partition, point: ScalarPoint, x: Any) -> Any:
    """Ñ_{λμ}(v/u) x^{|λ|-|μ|} u^{|λ|} (-v)^{-|μ|} t^{|μ|+n(λ)}."""
    u, v, t = point.uu[0], point.vv[0], point.t
    return (
        crystal_nek(lam, mu, v / u, t)
        * power(x, lam.size - mu.size)
        * power(u, lam.size)
        * power(-v, -mu.size)
        * power(t, mu.size + lam.n())
    )


def crystal_n1_check(level: int, point: ScalarPoint) -> CheckReport:
    """⟨0|Q_λ(b_n;t) Φ̃(x) Q_μ(b_{-n};t)|0⟩ against the crystal Nekrasov factor, |λ|,|μ| ≤ level."""
    _guard(level, MAX_PHI_LEVEL, "N=1 crystal vertex operator")
    report = CheckReport("agt-crystal")
    space, operator = crystal_n1_operator(point, level)
    table = operator_table(space, operator, level)
    x = point.convert(point.x)
    shapes = [lam for n in range(level + 1) for lam in partitions_of(n)]
    states = {lam: product_state([hall_littlewood(lam, point)[1]], space) for lam in shapes}
    for lam in shapes:
        for mu in shapes:
            report.compare(
                f"crystal-n1.{lam}.{mu}",
                "N=1 crystal vertex operator between Hall-Littlewood functions",
                table.element(states[lam], states[mu], x),
                crystal_n1_element(lam, mu, point, x),
                point,
            )
    return report


def _ratio(values: Sequence[Any]) -> Any:
    return values[0] * values[1]


def four_point_closed(order: int, v: Sequence[Any], w: Sequence[Any], t: Any) -> Series:
    """Σ_λ x^{|λ|} ∏_{k≤ℓ(λ)}(1 - t^{k-1} w_1w_2/(v_1v_2)) / (t^{2n(λ)} b_λ(t^{-1}))."""
    _guard(order, MAX_CRYSTAL_ORDER, "four-point")
    r = _ratio(w) / _ratio(v)
    t_inv = inv(t)
    coeffs = []
    for n in range(order + 1):
        total = 0 * t
        for lam in partitions_of(n):
            numerator = t**0
            for k in range(1, lam.length + 1):
                numerator *= 1 - power(t, k - 1) * r
            total += numerator / (power(t, 2 * lam.n()) * b_factors(lam, t_inv)[0])
        coeffs.append(total)
    return Series(coeffs, order + 1, FOUR_POINT_VARIABLE)


def phi_column_element(lam: Partition, lower: Sequence[Any], upper: Sequence[Any], t: Any, z: Any) -> Any:
    """⟨upper|Φ̃(z)|X̃_{∅,λ}⟩ on F_lower: (-1)^{ℓ} (e z)^{-|λ|} t^{-n(λ)} ∏ (t^{k-1} e_upper - e_lower)."""
    e_up, e_low = _ratio(upper), _ratio(lower)
    value = (-1) ** lam.length * power(e_up * z, -lam.size) * power(t, -lam.n())
    for k in range(1, lam.length + 1):
        value *= power(t, k - 1) * e_up - e_low
    return value


def inverse_shapovalov_column(lam: Partition, u: Sequence[Any], t: Any) -> Any:
    """S^{(∅,(1^{|λ|})),(∅,λ)} = (-1)^{|λ|} t^{-n(λ)} (u_1u_2)^{-|λ|-ℓ(λ)} / b_λ(t^{-1})."""
    return (
        (-1) ** lam.size
        * power(t, -lam.n())
        * power(_ratio(u), -lam.size - lam.length)
        / b_factors(lam, inv(t))[0]
    )


def four_point_pbw(order: int, u: Sequence[Any], v: Sequence[Any], w: Sequence[Any], t: Any) -> Series:
    """Σ_λ ⟨w⃗|Φ̃|X̃_{∅,λ}⟩ S^{(∅,λ),(∅,(1^n))} ⟨X̃_{∅,(1^n)}|Φ̃|u⃗⟩ at z_1 = z_2 = 1, rescaled to powers of x."""
    _guard(order, MAX_CRYSTAL_ORDER, "four-point")
    scale = _ratio(u) / _ratio(w)
    one = t**0
    coeffs = []
    for n in range(order + 1):
        right = power(-_ratio(v) * _ratio(u), n)
        total = 0 * t
        for lam in partitions_of(n):
            total += phi_column_element(lam, v, w, t, one) * inverse_shapovalov_column(lam, v, t) * right
        coeffs.append(total / power(scale, n))
    return Series(coeffs, order + 1, FOUR_POINT_VARIABLE)


def aflt_weight(lam: PartitionTuple, v: Sequence[Any], w: Sequence[Any], t: Any) -> Any:
    """∏_{i,j} Ñ_{∅,λ^(j)}(w_i/v_j) / Ñ_{λ^(i),λ^(j)}(v_i/v_j)."""
    value = t**0
    for i in range(2):
        for j in range(2):
            value *= crystal_nek(EMPTY, lam[j], w[i] / v[j], t)
            value /= crystal_nek(lam[i], lam[j], v[i] / v[j], t)
    return value


def four_point_aflt(order: int, v: Sequence[Any], w: Sequence[Any], t: Any) -> Series:
    _guard(order, MAX_CRYSTAL_ORDER, "four-point")
    coeffs = [sum((aflt_weight(lam, v, w, t) for lam in enumerate_tuples(2, n)), 0 * t) for n in range(order + 1)]
    return Series(coeffs, order + 1, FOUR_POINT_VARIABLE)


def grouped_aflt(lam: Partition, v: Sequence[Any], w: Sequence[Any], t: Any) -> Any:
    """Sum of the AFLT weights over the pairs whose combined parts are those of λ."""
    return sum(
        (aflt_weight(pair_, v, w, t) for pair_ in enumerate_tuples(2, lam.size) if pair_[0].union_parts(pair_[1]) == lam),
        0 * t,
    )


def factorization_rhs(lam: Partition, v: Sequence[Any], w: Sequence[Any], t: Any) -> Any:
    """The factorised form of the grouped AFLT sum, with I_λ = Σ_{(i,j)∈λ̌} λ'_j."""
    r = _ratio(w) / _ratio(v)
    conjugate = lam.conjugate()
    i_lam = sum(conjugate.part(j) for _, j in check_part(lam).boxes())
    value = t**0
    for k in range(1, lam.length + 1):
        value *= 1 - power(t, k - 1) * r
    value /= power(t, 2 * lam.n()) * b_factors(lam, inv(t))[0]
    return value * power(r, lam.size - lam.length) * power(t, 2 * lam.n() - i_lam)


def four_point_fock(level: int, u: Sequence[Any], v: Sequence[Any], w: Sequence[Any], point: ScalarPoint) -> list[Any]:
    """Coefficients of x^n, n ≤ level, from Φ̃ tables and the full crystal Shapovalov inverse."""
    _guard(level, MAX_PHI_LEVEL, "crystal four-point")
    lower = crystal_phi(point.with_u(u, v), level)
    upper = crystal_phi(point.with_u(v, w), level)
    space = crystal_space(point.with_u(v), 2, level)
    scale = _ratio(u) / _ratio(w)
    vacuum = space.vacuum()
    coeffs = []
    for n in range(level + 1):
        keys = list(enumerate_tuples(2, n))
        kets = [crystal_pbw_ket(key[0], key[1], space, v) for key in keys]
        bras = [crystal_pbw_bra(key[0], key[1], space, v) for key in keys]
        gram = [[pair(bra, ket) for ket in kets] for bra in bras]
        inverse = linalg.inverse(gram)
        left = [upper.element(vacuum, ket) for ket in kets]
        right = [lower.element(bra, vacuum) for bra in bras]
        total = point.zero
        for a in range(len(keys)):
            for b in range(len(keys)):
                if inverse[a][b]:
                    total += left[a] * inverse[a][b] * right[b]
        coeffs.append(total / power(scale, n))
    return coeffs


def simple_property_check(level: int, point: ScalarPoint) -> CheckReport:
    """⟨X̃_λ⃗|Φ̃(z)|u⃗⟩ vanishes unless λ⃗ = (∅,(1^n)), where it is (-v_1v_2u_1u_2z)^n."""
    report = CheckReport("agt-crystal")
    table = crystal_phi(point, level)
    space = crystal_space(_swap_weights(point), 2, level)
    z = point.convert(point.x)
    u, v = point.uu, point.vv
    for n in range(level + 1):
        for key in enumerate_tuples(2, n):
            bra = crystal_pbw_bra(key[0], key[1], space, v)
            expected = power(-_ratio(v) * _ratio(u) * z, n) if key == PartitionTuple((EMPTY, one_column(n))) else 0
            report.compare(
                f"crystal-phi.left-pbw.{key!r}",
                "left PBW matrix elements of Φ̃",
                table.element(bra, table.space.vacuum(), z),
                expected,
                point,
            )
    return report


def four_point_check(order: int, point: ScalarPoint, w: Sequence[Any], fock_level: int = 2) -> CheckReport:
    """Closed form, lemma-built PBW sum, AFLT sum, grouped factorisation and (low order) the Fock computation."""
    report = CheckReport("agt-crystal")
    u, v, t = point.uu, point.vv, point.t
    w = tuple(point.convert(x) for x in w)
    closed = four_point_closed(order, v, w, t)
    report.record(
        f"four-point.pbw.{order}",
        "four-point function through PBW insertion",
        four_point_pbw(order, u, v, w, t) == closed,
        point,
    )
    aflt = four_point_aflt(order, v, w, t)
    for n in range(order + 1):
        report.compare(f"four-point.aflt.{n}", "AFLT and PBW expansions of the four-point function", aflt[n], closed[n], point)
        for lam in partitions_of(n):
            report.compare(
                f"four-point.grouped.{lam}",
                "grouped AFLT sum factorises",
                grouped_aflt(lam, v, w, t),
                factorization_rhs(lam, v, w, t),
                point,
            )
    for n, value in enumerate(four_point_fock(min(fock_level, order), u, v, w, point)):
        report.compare(f"four-point.fock.{n}", "four-point function from the vertex operators", value, closed[n], point)
    return report
