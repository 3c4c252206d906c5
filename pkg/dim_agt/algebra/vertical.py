"""Level (0,1) representation on Young diagrams and its duals on the Fock side.

The vertical representation acts on abstract vectors |λ⟩ through the edge
factors A^±_{λ,i} and the series B^±_λ(z). Delta functions are kept as their
support: x^±(z)|λ⟩ = Σ_i A δ(s_i/z)|λ±1_i⟩ has modes x^±_n|λ⟩ = Σ_i A s_i^n |λ±1_i⟩.

On the Fock side the higher Hamiltonians H_k are nested commutators of
X^(1)_{-1}, X^(1)_0 and X^(1)_1, and X^(1)_{±1} move the renormalised
generalized Macdonald vectors |M̃_λ⃗⟩ by one box.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import (
    BoxCoord,
    Partition,
    PartitionTuple,
    add_remove_sets,
    chi,
    enumerate_tuples,
    nek_factor,
    partitions_of,
)
from dim_agt.algebra.fock import BosonKind, Current, FockSpace, FockState, pair
from dim_agt.algebra.generators import generator_X
from dim_agt.algebra.genmac import dual_transition, dual_vector, gen_macdonald, integral_forms
from dim_agt.algebra.scalars import ScalarPoint, Series, inv, power
from dim_agt.errors import CostGuardError, SingularSystem
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

MAX_EDGE_ORDER = 8
MAX_HAMILTONIAN = 5
MAX_VERTICAL_LEVEL = 3

VERTICAL_ANCHOR = "level (0,1) representation on |λ⟩"
HAMILTONIAN_ANCHOR = "H_k |P_λ⃗⟩ = ε^(k)_λ⃗ |P_λ⃗⟩ with ε^(k) read off ∏ B^+_{λ^(i)}(u_i z)"
ACTION_ANCHOR = "X^(1)_{±1} move |M̃_λ⃗⟩ by one box with coefficients c̃^(±)"
DUALITY_ANCHOR = "c^(+)_λ⃗μ⃗(q,t|u) = -c^(-)_{μ⃗*,λ⃗*}(1/t,1/q|p^{(N-1)/2} u reversed)"


class VerticalGenerator(str, Enum):
    X_PLUS = "x+"
    X_MINUS = "x-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


@dataclass
class VerticalState:
    """Finite combination of the abstract vectors |λ⟩ at spectral parameter u."""

    u: Any
    coeffs: dict[Partition, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.coeffs = {lam: c for lam, c in self.coeffs.items() if c}

    @classmethod
    def basis(cls, lam: Partition, u: Any) -> VerticalState:
        return cls(u, {lam: u**0})

    def __add__(self, other: VerticalState) -> VerticalState:
        coeffs = dict(self.coeffs)
        for lam, c in other.coeffs.items():
            coeffs[lam] = coeffs[lam] + c if lam in coeffs else c
        return VerticalState(self.u, coeffs)

    def __sub__(self, other: VerticalState) -> VerticalState:
        return self + other.scale(-1)

    def scale(self, factor: Any) -> VerticalState:
        return VerticalState(self.u, {lam: c * factor for lam, c in self.coeffs.items()})

    def equals(self, other: VerticalState) -> bool:
        return not (self - other).coeffs


@dataclass(frozen=True)
class VerticalTerm:
    """One summand of a vertical action.

    For x^± ``support`` is the point s of δ(s/z) and ``coefficient`` a scalar.
    For ψ^± ``support`` is None and ``coefficient`` is the series in
    w = u/z (ψ^+) or w = z/u (ψ^-), prefactor included.
    """

    source: Partition
    target: Partition
    coefficient: Any
    support: Any = None


@dataclass(frozen=True)
class _Parameters:
    q: Any
    t: Any
    u: tuple[Any, ...]
    p_half: Callable[[int], Any]


def _factor_roots(lam: Partition, sign: int, q: Any, t: Any, i: int) -> tuple[list[Any], list[Any]]:
    """Roots c of the numerator and denominator factors (1 - c z) of the i-th term of B^±_λ."""
    if sign < 0:
        q, t = inv(q), inv(t)
    a, b = lam.part(i), lam.part(i + 1)
    numerator = [power(q, a) * power(t, -i), power(q, b - 1) * power(t, 1 - i)]
    denominator = [power(q, b) * power(t, -i), power(q, a - 1) * power(t, 1 - i)]
    return numerator, denominator


def _edge_roots(lam: Partition, sign: int, q: Any, t: Any) -> tuple[list[Any], list[Any]]:
    q_s, t_s = (q, t) if sign > 0 else (inv(q), inv(t))
    numerator = [power(q_s, lam.part(1) - 1) * t_s]
    denominator = [power(q_s, lam.part(1))]
    for i in range(1, lam.length + 1):
        top, bottom = _factor_roots(lam, sign, q, t, i)
        numerator += top
        denominator += bottom
    return numerator, denominator


def edge_series(lam: Partition, sign: int, point: ScalarPoint, order: int = MAX_EDGE_ORDER, scale: Any = None) -> Series:
    """B^±_λ(scale·z) truncated below z^order.

    Terms of the infinite product past row ℓ(λ) are exactly 1 and are dropped.
    """
    if order > MAX_EDGE_ORDER + 1:
        raise CostGuardError(f"edge series order {order} exceeds {MAX_EDGE_ORDER + 1}")
    scale = point.one if scale is None else scale
    numerator, denominator = _edge_roots(lam, sign, point.q, point.t)
    series = Series.constant(point.one, order, "z")
    for root in numerator:
        series = series * Series([point.one, -root * scale], order, "z")
    for root in denominator:
        series = series * Series([point.one, -root * scale], order, "z").inverse()
    return series


def edge_coefficient(lam: Partition, sign: int, i: int, point: ScalarPoint) -> Any:
    """A^+_{λ,i} for 1 ≤ i ≤ ℓ(λ)+1, or A^-_{λ,i} for 1 ≤ i ≤ ℓ(λ)."""
    q, t = point.q, point.t
    part = lam.part
    if sign > 0:
        value = 1 - t
        for j in range(1, i):
            d = part(i) - part(j)
            value *= (1 - power(q, d) * power(t, j - i + 1)) * (1 - power(q, d + 1) * power(t, j - i - 1))
            value /= (1 - power(q, d) * power(t, j - i)) * (1 - power(q, d + 1) * power(t, j - i))
        return value
    d = part(i + 1) - part(i)
    value = (1 - inv(t)) * (1 - power(q, d)) / (1 - power(q, d + 1) * inv(t))
    for j in range(i + 1, lam.length + 2):
        e, f = part(j) - part(i), part(j + 1) - part(i)
        value *= (1 - power(q, e + 1) * power(t, i - j - 1)) * (1 - power(q, f) * power(t, i - j))
        value /= (1 - power(q, f + 1) * power(t, i - j - 1)) * (1 - power(q, e) * power(t, i - j))
    return value


def vertical_action(
    gen: VerticalGenerator | str, state: VerticalState, point: ScalarPoint, order: int = MAX_EDGE_ORDER
) -> list[VerticalTerm]:
    gen = VerticalGenerator(gen)
    q, t, u = point.q, point.t, state.u
    terms: list[VerticalTerm] = []
    for lam, c in state.coeffs.items():
        if gen is VerticalGenerator.X_PLUS:
            for i in range(1, lam.length + 2):
                value = edge_coefficient(lam, 1, i, point)
                if value:
                    support = power(q, lam.part(i)) * power(t, 1 - i) * u
                    terms.append(VerticalTerm(lam, lam.add_box(i), c * value, support))
        elif gen is VerticalGenerator.X_MINUS:
            for i in range(1, lam.length + 1):
                value = edge_coefficient(lam, -1, i, point)
                if value:
                    support = power(q, lam.part(i) - 1) * power(t, 1 - i) * u
                    terms.append(VerticalTerm(lam, lam.remove_box(i), c * point.p_half(1) * value, support))
        elif gen is VerticalGenerator.PSI_PLUS:
            terms.append(VerticalTerm(lam, lam, edge_series(lam, 1, point, order) * (c * point.p_half(1))))
        else:
            terms.append(VerticalTerm(lam, lam, edge_series(lam, -1, point, order) * (c * point.p_half(-1))))
    return terms


def vertical_mode(gen: VerticalGenerator | str, n: int, state: VerticalState, point: ScalarPoint) -> VerticalState:
    """The mode x^±_n, ψ^+_n (n ≥ 0) or ψ^-_n (n ≤ 0) applied to ``state``."""
    gen = VerticalGenerator(gen)
    if gen is VerticalGenerator.PSI_PLUS and n < 0 or gen is VerticalGenerator.PSI_MINUS and n > 0:
        return VerticalState(state.u)
    order = abs(n) + 1
    out = VerticalState(state.u)
    for term in vertical_action(gen, state, point, order):
        if term.support is not None:
            value = term.coefficient * power(term.support, n)
        else:
            value = term.coefficient[abs(n)] * power(state.u, n)
        out = out + VerticalState(state.u, {term.target: value})
    return out


def vertical_relation_check(max_size: int, point: ScalarPoint, mode_bound: int = 2) -> CheckReport:
    """[x^+_m, x^-_n] = (1-q)(1-1/t)/(1-q/t) (ψ^+_{m+n} - ψ^-_{m+n}) and B^± stabilisation on |λ| ≤ max_size."""
    if max_size > MAX_VERTICAL_LEVEL:
        raise CostGuardError(f"vertical checks are capped at |λ| ≤ {MAX_VERTICAL_LEVEL}")
    report = CheckReport("vertical")
    q, t = point.q, point.t
    u = point.uu[0]
    central = (1 - q) * (1 - inv(t)) / (1 - q / t)
    failures = []
    cases = 0
    for size in range(max_size + 1):
        for lam in partitions_of(size):
            state = VerticalState.basis(lam, u)
            for m, n in itertools.product(range(-mode_bound, mode_bound + 1), repeat=2):
                left = vertical_mode("x+", m, vertical_mode("x-", n, state, point), point) - vertical_mode(
                    "x-", n, vertical_mode("x+", m, state, point), point
                )
                right = (vertical_mode("psi+", m + n, state, point) - vertical_mode("psi-", m + n, state, point)).scale(
                    central
                )
                cases += 1
                if not left.equals(right) and len(failures) < 5:
                    failures.append({"lambda": str(lam), "m": m, "n": n})
            for sign in (1, -1):
                tail = [_factor_roots(lam, sign, q, t, i) for i in range(lam.length + 1, lam.length + 4)]
                report.record(
                    f"vertical.stabilisation.{'+' if sign > 0 else '-'}.{lam}",
                    "factors of B^±_λ past row ℓ(λ) are 1",
                    all(Counter(top) == Counter(bottom) for top, bottom in tail),
                    point,
                )
    report.record("vertical.x-commutator", VERTICAL_ANCHOR, not failures, point, cases=cases, failures=failures)
    return report


def _nested(x: Current, depth: int, state: FockState) -> FockState:
    """[X_0, [X_0, ⋯ [X_0, X_1]⋯]] with ``depth`` copies of X_0."""
    if depth == 0:
        return x.apply(1, state)
    return x.apply(0, _nested(x, depth - 1, state)) - _nested(x, depth - 1, x.apply(0, state))


def apply_hamiltonian(k: int, x: Current, state: FockState) -> FockState:
    """H_1 = X^(1)_0 and H_k = [X^(1)_{-1}, [X^(1)_0, ⋯ [X^(1)_0, X^(1)_1]⋯]]."""
    if k < 1:
        raise ValueError(f"higher Hamiltonians start at k=1, got {k}")
    if k == 1:
        return x.apply(0, state)
    return x.apply(-1, _nested(x, k - 2, state)) - _nested(x, k - 2, x.apply(-1, state))


def hamiltonian_matrix(k: int, n: int, point: ScalarPoint) -> tuple[list[PartitionTuple], linalg.Matrix]:
    """Column-convention matrix of H_k on the boson monomials of level n."""
    space = FockSpace(point, point.n_components, BosonKind.QT, n + 1)
    x = generator_X(space, 1)
    keys = list(space.basis(n))
    columns = [apply_hamiltonian(k, x, space.monomial(key)).vector(keys) for key in keys]
    return keys, linalg.transpose(columns)


def higher_eigenvalue(k: int, lam: PartitionTuple, point: ScalarPoint) -> Any:
    """(1-q)^{k-1}(1-1/t)^{k-1}/(1-1/p) times the z^k coefficient of ∏_i B^+_{λ^(i)}(u_i z)."""
    q, t, p = point.q, point.t, point.p
    product = Series.constant(point.one, k + 1, "z")
    for u, component in zip(point.uu, lam):
        product = product * edge_series(component, 1, point, k + 1, u)
    return power((1 - q) * (1 - inv(t)), k - 1) / (1 - inv(p)) * product[k]


def higher_hamiltonian_check(k: int, n: int, point: ScalarPoint) -> CheckReport:
    """Eigenvalues of H_k on the level-n generalized Macdonald functions and [H_k, H_l] = 0 for l < k."""
    if k > MAX_HAMILTONIAN:
        raise CostGuardError(f"H_k is capped at k ≤ {MAX_HAMILTONIAN}")
    report = CheckReport("vertical")
    keys, matrix = hamiltonian_matrix(k, n, point)
    basis = gen_macdonald(n, point)
    dual = dual_transition(basis)
    tag = f"N{point.n_components}.L{n}.k{k}"
    logger.debug("H_%s on %s basis vectors at level %s", k, len(keys), n)
    for lam in basis.order:
        vector = basis.ket(lam).vector(keys)
        image = [sum((a * b for a, b in zip(row, vector) if a and b), point.zero) for row in matrix]
        eigen = higher_eigenvalue(k, lam, point)
        report.record(
            f"vertical.hamiltonian.{tag}.{lam!r}",
            HAMILTONIAN_ANCHOR,
            all(not (x - eigen * y) for x, y in zip(image, vector)),
            point,
            eigenvalue=eigen,
        )
        if k <= 3:
            state = FockState(basis.space, dict(zip(keys, image)))
            off = [mu for mu in basis.order if mu != lam and pair(dual_vector(basis, dual, mu), state)]
            report.record(
                f"vertical.hamiltonian-diagonal.{tag}.{lam!r}",
                "H_k is diagonal in the generalized Macdonald basis",
                not off,
                point,
                nonzero=[repr(mu) for mu in off],
            )
    for l in range(1, k):
        _, other = hamiltonian_matrix(l, n, point)
        left, right = linalg.matmul(matrix, other), linalg.matmul(other, matrix)
        report.record(f"vertical.commute.{tag}.l{l}", "[H_k, H_l] = 0", linalg.matrices_equal(left, right), point)
    return report


def spectral_parameters(point: ScalarPoint) -> _Parameters:
    return _Parameters(point.q, point.t, point.uu, point.p_half)


def dual_spectral_parameters(point: ScalarPoint) -> _Parameters:
    """(1/t, 1/q | p^{(N-1)/2} u_N, …, p^{(N-1)/2} u_1); p itself is unchanged."""
    shift = point.p_half(point.n_components - 1)
    return _Parameters(inv(point.t), inv(point.q), tuple(shift * u for u in reversed(point.uu)), point.p_half)


def _xi(box: BoxCoord, sign: int, params: _Parameters) -> Any:
    n_components = len(params.u)
    ell, i, j = box.component, box.row, box.column
    q, t, u = params.q, params.t, params.u
    if sign > 0:
        value = power(-1, n_components + ell) * params.p_half(-(ell + 1))
        value *= power(t, (n_components - ell) * i) * power(q, (ell - n_components + 1) * j)
        for k in range(1, n_components - ell + 1):
            value *= u[ell + k - 1]
        return value / power(u[ell - 1], n_components - ell - 1)
    value = power(-1, ell) * params.p_half(ell - 1) * power(t, (ell - 2) * i) * power(q, (1 - ell) * j)
    for k in range(1, ell):
        value *= u[k - 1]
    return value / power(u[ell - 1], ell - 2)


def _single_box(lam: PartitionTuple, mu: PartitionTuple) -> BoxCoord | None:
    """The box x with μ⃗ = λ⃗ minus x, if there is one."""
    _, removable = add_remove_sets(lam)
    for box in removable:
        if lam.replace(box.component - 1, lam[box.component - 1].remove_box(box.row)) == mu:
            return box
    return None


def closed_coefficient(lam: PartitionTuple, mu: PartitionTuple, sign: int, params: _Parameters) -> Any:
    """c̃^(+)_λ⃗μ⃗ for μ⃗ ⊂ λ⃗ (sign +1) or c̃^(-)_λ⃗μ⃗ for λ⃗ ⊂ μ⃗ (sign -1); zero otherwise."""
    q, t, u = params.q, params.t, params.u
    box = _single_box(lam, mu) if sign > 0 else _single_box(mu, lam)
    zero = q * 0
    if box is None:
        return zero
    addable, removable = add_remove_sets(lam)
    x = chi(box, u, q, t)
    value = _xi(box, sign, params)
    if sign > 0:
        for y in addable:
            value *= 1 - x / chi(y, u, q, t) * q / t
        for y in removable:
            if y != box:
                value /= 1 - x / chi(y, u, q, t)
        return value
    for y in removable:
        value *= 1 - chi(y, u, q, t) / x * q / t
    for y in addable:
        if y != box:
            value /= 1 - chi(y, u, q, t) / x
    return value


def _m_factor(lam: PartitionTuple, params: _Parameters) -> Any:
    q, t, u = params.q, params.t, params.u
    value = q**0
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            value *= nek_factor(lam[j], lam[i], u[j] / u[i], q, t)
    for component in lam:
        conjugate = component.conjugate()
        for a, b in component.boxes():
            value *= 1 - power(q, component.part(a) - b) * power(t, conjugate.part(b) - a + 1)
    return value


def plain_coefficient(lam: PartitionTuple, mu: PartitionTuple, sign: int, params: _Parameters) -> Any:
    """c^(±)_λ⃗μ⃗, the coefficient of |P_μ⃗⟩ in X^(1)_{±1}|P_λ⃗⟩."""
    return _m_factor(mu, params) / _m_factor(lam, params) * closed_coefficient(lam, mu, sign, params)


def _home(state: FockState, space: FockSpace) -> FockState:
    return FockState(space, dict(state.coeffs))


def action_conjecture_check(n: int, point: ScalarPoint) -> CheckReport:
    """X^(1)_1 on level n and X^(1)_{-1} on level n-1, expanded over |M̃_μ⃗⟩ and compared with c̃^(±)."""
    report = CheckReport("vertical")
    if n == 0:
        space = FockSpace(point, point.n_components, BosonKind.QT, 0)
        image = generator_X(space, 1).apply(1, space.vacuum())
        report.record("vertical.action.plus.∅", ACTION_ANCHOR, image.is_zero(), point)
        return report
    params = spectral_parameters(point)
    space = FockSpace(point, point.n_components, BosonKind.QT, n)
    x = generator_X(space, 1)
    upper, lower = gen_macdonald(n, point), gen_macdonald(n - 1, point)
    duals = {basis.level: (basis, dual_transition(basis)) for basis in (upper, lower)}
    for sign, source, target in ((1, upper, lower), (-1, lower, upper)):
        basis, dual = duals[target.level]
        label = "plus" if sign > 0 else "minus"
        for lam in source.order:
            image = x.apply(sign, _home(source.ket(lam), space))
            mismatches = []
            for mu in target.order:
                computed = pair(dual_vector(basis, dual, mu), image) / basis.product_norm(mu)
                expected = plain_coefficient(lam, mu, sign, params)
                if computed - expected:
                    box = _single_box(lam, mu) if sign > 0 else _single_box(mu, lam)
                    mismatches.append({"mu": repr(mu), "box": box.to_json() if box else None, "computed": computed, "expected": expected})
            report.record(f"vertical.action.{label}.{lam!r}", ACTION_ANCHOR, not mismatches, point, mismatches=mismatches[:5])
    try:
        forms = integral_forms(upper)
    except SingularSystem:
        return report
    for lam in upper.order:
        if lam in forms.vanishing:
            continue
        ket, renormalised = forms.kets[lam], forms.m_tilde[lam]
        support = next(key for key, _ in renormalised)
        report.record(
            f"vertical.m-tilde-ratio.{lam!r}",
            "ratio of |K_λ⃗⟩ to |M̃_λ⃗⟩, measured",
            ket.equals(renormalised.scale(ket.coefficient(support) / renormalised.coefficient(support))),
            point,
            ratio=ket.coefficient(support) / renormalised.coefficient(support),
        )
    return report


def duality_check(n: int, point: ScalarPoint) -> CheckReport:
    """The closed forms of c^(+) and c^(-) related by transposition and the parameter exchange."""
    report = CheckReport("vertical")
    params, swapped = spectral_parameters(point), dual_spectral_parameters(point)
    n_components = point.n_components
    for lam in enumerate_tuples(n_components, n):
        for mu in enumerate_tuples(n_components, n - 1) if n else ():
            if _single_box(lam, mu) is None:
                continue
            report.compare(
                f"vertical.duality.{lam!r}.{mu!r}",
                DUALITY_ANCHOR,
                plain_coefficient(lam, mu, 1, params),
                -plain_coefficient(mu.reversed_conjugate(), lam.reversed_conjugate(), -1, swapped),
                point,
            )
    if not report.results:
        report.skip(f"vertical.duality.L{n}", DUALITY_ANCHOR, "no box can be removed at level 0")
    return report
