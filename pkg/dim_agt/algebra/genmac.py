"""Generalized Macdonald, Hall-Littlewood and Jack functions.

|P_λ⃗⟩ is the eigenvector of X^(1)_0 that is unitriangular over the products
∏_i P_{λ^(i)}(a^{(i)}_{-n}; q, t)|u⃗⟩ along a linear extension of the ⋆
ordering. The same triangular recursion builds the generalized Jack functions
from the differential operator H_β over monomials. Generalized
Hall-Littlewood functions are the q = 0 values of the coefficients computed
over QQ(q).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Mapping, Sequence

from sympy import QQ

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import (
    EMPTY,
    Comparison,
    Ordering,
    Partition,
    PartitionTuple,
    compare,
    l_linear_extension,
    nek_factor,
    one_column,
    partitions_of,
    star_linear_extension,
)
from dim_agt.algebra.fock import BosonKind, FockSpace, FockState, pair, product_state
from dim_agt.algebra.generators import (
    Frame,
    all_generators,
    crystal_X1,
    crystal_pbw_bra,
    crystal_pbw_ket,
    crystal_space,
    generator_X,
    pbw_bra,
    pbw_ket,
)
from dim_agt.algebra.scalars import ScalarPoint, Slot, inv, macdonald_e, power, scalar_to_json, value_at_zero
from dim_agt.algebra.symfunc import Basis, SymFunc, convert, hall_littlewood, macdonald, monomial
from dim_agt.config import MAX_GENMAC_LEVEL
from dim_agt.errors import CostGuardError, EigenvalueCollision, PoleAtZero, SingularSystem
from dim_agt.fixtures import table_check
from dim_agt.reports import CheckReport

logger = logging.getLogger(__name__)

Table = dict[PartitionTuple, dict[PartitionTuple, Any]]


def _guard(level: int) -> None:
    if level > MAX_GENMAC_LEVEL:
        raise CostGuardError(f"level {level} exceeds the generalized Macdonald cap {MAX_GENMAC_LEVEL}")


def table_to_json(table: Mapping[PartitionTuple, Mapping[PartitionTuple, Any]]) -> dict[str, dict[str, Any]]:
    return {
        str(lam.to_json()): {str(mu.to_json()): scalar_to_json(c) for mu, c in row.items()}
        for lam, row in table.items()
    }


def triangular_eigenvectors(
    order: Sequence[PartitionTuple],
    action: Mapping[PartitionTuple, Mapping[PartitionTuple, Any]],
    eigenvalues: Mapping[PartitionTuple, Any],
    zero: Any,
    one: Any,
) -> Table:
    """Eigenvectors e_λ + Σ_{μ after λ} c_μ e_μ of an operator triangular along ``order``.

    ``action[ν][μ]`` is the coefficient of e_μ in A e_ν; the recursion is
    c_μ (ε_λ - ε_μ) = Σ_ν c_ν action[ν][μ] over the ν already solved.
    """
    return {lam: triangular_eigenvector(order, index, action, eigenvalues, zero, one) for index, lam in enumerate(order)}


def triangular_eigenvector(
    order: Sequence[PartitionTuple],
    index: int,
    action: Mapping[PartitionTuple, Mapping[PartitionTuple, Any]],
    eigenvalues: Mapping[PartitionTuple, Any],
    zero: Any,
    one: Any,
) -> dict[PartitionTuple, Any]:
    """The single row of :func:`triangular_eigenvectors` headed by ``order[index]``."""
    lam = order[index]
    coeffs = {lam: one}
    target = eigenvalues[lam]
    for mu in order[index + 1:]:
        rhs = zero
        for nu, c in coeffs.items():
            entry = action[nu].get(mu)
            if entry:
                rhs += c * entry
        if not rhs:
            continue
        gap = target - eigenvalues[mu]
        if not gap:
            raise EigenvalueCollision(f"eigenvalues of {lam!r} and {mu!r} coincide")
        coeffs[mu] = rhs / gap
    return coeffs


def off_triangle(
    order: Sequence[PartitionTuple], action: Mapping[PartitionTuple, Mapping[PartitionTuple, Any]]
) -> list[tuple[PartitionTuple, PartitionTuple]]:
    """Nonzero entries action[ν][μ] with μ strictly before ν."""
    position = {key: k for k, key in enumerate(order)}
    return [(nu, mu) for nu, row in action.items() for mu, c in row.items() if c and position[mu] < position[nu]]


def gen_eigenvalue(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """ε_λ⃗ = Σ_k u_k e_{λ^(k)}."""
    q, t = point.q, point.t
    return sum((u * macdonald_e(c.parts, q, t) for u, c in zip(point.uu, lam)), point.zero)


def designated_key(n_components: int, level: int) -> PartitionTuple:
    """(∅, …, ∅, (1^n)), the PBW index fixing the integral-form normalisation."""
    return PartitionTuple((EMPTY,) * (n_components - 1) + (one_column(level),))


@dataclass
class GenMacBasis:
    level: int
    point: ScalarPoint
    frame: Frame
    space: FockSpace
    order: list[PartitionTuple]
    eigenvalues: dict[PartitionTuple, Any]
    transition: Table = field(default_factory=dict)
    action: Table = field(default_factory=dict, repr=False)
    _kets: dict[PartitionTuple, FockState] = field(default_factory=dict, repr=False)
    _duals: dict[PartitionTuple, FockState] = field(default_factory=dict, repr=False)
    _vectors: dict[PartitionTuple, FockState] = field(default_factory=dict, repr=False)

    @property
    def n_components(self) -> int:
        return self.space.n_bosons

    def product_ket(self, key: PartitionTuple) -> FockState:
        """∏_i P_{λ^(i)}(a^{(i)}_{-n})|u⃗⟩."""
        if key not in self._kets:
            self._kets[key] = product_state([macdonald(c, self.point)[0] for c in key], self.space)
        return self._kets[key]

    def product_dual(self, key: PartitionTuple) -> FockState:
        """∏_i Q_{λ^(i)}, the dual of the product basis under the Fock pairing."""
        if key not in self._duals:
            self._duals[key] = product_state([macdonald(c, self.point)[1] for c in key], self.space)
        return self._duals[key]

    def product_norm(self, key: PartitionTuple) -> Any:
        ket = self.product_ket(key)
        return pair(ket, ket)

    def ket(self, lam: PartitionTuple) -> FockState:
        if lam not in self._vectors:
            state = FockState(self.space)
            for mu, c in self.transition[lam].items():
                state = state + self.product_ket(mu).scale(c)
            self._vectors[lam] = state
        return self._vectors[lam]

    def coefficient(self, lam: PartitionTuple, mu: PartitionTuple) -> Any:
        return self.transition[lam].get(mu, self.point.zero)

    def matrix(self) -> linalg.Matrix:
        return [[self.coefficient(lam, mu) for mu in self.order] for lam in self.order]

    def monomial_transition(self) -> Table:
        """Coefficients of P_λ⃗ over the products of monomial functions ∏ m_{μ^(i)}."""
        table: Table = {}
        for lam, row in self.transition.items():
            out: dict[PartitionTuple, Any] = {}
            for nu, c in row.items():
                factors = [convert(macdonald(component, self.point)[0], Basis.MONOMIAL) for component in nu]
                for key, value in _tensor(factors).items():
                    out[key] = out.get(key, self.point.zero) + c * value
            table[lam] = {k: v for k, v in out.items() if v}
        return table

    def to_json(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "N": self.n_components,
            "frame": self.frame.value,
            "order": [key.to_json() for key in self.order],
            "eigenvalues": {str(k.to_json()): scalar_to_json(v) for k, v in self.eigenvalues.items()},
            "transition": table_to_json(self.transition),
        }


def _tensor(factors: Sequence[Mapping[Partition, Any]]) -> dict[PartitionTuple, Any]:
    out: dict[tuple[Partition, ...], Any] = {(): QQ.one}
    for factor in factors:
        out = {prefix + (lam,): c * d for prefix, c in out.items() for lam, d in factor.items()}
    return {PartitionTuple(key): c for key, c in out.items()}


def _action_basis(n: int, point: ScalarPoint, frame: Frame) -> GenMacBasis:
    """X^(1)_0 over the product basis; the transition table is left empty."""
    n_components = point.n_components
    space = FockSpace(point, n_components, BosonKind.QT, n)
    order = star_linear_extension(n_components, n)
    basis = GenMacBasis(
        level=n,
        point=point,
        frame=frame,
        space=space,
        order=order,
        eigenvalues={lam: gen_eigenvalue(lam, point) for lam in order},
    )
    x0 = generator_X(space, 1, frame)
    for nu in order:
        image = x0.apply(0, basis.product_ket(nu))
        row = {}
        for mu in order:
            c = pair(basis.product_dual(mu), image)
            if c:
                row[mu] = c
        basis.action[nu] = row
    return basis


def _build_gen_macdonald(n: int, point: ScalarPoint, frame: Frame) -> GenMacBasis:
    basis = point.cache(f"genmac-action:{n}:{frame.value}", lambda: _action_basis(n, point, frame))
    basis.transition = triangular_eigenvectors(basis.order, basis.action, basis.eigenvalues, point.zero, point.one)
    logger.debug("generalized Macdonald basis N=%s level=%s frame=%s", point.n_components, n, frame.value)
    return basis


def gen_macdonald(n: int, point: ScalarPoint, frame: Frame | str = Frame.ORIGINAL) -> GenMacBasis:
    """Generalized Macdonald functions at level n; cached on the point."""
    _guard(n)
    frame = Frame(frame)
    return point.cache(f"genmac:{n}:{frame.value}", lambda: _build_gen_macdonald(n, point, frame))


def gen_macdonald_vector(lam: PartitionTuple, point: ScalarPoint, frame: Frame | str = Frame.ORIGINAL) -> FockState:
    """|P_λ⃗⟩ alone; at special u⃗ the other rows of the level may not exist."""
    n = lam.size
    _guard(n)
    frame = Frame(frame)
    basis = point.cache(f"genmac-action:{n}:{frame.value}", lambda: _action_basis(n, point, frame))
    row = triangular_eigenvector(basis.order, basis.order.index(lam), basis.action, basis.eigenvalues, point.zero, point.one)
    state = FockState(basis.space)
    for mu, c in row.items():
        state = state + basis.product_ket(mu).scale(c)
    return state


def dual_transition(basis: GenMacBasis) -> Table:
    """c*_{λ⃗ν⃗} = n_λ⃗/n_ν⃗ (C^{-1})_{ν⃗λ⃗}, so that ⟨P*_λ⃗|P_μ⃗⟩ = δ n_λ⃗."""
    order = basis.order
    inverse = linalg.inverse(basis.matrix())
    norms = {key: basis.product_norm(key) for key in order}
    table: Table = {}
    for j, lam in enumerate(order):
        row = {}
        for i, nu in enumerate(order):
            entry = inverse[i][j]
            if entry:
                row[nu] = norms[lam] / norms[nu] * entry
        table[lam] = row
    return table


def dual_vector(basis: GenMacBasis, dual: Table, lam: PartitionTuple) -> FockState:
    state = FockState(basis.space)
    for nu, c in dual[lam].items():
        state = state + basis.product_ket(nu).scale(c)
    return state


def m_tilde_factor(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """∏_{i<j} N_{λ^(j)λ^(i)}(u_j/u_i) · ∏_k ∏_{(a,b)∈λ^(k)} (1 - q^{λ_a-b} t^{λ'_b-a+1})."""
    q, t, u = point.q, point.t, point.uu
    value = point.one
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            value *= nek_factor(lam[j], lam[i], u[j] / u[i], q, t)
    for component in lam:
        conjugate = component.conjugate()
        for a, b in component.boxes():
            value *= 1 - power(q, component.part(a) - b) * power(t, conjugate.part(b) - a + 1)
    return value


@dataclass
class IntegralForms:
    level: int
    point: ScalarPoint
    order: list[PartitionTuple]
    alpha: Table
    beta: Table
    kets: dict[PartitionTuple, FockState]
    bras: dict[PartitionTuple, FockState]
    m_tilde: dict[PartitionTuple, FockState] = field(default_factory=dict)
    vanishing: list[PartitionTuple] = field(default_factory=list)

    def norm(self, lam: PartitionTuple) -> Any:
        return pair(self.bras[lam], self.kets[lam])


def _normalize_over_pbw(
    keys: Sequence[PartitionTuple],
    order: Sequence[PartitionTuple],
    targets: Mapping[PartitionTuple, FockState],
    columns: Sequence[FockState],
    designated: PartitionTuple,
) -> tuple[Table, dict[PartitionTuple, FockState], list[PartitionTuple]]:
    """Expand each target over the PBW vectors and rescale so the designated coefficient is 1."""
    matrix = linalg.transpose([column.vector(keys) for column in columns])
    try:
        inverse = linalg.inverse(matrix)
    except SingularSystem:
        logger.warning("PBW vectors are dependent at level %s", designated.size)
        raise
    position = order.index(designated)
    coefficients: Table = {}
    states: dict[PartitionTuple, FockState] = {}
    vanishing: list[PartitionTuple] = []
    for lam, state in targets.items():
        vector = state.vector(keys)
        gamma = [sum((row[k] * vector[k] for k in range(len(keys)) if vector[k]), state.space.point.zero) for row in inverse]
        pivot = gamma[position]
        if not pivot:
            vanishing.append(lam)
            continue
        scale = inv(pivot)
        coefficients[lam] = {mu: g * scale for mu, g in zip(order, gamma) if g}
        states[lam] = state.scale(scale)
    return coefficients, states, vanishing


def integral_forms(basis: GenMacBasis, dual: Table | None = None) -> IntegralForms:
    """|K_λ⃗⟩ = Σ α |X'_μ⃗⟩ and ⟨K_λ⃗| = Σ β ⟨X'_μ⃗| with α, β = 1 at (∅,…,(1^n)); also |M̃_λ⃗⟩."""
    dual = dual_transition(basis) if dual is None else dual
    space, n, order = basis.space, basis.level, basis.order
    keys = list(space.basis(n))
    currents = all_generators(space, basis.frame)
    designated = designated_key(basis.n_components, n)
    ket_columns = [pbw_ket(mu, space, currents, prime=True) for mu in order]
    bra_columns = [pbw_bra(mu, space, currents, prime=True) for mu in order]
    alpha, kets, vanishing = _normalize_over_pbw(keys, order, {lam: basis.ket(lam) for lam in order}, ket_columns, designated)
    beta, bras, bra_vanishing = _normalize_over_pbw(
        keys, order, {lam: dual_vector(basis, dual, lam) for lam in order}, bra_columns, designated
    )
    m_tilde = {lam: basis.ket(lam).scale(m_tilde_factor(lam, basis.point)) for lam in order}
    missing = sorted(set(vanishing) | set(bra_vanishing))
    if missing:
        logger.warning("designated PBW coefficient vanishes for %s", missing)
    return IntegralForms(n, basis.point, list(order), alpha, beta, kets, bras, m_tilde, missing)


@dataclass
class GenHallLittlewood:
    """c̃ and c̃* over the products of Hall-Littlewood functions P_μ(b_{∓n}; t)."""

    level: int
    point: ScalarPoint
    order: list[PartitionTuple]
    transition: Table
    dual: Table
    poles: list[tuple[str, PartitionTuple, PartitionTuple]] = field(default_factory=list)

    def has_pole(self, lam: PartitionTuple) -> bool:
        return any(key == lam for _, key, _ in self.poles)

    def ket(self, lam: PartitionTuple, space: FockSpace) -> FockState:
        return self._combine(self.transition[lam], space)

    def bra(self, lam: PartitionTuple, space: FockSpace) -> FockState:
        return self._combine(self.dual[lam], space)

    def _combine(self, row: Mapping[PartitionTuple, Any], space: FockSpace) -> FockState:
        state = FockState(space)
        for mu, c in row.items():
            factors = [hall_littlewood(component, self.point)[0] for component in mu]
            state = state + product_state(factors, space).scale(space.point.convert(c))
        return state

    def to_json(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "transition": table_to_json(self.transition),
            "dual": table_to_json(self.dual),
            "poles": [f"{tag}:{lam!r}:{mu!r}" for tag, lam, mu in self.poles],
        }


def _crystal_shift(lam: PartitionTuple, mu: PartitionTuple, point: ScalarPoint, dual: bool) -> Any:
    """Balanced-frame coefficient to crystal-frame coefficient (N=2): p^{∓(|λ^(1)|-|μ^(1)|)}."""
    exponent = lam[0].size - mu[0].size
    return power(point.p, exponent if dual else -exponent)


def gen_hall_littlewood(n: int, point: ScalarPoint) -> GenHallLittlewood:
    """q → 0 values of the generalized Macdonald coefficients, computed over QQ(q).

    Coefficients with a pole at q = 0 are reported in ``poles`` and left out.
    For N=2 the tables are in the crystal normalisation of the bosons.
    """
    formal = point if point.symbolic else point.with_slot(Slot.Q)
    basis = gen_macdonald(n, formal, Frame.BALANCED)
    dual = dual_transition(basis)
    crystal = point.n_components == 2
    poles: list[tuple[str, PartitionTuple, PartitionTuple]] = []

    def evaluate(table: Table, is_dual: bool, tag: str) -> Table:
        out: Table = {}
        for lam, row in table.items():
            values = {}
            for mu, c in row.items():
                if crystal:
                    c = c * _crystal_shift(lam, mu, formal, is_dual)
                try:
                    value = value_at_zero(c)
                except PoleAtZero:
                    poles.append((tag, lam, mu))
                    continue
                if value:
                    values[mu] = value
            out[lam] = values
        return out

    numeric = point.with_slot(Slot.NONE) if point.symbolic else point
    result = GenHallLittlewood(
        level=n,
        point=numeric,
        order=list(basis.order),
        transition=evaluate(basis.transition, False, "ket"),
        dual=evaluate(dual, True, "bra"),
        poles=poles,
    )
    if poles:
        logger.warning("generalized Hall-Littlewood coefficients with a pole at q=0: %s", poles)
    return result


def crystal_integral_forms(n: int, point: ScalarPoint) -> IntegralForms:
    """|K̃_λ⃗⟩ = Σ α̃ |X̃_μ⃗⟩ ∝ |P̃_λ⃗⟩ and ⟨K̃_λ⃗| = Σ β̃ ⟨X̃_μ⃗|, normalised at (∅,(1^n)) (N=2)."""
    if point.n_components != 2:
        raise ValueError("crystal integral forms are defined for N=2")
    hl = gen_hall_littlewood(n, point)
    space = crystal_space(hl.point, 2, n)
    keys = list(space.basis(n))
    order = hl.order
    ket_columns = [crystal_pbw_ket(mu[0], mu[1], space) for mu in order]
    bra_columns = [crystal_pbw_bra(mu[0], mu[1], space) for mu in order]
    complete = [lam for lam in order if not hl.has_pole(lam)]
    designated = designated_key(2, n)
    alpha, kets, vanishing = _normalize_over_pbw(
        keys, order, {lam: hl.ket(lam, space) for lam in complete}, ket_columns, designated
    )
    beta, bras, bra_vanishing = _normalize_over_pbw(
        keys, order, {lam: hl.bra(lam, space) for lam in complete}, bra_columns, designated
    )
    missing = sorted(set(vanishing) | set(bra_vanishing) | (set(order) - set(complete)))
    return IntegralForms(n, hl.point, list(order), alpha, beta, kets, bras, {}, missing)


@lru_cache(maxsize=None)
def _monomial_as_power_sums(lam: Partition) -> tuple[tuple[Partition, Any], ...]:
    if not lam:
        return ((EMPTY, QQ.one),)
    return tuple(monomial(lam).terms.items())


@lru_cache(maxsize=None)
def _power_sum_as_monomials(lam: Partition) -> tuple[tuple[Partition, Any], ...]:
    if not lam:
        return ((EMPTY, QQ.one),)
    return tuple(convert(SymFunc({lam: QQ.one}), Basis.MONOMIAL).items())


def _to_monomials(poly: Mapping[PartitionTuple, Any]) -> dict[PartitionTuple, Any]:
    out: dict[PartitionTuple, Any] = {}
    for key, c in poly.items():
        for mono, value in _tensor([dict(_power_sum_as_monomials(component)) for component in key]).items():
            out[mono] = out.get(mono, QQ.zero) + c * value
    return {k: v for k, v in out.items() if v}


def _replace_parts(component: Partition, removed: Sequence[int], added: Sequence[int]) -> Partition:
    parts = list(component.parts)
    for part in removed:
        parts.remove(part)
    return Partition(tuple(sorted(parts + list(added), reverse=True)))


def jack_hamiltonian(poly: Mapping[PartitionTuple, Any], beta: Any, u_prime: Sequence[Any]) -> dict[PartitionTuple, Any]:
    """H_β = Σ_i H^(i)_β + Σ_{i>j} H^(i,j)_β acting on a polynomial in the power sums p^{(i)}_n.

    H^(i)_β = ½Σ_{n,m}(β(n+m) p_n p_m ∂_{n+m} + nm p_{n+m} ∂_n ∂_m) + Σ_n (u'_i + (1-β)n/2) n p_n ∂_n
    and H^(i,j)_β = (1-β) Σ_n n² p^{(j)}_n ∂/∂p^{(i)}_n.
    """
    out: dict[PartitionTuple, Any] = {}

    def add(key: PartitionTuple, value: Any) -> None:
        out[key] = out.get(key, QQ.zero) + value

    half = QQ(1, 2)
    for key, c in poly.items():
        for i, component in enumerate(key):
            counts = component.multiplicities()
            diagonal = sum(((u_prime[i] + (1 - beta) * half * n) * n * k for n, k in counts.items()), QQ.zero)
            if diagonal:
                add(key, c * diagonal)
            for s, k in counts.items():
                for n in range(1, s):
                    add(key.replace(i, _replace_parts(component, [s], [n, s - n])), c * half * beta * s * k)
            parts = sorted(counts)
            for x, a in enumerate(parts):
                for b in parts[x:]:
                    if a == b:
                        pairs = counts[a] * (counts[a] - 1)
                        weight = half * a * a * pairs
                    else:
                        weight = QQ(a * b * counts[a] * counts[b])
                    if weight:
                        add(key.replace(i, _replace_parts(component, [a, b], [a + b])), c * weight)
            for j in range(i):
                for n, k in counts.items():
                    moved = key.replace(i, _replace_parts(component, [n], []))
                    moved = moved.replace(j, _replace_parts(key[j], [], [n]))
                    add(moved, c * (1 - beta) * n * n * k)
    return {k: v for k, v in out.items() if v}


def monomial_power_sums(key: PartitionTuple) -> dict[PartitionTuple, Any]:
    """∏_i m_{λ^(i)}(x^(i)) in the power sums."""
    return _tensor([dict(_monomial_as_power_sums(component)) for component in key])


@dataclass
class GenJackBasis:
    level: int
    beta: Any
    u_prime: tuple[Any, ...]
    order: list[PartitionTuple]
    eigenvalues: dict[PartitionTuple, Any]
    transition: Table
    action: Table = field(default_factory=dict, repr=False)

    def coefficient(self, lam: PartitionTuple, mu: PartitionTuple) -> Any:
        return self.transition[lam].get(mu, QQ.zero)

    def power_sums(self, lam: PartitionTuple) -> dict[PartitionTuple, Any]:
        out: dict[PartitionTuple, Any] = {}
        for mu, c in self.transition[lam].items():
            for key, value in monomial_power_sums(mu).items():
                out[key] = out.get(key, QQ.zero) + c * value
        return {k: v for k, v in out.items() if v}

    def to_json(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "beta": scalar_to_json(self.beta),
            "u_prime": [scalar_to_json(x) for x in self.u_prime],
            "order": [key.to_json() for key in self.order],
            "transition": table_to_json(self.transition),
        }


def gen_jack(n: int, beta: Any, u_prime: Sequence[Any]) -> GenJackBasis:
    """J_λ⃗ = m_λ⃗ + Σ_{μ⃗ <^L λ⃗} d'_λ⃗μ⃗ m_μ⃗, eigenfunctions of H_β."""
    _guard(n)
    beta = QQ.convert(beta)
    u_prime = tuple(QQ.convert(x) for x in u_prime)
    order = l_linear_extension(len(u_prime), n)
    action = {nu: _to_monomials(jack_hamiltonian(monomial_power_sums(nu), beta, u_prime)) for nu in order}
    eigenvalues = {nu: action[nu].get(nu, QQ.zero) for nu in order}
    transition = triangular_eigenvectors(order, action, eigenvalues, QQ.zero, QQ.one)
    return GenJackBasis(n, beta, u_prime, list(order), eigenvalues, transition, action)


def genmac_check(level: int, point: ScalarPoint, frame: Frame | str = Frame.ORIGINAL) -> CheckReport:
    """Eigen-property, triangularity, dual orthogonality and the single-component restriction."""
    report = CheckReport("genmac")
    basis = gen_macdonald(level, point, frame)
    dual = dual_transition(basis)
    x0 = generator_X(basis.space, 1, basis.frame)
    tag = f"N{basis.n_components}.L{level}"
    report.record(
        f"genmac.triangular-action.{tag}",
        "X^(1)_0 is triangular over the product Macdonald basis",
        not off_triangle(basis.order, basis.action),
        point,
    )
    for lam in basis.order:
        eigen = basis.eigenvalues[lam]
        report.compare(f"genmac.diagonal.{lam!r}", "ε_λ⃗ = Σ u_k e_λ^(k)", basis.action[lam].get(lam, point.zero), eigen, point)
        ket = basis.ket(lam)
        report.record(
            f"genmac.eigen.{lam!r}", "X^(1)_0 |P_λ⃗⟩ = ε_λ⃗ |P_λ⃗⟩", x0.apply(0, ket).equals(ket.scale(eigen)), point
        )
        bra = dual_vector(basis, dual, lam)
        report.record(
            f"genmac.dual-eigen.{lam!r}", "⟨P_λ⃗| X^(1)_0 = ε_λ⃗ ⟨P_λ⃗|", x0.apply_bra(0, bra).equals(bra.scale(eigen)), point
        )
        off = [
            mu for mu in basis.order
            if mu != lam and pair(bra, basis.ket(mu))
        ]
        report.record(
            f"genmac.orthogonal.{lam!r}", "⟨P_λ⃗|P_μ⃗⟩ = 0 for λ⃗ ≠ μ⃗", not off, point, nonzero=[repr(mu) for mu in off]
        )
        if all(not c for c in lam.components[1:]):
            report.record(
                f"genmac.restriction.{lam!r}",
                "a tuple supported on the first component is an ordinary Macdonald function",
                basis.transition[lam] == {lam: point.one},
                point,
            )
    return report


def ordering_vanishing_check(level: int, point: ScalarPoint) -> CheckReport:
    """η_m P_λ(a_{-n})|0⟩ involves only μ ⊂ λ, and c_λ⃗μ⃗ vanishes unless λ⃗ ⋆≻ μ⃗."""
    _guard(level)
    report = CheckReport("genmac")
    space = FockSpace(point, 1, BosonKind.QT, level)
    eta = generator_X(space, 1, weights=(point.one,))
    for size in range(1, level + 1):
        for lam in partitions_of(size):
            ket = product_state([macdonald(lam, point)[0]], space)
            for m in range(1, size + 1):
                image = eta.apply(m, ket)
                outside = [
                    mu for mu in partitions_of(size - m)
                    if not lam.contains(mu) and pair(product_state([macdonald(mu, point)[1]], space), image)
                ]
                report.record(
                    f"genmac.eta-contained.{lam}.{m}",
                    "η_m P_λ expands over μ ⊂ λ",
                    not outside,
                    point,
                    outside=[str(mu) for mu in outside],
                )
    basis = gen_macdonald(level, point)
    violations = [
        (lam, mu)
        for lam, row in basis.transition.items()
        for mu in row
        if mu != lam and compare(lam, mu, Ordering.STAR_REFINED) is not Comparison.GREATER
    ]
    report.record(
        f"genmac.refined-ordering.N{point.n_components}.L{level}",
        "transition coefficients vanish outside the refined ordering",
        not violations,
        point,
        violations=[f"{lam!r}>{mu!r}" for lam, mu in violations[:5]],
    )
    return report


def crystal_eigenvalue(lam: PartitionTuple, point: ScalarPoint) -> Any:
    """ẽ_λ⃗ = Σ_k u_k (1 + (1-t) Σ_{i=1}^{ℓ(λ^(k))} t^{-i})."""
    t = point.t
    total = point.zero
    for u, component in zip(point.uu, lam):
        total += u * (1 + (1 - t) * sum((power(t, -i) for i in range(1, component.length + 1)), point.zero))
    return total


def gen_hall_littlewood_check(level: int, point: ScalarPoint) -> CheckReport:
    """Finite q → 0 limits, the N=1 reduction and (N=2) the X̃^(1)_0 eigen-property."""
    report = CheckReport("genmac")
    hl = gen_hall_littlewood(level, point)
    report.record(
        f"genhl.finite-limit.N{point.n_components}.L{level}",
        "generalized Macdonald coefficients have finite q → 0 limits",
        not hl.poles,
        point,
        poles=hl.to_json()["poles"],
    )
    if point.n_components == 1:
        identity = all(row == {lam: 1} for lam, row in hl.transition.items())
        report.record(f"genhl.n1-reduction.L{level}", "N=1 gives the Hall-Littlewood functions", identity, point)
        return report
    if point.n_components != 2:
        return report
    space = crystal_space(hl.point, 2, level)
    x1 = crystal_X1(space)
    for lam in hl.order:
        if hl.has_pole(lam):
            continue
        eigen = crystal_eigenvalue(lam, hl.point)
        ket, bra = hl.ket(lam, space), hl.bra(lam, space)
        report.record(
            f"genhl.eigen.{lam!r}", "X̃^(1)_0 |P̃_λ⃗⟩ = ẽ_λ⃗ |P̃_λ⃗⟩", x1.apply(0, ket).equals(ket.scale(eigen)), hl.point
        )
        report.record(
            f"genhl.dual-eigen.{lam!r}",
            "⟨P̃_λ⃗| X̃^(1)_0 = ẽ_λ⃗ ⟨P̃_λ⃗|",
            x1.apply_bra(0, bra).equals(bra.scale(eigen)),
            hl.point,
        )
    return report


def gen_jack_check(level: int, beta: Any, u_prime: Sequence[Any]) -> CheckReport:
    """H_β J_λ⃗ = e'_λ⃗ J_λ⃗ and triangularity along ≤^L."""
    report = CheckReport("genmac")
    basis = gen_jack(level, beta, u_prime)
    report.record(
        f"genjack.triangular-action.L{level}",
        "H_β is triangular over monomials",
        not off_triangle(basis.order, basis.action),
        None,
    )
    for lam in basis.order:
        poly = basis.power_sums(lam)
        image = jack_hamiltonian(poly, basis.beta, basis.u_prime)
        expected = {k: v * basis.eigenvalues[lam] for k, v in poly.items()}
        residue = {k: image.get(k, QQ.zero) - expected.get(k, QQ.zero) for k in set(image) | set(expected)}
        report.record(
            f"genjack.eigen.{lam!r}", "H_β J_λ⃗ = e'_λ⃗ J_λ⃗", not any(residue.values()), None
        )
        lower = all(
            mu == lam or compare(lam, mu, Ordering.L) is Comparison.GREATER for mu in basis.transition[lam]
        )
        report.record(f"genjack.l-ordering.{lam!r}", "J_λ⃗ = m_λ⃗ + Σ_{μ⃗ <^L λ⃗}", lower, None)
    return report


def reference_check(point: ScalarPoint) -> CheckReport:
    """The committed N=2 tables: transitions, integral forms, Hall-Littlewood and Jack coefficients."""
    if point.n_components != 2:
        raise ValueError(f"the reference tables are for N=2, got N={point.n_components}")
    report = CheckReport("genmac")
    zero = point.zero
    bases = {n: gen_macdonald(n, point) for n in (1, 2)}
    monomials = {n: basis.monomial_transition() for n, basis in bases.items()}
    for n in (1, 2):
        table_check(
            report, "genmac_n2", f"monomial-level{n}", lambda row, col, n=n: monomials[n][row].get(col, zero), point
        )
        try:
            alpha = integral_forms(bases[n]).alpha
        except SingularSystem:
            report.skip(f"fixture.genmac_n2.integral-level{n}", "integral forms", "PBW vectors are dependent")
        else:
            table_check(
                report, "genmac_n2", f"integral-level{n}", lambda row, col, alpha=alpha: alpha[row].get(col, zero), point
            )
        hl = gen_hall_littlewood(n, point)
        for tag, values in (("ket", hl.transition), ("dual", hl.dual)):
            table_check(
                report,
                "gen_hall_littlewood_n2",
                f"{tag}-level{n}",
                lambda row, col, values=values: values[row].get(col, QQ.zero),
                point,
            )
        u_prime = point.uu
        jack = gen_jack(n, point.beta, u_prime)
        table_check(
            report, "gen_jack_n2", f"level{n}", jack.coefficient, point, {"beta": point.beta, "up1": u_prime[0], "up2": u_prime[1]}
        )
    return report
