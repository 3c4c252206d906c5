"""Truncated multi-boson Fock modules and normal-ordered vertex operators.

A basis monomial ∏_i ∏_k a^{(i)}_{-λ^{(i)}_k} |u⃗⟩ is keyed by the PartitionTuple
λ⃗; dual (bra) monomials ⟨u⃗| ∏ a^{(i)}_{λ^{(i)}_k} use the same keys. A vertex
operator is kept in the canonical form

    c · z^s · exp(Σ_{i,n} A^{(i)}_n a^{(i)}_{-n} z^n) · exp(Σ_{i,n} B^{(i)}_n a^{(i)}_n z^{-n})

and its modes act exactly on truncated states: the annihilation exponential
is a finite translation and the creation exponential is expanded only up to
the target level.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from enum import Enum
from math import comb, factorial
from typing import Any, Callable, Iterable, Iterator, Sequence

from sympy import QQ

from dim_agt.algebra.combinat import Partition, PartitionTuple, enumerate_tuples
from dim_agt.algebra.scalars import ScalarPoint, power, scalar_to_json
from dim_agt.algebra.symfunc import SymFunc
from dim_agt.errors import LevelOverflow

logger = logging.getLogger(__name__)


class BosonKind(str, Enum):
    """[a_n, a_{-n}] = n(1-q^n)/(1-t^n) for QT, n/(1-t^n) for T (the q=0 bosons)."""

    QT = "qt"
    T = "t"


class ModeFilter(str, Enum):
    ALL = "all"
    NONNEG = "nonneg"
    NONPOS = "nonpos"

    def admits(self, n: int) -> bool:
        if self is ModeFilter.NONNEG:
            return n >= 0
        if self is ModeFilter.NONPOS:
            return n <= 0
        return True


class FockSpace:
    """N independent Heisenberg algebras truncated at ``max_level``."""

    def __init__(self, point: ScalarPoint, n_bosons: int, kind: BosonKind | str = BosonKind.QT, max_level: int = 4) -> None:
        self.point = point
        self.n_bosons = n_bosons
        self.kind = BosonKind(kind)
        self.max_level = max_level
        self._kappa: dict[int, Any] = {}
        self._norms: dict[PartitionTuple, Any] = {}

    def __repr__(self) -> str:
        return f"FockSpace(N={self.n_bosons}, kind={self.kind.value}, max_level={self.max_level})"

    def kappa(self, n: int) -> Any:
        """[a_n, a_{-n}] for n > 0."""
        if n not in self._kappa:
            t = self.point.t
            if self.kind is BosonKind.QT:
                value = self.point.const(n) * (1 - power(self.point.q, n)) / (1 - power(t, n))
            else:
                value = self.point.const(n) / (1 - power(t, n))
            self._kappa[n] = value
        return self._kappa[n]

    def norm(self, monomial: PartitionTuple) -> Any:
        """⟨u⃗| a_λ⃗ a_{-λ⃗} |u⃗⟩ = ∏ m_n! κ(n)^{m_n}."""
        if monomial not in self._norms:
            value = self.point.one
            for component in monomial:
                for part, mult in component.multiplicities().items():
                    value *= factorial(mult) * power(self.kappa(part), mult)
            self._norms[monomial] = value
        return self._norms[monomial]

    def vacuum_key(self) -> PartitionTuple:
        return PartitionTuple.empty(self.n_bosons)

    def vacuum(self, coefficient: Any = None) -> FockState:
        return FockState(self, {self.vacuum_key(): self.point.one if coefficient is None else coefficient})

    def basis(self, level: int) -> tuple[PartitionTuple, ...]:
        return enumerate_tuples(self.n_bosons, level)

    def monomial(self, key: PartitionTuple, coefficient: Any = None) -> FockState:
        return FockState(self, {key: self.point.one if coefficient is None else coefficient})

    def boson(self, index: int, mode: int) -> PartitionTuple:
        """Key of the one-boson state a^{(index)}_{-mode}, index 0-based."""
        parts = [Partition()] * self.n_bosons
        parts[index] = Partition((mode,))
        return PartitionTuple(tuple(parts))

    def resized(self, max_level: int) -> FockSpace:
        return FockSpace(self.point, self.n_bosons, self.kind, max_level)


class FockState:
    """Finite combination of boson monomials; also used for dual (bra) states."""

    __slots__ = ("space", "coeffs")

    def __init__(self, space: FockSpace, coeffs: dict[PartitionTuple, Any] | None = None) -> None:
        self.space = space
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    def __iter__(self) -> Iterator[tuple[PartitionTuple, Any]]:
        return iter(self.coeffs.items())

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {v}" for k, v in sorted(self.coeffs.items(), key=lambda kv: kv[0].to_json()))
        return f"FockState({{{body}}})"

    def coefficient(self, key: PartitionTuple) -> Any:
        return self.coeffs.get(key, self.space.point.zero)

    def levels(self) -> set[int]:
        return {k.size for k in self.coeffs}

    def level(self) -> int:
        return max(self.levels(), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: FockState) -> FockState:
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            coeffs[k] = coeffs[k] + v if k in coeffs else v
        return FockState(self.space, coeffs)

    def __neg__(self) -> FockState:
        return FockState(self.space, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: FockState) -> FockState:
        return self + (-other)

    def scale(self, factor: Any) -> FockState:
        if not factor:
            return FockState(self.space)
        return FockState(self.space, {k: v * factor for k, v in self.coeffs.items()})

    def __mul__(self, factor: Any) -> FockState:
        return self.scale(factor)

    __rmul__ = __mul__

    def equals(self, other: FockState) -> bool:
        return (self - other).is_zero()

    def vector(self, basis: Sequence[PartitionTuple]) -> list[Any]:
        return [self.coefficient(key) for key in basis]

    def to_json(self) -> dict[str, Any]:
        return {str(k.to_json()): scalar_to_json(v) for k, v in sorted(self.coeffs.items(), key=lambda kv: kv[0].to_json())}


def zero_state(space: FockSpace) -> FockState:
    return FockState(space)


def pair(bra: FockState, ket: FockState) -> Any:
    """⟨F|G⟩ = Σ_ρ F_ρ G_ρ ⟨a_ρ a_{-ρ}⟩."""
    space = ket.space
    total = space.point.zero
    small, large = (bra, ket) if len(bra.coeffs) <= len(ket.coeffs) else (ket, bra)
    for key, value in small.coeffs.items():
        other = large.coeffs.get(key)
        if other:
            total += value * other * space.norm(key)
    return total


def _sum_states(space: FockSpace, states: Iterable[FockState]) -> FockState:
    total: dict[PartitionTuple, Any] = {}
    for state in states:
        for k, v in state.coeffs.items():
            total[k] = total[k] + v if k in total else v
    return FockState(space, total)


@dataclass(frozen=True)
class VertexOperator:
    """c · z^shift · exp(Σ A a_{-n} z^n) exp(Σ B a_n z^{-n}); creation[i][n-1] = A^{(i)}_n."""

    creation: tuple[tuple[Any, ...], ...]
    annihilation: tuple[tuple[Any, ...], ...]
    prefactor: Any
    shift: int = 0
    _terms: dict[int, list[tuple[PartitionTuple, Any]]] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        space: FockSpace,
        creation: Callable[[int, int], Any] | None = None,
        annihilation: Callable[[int, int], Any] | None = None,
        prefactor: Any = None,
        shift: int = 0,
    ) -> VertexOperator:
        """Coefficient callbacks take (boson index, mode n ≥ 1)."""
        zero = space.point.zero
        top = space.max_level
        return cls(
            creation=tuple(
                tuple(creation(i, n) if creation else zero for n in range(1, top + 1)) for i in range(space.n_bosons)
            ),
            annihilation=tuple(
                tuple(annihilation(i, n) if annihilation else zero for n in range(1, top + 1))
                for i in range(space.n_bosons)
            ),
            prefactor=space.point.one if prefactor is None else prefactor,
            shift=shift,
        )

    @property
    def n_bosons(self) -> int:
        return len(self.creation)

    def __mul__(self, other: VertexOperator) -> VertexOperator:
        """Normal-ordered product ∶V W∶ (no contraction)."""
        return VertexOperator(
            creation=tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.creation, other.creation)),
            annihilation=tuple(tuple(a + b for a, b in zip(x, y)) for x, y in zip(self.annihilation, other.annihilation)),
            prefactor=self.prefactor * other.prefactor,
            shift=self.shift + other.shift,
        )

    def scaled(self, factor: Any) -> VertexOperator:
        return VertexOperator(self.creation, self.annihilation, self.prefactor * factor, self.shift)

    def rescaled(self, weights: Callable[[int, int], Any]) -> VertexOperator:
        """V(c_i z) per boson: A_n ↦ A_n w(i,n), B_n ↦ B_n / w(i,n), with w(i,n) = c_i^n."""
        return VertexOperator(
            creation=tuple(tuple(a * weights(i, n + 1) for n, a in enumerate(row)) for i, row in enumerate(self.creation)),
            annihilation=tuple(
                tuple(b / weights(i, n + 1) for n, b in enumerate(row)) for i, row in enumerate(self.annihilation)
            ),
            prefactor=self.prefactor,
            shift=self.shift,
        )

    def dual(self) -> VertexOperator:
        """The operator acting on bra keys: creation and annihilation swap, z ↦ 1/z."""
        return VertexOperator(self.annihilation, self.creation, self.prefactor, -self.shift)

    def creation_terms(self, size: int) -> list[tuple[PartitionTuple, Any]]:
        """Coefficient of z^size in the creation exponential, as monomials."""
        if size not in self._terms:
            terms: list[tuple[PartitionTuple, Any]] = []
            for key in enumerate_tuples(self.n_bosons, size):
                coefficient: Any = 1
                for i, component in enumerate(key):
                    for part, mult in component.multiplicities().items():
                        coefficient = coefficient * power(self.creation[i][part - 1], mult) * QQ(1, factorial(mult))
                        if not coefficient:
                            break
                    if not coefficient:
                        break
                if coefficient:
                    terms.append((key, coefficient))
            self._terms[size] = terms
        return self._terms[size]


def _multiset(component: Partition) -> dict[int, int]:
    return component.multiplicities()


def _remove(key: PartitionTuple, removed: dict[tuple[int, int], int]) -> PartitionTuple:
    parts = []
    for i, component in enumerate(key):
        remaining: list[int] = []
        counts = dict(component.multiplicities())
        for (boson, mode), j in removed.items():
            if boson == i:
                counts[mode] -= j
        for mode in sorted(counts, reverse=True):
            remaining.extend([mode] * counts[mode])
        parts.append(Partition(tuple(remaining)))
    return PartitionTuple(tuple(parts))


def apply_mode(vertex: VertexOperator, m: int, state: FockState) -> FockState:
    """Coefficient of z^{-m} of the vertex operator applied to ``state``."""
    space = state.space
    out: dict[PartitionTuple, Any] = {}
    for key, value in state.coeffs.items():
        level = key.size
        target = level - m - vertex.shift
        if target < 0:
            continue
        if target > space.max_level:
            raise LevelOverflow(target, space.max_level)
        slots = [
            (i, mode, mult)
            for i, component in enumerate(key)
            for mode, mult in _multiset(component).items()
            if vertex.annihilation[i][mode - 1]
        ]
        for choice in itertools.product(*(range(mult + 1) for _, _, mult in slots)):
            removed_level = sum(mode * j for (_, mode, _), j in zip(slots, choice))
            created = removed_level - m - vertex.shift
            if created < 0:
                continue
            coefficient = value
            removed: dict[tuple[int, int], int] = {}
            for (i, mode, mult), j in zip(slots, choice):
                if j:
                    b_kappa = vertex.annihilation[i][mode - 1] * space.kappa(mode)
                    coefficient = coefficient * comb(mult, j) * power(b_kappa, j)
                    removed[(i, mode)] = j
            remaining = _remove(key, removed) if removed else key
            for new_key, creation_coefficient in vertex.creation_terms(created):
                result_key = remaining.union(new_key) if created else remaining
                contribution = coefficient * creation_coefficient
                out[result_key] = out[result_key] + contribution if result_key in out else contribution
    return FockState(space, out).scale(vertex.prefactor)


@dataclass(frozen=True)
class Current:
    """Σ_k θ_k(n) V_k(z): each vertex operator contributes only to admitted modes."""

    terms: tuple[tuple[VertexOperator, ModeFilter], ...]

    @classmethod
    def of(cls, *vertices: VertexOperator) -> Current:
        return cls(tuple((v, ModeFilter.ALL) for v in vertices))

    def __add__(self, other: Current) -> Current:
        return Current(self.terms + other.terms)

    def apply(self, n: int, state: FockState) -> FockState:
        return _sum_states(state.space, (apply_mode(v, n, state) for v, f in self.terms if f.admits(n)))

    @cached_property
    def duals(self) -> tuple[tuple[VertexOperator, ModeFilter], ...]:
        return tuple((v.dual(), f) for v, f in self.terms)

    def apply_bra(self, n: int, bra: FockState) -> FockState:
        """⟨F| X_n, returned as a bra state."""
        return _sum_states(bra.space, (apply_mode(v, -n, bra) for v, f in self.duals if f.admits(n)))

    def scaled(self, factor: Any) -> Current:
        return Current(tuple((v.scaled(factor), f) for v, f in self.terms))


Word = Sequence[tuple[Current, int]]


def apply_word(word: Word, state: FockState) -> FockState:
    """X_{n_1} X_{n_2} ⋯ X_{n_k} |state⟩; the rightmost letter acts first."""
    for current, n in reversed(word):
        if state.is_zero():
            break
        state = current.apply(n, state)
    return state


def apply_word_bra(bra: FockState, word: Word) -> FockState:
    """⟨bra| X_{n_1} ⋯ X_{n_k}; the leftmost letter acts first."""
    for current, n in word:
        if bra.is_zero():
            break
        bra = current.apply_bra(n, bra)
    return bra


def bra_action(current: Current, n: int, bra: FockState) -> FockState:
    return current.apply_bra(n, bra)


def matrix_element(bra: FockState, word: Word, ket: FockState) -> Any:
    return pair(bra, apply_word(word, ket))


def symfunc_to_state(f: SymFunc, space: FockSpace, images: Callable[[int], FockState] | None = None) -> FockState:
    """Substitute p_n ↦ (linear boson combination) and act on the vacuum.

    ``images(n)`` gives the state image(n)|0⟩ for one power sum; the default
    maps p_n to a^{(1)}_{-n}. Products of creation operators commute, so
    monomials multiply by key union.
    """
    if images is None:
        def images(n: int) -> FockState:
            return space.monomial(space.boson(0, n))

    cache: dict[int, FockState] = {}
    terms = []
    for lam, c in f:
        term = space.vacuum(space.point.convert(c))
        for part in lam:
            if part not in cache:
                cache[part] = images(part)
            term = multiply_states(term, cache[part])
        terms.append(term)
    return _sum_states(space, terms)


def linear_image(space: FockSpace, weights: Sequence[Any]) -> Callable[[int], FockState]:
    """p_n ↦ Σ_i weights[i] a^{(i)}_{-n}."""

    def image(n: int) -> FockState:
        return FockState(space, {space.boson(i, n): w for i, w in enumerate(weights) if w})

    return image


def product_state(factors: Sequence[SymFunc], space: FockSpace) -> FockState:
    """∏_i f_i(a^{(i)}_{-n}) |0⟩."""
    state = space.vacuum()
    for index, f in enumerate(factors):
        weights = [0] * space.n_bosons
        weights[index] = 1
        factor_state = symfunc_to_state(f, space, linear_image(space, weights))
        state = multiply_states(state, factor_state)
    return state


def multiply_states(a: FockState, b: FockState) -> FockState:
    """Product of two states built from commuting creation operators."""
    out: dict[PartitionTuple, Any] = {}
    for k1, v1 in a.coeffs.items():
        for k2, v2 in b.coeffs.items():
            key = k1.union(k2)
            out[key] = out[key] + v1 * v2 if key in out else v1 * v2
    return FockState(a.space, out)
