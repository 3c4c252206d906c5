"""Partitions, N-tuples of partitions, their statistics and partial orderings."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, Iterable, Iterator

from sympy.utilities.iterables import partitions as _sympy_partitions


@dataclass(frozen=True, order=True)
class Partition:
    """A Young diagram stored as a non-increasing tuple of positive parts."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {self.parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be non-increasing: {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(parts))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def __str__(self) -> str:
        if not self.parts:
            return "()"
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """λ_i with 1-based rows; zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self.parts:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def n(self) -> int:
        return sum(i * p for i, p in enumerate(self.parts))

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield i, j

    def contains(self, other: Partition) -> bool:
        """λ ⊃ μ: λ_i ≥ μ_i for every row."""
        return all(self.part(i) >= other.part(i) for i in range(1, other.length + 1))

    def union(self, other: Partition) -> Partition:
        rows = max(self.length, other.length)
        return Partition(tuple(max(self.part(i), other.part(i)) for i in range(1, rows + 1)))

    def dominates(self, other: Partition) -> bool:
        if self.size != other.size:
            return False
        left = right = 0
        for i in range(1, max(self.length, other.length) + 1):
            left += self.part(i)
            right += other.part(i)
            if left < right:
                return False
        return True

    def add_box(self, i: int) -> Partition:
        parts = list(self.parts) + [0]
        parts[i - 1] += 1
        return Partition(tuple(parts))

    def remove_box(self, i: int) -> Partition:
        parts = list(self.parts)
        parts[i - 1] -= 1
        return Partition(tuple(parts))

    def union_parts(self, other: Partition) -> Partition:
        """Multiset union of parts, i.e. the index of p_λ p_μ."""
        return Partition(tuple(sorted(self.parts + other.parts, reverse=True)))

    def to_json(self) -> list[int]:
        return list(self.parts)


EMPTY = Partition()


def rectangle(rows: int, columns: int) -> Partition:
    return Partition((columns,) * rows) if rows > 0 and columns > 0 else EMPTY


def one_column(n: int) -> Partition:
    return Partition((1,) * n)


@dataclass(frozen=True, order=True)
class PartitionTuple:
    components: tuple[Partition, ...]

    @classmethod
    def of(cls, *components: Iterable[int] | Partition) -> PartitionTuple:
        return cls(tuple(c if isinstance(c, Partition) else Partition(tuple(c)) for c in components))

    @classmethod
    def empty(cls, n_components: int) -> PartitionTuple:
        return cls((EMPTY,) * n_components)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.components)

    def __getitem__(self, index: int) -> Partition:
        return self.components[index]

    def __len__(self) -> int:
        return len(self.components)

    def __repr__(self) -> str:
        return "(" + ", ".join(str(c) if c else "∅" for c in self.components) + ")"

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def size(self) -> int:
        return sum(c.size for c in self.components)

    def weights(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.components)

    def replace(self, index: int, component: Partition) -> PartitionTuple:
        items = list(self.components)
        items[index] = component
        return PartitionTuple(tuple(items))

    def reversed_conjugate(self) -> PartitionTuple:
        """(λ^(N)', …, λ^(1)')."""
        return PartitionTuple(tuple(c.conjugate() for c in reversed(self.components)))

    def swapped(self, i: int, j: int) -> PartitionTuple:
        items = list(self.components)
        items[i], items[j] = items[j], items[i]
        return PartitionTuple(tuple(items))

    def union(self, other: PartitionTuple) -> PartitionTuple:
        return PartitionTuple(tuple(a.union_parts(b) for a, b in zip(self.components, other.components)))

    def to_json(self) -> list[list[int]]:
        return [c.to_json() for c in self.components]


@dataclass(frozen=True, order=True)
class BoxCoord:
    """Box (component ℓ, row i, column j), 1-based; may lie outside the diagram."""

    component: int
    row: int
    column: int

    def to_json(self) -> list[int]:
        return [self.component, self.row, self.column]


def chi(box: BoxCoord, u: tuple[Any, ...], q: Any, t: Any) -> Any:
    """χ_(ℓ,i,j) = u_ℓ t^{-i+1} q^{j-1}."""
    return u[box.component - 1] * t ** (1 - box.row) * q ** (box.column - 1)


def arm_leg(partition: Partition, i: int, j: int) -> tuple[int, int]:
    return partition.part(i) - j, partition.conjugate().part(j) - i


def nek_factor(lam: Partition, mu: Partition, Q: Any, q: Any, t: Any) -> Any:
    """N_{λμ}(Q) = ∏_{λ}(1 - Q q^{A_λ} t^{L_μ+1}) ∏_{μ}(1 - Q q^{-A_μ-1} t^{-L_λ})."""
    value = Q**0
    lam_c, mu_c = lam.conjugate(), mu.conjugate()
    for i, j in lam.boxes():
        value *= 1 - Q * q ** (lam.part(i) - j) * t ** (mu_c.part(j) - i + 1)
    for i, j in mu.boxes():
        value *= 1 - Q * q ** (j - mu.part(i) - 1) * t ** (i - lam_c.part(j))
    return value


def crystal_nek(lam: Partition, mu: Partition, Q: Any, t: Any) -> Any:
    """Ñ_{λμ}(Q), the q → 0 limit of q^{n(μ')} N_{λμ}(qQ/t).

    Boxes of μ with nonzero arm contribute -Q t^{-L_λ-1} each; the last box
    of every row contributes (1 - Q t^{-L_λ-1}).
    """
    value = Q**0
    lam_c = lam.conjugate()
    for i, j in mu.boxes():
        leg = lam_c.part(j) - i
        if j < mu.part(i):
            value *= -Q * t ** (-leg - 1)
        else:
            value *= 1 - Q * t ** (-leg - 1)
    return value


def check_part(partition: Partition) -> Partition:
    """λ̌: the boxes of λ with nonzero arm length, counted per row."""
    return Partition(tuple(p - 1 for p in partition.parts))


def stats(partition: Partition) -> tuple[int, Partition]:
    return partition.n(), check_part(partition)


def b_factors(partition: Partition, x: Any) -> tuple[Any, Any]:
    """(b_λ(x), b'_λ(x)) = (∏∏(1-x^k), ∏∏(-1+x^k))."""
    b = b_prime = x ** 0
    for multiplicity in partition.multiplicities().values():
        for k in range(1, multiplicity + 1):
            b *= 1 - x**k
            b_prime *= x**k - 1
    return b, b_prime


def z_factor(partition: Partition) -> int:
    """z_λ = ∏ i^{m_i} m_i!."""
    value = 1
    for part, multiplicity in partition.multiplicities().items():
        for k in range(1, multiplicity + 1):
            value *= part * k
    return value


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """Partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        return ()
    if n == 0:
        return (EMPTY,)
    found = []
    for multiplicities in _sympy_partitions(n):
        parts: list[int] = []
        for part, count in multiplicities.items():
            parts.extend([part] * count)
        found.append(Partition(tuple(sorted(parts, reverse=True))))
    return tuple(sorted(found, key=lambda p: p.parts, reverse=True))


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_tuples(n_components: int, n: int) -> tuple[PartitionTuple, ...]:
    """Every N-tuple of total size n, sorted by size vector then reverse-lex per component."""
    if n_components < 1 or n < 0:
        raise ValueError(f"need N >= 1 and n >= 0, got N={n_components}, n={n}")
    found: list[PartitionTuple] = []
    for sizes in sorted(_compositions(n, n_components)):
        for combo in itertools.product(*(partitions_of(s) for s in sizes)):
            found.append(PartitionTuple(tuple(combo)))
    return tuple(found)


def tuple_count(n_components: int, n: int) -> int:
    """P^(N)(n)."""
    return len(enumerate_tuples(n_components, n)) if n >= 0 else 0


def addable_boxes(partition: Partition, component: int) -> list[BoxCoord]:
    boxes = []
    for i in range(1, partition.length + 2):
        if i == 1 or partition.part(i - 1) > partition.part(i):
            boxes.append(BoxCoord(component, i, partition.part(i) + 1))
    return boxes


def removable_boxes(partition: Partition, component: int) -> list[BoxCoord]:
    boxes = []
    for i in range(1, partition.length + 1):
        if partition.part(i) > partition.part(i + 1):
            boxes.append(BoxCoord(component, i, partition.part(i)))
    return boxes


def add_remove_sets(tuple_: PartitionTuple) -> tuple[list[BoxCoord], list[BoxCoord]]:
    addable: list[BoxCoord] = []
    removable: list[BoxCoord] = []
    for index, component in enumerate(tuple_, start=1):
        addable.extend(addable_boxes(component, index))
        removable.extend(removable_boxes(component, index))
    return addable, removable


class Comparison(str, Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


class Ordering(str, Enum):
    DOMINANCE = "dominance"
    STAR = "star"
    STAR_REFINED = "star_refined"
    L = "L"
    R = "R"


def _suffix_sums(weights: tuple[int, ...]) -> list[int]:
    return [sum(weights[k:]) for k in range(len(weights))]


def _star_geq(lam: PartitionTuple, mu: PartitionTuple) -> bool:
    return all(a >= b for a, b in zip(_suffix_sums(lam.weights()), _suffix_sums(mu.weights())))


def _star_greater(lam: PartitionTuple, mu: PartitionTuple) -> bool:
    return lam.weights() != mu.weights() and _star_geq(lam, mu)


def _refined_greater(lam: PartitionTuple, mu: PartitionTuple) -> bool:
    if not _star_greater(lam, mu):
        return False
    weights_l, weights_m = lam.weights(), mu.weights()
    for alpha in range(lam.n_components):
        target = weights_l[alpha] + sum(weights_l[b] - weights_m[b] for b in range(alpha + 1, lam.n_components))
        if lam[alpha].union(mu[alpha]).size > target:
            return False
    return True


def _dominance_geq(lam: PartitionTuple, mu: PartitionTuple) -> bool:
    return lam.weights() == mu.weights() and all(a.dominates(b) for a, b in zip(lam, mu))


def _row_sums_geq(lam: PartitionTuple, mu: PartitionTuple, left: bool) -> bool:
    n_components = lam.n_components
    rows = max(max((c.length for c in lam), default=0), max((c.length for c in mu), default=0))
    for j in range(n_components):
        if left:
            base_l = sum(c.size for c in lam.components[j + 1:])
            base_m = sum(c.size for c in mu.components[j + 1:])
        else:
            base_l = sum(c.size for c in lam.components[:j])
            base_m = sum(c.size for c in mu.components[:j])
        run_l, run_m = base_l, base_m
        for i in range(1, rows + 1):
            run_l += lam[j].part(i)
            run_m += mu[j].part(i)
            if run_l < run_m:
                return False
        if base_l < base_m:
            return False
    return True


def compare(lam: PartitionTuple, mu: PartitionTuple, ordering: Ordering | str) -> Comparison:
    ordering = Ordering(ordering)
    if lam.n_components != mu.n_components or lam.size != mu.size:
        return Comparison.INCOMPARABLE
    if lam == mu:
        return Comparison.EQUAL
    if ordering is Ordering.STAR:
        greater = _star_greater
    elif ordering is Ordering.STAR_REFINED:
        greater = _refined_greater
    elif ordering is Ordering.DOMINANCE:
        greater = _dominance_geq
    elif ordering is Ordering.L:
        def greater(a: PartitionTuple, b: PartitionTuple) -> bool:
            return _row_sums_geq(a, b, left=True)
    else:
        def greater(a: PartitionTuple, b: PartitionTuple) -> bool:
            return _row_sums_geq(a, b, left=False)
    if greater(lam, mu):
        return Comparison.GREATER
    if greater(mu, lam):
        return Comparison.LESS
    return Comparison.INCOMPARABLE


def star_linear_extension(n_components: int, n: int) -> list[PartitionTuple]:
    """Tuples ordered so that λ⃗ ⋆> μ⃗ puts λ⃗ first; ties keep canonical order."""
    canonical = enumerate_tuples(n_components, n)
    rank = {t: k for k, t in enumerate(canonical)}
    return sorted(canonical, key=lambda t: ([-s for s in _suffix_sums(t.weights())[1:]], rank[t]))


def l_linear_extension(n_components: int, n: int) -> list[PartitionTuple]:
    """Tuples ordered so that λ⃗ >^L μ⃗ puts λ⃗ first."""
    canonical = list(enumerate_tuples(n_components, n))
    ordered: list[PartitionTuple] = []
    remaining = canonical[:]
    while remaining:
        for candidate in remaining:
            if not any(compare(other, candidate, Ordering.L) is Comparison.GREATER for other in remaining):
                ordered.append(candidate)
                remaining.remove(candidate)
                break
    return ordered


def parse_tuple(value: Any) -> PartitionTuple:
    """Accept [[2,1],[1]] style JSON."""
    return PartitionTuple(tuple(Partition(tuple(c)) for c in value))
