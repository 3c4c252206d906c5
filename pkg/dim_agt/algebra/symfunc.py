"""Symmetric functions in the power-sum basis with exact coefficients.

Macdonald and Hall-Littlewood functions are produced by Gram-Schmidt over a
linear extension of the dominance order, using the (q,t) pairing and its q=0
specialization.
"""

from __future__ import annotations

from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator

from sympy import QQ

from dim_agt.algebra import linalg
from dim_agt.algebra.combinat import EMPTY, Partition, b_factors, partitions_of, z_factor
from dim_agt.algebra.scalars import ScalarPoint, power, scalar_to_json
from dim_agt.config import MAX_MACDONALD_DEGREE, MAX_SYMFUNC_DEGREE
from dim_agt.errors import CostGuardError, SingularSystem
from dim_agt.reports import CheckReport


class Basis(str, Enum):
    POWER_SUM = "power_sum"
    MONOMIAL = "monomial"
    ELEMENTARY = "elementary"


class SymFunc:
    """Finite linear combination Σ c_λ p_λ."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Partition, Any] | None = None) -> None:
        self.terms = {lam: c for lam, c in (terms or {}).items() if c}

    @classmethod
    def one(cls, value: Any = 1) -> SymFunc:
        return cls({EMPTY: value})

    @classmethod
    def p(cls, *parts: int) -> SymFunc:
        return cls({Partition(tuple(sorted(parts, reverse=True))): QQ.one})

    def __iter__(self) -> Iterator[tuple[Partition, Any]]:
        return iter(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self) -> str:
        inner = " + ".join(f"({c})*p{lam}" for lam, c in sorted(self.terms.items(), key=lambda kv: kv[0].parts))
        return f"SymFunc({inner or '0'})"

    def coefficient(self, lam: Partition) -> Any:
        return self.terms.get(lam, 0)

    def degree(self) -> int:
        return max((lam.size for lam in self.terms), default=0)

    def __add__(self, other: SymFunc) -> SymFunc:
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms[lam] + c if lam in terms else c
        return SymFunc(terms)

    def __neg__(self) -> SymFunc:
        return SymFunc({lam: -c for lam, c in self.terms.items()})

    def __sub__(self, other: SymFunc) -> SymFunc:
        return self + (-other)

    def scale(self, factor: Any) -> SymFunc:
        return SymFunc({lam: c * factor for lam, c in self.terms.items()})

    def __mul__(self, other: SymFunc | Any) -> SymFunc:
        if not isinstance(other, SymFunc):
            return self.scale(other)
        terms: dict[Partition, Any] = {}
        for lam, a in self.terms.items():
            for mu, b in other.terms.items():
                key = lam.union_parts(mu)
                terms[key] = terms[key] + a * b if key in terms else a * b
        return SymFunc(terms)

    __rmul__ = scale

    def negate_arguments(self) -> SymFunc:
        """f(-p): the algebra map p_n ↦ -p_n."""
        return SymFunc({lam: c if lam.length % 2 == 0 else -c for lam, c in self.terms.items()})

    def substitute(self, images: Callable[[int], Any], one: Any = 1) -> Any:
        """Evaluate with p_n replaced by images(n); images may be scalars or any ring element."""
        total: Any = None
        cache: dict[int, Any] = {}
        for lam, c in self.terms.items():
            term: Any = one
            for part in lam:
                if part not in cache:
                    cache[part] = images(part)
                term = term * cache[part]
            term = term * c
            total = term if total is None else total + term
        return 0 if total is None else total

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict[str, Any]:
        return {str(lam): scalar_to_json(c) for lam, c in sorted(self.terms.items(), key=lambda kv: kv[0].parts)}


def _guard(degree: int, cap: int) -> None:
    if degree > cap:
        raise CostGuardError(f"degree {degree} exceeds the cap {cap}")


def _count_fillings(parts: tuple[int, ...], bins: tuple[int, ...]) -> int:
    """Number of maps from parts to bins with each bin's total exactly filled."""

    @lru_cache(maxsize=None)
    def fill(index: int, remaining: tuple[int, ...]) -> int:
        if index == len(parts):
            return int(not any(remaining))
        total = 0
        for b, room in enumerate(remaining):
            if room >= parts[index]:
                nxt = list(remaining)
                nxt[b] -= parts[index]
                total += fill(index + 1, tuple(nxt))
        return total

    return fill(0, bins)


@lru_cache(maxsize=None)
def _power_to_monomial(n: int) -> tuple[tuple[Any, ...], ...]:
    """Row μ gives p_μ = Σ_λ R[μ][λ] m_λ over partitions_of(n)."""
    basis = partitions_of(n)
    return tuple(tuple(QQ(_count_fillings(mu.parts, lam.parts)) for lam in basis) for mu in basis)


@lru_cache(maxsize=None)
def _monomial_to_power(n: int) -> tuple[tuple[Any, ...], ...]:
    return tuple(tuple(row) for row in linalg.inverse([list(r) for r in _power_to_monomial(n)]))


def monomial(lam: Partition) -> SymFunc:
    _guard(lam.size, MAX_SYMFUNC_DEGREE)
    basis = partitions_of(lam.size)
    row = _monomial_to_power(lam.size)[basis.index(lam)]
    return SymFunc({mu: c for mu, c in zip(basis, row)})


def elementary(n: int) -> SymFunc:
    """e_n = Σ_λ (-1)^{n-ℓ(λ)} p_λ / z_λ."""
    _guard(n, MAX_SYMFUNC_DEGREE)
    return SymFunc({lam: QQ((-1) ** (n - lam.length), z_factor(lam)) for lam in partitions_of(n)})


def elementary_product(lam: Partition) -> SymFunc:
    result = SymFunc.one(QQ.one)
    for part in lam:
        result = result * elementary(part)
    return result


@lru_cache(maxsize=None)
def _elementary_matrix(n: int) -> tuple[tuple[Any, ...], ...]:
    basis = partitions_of(n)
    return tuple(tuple(elementary_product(lam).coefficient(mu) for mu in basis) for lam in basis)


def _homogeneous_parts(f: SymFunc) -> dict[int, dict[Partition, Any]]:
    graded: dict[int, dict[Partition, Any]] = {}
    for lam, c in f:
        graded.setdefault(lam.size, {})[lam] = c
    return graded


def convert(f: SymFunc, basis: Basis | str) -> dict[Partition, Any]:
    """Coefficients of f in the requested basis."""
    basis = Basis(basis)
    _guard(f.degree(), MAX_SYMFUNC_DEGREE)
    if basis is Basis.POWER_SUM:
        return dict(f.terms)
    out: dict[Partition, Any] = {}
    for n, terms in _homogeneous_parts(f).items():
        index = partitions_of(n)
        row = [terms.get(mu, 0) for mu in index]
        if basis is Basis.MONOMIAL:
            matrix = _power_to_monomial(n)
            coeffs = [sum((row[i] * matrix[i][j] for i in range(len(index))), 0) for j in range(len(index))]
        else:
            matrix = _elementary_matrix(n)
            coeffs = linalg.solve_unique(linalg.transpose([list(r) for r in matrix]), row)
        out.update({lam: c for lam, c in zip(index, coeffs) if c})
    return out


def from_basis(coeffs: dict[Partition, Any], basis: Basis | str) -> SymFunc:
    basis = Basis(basis)
    result = SymFunc()
    for lam, c in coeffs.items():
        if basis is Basis.POWER_SUM:
            element = SymFunc({lam: QQ.one})
        elif basis is Basis.MONOMIAL:
            element = monomial(lam)
        else:
            element = elementary_product(lam)
        result = result + element.scale(c)
    return result


def power_sum_weight(lam: Partition, point: ScalarPoint, q: Any | None = None, t: Any | None = None) -> Any:
    """⟨p_λ, p_λ⟩_{q,t} = z_λ ∏ (1-q^{λ_i})/(1-t^{λ_i})."""
    q = point.q if q is None else q
    t = point.t if t is None else t
    value = point.const(z_factor(lam))
    for part in lam:
        value = value * (1 - power(q, part)) / (1 - power(t, part))
    return value


def inner_qt(f: SymFunc, g: SymFunc, point: ScalarPoint, q: Any | None = None, t: Any | None = None) -> Any:
    """The (q,t) pairing; pass q=0 for the Hall-Littlewood pairing ⟨,⟩_{0,t}."""
    total = point.zero
    for lam, c in f:
        d = g.coefficient(lam)
        if d:
            total += c * d * power_sum_weight(lam, point, q, t)
    return total


def inner_hl(f: SymFunc, g: SymFunc, point: ScalarPoint) -> Any:
    return inner_qt(f, g, point, q=point.zero)


def _orthogonal_family(n: int, point: ScalarPoint, q: Any, t: Any) -> dict[Partition, SymFunc]:
    _guard(n, MAX_MACDONALD_DEGREE)
    family: dict[Partition, SymFunc] = {}
    norms: dict[Partition, Any] = {}
    for lam in reversed(partitions_of(n)):
        vector = monomial(lam)
        correction = SymFunc()
        for mu, p_mu in family.items():
            overlap = inner_qt(vector, p_mu, point, q, t)
            if overlap:
                correction = correction + p_mu.scale(overlap / norms[mu])
        vector = vector - correction
        norm = inner_qt(vector, vector, point, q, t)
        if not norm:
            raise SingularSystem(f"degenerate pairing at degree {n}")
        family[lam] = vector
        norms[lam] = norm
    return family


def _family(n: int, point: ScalarPoint, hall_littlewood: bool, t: Any | None = None) -> dict[Partition, SymFunc]:
    t = point.t if t is None else t
    q = point.zero if hall_littlewood else point.q
    key = f"symfunc:{'hl' if hall_littlewood else 'mac'}:{n}:{t}"
    return point.cache(key, lambda: _orthogonal_family(n, point, q, t))


def macdonald(lam: Partition, point: ScalarPoint) -> tuple[SymFunc, SymFunc]:
    """(P_λ, Q_λ) with ⟨P_λ, Q_λ⟩_{q,t} = 1."""
    p_lam = _family(lam.size, point, hall_littlewood=False)[lam]
    return p_lam, p_lam.scale(1 / inner_qt(p_lam, p_lam, point))


def hall_littlewood(lam: Partition, point: ScalarPoint, t: Any | None = None) -> tuple[SymFunc, SymFunc]:
    """(P_λ(;t), Q_λ(;t) = b_λ(t) P_λ(;t)); t defaults to the point's t and may be e.g. t^{-1}."""
    t = point.t if t is None else t
    p_lam = _family(lam.size, point, hall_littlewood=True, t=t)[lam]
    return p_lam, p_lam.scale(b_factors(lam, t)[0])


def principal_specialization(lam: Partition, r: Any, point: ScalarPoint) -> Any:
    """Q_λ(p;t) at p_n = (1-r^n)/(1-t^n)."""
    _, q_lam = hall_littlewood(lam, point)
    t = point.t
    return q_lam.substitute(lambda n: (1 - power(r, n)) / (1 - power(t, n)), point.one)


def principal_specialization_closed(lam: Partition, r: Any, point: ScalarPoint) -> Any:
    t = point.t
    value = power(t, lam.n()) * point.one
    for i in range(1, lam.length + 1):
        value *= 1 - power(t, 1 - i) * r
    return value


def hl_pairing_identities(lam: Partition, point: ScalarPoint) -> CheckReport:
    """⟨e_s(-p), Q_λ⟩_{0,t} and ⟨Q_(s)(-p), Q_λ⟩_{0,t} against their closed forms."""
    report = CheckReport("symfunc")
    s = lam.size
    t = point.t
    _, q_lam = hall_littlewood(lam, point)
    left = inner_hl(elementary(s).negate_arguments(), q_lam, point)
    right = power(t, lam.n()) * (-1) ** s
    report.compare(f"hl-elementary-pairing{lam}", "HL pairing with e_s(-p)", left, right, point)
    row = Partition((s,)) if s else EMPTY
    _, q_row = hall_littlewood(row, point)
    left = inner_hl(q_row.negate_arguments(), q_lam, point)
    right = power(t, s + lam.n()) * point.one
    for k in range(1, lam.length + 1):
        right *= 1 - power(t, -k)
    report.compare(f"hl-row-pairing{lam}", "HL pairing with Q_(s)(-p)", left, right, point)
    return report


def macdonald_property_checks(n: int, point: ScalarPoint) -> CheckReport:
    """Orthogonality, dominance triangularity and b-duality at degree n."""
    report = CheckReport("symfunc")
    basis = partitions_of(n)
    for hl in (False, True):
        q = point.zero if hl else point.q
        family = _family(n, point, hall_littlewood=hl)
        tag = "hl" if hl else "mac"
        orthogonal = all(
            not inner_qt(family[a], family[b], point, q) for i, a in enumerate(basis) for b in basis[i + 1:]
        )
        report.record(f"{tag}-orthogonal-{n}", "orthogonality of P_λ", orthogonal, point)
        triangular = True
        for lam in basis:
            coeffs = convert(family[lam], Basis.MONOMIAL)
            if coeffs.get(lam) != 1:
                triangular = False
            for mu in coeffs:
                if mu != lam and not lam.dominates(mu):
                    triangular = False
        report.record(f"{tag}-triangular-{n}", "P_λ = m_λ + lower terms", triangular, point)
    duality = True
    for lam in basis:
        p_lam, q_lam = hall_littlewood(lam, point)
        if inner_hl(p_lam, q_lam, point) != 1:
            duality = False
    report.record(f"hl-b-duality-{n}", "Q_λ = b_λ(t) P_λ", duality, point)
    return report


