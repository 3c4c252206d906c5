"""Exact scalar fields, seeded specialization points, truncated series and multi-point identity checks.

Two modes exist. In numeric mode every parameter is a rational (a sympy ``QQ``
element) and q, t are fourth powers so every fractional power needed later is
still rational. In symbolic-q mode ``q`` is the generator of the univariate
rational function field ``QQ(q)`` and the remaining parameters stay rational.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Any, Callable, Iterable, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement, field

from dim_agt.errors import EvaluationError, PoleAtZero, SamplingExhausted, ScalarModeError

logger = logging.getLogger(__name__)

MAX_REJECTIONS = 1000
MAX_HEIGHT = 50
ROOT_HEIGHT = 5

QField, Q_SYMBOL = field("q", QQ)


class Slot(str, Enum):
    """Which parameter, if any, is kept formal.

    Only Q changes the scalar field. Series in Λ and z are always truncated
    formal series, so LAMBDA and Z run at numeric scalars and only mark the
    report options.
    """

    NONE = "none"
    Q = "q"
    LAMBDA = "Lambda"
    Z = "z"


def is_zero(x: Any) -> bool:
    return not x


def inv(x: Any) -> Any:
    if isinstance(x, int):
        return QQ(1, x)
    return 1 / x


def power(x: Any, n: int) -> Any:
    if n >= 0:
        return x**n
    return inv(x ** (-n))


def is_symbolic(x: Any) -> bool:
    return isinstance(x, FracElement)


def rational(num: int, den: int = 1) -> Any:
    return QQ(num, den)


def value_at_zero(x: Any) -> Any:
    """Evaluate a scalar at q=0; rationals pass through unchanged."""
    if not is_symbolic(x):
        return x
    denom_zero = x.denom.get((0,), QQ.zero)
    if not denom_zero:
        raise PoleAtZero(f"{x} has a pole at q=0")
    return x.numer.get((0,), QQ.zero) / denom_zero


def has_pole_at_zero(x: Any) -> bool:
    return is_symbolic(x) and not x.denom.get((0,), QQ.zero)


def _dense(poly: Any) -> list[str]:
    degree = max((m[0] for m in poly.keys()), default=0)
    return [scalar_to_json(poly.get((i,), QQ.zero)) for i in range(degree + 1)]


def scalar_to_json(x: Any) -> Any:
    """Rationals as "num/den"; rational functions in q as low-to-high coefficient lists."""
    if is_symbolic(x):
        return {"num": _dense(x.numer), "den": _dense(x.denom)}
    value = QQ.convert(x)
    return f"{QQ.numer(value)}/{QQ.denom(value)}"


def scalar_from_json(data: Any) -> Any:
    if isinstance(data, dict):
        num = sum((QQ(*_split(c)) * Q_SYMBOL**i for i, c in enumerate(data["num"])), QField.zero)
        den = sum((QQ(*_split(c)) * Q_SYMBOL**i for i, c in enumerate(data["den"])), QField.zero)
        return num / den
    return QQ(*_split(data))


def _split(text: str) -> tuple[int, int]:
    num, _, den = str(text).partition("/")
    return int(num), int(den or 1)


@dataclass(frozen=True)
class ScalarPoint:
    """A specialization of (q, t, u⃗) plus the auxiliary parameters the checks use.

    ``q = q0**4`` and ``t = t0**4`` so that q^{a/4} t^{b/4} is always rational.
    ``v``, ``w`` and ``x`` are a second weight vector and two spectral variables
    for vertex operators, ``k`` is the Virasoro highest-weight parameter and
    ``beta`` the Jack parameter.
    """

    seed: int
    n_components: int
    q0: Any
    t0: Any
    u: tuple[Any, ...]
    v: tuple[Any, ...] = ()
    w: Any = QQ(1)
    x: Any = QQ(1)
    k: Any = QQ(1)
    beta: Any = QQ(1)
    slot: Slot = Slot.NONE
    max_level: int = 0
    _cache: dict[str, Any] = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def symbolic(self) -> bool:
        return self.slot is Slot.Q

    @property
    def one(self) -> Any:
        return QField.one if self.symbolic else QQ.one

    @property
    def zero(self) -> Any:
        return QField.zero if self.symbolic else QQ.zero

    def convert(self, value: Any) -> Any:
        if self.symbolic:
            return QField(value) if not is_symbolic(value) else value
        return QQ.convert(value)

    def const(self, num: int, den: int = 1) -> Any:
        return self.convert(QQ(num, den))

    @property
    def q(self) -> Any:
        return Q_SYMBOL if self.symbolic else self.q0**4

    @property
    def t(self) -> Any:
        return self.convert(self.t0**4)

    @property
    def p(self) -> Any:
        return self.q / self.t

    def quarter(self, a: int, b: int = 0) -> Any:
        """q^{a/4} t^{b/4}."""
        if self.symbolic:
            if a % 4:
                raise ScalarModeError(f"q^({a}/4) is not available with formal q")
            q_part = power(Q_SYMBOL, a // 4)
        else:
            q_part = power(self.q0, a)
        return q_part * self.convert(power(self.t0, b))

    def p_half(self, k: int) -> Any:
        """p^{k/2}."""
        return self.quarter(2 * k, -2 * k)

    @property
    def uu(self) -> tuple[Any, ...]:
        return tuple(self.convert(x) for x in self.u)

    @property
    def vv(self) -> tuple[Any, ...]:
        return tuple(self.convert(x) for x in self.v)

    def e_n(self, values: Sequence[Any]) -> Any:
        product = self.one
        for value in values:
            product *= value
        return product

    def with_slot(self, slot: Slot | str) -> ScalarPoint:
        return ScalarPoint(
            self.seed, self.n_components, self.q0, self.t0, self.u, self.v, self.w, self.x, self.k,
            self.beta, Slot(slot), self.max_level,
        )

    def with_u(self, u: Sequence[Any], v: Sequence[Any] | None = None) -> ScalarPoint:
        return ScalarPoint(
            self.seed, len(u), self.q0, self.t0, tuple(u), tuple(self.v if v is None else v), self.w,
            self.x, self.k, self.beta, self.slot, self.max_level,
        )

    def cache(self, key: str, build: Callable[[], Any]) -> Any:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def describe(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "N": self.n_components,
            "q0": scalar_to_json(self.q0),
            "t0": scalar_to_json(self.t0),
            "u": [scalar_to_json(x) for x in self.u],
            "v": [scalar_to_json(x) for x in self.v],
            "w": scalar_to_json(self.w),
            "x": scalar_to_json(self.x),
            "k": scalar_to_json(self.k),
            "beta": scalar_to_json(self.beta),
            "slot": self.slot.value,
        }


def macdonald_e(parts: Iterable[int], q: Any, t: Any) -> Any:
    """e_λ = 1 + (t-1) Σ_{i≥1} (q^{λ_i} - 1) t^{-i}."""
    total = 0
    for i, part in enumerate(parts, start=1):
        total += (q**part - 1) * power(t, -i)
    return 1 + (t - 1) * total


def _sample(rng: random.Random, height: int, signed: bool = True) -> Any:
    num = rng.randint(1, height)
    den = rng.randint(1, height)
    if signed and rng.random() < 0.5:
        num = -num
    return QQ(num, den)


def _sample_root(rng: random.Random) -> Any:
    while True:
        value = QQ(rng.randint(1, ROOT_HEIGHT), rng.randint(1, ROOT_HEIGHT))
        if value != 1:
            return value


def _is_generic(point: ScalarPoint) -> bool:
    bound = max(2 * point.max_level, 2)
    u = point.uu
    k2 = point.convert(point.k) ** 2
    if any(not x for x in u) or any(not x for x in point.vv) or not k2:
        return False
    for r in range(-bound, bound + 1):
        for s in range(-bound, bound + 1):
            if k2 == power(point.q, r) * power(point.t, s):
                return False
            if (r or s) and not point.symbolic and power(point.q, r) == power(point.t, s):
                return False
            factor = power(point.q, r) * power(point.t, -s)
            for i in range(len(u)):
                for j in range(len(u)):
                    if i != j and u[i] == factor * u[j]:
                        return False
    return _eigenvalues_separated(point)


def _eigenvalues_separated(point: ScalarPoint) -> bool:
    from dim_agt.algebra.combinat import enumerate_tuples

    q, t, u = point.q, point.t, point.uu
    for level in range(1, point.max_level + 1):
        seen = set()
        for tup in enumerate_tuples(point.n_components, level):
            value = sum((u[i] * macdonald_e(c.parts, q, t) for i, c in enumerate(tup)), point.zero)
            key = str(value) if point.symbolic else value
            if key in seen:
                return False
            seen.add(key)
    return True


def make_point(
    seed: int,
    n_components: int = 2,
    max_level: int = 2,
    slot: Slot | str = Slot.NONE,
    *,
    q0: Any = None,
    t0: Any = None,
) -> ScalarPoint:
    """Deterministic generic point; resamples until genericity holds."""
    if max_level < 0:
        raise ValueError(f"max_level must be >= 0, got {max_level}")
    slot = Slot(slot)
    rng = random.Random(seed)
    for attempt in range(MAX_REJECTIONS):
        point = ScalarPoint(
            seed=seed,
            n_components=n_components,
            q0=QQ.convert(q0) if q0 is not None else _sample_root(rng),
            t0=QQ.convert(t0) if t0 is not None else _sample_root(rng),
            u=tuple(_sample(rng, MAX_HEIGHT) for _ in range(n_components)),
            v=tuple(_sample(rng, MAX_HEIGHT) for _ in range(n_components)),
            w=_sample(rng, MAX_HEIGHT),
            x=_sample(rng, MAX_HEIGHT),
            k=_sample(rng, MAX_HEIGHT),
            beta=_sample(rng, MAX_HEIGHT, signed=False),
            slot=slot,
            max_level=max_level,
        )
        if _is_generic(point):
            if attempt:
                logger.debug("seed %s accepted after %s rejections", seed, attempt)
            return point
        if q0 is not None and t0 is not None and attempt > MAX_REJECTIONS // 2:
            break
    raise SamplingExhausted(seed, MAX_REJECTIONS)


def constrained_point(base: ScalarPoint, u: Sequence[Any]) -> ScalarPoint:
    """A copy of ``base`` at prescribed (typically non-generic) u⃗."""
    return base.with_u([QQ.convert(x) for x in u])


Evaluator = Callable[[ScalarPoint], Any]


def identity_check(
    f: Evaluator,
    g: Evaluator,
    points: int = 3,
    seeds: Sequence[int] | None = None,
    *,
    n_components: int = 2,
    max_level: int = 2,
    slot: Slot | str = Slot.NONE,
) -> bool:
    """Exact equality of two evaluators at several independent points."""
    seeds = list(seeds) if seeds is not None else list(range(points))
    for seed in seeds[:points]:
        point = make_point(seed, n_components, max_level, slot)
        try:
            left, right = f(point), g(point)
        except (ArithmeticError, ValueError, KeyError) as exc:
            raise EvaluationError(f"evaluator failed: {exc}", point.describe()) from exc
        if left - right:
            logger.debug("identity fails at seed %s: %s != %s", seed, left, right)
            return False
    return True


class Series:
    """Truncated power series Σ_{n<order} c_n X^n in one formal variable."""

    def __init__(self, coeffs: Sequence[Any], order: int, variable: str = "Lambda") -> None:
        self.order = order
        self.variable = variable
        padded = list(coeffs[:order]) + [0] * max(0, order - len(coeffs))
        self.coeffs = padded

    @classmethod
    def constant(cls, value: Any, order: int, variable: str = "Lambda") -> Series:
        return cls([value], order, variable)

    @classmethod
    def monomial(cls, value: Any, degree: int, order: int, variable: str = "Lambda") -> Series:
        coeffs: list[Any] = [0] * order
        if degree < order:
            coeffs[degree] = value
        return cls(coeffs, order, variable)

    def _coerce(self, other: Any) -> Series:
        if isinstance(other, Series):
            if other.variable != self.variable:
                raise ValueError(f"series in {self.variable} and {other.variable} cannot be combined")
            return other
        return Series.constant(other, self.order, self.variable)

    def __getitem__(self, n: int) -> Any:
        return self.coeffs[n] if 0 <= n < self.order else 0

    def __add__(self, other: Any) -> Series:
        other = self._coerce(other)
        order = min(self.order, other.order)
        return Series([self[n] + other[n] for n in range(order)], order, self.variable)

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series([-c for c in self.coeffs], self.order, self.variable)

    def __sub__(self, other: Any) -> Series:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> Series:
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> Series:
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs], self.order, self.variable)
        other = self._coerce(other)
        order = min(self.order, other.order)
        out: list[Any] = [0] * order
        for i in range(order):
            if not self[i]:
                continue
            for j in range(order - i):
                if other[j]:
                    out[i + j] += self[i] * other[j]
        return Series(out, order, self.variable)

    def __rmul__(self, other: Any) -> Series:
        return self * other

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        order = min(self.order, other.order)
        return all(not (self[n] - other[n]) for n in range(order))

    def __repr__(self) -> str:
        return f"Series({self.coeffs!r}, order={self.order}, variable={self.variable!r})"

    def exp(self) -> Series:
        if self[0]:
            raise ValueError("exp needs a series without constant term")
        out: list[Any] = [0] * self.order
        if self.order:
            out[0] = 1
        for n in range(1, self.order):
            acc = 0
            for k in range(1, n + 1):
                if self[k]:
                    acc += k * self[k] * out[n - k]
            out[n] = acc * QQ(1, n) if acc else 0
        return Series(out, self.order, self.variable)

    def log(self) -> Series:
        if self[0] != 1:
            raise ValueError("log needs a series with constant term 1")
        out: list[Any] = [0] * self.order
        for n in range(1, self.order):
            acc = n * self[n]
            for k in range(1, n):
                if out[k]:
                    acc -= k * out[k] * self[n - k]
            out[n] = acc * QQ(1, n) if acc else 0
        return Series(out, self.order, self.variable)

    def inverse(self) -> Series:
        if not self[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        out: list[Any] = [0] * self.order
        if self.order:
            out[0] = inv(self[0])
        for n in range(1, self.order):
            acc = 0
            for k in range(1, n + 1):
                if self[k]:
                    acc += self[k] * out[n - k]
            out[n] = -acc * out[0]
        return Series(out, self.order, self.variable)

    def to_json(self) -> dict[str, Any]:
        return {
            "variable": self.variable,
            "order": self.order,
            "coeffs": [scalar_to_json(c) for c in self.coeffs],
        }
