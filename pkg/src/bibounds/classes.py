"""Function classes, targets, and the order-2 expansion machinery.

Three one-parameter families of normalized analytic functions are covered,
identified by a kind letter and parameter:

``P`` (param alpha >= 0)
    functional ``z f'/f + alpha z^2 f''/f``
``M`` (param alpha >= 0)
    functional ``(1-alpha) z f'/f + alpha (1 + z f''/f')``
``L`` (param alpha in [0, 1])
    functional ``(z f'/f)^alpha (1 + z f''/f')^(1-alpha)``

Every kind's functional expands as ``1 + p a2 z + (q a3 - r a2^2) z^2`` for a
triple ``(p, q, r)`` depending only on the kind and parameter; the triple is
the unified currency of the whole package.  On the inverse function the same
triple acts with ``r`` replaced by ``2q - r`` (see :func:`inverse_triple`).

A target is the superordinate function ``1 + B1 z + B2 z^2 + ...`` with real
coefficients and ``B1 > 0``.  Presets: ``caratheodory`` (all 2),
``order:<g>`` (all ``2(1-g)``) and ``strong:<g>`` (the ``g``-th power of the
Caratheodory target, expanded by the series engine).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .series import (
    DEFAULT_ORDER,
    EXACT,
    FLOAT,
    QComplex,
    TruncatedSeries,
    coerce_scalar,
)

KIND_P = "P"
KIND_M = "M"
KIND_L = "L"
CLASS_KINDS = (KIND_P, KIND_M, KIND_L)


def _real_fraction(value, what="value"):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, QComplex) and value.is_real:
        return value.re
    raise TypeError(f"{what} must be real, got {value!r}")


@dataclass(frozen=True)
class MindaTarget:
    """Real coefficients B1.. of a target ``1 + B1 z + B2 z^2 + ...``.

    B1 must be positive; coefficients beyond the stored ones are zero.
    """

    coefficients: tuple

    def __init__(self, coefficients):
        values = tuple(
            _real_fraction(c, "target coefficient") for c in coefficients
        )
        if not values:
            raise ValueError("a target needs at least B1")
        if values[0] <= 0:
            raise ValueError(f"B1 must be positive, got {values[0]}")
        object.__setattr__(self, "coefficients", values)

    @property
    def B1(self) -> Fraction:
        return self.coefficients[0]

    @property
    def B2(self) -> Fraction:
        return self.coefficient(2)

    def coefficient(self, n: int) -> Fraction:
        """B_n (1-based); zero beyond the stored list."""
        if n < 1:
            raise IndexError("target coefficients start at B1")
        if n > len(self.coefficients):
            return Fraction(0)
        return self.coefficients[n - 1]

    def series(self, order=DEFAULT_ORDER, mode=EXACT) -> TruncatedSeries:
        coeffs = [1] + [self.coefficient(n) for n in range(1, order + 1)]
        return TruncatedSeries(coeffs, mode=mode, order=order)


@dataclass(frozen=True)
class ClassSpec:
    """A class kind plus its real parameter."""

    kind: str
    param: Fraction

    def __init__(self, kind, param):
        if kind not in CLASS_KINDS:
            raise ValueError(f"unknown class kind {kind!r}")
        value = _real_fraction(param, "class parameter")
        if kind == KIND_L:
            if not 0 <= value <= 1:
                raise ValueError(
                    f"L-class parameter must lie in [0, 1], got {value}"
                )
        elif value < 0:
            raise ValueError(
                f"{kind}-class parameter must be nonnegative, got {value}"
            )
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "param", value)


@dataclass(frozen=True)
class ClassTriple:
    """Expansion triple (p, q, r): functional = 1 + p a2 z + (q a3 - r a2^2) z^2."""

    p: Fraction
    q: Fraction
    r: Fraction

    def __init__(self, p, q, r):
        object.__setattr__(self, "p", _real_fraction(p, "p"))
        object.__setattr__(self, "q", _real_fraction(q, "q"))
        object.__setattr__(self, "r", _real_fraction(r, "r"))


@dataclass(frozen=True)
class SchlichtCoeffs:
    """Coefficients a2.. of a normalized function z + a2 z^2 + a3 z^3 + ...

    No univalence check is performed or implied.
    """

    values: tuple

    def __init__(self, values):
        object.__setattr__(self, "values", tuple(values))

    @property
    def a2(self):
        return self.values[0] if self.values else 0

    @property
    def a3(self):
        return self.values[1] if len(self.values) > 1 else 0

    def series(self, order=DEFAULT_ORDER, mode=EXACT) -> TruncatedSeries:
        coeffs = [0, 1, *self.values]
        return TruncatedSeries(coeffs[: order + 1], mode=mode, order=order)


def _within_disk(value, radius=2, slack=1e-9) -> bool:
    if isinstance(value, QComplex):
        return value.abs2() <= radius * radius
    if isinstance(value, (int, Fraction)):
        return value * value <= radius * radius
    return abs(complex(value)) <= radius + slack


@dataclass(frozen=True)
class SchwarzParams:
    """Free coefficients (c1, c2, b2) of the two unit-disk transforms.

    Each modulus is at most 2; b1 is never stored, it is derived from c1
    through the class linkage (:func:`bibounds.solver.linked_b1`).
    """

    c1: object
    c2: object
    b2: object

    def __init__(self, c1, c2, b2):
        values = []
        exact = all(
            isinstance(v, (int, Fraction, QComplex)) for v in (c1, c2, b2)
        )
        mode = EXACT if exact else FLOAT
        for name, value in (("c1", c1), ("c2", c2), ("b2", b2)):
            value = coerce_scalar(value, mode)
            if not _within_disk(value):
                raise ValueError(f"|{name}| must be at most 2, got {value!r}")
            values.append(value)
        object.__setattr__(self, "c1", values[0])
        object.__setattr__(self, "c2", values[1])
        object.__setattr__(self, "b2", values[2])

    @property
    def mode(self) -> str:
        return EXACT if isinstance(self.c1, QComplex) else FLOAT


def triple(spec: ClassSpec) -> ClassTriple:
    """The (p, q, r) expansion triple of a class functional."""
    a = spec.param
    if spec.kind == KIND_P:
        return ClassTriple(1 + 2 * a, 2 * (1 + 3 * a), 1 + 2 * a)
    if spec.kind == KIND_M:
        return ClassTriple(1 + a, 2 * (1 + 2 * a), 1 + 3 * a)
    return ClassTriple(
        2 - a, 2 * (3 - 2 * a), Fraction(8 - 5 * a - a * a, 2)
    )


def inverse_triple(t: ClassTriple) -> ClassTriple:
    """Triple acting on the inverse function: r goes to 2q - r.

    The inverse-side expansion is ``1 - p a2 w + ((2q-r) a2^2 - q a3) w^2``;
    the map is an involution.
    """
    return ClassTriple(t.p, t.q, 2 * t.q - t.r)


def invert_schlicht(a2, a3):
    """Order-3 coefficients of the functional inverse: (-a2, 2 a2^2 - a3)."""
    return (-a2, 2 * a2 * a2 - a3)


def expansion_f(t: ClassTriple, a2, a3):
    """Closed-form order-1/2 coefficients of the functional on f."""
    return (t.p * a2, t.q * a3 - t.r * a2 * a2)


def expansion_g(t: ClassTriple, a2, a3):
    """Closed-form order-1/2 coefficients of the functional on the inverse."""
    g2, g3 = invert_schlicht(a2, a3)
    return expansion_f(t, g2, g3)


def functional(
    spec: ClassSpec,
    f: SchlichtCoeffs,
    order=DEFAULT_ORDER,
    mode=EXACT,
) -> TruncatedSeries:
    """The class functional of f, computed entirely by the series engine.

    Returns a series with constant term 1 whose ``valid_order`` is one below
    the storage order (the functionals consume one derivative).
    """
    fs = f.series(order, mode)
    h = fs.shift_down()          # f/z, constant term 1
    fp = fs.derivative()
    alpha = spec.param if mode == EXACT else float(spec.param)
    if spec.kind == KIND_P:
        return (fp + fs.derivative().derivative().shift_up() * alpha) / h
    if spec.kind == KIND_M:
        convex = 1 + fp.derivative().shift_up() / fp
        return (fp / h) * (1 - alpha) + convex * alpha
    starlike = fp / h
    convex = 1 + fp.derivative().shift_up() / fp
    one = 1 if mode == EXACT else 1.0
    return starlike.pow_unit(alpha) * convex.pow_unit(one - alpha)


def subordinate_compose(
    target: MindaTarget, p_series: TruncatedSeries
) -> TruncatedSeries:
    """Compose the target with the disk transform (p-1)/(p+1) of p."""
    if p_series.coeffs[0] != p_series._one():
        raise ValueError("subordination transform needs constant term 1")
    u = (p_series - 1) / (p_series + 1)
    return target.series(p_series.order, p_series.mode).compose(u)


def caratheodory_kernel(x, order=DEFAULT_ORDER, mode=EXACT) -> TruncatedSeries:
    """(1 + x z)/(1 - x z) = 1 + 2 sum_n x^n z^n for a unimodular x."""
    x = coerce_scalar(x, mode)
    coeffs = [coerce_scalar(1, mode)]
    power = coerce_scalar(2, mode)
    for _ in range(order):
        power = power * x
        coeffs.append(power)
    return TruncatedSeries(coeffs, mode=mode, order=order)


def _rational_circle_point(rng) -> QComplex:
    # (1 - t^2 + 2 t i)/(1 + t^2) has exact modulus 1 for rational t.
    t = Fraction(rng.randint(-60, 60), rng.randint(1, 30))
    d = 1 + t * t
    return QComplex((1 - t * t) / d, 2 * t / d)


def sample_caratheodory(
    seed: int, m: int, order=DEFAULT_ORDER, mode=FLOAT
) -> TruncatedSeries:
    """Deterministic convex combination of m rotation kernels.

    Produces ``sum lam_k (1 + x_k z)/(1 - x_k z)`` with nonnegative weights
    summing to one and unimodular x_k, so the result has constant term 1,
    positive real part, and every coefficient modulus at most 2.  Exact mode
    uses rational points on the unit circle so the modulus bound is exact.
    """
    if m < 1:
        raise ValueError("need at least one kernel")
    rng = random.Random(seed)
    if mode == EXACT:
        weights = [Fraction(rng.randint(1, 100)) for _ in range(m)]
        total = sum(weights)
        points = [_rational_circle_point(rng) for _ in range(m)]
        acc = TruncatedSeries.zero(order=order, mode=mode)
        for w, x in zip(weights, points):
            acc = acc + caratheodory_kernel(x, order, mode) * (w / total)
        return acc
    weights = [rng.random() + 1e-9 for _ in range(m)]
    total = sum(weights)
    acc = TruncatedSeries.zero(order=order, mode=mode)
    for w in weights:
        theta = rng.uniform(0.0, 2.0 * math.pi)
        x = complex(math.cos(theta), math.sin(theta))
        acc = acc + caratheodory_kernel(x, order, mode) * (w / total)
    return acc


def target_preset(key: str, order=DEFAULT_ORDER) -> MindaTarget:
    """Resolve a named target: caratheodory | order:<g> | strong:<g>."""
    name, _, arg = key.partition(":")
    name = name.strip().lower()
    if name == "caratheodory":
        if arg:
            raise ValueError("caratheodory takes no parameter")
        return MindaTarget([2] * order)
    if name == "order":
        gamma = Fraction(arg)
        if not 0 <= gamma < 1:
            raise ValueError(f"order parameter must lie in [0, 1), got {gamma}")
        return MindaTarget([2 * (1 - gamma)] * order)
    if name == "strong":
        gamma = Fraction(arg)
        if not 0 < gamma <= 1:
            raise ValueError(f"strong parameter must lie in (0, 1], got {gamma}")
        base = caratheodory_kernel(1, order=order, mode=EXACT)
        powered = base.pow_unit(gamma)
        return MindaTarget([powered.coeffs[n].re for n in range(1, order + 1)])
    raise ValueError(f"unknown target preset {key!r}")
