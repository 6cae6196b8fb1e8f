"""Truncated power-series arithmetic over two coefficient towers.

A :class:`TruncatedSeries` holds the coefficients ``c[0..N]`` of
``sum c_k z**k`` and supports ring operations plus division, composition,
real powers anchored at 1, and compositional reversion.  Two coefficient
modes exist:

``exact``
    Gaussian rationals (:class:`QComplex`: ``Fraction`` real and imaginary
    parts).  Equality is decidable; every algebraic-identity suite in this
    package runs here.
``float``
    Native ``complex`` (double precision), used by the numeric sweeps.

Modes never mix: combining an exact series with a float series, or feeding
a float coefficient into the exact tower, raises :class:`ModeMismatchError`.
Binary operations truncate to the shorter operand.

Besides the storage order, every series carries ``valid_order``: the highest
index whose coefficient is informationally trustworthy.  Differentiation
lowers it by one (the top coefficient of the derivative would require an
input coefficient beyond the truncation); all other operations propagate the
minimum over their operands.  Consumers that need order-k output must check
``valid_order >= k``.

Floating comparisons use relative tolerance 1e-12 with an absolute floor of
1e-14 for near-zero values (see :func:`approx_equal`).
"""

from __future__ import annotations

import cmath
from fractions import Fraction

EXACT = "exact"
FLOAT = "float"
DEFAULT_ORDER = 8
REL_TOL = 1e-12
ABS_TOL = 1e-14


class ModeMismatchError(TypeError):
    """Exact and floating coefficients met in a single expression."""


def _fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise ModeMismatchError(
        f"exact scalars take int or Fraction parts, not {type(value).__name__}"
    )


class QComplex:
    """Gaussian rational: a complex number with Fraction real/imaginary parts.

    Arithmetic is closed over QComplex, int and Fraction operands; float or
    complex operands raise :class:`ModeMismatchError`.  Instances are treated
    as immutable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _fraction(re)
        self.im = _fraction(im)

    @staticmethod
    def _coerce(value):
        if isinstance(value, QComplex):
            return value
        if isinstance(value, (int, Fraction)):
            return QComplex(value)
        if isinstance(value, (float, complex)):
            raise ModeMismatchError(
                "cannot mix floating values into exact arithmetic"
            )
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return QComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = other.abs2()
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return QComplex(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ModeMismatchError:
            return NotImplemented
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __abs__(self):
        # Approximate; exact comparisons should use abs2().
        return float(self.abs2()) ** 0.5

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return QComplex(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"QComplex({self.re}, {self.im})"


def exact_scalar(value) -> QComplex:
    """Lift a value into the exact tower; float/complex inputs are rejected."""
    coerced = QComplex._coerce(value)
    if coerced is None:
        raise ModeMismatchError(
            f"cannot build an exact scalar from {type(value).__name__}"
        )
    return coerced


def float_scalar(value) -> complex:
    """Lift a value into the floating tower (exact values are downgraded)."""
    if isinstance(value, QComplex):
        return complex(value)
    if isinstance(value, (int, float, complex, Fraction)):
        return complex(value)
    raise TypeError(f"cannot build a float scalar from {type(value).__name__}")


def coerce_scalar(value, mode):
    if mode == EXACT:
        return exact_scalar(value)
    if mode == FLOAT:
        return float_scalar(value)
    raise ValueError(f"unknown mode {mode!r}")


def approx_equal(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL) -> bool:
    """Floating comparison: relative 1e-12 with absolute floor 1e-14."""
    return cmath.isclose(complex(a), complex(b), rel_tol=rel_tol, abs_tol=abs_tol)


class TruncatedSeries:
    """Finite coefficient list of an analytic germ, with order bookkeeping.

    ``coeffs`` always has length ``order + 1``.  ``valid_order`` tracks the
    informational order (see module docstring); it defaults to the storage
    order and never exceeds it.
    """

    __slots__ = ("coeffs", "mode", "valid_order")

    def __init__(self, coeffs, mode=EXACT, order=None, valid_order=None):
        items = [coerce_scalar(c, mode) for c in coeffs]
        if order is None:
            if not items:
                raise ValueError("a series needs at least its constant term")
            order = len(items) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        zero = coerce_scalar(0, mode)
        items = items[: order + 1]
        items += [zero] * (order + 1 - len(items))
        if valid_order is None:
            valid_order = order
        self.coeffs = tuple(items)
        self.mode = mode
        self.valid_order = max(0, min(valid_order, order))

    # ------------------------------------------------------------------
    # constructors

    @classmethod
    def constant(cls, value, order=DEFAULT_ORDER, mode=EXACT):
        return cls([value], mode=mode, order=order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER, mode=EXACT):
        return cls.constant(0, order=order, mode=mode)

    @classmethod
    def one(cls, order=DEFAULT_ORDER, mode=EXACT):
        return cls.constant(1, order=order, mode=mode)

    @classmethod
    def var(cls, order=DEFAULT_ORDER, mode=EXACT):
        """The series z."""
        return cls([0, 1], mode=mode, order=order)

    # ------------------------------------------------------------------
    # bookkeeping helpers

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, index):
        return self.coeffs[index]

    def __iter__(self):
        return iter(self.coeffs)

    def constant_term(self):
        return self.coeffs[0]

    def truncated(self, order):
        if order >= self.order:
            return self
        return TruncatedSeries(
            self.coeffs[: order + 1],
            mode=self.mode,
            order=order,
            valid_order=min(self.valid_order, order),
        )

    def _require_same_mode(self, other):
        if self.mode != other.mode:
            raise ModeMismatchError(
                f"cannot combine {self.mode} and {other.mode} series"
            )

    def _zero(self):
        return coerce_scalar(0, self.mode)

    def _one(self):
        return coerce_scalar(1, self.mode)

    def _scalar(self, value):
        return coerce_scalar(value, self.mode)

    # ------------------------------------------------------------------
    # ring operations

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_mode(other)
            order = min(self.order, other.order)
            valid = min(self.valid_order, other.valid_order)
            coeffs = [
                self.coeffs[k] + other.coeffs[k] for k in range(order + 1)
            ]
            return TruncatedSeries(
                coeffs, mode=self.mode, order=order, valid_order=valid
            )
        value = self._scalar(other)
        coeffs = list(self.coeffs)
        coeffs[0] = coeffs[0] + value
        return TruncatedSeries(
            coeffs, mode=self.mode, order=self.order, valid_order=self.valid_order
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(
            [-c for c in self.coeffs],
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order,
        )

    def __sub__(self, other):
        if isinstance(other, TruncatedSeries):
            return self + (-other)
        return self + (-self._scalar(other))

    def __rsub__(self, other):
        return (-self) + self._scalar(other)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._require_same_mode(other)
            order = min(self.order, other.order)
            valid = min(self.valid_order, other.valid_order)
            zero = self._zero()
            coeffs = []
            for n in range(order + 1):
                acc = zero
                for i in range(n + 1):
                    acc = acc + self.coeffs[i] * other.coeffs[n - i]
                coeffs.append(acc)
            return TruncatedSeries(
                coeffs, mode=self.mode, order=order, valid_order=valid
            )
        value = self._scalar(other)
        return TruncatedSeries(
            [c * value for c in self.coeffs],
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            value = self._scalar(other)
            return TruncatedSeries(
                [c / value for c in self.coeffs],
                mode=self.mode,
                order=self.order,
                valid_order=self.valid_order,
            )
        self._require_same_mode(other)
        lead = other.coeffs[0]
        if not lead:
            raise ZeroDivisionError(
                "series division needs a nonzero constant term in the divisor"
            )
        order = min(self.order, other.order)
        valid = min(self.valid_order, other.valid_order)
        quotient = []
        for n in range(order + 1):
            acc = self.coeffs[n]
            for i in range(n):
                acc = acc - quotient[i] * other.coeffs[n - i]
            quotient.append(acc / lead)
        return TruncatedSeries(
            quotient, mode=self.mode, order=order, valid_order=valid
        )

    def __rtruediv__(self, other):
        return TruncatedSeries.constant(
            other, order=self.order, mode=self.mode
        ) / self

    # ------------------------------------------------------------------
    # calculus and composition

    def derivative(self):
        """Termwise derivative, re-padded to the same storage order.

        The result is informationally one order shorter; ``valid_order``
        records that.
        """
        coeffs = [
            (k + 1) * self.coeffs[k + 1] for k in range(self.order)
        ]
        coeffs.append(self._zero())
        return TruncatedSeries(
            coeffs,
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order - 1,
        )

    def shift_up(self):
        """Multiply by z (the top stored coefficient is dropped)."""
        coeffs = [self._zero(), *self.coeffs[:-1]]
        return TruncatedSeries(
            coeffs,
            mode=self.mode,
            order=self.order,
            valid_order=min(self.valid_order + 1, self.order),
        )

    def shift_down(self):
        """Divide by z; requires a vanishing constant term."""
        if self.coeffs[0]:
            raise ValueError("cannot divide by z: constant term is nonzero")
        coeffs = [*self.coeffs[1:], self._zero()]
        return TruncatedSeries(
            coeffs,
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order - 1,
        )

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(z)) truncated; inner must have zero constant term."""
        self._require_same_mode(inner)
        if inner.coeffs[0]:
            raise ValueError(
                "composition needs a vanishing constant term in the inner series"
            )
        order = min(self.order, inner.order)
        valid = min(self.valid_order, inner.valid_order, order)
        result = TruncatedSeries.constant(
            self.coeffs[order], order=order, mode=self.mode
        )
        for k in range(order - 1, -1, -1):
            result = result * inner.truncated(order) + self.coeffs[k]
        return TruncatedSeries(
            result.coeffs, mode=self.mode, order=order, valid_order=valid
        )

    def _log(self):
        # log(self) for constant term exactly 1; no informational loss:
        # coefficient k of the log needs input coefficients up to k only.
        ratio = self.derivative() / self
        coeffs = [self._zero()]
        for k in range(1, self.order + 1):
            coeffs.append(ratio.coeffs[k - 1] / k)
        return TruncatedSeries(
            coeffs,
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order,
        )

    def _exp(self):
        # exp(self) for vanishing constant term, by the standard recurrence
        # n*e_n = sum_{k=1..n} k*s_k*e_{n-k}.
        coeffs = [self._one()]
        for n in range(1, self.order + 1):
            acc = self._zero()
            for k in range(1, n + 1):
                acc = acc + k * self.coeffs[k] * coeffs[n - k]
            coeffs.append(acc / n)
        return TruncatedSeries(
            coeffs,
            mode=self.mode,
            order=self.order,
            valid_order=self.valid_order,
        )

    def pow_unit(self, exponent) -> "TruncatedSeries":
        """Real power of a series anchored at constant term 1.

        Computed as exp(t*log(self)) so irrational exponents are fine in
        float mode; exact mode takes int or Fraction exponents.
        """
        if self.coeffs[0] != self._one():
            raise ValueError("pow_unit needs constant term exactly 1")
        if self.mode == EXACT:
            if not isinstance(exponent, (int, Fraction)):
                raise ModeMismatchError(
                    "exact-mode exponents must be int or Fraction"
                )
        else:
            exponent = float(exponent)
        if exponent == 0:
            return TruncatedSeries.one(order=self.order, mode=self.mode)
        if exponent == 1:
            return self
        return (self._log() * exponent)._exp()

    def revert(self) -> "TruncatedSeries":
        """Compositional inverse g with g(self(z)) = z to the stored order.

        Requires zero constant term and nonzero linear term.  Solved
        triangularly: the coefficient of z^n in sum g_k self^k must vanish
        for n >= 2.
        """
        if self.coeffs[0]:
            raise ValueError("reversion needs a vanishing constant term")
        lead = self.coeffs[1]
        if not lead:
            raise ValueError("reversion needs a nonzero linear term")
        order = self.order
        g = [self._zero(), self._one() / lead]
        power = self  # self**k, updated incrementally
        powers = [None, self]
        for k in range(2, order + 1):
            power = power * self
            powers.append(power)
        lead_pow = lead
        for n in range(2, order + 1):
            lead_pow = lead_pow * lead
            acc = self._zero()
            for k in range(1, n):
                acc = acc + g[k] * powers[k].coeffs[n]
            g.append(-acc / lead_pow)
        return TruncatedSeries(
            g, mode=self.mode, order=order, valid_order=self.valid_order
        )

    # ------------------------------------------------------------------
    # comparisons

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.mode == other.mode
            and self.coeffs == other.coeffs
            and self.valid_order == other.valid_order
        )

    def __hash__(self):
        return hash((self.mode, self.coeffs, self.valid_order))

    def agrees_with(self, other, rel_tol=REL_TOL, abs_tol=ABS_TOL) -> bool:
        """Coefficientwise agreement up to the common informational order.

        Exact mode compares exactly; float mode uses approx_equal.
        """
        self._require_same_mode(other)
        through = min(self.valid_order, other.valid_order)
        for k in range(through + 1):
            if self.mode == EXACT:
                if self.coeffs[k] != other.coeffs[k]:
                    return False
            elif not approx_equal(self.coeffs[k], other.coeffs[k], rel_tol, abs_tol):
                return False
        return True

    def __repr__(self):
        preview = ", ".join(str(c) for c in self.coeffs[:4])
        if self.order >= 4:
            preview += ", ..."
        return (
            f"TruncatedSeries([{preview}], mode={self.mode!r}, "
            f"order={self.order}, valid_order={self.valid_order})"
        )
