"""Unified coefficient solver for a paired class constraint.

Setup: f = z + a2 z^2 + a3 z^3 + ... satisfies the classF functional
subordinate to phi, and the inverse of f satisfies the classG functional
subordinate to psi.  Matching orders 1 and 2 of both subordinations gives
four scalar equations; with (p, q, r) the classF triple and (p', q', r')
the classG inverse triple (so r' = 2 q' - r_G already):

    f side:   p a2 = B1 c1 / 2
              q a3 - r a2^2 = X
    g side:  -p' a2 = D1 b1 / 2
              r' a2^2 - q' a3 = Y

where X = B1 c2 / 2 + (B2 - B1) c1^2 / 4 and Y is its mirror with D and b.
This module computes the standard eliminations:

* ``linked_b1``    b1 = -(p' B1)/(p D1) c1  (first equations combined)
* ``sigma_tilde``  q r' - q' r, the a3 elimination determinant
* ``eliminate``    the closed forms
      a2^2 = (q' B1 c2 + q D1 b2) / (2 DEN),
      DEN  = sigma_tilde - q' p^2 (B2-B1)/B1^2 - q p'^2 (D2-D1)/D1^2,
      a3   = (r' X + r Y) / sigma_tilde,
  i.e. with c1^2 eliminated from the a2^2 equation through the f-side linear
  relation, exactly the shape the bound derivations use.

Vanishing DEN or sigma_tilde marks the result degenerate; that is data, not
an error, so parameter sweeps can pass through such points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .series import QComplex, TruncatedSeries
from .classes import (
    ClassSpec,
    ClassTriple,
    MindaTarget,
    SchwarzParams,
    inverse_triple,
    triple,
)


@dataclass(frozen=True)
class PairSpec:
    """Class-plus-target data for the function and for its inverse."""

    class_f: ClassSpec
    phi: MindaTarget
    class_g: ClassSpec
    psi: MindaTarget

    def triple_f(self) -> ClassTriple:
        return triple(self.class_f)

    def triple_g_inverse(self) -> ClassTriple:
        return inverse_triple(triple(self.class_g))

    def swapped(self) -> "PairSpec":
        return PairSpec(self.class_g, self.psi, self.class_f, self.phi)


@dataclass(frozen=True)
class EliminationResult:
    """Closed-form solution data; degenerate entries are None."""

    a2_squared: object
    a3: object
    rhs_f: object
    rhs_g: object
    sigma_tilde: Fraction
    denominator: Fraction
    degenerate: bool


def linked_b1(pair: PairSpec, c1):
    """b1 implied by the two linear coefficient equations."""
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    return -(tg.p * pair.phi.B1) / (tf.p * pair.psi.B1) * c1


def sigma_tilde(pair: PairSpec) -> Fraction:
    """The a3-elimination determinant q r' - q' r; symmetric under swapping."""
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    return tf.q * tg.r - tg.q * tf.r


def elimination_denominator(pair: PairSpec) -> Fraction:
    """DEN: sigma_tilde corrected by the second target coefficients."""
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    B1, B2 = pair.phi.B1, pair.phi.B2
    D1, D2 = pair.psi.B1, pair.psi.B2
    return (
        sigma_tilde(pair)
        - tg.q * tf.p * tf.p * (B2 - B1) / (B1 * B1)
        - tf.q * tg.p * tg.p * (D2 - D1) / (D1 * D1)
    )


def rhs_pair(pair: PairSpec, sp: SchwarzParams):
    """Order-2 right sides (X, Y) of the two subordination expansions.

    X = B1 c2 / 2 + (B2 - B1) c1^2 / 4, and Y mirrors it with the psi
    coefficients and b2, b1 (b1 taken from the linkage).
    """
    B1, B2 = pair.phi.B1, pair.phi.B2
    D1, D2 = pair.psi.B1, pair.psi.B2
    b1 = linked_b1(pair, sp.c1)
    x = B1 * sp.c2 / 2 + (B2 - B1) * sp.c1 * sp.c1 / 4
    y = D1 * sp.b2 / 2 + (D2 - D1) * b1 * b1 / 4
    return x, y


def eliminate(pair: PairSpec, sp: SchwarzParams) -> EliminationResult:
    """Solve the four coefficient equations in closed form.

    The a2^2 value is the c1-free display (numerator affine in c2 and b2);
    the a3 value keeps the drawn c1 through X and Y.  Both specialize to the
    per-pairing displays once the B1^2 D1^2 normalization is cleared.
    """
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    B1 = pair.phi.B1
    D1 = pair.psi.B1
    st = sigma_tilde(pair)
    den = elimination_denominator(pair)
    x, y = rhs_pair(pair, sp)
    degenerate = st == 0 or den == 0
    a2_squared = None
    a3 = None
    if den != 0:
        a2_squared = (tg.q * B1 * sp.c2 + tf.q * D1 * sp.b2) / (2 * den)
    if st != 0:
        a3 = (tg.r * x + tf.r * y) / st
    return EliminationResult(
        a2_squared=a2_squared,
        a3=a3,
        rhs_f=x,
        rhs_g=y,
        sigma_tilde=st,
        denominator=den,
        degenerate=degenerate,
    )


def solve_forward(spec: ClassSpec, target: MindaTarget, p_series: TruncatedSeries):
    """Unique order-3 solution of functional(f) = target((p-1)/(p+1)).

    Returns (a2, a3) for the transform coefficients c1 = p[1], c2 = p[2].
    """
    if p_series.coeffs[0] != p_series._one():
        raise ValueError("forward solve needs a transform with constant term 1")
    t = triple(spec)
    B1, B2 = target.B1, target.B2
    c1 = p_series.coeffs[1]
    c2 = p_series.coeffs[2]
    a2 = B1 * c1 / (2 * t.p)
    x = B1 * c2 / 2 + (B2 - B1) * c1 * c1 / 4
    a3 = (x + t.r * a2 * a2) / t.q
    return a2, a3


def _magnitude(value) -> float:
    if isinstance(value, QComplex):
        if not value:
            return 0.0
        return math.sqrt(float(value.abs2()))
    return abs(complex(value))


def consistency_residual(
    pair: PairSpec, sp: SchwarzParams, result: EliminationResult
) -> float:
    """Magnitude of the inverse-side equation residual r' a2^2 - q' a3 - Y.

    Exactly zero (in exact mode) whenever the Schwarz data is consistent,
    i.e. b2 is the one implied by the forward solution; the closed forms of
    ``eliminate`` then reproduce both order-2 equations.
    """
    if result.degenerate:
        raise ValueError("residual is undefined for a degenerate elimination")
    tg = pair.triple_g_inverse()
    _, y = rhs_pair(pair, sp)
    residual = tg.r * result.a2_squared - tg.q * result.a3 - y
    return _magnitude(residual)


def implied_b2(pair: PairSpec, c1, c2):
    """b2 forced by the inverse-side order-2 equation for consistent data.

    Together with (c1, c2) this yields Schwarz data on which every closed
    form of this module agrees with the forward solution.
    """
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    B1, B2 = pair.phi.B1, pair.phi.B2
    D1, D2 = pair.psi.B1, pair.psi.B2
    a2 = B1 * c1 / (2 * tf.p)
    x = B1 * c2 / 2 + (B2 - B1) * c1 * c1 / 4
    a3 = (x + tf.r * a2 * a2) / tf.q
    b1 = -(tg.p * B1) / (tf.p * D1) * c1
    y = tg.r * a2 * a2 - tg.q * a3
    return (y - (D2 - D1) * b1 * b1 / 4) * 2 / D1
