"""Extremal sweeps and end-to-end consistency checks.

The sweeps maximize the closed-form |a2| and |a3| of
:func:`bibounds.solver.eliminate` over the relaxed coefficient region
(independent moduli |c1|, |c2|, |b2| <= 2, with b1 linked).  That region is
what the bound derivations actually use, so the |a2| sweep attains its bound
at the aligned corner c2 = b2 = 2 whenever B2 = B1 and D2 = D1; the |a3|
sweep only reports the gap.  Analytic corner candidates are computed first
(the quantities are affine in c2 and b2), then a grid pass confirms them.

``end_to_end`` runs the whole pipeline on a genuine positive-real-part
sample: forward solve, inversion, inverse-side functional through the series
engine, extraction of the implied (b1, b2), and the linkage/residual
identities.  Whether |b1|, |b2| <= 2 actually holds for the sample is
reported informationally, never asserted.

``run_identity_suites`` packages the algebraic identity checks behind the
CLI ``verify`` command; each check reports its first failure witness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .series import (
    DEFAULT_ORDER,
    EXACT,
    FLOAT,
    QComplex,
    TruncatedSeries,
    approx_equal,
)
from .classes import (
    CLASS_KINDS,
    ClassSpec,
    MindaTarget,
    SchlichtCoeffs,
    SchwarzParams,
    expansion_f,
    expansion_g,
    functional,
    invert_schlicht,
    sample_caratheodory,
    subordinate_compose,
    triple,
)
from .solver import (
    PairSpec,
    consistency_residual,
    eliminate,
    elimination_denominator,
    implied_b2,
    linked_b1,
    sigma_tilde,
    solve_forward,
)
from . import bounds as _bounds

ATTAIN_TOL = 1e-9


class DegeneratePairError(ValueError):
    """The pairing's elimination denominator or determinant vanishes."""


class BoundViolationError(RuntimeError):
    """A sweep or random check exceeded its bound beyond tolerance."""


@dataclass(frozen=True)
class SweepConfig:
    """Grid resolution and sampling parameters for the sweeps."""

    radial_steps: int = 9
    phase_steps: int = 16
    seed: int = 0
    sample_count: int = 10_000

    def __post_init__(self):
        if self.radial_steps < 2:
            raise ValueError("need at least 2 radial steps")
        if self.phase_steps < 4:
            raise ValueError("need at least 4 phase steps")
        if self.sample_count < 0:
            raise ValueError("sample count must be nonnegative")


@dataclass(frozen=True)
class SweepResult:
    quantity: str
    max_value: float
    argmax: SchwarzParams
    bound: float
    gap: float
    attained: bool

    def as_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "max_value": self.max_value,
            "bound": self.bound,
            "gap": self.gap,
            "attained": self.attained,
            "argmax": {
                "c1": _complex_pair(self.argmax.c1),
                "c2": _complex_pair(self.argmax.c2),
                "b2": _complex_pair(self.argmax.b2),
            },
        }


def _complex_pair(value):
    z = complex(value)
    return [z.real, z.imag]


def _pair_data(pair: PairSpec):
    tf = pair.triple_f()
    tg = pair.triple_g_inverse()
    return tf, tg, pair.phi.B1, pair.phi.B2, pair.psi.B1, pair.psi.B2


def _phase_ring(cfg: SweepConfig):
    phases = np.linspace(0.0, 2.0 * math.pi, cfg.phase_steps, endpoint=False)
    return np.exp(1j * phases)


def _disk_grid(cfg: SweepConfig):
    moduli = np.linspace(0.0, 2.0, cfg.radial_steps)
    grid = (moduli[:, None] * _phase_ring(cfg)[None, :]).ravel()
    return grid


def _check_gap(quantity, bound, max_value):
    gap = bound - max_value
    if gap < -ATTAIN_TOL:
        raise BoundViolationError(
            f"{quantity} sweep exceeded its bound: max {max_value!r} vs "
            f"bound {bound!r}"
        )
    return gap


def sweep_a2(pair: PairSpec, cfg: SweepConfig = SweepConfig()) -> SweepResult:
    """Maximize |a2| over the relaxed region and report the gap to the bound.

    a2^2 is affine in c2 and b2 and independent of c1, so the aligned corner
    c2 = b2 = 2 is the analytic maximum; the grid pass is a safety net.
    """
    tf, tg, B1, B2, D1, D2 = _pair_data(pair)
    den = elimination_denominator(pair)
    st = sigma_tilde(pair)
    if den == 0 or st == 0:
        raise DegeneratePairError("a2 sweep needs a non-degenerate pairing")
    bound = _bounds.generic_a2_bound(pair)

    corner_sq = abs((tg.q * B1 + tf.q * D1) / den)  # exact corner value
    best = math.sqrt(float(corner_sq))
    best_params = SchwarzParams(0.0, 2.0, 2.0)

    qg_b1 = float(tg.q * B1)
    qf_d1 = float(tf.q * D1)
    den_f = abs(float(den))
    grid = _disk_grid(cfg)
    values = np.sqrt(
        np.abs(qg_b1 * grid[:, None] + qf_d1 * grid[None, :]) / (2.0 * den_f)
    )
    idx = int(np.argmax(values))
    grid_best = float(values.flat[idx])
    if grid_best > best:
        i, j = divmod(idx, grid.size)
        best = grid_best
        best_params = SchwarzParams(0.0, complex(grid[i]), complex(grid[j]))

    gap = _check_gap("a2", bound, best)
    return SweepResult("a2", best, best_params, bound, gap, gap <= ATTAIN_TOL)


def sweep_a3(pair: PairSpec, cfg: SweepConfig = SweepConfig()) -> SweepResult:
    """Maximize |a3| over the relaxed region, c1 phases included.

    For fixed c1 the maximum over c2, b2 sits at modulus 2 with both phases
    aligned to the c1^2 contribution; the best c1 modulus is 2.  Attainment
    of the bound is not asserted (the triangle inequality in the bound need
    not be tight when the two second-coefficient gaps pull apart).
    """
    tf, tg, B1, B2, D1, D2 = _pair_data(pair)
    st = sigma_tilde(pair)
    if st == 0:
        raise DegeneratePairError("a3 sweep needs a nonzero determinant")
    bound = _bounds.generic_a3_bound(pair)

    kappa = tg.p * B1 / (tf.p * D1)
    fixed = tg.r * (B2 - B1) + tf.r * kappa * kappa * (D2 - D1)
    analytic = (abs(fixed) + tg.r * B1 + tf.r * D1) / abs(st)  # exact
    best = float(analytic)
    sign = 1.0 if fixed >= 0 else -1.0
    best_params = SchwarzParams(2.0, 2.0 * sign, 2.0 * sign)

    st_f = abs(float(st))
    rg_b1 = float(tg.r * B1)
    rf_d1 = float(tf.r * D1)
    fixed_f = float(fixed)
    ring = 2.0 * _phase_ring(cfg)
    c1_grid = _disk_grid(cfg)
    f_term = 0.25 * fixed_f * c1_grid**2
    values = (
        np.abs(
            f_term[:, None, None]
            + 0.5 * rg_b1 * ring[None, :, None]
            + 0.5 * rf_d1 * ring[None, None, :]
        )
        / st_f
    )
    idx = int(np.argmax(values))
    grid_best = float(values.flat[idx])
    if grid_best > best:
        i, rest = divmod(idx, ring.size * ring.size)
        j, k = divmod(rest, ring.size)
        best = grid_best
        best_params = SchwarzParams(
            complex(c1_grid[i]), complex(ring[j]), complex(ring[k])
        )

    gap = _check_gap("a3", bound, best)
    return SweepResult("a3", best, best_params, bound, gap, gap <= ATTAIN_TOL)


@dataclass(frozen=True)
class RandomCheckReport:
    samples: int
    a2_bound: float
    a3_bound: float
    max_a2_ratio: float
    max_a3_ratio: float

    def as_dict(self) -> dict:
        return {
            "samples": self.samples,
            "a2_bound": self.a2_bound,
            "a3_bound": self.a3_bound,
            "max_a2_ratio": self.max_a2_ratio,
            "max_a3_ratio": self.max_a3_ratio,
        }


def check_bounds_random(
    pair: PairSpec, seed: int, n: int, corner_bias: float = 0.0
) -> RandomCheckReport:
    """n pseudo-random admissible draws; verify neither bound is exceeded.

    With ``corner_bias`` > 0 each modulus snaps to 2 with that probability,
    pushing the observed ratios toward 1.  Raises
    :class:`BoundViolationError` past bound * (1 + 1e-9).
    """
    den = elimination_denominator(pair)
    st = sigma_tilde(pair)
    if den == 0 or st == 0:
        raise DegeneratePairError("random check needs a non-degenerate pairing")
    if n == 0:
        return RandomCheckReport(
            0,
            _bounds.generic_a2_bound(pair),
            _bounds.generic_a3_bound(pair),
            0.0,
            0.0,
        )
    tf, tg, B1, B2, D1, D2 = _pair_data(pair)
    a2_bound = _bounds.generic_a2_bound(pair)
    a3_bound = _bounds.generic_a3_bound(pair)

    rng = np.random.default_rng(seed)

    def draw():
        radii = 2.0 * np.sqrt(rng.random(n))
        if corner_bias > 0:
            radii = np.where(rng.random(n) < corner_bias, 2.0, radii)
        return radii * np.exp(2j * math.pi * rng.random(n))

    c1, c2, b2 = draw(), draw(), draw()
    kappa = float(tg.p * B1 / (tf.p * D1))
    b1 = -kappa * c1
    a2_vals = np.sqrt(
        np.abs(float(tg.q * B1) * c2 + float(tf.q * D1) * b2)
        / (2.0 * abs(float(den)))
    )
    x = float(B1) * c2 / 2 + float(B2 - B1) * c1**2 / 4
    y = float(D1) * b2 / 2 + float(D2 - D1) * b1**2 / 4
    a3_vals = np.abs(float(tg.r) * x + float(tf.r) * y) / abs(float(st))

    max_a2 = float(a2_vals.max())
    max_a3 = float(a3_vals.max())
    if max_a2 > a2_bound * (1 + ATTAIN_TOL) + ATTAIN_TOL:
        raise BoundViolationError(f"|a2| sample {max_a2} exceeds bound {a2_bound}")
    if max_a3 > a3_bound * (1 + ATTAIN_TOL) + ATTAIN_TOL:
        raise BoundViolationError(f"|a3| sample {max_a3} exceeds bound {a3_bound}")
    return RandomCheckReport(
        n, a2_bound, a3_bound, max_a2 / a2_bound, max_a3 / a3_bound
    )


@dataclass(frozen=True)
class EndToEndReport:
    a2: object
    a3: object
    b1: object
    b2: object
    b1_matches_linkage: bool
    closed_forms_match: bool
    residual: object
    subordination_plausible: bool
    degenerate: bool


def _within_two(value) -> bool:
    if isinstance(value, QComplex):
        return value.abs2() <= 4
    return abs(complex(value)) <= 2 + ATTAIN_TOL


def end_to_end(
    pair: PairSpec,
    seed: int,
    m: int = 3,
    order: int = DEFAULT_ORDER,
    mode: str = EXACT,
    p_series: TruncatedSeries | None = None,
) -> EndToEndReport:
    """Forward solve, invert, and recover the inverse-side Schwarz data.

    The implied b1 must equal the linkage value and the closed forms must
    reproduce the forward coefficients; both are algebraic identities,
    independent of whether the sample really keeps |b1|, |b2| <= 2 (that is
    reported in ``subordination_plausible``).
    """
    if p_series is None:
        p_series = sample_caratheodory(seed, m, order=order, mode=mode)
    c1 = p_series.coeffs[1]
    c2 = p_series.coeffs[2]
    a2, a3 = solve_forward(pair.class_f, pair.phi, p_series)
    g2, g3 = invert_schlicht(a2, a3)
    inverse_side = functional(
        pair.class_g, SchlichtCoeffs([g2, g3]), order=order, mode=mode
    )
    e1 = inverse_side.coeffs[1]
    e2 = inverse_side.coeffs[2]
    D1, D2 = pair.psi.B1, pair.psi.B2
    b1 = 2 * e1 / D1
    b2 = b1 * b1 / 2 + (e2 - D2 * b1 * b1 / 4) * 2 / D1

    b1_link = linked_b1(pair, c1)
    exact = mode == EXACT
    b1_ok = b1 == b1_link if exact else approx_equal(b1, b1_link)

    tf, tg, B1, B2, _, _ = _pair_data(pair)
    den = elimination_denominator(pair)
    st = sigma_tilde(pair)
    degenerate = den == 0 or st == 0
    closed_match = False
    residual = None
    if not degenerate:
        a2_sq = (tg.q * B1 * c2 + tf.q * D1 * b2) / (2 * den)
        x = B1 * c2 / 2 + (B2 - B1) * c1 * c1 / 4
        y = D1 * b2 / 2 + (D2 - D1) * b1 * b1 / 4
        a3_closed = (tg.r * x + tf.r * y) / st
        res_value = tg.r * a2_sq - tg.q * a3_closed - y
        if exact:
            residual = 0.0 if not res_value else math.sqrt(float(res_value.abs2()))
            closed_match = a2_sq == a2 * a2 and a3_closed == a3
        else:
            residual = abs(complex(res_value))
            closed_match = approx_equal(a2_sq, a2 * a2) and approx_equal(
                a3_closed, a3
            )
    plausible = _within_two(b1) and _within_two(b2)
    return EndToEndReport(
        a2=a2,
        a3=a3,
        b1=b1,
        b2=b2,
        b1_matches_linkage=b1_ok,
        closed_forms_match=closed_match,
        residual=residual,
        subordination_plausible=plausible,
        degenerate=degenerate,
    )


# ----------------------------------------------------------------------
# identity suites behind the CLI verify command


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None


def _rand_fraction(rng, span=8, den=6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _rand_scalar(rng, mode):
    if mode == EXACT:
        return QComplex(_rand_fraction(rng), _rand_fraction(rng))
    return complex(rng.uniform(-2, 2), rng.uniform(-2, 2))


def _rand_series(rng, mode, order=6, constant=None):
    coeffs = [_rand_scalar(rng, mode) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = constant if mode == EXACT else complex(constant)
    return TruncatedSeries(coeffs, mode=mode, order=order)


def _unit_series(rng, mode, order=6):
    one = QComplex(1) if mode == EXACT else 1.0
    return _rand_series(rng, mode, order, constant=one)


def _agree_scalar(x, y, mode):
    if mode == EXACT:
        return x == y
    return approx_equal(x, y)


def _rand_spec(rng) -> ClassSpec:
    kind = rng.choice(CLASS_KINDS)
    if kind == "L":
        return ClassSpec(kind, Fraction(rng.randint(0, 8), 8))
    return ClassSpec(kind, Fraction(rng.randint(0, 16), 8))


def _rand_target(rng) -> MindaTarget:
    b1 = Fraction(rng.randint(1, 12), 4)
    b2 = Fraction(rng.randint(-12, 12), 4)
    return MindaTarget([b1, b2])


def _rand_pair(rng, tag=None) -> PairSpec:
    if tag is None:
        tag = rng.choice(_bounds.THEOREM_TAGS)
    kf, kg = tag[0], tag[1]
    alpha = Fraction(rng.randint(0, 8), 8)
    beta = Fraction(rng.randint(0, 8), 8)
    return PairSpec(
        ClassSpec(kf, alpha),
        _rand_target(rng),
        ClassSpec(kg, beta),
        _rand_target(rng),
    )


def _check_series_ring(rng, mode, samples):
    for _ in range(samples):
        a = _rand_series(rng, mode)
        b = _rand_series(rng, mode)
        if not (a * b).agrees_with(b * a):
            return f"commutativity failed for {a!r}, {b!r}"
        c = _rand_series(rng, mode)
        if not ((a * b) * c).agrees_with(a * (b * c)):
            return f"associativity failed for {a!r}, {b!r}, {c!r}"
        nz = _unit_series(rng, mode)
        if not ((a / nz) * nz).agrees_with(a):
            return f"div/mul round trip failed for {a!r}, {nz!r}"
    return None


def _check_product_rule(rng, mode, samples):
    for _ in range(samples):
        a = _rand_series(rng, mode)
        b = _rand_series(rng, mode)
        lhs = (a * b).derivative()
        rhs = a.derivative() * b + a * b.derivative()
        if not lhs.agrees_with(rhs):
            return f"product rule failed for {a!r}, {b!r}"
    return None


def _check_pow_additivity(rng, mode, samples):
    for _ in range(samples):
        a = _unit_series(rng, mode)
        if mode == EXACT:
            s = _rand_fraction(rng, span=4, den=4)
            t = _rand_fraction(rng, span=4, den=4)
        else:
            s = rng.uniform(-1.5, 1.5)
            t = rng.uniform(-1.5, 1.5)
        lhs = a.pow_unit(s) * a.pow_unit(t)
        rhs = a.pow_unit(s + t)
        ok = (
            lhs.agrees_with(rhs)
            if mode == EXACT
            else lhs.agrees_with(rhs, rel_tol=1e-9, abs_tol=1e-9)
        )
        if not ok:
            return f"power additivity failed for {a!r}, s={s}, t={t}"
    return None


def _check_reversion(rng, mode, samples):
    for _ in range(samples):
        order = 8
        coeffs = [0, 1] + [_rand_scalar(rng, mode) for _ in range(order - 1)]
        f = TruncatedSeries(coeffs, mode=mode, order=order)
        g = f.revert()
        ident = TruncatedSeries.var(order=order, mode=mode)
        roundtrip = g.compose(f)
        ok = (
            roundtrip.agrees_with(ident)
            if mode == EXACT
            else roundtrip.agrees_with(ident, rel_tol=1e-8, abs_tol=1e-8)
        )
        if not ok:
            return f"reversion round trip failed for {f!r}"
        a2, a3 = f.coeffs[2], f.coeffs[3]
        if not (
            _agree_scalar(g.coeffs[2], -a2, mode)
            and _agree_scalar(g.coeffs[3], 2 * a2 * a2 - a3, mode)
        ):
            return f"cubic inverse prefix failed for {f!r}"
    return None


def _check_class_expansions(rng, mode, samples):
    for _ in range(samples):
        spec = _rand_spec(rng)
        a2 = _rand_scalar(rng, mode)
        a3 = _rand_scalar(rng, mode)
        series = functional(spec, SchlichtCoeffs([a2, a3]), mode=mode)
        e1, e2 = expansion_f(triple(spec), a2, a3)
        if not (
            _agree_scalar(series.coeffs[1], e1, mode)
            and _agree_scalar(series.coeffs[2], e2, mode)
        ):
            return f"forward expansion failed for {spec!r}, a2={a2!r}, a3={a3!r}"
    return None


def _check_inverse_expansions(rng, mode, samples):
    for _ in range(samples):
        spec = _rand_spec(rng)
        a2 = _rand_scalar(rng, mode)
        a3 = _rand_scalar(rng, mode)
        g2, g3 = invert_schlicht(a2, a3)
        series = functional(spec, SchlichtCoeffs([g2, g3]), mode=mode)
        e1, e2 = expansion_g(triple(spec), a2, a3)
        if not (
            _agree_scalar(series.coeffs[1], e1, mode)
            and _agree_scalar(series.coeffs[2], e2, mode)
        ):
            return f"inverse expansion failed for {spec!r}, a2={a2!r}, a3={a3!r}"
    return None


def _check_subordination_form(rng, mode, samples):
    for _ in range(samples):
        target = _rand_target(rng)
        c1 = _rand_scalar(rng, mode)
        c2 = _rand_scalar(rng, mode)
        one = QComplex(1) if mode == EXACT else 1.0
        p = TruncatedSeries([one, c1, c2], mode=mode, order=6)
        composed = subordinate_compose(target, p)
        B1, B2 = target.B1, target.B2
        want1 = B1 * c1 / 2
        want2 = B1 * (c2 - c1 * c1 / 2) / 2 + B2 * c1 * c1 / 4
        if not (
            _agree_scalar(composed.coeffs[1], want1, mode)
            and _agree_scalar(composed.coeffs[2], want2, mode)
        ):
            return f"subordination form failed for {target!r}, c1={c1!r}, c2={c2!r}"
    return None


def _check_starlike_three_ways(rng, mode, samples):
    for _ in range(max(1, samples // 4)):
        coeffs = [_rand_scalar(rng, mode) for _ in range(5)]
        f = SchlichtCoeffs(coeffs)
        variants = [
            functional(ClassSpec("L", 1), f, mode=mode),
            functional(ClassSpec("M", 0), f, mode=mode),
            functional(ClassSpec("P", 0), f, mode=mode),
        ]
        base = variants[0]
        for other in variants[1:]:
            ok = (
                base.agrees_with(other)
                if mode == EXACT
                else base.agrees_with(other, rel_tol=1e-9, abs_tol=1e-9)
            )
            if not ok:
                return f"starlike functionals disagree for {f!r}"
    return None


_PRINTED_B1_LINKS = {
    "PP": lambda a, b: ((1 + 2 * b), (1 + 2 * a)),
    "PM": lambda a, b: ((1 + b), (1 + 2 * a)),
    "PL": lambda a, b: ((2 - b), (1 + 2 * a)),
    "MM": lambda a, b: ((1 + b), (1 + a)),
    "ML": lambda a, b: ((2 - b), (1 + a)),
    "LL": lambda a, b: ((2 - b), (2 - a)),
}


def _check_linkage(rng, mode, samples):
    for _ in range(samples):
        tag = rng.choice(_bounds.THEOREM_TAGS)
        pair = _rand_pair(rng, tag)
        c1 = _rand_scalar(rng, mode)
        got = linked_b1(pair, c1)
        top, bottom = _PRINTED_B1_LINKS[tag](pair.class_f.param, pair.class_g.param)
        want = -(pair.phi.B1 * top) / (pair.psi.B1 * bottom) * c1
        if not _agree_scalar(got, want, mode):
            return f"b1 linkage failed for {tag} {pair!r}"
    return None


def _check_consistency_chain(rng, mode, samples):
    made = 0
    while made < samples:
        pair = _rand_pair(rng)
        den = elimination_denominator(pair)
        st = sigma_tilde(pair)
        if den == 0 or st == 0:
            continue
        # Draws stay well inside the admissible region so that the implied
        # b2 usually lands inside it too.
        scale = Fraction(1, 16)
        if mode == EXACT:
            c1 = QComplex(
                _rand_fraction(rng) * scale, _rand_fraction(rng) * scale
            )
            c2 = QComplex(
                _rand_fraction(rng) * scale, _rand_fraction(rng) * scale
            )
        else:
            c1 = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
            c2 = complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5))
        b2 = implied_b2(pair, c1, c2)
        if not _within_two(b2):
            continue
        made += 1
        sp = SchwarzParams(c1, c2, b2)
        result = eliminate(pair, sp)
        tf = pair.triple_f()
        lhs = tf.q * result.a3 - tf.r * result.a2_squared
        if not _agree_scalar(lhs, result.rhs_f, mode):
            return f"forward equation not recovered for {pair!r}, sp={sp!r}"
        residual = consistency_residual(pair, sp, result)
        if mode == EXACT:
            if residual != 0.0:
                return f"nonzero residual {residual!r} for {pair!r}, sp={sp!r}"
        elif residual > 1e-12:
            return f"residual {residual!r} too large for {pair!r}, sp={sp!r}"
        a2, a3 = solve_forward(
            pair.class_f,
            pair.phi,
            TruncatedSeries(
                [QComplex(1) if mode == EXACT else 1.0, c1, c2],
                mode=mode,
                order=4,
            ),
        )
        if not (
            _agree_scalar(result.a2_squared, a2 * a2, mode)
            and _agree_scalar(result.a3, a3, mode)
        ):
            return f"closed forms disagree with forward solve for {pair!r}"
    return None


def _check_sigma_relations(rng, mode, samples):
    grid = [Fraction(k, 4) for k in range(5)]
    for tag in _bounds.THEOREM_TAGS:
        scale = _bounds.SIGMA_SCALE[tag]
        for a in grid:
            for b in grid:
                printed = _bounds.printed_sigma(tag, a, b)
                tilde = sigma_tilde(
                    _bounds.theorem_pair(tag, a, b, MindaTarget([1]), MindaTarget([1]))
                )
                if tag == "LL":
                    expected_gap = 24 * a * b  # derived minus printed
                    if tilde / scale - printed != expected_gap:
                        return f"LL sigma gap wrong at alpha={a}, beta={b}"
                elif printed * scale != tilde:
                    return f"sigma relation failed for {tag} at alpha={a}, beta={b}"
    return None


def _check_printed_vs_generic(rng, mode, samples):
    tags = [t for t in _bounds.THEOREM_TAGS if t != "LL"]
    for _ in range(samples):
        tag = rng.choice(tags)
        pair = _rand_pair(rng, tag)
        a = pair.class_f.param
        b = pair.class_g.param
        B1, B2 = pair.phi.B1, pair.phi.B2
        D1, D2 = pair.psi.B1, pair.psi.B2
        printed_sq = _bounds._printed_a2_sq(tag, a, b, B1, B2, D1, D2)
        generic_sq = _bounds._generic_a2_sq(pair)
        if printed_sq != generic_sq:
            return f"a2 bounds disagree for {tag} {pair!r}"
        printed_a3 = _bounds._printed_a3_value(tag, a, b, B1, B2, D1, D2)
        generic_a3 = _bounds._generic_a3_value(pair)
        if printed_a3 != generic_a3:
            return f"a3 bounds disagree for {tag} {pair!r}"
    return None


_SUITE_CHECKS = {
    "series": (
        ("series_ring_laws", _check_series_ring),
        ("series_product_rule", _check_product_rule),
        ("series_power_additivity", _check_pow_additivity),
        ("series_reversion", _check_reversion),
    ),
    "classes": (
        ("class_forward_expansion", _check_class_expansions),
        ("class_inverse_expansion", _check_inverse_expansions),
        ("subordination_quadratic_form", _check_subordination_form),
        ("starlike_three_ways", _check_starlike_three_ways),
    ),
    "solver": (
        ("b1_linkage_printed_forms", _check_linkage),
        ("consistency_chain", _check_consistency_chain),
    ),
    "bounds": (
        ("sigma_relations", _check_sigma_relations),
        ("printed_vs_generic_bounds", _check_printed_vs_generic),
    ),
}

SUITE_NAMES = ("identities", "all") + tuple(_SUITE_CHECKS)


def run_identity_suites(
    suite: str = "identities",
    mode: str = EXACT,
    seed: int = 7,
    samples: int = 60,
) -> list[CheckResult]:
    """Run the named identity suite; one CheckResult per check, in order."""
    if suite == "identities":
        groups = ("series", "classes", "solver")
    elif suite == "all":
        groups = ("series", "classes", "solver", "bounds")
    elif suite in _SUITE_CHECKS:
        groups = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    if mode not in (EXACT, FLOAT):
        raise ValueError(f"unknown mode {mode!r}")
    results = []
    for group in groups:
        for name, fn in _SUITE_CHECKS[group]:
            rng = random.Random(f"{seed}:{name}")
            witness = fn(rng, mode, samples)
            results.append(CheckResult(name, witness is None, witness))
    return results
