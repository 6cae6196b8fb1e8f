import math
import random
from fractions import Fraction

import pytest
import sympy

from bibounds import (
    MindaTarget,
    audit,
    generic_a2_bound,
    generic_a3_bound,
    printed_a2_bound,
    printed_a3_bound,
    printed_sigma,
    reduction_table,
    report,
    sigma_tilde,
    target_preset,
    theorem_pair,
)
from bibounds.bounds import (
    A3_MULTIPLIER,
    SIGMA_SCALE,
    THEOREM_TAGS,
    TheoremId,
    _generic_a2_sq,
    _generic_a3_value,
    _printed_a2_sq,
    _printed_a3_value,
    pm_display_variant_a2_bound,
)

CARA = target_preset("caratheodory")


def frac_grid(stop, step):
    out = []
    value = Fraction(0)
    while value <= stop:
        out.append(value)
        value += step
    return out


def rand_target(rng):
    return MindaTarget(
        [Fraction(rng.randint(1, 12), 4), Fraction(rng.randint(-12, 12), 4)]
    )


# ----------------------------------------------------------------------
# independent symbolic oracle for the sigma polynomials

_A, _B = sympy.symbols("a b")


def _sym_triple(kind, t):
    if kind == "P":
        return (1 + 2 * t, 2 * (1 + 3 * t), 1 + 2 * t)
    if kind == "M":
        return (1 + t, 2 * (1 + 2 * t), 1 + 3 * t)
    return (2 - t, 2 * (3 - 2 * t), sympy.Rational(1, 2) * (8 - 5 * t - t**2))


def symbolic_sigma_tilde(tag):
    _, qf, rf = _sym_triple(tag[0], _A)
    _, qg, rg = _sym_triple(tag[1], _B)
    return sympy.expand(qf * (2 * qg - rg) - qg * rf)


class TestSigma:
    def test_printed_values(self):
        assert printed_sigma("PP", 0, 0) == 2
        assert printed_sigma("MM", 0, 0) == 2
        assert printed_sigma("LL", 1, 1) == -20

    @pytest.mark.parametrize("tag", ["PP", "PM", "PL", "MM", "ML"])
    def test_scaled_printed_equals_determinant(self, tag):
        for a in frac_grid(Fraction(1), Fraction(1, 8)):
            for b in frac_grid(Fraction(1), Fraction(1, 8)):
                pair = theorem_pair(tag, a, b, CARA, CARA)
                assert printed_sigma(tag, a, b) * SIGMA_SCALE[tag] == sigma_tilde(pair)

    def test_ll_gap_is_24ab(self):
        # independent symbolic expansion: determinant minus printed = 24ab
        diff = sympy.expand(
            symbolic_sigma_tilde("LL")
            - (
                24 + 3 * _A**2 + 3 * _B**2 - 17 * _A - 17 * _B
                - 2 * _B * _A**2 - 2 * _A * _B**2 - 12 * _A * _B
            )
        )
        assert diff == 24 * _A * _B
        for a in frac_grid(Fraction(1), Fraction(1, 4)):
            for b in frac_grid(Fraction(1), Fraction(1, 4)):
                pair = theorem_pair("LL", a, b, CARA, CARA)
                assert sigma_tilde(pair) - printed_sigma("LL", a, b) == 24 * a * b

    @pytest.mark.parametrize("tag", THEOREM_TAGS)
    def test_determinant_matches_symbolic_oracle(self, tag):
        expected = symbolic_sigma_tilde(tag)
        rng = random.Random(5)
        for _ in range(10):
            a = Fraction(rng.randint(0, 8), 8)
            b = Fraction(rng.randint(0, 8), 8)
            pair = theorem_pair(tag, a, b, CARA, CARA)
            want = expected.subs({_A: sympy.Rational(a), _B: sympy.Rational(b)})
            assert sigma_tilde(pair) == Fraction(str(want))


class TestPrintedBounds:
    def test_canonical_a2(self):
        got = printed_a2_bound("PP", 0, 0, 2, 2, 2, 2)
        assert got == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_degenerate_bracket(self):
        assert printed_a2_bound("PP", 0, 0, 1, 2, 1, 2) is None

    def test_strong_target_closed_form(self):
        # PP at alpha=beta=0 with B = D = (2g, 2g^2) evaluates to
        # 2g/sqrt(1+g); fixed by substituting into the stated formula.
        for gamma in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)):
            got = printed_a2_bound(
                "PP", 0, 0, 2 * gamma, 2 * gamma**2, 2 * gamma, 2 * gamma**2
            )
            want = 2 * float(gamma) / math.sqrt(1 + float(gamma))
            assert got == pytest.approx(want, rel=1e-14)

    def test_canonical_a3(self):
        assert printed_a3_bound("PP", 0, 0, 2, 2, 2, 2) == pytest.approx(2.0)
        assert printed_a3_bound("PM", 0, 0, 2, 2, 2, 2) == pytest.approx(2.0)

    def test_difference_terms_vanish(self):
        # B2 = B1 and D2 = D1 kill the modulus-difference terms.
        for tag in THEOREM_TAGS:
            plain = _printed_a3_value(tag, Fraction(1, 4), Fraction(1, 2), 2, 2, 3, 3)
            manual = _printed_a3_value(tag, Fraction(1, 4), Fraction(1, 2), 2, 2, 3, 3)
            assert plain == manual

    def test_a3_degenerate_at_zero_sigma(self):
        # The printed LL sigma has no rational zero inside [0,1]^2, so the
        # degeneracy path is exercised at a rational zero of the polynomial
        # itself (the formula evaluators do not clamp parameters).
        assert printed_sigma("LL", 3, 0) == 0
        assert printed_a3_bound("LL", 3, 0, 2, 2, 2, 2) is None


class TestGenericBounds:
    def test_canonical_values(self):
        pair = theorem_pair("PP", 0, 0, CARA, CARA)
        assert generic_a2_bound(pair) == pytest.approx(math.sqrt(2), abs=1e-15)
        assert generic_a3_bound(pair) == pytest.approx(2.0, abs=1e-15)

    def test_cross_pairing_consistency(self):
        # L at parameter 1 is the starlike functional, so LL at (1,1) must
        # reproduce the PP value at (0,0).
        ll = theorem_pair("LL", 1, 1, CARA, CARA)
        pp = theorem_pair("PP", 0, 0, CARA, CARA)
        assert generic_a2_bound(ll) == generic_a2_bound(pp)

    def test_swap_invariance(self):
        rng = random.Random(3)
        for tag in THEOREM_TAGS:
            for _ in range(10):
                a = Fraction(rng.randint(0, 8), 8)
                b = Fraction(rng.randint(0, 8), 8)
                pair = theorem_pair(tag, a, b, rand_target(rng), rand_target(rng))
                assert _generic_a2_sq(pair) == _generic_a2_sq(pair.swapped())

    def test_pl_a3_example(self):
        pair = theorem_pair("PL", 0, 0, CARA, CARA)
        assert generic_a3_bound(pair) == pytest.approx(1.8, abs=1e-15)
        assert printed_a3_bound("PL", 0, 0, 2, 2, 2, 2) == pytest.approx(1.8)

    def test_positive_when_not_degenerate(self):
        rng = random.Random(9)
        for tag in THEOREM_TAGS:
            for _ in range(20):
                a = Fraction(rng.randint(0, 8), 8)
                b = Fraction(rng.randint(0, 8), 8)
                pair = theorem_pair(tag, a, b, rand_target(rng), rand_target(rng))
                a2 = generic_a2_bound(pair)
                a3 = generic_a3_bound(pair)
                assert a2 is None or a2 > 0
                assert a3 is None or a3 > 0


class TestPrintedVsGeneric:
    @pytest.mark.parametrize("tag", ["PP", "PM", "PL", "MM", "ML"])
    def test_exact_agreement_random_targets(self, tag):
        rng = random.Random(f"targets:{tag}")
        for _ in range(60):
            a = Fraction(rng.randint(0, 20), 20)
            b = Fraction(rng.randint(0, 20), 20)
            phi = rand_target(rng)
            psi = rand_target(rng)
            pair = theorem_pair(tag, a, b, phi, psi)
            assert _printed_a2_sq(
                tag, a, b, phi.B1, phi.B2, psi.B1, psi.B2
            ) == _generic_a2_sq(pair)
            assert _printed_a3_value(
                tag, a, b, phi.B1, phi.B2, psi.B1, psi.B2
            ) == _generic_a3_value(pair)

    def test_monotone_in_strong_parameter(self):
        # calculus oracle: d/dt of 2t/sqrt(1+t) = (2+t)/(1+t)^(3/2) > 0,
        # so the PP bound on the strong-target family must increase.
        previous = 0.0
        for k in range(1, 21):
            t = Fraction(k, 20)
            value = printed_a2_bound("PP", 0, 0, 2 * t, 2 * t**2, 2 * t, 2 * t**2)
            assert value > previous
            previous = value


class TestAudit:
    def test_pp_grid_clean(self):
        grid = frac_grid(Fraction(1), Fraction(1, 4))
        reports = audit("PP", grid, grid, [(CARA, CARA)])
        assert len(reports) == 25
        assert all(not rep.discrepancies for rep in reports)

    def test_ll_sigma_set_is_exactly_nonzero_products(self):
        grid = frac_grid(Fraction(1), Fraction(1, 4))
        reports = audit("LL", grid, grid, [(CARA, CARA)])
        for rep in reports:
            sigma_flags = [d for d in rep.discrepancies if d.field == "sigma"]
            expect = rep.alpha * rep.beta != 0
            assert bool(sigma_flags) == expect
            if rep.alpha == rep.beta == 1.0:
                assert sigma_flags[0].printed == -20.0
                assert sigma_flags[0].derived == 4.0

    def test_ll_a3_flag_tracks_second_coefficient(self):
        grid = frac_grid(Fraction(1), Fraction(1, 2))
        same = audit("LL", grid, grid, [(CARA, CARA)])
        assert all(
            not [d for d in rep.discrepancies if d.field in ("a2", "a3")]
            for rep in same
        )
        skew = audit("LL", grid, grid, [(CARA, MindaTarget([2, 1]))])
        for rep in skew:
            a3_flags = [d for d in rep.discrepancies if d.field == "a3"]
            assert a3_flags, (rep.alpha, rep.beta)
            a2_flags = [d for d in rep.discrepancies if d.field == "a2"]
            assert not a2_flags

    def test_single_point_grid(self):
        reports = audit("MM", [Fraction(0)], [Fraction(0)], [(CARA, CARA)])
        assert len(reports) == 1
        assert not reports[0].discrepancies

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            audit("PP", [], [Fraction(0)], [(CARA, CARA)])

    def test_pm_variant_note(self):
        rep = report("PM", Fraction(1, 2), Fraction(1, 2), CARA, MindaTarget([2, 1]))
        assert rep.notes
        assert not rep.discrepancies
        variant = pm_display_variant_a2_bound(
            Fraction(1, 2), Fraction(1, 2), 2, 2, 2, 1
        )
        assert variant != rep.a2_printed


class TestTheoremId:
    def test_kinds(self):
        ident = TheoremId("pl")
        assert ident.tag == "PL"
        assert ident.kind_f == "P" and ident.kind_g == "L"

    def test_rejects_unknown(self):
        with pytest.raises(ValueError):
            TheoremId("QQ")

    def test_multiplier_table(self):
        assert A3_MULTIPLIER == {"PP": 2, "PM": 2, "PL": 1, "MM": 2, "ML": 1, "LL": 2}


class TestReductionTable:
    def test_reference_values(self):
        table = reduction_table()
        values = [row["value"] for row in table["rows"] if row["source"] == "reference"]
        assert values == [1.5894, 2.0, 1.507, 1.224]

    def test_computed_value(self):
        table = reduction_table()
        computed = [row for row in table["rows"] if row["source"] == "computed"]
        assert len(computed) == 1
        assert computed[0]["value"] == pytest.approx(math.sqrt(2), abs=1e-12)

    def test_notes_flag_the_mismatch(self):
        notes = " ".join(reduction_table()["notes"])
        assert "unspecified" in notes
        assert "does not reproduce" in notes
