import random
from fractions import Fraction

import pytest

from bibounds import QComplex, TruncatedSeries


def rand_fraction(rng, span=6, den=6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_qc(rng, span=6, den=6) -> QComplex:
    return QComplex(rand_fraction(rng, span, den), rand_fraction(rng, span, den))


def rand_exact_series(rng, order=8, constant=None) -> TruncatedSeries:
    coeffs = [rand_qc(rng, span=4, den=4) for _ in range(order + 1)]
    if constant is not None:
        coeffs[0] = QComplex(constant)
    return TruncatedSeries(coeffs, order=order)


@pytest.fixture
def rng():
    return random.Random(20240817)
