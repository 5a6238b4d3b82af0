import random
from fractions import Fraction

import pytest

from skewcalc import (
    BaseSpec,
    DiagonalAut,
    EntirePoly,
    FreeSeries,
    GaussianRational,
    IdentityAut,
    IntervalPoly,
    ScaleAut,
    ShiftAut,
    TwistedSeries,
)


def rand_fraction(rng, span=3, allow_zero=True):
    num = rng.randint(-span, span)
    if not allow_zero and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 3))


def rand_gauss(rng, span=3, allow_zero=True, complex_prob=0.3):
    re = rand_fraction(rng, span, allow_zero)
    im = rand_fraction(rng, span) if rng.random() < complex_prob else Fraction(0)
    if not allow_zero and re == 0 and im == 0:
        re = Fraction(1)
    return GaussianRational(re, im)


def rand_entire(rng, max_deg=4, n_terms=3, allow_zero=False):
    coeffs = {}
    for _ in range(rng.randint(1, n_terms)):
        coeffs[rng.randint(0, max_deg)] = rand_gauss(rng)
    poly = EntirePoly(coeffs)
    if poly.is_zero() and not allow_zero:
        poly = EntirePoly({rng.randint(0, max_deg): 1})
    return poly


def rand_interval_poly(rng, max_deg=4, n_terms=3):
    coeffs = {rng.randint(0, max_deg): rand_fraction(rng) for _ in range(rng.randint(1, n_terms))}
    poly = IntervalPoly(coeffs)
    return poly if not poly.is_zero() else IntervalPoly.one()


def rand_free(rng, ngens=2, max_len=3, n_terms=3):
    coeffs = {}
    for _ in range(rng.randint(1, n_terms)):
        word = tuple(rng.randrange(ngens) for _ in range(rng.randint(0, max_len)))
        coeffs[word] = rand_gauss(rng)
    series = FreeSeries(coeffs)
    return series if not series.is_zero() else FreeSeries.one()


def rand_word(rng, max_len=4, min_len=0):
    return tuple(rng.choice((1, 2)) for _ in range(rng.randint(min_len, max_len)))


def rand_series(rng, spec, n_terms=3, max_len=4, max_deg=4, min_len=0, **caps):
    terms = {}
    for _ in range(rng.randint(1, n_terms)):
        w = rand_word(rng, max_len, min_len)
        el = rand_entire(rng, max_deg) if spec.kind == "entire" else None
        if spec.kind == "interval":
            el = rand_interval_poly(rng, max_deg)
        elif spec.kind == "free":
            el = rand_free(rng, spec.ngens, max_deg)
        terms[w] = terms[w] + el if w in terms else el
    return TwistedSeries(spec, terms, **caps)


def q_of(value) -> GaussianRational:
    return GaussianRational.of(Fraction(value))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    # expose the call-phase outcome so teardown fixtures can report it
    outcome = yield
    report = outcome.get_result()
    setattr(item, "outcome_" + report.when, report)


@pytest.fixture
def rng():
    return random.Random(20260825)


@pytest.fixture
def scale2_spec():
    return BaseSpec("entire", ScaleAut(q_of(2)))


@pytest.fixture
def scale_half_spec():
    return BaseSpec("entire", ScaleAut(q_of("1/2")))


@pytest.fixture
def shift_entire_spec():
    return BaseSpec("entire", ShiftAut())


@pytest.fixture
def interval_shift_spec():
    return BaseSpec("interval", ShiftAut())


@pytest.fixture
def free_diag_spec():
    return BaseSpec("free", DiagonalAut((q_of(2), q_of("1/2"))), ngens=2)


@pytest.fixture
def identity_entire_spec():
    return BaseSpec("entire", IdentityAut())
