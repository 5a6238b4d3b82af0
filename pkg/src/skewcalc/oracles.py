"""Independent brute-force references for the acceptance tests.

These deliberately avoid the closed forms they are checked against:
twisted seminorms are bounded by direct minimization over sampled
decompositions, and quotient seminorms by minimization over a finite
slice of the relator ideal.  Both only ever certify upper bounds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bases import BaseSpec, generic_twisted_upper_bound, i_w_apply
from .scalars import GaussianRational
from .tensor import TwistedSeries, mul, twisted_norm
from .words import Word, all_words, partial_sums


@dataclass(frozen=True)
class SearchBudget:
    max_samples: int = 200
    coeff_grid: tuple = (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2), Fraction(3))
    seed: int = 0


def _slot_decompositions(spec: BaseSpec, f, w: Word):
    """One-term decompositions placing a twisted copy of f in each slot."""
    out = []
    sums = partial_sums(w)
    for slot in range(len(w)):
        factors = [spec.one()] * len(w)
        factors[slot] = spec.aut_apply(f, -sums[slot])
        out.append([tuple(factors)])
    return out


def _random_monomial_decompositions(spec: BaseSpec, f, w: Word, budget: SearchBudget):
    if spec.kind != "entire" or len(f.coeffs) != 1:
        return []
    rng = random.Random(budget.seed)
    (degree, coeff), = f.coeffs.items()
    out = []
    for _ in range(budget.max_samples):
        exponents = [0] * len(w)
        remaining = degree
        for i in range(len(w) - 1):
            exponents[i] = rng.randint(0, remaining)
            remaining -= exponents[i]
        exponents[-1] = remaining
        factors = []
        for i, e in enumerate(exponents):
            c = rng.choice(budget.coeff_grid)
            factors.append(spec.monomial(c, e))
        probe = i_w_apply(spec, w, tuple(factors))
        gamma = probe.coeffs.get(degree, GaussianRational())
        if not gamma:
            continue
        factors[-1] = factors[-1].scale(coeff / gamma)
        out.append([tuple(factors)])
        # occasionally split into a two-term decomposition
        if rng.random() < 0.25:
            t = Fraction(rng.randint(1, 3), 4)
            left = [tuple(x.scale(t) if i == 0 else x for i, x in enumerate(factors))]
            right = [tuple(x.scale(1 - t) if i == 0 else x for i, x in enumerate(factors))]
            out.append(left + right)
    return out


def bruteforce_twisted_norm(spec: BaseSpec, f, w: Word, lam, budget: SearchBudget) -> float:
    """Minimum factorized-seminorm sum over sampled valid decompositions.

    Always includes the trivial decomposition and every slot placement,
    which covers the constructed optimum of the scaling closed form.
    The result is an upper bound on the true infimum.
    """
    if not w:
        return spec.seminorm(f, lam)
    candidates = _slot_decompositions(spec, f, w)
    candidates += _random_monomial_decompositions(spec, f, w, budget)
    best = None
    for decomposition in candidates:
        value, _ = generic_twisted_upper_bound(spec, f, w, lam, decomposition)
        if best is None or value < best:
            best = value
    return best


def slice_quotient_norm(
    f: TwistedSeries, lam, rho: float, cap: int, budget: SearchBudget
) -> float:
    """Minimize ||f + g|| over a finite slice of the relator ideal.

    The slice contains random monomial * relator * monomial combinations
    and the structured family f * ((x1 x2)^l - 1).  An upper bound on
    the true quotient seminorm.
    """
    from .quotient import relators

    spec = f.spec
    caps = dict(max_word_len=max(f.max_word_len, 2 * cap + 4), max_degree=f.max_degree)
    wide = TwistedSeries(spec, f.terms, **caps)
    best, _ = twisted_norm(wide, lam, rho)

    # structured family: replace f by f * (x1 x2)^l
    pad = TwistedSeries(spec, {(1, 2): spec.one()}, **caps)
    padded = wide
    for _ in range(cap):
        padded = mul(padded, pad)
        if padded.truncated:
            break
        value, _ = twisted_norm(padded, lam, rho)
        best = min(best, value)

    rng = random.Random(budget.seed)
    r12, r21 = relators(spec, **caps)

    def random_monomial_series():
        letters = tuple(rng.choice((1, 2)) for _ in range(rng.randint(0, max(1, cap // 2))))
        coeff = spec.monomial(rng.choice(budget.coeff_grid), rng.randint(0, 2))
        return TwistedSeries(spec, {letters: coeff}, **caps)

    for _ in range(budget.max_samples):
        g = TwistedSeries.zero(spec, **caps)
        for _ in range(rng.randint(1, 3)):
            u, v = random_monomial_series(), random_monomial_series()
            rel = r12 if rng.random() < 0.5 else r21
            g = g + mul(mul(u, rel), v).scale(rng.choice(budget.coeff_grid))
        candidate = wide + g
        if candidate.truncated:
            continue
        value, _ = twisted_norm(candidate, lam, rho)
        best = min(best, value)
    return best


@dataclass(frozen=True)
class WordCheckReport:
    passed: bool
    checked: int
    counterexample: tuple | None = None

    def __bool__(self):
        return self.passed


def exhaustive_word_check(prop, max_len: int) -> WordCheckReport:
    """Evaluate a word predicate on every word of length <= max_len."""
    if max_len > 12:
        raise ValueError("enumeration cap is 12")
    checked = 0
    for w in all_words(max_len):
        checked += 1
        if not prop(w):
            return WordCheckReport(False, checked, w)
    return WordCheckReport(True, checked)
