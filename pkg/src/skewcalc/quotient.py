"""The analytic Laurent algebra as a quotient of the twisted series algebra.

Over the entire base with a scaling automorphism the closed ideal
generated by ``x1*x2 - 1`` and ``x2*x1 - 1`` is the common kernel of the
winding functionals phi(m, n).  This module computes those functionals,
decides ideal membership on truncations, builds the canonical coset
representative whose weighted norm realizes the quotient seminorm, and
runs the collapse-to-zero diagnostics.
"""

from __future__ import annotations

import io
import csv
import enum
from dataclasses import dataclass, field

from .bases import BaseSpec, Exactness, ScaleAut, UnsupportedAutomorphism
from .scalars import GaussianRational
from .tensor import TwistedSeries, twisted_norm
from .words import canonical_word, counts, winding
from .ore import LaurentOrePoly


def _require_entire(f: TwistedSeries):
    if f.spec.kind != "entire":
        raise UnsupportedAutomorphism(
            "winding functionals need z-monomial coefficients (entire base)"
        )


def _require_scale(spec: BaseSpec):
    if spec.kind != "entire" or spec.aut.kind != "scale":
        raise UnsupportedAutomorphism("quotient machinery needs the scaling base")
    if spec.aut.abs_is_one():
        raise UnsupportedAutomorphism("|q| = 1 is excluded")


def phi(f: TwistedSeries, m: int, n: int) -> GaussianRational:
    """Sum of the z^m coefficients of f over all words of winding n."""
    _require_entire(f)
    total = GaussianRational()
    for w, a in f.terms.items():
        if winding(w) == n:
            total = total + a.coeffs.get(m, GaussianRational())
    return total


def phi_support(f: TwistedSeries):
    """All (m, n) pairs that can carry a nonzero functional value."""
    _require_entire(f)
    pairs = set()
    for w, a in f.terms.items():
        for m in a.coeffs:
            pairs.add((m, winding(w)))
    return sorted(pairs)


def phi_table(f: TwistedSeries) -> dict:
    """Nonzero functional values, keyed by (m, n)."""
    out = {}
    for m, n in phi_support(f):
        value = phi(f, m, n)
        if value:
            out[(m, n)] = value
    return out


def collapse_bidegree(f: TwistedSeries) -> dict:
    """Aggregate coefficients over words with equal letter counts.

    Returns a map (m, n1, n2) -> scalar; the aggregated series lives on
    the block words 1^n1 2^n2 and its weighted norm never exceeds f's.
    """
    _require_entire(f)
    out: dict = {}
    for w, a in f.terms.items():
        n1, n2, _ = counts(w)
        for m, c in a.coeffs.items():
            key = (m, n1, n2)
            out[key] = out.get(key, GaussianRational()) + c
    return {k: v for k, v in out.items() if v}


def bidegree_series(f: TwistedSeries) -> TwistedSeries:
    """The aggregated series of collapse_bidegree on canonical block words."""
    terms: dict = {}
    for (m, n1, n2), c in collapse_bidegree(f).items():
        w = canonical_word(n1, n2)
        coeff = f.spec.monomial(c, m)
        terms[w] = terms[w] + coeff if w in terms else coeff
    return TwistedSeries(f.spec, terms, max_word_len=max(f.max_word_len, 1),
                         max_degree=f.max_degree)


def ideal_member(f: TwistedSeries) -> bool:
    """True iff every winding functional vanishes on f (exact)."""
    return not phi_table(f)


def relators(spec: BaseSpec, **caps) -> tuple[TwistedSeries, TwistedSeries]:
    """The two defining relators x1*x2 - 1 and x2*x1 - 1."""
    one = spec.one()
    r12 = TwistedSeries(spec, {(1, 2): one, (): -one}, **caps)
    r21 = TwistedSeries(spec, {(2, 1): one, (): -one}, **caps)
    return r12, r21


# ---------------------------------------------------------------------------
# canonical representatives and quotient norms
# ---------------------------------------------------------------------------


def _winding_word(n: int):
    return (1,) * n if n >= 0 else (2,) * (-n)


@dataclass(frozen=True)
class CanonicalRep:
    series: TwistedSeries
    dropped: frozenset  # (m, n) classes annihilated by the quotient seminorm


def canonical_representative(f: TwistedSeries, rho: float) -> CanonicalRep:
    """The coset representative whose weighted norm is the quotient seminorm.

    Requires the scaling base with |q| > 1.  Classes (m, n) fall into
    three regimes by comparing |q|^m against rho and rho^2: plain winding
    words, winding words padded with a single trailing x2, or dropped
    entirely (the quotient seminorm kills them).
    """
    _require_scale(f.spec)
    if not f.spec.aut.abs_gt_one():
        raise UnsupportedAutomorphism(
            "canonical representatives are built for |q| > 1; use the swap symmetry"
        )
    if rho <= 0:
        raise ValueError("rho must be positive")
    rho = float(rho)
    absq = abs(f.spec.aut.q)
    terms: dict = {}
    dropped = set()
    max_len = f.max_word_len
    for (m, n), c in phi_table(f).items():
        qm = absq**m
        if qm <= rho:
            w = _winding_word(n)
        elif qm <= rho * rho:
            w = (1,) * (n + 1) + (2,) if n > 0 else _winding_word(n)
        else:
            dropped.add((m, n))
            continue
        max_len = max(max_len, len(w))
        coeff = f.spec.monomial(c, m)
        terms[w] = terms[w] + coeff if w in terms else coeff
    series = TwistedSeries(f.spec, terms, max_word_len=max_len, max_degree=f.max_degree)
    return CanonicalRep(series, frozenset(dropped))


def _swap_series(f: TwistedSeries) -> TwistedSeries:
    """Exchange the two generators; the base automorphism inverts."""
    swapped = {tuple(3 - letter for letter in w): a for w, a in f.terms.items()}
    return TwistedSeries(f.spec.inverse(), swapped, max_word_len=f.max_word_len,
                         max_degree=f.max_degree)


def quotient_norm(f: TwistedSeries, lam, rho: float, paper_display: bool = False) -> float:
    """The quotient seminorm of f's coset, via its canonical representative.

    For |q| < 1 the value is obtained by the swap symmetry (exchange the
    generators and invert q).  With ``paper_display=True`` the literal
    published closed-form display is evaluated instead, for comparison;
    the representative-based value is the one the inequalities certify.
    """
    _require_scale(f.spec)
    if not f.spec.aut.abs_gt_one():
        return quotient_norm(_swap_series(f), lam, rho, paper_display)
    if paper_display:
        return _display_norm(f, lam, rho)
    rep = canonical_representative(f, rho)
    value, _ = twisted_norm(rep.series, lam, rho)
    return value


def _display_norm(f: TwistedSeries, lam, rho: float) -> float:
    # literal transcription of the published quotient-norm display,
    # kept only as a comparison flag (its middle exponent disagrees with
    # the representative norm by one power of |q|^m)
    absq = abs(f.spec.aut.q)
    lam = float(lam)
    rho = float(rho)
    total = 0.0
    for (m, n), c in phi_table(f).items():
        qm = absq**m
        if qm <= rho:
            total += abs(c) * lam**m * absq ** (-m * max(n - 1, 0)) * rho**n
        elif qm <= rho * rho:
            if n > 0:
                total += abs(c) * lam**m * absq ** (-m * n) * rho ** (n + 2)
            else:
                total += abs(c) * lam**m * rho**n
    return total


def reduce_to_ore(f: TwistedSeries) -> LaurentOrePoly:
    """Ring homomorphism onto the Laurent skew extension: x^w -> t^{c(w)}."""
    coeffs: dict = {}
    for w, a in f.terms.items():
        n = winding(w)
        coeffs[n] = coeffs[n] + a if n in coeffs else a
    return LaurentOrePoly(f.spec, coeffs)


# ---------------------------------------------------------------------------
# quotient classes (printing / interchange form)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientClass:
    """Coefficients of a class in the quotient: (m, n) -> scalar."""

    q: GaussianRational
    coeffs: dict = field(default_factory=dict)

    @staticmethod
    def from_series(f: TwistedSeries) -> "QuotientClass":
        _require_scale(f.spec)
        return QuotientClass(f.spec.aut.q, phi_table(f))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for m, n in sorted(self.coeffs):
            c = self.coeffs[(m, n)]
            factors = []
            cstr = str(c)
            if ("+" in cstr[1:]) or ("-" in cstr[1:]):
                cstr = f"({cstr})"
            factors.append(cstr)
            if m:
                factors.append("z" if m == 1 else f"z^{m}")
            if n:
                factors.append("x" if n == 1 else f"x^{n}")
            parts.append(" * ".join(factors))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# collapse diagnostics
# ---------------------------------------------------------------------------


class Verdict(enum.Enum):
    COLLAPSE_CERTIFIED = "CollapseCertified"
    RAPID_DECAY_OBSERVED = "RapidDecayObserved"
    NO_DECAY = "NoDecay"


class CannotCertifyError(RuntimeError):
    """Only nonzero upper bounds were available; no verdict is provable."""


_DECAY_TOL = 1e-12


@dataclass(frozen=True)
class VanishingReport:
    verdict: Verdict
    r_invertible: bool
    family: str
    rows: tuple  # (lam, rho, k, value)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["lambda", "rho", "k", "value", "verdict"])
        for lam, rho, k, value in self.rows:
            writer.writerow([float(lam), float(rho), k, repr(value), self.verdict.value])
        return buf.getvalue()


def _family_word(k: int, family: str):
    if family == "ones_first":
        return (1,) * k + (2,) * k
    if family == "twos_first":
        return (2,) * k + (1,) * k
    raise ValueError(f"unknown word family {family!r}")


def vanishing_test(
    spec: BaseSpec, r, lams, rhos, depth: int, family: str = "ones_first"
) -> VanishingReport:
    """Evaluate the collapse criterion sequence over a (lam, rho) grid.

    For each grid point the values ||r||^{(w_k)} * rho^{2k} are computed
    for k = 1..depth.  A certified collapse needs an exactly-zero tail at
    every grid point and an invertible r; otherwise rapid decay below
    1e-12 everywhere is reported as observed, and anything else as no
    decay.  Nonzero upper-bound values cannot support a NoDecay verdict.
    """
    invertible = spec.is_invertible(r)
    rows = []
    zero_tail_everywhere = True
    decay_everywhere = True
    saw_upper_bound = False
    for lam in lams:
        for rho in rhos:
            rho = float(rho)
            values = []
            tags = []
            for k in range(1, depth + 1):
                value, tag = spec.twisted_seminorm(r, _family_word(k, family), lam)
                seq = value * rho ** (2 * k)
                values.append(seq)
                tags.append(tag)
                rows.append((lam, rho, k, seq))
            if any(t is Exactness.UPPER_BOUND and v != 0.0 for t, v in zip(tags, values)):
                saw_upper_bound = True
            zero_from = None
            for k0 in range(len(values)):
                if all(
                    v == 0.0 and t is Exactness.EXACT or v == 0.0
                    for v, t in zip(values[k0:], tags[k0:])
                ):
                    zero_from = k0 + 1
                    break
            if zero_from is None:
                zero_tail_everywhere = False
            if min(values) >= _DECAY_TOL:
                decay_everywhere = False
    if zero_tail_everywhere:
        verdict = Verdict.COLLAPSE_CERTIFIED if invertible else Verdict.RAPID_DECAY_OBSERVED
    elif decay_everywhere:
        verdict = Verdict.RAPID_DECAY_OBSERVED
    else:
        if saw_upper_bound:
            raise CannotCertifyError(
                "nonzero upper-bound seminorm values cannot certify a verdict"
            )
        verdict = Verdict.NO_DECAY
    return VanishingReport(verdict, invertible, family, tuple(rows))
