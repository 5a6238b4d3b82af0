"""Skew (Laurent) polynomial arithmetic and its weighted norms.

Elements are finitely supported maps exponent -> base element over a
fixed :class:`~skewcalc.bases.BaseSpec`.  Multiplication rewrites
``t a -> alpha(a) t + delta(a)`` (and ``t^-1 a -> alpha^-1(a) t^-1``
when there is no derivation).  A derivation is only accepted on
nonnegative supports.
"""

from __future__ import annotations

import io
import csv
from dataclasses import dataclass, field

from .bases import BaseSpec, MismatchedBaseError


class DerivationSupportError(ValueError):
    """A derivation was combined with negative exponents."""


@dataclass(frozen=True)
class LaurentOrePoly:
    spec: BaseSpec
    coeffs: dict = field(default_factory=dict)
    delta: object = None  # optional derivation, e.g. PolyDerivation

    def __post_init__(self):
        cleaned = {int(i): a for i, a in self.coeffs.items() if not a.is_zero()}
        object.__setattr__(self, "coeffs", cleaned)
        if self.delta is not None and any(i < 0 for i in cleaned):
            raise DerivationSupportError(
                "a nonzero derivation requires nonnegative exponents"
            )

    @staticmethod
    def zero(spec: BaseSpec, delta=None) -> "LaurentOrePoly":
        return LaurentOrePoly(spec, {}, delta)

    @staticmethod
    def one(spec: BaseSpec, delta=None) -> "LaurentOrePoly":
        return LaurentOrePoly(spec, {0: spec.one()}, delta)

    @staticmethod
    def term(spec: BaseSpec, a, i: int = 0, delta=None) -> "LaurentOrePoly":
        return LaurentOrePoly(spec, {i: a}, delta)

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for i, a in other.coeffs.items():
            out[i] = out[i] + a if i in out else a
        return LaurentOrePoly(self.spec, out, self.delta)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LaurentOrePoly(self.spec, {i: -a for i, a in self.coeffs.items()}, self.delta)

    def __mul__(self, other):
        return ore_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentOrePoly)
            and self.spec == other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.coeffs.items())))

    def _check(self, other):
        if not isinstance(other, LaurentOrePoly) or other.spec != self.spec:
            raise MismatchedBaseError("operands live over different base specs")
        if (self.delta is None) != (other.delta is None):
            raise MismatchedBaseError("operands disagree on the derivation")


def _t_power_times(spec: BaseSpec, delta, b, i: int) -> dict:
    """Expand t^i * b as a map exponent -> base element."""
    if delta is None:
        return {i: spec.aut_apply(b, i)}
    if i < 0:
        raise DerivationSupportError("negative exponent with a nonzero derivation")
    out = {0: b}
    for _ in range(i):
        nxt: dict = {}
        for j, a in out.items():
            moved = spec.aut_apply(a, 1)
            nxt[j + 1] = nxt[j + 1] + moved if j + 1 in nxt else moved
            d = delta.apply(a)
            if not d.is_zero():
                nxt[j] = nxt[j] + d if j in nxt else d
        out = nxt
    return out


def ore_mul(f: LaurentOrePoly, g: LaurentOrePoly) -> LaurentOrePoly:
    """Exact product under the skew rewriting rule."""
    f._check(g)
    spec = f.spec
    out: dict = {}
    for i, a in f.coeffs.items():
        for j, b in g.coeffs.items():
            for k, moved in _t_power_times(spec, f.delta, b, i).items():
                term = a * moved
                key = k + j
                out[key] = out[key] + term if key in out else term
    return LaurentOrePoly(spec, out, f.delta)


@dataclass(frozen=True)
class DerivationReport:
    passed: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def alpha_derivation_check(spec: BaseSpec, delta, samples) -> DerivationReport:
    """Verify delta(ab) = alpha(a) delta(b) + delta(a) b on sample pairs."""
    for a, b in samples:
        lhs = delta.apply(a * b)
        rhs = spec.aut_apply(a, 1) * delta.apply(b) + delta.apply(a) * b
        if lhs != rhs:
            return DerivationReport(False, (a, b))
    return DerivationReport(True)


def laurent_series_norm(f: LaurentOrePoly, lam, rho: float) -> float:
    """sum ||a_i||_lam rho^i over the support."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    rho = float(rho)
    return sum(f.spec.seminorm(a, lam) * rho**i for i, a in f.coeffs.items())


# ---------------------------------------------------------------------------
# localizability probe
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectionReport:
    verdict: str  # "bounded" | "growing" | "inconclusive"
    sup_ratio: float
    constant: float | None = None  # set for "bounded"


@dataclass(frozen=True)
class ProbeReport:
    lam: object
    forward: DirectionReport
    backward: DirectionReport

    @property
    def family_bounded(self) -> bool:
        return self.forward.verdict == "bounded" and self.backward.verdict == "bounded"


def _basis_elements(spec: BaseSpec, cap: int):
    if spec.kind == "free":
        from itertools import product

        for length in range(cap + 1):
            for v in product(range(spec.ngens), repeat=length):
                yield spec.monomial(1, v)
    else:
        for m in range(cap + 1):
            yield spec.monomial(1, m)


def _direction_report(spec: BaseSpec, lam, cap: int, direction: int) -> DirectionReport:
    ratios = []
    for e in _basis_elements(spec, cap):
        denom = spec.seminorm(e, lam)
        if denom == 0:
            continue
        ratios.append(spec.seminorm(spec.aut_apply(e, direction), lam) / denom)
    sup_ratio = max(ratios)
    aut = spec.aut
    # closed-form bounds only where the instance provides them
    if aut.kind == "identity":
        return DirectionReport("bounded", sup_ratio, 1.0)
    if aut.kind == "scale":
        shrinking = aut.q.abs2() < 1 if direction > 0 else aut.q.abs2() > 1
        if shrinking or aut.q.abs2() == 1:
            return DirectionReport("bounded", sup_ratio, max(1.0, sup_ratio))
    if aut.kind == "diagonal":
        if direction > 0 and all(q.abs2() <= 1 for q in aut.qs):
            return DirectionReport("bounded", sup_ratio, 1.0)
        if direction < 0 and all(q.abs2() >= 1 for q in aut.qs):
            return DirectionReport("bounded", sup_ratio, 1.0)
    # empirical only: growth across degrees, never a negative certificate
    half = [
        spec.seminorm(spec.aut_apply(e, direction), lam) / spec.seminorm(e, lam)
        for e in _basis_elements(spec, max(1, cap // 2))
        if spec.seminorm(e, lam) > 0
    ]
    if sup_ratio > max(half) * (1 + 1e-12) or sup_ratio > 1 + 1e-9:
        return DirectionReport("growing", sup_ratio)
    return DirectionReport("inconclusive", sup_ratio)


def localizability_probe(spec: BaseSpec, lams, degree_cap: int) -> list[ProbeReport]:
    """Per-seminorm growth of alpha and alpha^-1 over basis monomials.

    Reports growth of the given family only; a growing verdict is not a
    negative certificate of localizability.
    """
    if degree_cap < 1:
        raise ValueError("degree cap must be at least 1")
    reports = []
    for lam in lams:
        reports.append(
            ProbeReport(
                lam,
                _direction_report(spec, lam, degree_cap, +1),
                _direction_report(spec, lam, degree_cap, -1),
            )
        )
    return reports


def oc_star_norm_table(f: LaurentOrePoly, lams, rhos) -> list[tuple]:
    """Rows (lam, rho, norm), sorted by (lam, rho)."""
    if not lams or not rhos:
        raise ValueError("grids must be nonempty")
    rows = []
    for lam in sorted(lams, key=float):
        for rho in sorted(rhos, key=float):
            rows.append((lam, rho, laurent_series_norm(f, lam, float(rho))))
    return rows


def norm_table_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["lambda", "rho", "norm"])
    for lam, rho, value in rows:
        writer.writerow([float(lam), float(rho), repr(value)])
    return buf.getvalue()
