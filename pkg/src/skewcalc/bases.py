"""Concrete seminormed base algebras with automorphism actions.

Three element types are provided:

* :class:`EntirePoly` — polynomials in one variable z with Gaussian-rational
  coefficients, seminorm sum(|c_m| rho^m);
* :class:`IntervalPoly` — real polynomials with rational coefficients,
  seminorm sup over a closed interval [-n, n];
* :class:`FreeSeries` — finitely supported series over free generators,
  seminorm sum(|a_v| rho^{|v|}).

A :class:`BaseSpec` bundles an element kind with an automorphism and
exposes seminorms and per-word twisted seminorms.  Closed forms (exact)
are used where available; everywhere else a certified upper bound is
returned, tagged via :class:`Exactness`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import GaussianRational
from .words import (
    EMPTY_INTERVAL,
    Interval,
    Word,
    extremal_twists,
    interval as word_interval,
    partial_sums,
)


class Exactness(enum.Enum):
    EXACT = "exact"
    UPPER_BOUND = "upper_bound"


class UnsupportedAutomorphism(ValueError):
    """Raised when a closed form excludes the given automorphism parameters."""


class MismatchedBaseError(ValueError):
    """Raised when elements of different base specs are combined."""


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


def _clean(coeffs: dict):
    return {k: v for k, v in coeffs.items() if v}


@dataclass(frozen=True)
class EntirePoly:
    """Polynomial in z with exact Gaussian-rational coefficients."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {
            int(m): GaussianRational.of(c)
            for m, c in self.coeffs.items()
            if GaussianRational.of(c)
        }
        if any(m < 0 for m in cleaned):
            raise ValueError("negative degrees are not allowed")
        object.__setattr__(self, "coeffs", cleaned)

    @staticmethod
    def monomial(c, m: int = 0) -> "EntirePoly":
        return EntirePoly({m: GaussianRational.of(c)})

    @staticmethod
    def zero() -> "EntirePoly":
        return EntirePoly({})

    @staticmethod
    def one() -> "EntirePoly":
        return EntirePoly({0: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, GaussianRational()) + c
        return EntirePoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return EntirePoly({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, EntirePoly):
            out: dict = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    key = m1 + m2
                    out[key] = out.get(key, GaussianRational()) + c1 * c2
            return EntirePoly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "EntirePoly":
        c = GaussianRational.of(c)
        return EntirePoly({m: c * v for m, v in self.coeffs.items()})

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, EntirePoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def derivative(self) -> "EntirePoly":
        return EntirePoly({m - 1: c * m for m, c in self.coeffs.items() if m > 0})

    def shift_argument(self, s: Fraction) -> "EntirePoly":
        """Exact substitution z -> z - s via binomial expansion."""
        s = Fraction(s)
        out: dict = {}
        for m, c in self.coeffs.items():
            # (z - s)^m
            for j in range(m + 1):
                coeff = c * (math.comb(m, j) * (-s) ** (m - j))
                out[j] = out.get(j, GaussianRational()) + coeff
        return EntirePoly(out)


@dataclass(frozen=True)
class IntervalPoly:
    """Real polynomial with exact rational coefficients."""

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {int(m): Fraction(c) for m, c in self.coeffs.items() if Fraction(c)}
        if any(m < 0 for m in cleaned):
            raise ValueError("negative degrees are not allowed")
        object.__setattr__(self, "coeffs", cleaned)

    @staticmethod
    def monomial(c, m: int = 0) -> "IntervalPoly":
        return IntervalPoly({m: Fraction(c)})

    @staticmethod
    def zero() -> "IntervalPoly":
        return IntervalPoly({})

    @staticmethod
    def one() -> "IntervalPoly":
        return IntervalPoly({0: 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, Fraction(0)) + c
        return IntervalPoly(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return IntervalPoly({m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, IntervalPoly):
            out: dict = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    out[m1 + m2] = out.get(m1 + m2, Fraction(0)) + c1 * c2
            return IntervalPoly(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "IntervalPoly":
        c = Fraction(c)
        return IntervalPoly({m: c * v for m, v in self.coeffs.items()})

    def degree(self) -> int:
        return max(self.coeffs, default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, IntervalPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def evaluate(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        deg = self.degree()
        for m in range(deg, -1, -1):
            acc = acc * x + self.coeffs.get(m, Fraction(0))
        return acc

    def derivative(self) -> "IntervalPoly":
        return IntervalPoly({m - 1: c * m for m, c in self.coeffs.items() if m > 0})

    def shift_argument(self, s: Fraction) -> "IntervalPoly":
        s = Fraction(s)
        out: dict = {}
        for m, c in self.coeffs.items():
            for j in range(m + 1):
                out[j] = out.get(j, Fraction(0)) + c * math.comb(m, j) * (-s) ** (m - j)
        return IntervalPoly(out)


@dataclass(frozen=True)
class FreeSeries:
    """Finitely supported series over free generators g1..gn.

    Keys are tuples of generator indices (0-based); the empty tuple is
    the constant term.
    """

    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        cleaned = {
            tuple(v): GaussianRational.of(c)
            for v, c in self.coeffs.items()
            if GaussianRational.of(c)
        }
        object.__setattr__(self, "coeffs", cleaned)

    @staticmethod
    def monomial(c, v: tuple = ()) -> "FreeSeries":
        return FreeSeries({tuple(v): GaussianRational.of(c)})

    @staticmethod
    def zero() -> "FreeSeries":
        return FreeSeries({})

    @staticmethod
    def one() -> "FreeSeries":
        return FreeSeries({(): 1})

    def __add__(self, other):
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, GaussianRational()) + c
        return FreeSeries(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FreeSeries({v: -c for v, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, FreeSeries):
            out: dict = {}
            for v1, c1 in self.coeffs.items():
                for v2, c2 in other.coeffs.items():
                    key = v1 + v2
                    out[key] = out.get(key, GaussianRational()) + c1 * c2
            return FreeSeries(out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "FreeSeries":
        c = GaussianRational.of(c)
        return FreeSeries({v: c * val for v, val in self.coeffs.items()})

    def degree(self) -> int:
        return max((len(v) for v in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, FreeSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))


# ---------------------------------------------------------------------------
# automorphisms and derivations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityAut:
    kind: str = "identity"

    def apply(self, el, k: int):
        return el

    def inverse(self) -> "IdentityAut":
        return self

    def describe(self) -> str:
        return "identity"


@dataclass(frozen=True)
class ScaleAut:
    """z -> q z on coefficients of EntirePoly: c_m -> q^{km} c_m."""

    q: GaussianRational
    kind: str = "scale"

    def __post_init__(self):
        q = GaussianRational.of(self.q)
        if q.is_zero():
            raise ValueError("scaling parameter must be nonzero")
        object.__setattr__(self, "q", q)

    def apply(self, el: EntirePoly, k: int) -> EntirePoly:
        if k == 0:
            return el
        return EntirePoly({m: (self.q ** (k * m)) * c for m, c in el.coeffs.items()})

    def inverse(self) -> "ScaleAut":
        return ScaleAut(self.q.inverse())

    def abs_is_one(self) -> bool:
        return self.q.abs2() == 1

    def abs_gt_one(self) -> bool:
        return self.q.abs2() > 1

    def describe(self) -> str:
        return f"scale q={self.q}"


@dataclass(frozen=True)
class ShiftAut:
    """f(z) -> f(z - step); the inverse shifts the other way."""

    step: Fraction = Fraction(1)
    kind: str = "shift"

    def __post_init__(self):
        object.__setattr__(self, "step", Fraction(self.step))

    def apply(self, el, k: int):
        if k == 0:
            return el
        return el.shift_argument(k * self.step)

    def inverse(self) -> "ShiftAut":
        return ShiftAut(-self.step)

    def describe(self) -> str:
        return f"shift step={self.step}"


@dataclass(frozen=True)
class DiagonalAut:
    """Diagonal action on FreeSeries: generator i is scaled by qs[i]."""

    qs: tuple
    kind: str = "diagonal"

    def __post_init__(self):
        qs = tuple(GaussianRational.of(q) for q in self.qs)
        if any(q.is_zero() for q in qs):
            raise ValueError("diagonal factors must be nonzero")
        object.__setattr__(self, "qs", qs)

    def apply(self, el: FreeSeries, k: int) -> FreeSeries:
        if k == 0:
            return el
        out = {}
        for v, c in el.coeffs.items():
            factor = GaussianRational.of(1)
            for i in v:
                factor = factor * (self.qs[i] ** k)
            out[v] = factor * c
        return FreeSeries(out)

    def inverse(self) -> "DiagonalAut":
        return DiagonalAut(tuple(q.inverse() for q in self.qs))

    def describe(self) -> str:
        return "diagonal(" + ",".join(str(q) for q in self.qs) + ")"


@dataclass(frozen=True)
class PolyDerivation:
    """d/dz on polynomial elements; an alpha-derivation only for alpha=id."""

    kind: str = "ddz"

    def apply(self, el):
        return el.derivative()


# ---------------------------------------------------------------------------
# interval sup-norm via Sturm isolation
# ---------------------------------------------------------------------------

_ROOT_WIDTH = Fraction(1, 10**12)


def _dense(p: IntervalPoly) -> list:
    deg = p.degree()
    return [p.coeffs.get(m, Fraction(0)) for m in range(deg + 1)]


def _poly_eval(dense: list, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(dense):
        acc = acc * x + c
    return acc


def _poly_deriv(dense: list) -> list:
    return [c * m for m, c in enumerate(dense)][1:]


def _poly_rem(a: list, b: list) -> list:
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        while a and a[-1] == 0:
            a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_gcd(a: list, b: list) -> list:
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def _poly_div_exact(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) - len(b) + 1)
    a = list(a)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        out[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        while a and a[-1] == 0:
            a.pop()
    return out


def _sturm_chain(dense: list) -> list:
    chain = [dense, _poly_deriv(dense)]
    while chain[-1]:
        rem = _poly_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append([-c for c in rem])
    return [c for c in chain if c]


def _sign_changes(chain: list, x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _isolate_real_roots(dense: list, lo: Fraction, hi: Fraction) -> list:
    """Disjoint rational intervals, each containing one root of dense in (lo, hi]."""
    if len(dense) <= 1:
        return []
    # squarefree part for Sturm
    g = _poly_gcd(dense, _poly_deriv(dense))
    if len(g) > 1:
        dense = _poly_div_exact(dense, g)
    chain = _sturm_chain(dense)

    def nroots(a: Fraction, b: Fraction) -> int:
        return _sign_changes(chain, a) - _sign_changes(chain, b)

    out = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = nroots(a, b)
        if n == 0:
            continue
        if n == 1 or b - a <= _ROOT_WIDTH:
            # refine to the target width
            while b - a > _ROOT_WIDTH:
                mid = (a + b) / 2
                if nroots(a, mid) >= 1:
                    b = mid
                else:
                    a = mid
            out.append((a, b))
        else:
            mid = (a + b) / 2
            stack.append((a, mid))
            stack.append((mid, b))
    return out


def interval_seminorm(f: IntervalPoly, window) -> float:
    """sup of |f| over a closed interval, or 0 over the empty window.

    Computed from f's critical points: real roots of f' are isolated with
    exact rational bisection, then |f| is evaluated at those points and at
    the endpoints.
    """
    if window is EMPTY_INTERVAL:
        return 0.0
    if not isinstance(window, Interval):
        raise TypeError(f"expected Interval or Empty, got {window!r}")
    candidates = [window.lo, window.hi]
    deriv = _dense(f.derivative())
    if len(deriv) > 1 or (deriv and deriv[0] != 0):
        for a, b in _isolate_real_roots(deriv, window.lo, window.hi):
            candidates.append((a + b) / 2)
    best = max(abs(f.evaluate(x)) for x in candidates)
    return float(best)


# ---------------------------------------------------------------------------
# plain seminorms
# ---------------------------------------------------------------------------


def entire_seminorm(f: EntirePoly, rho: float) -> float:
    """sum(|c_m| rho^m)."""
    if rho <= 0:
        raise ValueError("radius must be positive")
    rho = float(rho)
    return sum(abs(c) * rho**m for m, c in f.coeffs.items())


def free_seminorm(a: FreeSeries, rho: float) -> float:
    """sum(|a_v| rho^{|v|})."""
    if rho <= 0:
        raise ValueError("radius must be positive")
    rho = float(rho)
    return sum(abs(c) * rho ** len(v) for v, c in a.coeffs.items())


# ---------------------------------------------------------------------------
# base spec
# ---------------------------------------------------------------------------

_ELEMENT_TYPES = {"entire": EntirePoly, "interval": IntervalPoly, "free": FreeSeries}


@dataclass(frozen=True)
class BaseSpec:
    """A concrete seminormed base algebra with an automorphism action.

    ``kind`` selects the element type; ``aut`` must act on it.  The
    seminorm index is a positive radius for entire/free elements and a
    positive half-width n (window [-n, n]) for interval elements.
    """

    kind: str
    aut: object
    ngens: int = 2  # only used by the free base

    def __post_init__(self):
        if self.kind not in _ELEMENT_TYPES:
            raise ValueError(f"unknown base kind {self.kind!r}")
        allowed = {
            "entire": ("identity", "scale", "shift"),
            "interval": ("identity", "shift"),
            "free": ("identity", "diagonal"),
        }[self.kind]
        if self.aut.kind not in allowed:
            raise UnsupportedAutomorphism(
                f"{self.aut.kind} automorphism is not supported on the {self.kind} base"
            )

    # -- constructors ------------------------------------------------------

    @property
    def element_type(self):
        return _ELEMENT_TYPES[self.kind]

    def zero(self):
        return self.element_type.zero()

    def one(self):
        return self.element_type.one()

    def monomial(self, c, key=0):
        return self.element_type.monomial(c, key)

    # -- structure ---------------------------------------------------------

    def aut_apply(self, el, k: int):
        return self.aut.apply(el, k)

    def inverse(self) -> "BaseSpec":
        return BaseSpec(self.kind, self.aut.inverse(), self.ngens)

    def is_invertible(self, el) -> bool:
        """True for nonzero constants, the units among stored elements."""
        if el.is_zero():
            return False
        key = () if self.kind == "free" else 0
        return set(el.coeffs) == {key}

    def degree(self, el) -> int:
        return el.degree()

    # -- seminorms ---------------------------------------------------------

    def seminorm(self, el, lam) -> float:
        if self.kind == "entire":
            return entire_seminorm(el, lam)
        if self.kind == "free":
            return free_seminorm(el, lam)
        n = Fraction(lam)
        if n <= 0:
            raise ValueError("half-width must be positive")
        return interval_seminorm(el, Interval(-n, n))

    def twisted_seminorm(self, el, w: Word, lam) -> tuple[float, Exactness]:
        """Per-word seminorm; exact closed forms where the base provides them."""
        if len(w) <= 1:
            return self.seminorm(el, lam), Exactness.EXACT
        if el.is_zero():
            return 0.0, Exactness.EXACT
        if self.kind == "entire" and self.aut.kind == "scale":
            return self._twisted_entire_scale(el, w, lam)
        if self.kind == "interval" and self.aut.kind == "shift":
            window = self._shift_window(w, lam)
            return interval_seminorm(el, window), Exactness.EXACT
        if self.aut.kind == "identity":
            return self.seminorm(el, lam), Exactness.EXACT
        if self.kind == "entire" and self.aut.kind == "shift":
            return self._twisted_entire_shift(el, w, lam)
        # free/diagonal: best slot-placement upper bound
        return self._slot_upper_bound(el, w, lam), Exactness.UPPER_BOUND

    def _shift_window(self, w: Word, lam):
        n = Fraction(lam)
        if self.aut.step == 1:
            return word_interval(w, n)
        # a shift by `step` rescales the twist profile by that step
        k_min, k_max = extremal_twists(w)
        lo = -n + k_max * self.aut.step
        hi = n + k_min * self.aut.step
        if self.aut.step < 0:
            lo = -n + k_min * self.aut.step
            hi = n + k_max * self.aut.step
        if lo > hi:
            return EMPTY_INTERVAL
        return Interval(lo, hi)

    def _twisted_entire_scale(self, el, w, lam):
        if self.aut.abs_is_one():
            raise UnsupportedAutomorphism(
                "the scaling closed form requires |q| != 1"
            )
        k_min, k_max = extremal_twists(w)
        k = k_max if self.aut.abs_gt_one() else k_min
        lam_eff = float(lam) * abs(self.aut.q) ** (-k)
        return entire_seminorm(el, lam_eff), Exactness.EXACT

    def _twisted_entire_shift(self, el, w, lam):
        # zero certificate: a leading 1-block long enough forces the
        # single-variable seminorm to vanish, and padding on the right
        # can only shrink the value.
        ones = 0
        for letter in w:
            if letter != 1:
                break
            ones += 1
        if ones >= math.floor(2 * float(lam)) + 3:
            return 0.0, Exactness.EXACT
        return self._slot_upper_bound(el, w, lam), Exactness.UPPER_BOUND

    def _slot_upper_bound(self, el, w, lam) -> float:
        # place alpha^{-p}(el) in the slot whose twist is p, ones elsewhere
        best = None
        for p in set(partial_sums(w)[:-1]):
            value = self.seminorm(self.aut.apply(el, -p), lam)
            if best is None or value < best:
                best = value
        return best


# ---------------------------------------------------------------------------
# slot products and decomposition bounds
# ---------------------------------------------------------------------------


def i_w_apply(spec: BaseSpec, w: Word, factors):
    """Collapse a factor tuple along a word: x_1 * prod alpha^{p(w,i-1)}(x_i)."""
    if len(factors) != len(w):
        raise ValueError(f"expected {len(w)} factors, got {len(factors)}")
    if not w:
        raise ValueError("the empty word admits no factor tuple")
    sums = partial_sums(w)
    out = factors[0]
    for i in range(1, len(w)):
        out = out * spec.aut_apply(factors[i], sums[i])
    return out


class InvalidDecompositionError(ValueError):
    pass


def generic_twisted_upper_bound(
    spec: BaseSpec, f, w: Word, lam, decomposition
) -> tuple[float, Exactness]:
    """Upper bound sum_j prod_i ||r_ij|| over an explicitly given decomposition.

    The decomposition (a list of factor tuples of length |w|) must
    reconstruct f exactly through the slot product; otherwise an
    InvalidDecompositionError is raised.
    """
    total = spec.zero()
    for factors in decomposition:
        if len(factors) != len(w):
            raise InvalidDecompositionError(
                f"factor tuple of length {len(factors)} for a word of length {len(w)}"
            )
        total = total + i_w_apply(spec, w, factors)
    if total != f:
        raise InvalidDecompositionError("decomposition does not reconstruct the element")
    value = 0.0
    for factors in decomposition:
        term = 1.0
        for r in factors:
            term *= spec.seminorm(r, lam)
        value += term
    return value, Exactness.UPPER_BOUND
