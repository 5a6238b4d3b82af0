"""Text forms for elements: parser, canonical printer, config files.

Grammar: an expression is a sum of terms; a term is a product (explicit
``*`` or juxtaposition) of powered atoms.  Atoms are rational numbers
(``3/2``), imaginary literals (``2i``, ``i``), the base variable ``z``,
free generators ``g1``, ``g2``, ..., the series generators ``x1``/``x2``,
the skew variable ``t``, or a parenthesized subexpression.  Only ``t``
may carry a negative exponent (and only without a derivation).

Config files are flat ``key = value`` lines with exact rational literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .bases import BaseSpec
from .ore import LaurentOrePoly
from .scalars import GaussianRational
from .tensor import TwistedSeries
from .words import Word


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:/\d+)?i?)|(?P<ident>[A-Za-z]\w*)"
    r"|(?P<op>[()+\-*^]))"
)


def _tokenize(source: str):
    tokens = []
    pos = 0
    while pos < len(source):
        match = _TOKEN_RE.match(source, pos)
        if not match or match.end() == pos:
            stripped = source[pos:].lstrip()
            if not stripped:
                break
            raise ParseError(f"unexpected character {stripped[0]!r}", 1, pos + 1)
        pos = match.end()
        if match.lastgroup == "number":
            text = match.group("number")
            imag = text.endswith("i")
            value = Fraction(text[:-1] if imag else text)
            tokens.append(("imag" if imag else "number", value, match.start()))
        elif match.lastgroup == "ident":
            tokens.append(("ident", match.group("ident"), match.start()))
        else:
            tokens.append(("op", match.group("op"), match.start()))
    tokens.append(("end", None, len(source)))
    return tokens


class _Parser:
    """Recursive-descent parser evaluating directly in the target ring."""

    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.index = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.index]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message):
        _, _, pos = self.peek()
        raise ParseError(message, 1, pos + 1)

    def parse(self):
        value = self.expression()
        if self.peek()[0] != "end":
            self.error(f"trailing input starting at {self.peek()[1]!r}")
        return value

    def expression(self):
        kind, text, _ = self.peek()
        negate = False
        if kind == "op" and text in "+-":
            self.advance()
            negate = text == "-"
        value = self.term()
        if negate:
            value = -value
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value - rhs if text == "-" else value + rhs
            else:
                return value

    def term(self):
        value = self.power()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                value = value * self.power()
            elif kind in ("number", "imag", "ident") or (kind == "op" and text == "("):
                value = value * self.power()
            else:
                return value

    def power(self):
        kind, text, _ = self.peek()
        base_token = self.peek()
        value = self.atom()
        kind, text, _ = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            exponent = self.exponent()
            value = self.ring.power(value, exponent, base_token)
        return value

    def exponent(self) -> int:
        sign = 1
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            sign = -1
        kind, value, _ = self.peek()
        if kind != "number" or value.denominator != 1:
            self.error("integer exponent expected")
        self.advance()
        return sign * int(value)

    def atom(self):
        kind, text, _ = self.advance()
        if kind == "number":
            return self.ring.scalar(GaussianRational(text))
        if kind == "imag":
            return self.ring.scalar(GaussianRational(Fraction(0), text))
        if kind == "ident":
            try:
                return self.ring.atom(text)
            except KeyError:
                self.index -= 1
                self.error(f"unknown generator {text!r}")
        if kind == "op" and text == "(":
            value = self.expression()
            kind, text, _ = self.advance()
            if not (kind == "op" and text == ")"):
                self.index -= 1
                self.error("expected ')'")
            return value
        if kind == "op" and text in "+-":
            value = self.power()
            return -value if text == "-" else value
        self.index -= 1
        self.error(f"unexpected token {text!r}")


class _SeriesRing:
    def __init__(self, spec: BaseSpec, caps: dict):
        self.spec = spec
        self.caps = caps

    def scalar(self, c: GaussianRational):
        if self.spec.kind == "interval":
            if c.im:
                raise ParseError("complex scalars are not allowed on the interval base")
            coeff = self.spec.monomial(c.re, 0)
        else:
            key = 0 if self.spec.kind != "free" else ()
            coeff = self.spec.monomial(c, key)
        return TwistedSeries.term(self.spec, coeff, (), **self.caps)

    def atom(self, name: str):
        if name in ("x1", "x2"):
            return TwistedSeries.generator(self.spec, int(name[1]), **self.caps)
        if name == "z" and self.spec.kind in ("entire", "interval"):
            return TwistedSeries.term(self.spec, self.spec.monomial(1, 1), (), **self.caps)
        if name == "i":
            return self.scalar(GaussianRational(Fraction(0), Fraction(1)))
        match = re.fullmatch(r"g(\d+)", name)
        if match and self.spec.kind == "free":
            index = int(match.group(1)) - 1
            if not 0 <= index < self.spec.ngens:
                raise KeyError(name)
            return TwistedSeries.term(
                self.spec, self.spec.monomial(1, (index,)), (), **self.caps
            )
        raise KeyError(name)

    def power(self, value, exponent: int, token):
        if exponent < 0:
            raise ParseError("negative exponents are only allowed on t")
        result = TwistedSeries.one(self.spec, **self.caps)
        for _ in range(exponent):
            result = result * value
        return result


class _OreRing:
    def __init__(self, spec: BaseSpec, delta=None):
        self.spec = spec
        self.delta = delta

    def scalar(self, c: GaussianRational):
        if self.spec.kind == "interval":
            if c.im:
                raise ParseError("complex scalars are not allowed on the interval base")
            coeff = self.spec.monomial(c.re, 0)
        else:
            key = 0 if self.spec.kind != "free" else ()
            coeff = self.spec.monomial(c, key)
        return LaurentOrePoly.term(self.spec, coeff, 0, self.delta)

    def atom(self, name: str):
        if name == "t":
            return LaurentOrePoly.term(self.spec, self.spec.one(), 1, self.delta)
        if name == "z" and self.spec.kind in ("entire", "interval"):
            return LaurentOrePoly.term(self.spec, self.spec.monomial(1, 1), 0, self.delta)
        if name == "i":
            return self.scalar(GaussianRational(Fraction(0), Fraction(1)))
        match = re.fullmatch(r"g(\d+)", name)
        if match and self.spec.kind == "free":
            index = int(match.group(1)) - 1
            if not 0 <= index < self.spec.ngens:
                raise KeyError(name)
            return LaurentOrePoly.term(
                self.spec, self.spec.monomial(1, (index,)), 0, self.delta
            )
        raise KeyError(name)

    def power(self, value, exponent: int, token):
        if exponent < 0:
            is_t = value.coeffs == {1: self.spec.one()}
            if not is_t:
                raise ParseError("negative exponents are only allowed on t")
            if self.delta is not None:
                raise ParseError("t^-1 is not available with a derivation")
            return LaurentOrePoly.term(self.spec, self.spec.one(), exponent, self.delta)
        result = LaurentOrePoly.one(self.spec, self.delta)
        for _ in range(exponent):
            result = result * value
        return result


def parse_expr(source: str, spec: BaseSpec, caps: dict | None = None, delta=None):
    """Parse into a TwistedSeries, or a LaurentOrePoly when t occurs."""
    caps = caps or {}
    tokens = _tokenize(source)
    idents = {t[1] for t in tokens if t[0] == "ident"}
    uses_t = "t" in idents
    uses_x = bool(idents & {"x1", "x2"})
    if uses_t and uses_x:
        raise ParseError("an expression cannot mix t with x1/x2")
    ring = _OreRing(spec, delta) if uses_t else _SeriesRing(spec, caps)
    return _Parser(tokens, ring).parse()


def parse_scalar(text: str) -> GaussianRational:
    """Exact scalar literal: '2', '3/2', '1+1i', '-2i'."""
    tokens = _tokenize(text)

    class _ScalarRing:
        def scalar(self, c):
            return c

        def atom(self, name):
            if name == "i":
                return GaussianRational(Fraction(0), Fraction(1))
            raise KeyError(name)

        def power(self, value, exponent, token):
            return value**exponent

    return GaussianRational.of(_Parser(tokens, _ScalarRing()).parse())


# ---------------------------------------------------------------------------
# printers
# ---------------------------------------------------------------------------


def format_scalar(c) -> str:
    c = GaussianRational.of(c)
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return f"{c.im}i"
    sign = "+" if c.im > 0 else "-"
    return f"{c.re}{sign}{abs(c.im)}i"


def format_base(el, kind: str) -> str:
    """Canonical text form of a base element, e.g. '3/2*z^2 - z + 1'."""
    if el.is_zero():
        return "0"
    parts = []
    if kind == "free":
        keys = sorted(el.coeffs, key=lambda v: (len(v), v))
        for v in keys:
            gens = "*".join(f"g{i + 1}" for i in v)
            parts.append((el.coeffs[v], gens))
    else:
        for m in sorted(el.coeffs, reverse=True):
            var = "" if m == 0 else ("z" if m == 1 else f"z^{m}")
            parts.append((el.coeffs[m], var))
    out = ""
    for coeff, var in parts:
        coeff = GaussianRational.of(coeff)
        if coeff.im != 0:
            text = f"({format_scalar(coeff)})"
            sign = "+"
        elif coeff.re < 0:
            sign = "-"
            text = format_scalar(-coeff)
        else:
            sign = "+"
            text = format_scalar(coeff)
        if var:
            body = var if text == "1" else f"{text}*{var}"
        else:
            body = text
        if not out:
            out = body if sign == "+" else f"-{body}"
        else:
            out += f" {sign} {body}"
    return out


def _join_terms(parts: list) -> str:
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += f" - {part[1:]}"
        else:
            out += f" + {part}"
    return out


def _format_word(w: Word) -> str:
    blocks = []
    for letter in w:
        if blocks and blocks[-1][0] == letter:
            blocks[-1][1] += 1
        else:
            blocks.append([letter, 1])
    return "*".join(
        f"x{letter}" if count == 1 else f"x{letter}^{count}" for letter, count in blocks
    )


def format_series(f: TwistedSeries) -> str:
    """Canonical text form, words ordered by (length, lexicographic)."""
    if f.is_zero():
        return "0"
    parts = []
    for w in f.words():
        base = format_base(f.terms[w], f.spec.kind)
        if not w:
            parts.append(base)
        elif base == "1":
            parts.append(_format_word(w))
        else:
            parts.append(f"({base})*{_format_word(w)}")
    return _join_terms(parts)


def format_ore(p: LaurentOrePoly) -> str:
    """Canonical text form, exponents descending, e.g. '(2*z)*t^3 + t^-1'."""
    if p.is_zero():
        return "0"
    parts = []
    for i in sorted(p.coeffs, reverse=True):
        base = format_base(p.coeffs[i], p.spec.kind)
        power = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
        if not power:
            parts.append(base)
        elif base == "1":
            parts.append(power)
        else:
            parts.append(f"({base})*{power}")
    return _join_terms(parts)


def format_element(obj) -> str:
    if isinstance(obj, TwistedSeries):
        return format_series(obj)
    if isinstance(obj, LaurentOrePoly):
        return format_ore(obj)
    raise TypeError(f"cannot format {type(obj).__name__}")


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConfigError(Exception):
    message: str

    def __str__(self):
        return self.message


def parse_config_text(text: str) -> dict:
    """Flat key = value lines; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out
