"""Symbolic frequency-domain expressions: trees, parser, evaluation.

The analysis machinery needs closed-form functions of one real frequency
variable that it can evaluate on large grids, dilate exactly in the argument
(γ ↦ s·γ with rational s), and print back as text.  This module provides a
small immutable expression language for that purpose.  Trees are frozen
dataclasses, so structural equality and hashing come for free and golden
trees can be compared directly in tests.

Text grammar (whitespace insignificant):

    expr     := term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := rational | 'i' | 'g' | ident '(' expr ')' | chi
              | '(' expr ')' | '-' factor
    ident    := 'sin' | 'cos' | 'sinc' | 'sqrt' | 'abs2' | 'conj' | 'recip'
    chi      := 'chi' ('('|'[') rational ',' rational (')'|']')
    rational := integer | integer '/' positive-integer | decimal

``g`` is the frequency variable.  ``chi`` brackets follow interval notation:
round is open, square is closed, so ``chi(0,1/8]`` is the indicator of
(0, 1/8].  ``sinc`` is unnormalized sin(x)/x with sinc(0) = 1.  ``recip`` is
the guarded reciprocal of a strictly positive subexpression; evaluation at a
point where the argument is not strictly positive raises ThetaNotPositive.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    BadIndicatorBounds,
    ExprSyntaxError,
    NegativeSqrt,
    ThetaNotPositive,
    UnknownIdentifier,
    ZeroScale,
)

# Tolerance below which imaginary parts / negative real parts are treated as
# rounding noise by sqrt and recip.
IMAG_TOL = 1e-12

# Default cap on tree size accepted by the parser.
MAX_NODES = 10_000

_MAX_PARSE_DEPTH = 200


class FreqExpr:
    """Base class for expression nodes.  Instances are immutable."""

    __slots__ = ()

    def __call__(self, gamma):
        return evaluate(self, gamma)


@dataclass(frozen=True, slots=True)
class RationalConst(FreqExpr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, slots=True)
class RealConst(FreqExpr):
    value: float


@dataclass(frozen=True, slots=True)
class ImaginaryUnit(FreqExpr):
    pass


@dataclass(frozen=True, slots=True)
class Var(FreqExpr):
    pass


@dataclass(frozen=True, slots=True)
class Sin(FreqExpr):
    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Cos(FreqExpr):
    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Sinc(FreqExpr):
    """Unnormalized sinc: sin(x)/x, value 1 at x = 0."""

    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Sqrt(FreqExpr):
    """Square root of a nonnegative real value.

    Evaluation raises NegativeSqrt when the argument has real part below
    −IMAG_TOL or imaginary part beyond IMAG_TOL.
    """

    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Abs2(FreqExpr):
    """Squared modulus |·|²."""

    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Conj(FreqExpr):
    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Indicator(FreqExpr):
    """Indicator of an interval in the frequency variable itself.

    Bounds are exact rationals; lo_closed / hi_closed select bracket
    semantics at the endpoints.
    """

    lo: Fraction
    hi: Fraction
    lo_closed: bool
    hi_closed: bool

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise BadIndicatorBounds(
                f"indicator bounds must satisfy lo < hi, got [{self.lo}, {self.hi}]"
            )


@dataclass(frozen=True, slots=True)
class Sum(FreqExpr):
    terms: tuple

    def __post_init__(self):
        if len(self.terms) < 2:
            raise ValueError("Sum needs at least two terms")


@dataclass(frozen=True, slots=True)
class Product(FreqExpr):
    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("Product needs at least two factors")


@dataclass(frozen=True, slots=True)
class Negate(FreqExpr):
    arg: FreqExpr


@dataclass(frozen=True, slots=True)
class Scale(FreqExpr):
    """Multiplication by an exact rational constant."""

    coeff: Fraction
    arg: FreqExpr

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))


@dataclass(frozen=True, slots=True)
class PositiveReciprocal(FreqExpr):
    """1/arg, guarded: arg must evaluate strictly positive (real).

    Produced by the scaling-symbol normalization, which verifies positivity
    on the working grid first; evaluation re-checks every point and raises
    ThetaNotPositive outside verified territory.
    """

    arg: FreqExpr


def sum_of(*terms: FreqExpr) -> FreqExpr:
    """Sum with flattening of nested Sums; a single term passes through."""
    flat: list[FreqExpr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    if not flat:
        raise ValueError("empty sum")
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def product_of(*factors: FreqExpr) -> FreqExpr:
    """Product with flattening of nested Products; a single factor passes through."""
    flat: list[FreqExpr] = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    if not flat:
        raise ValueError("empty product")
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def count_nodes(e: FreqExpr) -> int:
    if isinstance(e, Sum):
        return 1 + sum(count_nodes(t) for t in e.terms)
    if isinstance(e, Product):
        return 1 + sum(count_nodes(f) for f in e.factors)
    if isinstance(e, (Sin, Cos, Sinc, Sqrt, Abs2, Conj, Negate, PositiveReciprocal)):
        return 1 + count_nodes(e.arg)
    if isinstance(e, Scale):
        return 1 + count_nodes(e.arg)
    return 1


# ---------------------------------------------------------------------------
# evaluation


def evaluate(e: FreqExpr, gamma):
    """Evaluate e at real frequency gamma (scalar or ndarray) -> complex.

    Vectorizes over numpy arrays; scalars come back as python complex.
    The frequency variable is real; intermediate values are complex128.
    """
    g = np.asarray(gamma, dtype=np.float64)
    if g.ndim == 0:
        out = _eval(e, g.reshape(1))
        return complex(out[0])
    return _eval(e, g)


def _first_bad(g, v, mask):
    i = int(np.argmax(mask))
    return float(g[i]), complex(v[i])


def _eval(e: FreqExpr, g: np.ndarray) -> np.ndarray:
    if isinstance(e, RationalConst):
        return np.full(g.shape, complex(float(e.value)))
    if isinstance(e, RealConst):
        return np.full(g.shape, complex(e.value))
    if isinstance(e, ImaginaryUnit):
        return np.full(g.shape, 1j)
    if isinstance(e, Var):
        return g.astype(np.complex128)
    if isinstance(e, Sin):
        return np.sin(_eval(e.arg, g))
    if isinstance(e, Cos):
        return np.cos(_eval(e.arg, g))
    if isinstance(e, Sinc):
        x = _eval(e.arg, g)
        zero = x == 0
        safe = np.where(zero, 1.0, x)
        return np.where(zero, 1.0 + 0.0j, np.sin(safe) / safe)
    if isinstance(e, Sqrt):
        v = _eval(e.arg, g)
        bad = (np.abs(v.imag) > IMAG_TOL) | (v.real < -IMAG_TOL)
        if bad.any():
            gp, vp = _first_bad(g, v, bad)
            raise NegativeSqrt(f"sqrt of non-nonnegative value {vp} at gamma={gp}")
        return np.sqrt(np.maximum(v.real, 0.0)).astype(np.complex128)
    if isinstance(e, Abs2):
        v = _eval(e.arg, g)
        return (v.real * v.real + v.imag * v.imag).astype(np.complex128)
    if isinstance(e, Conj):
        return np.conj(_eval(e.arg, g))
    if isinstance(e, Indicator):
        lo, hi = float(e.lo), float(e.hi)
        m_lo = (g >= lo) if e.lo_closed else (g > lo)
        m_hi = (g <= hi) if e.hi_closed else (g < hi)
        return (m_lo & m_hi).astype(np.complex128)
    if isinstance(e, Sum):
        acc = _eval(e.terms[0], g).copy()
        for t in e.terms[1:]:
            acc += _eval(t, g)
        return acc
    if isinstance(e, Product):
        acc = _eval(e.factors[0], g).copy()
        for f in e.factors[1:]:
            acc *= _eval(f, g)
        return acc
    if isinstance(e, Negate):
        return -_eval(e.arg, g)
    if isinstance(e, Scale):
        return float(e.coeff) * _eval(e.arg, g)
    if isinstance(e, PositiveReciprocal):
        v = _eval(e.arg, g)
        bad = (np.abs(v.imag) > IMAG_TOL) | (v.real <= 0.0)
        if bad.any():
            gp, vp = _first_bad(g, v, bad)
            raise ThetaNotPositive(
                f"reciprocal of non-positive value {vp} at gamma={gp}"
            )
        return (1.0 / v.real).astype(np.complex128)
    raise TypeError(f"not a FreqExpr node: {e!r}")


# ---------------------------------------------------------------------------
# argument dilation


def dilate_arg(e: FreqExpr, s) -> FreqExpr:
    """Expression for γ ↦ e(s·γ), s an exact nonzero rational.

    Indicator bounds are remapped exactly (divided by s, swapping
    orientation when s < 0); everything else rewrites structurally.
    dilate_arg(e, 1) returns e itself.
    """
    s = Fraction(s)
    if s == 0:
        raise ZeroScale("dilation scale must be nonzero")
    if s == 1:
        return e
    return _dilate(e, s)


def _dilate(e: FreqExpr, s: Fraction) -> FreqExpr:
    if isinstance(e, Var):
        return Scale(s, Var())
    if isinstance(e, Indicator):
        lo, hi = e.lo / s, e.hi / s
        if s > 0:
            return Indicator(lo, hi, e.lo_closed, e.hi_closed)
        return Indicator(hi, lo, e.hi_closed, e.lo_closed)
    if isinstance(e, (RationalConst, RealConst, ImaginaryUnit)):
        return e
    if isinstance(e, (Sin, Cos, Sinc, Sqrt, Abs2, Conj, Negate, PositiveReciprocal)):
        return type(e)(_dilate(e.arg, s))
    if isinstance(e, Scale):
        return Scale(e.coeff, _dilate(e.arg, s))
    if isinstance(e, Sum):
        return Sum(tuple(_dilate(t, s) for t in e.terms))
    if isinstance(e, Product):
        return Product(tuple(_dilate(f, s) for f in e.factors))
    raise TypeError(f"not a FreqExpr node: {e!r}")


# ---------------------------------------------------------------------------
# grid scan


def essential_sup(e: FreqExpr, interval, log2_n: int = 20) -> float:
    """max |e| over the midpoints of a 2^log2_n grid on interval = (a, b)."""
    a, b = (Fraction(x) for x in interval)
    if not a < b:
        raise ValueError(f"empty interval [{a}, {b}]")
    best = 0.0
    for g in midpoint_chunks(a, b, log2_n):
        v = _eval(e, g)
        m = float(np.max(np.abs(v)))
        if m > best:
            best = m
    return best


def midpoint_chunks(a, b, log2_n: int, chunk: int = 1 << 20):
    """Yield the midpoints of the regular 2^log2_n grid on [a, b] in blocks.

    Midpoints are a + (k + 1/2)·h with h = (b − a)/2^log2_n, ascending.
    For dyadic a, b the values are exact float64.
    """
    n = 1 << log2_n
    h = float((Fraction(b) - Fraction(a)) / n)
    a_f = float(a)
    for k0 in range(0, n, chunk):
        k = np.arange(k0, min(k0 + chunk, n), dtype=np.float64)
        yield a_f + (k + 0.5) * h


# ---------------------------------------------------------------------------
# parsing


_NUM_RE = re.compile(r"\d+(?:\.\d+)?(?:[eE][+-]?\d+)?")
_INT_RE = re.compile(r"\d+")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

_FUNCTIONS = {
    "sin": Sin,
    "cos": Cos,
    "sinc": Sinc,
    "sqrt": Sqrt,
    "abs2": Abs2,
    "conj": Conj,
    "recip": PositiveReciprocal,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.depth = 0

    def error(self, message: str, offset: int | None = None):
        raise ExprSyntaxError(message, self.pos if offset is None else offset)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_expr(self) -> FreqExpr:
        self.depth += 1
        if self.depth > _MAX_PARSE_DEPTH:
            self.error("expression nesting too deep")
        terms = [self.parse_term()]
        while True:
            self.skip_ws()
            op = self.peek()
            if op == "+":
                self.pos += 1
                terms.append(self.parse_term())
            elif op == "-":
                self.pos += 1
                terms.append(_negated(self.parse_term()))
            else:
                break
        self.depth -= 1
        return sum_of(*terms)

    def parse_term(self) -> FreqExpr:
        factors = [self.parse_factor()]
        while True:
            self.skip_ws()
            if self.peek() == "*":
                self.pos += 1
                factors.append(self.parse_factor())
            else:
                break
        return product_of(*factors)

    def parse_factor(self) -> FreqExpr:
        self.depth += 1
        if self.depth > _MAX_PARSE_DEPTH:
            self.error("expression nesting too deep")
        self.skip_ws()
        c = self.peek()
        if not c:
            self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            e = self.parse_expr()
            self.skip_ws()
            self.expect(")")
            self.depth -= 1
            return e
        if c == "-":
            self.pos += 1
            e = _negated(self.parse_factor())
            self.depth -= 1
            return e
        if c.isdigit() or c == ".":
            e = RationalConst(self.parse_rational())
            self.depth -= 1
            return e
        if c.isalpha() or c == "_":
            e = self.parse_ident()
            self.depth -= 1
            return e
        self.error(f"unexpected character {c!r}")

    def parse_ident(self) -> FreqExpr:
        start = self.pos
        m = _IDENT_RE.match(self.text, self.pos)
        name = m.group()
        self.pos = m.end()
        if name == "g":
            return Var()
        if name == "i":
            return ImaginaryUnit()
        if name == "chi":
            return self.parse_chi()
        ctor = _FUNCTIONS.get(name)
        if ctor is None:
            raise UnknownIdentifier(name, start)
        self.skip_ws()
        self.expect("(")
        arg = self.parse_expr()
        self.skip_ws()
        self.expect(")")
        return ctor(arg)

    def parse_chi(self) -> FreqExpr:
        self.skip_ws()
        c = self.peek()
        if c not in "([":
            self.error("expected '(' or '[' after chi")
        lo_closed = c == "["
        self.pos += 1
        lo = self.parse_signed_rational()
        self.skip_ws()
        self.expect(",")
        hi = self.parse_signed_rational()
        self.skip_ws()
        c = self.peek()
        if c not in ")]":
            self.error("expected ')' or ']' to close chi")
        hi_closed = c == "]"
        self.pos += 1
        return Indicator(lo, hi, lo_closed, hi_closed)

    def parse_signed_rational(self) -> Fraction:
        self.skip_ws()
        neg = False
        if self.peek() == "-":
            neg = True
            self.pos += 1
            self.skip_ws()
        v = self.parse_rational()
        return -v if neg else v

    def parse_rational(self) -> Fraction:
        m = _NUM_RE.match(self.text, self.pos)
        if m is None:
            self.error("expected a number")
        text = m.group()
        self.pos = m.end()
        if text.isdigit() and self.peek() == "/":
            self.pos += 1
            md = _INT_RE.match(self.text, self.pos)
            if md is None:
                self.error("expected a positive integer denominator")
            den = int(md.group())
            if den == 0:
                self.error("denominator must be positive", md.start())
            self.pos = md.end()
            return Fraction(int(text), den)
        return Fraction(text)


def _negated(e: FreqExpr) -> FreqExpr:
    """Negation with constant folding, so "-3/2" parses to a single literal."""
    if isinstance(e, RationalConst):
        return RationalConst(-e.value)
    if isinstance(e, RealConst):
        return RealConst(-e.value)
    return Negate(e)


def parse(text: str, max_nodes: int = MAX_NODES) -> FreqExpr:
    """Parse expression text.  Raises ExprSyntaxError with the byte offset
    of the failure, UnknownIdentifier for unknown function names, and
    BadIndicatorBounds for chi intervals with lo >= hi."""
    p = _Parser(text)
    e = p.parse_expr()
    p.skip_ws()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    if count_nodes(e) > max_nodes:
        raise ValueError(f"expression exceeds node limit ({max_nodes})")
    return e


# ---------------------------------------------------------------------------
# rendering

_LEVEL_SUM = 0
_LEVEL_PRODUCT = 1
_LEVEL_FACTOR = 2
_LEVEL_ATOM = 3


def render(e: FreqExpr) -> str:
    """Canonical text for e.  For parser-produced trees,
    parse(render(e)) is structurally identical; programmatic-only nodes
    (RealConst, Scale) reparse to evaluation-equal rational forms."""
    return _render(e, _LEVEL_SUM)


def _level(e: FreqExpr) -> int:
    if isinstance(e, Sum):
        return _LEVEL_SUM
    if isinstance(e, (Product, Scale)):
        return _LEVEL_PRODUCT
    if isinstance(e, Negate):
        return _LEVEL_FACTOR
    if isinstance(e, (RationalConst, RealConst)):
        v = e.value
        return _LEVEL_ATOM if v >= 0 else _LEVEL_FACTOR
    return _LEVEL_ATOM


def _render(e: FreqExpr, min_level: int) -> str:
    text = _render_bare(e)
    if _level(e) < min_level:
        return f"({text})"
    return text


def _render_bare(e: FreqExpr) -> str:
    if isinstance(e, RationalConst):
        return str(e.value)
    if isinstance(e, RealConst):
        return repr(e.value)
    if isinstance(e, ImaginaryUnit):
        return "i"
    if isinstance(e, Var):
        return "g"
    if isinstance(e, Sin):
        return f"sin({render(e.arg)})"
    if isinstance(e, Cos):
        return f"cos({render(e.arg)})"
    if isinstance(e, Sinc):
        return f"sinc({render(e.arg)})"
    if isinstance(e, Sqrt):
        return f"sqrt({render(e.arg)})"
    if isinstance(e, Abs2):
        return f"abs2({render(e.arg)})"
    if isinstance(e, Conj):
        return f"conj({render(e.arg)})"
    if isinstance(e, PositiveReciprocal):
        return f"recip({render(e.arg)})"
    if isinstance(e, Indicator):
        lb = "[" if e.lo_closed else "("
        rb = "]" if e.hi_closed else ")"
        return f"chi{lb}{e.lo},{e.hi}{rb}"
    if isinstance(e, Sum):
        parts = [_render(e.terms[0], _LEVEL_PRODUCT)]
        for t in e.terms[1:]:
            if isinstance(t, Negate):
                parts.append(f" - {_render(t.arg, _LEVEL_PRODUCT)}")
            elif isinstance(t, (RationalConst, RealConst)) and t.value < 0:
                neg = RationalConst(-t.value) if isinstance(t, RationalConst) else RealConst(-t.value)
                parts.append(f" - {_render_bare(neg)}")
            else:
                parts.append(f" + {_render(t, _LEVEL_PRODUCT)}")
        return "".join(parts)
    if isinstance(e, Product):
        return "*".join(_render(f, _LEVEL_FACTOR) for f in e.factors)
    if isinstance(e, Scale):
        coeff = RationalConst(e.coeff)
        return f"{_render(coeff, _LEVEL_FACTOR)}*{_render(e.arg, _LEVEL_FACTOR)}"
    if isinstance(e, Negate):
        return f"-{_render(e.arg, _LEVEL_FACTOR)}"
    raise TypeError(f"not a FreqExpr node: {e!r}")
