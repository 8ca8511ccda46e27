"""Exact scalars in Q or a real quadratic field Q(sqrt(D)).

Field elements are either :class:`fractions.Fraction` (the rational case) or
:class:`Scalar` (a number ``p + q*sqrt(D)`` with ``q != 0``).  Arithmetic on
a :class:`Scalar` that cancels the radical returns a plain ``Fraction``, so
rational data never pays for the quadratic machinery.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DomainError, ModeMismatchError, ParseError

Number = Union[Fraction, "Scalar"]


def is_squarefree(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class Scalar:
    """``rational_part + radical_part * sqrt(radicand)``, compared exactly."""

    __slots__ = ("rational_part", "radical_part", "radicand")

    def __init__(self, rational_part=0, radical_part=0, radicand=None):
        a = Fraction(rational_part)
        b = Fraction(radical_part)
        if radicand is None:
            if b != 0:
                raise DomainError("a nonzero radical part needs a radicand")
        elif not is_squarefree(radicand):
            raise DomainError(f"radicand {radicand} is not a square-free integer > 1")
        object.__setattr__(self, "rational_part", a)
        object.__setattr__(self, "radical_part", b)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if (
                self.radicand is not None
                and other.radicand is not None
                and self.radicand != other.radicand
            ):
                raise ModeMismatchError(
                    f"sqrt({self.radicand}) and sqrt({other.radicand}) mixed"
                )
            return other.rational_part, other.radical_part, other.radicand
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0), None
        if isinstance(other, Rational):
            return Fraction(other.numerator, other.denominator), Fraction(0), None
        return None

    def _d(self, other_d):
        return self.radicand if self.radicand is not None else other_d

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return make(self.rational_part + c[0], self.radical_part + c[1], self._d(c[2]))

    __radd__ = __add__

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return make(self.rational_part - c[0], self.radical_part - c[1], self._d(c[2]))

    def __rsub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return make(c[0] - self.rational_part, c[1] - self.radical_part, self._d(c[2]))

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        d = self._d(c[2])
        a, b = self.rational_part, self.radical_part
        x, y = c[0], c[1]
        rad = b * y * d if d is not None else 0
        return make(a * x + rad, a * y + b * x, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        d = self._d(c[2])
        x, y = c[0], c[1]
        norm = x * x - (y * y * d if d is not None else 0)
        if norm == 0:
            raise ZeroDivisionError("division by zero scalar")
        a, b = self.rational_part, self.radical_part
        # (a + b r)(x - y r) / (x^2 - y^2 D)
        rad = b * y * d if d is not None else 0
        return make((a * x - rad) / norm, (b * x - a * y) / norm, d)

    def __rtruediv__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b, d = self.rational_part, self.radical_part, self.radicand
        norm = a * a - b * b * d
        inv = Scalar(a / norm, -b / norm, d)
        return inv * make(c[0], c[1], self._d(c[2]))

    def __neg__(self):
        return make(-self.rational_part, -self.radical_part, self.radicand)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparison ---------------------------------------------------------
    def sign(self) -> int:
        a, b = self.rational_part, self.radical_part
        sa, sb = _sign(a), _sign(b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb if sa == 0 else sa
        # opposite signs: compare a^2 with b^2 D
        lhs, rhs = a * a, b * b * self.radicand
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def _cmp(self, other):
        diff = self - other
        return diff.sign() if isinstance(diff, Scalar) else _sign(diff)

    def __eq__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) < 0

    def __le__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) <= 0

    def __gt__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) > 0

    def __ge__(self, other):
        if self._coerce(other) is None:
            return NotImplemented
        return self._cmp(other) >= 0

    def __hash__(self):
        if self.radical_part == 0:
            return hash(self.rational_part)
        return hash((self.rational_part, self.radical_part, self.radicand))

    def __bool__(self):
        return self.rational_part != 0 or self.radical_part != 0

    def __float__(self):
        r = float(self.rational_part)
        if self.radical_part:
            r += float(self.radical_part) * math.sqrt(self.radicand)
        return r

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def make(a, b=0, d=None) -> Number:
    """Build a field element, collapsing to ``Fraction`` when ``b == 0``."""
    if b == 0:
        return Fraction(a)
    return Scalar(a, b, d)


def to_field(x) -> Number:
    """Coerce ints, Fractions, Scalars or literal strings to a field element."""
    if isinstance(x, Scalar):
        return Fraction(x.rational_part) if x.radical_part == 0 else x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot use {x!r} as an exact scalar (floats are not accepted)")


def radicand_of(x):
    return x.radicand if isinstance(x, Scalar) else None


def coords(x) -> tuple[Fraction, Fraction]:
    """Coordinates of ``x`` in the Q-basis {1, sqrt(D)}."""
    if isinstance(x, Scalar):
        return x.rational_part, x.radical_part
    x = to_field(x)
    return x, Fraction(0)


def is_rational(x) -> bool:
    return not isinstance(x, Scalar) or x.radical_part == 0


def sign(x) -> int:
    return x.sign() if isinstance(x, Scalar) else _sign(x)


def common_radicand(values):
    """The single radicand used by ``values`` (None when all rational)."""
    d = None
    for v in values:
        r = radicand_of(v)
        if r is None:
            continue
        if d is None:
            d = r
        elif d != r:
            raise ModeMismatchError(f"sqrt({d}) and sqrt({r}) mixed")
    return d


_SQRT_RE = re.compile(r"^sqrt\(\s*(\d+)\s*\)$")


def _frac(text: str, literal: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad scalar literal {literal!r}") from None


def parse_scalar(text: str, radicand=None) -> Number:
    """Parse ``p/q`` or ``p/q+r/s*sqrt(D)`` (also ``sqrt(D)``, ``-r*sqrt(D)``).

    When ``radicand`` is given, a literal naming another radicand is rejected.
    """
    s = text.replace(" ", "").strip()
    if not s:
        raise ParseError("empty scalar literal")
    if s.lower() == "inf" or "." in s or "e" in s.lower().replace("sqrt", ""):
        raise ParseError(f"bad scalar literal {text!r}")
    k = s.find("sqrt")
    if k < 0:
        return _frac(s, text)
    m = _SQRT_RE.match(s[k:])
    if not m:
        raise ParseError(f"bad scalar literal {text!r}")
    d = int(m.group(1))
    if not is_squarefree(d):
        raise ParseError(f"sqrt({d}): radicand must be square-free and > 1")
    if radicand is not None and d != radicand:
        raise ModeMismatchError(
            f"literal {text!r} uses sqrt({d}), session uses sqrt({radicand})"
        )
    prefix = s[:k]
    if prefix.endswith("*"):
        prefix = prefix[:-1]
        if not prefix or prefix[-1] in "+-":
            raise ParseError(f"bad scalar literal {text!r}")
    cut = max(prefix.rfind("+"), prefix.rfind("-"))
    if cut > 0:
        a_txt, b_txt = prefix[:cut], prefix[cut:]
    else:
        a_txt, b_txt = "", prefix
    a = _frac(a_txt, text) if a_txt else Fraction(0)
    if b_txt in ("", "+"):
        b = Fraction(1)
    elif b_txt == "-":
        b = Fraction(-1)
    else:
        b = _frac(b_txt, text)
    return make(a, b, d)


def _fmt_frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(x) -> str:
    """Canonical literal; inverse of :func:`parse_scalar`."""
    if isinstance(x, Scalar) and x.radical_part != 0:
        a, b = x.rational_part, x.radical_part
        coef = "" if abs(b) == 1 else _fmt_frac(abs(b)) + "*"
        rad = f"{coef}sqrt({x.radicand})"
        if a == 0:
            return ("-" if b < 0 else "") + rad
        return f"{_fmt_frac(a)}{'-' if b < 0 else '+'}{rad}"
    return _fmt_frac(to_field(x))
