"""Numeric domains for series coefficients.

Three domains are supported:

* ``rational``          -- :class:`fractions.Fraction`
* ``complex-rational``  -- :class:`QComplex`, a pair of fractions
* ``complex-float``     -- builtin :class:`complex`

Values of all three support ``+ - * /``; :func:`is_zero` gives the
domain-appropriate zero test.
"""
from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Domain",
    "QComplex",
    "I",
    "Scalar",
    "FLOAT_ZERO",
    "coerce",
    "common_domain",
    "domain_of",
    "is_exact",
    "is_zero",
    "magnitude",
    "parse_rational",
    "scalar_to_json",
    "scalar_from_json",
]

# magnitudes below this count as zero in the float domain
FLOAT_ZERO = 1e-300


class Domain(str, Enum):
    RATIONAL = "rational"
    COMPLEX_RATIONAL = "complex-rational"
    COMPLEX_FLOAT = "complex-float"

    @property
    def exact(self) -> bool:
        return self is not Domain.COMPLEX_FLOAT


class QComplex:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QComplex):
            if im != 0:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        self._re = _to_fraction(re)
        self._im = _to_fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    real = re
    imag = im

    def conjugate(self) -> "QComplex":
        return QComplex(self._re, -self._im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self._re * self._re + self._im * self._im

    def __abs__(self) -> float:
        return math.hypot(float(self._re), float(self._im))

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __neg__(self):
        return QComplex(-self._re, -self._im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return QComplex(self._re + other._re, self._im + other._im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return QComplex(self._re - other._re, self._im - other._im)

    def __rsub__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self._re, self._im, other._re, other._im
        return QComplex(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        n = other.norm2()
        if n == 0:
            raise ZeroDivisionError("QComplex division by zero")
        a, b, c, d = self._re, self._im, other._re, other._im
        return QComplex((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return QComplex(1) / (self ** -k)
        out, base = QComplex(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, complex):
            return complex(self) == other
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self._re == other._re and self._im == other._im

    def __hash__(self):
        if self._im == 0:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self):
        return f"QComplex({self._re!s}, {self._im!s})"

    def __str__(self):
        if self._im == 0:
            return str(self._re)
        sign = "-" if self._im < 0 else "+"
        return f"{self._re}{sign}{abs(self._im)}*I"


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        # floats are binary rationals; exact conversion
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational from {type(x).__name__}")


def _lift(x):
    if isinstance(x, QComplex):
        return x
    if isinstance(x, (int, Rational)):
        return QComplex(x)
    return NotImplemented


I = QComplex(0, 1)

Scalar = Union[Fraction, QComplex, complex]


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"``, an integer, or a decimal string exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def domain_of(x) -> Domain:
    if isinstance(x, QComplex):
        return Domain.COMPLEX_RATIONAL
    if isinstance(x, (int, Rational)):
        return Domain.RATIONAL
    if isinstance(x, (float, complex)):
        return Domain.COMPLEX_FLOAT
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def common_domain(values) -> Domain:
    """Smallest domain holding every value (rational < complex-rational < float)."""
    domains = {domain_of(v) for v in values}
    if Domain.COMPLEX_FLOAT in domains:
        return Domain.COMPLEX_FLOAT
    if Domain.COMPLEX_RATIONAL in domains:
        return Domain.COMPLEX_RATIONAL
    return Domain.RATIONAL


def is_exact(x) -> bool:
    return domain_of(x).exact


def coerce(x, domain: Domain | str) -> Scalar:
    """Convert ``x`` into ``domain``, refusing lossy conversions."""
    domain = Domain(domain)
    if domain is Domain.COMPLEX_FLOAT:
        return complex(x)
    if domain is Domain.COMPLEX_RATIONAL:
        if isinstance(x, complex):
            return QComplex(Fraction(x.real), Fraction(x.imag))
        return QComplex(x)
    # rational
    if isinstance(x, QComplex):
        if x.im != 0:
            raise ValueError(f"{x} has a nonzero imaginary part")
        return x.re
    if isinstance(x, complex):
        if x.imag != 0:
            raise ValueError(f"{x} has a nonzero imaginary part")
        return Fraction(x.real)
    return _to_fraction(x)


def is_zero(x) -> bool:
    if isinstance(x, (float, complex)):
        return abs(x) < FLOAT_ZERO
    return x == 0


def magnitude(x) -> float:
    return float(abs(x))


def _num(x: Fraction) -> str:
    return str(x)


def scalar_to_json(x, domain: Domain | str | None = None) -> dict:
    domain = domain_of(x) if domain is None else Domain(domain)
    x = coerce(x, domain)
    if domain is Domain.RATIONAL:
        return {"re": _num(x), "im": "0", "domain": domain.value}
    if domain is Domain.COMPLEX_RATIONAL:
        return {"re": _num(x.re), "im": _num(x.im), "domain": domain.value}
    return {"re": x.real, "im": x.imag, "domain": domain.value}


def scalar_from_json(obj, domain: Domain | str | None = None) -> Scalar:
    """Inverse of :func:`scalar_to_json`.

    ``domain`` overrides the object's own tag; without either the value is
    read as complex-rational when it has an imaginary part, else rational.
    Bare numbers and strings are accepted as real values.
    """
    if isinstance(obj, (int, float, str)):
        obj = {"re": obj, "im": 0}
    if not isinstance(obj, dict) or "re" not in obj:
        raise ValueError(f"malformed scalar: {obj!r}")
    tag = domain if domain is not None else obj.get("domain")
    re, im = obj["re"], obj.get("im", 0)
    if tag is None:
        tag = Domain.COMPLEX_FLOAT if isinstance(re, float) or isinstance(im, float) else None
    if tag is not None and Domain(tag) is Domain.COMPLEX_FLOAT:
        return complex(_float_part(re), _float_part(im))
    q = QComplex(_exact_part(re), _exact_part(im))
    if tag is None:
        tag = Domain.RATIONAL if q.im == 0 else Domain.COMPLEX_RATIONAL
    return coerce(q, tag)


def _float_part(v) -> float:
    if isinstance(v, str):
        try:
            return float(v)
        except ValueError:
            return float(parse_rational(v))
    return float(v)


def _exact_part(v) -> Fraction:
    if isinstance(v, bool):
        raise ValueError("boolean is not a number")
    if isinstance(v, str):
        return parse_rational(v)
    return _to_fraction(v)
