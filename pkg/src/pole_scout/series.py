"""Truncated power series over the exact and floating coefficient domains."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .scalars import (
    Domain,
    Scalar,
    coerce,
    common_domain,
    domain_of,
    is_zero,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "SeriesError",
    "ZeroCoefficientError",
    "PowerSeries",
    "RatioSequence",
    "binomial_series",
    "scale_argument",
    "multiply",
    "ratio_sequence",
    "evaluate",
    "series_to_json",
    "series_from_json",
]


class SeriesError(ValueError):
    pass


class ZeroCoefficientError(SeriesError):
    """A coefficient that must be nonzero is (numerically) zero."""

    def __init__(self, index: int, name: str = "c"):
        self.index = index
        super().__init__(f"coefficient {name}_{index} is zero")


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients ``c_0 .. c_d`` of a series truncated at order ``d``."""

    coeffs: tuple
    domain: Domain

    def __init__(self, coeffs: Iterable, domain: Domain | str | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        if domain is None:
            domain = common_domain(coeffs)
        domain = Domain(domain)
        object.__setattr__(self, "coeffs", tuple(coerce(c, domain) for c in coeffs))
        object.__setattr__(self, "domain", domain)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def truncate(self, d: int) -> "PowerSeries":
        if not 0 <= d <= self.order:
            raise SeriesError(f"cannot truncate order {self.order} series to {d}")
        return PowerSeries(self.coeffs[: d + 1], self.domain)

    def astype(self, domain: Domain | str) -> "PowerSeries":
        return PowerSeries(self.coeffs, domain)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return multiply(self, other)


@dataclass(frozen=True)
class RatioSequence:
    """``values[j] = c_{start+j} / c_{start+j+1}``."""

    values: tuple
    start: int

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]

    def at(self, n: int):
        """Ratio ``c_n / c_{n+1}`` by absolute index ``n``."""
        j = n - self.start
        if not 0 <= j < len(self.values):
            raise IndexError(f"ratio index {n} outside [{self.start}, {self.stop - 1}]")
        return self.values[j]

    @property
    def stop(self) -> int:
        return self.start + len(self.values)

    @property
    def indices(self) -> range:
        return range(self.start, self.stop)


def binomial_series(p: int, q: int, d: int, domain: Domain | str = Domain.RATIONAL) -> PowerSeries:
    """Degree-``d`` truncation of ``(1 - t)**(p/q)``.

    Uses ``a_{n+1} = a_n (n - p/q) / (n + 1)``, which is the falling
    factorial formula for the derivatives divided by ``n!``.
    """
    if q == 0:
        raise SeriesError("q must be nonzero")
    if q < 0:
        raise SeriesError("q must be positive")
    if d < 0:
        raise SeriesError("truncation degree must be nonnegative")
    domain = Domain(domain)
    r = Fraction(p, q)
    coeffs = [Fraction(1)]
    for n in range(d):
        coeffs.append(coeffs[-1] * (n - r) / (n + 1))
    if domain.exact:
        return PowerSeries(coeffs, domain)
    # float recurrence, so the float domain is not just rounded exact values
    rf = p / q
    fc = [1.0 + 0j]
    for n in range(d):
        fc.append(fc[-1] * (n - rf) / (n + 1))
    return PowerSeries(fc, domain)


def scale_argument(s: PowerSeries, factor) -> PowerSeries:
    """Series of ``s(factor * t)``: coefficient ``k`` times ``factor**k``."""
    factor = coerce(factor, s.domain)
    if is_zero(factor):
        raise SeriesError("scale factor must be nonzero")
    out, power = [], coerce(1, s.domain)
    for c in s.coeffs:
        out.append(c * power)
        power = power * factor
    return PowerSeries(out, s.domain)


def multiply(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product truncated at the common order."""
    if a.domain is not b.domain:
        raise SeriesError(f"domain mismatch: {a.domain.value} vs {b.domain.value}")
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")
    ac, bc = a.coeffs, b.coeffs
    zero = coerce(0, a.domain)
    out = []
    for n in range(len(ac)):
        acc = zero
        for k in range(n + 1):
            acc = acc + ac[k] * bc[n - k]
        out.append(acc)
    return PowerSeries(out, a.domain)


def ratio_sequence(s: PowerSeries, start: int = 0) -> RatioSequence:
    if not 0 <= start < s.order:
        raise SeriesError(f"start index {start} leaves no ratios in an order {s.order} series")
    c = s.coeffs
    for n in range(start, s.order + 1):
        if is_zero(c[n]):
            raise ZeroCoefficientError(n)
    return RatioSequence(tuple(c[n] / c[n + 1] for n in range(start, s.order)), start)


def evaluate(s: PowerSeries, t) -> Scalar:
    """Horner evaluation of the truncated polynomial at ``t``."""
    if domain_of(t) is not s.domain:
        if s.domain is Domain.COMPLEX_FLOAT or (
            s.domain is Domain.COMPLEX_RATIONAL and domain_of(t) is Domain.RATIONAL
        ):
            t = coerce(t, s.domain)
        else:
            raise SeriesError(f"cannot evaluate a {s.domain.value} series at {t!r}")
    acc = coerce(0, s.domain)
    for c in reversed(s.coeffs):
        acc = acc * t + c
    return acc


def series_to_json(s: PowerSeries) -> str:
    return json.dumps([scalar_to_json(c, s.domain) for c in s.coeffs])


def series_from_json(text: str, domain: Domain | str | None = None) -> PowerSeries:
    """Parse a JSON array of coefficient objects.

    Every coefficient must carry the same domain tag, unless ``domain``
    forces one.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, list) or not data:
        raise SeriesError("series JSON must be a nonempty array")
    if domain is None:
        tags = {c.get("domain") for c in data if isinstance(c, dict)}
        tags.discard(None)
        if len(tags) > 1:
            raise SeriesError(f"mixed coefficient domains: {sorted(tags)}")
        domain = tags.pop() if tags else None
    try:
        coeffs = [scalar_from_json(c, domain) for c in data]
    except (ValueError, TypeError) as exc:
        raise SeriesError(str(exc)) from exc
    return PowerSeries(coeffs, domain)
