"""Series of the two monomial homotopy families, pole estimation, and
numerical checks of the ratio identities behind the extrapolation results.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .extrapolation import ExtrapolationError, build_table, min_error_to
from .scalars import Domain, coerce, common_domain, domain_of, is_zero, scalar_to_json
from .series import (
    PowerSeries,
    RatioSequence,
    SeriesError,
    ZeroCoefficientError,
    binomial_series,
    multiply,
    ratio_sequence,
    scale_argument,
)

__all__ = [
    "PoleEstimate",
    "ExpansionFit",
    "Lemma1Result",
    "Lemma2Result",
    "DivergentExpansionError",
    "monomial_path_series",
    "two_pole_series",
    "fabry_estimate",
    "lemma1_check",
    "lemma2_check",
    "fit_inverse_n_expansion",
]


class DivergentExpansionError(ValueError):
    pass


def _json_scalar(x):
    return None if x is None else scalar_to_json(x)


@dataclass(frozen=True)
class PoleEstimate:
    raw: object
    accelerated: object
    algorithm: str
    location: tuple
    radius: float
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "raw": _json_scalar(self.raw),
            "accelerated": _json_scalar(self.accelerated),
            "algorithm": self.algorithm,
            "location": {"column": self.location[0], "row": self.location[1]},
            "radius": self.radius,
            "diagnostics": self.diagnostics,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


@dataclass(frozen=True)
class ExpansionFit:
    """Least-squares fit ``r_n ~ 1 + sum_k gamma_k / n**k`` over ``[N, M]``."""

    window: tuple
    coefficients: np.ndarray
    residual: float

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def to_dict(self) -> dict:
        return {
            "window": list(self.window),
            "coefficients": [scalar_to_json(complex(g)) for g in self.coefficients],
            "residual": self.residual,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def monomial_path_series(p: int, q: int, d: int, domain=Domain.RATIONAL) -> PowerSeries:
    """Branch with ``x(0) = 1`` of ``x**q = (1 - t)**p``."""
    if p < 1:
        raise SeriesError("p must be at least 1")
    return binomial_series(p, q, d, domain)


def two_pole_series(P, d: int, domain=None) -> PowerSeries:
    """Series of ``sqrt((1 - t)(1 - t/P))``.

    This is the ``x(0) = +1`` branch of ``x**2 = C (1 - t)(P - t)`` with
    ``C = 1/P``; the coefficients come from multiplying the binomial series
    of ``sqrt(1 - t)`` by the same series at argument ``t/P``.
    """
    if domain is None:
        domain = domain_of(P)
        if domain is Domain.RATIONAL:
            domain = Domain.COMPLEX_RATIONAL
    domain = Domain(domain)
    P = coerce(P, domain)
    if is_zero(P) or P == 1:
        raise SeriesError("P must differ from 0 and 1")
    if d < 1:
        raise SeriesError("truncation degree must be at least 1")
    root = binomial_series(1, 2, d, domain)
    return multiply(root, scale_argument(root, 1 / P))


def fabry_estimate(
    s: PowerSeries, start: int = 0, algorithm: str = "rho", limit=None
) -> PoleEstimate:
    """Estimate the nearest singularity as the limit of ``c_n / c_{n+1}``.

    The ratio sequence is accelerated with ``algorithm``; the reported
    value is the last valid entry of the deepest estimate column. Passing
    the true ``limit`` adds the table's minimal error to the diagnostics.
    """
    r = ratio_sequence(s, start)
    if len(r) < 3:
        raise ExtrapolationError(f"need at least 3 ratios, got {len(r)}")
    table = build_table(algorithm, r.values, start=start)
    k, n, value = table.deepest_estimate()
    diagnostics = {
        "ratio_start": start,
        "ratio_count": len(r),
        "columns": len(table.columns),
        "valid_entries": table.valid_count(),
        "invalid_entries": table.invalid_count(),
    }
    if limit is not None:
        try:
            best = min_error_to(table, limit)
            diagnostics["min_error"] = {"error": best.error, "column": best.column, "row": best.row}
        except ExtrapolationError:
            diagnostics["min_error"] = None
    return PoleEstimate(
        raw=r.values[-1],
        accelerated=value,
        algorithm=algorithm,
        location=(k, n),
        radius=float(abs(value)),
        diagnostics=diagnostics,
    )


class Lemma1Result(NamedTuple):
    lhs: object
    rhs: object
    gap: float
    intermediate: object
    intermediate_gap: float

    @property
    def exact_match(self) -> bool:
        return self.lhs == self.rhs and self.lhs == self.intermediate


def lemma1_check(a: Sequence, b: Sequence, n: int) -> Lemma1Result:
    """Compare ``c_n / c_{n+1}`` for ``c = a * b`` with its factored sums.

    ``rhs`` is the form with the ``a_n / a_{n+1}`` factor pulled out,
    ``intermediate`` the plain double sum it is derived from:
    ``sum_k 1 / sum_l (a_l b_{n+1-l}) / (a_k b_{n-k})``.
    """
    if n < 0 or n + 1 >= min(len(a), len(b)):
        raise ValueError(f"index n={n} needs sequences longer than {n + 1}")
    domain = common_domain(list(a[: n + 2]) + list(b[: n + 2]))
    a = [coerce(x, domain) for x in a[: n + 2]]
    b = [coerce(x, domain) for x in b[: n + 2]]
    for name, seq in (("a", a), ("b", b)):
        for i, x in enumerate(seq):
            if is_zero(x):
                raise ZeroCoefficientError(i, name)

    zero = coerce(0, domain)
    c_n = sum((a[k] * b[n - k] for k in range(n + 1)), zero)
    c_n1 = sum((a[l] * b[n + 1 - l] for l in range(n + 2)), zero)
    if is_zero(c_n):
        raise ZeroCoefficientError(n)
    if is_zero(c_n1):
        raise ZeroCoefficientError(n + 1)
    lhs = c_n / c_n1

    lead = a[n] / a[n + 1]
    rhs = zero
    inter = zero
    for k in range(n + 1):
        factored = zero
        plain = zero
        for l in range(n + 2):
            plain = plain + (a[l] * b[n + 1 - l]) / (a[k] * b[n - k])
            factored = factored + lead * (a[l] / a[k]) * (b[n + 1 - l] / b[n - k])
        if is_zero(factored) or is_zero(plain):
            raise ZeroDivisionError(f"inner sum vanishes at k={k}")
        rhs = rhs + 1 / factored
        inter = inter + 1 / plain
    rhs = lead * rhs
    return Lemma1Result(lhs, rhs, float(abs(lhs - rhs)), inter, float(abs(lhs - inter)))


class Lemma2Result(NamedTuple):
    exact: object
    truncated: object
    error: float
    betas: tuple


def lemma2_check(denom_coeffs: Sequence, P, m: int, top: int | None = None) -> Lemma2Result:
    """Expand ``Q = 1 / sum_i a_i P**i`` in powers of ``1/P``.

    ``denom_coeffs`` lists ``a_top, a_{top-1}, ..., a_{-l}`` in descending
    power order; ``top`` defaults to ``len(denom_coeffs) - 1`` (no negative
    powers). ``betas`` holds the coefficients of ``(1/P)**i`` for
    ``i = top .. top + m`` and ``truncated`` is their partial sum.
    """
    if not denom_coeffs:
        raise ValueError("denominator needs at least one coefficient")
    if m < 0:
        raise ValueError("truncation order must be nonnegative")
    top = len(denom_coeffs) - 1 if top is None else top
    domain = common_domain(list(denom_coeffs) + [P])
    a = [coerce(x, domain) for x in denom_coeffs]
    P = coerce(P, domain)
    if is_zero(a[0]):
        raise ValueError("leading coefficient must be nonzero")
    if is_zero(P):
        raise ValueError("P must be nonzero")
    u = 1 / P
    zero = coerce(0, domain)

    # Q = u**top / a_top * 1/(1 + x), x = sum_j e_j u**j
    e = [zero] + [c / a[0] for c in a[1:]]
    x = sum((e[j] * u**j for j in range(1, len(e))), zero)
    if abs(x) >= 1:
        raise DivergentExpansionError(f"expansion divergent at this P (|x| = {float(abs(x)):.3g})")

    # geometric series sum_i (-x)**i, expanded in u and cut at u**m
    width = m + 1
    minus_x = PowerSeries([-(e[j]) if j < len(e) else zero for j in range(width)], domain)
    geom = [zero] * width
    term = PowerSeries([coerce(1, domain)] + [zero] * m, domain)
    for _ in range(width):
        geom = [g + t for g, t in zip(geom, term.coeffs)]
        term = multiply(term, minus_x)
    betas = tuple(g / a[0] for g in geom)

    exact = 1 / sum((c * P ** (top - i) for i, c in enumerate(a)), zero)
    truncated = sum((beta * u ** (top + i) for i, beta in enumerate(betas)), zero)
    return Lemma2Result(exact, truncated, float(abs(exact - truncated)), betas)


def default_window(d: int) -> tuple:
    """``(N, M, K)`` defaults for a ratio sequence from an order-``d`` series."""
    return max(8, d // 4), (3 * d) // 4, 3


def fit_inverse_n_expansion(
    r: RatioSequence, N: int | None = None, M: int | None = None, K: int | None = None
) -> ExpansionFit:
    d = r.stop
    dN, dM, dK = default_window(d)
    N = dN if N is None else N
    M = dM if M is None else M
    K = dK if K is None else K
    if K < 1:
        raise ValueError("expansion order K must be at least 1")
    if N < 1 or M <= N:
        raise ValueError(f"need M > N >= 1, got N={N}, M={M}")
    if M - N + 1 < K + 1:
        raise ValueError(f"window [{N}, {M}] underdetermines {K} coefficients")
    if N < r.start or M >= r.stop:
        raise ValueError(f"window [{N}, {M}] outside ratio indices [{r.start}, {r.stop - 1}]")

    n = np.arange(N, M + 1, dtype=float)
    y = np.array([complex(r.at(i)) for i in range(N, M + 1)]) - 1.0
    A = np.power.outer(1.0 / n, np.arange(1, K + 1)).astype(complex)
    gamma, *_ = np.linalg.lstsq(A, y, rcond=None)
    misfit = A @ gamma - y
    residual = float(np.sqrt(np.mean(np.abs(misfit) ** 2)))
    return ExpansionFit(window=(N, M), coefficients=gamma, residual=residual)
