"""Triangular extrapolation tables: rho, theta, Aitken and Richardson.

Every builder works on exact (``Fraction``/``QComplex``) and floating
(``complex``/``float``) sequences alike. A division whose denominator is
zero (exact) or below ``GUARD * max(1, |numerator|)`` (float) does not
raise; the entry is marked invalid, stored as ``None``, and everything
computed from it is invalid too.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple, Sequence

from .scalars import is_exact, scalar_to_json

__all__ = [
    "ALGORITHMS",
    "GUARD",
    "ExtrapolationError",
    "ExtrapolationTable",
    "MinError",
    "rho_table",
    "theta_table",
    "aitken_table",
    "richardson_table",
    "build_table",
    "min_error_to",
]

GUARD = 1e-13

ALGORITHMS = ("rho", "theta", "aitken", "richardson")


class ExtrapolationError(ValueError):
    pass


@dataclass(frozen=True)
class ExtrapolationTable:
    """``columns[k][n]`` is the ``k``-th transform started at index ``n``.

    Invalid entries are ``None`` and flagged ``False`` in ``validity``.
    """

    algorithm: str
    columns: tuple
    validity: tuple
    estimate_columns: tuple

    def entries(self, estimates_only: bool = True, skip_input: bool = True) -> Iterator[tuple]:
        """Yield ``(column, row, value)`` for each valid entry."""
        cols = self.estimate_columns if estimates_only else range(len(self.columns))
        for k in cols:
            if skip_input and k == 0:
                continue
            for n, (v, ok) in enumerate(zip(self.columns[k], self.validity[k])):
                if ok:
                    yield k, n, v

    def valid_count(self) -> int:
        return sum(sum(col) for col in self.validity)

    def invalid_count(self) -> int:
        return sum(len(col) - sum(col) for col in self.validity)

    def deepest_estimate(self) -> tuple | None:
        """Last valid entry of the deepest estimate column that has one.

        Column 0 counts here, so a table whose transforms all degenerate
        falls back to the last input value.
        """
        for k in sorted(self.estimate_columns, reverse=True):
            for n in range(len(self.columns[k]) - 1, -1, -1):
                if self.validity[k][n]:
                    return k, n, self.columns[k][n]
        return None

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "columns": [
                [None if v is None else scalar_to_json(v) for v in col] for col in self.columns
            ],
            "validity": [list(col) for col in self.validity],
            "estimate_columns": list(self.estimate_columns),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class MinError(NamedTuple):
    error: float
    column: int
    row: int


class _Divider:
    """Guarded division shared by the table builders."""

    def __init__(self, seq: Sequence):
        self.exact = all(is_exact(v) for v in seq)

    def __call__(self, num, den):
        if self.exact:
            if den == 0:
                return None
        elif abs(den) < GUARD * max(1.0, abs(num)):
            return None
        return num / den


def _check_length(seq: Sequence, minimum: int, name: str) -> list:
    seq = list(seq)
    if len(seq) < minimum:
        raise ExtrapolationError(f"{name} needs at least {minimum} entries, got {len(seq)}")
    return seq


def _make(algorithm: str, columns: list, estimate_columns) -> ExtrapolationTable:
    return ExtrapolationTable(
        algorithm=algorithm,
        columns=tuple(tuple(c) for c in columns),
        validity=tuple(tuple(v is not None for v in c) for c in columns),
        estimate_columns=tuple(estimate_columns),
    )


def _sub(a, b):
    if a is None or b is None:
        return None
    return a - b


def _add(a, b):
    if a is None or b is None:
        return None
    return a + b


def rho_table(seq: Sequence) -> ExtrapolationTable:
    """Rho algorithm with interpolation nodes ``x(n) = n + 1``.

    ``rho[k][j] = rho[k-2][j+1] + k / (rho[k-1][j+1] - rho[k-1][j])``
    with ``rho[-1] = 0``; the even columns estimate the limit.
    """
    seq = _check_length(seq, 3, "rho")
    div = _Divider(seq)
    cols = [list(seq)]
    for k in range(1, len(seq)):
        prev = cols[k - 1]
        nxt = []
        for j in range(len(prev) - 1):
            den = _sub(prev[j + 1], prev[j])
            step = None if den is None else div(k, den)
            nxt.append(step if k == 1 else _add(cols[k - 2][j + 1], step))
        cols.append(nxt)
    return _make("rho", cols, range(0, len(cols), 2))


def theta_table(seq: Sequence) -> ExtrapolationTable:
    """Brezinski's theta algorithm.

    Odd columns are ``theta[2k+1][n] = theta[2k-1][n+1] + 1/dtheta[2k][n]``,
    even ones ``theta[2k+2][n] = theta[2k][n+1]
    + dtheta[2k][n+1] * dtheta[2k+1][n+1] / d2theta[2k+1][n]``.
    Each even column is three entries shorter than the previous one, so
    the first estimate needs four terms.
    """
    seq = _check_length(seq, 3, "theta")
    div = _Divider(seq)
    cols = [list(seq)]
    odd_prev = None  # theta[-1] == 0
    k = 0
    while True:
        even = cols[2 * k]
        if len(even) < 2:
            break
        odd = []
        for n in range(len(even) - 1):
            den = _sub(even[n + 1], even[n])
            step = None if den is None else div(1, den)
            odd.append(step if odd_prev is None else _add(odd_prev[n + 1], step))
        cols.append(odd)
        if len(odd) < 3:
            break
        new_even = []
        for n in range(len(odd) - 2):
            d_even = _sub(even[n + 2], even[n + 1])
            d_odd = _sub(odd[n + 2], odd[n + 1])
            d2_odd = _sub(d_odd, _sub(odd[n + 1], odd[n]))
            if d_even is None or d_odd is None or d2_odd is None:
                new_even.append(None)
                continue
            step = div(d_even * d_odd, d2_odd)
            new_even.append(_add(even[n + 1], step))
        cols.append(new_even)
        odd_prev = odd
        k += 1
    return _make("theta", cols, range(0, len(cols), 2))


def aitken_table(seq: Sequence) -> ExtrapolationTable:
    """Iterated Aitken delta-squared; every column is an estimate."""
    seq = _check_length(seq, 3, "aitken")
    div = _Divider(seq)
    cols = [list(seq)]
    while len(cols[-1]) >= 3:
        s = cols[-1]
        nxt = []
        for n in range(len(s) - 2):
            d1 = _sub(s[n + 1], s[n])
            d2 = _sub(_sub(s[n + 2], s[n + 1]), d1)
            if d1 is None or d2 is None:
                nxt.append(None)
                continue
            step = div(d1 * d1, d2)
            nxt.append(_sub(s[n], step))
        cols.append(nxt)
    return _make("aitken", cols, range(len(cols)))


def richardson_table(seq: Sequence, start: int = 0) -> ExtrapolationTable:
    """Polynomial extrapolation to zero in the variable ``x_n = 1/(n + start + 1)``.

    ``T[k][n] = (x[n+k] T[k-1][n] - x[n] T[k-1][n+1]) / (x[n+k] - x[n])``.
    """
    seq = _check_length(seq, 2, "richardson")
    exact = all(is_exact(v) for v in seq)
    if exact:
        x = [Fraction(1, n + start + 1) for n in range(len(seq))]
    else:
        x = [1.0 / (n + start + 1) for n in range(len(seq))]
    cols = [list(seq)]
    for k in range(1, len(seq)):
        prev = cols[-1]
        nxt = []
        for n in range(len(prev) - 1):
            if prev[n] is None or prev[n + 1] is None:
                nxt.append(None)
                continue
            nxt.append((x[n + k] * prev[n] - x[n] * prev[n + 1]) / (x[n + k] - x[n]))
        cols.append(nxt)
    return _make("richardson", cols, range(len(cols)))


_BUILDERS = {
    "rho": rho_table,
    "theta": theta_table,
    "aitken": aitken_table,
    "richardson": richardson_table,
}


def build_table(algorithm: str, seq: Sequence, start: int = 0) -> ExtrapolationTable:
    """Dispatch by name; ``start`` only affects Richardson's nodes."""
    try:
        builder = _BUILDERS[algorithm]
    except KeyError:
        raise ExtrapolationError(
            f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}"
        ) from None
    if algorithm == "richardson":
        return builder(seq, start=start)
    return builder(seq)


def min_error_to(table: ExtrapolationTable, limit) -> MinError:
    """Smallest ``|entry - limit|`` over valid estimate entries past column 0."""
    best = None
    for k, n, v in table.entries():
        err = float(abs(v - limit))
        if best is None or err < best.error:
            best = MinError(err, k, n)
    if best is None:
        raise ExtrapolationError(f"{table.algorithm} table has no valid estimates")
    return best
