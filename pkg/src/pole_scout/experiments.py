"""Reproducible experiment runners behind the ``pole-scout`` command line.

Each runner returns a plain report (dicts, lists, strings, numbers) so the
CLI can dump it as JSON. Reports carry a ``digest`` over everything except
the timestamp: the same configuration and seed always give the same digest.
"""
from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .extrapolation import ALGORITHMS, ExtrapolationError, build_table, min_error_to, rho_table
from .homotopy import fabry_estimate, lemma1_check, lemma2_check, monomial_path_series, two_pole_series
from .scalars import Domain, QComplex, scalar_from_json
from .series import ratio_sequence, series_from_json

__all__ = [
    "COMMANDS",
    "PAPER_POLES",
    "PAPER_DEGREES",
    "ConfigError",
    "ExperimentConfig",
    "ErrorTableReport",
    "format_pole",
    "parse_poles",
    "run_sweep_monomial",
    "run_error_table",
    "run_pole_estimate",
    "run_lemma_check",
    "run_config",
    "report_digest",
    "dump_report",
]

COMMANDS = ("sweep-monomial", "error-table", "pole-estimate", "lemma-check")

PAPER_POLES = (
    QComplex(Fraction(-1, 2), 1),
    QComplex(Fraction(-1, 2), 2),
    QComplex(-1, 4),
    QComplex(-2, 8),
    QComplex(-4, 16),
)
PAPER_DEGREES = (8, 16, 32)

RATIO_COUNTS = ("d+1", "d")


class ConfigError(ValueError):
    """Bad experiment input; the CLI maps it to exit status 2."""


def _timestamp() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def _clean(obj):
    """Make a report JSON-safe: non-finite floats become strings."""
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def report_digest(report: dict) -> str:
    body = {k: v for k, v in report.items() if k != "digest"}
    meta = dict(body.get("metadata", {}))
    meta.pop("timestamp", None)
    body["metadata"] = meta
    blob = json.dumps(_clean(body), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _finish(report: dict) -> dict:
    report = _clean(report)
    report.setdefault("metadata", {})["timestamp"] = _timestamp()
    report["digest"] = report_digest(report)
    return report


def dump_report(report: dict, path: str | Path | None = None) -> str:
    text = json.dumps(_clean(report), sort_keys=True, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def format_pole(P) -> str:
    """``QComplex(-1/2, 2)`` -> ``"-1/2+2I"``."""
    if not isinstance(P, QComplex):
        P = QComplex(P) if not isinstance(P, complex) else None
        if P is None:
            raise TypeError("format_pole expects an exact value")
    re, im = P.re, P.im
    if im == 0:
        return str(re)
    mag = abs(im)
    imag = "I" if mag == 1 else f"{mag}I"
    if re == 0:
        return imag if im > 0 else f"-{imag}"
    return f"{re}{'+' if im > 0 else '-'}{imag}"


def _pole_from(obj) -> QComplex:
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        obj = {"re": obj[0], "im": obj[1]}
    try:
        P = scalar_from_json(obj, Domain.COMPLEX_RATIONAL)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad pole {obj!r}: {exc}") from None
    if P == 0 or P == 1:
        raise ConfigError(f"pole {format_pole(P)} coalesces with t=0 or t=1")
    return P


def parse_poles(data) -> list:
    """Poles from JSON data: a list of ``{"re", "im"}`` objects or pairs."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict) and "poles" in data:
        data = data["poles"]
    if not isinstance(data, list) or not data:
        raise ConfigError("pole list must be a nonempty JSON array")
    return [_pole_from(p) for p in data]


@dataclass
class ExperimentConfig:
    command: str
    parameters: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        p = self.parameters
        if self.command == "sweep-monomial":
            if p.get("q_min", 2) > p.get("q_max", 20) or p.get("q_min", 2) < 2:
                raise ConfigError("q range must be nonempty and start at 2 or above")
        if self.command == "error-table":
            degrees = p.get("degrees", PAPER_DEGREES)
            if not degrees or min(degrees) < 3:
                raise ConfigError("degrees must be nonempty and at least 3")
            if "poles" in p and not _all_exact(p["poles"]):
                p["poles"] = parse_poles(p["poles"])
            if p.get("ratio_count", "d+1") not in RATIO_COUNTS:
                raise ConfigError(f"ratio_count must be one of {RATIO_COUNTS}")
            for alg in p.get("algorithms", ["rho"]):
                if alg not in ALGORITHMS:
                    raise ConfigError(f"unknown algorithm {alg!r}")
        if self.command == "lemma-check" and p.get("trials", 100) < 1:
            raise ConfigError("trial count must be at least 1")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict) or "command" not in data:
            raise ConfigError("config needs a 'command' field")
        return cls(data["command"], dict(data.get("parameters", {})))

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(data)


def _all_exact(values) -> bool:
    return isinstance(values, (list, tuple)) and all(isinstance(v, QComplex) for v in values)


# -- sweep ------------------------------------------------------------------


def run_sweep_monomial(q_min: int = 2, q_max: int = 20, p_values=None) -> dict:
    """Exact rho on the first three ratios (from n = 1) of ``(1 - t)**(p/q)``.

    Every case should extrapolate to exactly 1; anything else is listed
    under ``failures``.
    """
    cases, failures = [], []
    for q in range(q_min, q_max + 1):
        ps = range(1, q) if p_values is None else [p for p in p_values if 1 <= p < q]
        for p in ps:
            r = ratio_sequence(monomial_path_series(p, q, 4), start=1)
            table = rho_table(r.values)
            final = table.columns[-1][-1]
            case = {
                "p": p,
                "q": q,
                "ratios": [str(v) for v in r.values],
                "final": None if final is None else str(final),
            }
            cases.append(case)
            if final != 1:
                failures.append(case)
    return _finish(
        {
            "command": "sweep-monomial",
            "cases": len(cases),
            "failures": failures,
            "ok": not failures,
            "results": cases,
            "metadata": {"domain": Domain.RATIONAL.value, "ratio_start": 1, "ratio_count": 3},
        }
    )


# -- error table --------------------------------------------------------------


@dataclass
class ErrorTableReport:
    """Minimal table errors, ``cells[algorithm][pole_index][degree_index]``."""

    poles: list
    degrees: list
    cells: dict
    metadata: dict

    @property
    def rows(self) -> list:
        return [format_pole(P) for P in self.poles]

    def cell(self, algorithm: str, P, d: int) -> dict:
        i = [format_pole(x) for x in self.poles].index(format_pole(P))
        return self.cells[algorithm][i][self.degrees.index(d)]

    def min_errors(self, algorithm: str = "rho") -> list:
        return [[c["min_error"] for c in row] for row in self.cells[algorithm]]

    def to_dict(self) -> dict:
        report = {
            "command": "error-table",
            "rows": self.rows,
            "columns": list(self.degrees),
            "cells": self.cells,
            "metadata": self.metadata,
        }
        report = _clean(report)
        report["digest"] = report_digest(report)
        return report

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["algorithm", "P"] + [f"d={d}" for d in self.degrees])
        for alg, rows in self.cells.items():
            for label, row in zip(self.rows, rows):
                writer.writerow([alg, label] + [_sci(c["min_error"]) for c in row])
        return buf.getvalue()


def _sci(x: float) -> str:
    return "inf" if math.isinf(x) else f"{x:.1e}"


def _error_cell(P, d: int, algorithm: str, ratio_start: int, ratio_count: str) -> dict:
    m = d + 1 if ratio_count == "d+1" else d
    s = two_pole_series(P, m + ratio_start, Domain.COMPLEX_FLOAT)
    r = ratio_sequence(s, ratio_start)
    try:
        table = build_table(algorithm, r.values, start=ratio_start)
        best = min_error_to(table, 1)
    except ExtrapolationError:
        return {"min_error": math.inf, "column": None, "row": None, "valid_entries": 0}
    return {
        "min_error": best.error,
        "column": best.column,
        "row": best.row,
        "valid_entries": sum(1 for _ in table.entries()),
    }


def run_error_table(
    poles=PAPER_POLES,
    degrees=PAPER_DEGREES,
    algorithms=("rho",),
    ratio_start: int = 0,
    ratio_count: str = "d+1",
) -> ErrorTableReport:
    """Smallest table error against the pole at ``t = 1`` for each ``(P, d)``.

    ``ratio_count="d+1"`` uses ``n = ratio_start .. ratio_start + d``;
    ``"d"`` drops the last ratio.
    """
    poles = list(poles)
    degrees = list(degrees)
    if not poles or not degrees:
        raise ConfigError("pole and degree lists must be nonempty")
    if min(degrees) < 3:
        raise ConfigError("degrees must be at least 3")
    if ratio_count not in RATIO_COUNTS:
        raise ConfigError(f"ratio_count must be one of {RATIO_COUNTS}")
    for alg in algorithms:
        if alg not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {alg!r}")
    cells = {
        alg: [[_error_cell(P, d, alg, ratio_start, ratio_count) for d in degrees] for P in poles]
        for alg in algorithms
    }
    meta = {
        "algorithms": list(algorithms),
        "ratio_start": ratio_start,
        "ratio_count": ratio_count,
        "domain": Domain.COMPLEX_FLOAT.value,
        "timestamp": _timestamp(),
    }
    return ErrorTableReport(poles, degrees, cells, meta)


# -- pole estimate --------------------------------------------------------------


def run_pole_estimate(series_text: str, algorithm: str = "rho", start: int = 0) -> dict:
    """Apply :func:`fabry_estimate` to a series given in its JSON format."""
    if algorithm not in ALGORITHMS:
        raise ConfigError(f"unknown algorithm {algorithm!r}")
    try:
        s = series_from_json(series_text)
        est = fabry_estimate(s, start=start, algorithm=algorithm)
    except (ValueError, ExtrapolationError) as exc:
        raise ConfigError(str(exc)) from exc
    report = {"command": "pole-estimate", "estimate": est.to_dict(), "metadata": {"domain": s.domain.value}}
    return _finish(report)


# -- lemma checks -----------------------------------------------------------------


def _random_sequence(rng: random.Random, length: int) -> list:
    out = []
    while len(out) < length:
        num = rng.randint(-50, 50)
        if num:
            out.append(Fraction(num, rng.randint(1, 50)))
    return out


def lemma1_campaign(trials: int, seed: int, length: int = 8) -> dict:
    rng = random.Random(seed)
    max_gap = 0.0
    max_inter = 0.0
    failures = []
    done = 0
    while done < trials:
        a = _random_sequence(rng, length)
        b = _random_sequence(rng, length)
        n = rng.randint(0, length - 2)
        try:
            res = lemma1_check(a, b, n)
        except (ValueError, ZeroDivisionError):
            # vanishing convolution entry or inner sum; draw again
            continue
        done += 1
        max_gap = max(max_gap, res.gap)
        max_inter = max(max_inter, res.intermediate_gap)
        if res.lhs != res.rhs or res.lhs != res.intermediate:
            failures.append(
                {
                    "a": [str(x) for x in a],
                    "b": [str(x) for x in b],
                    "n": n,
                    "gap": res.gap,
                    "intermediate_gap": res.intermediate_gap,
                }
            )
    return {
        "trials": trials,
        "seed": seed,
        "max_gap": max_gap,
        "max_intermediate_gap": max_inter,
        "failures": failures,
        "ok": not failures,
    }


def lemma2_campaign(denom=(1, 1), poles=(10, 20, 40), m_max: int = 6, top: int | None = None) -> dict:
    """Truncation error of the ``1/P`` expansion for each pole and order."""
    rows = []
    for P in poles:
        errors = [lemma2_check(list(denom), P, m, top=top).error for m in range(m_max + 1)]
        rows.append(
            {
                "P": str(P),
                "errors": errors,
                "strictly_decreasing": all(x > y for x, y in zip(errors, errors[1:])),
            }
        )
    doubling = []
    # error(P) / error(2P) should be at least about 2**m
    for lo in rows:
        for hi in rows:
            if Fraction(hi["P"]) == 2 * Fraction(lo["P"]):
                for m, (e1, e2) in enumerate(zip(lo["errors"], hi["errors"])):
                    factor = math.inf if e2 == 0 else e1 / e2
                    doubling.append(
                        {"from": lo["P"], "to": hi["P"], "m": m, "factor": factor, "ok": factor >= 2**m / 2}
                    )
    ok = all(r["strictly_decreasing"] for r in rows) and all(x["ok"] for x in doubling)
    return {"denominator": [str(c) for c in denom], "rows": rows, "doubling": doubling, "ok": ok}


def run_lemma_check(
    trials: int = 100,
    seed: int = 42,
    lemma2_poles=(10, 20, 40),
    lemma2_denom=(1, 1),
    m_max: int = 6,
) -> dict:
    if trials < 1:
        raise ConfigError("trial count must be at least 1")
    try:
        poles = [Fraction(P) for P in lemma2_poles]
        denom = [Fraction(c) for c in lemma2_denom]
        l2 = lemma2_campaign(denom, poles, m_max)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    l1 = lemma1_campaign(trials, seed)
    return _finish(
        {
            "command": "lemma-check",
            "lemma1": l1,
            "lemma2": l2,
            "ok": l1["ok"] and l2["ok"],
            "metadata": {"domain": Domain.RATIONAL.value},
        }
    )


def run_config(cfg: ExperimentConfig):
    """Dispatch an :class:`ExperimentConfig` to its runner."""
    p = dict(cfg.parameters)
    if cfg.command == "sweep-monomial":
        return run_sweep_monomial(p.get("q_min", 2), p.get("q_max", 20), p.get("p"))
    if cfg.command == "error-table":
        return run_error_table(
            p.get("poles", PAPER_POLES),
            p.get("degrees", PAPER_DEGREES),
            p.get("algorithms", ["rho"]),
            p.get("ratio_start", 0),
            p.get("ratio_count", "d+1"),
        )
    if cfg.command == "pole-estimate":
        if "series" not in p:
            raise ConfigError("pole-estimate needs a 'series' path")
        try:
            text = Path(p["series"]).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read series file: {exc}") from None
        return run_pole_estimate(text, p.get("algorithm", "rho"), p.get("start", 0))
    return run_lemma_check(
        p.get("trials", 100),
        p.get("seed", 42),
        p.get("lemma2_poles", (10, 20, 40)),
        p.get("lemma2_denom", (1, 1)),
        p.get("m_max", 6),
    )
