"""``pole-scout`` command line.

Exit status: 0 on success, 1 when a sweep or lemma check fails,
2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .experiments import (
    PAPER_DEGREES,
    PAPER_POLES,
    ConfigError,
    ErrorTableReport,
    ExperimentConfig,
    dump_report,
    parse_poles,
    run_config,
    run_error_table,
    run_lemma_check,
    run_pole_estimate,
    run_sweep_monomial,
)
from .extrapolation import ALGORITHMS

EXIT_OK, EXIT_FAIL, EXIT_BAD_INPUT = 0, 1, 2


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _str_list(text: str) -> list:
    return [x.strip() for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pole-scout", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep-monomial", help="exact rho on (1-t)^(p/q) for all p < q")
    sw.add_argument("--q-min", type=int, default=2)
    sw.add_argument("--q-max", type=int, default=20)
    sw.add_argument("--p", type=_int_list, default=None, help="restrict to these p values")
    sw.add_argument("--out", help="write the JSON report here instead of stdout")

    et = sub.add_parser("error-table", help="minimal rho-table errors for two-pole series")
    et.add_argument("--poles", help="JSON file with a list of {re, im} poles (default: paper rows)")
    et.add_argument("--degrees", type=_int_list, default=list(PAPER_DEGREES))
    et.add_argument("--algorithm", choices=ALGORITHMS, default="rho")
    et.add_argument("--all-algorithms", action="store_true")
    et.add_argument("--ratio-start", type=int, default=0)
    et.add_argument("--ratio-count", choices=("d+1", "d"), default="d+1")
    et.add_argument("--out", help="CSV output path; the JSON report goes next to it")
    et.add_argument("--json-out", help="explicit JSON output path")

    pe = sub.add_parser("pole-estimate", help="accelerated ratio estimate of the nearest pole")
    pe.add_argument("--series", required=True, help="series JSON file")
    pe.add_argument("--algorithm", choices=ALGORITHMS, default="rho")
    pe.add_argument("--start", type=int, default=0)
    pe.add_argument("--out")

    lc = sub.add_parser("lemma-check", help="randomized checks of the ratio identities")
    lc.add_argument("--trials", type=int, default=100)
    lc.add_argument("--seed", type=int, default=42)
    lc.add_argument("--lemma2-poles", type=_str_list, default=["10", "20", "40"])
    lc.add_argument("--lemma2-denom", type=_str_list, default=["1", "1"])
    lc.add_argument("--m-max", type=int, default=6)
    lc.add_argument("--out")

    rc = sub.add_parser("run", help="run an experiment described by a JSON config file")
    rc.add_argument("config")
    rc.add_argument("--out")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_table(report: ErrorTableReport, out: str | None, json_out: str | None) -> None:
    if out:
        Path(out).write_text(report.to_csv())
        json_out = json_out or str(Path(out).with_suffix(".json"))
    else:
        sys.stdout.write(report.to_csv())
    if json_out:
        dump_report(report.to_dict(), json_out)


def _dispatch(args) -> int:
    if args.command == "sweep-monomial":
        report = run_sweep_monomial(args.q_min, args.q_max, args.p)
        _emit(dump_report(report), args.out)
        if not report["ok"]:
            print(f"{len(report['failures'])} of {report['cases']} cases did not return 1", file=sys.stderr)
        return EXIT_OK if report["ok"] else EXIT_FAIL

    if args.command == "error-table":
        poles = PAPER_POLES
        if args.poles:
            try:
                poles = parse_poles(Path(args.poles).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError(f"cannot read poles: {exc}") from None
        algorithms = list(ALGORITHMS) if args.all_algorithms else [args.algorithm]
        report = run_error_table(poles, args.degrees, algorithms, args.ratio_start, args.ratio_count)
        _emit_table(report, args.out, args.json_out)
        return EXIT_OK

    if args.command == "pole-estimate":
        try:
            text = Path(args.series).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read series file: {exc}") from None
        report = run_pole_estimate(text, args.algorithm, args.start)
        _emit(dump_report(report), args.out)
        return EXIT_OK

    if args.command == "lemma-check":
        report = run_lemma_check(
            args.trials, args.seed, args.lemma2_poles, args.lemma2_denom, args.m_max
        )
        _emit(dump_report(report), args.out)
        return EXIT_OK if report["ok"] else EXIT_FAIL

    cfg = ExperimentConfig.from_file(args.config)
    result = run_config(cfg)
    if isinstance(result, ErrorTableReport):
        _emit_table(result, args.out, None)
        return EXIT_OK
    _emit(dump_report(result), args.out)
    return EXIT_OK if result.get("ok", True) else EXIT_FAIL


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"pole-scout: error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
