"""Command-line entry point.

Three subcommands: ``generate`` writes a named algebra family to JSON,
``check`` runs theorem suites over an algebra document, and ``smear``
builds a smearing kernel for a stored observable and verifies the
integral law under it.

Exit codes: 0 when every record passes, 1 when any check fails, 2 for
unusable input (parse errors, size limits, I/O problems).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import (
    EmptyStateSpace,
    NonSeparatingStates,
    ParseError,
    RdpRequired,
    SizeLimitExceeded,
)
from .generators import generate, parse_family_tokens
from .observables import smear, verify_smearing
from .report import FAIL, PASS, Record, exit_code, render, sort_records
from .representation import canonical_representation
from .serialize import (
    algebra_from_obj,
    algebra_to_obj,
    dumps,
    loads,
    observable_from_obj,
)
from .states import seeded_mixtures
from .suites import SUITE_NAMES, check_document, resolve_suites

DEFAULT_MAX_SIZE = 4096


def resolve_max_size(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("EFFECTA_MAX_SIZE")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"EFFECTA_MAX_SIZE is not an integer: {env!r}") from exc
    return DEFAULT_MAX_SIZE


def _read_document(path: str):
    return loads(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def _instance_id(path: str) -> str:
    return Path(path).stem


def cmd_generate(args) -> int:
    spec = parse_family_tokens(args.family)
    M = generate(spec, max_size=resolve_max_size(args.max_size))
    _emit(dumps(algebra_to_obj(M)), args.output)
    return 0


def cmd_check(args) -> int:
    doc = _read_document(args.input)
    records = check_document(doc, _instance_id(args.input),
                             resolve_suites(args.suite), args.seed,
                             max_size=resolve_max_size(args.max_size))
    records = sort_records(records)
    _emit(render(records, args.format), args.output)
    return exit_code(records)


def cmd_smear(args) -> int:
    doc = _read_document(args.input)
    instance = _instance_id(args.input)
    M = algebra_from_obj(doc, max_size=resolve_max_size(args.max_size))
    x = observable_from_obj(M, _read_document(args.observable))
    records = [Record("smearing", instance, "observable-valid", PASS,
                      detail=f"{len(x.support)} outcome points")]
    try:
        rep = canonical_representation(M)
    except (RdpRequired, EmptyStateSpace, NonSeparatingStates) as exc:
        records.append(Record("smearing", instance,
                              "canonical-representation", FAIL,
                              detail=str(exc)))
        records = sort_records(records)
        _emit(render(records, args.format), args.output)
        return exit_code(records)

    kernel = smear(rep, x)
    records.append(Record(
        "smearing", instance, "kernel-measurable", PASS,
        detail=f"{len(kernel.functions)} outcome sets"))
    states = list(rep.polytope.vertices) + seeded_mixtures(
        rep.polytope, 10, args.seed)
    first_bad = None
    for i, m in enumerate(states):
        rr = verify_smearing(rep, x, kernel, m)
        if not rr.ok and first_bad is None:
            key = next(k for k, v in rr.residuals.items() if v != 0)
            first_bad = [i, sorted(str(x.support[j]) for j in key)]
    records.append(Record("smearing", instance, "eq-residual-zero",
                          PASS if first_bad is None else FAIL,
                          witness=first_bad,
                          detail=f"{len(states)} states"))
    records = sort_records(records)
    _emit(render(records, args.format), args.output)
    return exit_code(records)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effecta",
        description="Exact checks for effect algebras, their states, "
                    "smearings, and spectral measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a named algebra family to JSON")
    gen.add_argument("family", nargs="+",
                     help="family tokens, e.g. 'chain 3', 'boolean 2', "
                          "'interval 1 2', 'product chain2 chain3', "
                          "'horizontal-sum boolean2 boolean2'")
    gen.add_argument("--output", help="destination file (default: stdout)")
    gen.add_argument("--max-size", type=int, default=None,
                     help="element-count budget (default: EFFECTA_MAX_SIZE "
                          f"or {DEFAULT_MAX_SIZE})")
    gen.set_defaults(func=cmd_generate)

    chk = sub.add_parser("check", help="run theorem suites over an algebra")
    chk.add_argument("--input", required=True, help="algebra document (JSON)")
    chk.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    chk.add_argument("--seed", type=int, default=0,
                     help="seed for mixture states (default 0)")
    chk.add_argument("--max-size", type=int, default=None)
    chk.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    chk.add_argument("--output", help="destination file (default: stdout)")
    chk.set_defaults(func=cmd_check)

    sm = sub.add_parser("smear",
                        help="verify the integral law for one observable")
    sm.add_argument("--input", required=True, help="algebra document (JSON)")
    sm.add_argument("--observable", required=True,
                    help="observable document (JSON)")
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--max-size", type=int, default=None)
    sm.add_argument("--format", choices=("jsonl", "text"), default="jsonl")
    sm.add_argument("--output", help="destination file (default: stdout)")
    sm.set_defaults(func=cmd_smear)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, SizeLimitExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
