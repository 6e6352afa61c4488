"""Command-line front end.

    qcoinv verify interior --m 2 --n 2 --t 1 --dmax 4 --format json
    qcoinv verify slr --n 4 --r 2 --dmax 4
    qcoinv verify conjugation --n 2 --dmax 6 --lambda 3/2
    qcoinv baseline conjugation --n 3 --dmax 3
    qcoinv selftest --seed 42

Exit status: 0 when every check passes, 1 when a verification check fails,
2 on usage errors or when a component exceeds the size ceiling.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .exactnum import parse_rational
from .fft import CeilingExceeded, ExperimentParams, Report, classical_baseline, verify
from .selftest import run_suites

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_SHAPE = {"interior": ("m", "n", "t"), "slr": ("n", "r"), "conjugation": ("n",)}
_DEBUG = {"debug_flip_row": "flip-row", "debug_flip_cross": "flip-cross", "debug_antipode_sign": "antipode-sign"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    experiment: Optional[ExperimentParams] = None
    out: Optional[str] = None
    format: str = "json"
    seed: int = 0
    corrupt: frozenset = field(default_factory=frozenset)


def _rational(text: str):
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational literal: {text!r}") from exc


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "markdown"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    for flag in _DEBUG:
        p.add_argument("--" + flag.replace("_", "-"), dest=flag, action="store_true", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcoinv", description="Exact coinvariant checks for quantum matrix algebras.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("verify", "run an experiment"), ("baseline", "rerun an experiment at q = 1 and compare")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("kind", choices=tuple(_SHAPE))
        for dim in ("m", "n", "t", "r"):
            p.add_argument(f"--{dim}", type=int)
        p.add_argument("--dmax", type=int, required=True)
        p.add_argument("--ceiling", type=int, help="largest graded component allowed (default 4000, env QCOINV_CEILING)")
        p.add_argument(
            "--lambda", dest="lambdas", type=_rational, action="append", default=[],
            help="extra specialization point q = LAMBDA (repeatable, e.g. 3/2)",
        )
        _add_common(p)
    p = sub.add_parser("selftest", help="run the property suites")
    _add_common(p)
    return parser


def parse_config(argv: Sequence[str]) -> RunConfig:
    args = build_parser().parse_args(argv)
    corrupt = frozenset(v for k, v in _DEBUG.items() if getattr(args, k, False))
    cfg = RunConfig(args.command, out=args.out, format=args.format, seed=args.seed, corrupt=corrupt)
    if args.command == "selftest":
        return cfg
    names = _SHAPE[args.kind]
    missing = [f"--{k}" for k in names if getattr(args, k) is None]
    if missing:
        raise UsageError(f"{args.kind} needs {' '.join(missing)}")
    extra = [f"--{k}" for k in ("m", "n", "t", "r") if k not in names and getattr(args, k) is not None]
    if extra:
        raise UsageError(f"{args.kind} does not take {' '.join(extra)}")
    try:
        cfg.experiment = ExperimentParams(
            args.kind,
            tuple(getattr(args, k) for k in names),
            args.dmax,
            lambdas=tuple(args.lambdas),
            ceiling=args.ceiling,
            corrupt=corrupt,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(rep: Report, fmt: str) -> str:
    return rep.dumps() if fmt == "json" else rep.markdown()


def run(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    except UsageError as exc:
        print(f"qcoinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if cfg.command == "selftest":
        results = run_suites(cfg.seed, cfg.corrupt)
        lines = [r.line() for r in results]
        for r in results:
            lines += [f"  failed: {label}" for label in r.failures[:5]]
        ok = all(r.ok for r in results)
        lines.append(f"selftest: {'pass' if ok else 'fail'}")
        _emit("\n".join(lines) + "\n", cfg.out)
        return EXIT_OK if ok else EXIT_FAIL

    try:
        rep = verify(cfg.experiment) if cfg.command == "verify" else classical_baseline(cfg.experiment)
    except CeilingExceeded as exc:
        print(f"qcoinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(_render(rep, cfg.format), cfg.out)
    return EXIT_OK if rep.verdict else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
