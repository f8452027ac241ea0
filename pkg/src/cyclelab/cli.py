"""Command line entry point: ``cyclelab {check,spectrum,verify,mine,classify}``.

Exit codes: 0 success, 2 condition not satisfied (``check``), 3 theorem
counterexamples found, 64 usage error, 65 malformed input, 74 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Optional, Sequence

from .conditions import Condition, check_condition
from .cycles import cycle_spectrum
from .formats import (
    Checkpoint,
    ParseError,
    condition_lines,
    format_line,
    parse,
    read_checkpoint,
    record_line,
    spectrum_line,
    summary_line,
    write_atomic,
)
from .verifier import (
    MAIN,
    MINE,
    THEOREM_C,
    CounterexampleRecord,
    EnumerationCursor,
    VerificationSummary,
    classify_extremal,
    full_range,
    sweep,
)

log = logging.getLogger("cyclelab")

EX_OK = 0
EX_UNSATISFIED = 2
EX_COUNTEREXAMPLE = 3
EX_USAGE = 64
EX_DATAERR = 65
EX_IOERR = 74

DEFAULT_CHECKPOINT_EVERY = 1 << 16


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def run_sweep(
    cursor: EnumerationCursor,
    mode: str,
    jobs: int = 1,
    checkpoint: Optional[Path] = None,
    every: int = DEFAULT_CHECKPOINT_EVERY,
) -> VerificationSummary:
    """Sweep ``cursor``, saving a checkpoint after every ``every`` indices.

    An existing checkpoint for the same sweep parameters is resumed; one
    for different parameters is an error.
    """
    if checkpoint is None:
        return sweep(cursor, mode, jobs)
    if every < 1:
        raise ValueError("checkpoint interval must be positive")
    state = read_checkpoint(checkpoint)
    start = cursor.lo
    acc = VerificationSummary(mode, cursor.n, cursor.lo, cursor.lo, cursor.seed)
    if state is not None:
        if (state.theorem, state.n, state.seed, state.lo, state.hi) != (mode, cursor.n, cursor.seed, cursor.lo, cursor.hi):
            raise ValueError(f"checkpoint {checkpoint} belongs to a different sweep")
        if not cursor.lo <= state.next <= cursor.hi:
            raise ValueError(f"checkpoint {checkpoint} has an invalid position")
        start = state.next
        records = tuple(CounterexampleRecord.build(cursor.n, i, cursor.mask_at(i)) for i in state.flagged)
        acc = replace(acc, hi=start, counterexamples=records, **dict(zip(VerificationSummary.COUNT_FIELDS, state.counts)))
        log.info("resuming %s sweep n=%d at index %d", mode, cursor.n, start)
    for lo in range(start, cursor.hi, every):
        part = sweep(replace(cursor, lo=lo, hi=min(cursor.hi, lo + every)), mode, jobs)
        acc = acc.merge(part)
        record = Checkpoint(
            mode, cursor.n, cursor.seed, cursor.lo, cursor.hi, acc.hi, acc.counts(),
            tuple(r.index for r in acc.counterexamples),
        )
        write_atomic(checkpoint, record.to_line() + "\n")
        log.debug("checkpoint at %d/%d", acc.hi, cursor.hi)
    return acc


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def _default_jobs() -> int:
    raw = os.environ.get("CYCLELAB_JOBS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclelab", description="Degree conditions, cycle spectra and exhaustive verification for small digraphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="evaluate a degree condition")
    p.add_argument("file", type=Path)
    p.add_argument("--condition", choices=[c.value for c in Condition], default="c")

    p = sub.add_parser("spectrum", help="list the cycle lengths present")
    p.add_argument("file", type=Path)

    p = sub.add_parser("classify", help="extremal family of a digraph")
    p.add_argument("file", type=Path)

    for name, text in (("verify", "verify a theorem over a range of digraphs"), ("mine", "collect digraphs without an (n-1)-cycle")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--range", type=_parse_range, metavar="LO:HI")
        p.add_argument("--seed", type=int, help="sample masks from this seed instead of enumerating")
        p.add_argument("--samples", type=int, help="number of samples (same as --range 0:K)")
        p.add_argument("--jobs", type=int, default=_default_jobs())
        if name == "verify":
            p.add_argument("--theorem", choices=[MAIN, THEOREM_C], default=MAIN)
            p.add_argument("--checkpoint", type=Path)
            p.add_argument("--checkpoint-every", type=int, default=DEFAULT_CHECKPOINT_EVERY)
        else:
            p.add_argument("--out", type=Path)
    return parser


def _cursor(args) -> EnumerationCursor:
    if args.samples is not None and args.range is not None:
        raise UsageError("--samples and --range are mutually exclusive")
    if args.seed is None and args.samples is not None:
        raise UsageError("--samples needs --seed")
    try:
        if args.range is not None:
            return EnumerationCursor(args.n, args.range[0], args.range[1], args.seed)
        return full_range(args.n, args.seed, args.samples)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _read_digraph(path: Path):
    return parse(path.read_text())


def _cmd_check(args, out) -> int:
    report = check_condition(_read_digraph(args.file), args.condition)
    for line in condition_lines(report):
        print(line, file=out)
    return EX_OK if report.verdict else EX_UNSATISFIED


def _cmd_spectrum(args, out) -> int:
    d = _read_digraph(args.file)
    if d.n < 2:
        raise UsageError("spectrum needs a digraph with n >= 2")
    print(spectrum_line(cycle_spectrum(d)), file=out)
    return EX_OK


def _cmd_classify(args, out) -> int:
    d = _read_digraph(args.file)
    if d.n < 2:
        raise UsageError("classify needs a digraph with n >= 2")
    print(format_line("classification", [("n", d.n), ("classification", classify_extremal(d))]), file=out)
    return EX_OK


def _cmd_verify(args, out) -> int:
    cursor = _cursor(args)
    if args.theorem == MAIN and cursor.n < 4:
        raise UsageError("--theorem main needs n >= 4")
    summary = run_sweep(cursor, args.theorem, max(1, args.jobs), args.checkpoint, args.checkpoint_every)
    print(summary_line(summary), file=out)
    for r in summary.counterexamples:
        print(record_line(r), file=out)
    return EX_OK if summary.verified else EX_COUNTEREXAMPLE


def _cmd_mine(args, out) -> int:
    cursor = _cursor(args)
    if cursor.n < 4:
        raise UsageError("mine needs n >= 4")
    status = EX_OK
    records = sweep(cursor, MINE, max(1, args.jobs)).counterexamples
    n = cursor.n
    lines = []
    for r in records:
        kind = "mined" if (n - 2) in r.spectrum.witnesses else "counterexample"
        if kind == "counterexample":
            status = EX_COUNTEREXAMPLE
        lines.append(record_line(r, kind))
    if args.out is not None:
        with open(args.out, "a") as fh:
            for line in lines:
                fh.write(line + "\n")
        print(format_line("mine", [("n", n), ("lo", cursor.lo), ("hi", cursor.hi), ("seed", cursor.seed), ("records", len(lines)), ("out", args.out)]), file=out)
        for line in lines:
            if line.startswith("kind=counterexample"):
                print(line, file=out)
    else:
        for line in lines:
            print(line, file=out)
    return status


_COMMANDS = {
    "check": _cmd_check,
    "spectrum": _cmd_spectrum,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
    "mine": _cmd_mine,
}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"cyclelab: error: {exc}", file=sys.stderr)
        return EX_USAGE
    except ParseError as exc:
        print(f"cyclelab: {getattr(args, 'file', '')}: {exc}", file=sys.stderr)
        return EX_DATAERR
    except OSError as exc:
        print(f"cyclelab: {exc}", file=sys.stderr)
        return EX_IOERR
    except ValueError as exc:
        print(f"cyclelab: error: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
