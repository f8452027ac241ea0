"""Text formats: digraph input, report lines and sweep checkpoints.

Digraph input comes in two grammars. The edge list::

    # comment
    n 3
    0 1
    1 2

and the one-line mask form ``mask <n> <integer>``, whose bit
``u*(n-1) + v - [v > u]`` encodes the arc ``u -> v``.

Reports are one record per line, ``key=value`` pairs separated by single
spaces, always in the same key order. Lists are comma-joined, cycles are
dash-joined vertex sequences, and witness maps read ``len:cycle;len:cycle``.
"""
from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .conditions import ConditionReport
from .cycles import SpectrumReport
from .digraph import Digraph
from .verifier import CounterexampleRecord, VerificationSummary


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _int(token: str, no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", no) from None


def parse(text: str) -> Digraph:
    """Parse an edge-list or mask digraph description."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, header = lines[0]
    fields = header.split()
    if fields[0] == "mask":
        if len(fields) != 3:
            raise ParseError("expected 'mask <n> <integer>'", no)
        if len(lines) > 1:
            raise ParseError("unexpected content after mask line", lines[1][0])
        n = _int(fields[1], no, "order")
        mask = _int(fields[2], no, "mask")
        if n < 1:
            raise ParseError(f"order must be positive, got {n}", no)
        if not 0 <= mask < 1 << (n * (n - 1)):
            raise ParseError(f"mask {mask} does not fit in {n * (n - 1)} bits", no)
        return Digraph.from_mask(n, mask)
    if fields[0] != "n" or len(fields) != 2:
        raise ParseError("expected header 'n <order>' or 'mask <n> <integer>'", no)
    n = _int(fields[1], no, "order")
    if n < 1:
        raise ParseError(f"order must be positive, got {n}", no)
    arcs = []
    seen = set()
    for no, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", no)
        u, v = (_int(p, no, "vertex") for p in parts)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"arc {u} {v} out of range for n={n}", no)
        if u == v:
            raise ParseError(f"loop at vertex {u}", no)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc {u} {v}", no)
        seen.add((u, v))
        arcs.append((u, v))
    return Digraph(n, arcs)


def emit_edges(d: Digraph) -> str:
    return "\n".join([f"n {d.n}"] + [f"{u} {v}" for u, v in d.arcs()]) + "\n"


def emit_mask(d: Digraph) -> str:
    return f"mask {d.n} {d.to_mask()}\n"


# ---- report lines ----------------------------------------------------------


def _value(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v) if v else "-"
    return str(v)


def format_line(kind: str, fields: Iterable[tuple[str, object]]) -> str:
    return " ".join([f"kind={kind}"] + [f"{k}={_value(v)}" for k, v in fields])


def parse_line(line: str) -> dict[str, str]:
    out = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep:
            raise ParseError(f"malformed field {token!r}")
        out[key] = value
    return out


def cycle_text(c) -> str:
    return "-".join(str(v) for v in c)


def witnesses_text(spectrum: SpectrumReport) -> str:
    if not spectrum.witnesses:
        return "-"
    return ";".join(f"{k}:{cycle_text(spectrum.witnesses[k])}" for k in spectrum.lengths)


def condition_lines(report: ConditionReport) -> list[str]:
    lines = [
        format_line(
            "condition",
            [
                ("condition", report.condition.value),
                ("n", report.n),
                ("verdict", report.verdict),
                ("vacuous", report.vacuous),
                ("pairs", len(report.pairs)),
                ("failures", len(report.failures)),
            ],
        )
    ]
    for p in report.pairs:
        fields = [
            ("condition", report.condition.value),
            ("x", p.x),
            ("y", p.y),
            ("witness", p.witness),
            ("direction", p.direction),
        ]
        fields += [(label, f"{value}/{threshold}") for label, value, threshold in p.checks]
        fields.append(("passed", p.passed))
        lines.append(format_line("pair", fields))
    return lines


def spectrum_line(spectrum: SpectrumReport) -> str:
    return format_line(
        "spectrum",
        [
            ("n", spectrum.n),
            ("lengths", spectrum.lengths),
            ("hamiltonian", spectrum.is_hamiltonian),
            ("pancyclic", spectrum.is_pancyclic),
            ("witnesses", witnesses_text(spectrum)),
        ],
    )


def record_line(record: CounterexampleRecord, kind: str = "counterexample") -> str:
    return format_line(
        kind,
        [
            ("n", record.digraph.n),
            ("index", record.index),
            ("mask", record.mask),
            ("condition_c", record.condition.verdict),
            ("vacuous", record.condition.vacuous),
            ("lengths", record.spectrum.lengths),
            ("classification", record.classification),
            ("witnesses", witnesses_text(record.spectrum)),
        ],
    )


def summary_line(summary: VerificationSummary) -> str:
    fields = [
        ("theorem", summary.theorem),
        ("n", summary.n),
        ("mode", "sampled" if summary.seed is not None else "exhaustive"),
        ("seed", summary.seed),
        ("lo", summary.lo),
        ("hi", summary.hi),
    ]
    fields += [(f, getattr(summary, f)) for f in summary.COUNT_FIELDS]
    fields += [("counterexamples", len(summary.counterexamples)), ("verified", summary.verified)]
    return format_line("summary", fields)


# ---- checkpoint ------------------------------------------------------------


@dataclass(frozen=True)
class Checkpoint:
    """Resumable state of a sweep: parameters, next index, partial counts."""

    theorem: str
    n: int
    seed: Optional[int]
    lo: int
    hi: int
    next: int
    counts: tuple[int, ...]
    flagged: tuple[int, ...] = ()

    def to_line(self) -> str:
        fields = [
            ("theorem", self.theorem),
            ("n", self.n),
            ("seed", self.seed),
            ("lo", self.lo),
            ("hi", self.hi),
            ("next", self.next),
        ]
        fields += list(zip(VerificationSummary.COUNT_FIELDS, self.counts))
        fields.append(("flagged", self.flagged))
        return format_line("checkpoint", fields)

    @classmethod
    def from_line(cls, line: str) -> Checkpoint:
        f = parse_line(line)
        if f.get("kind") != "checkpoint":
            raise ParseError("not a checkpoint record")
        try:
            seed = None if f["seed"] == "-" else int(f["seed"])
            flagged = () if f["flagged"] == "-" else tuple(int(x) for x in f["flagged"].split(","))
            return cls(
                theorem=f["theorem"],
                n=int(f["n"]),
                seed=seed,
                lo=int(f["lo"]),
                hi=int(f["hi"]),
                next=int(f["next"]),
                counts=tuple(int(f[k]) for k in VerificationSummary.COUNT_FIELDS),
                flagged=flagged,
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad checkpoint record: {exc}") from None


def write_atomic(path: Path, text: str) -> None:
    """Replace ``path`` with ``text`` via a temporary file in the same directory."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_checkpoint(path: Path) -> Optional[Checkpoint]:
    path = Path(path)
    if not path.exists():
        return None
    text = path.read_text().strip()
    if not text:
        return None
    return Checkpoint.from_line(text)
