"""Plain-text summary tables and raw run CSVs.

Summary tables start with the header ``x med lq uq`` and hold one
whitespace-separated row per swept value, ready for pgfplots or gnuplot.
Rows whose quartiles leave out missed runs get a ``#`` comment line with
the hit count just above them.
"""

from __future__ import annotations

import csv
import io
import math
import os
from typing import Iterable, Sequence

from .harness import RunRecord, SummaryRow

SUMMARY_HEADER = "x med lq uq"
RAW_HEADER = ("run", "seed", "hit", "evals_at_hit", "evals_total", "param")


class TableWriteError(OSError):
    pass


def format_number(v) -> str:
    """Shortest round-trip decimal; integral values print without ``.0``."""
    if v is None:
        return "nan"
    f = float(v)
    if math.isnan(f):
        return "nan"
    if f.is_integer() and abs(f) < 2 ** 53:
        return str(int(f))
    return repr(f)


def format_summary_table(rows: Sequence[SummaryRow]) -> str:
    xs = [r.x for r in rows]
    if xs != sorted(xs):
        raise ValueError("summary rows must be sorted by x")
    lines = [SUMMARY_HEADER]
    for r in rows:
        if r.hits < r.runs or r.absent:
            lines.append(f"# x={format_number(r.x)} hits={r.hits} runs={r.runs}")
        lines.append(" ".join(format_number(v) for v in (r.x, r.med, r.lq, r.uq)))
    return "\n".join(lines) + "\n"


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    except OSError as err:
        raise TableWriteError(f"cannot write {os.fspath(path)}: {err.strerror or err}") from err


def write_summary_table(rows: Sequence[SummaryRow], path) -> None:
    _write_text(path, format_summary_table(rows))


def read_summary_table(path) -> list[tuple[float, float, float, float]]:
    with open(path, encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != SUMMARY_HEADER:
        raise ValueError(f"{path}: missing '{SUMMARY_HEADER}' header")
    rows = []
    for line in lines[1:]:
        if line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 4:
            raise ValueError(f"{path}: expected 4 fields, got {line!r}")
        rows.append(tuple(float(f) for f in fields))
    return rows


def format_raw(records: Iterable[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(RAW_HEADER)
    for r in sorted(records, key=lambda r: r.run_index):
        writer.writerow([r.run_index, r.seed, "true" if r.hit else "false",
                         "" if r.evals_at_hit is None else r.evals_at_hit,
                         r.evals_total, r.param])
    return buf.getvalue()


def export_raw(records: Iterable[RunRecord], path) -> None:
    _write_text(path, format_raw(records))


def parse_raw(text: str) -> list[RunRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != RAW_HEADER:
        raise ValueError(f"raw CSV header must be {','.join(RAW_HEADER)}")
    out = []
    for row in reader:
        run, seed, hit, at_hit, total, param = row
        if hit not in ("true", "false"):
            raise ValueError(f"bad hit field {hit!r}")
        out.append(RunRecord(int(run), int(seed), hit == "true",
                             int(at_hit) if at_hit else None, int(total), int(param)))
    return out


def read_raw(path) -> list[RunRecord]:
    with open(path, encoding="ascii") as fh:
        return parse_raw(fh.read())
