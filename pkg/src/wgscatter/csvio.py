"""Deterministic tabular output.

One dialect for every data file: '#'-prefixed "key = value" metadata
lines, a comma-separated header row, then data rows. Floats are printed
with 12 significant digits; no timestamps or environment-dependent
content ever enters a data file, so identical runs are byte-identical.
"""

from __future__ import annotations

import json
import sys
from typing import IO, Sequence

FORMAT_TAG = "wgscatter-csv 1"

Cell = float | int | str | None


def format_cell(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    return format(value, ".12g")


def write_table(
    stream: IO[str],
    metadata: Sequence[tuple[str, str]],
    header: Sequence[str],
    rows: Sequence[Sequence[Cell]],
) -> None:
    stream.write(f"# format = {FORMAT_TAG}\n")
    for key, value in metadata:
        stream.write(f"# {key} = {value}\n")
    stream.write(",".join(header) + "\n")
    for row in rows:
        stream.write(",".join(format_cell(cell) for cell in row) + "\n")


def save_table(
    path: str | None,
    metadata: Sequence[tuple[str, str]],
    header: Sequence[str],
    rows: Sequence[Sequence[Cell]],
) -> None:
    """Write to path, or stdout when path is None."""
    if path is None:
        write_table(sys.stdout, metadata, header, rows)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_table(fh, metadata, header, rows)


def table_as_json(
    metadata: Sequence[tuple[str, str]],
    header: Sequence[str],
    rows: Sequence[Sequence[Cell]],
) -> str:
    payload = {
        "format": FORMAT_TAG,
        "metadata": {k: v for k, v in metadata},
        "columns": list(header),
        "rows": [[cell for cell in row] for row in rows],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def save_json(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
