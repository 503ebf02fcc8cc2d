"""Reader for the wgscatter CSV dialect.

Files start with '#'-prefixed "key = value" metadata lines, then a
comma-separated header row, then data rows. Empty cells mean "not
evaluated at this grid point" and surface as NaN.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

FORMAT_TAG = "wgscatter-csv 1"


class PlotDataError(ValueError):
    """Input CSV is missing something the figure needs."""


@dataclass(frozen=True)
class Table:
    path: str
    metadata: dict[str, str]
    columns: tuple[str, ...]
    cells: tuple[tuple[str, ...], ...]

    def column(self, name: str) -> np.ndarray:
        """Numeric column; empty cells become NaN."""
        self.require(name)
        idx = self.columns.index(name)
        return np.array(
            [float(row[idx]) if row[idx] != "" else np.nan for row in self.cells]
        )

    def text_column(self, name: str) -> list[str]:
        self.require(name)
        idx = self.columns.index(name)
        return [row[idx] for row in self.cells]

    def require(self, *names: str) -> None:
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise PlotDataError(
                f"{self.path}: missing column(s) {', '.join(missing)}; "
                f"found {', '.join(self.columns)}"
            )

    def meta(self, key: str) -> str:
        if key not in self.metadata:
            raise PlotDataError(f"{self.path}: missing metadata key {key!r}")
        return self.metadata[key]

    def meta_float(self, key: str) -> float:
        try:
            return float(self.meta(key))
        except ValueError as exc:
            raise PlotDataError(f"{self.path}: metadata {key!r} is not numeric") from exc


def read_table(path: str) -> Table:
    metadata: dict[str, str] = {}
    columns: tuple[str, ...] | None = None
    cells: list[tuple[str, ...]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition("=")
                if sep:
                    metadata[key.strip()] = value.strip()
                continue
            if columns is None:
                columns = tuple(line.split(","))
            else:
                cells.append(tuple(line.split(",")))
    if columns is None:
        raise PlotDataError(f"{path}: no header row found")
    if metadata.get("format") != FORMAT_TAG:
        raise PlotDataError(
            f"{path}: not a {FORMAT_TAG} file (format = {metadata.get('format')!r})"
        )
    return Table(path=path, metadata=metadata, columns=columns, cells=tuple(cells))
