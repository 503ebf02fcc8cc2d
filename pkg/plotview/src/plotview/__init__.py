"""Figure rendering for wgscatter CSV outputs."""

from .figures import KINDS, FigureSpec, build_figure, render
from .reader import PlotDataError, Table, read_table

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "FigureSpec",
    "PlotDataError",
    "Table",
    "build_figure",
    "read_table",
    "render",
]
