"""Figure builders for the three supported layouts.

spectrum:    reflectivity lines against photon energy, one line per CSV
heatmap:     reflectivity density over (energy, parameter) with the
             transparency (dotted, white) and resonance (dashed, black)
             loci overlaid from the flag columns
cutoff_map:  cutoff frequencies against cross-section size, log-scaled
             frequency axis, critical sizes marked

The plotting layer never recomputes physics: every number, range and
unit comes from the CSV metadata and columns. Rendering is
deterministic (fixed canvas, fixed colormap, pinned fonts, no
timestamps), so identical inputs give identical image bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from .reader import PlotDataError, Table, read_table

_DPI = 150
_HEAT_CMAP = "viridis"  # perceptually uniform; R scale fixed to [0, 1]

KINDS = ("spectrum", "heatmap", "cutoff_map")


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    csv_paths: tuple[str, ...]
    out_path: str
    overlay_path: str | None = None
    show_overlays: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise PlotDataError(f"unknown figure kind {self.kind!r}")
        if not self.csv_paths:
            raise PlotDataError("at least one input CSV is required")


def _freq_unit(table: Table) -> str:
    return table.meta("units_frequency")


def _line_label(table: Table) -> str:
    if "label" in table.metadata:
        return table.metadata["label"]
    return table.metadata.get("input", table.path)


def build_spectrum(spec: FigureSpec) -> Figure:
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=_DPI)
    unit = None
    for path in spec.csv_paths:
        table = read_table(path)
        table.require("omega_in", "R")
        unit = unit or _freq_unit(table)
        omega = table.column("omega_in")
        r = table.column("R")
        keep = ~np.isnan(r)
        ax.plot(omega[keep], r[keep], linewidth=1.2, label=_line_label(table))
    first = read_table(spec.csv_paths[0])
    ax.set_xlim(first.meta_float("omega_min"), first.meta_float("omega_max"))
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel(f"input photon energy ({unit})")
    ax.set_ylabel("reflectivity R")
    if spec.overlay_path and spec.show_overlays:
        cond = read_table(spec.overlay_path)
        cond.require("kind", "energy_phz")
        kinds = cond.text_column("kind")
        energies = cond.column("energy_phz")
        for kind, energy in zip(kinds, energies):
            if kind == "eit":
                ax.axvline(energy, color="0.4", linestyle=":", linewidth=1.0)
            elif kind == "fano":
                ax.axvline(energy, color="k", linestyle="--", linewidth=0.8)
    if len(spec.csv_paths) > 1:
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


def build_heatmap(spec: FigureSpec) -> Figure:
    if len(spec.csv_paths) != 1:
        raise PlotDataError("heatmap takes exactly one CSV")
    table = read_table(spec.csv_paths[0])
    table.require("omega_in", "R", "eit_locus", "fano_locus")
    n_x = int(table.meta("points"))
    n_y = int(table.meta("axis2_points"))
    axis2 = table.meta("axis2")
    table.require(axis2)
    if len(table.cells) != n_x * n_y:
        raise PlotDataError(
            f"{table.path}: expected {n_x * n_y} grid rows, found {len(table.cells)}"
        )
    omega = table.column("omega_in").reshape(n_y, n_x)
    param = table.column(axis2).reshape(n_y, n_x)
    r = np.ma.masked_invalid(table.column("R").reshape(n_y, n_x))

    fig, ax = plt.subplots(figsize=(6.4, 4.6), dpi=_DPI)
    mesh = ax.pcolormesh(
        omega, param, r, cmap=_HEAT_CMAP, vmin=0.0, vmax=1.0, shading="nearest"
    )
    fig.colorbar(mesh, ax=ax, label="reflectivity R")
    if spec.show_overlays:
        eit = table.column("eit_locus").reshape(n_y, n_x) == 1.0
        fano = table.column("fano_locus").reshape(n_y, n_x) == 1.0
        if eit.any():
            ax.plot(omega[eit], param[eit], linestyle="none", marker=".",
                    markersize=2.0, color="white")
        if fano.any():
            ax.plot(omega[fano], param[fano], linestyle="none", marker="s",
                    markersize=1.5, color="black")
    ax.set_xlim(table.meta_float("omega_min"), table.meta_float("omega_max"))
    ax.set_ylim(table.meta_float("axis2_min"), table.meta_float("axis2_max"))
    unit = _freq_unit(table)
    ax.set_xlabel(f"input photon energy ({unit})")
    ax.set_ylabel(f"{axis2} ({unit})")
    fig.tight_layout()
    return fig


def build_cutoff_map(spec: FigureSpec) -> Figure:
    if len(spec.csv_paths) != 1:
        raise PlotDataError("cutoff_map takes exactly one CSV")
    table = read_table(spec.csv_paths[0])
    table.require("b_um")
    b = table.column("b_um")
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=_DPI)
    rank = 1
    while f"omega_{rank}" in table.columns:
        label = table.metadata.get(f"mode_{rank}", f"mode {rank}")
        ax.plot(b, table.column(f"omega_{rank}"), linewidth=1.2, label=label)
        if spec.show_overlays and f"critical_b_{rank}" in table.metadata:
            ax.axvline(
                table.meta_float(f"critical_b_{rank}"),
                color="0.6",
                linestyle="--",
                linewidth=0.8,
            )
        rank += 1
    if rank == 1:
        raise PlotDataError(f"{table.path}: no omega_<j> columns to plot")
    if "omega_ref" in table.metadata:
        ax.axhline(table.meta_float("omega_ref"), color="k", linestyle=":", linewidth=0.9)
    ax.set_yscale("log")
    ax.set_xlim(table.meta_float("b_min"), table.meta_float("b_max"))
    unit = _freq_unit(table)
    ax.set_xlabel(f"cross-section width b ({table.meta('units_length')})")
    ax.set_ylabel(f"cutoff frequency ({unit})")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    return fig


_BUILDERS = {
    "spectrum": build_spectrum,
    "heatmap": build_heatmap,
    "cutoff_map": build_cutoff_map,
}


def build_figure(spec: FigureSpec) -> Figure:
    return _BUILDERS[spec.kind](spec)


def render(spec: FigureSpec) -> str:
    """Render the figure to spec.out_path (PNG) and return the path."""
    fig = build_figure(spec)
    try:
        fig.savefig(spec.out_path, format="png", metadata={"Software": None})
    finally:
        plt.close(fig)
    return spec.out_path
