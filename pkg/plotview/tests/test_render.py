import numpy as np
import pytest

from plotview import FigureSpec, PlotDataError, build_figure, read_table, render


def write_csv(path, metadata, header, rows):
    lines = ["# format = wgscatter-csv 1"]
    lines += [f"# {k} = {v}" for k, v in metadata.items()]
    lines.append(",".join(header))
    lines += [",".join(str(c) if c is not None else "" for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


@pytest.fixture
def spectrum_csv(tmp_path):
    omega = np.linspace(1.0, 1.7, 25)
    r = 0.5 + 0.5 * np.sin(8 * omega) ** 2
    return write_csv(
        tmp_path / "spec.csv",
        {
            "units_frequency": "PHz",
            "omega_min": "1.0",
            "omega_max": "1.7",
            "input": "single:1",
            "label": "case-a",
        },
        ["omega_in", "R", "T"],
        [[f"{w:.6f}", f"{v:.6f}", f"{1 - v:.6f}"] for w, v in zip(omega, r)],
    )


@pytest.fixture
def heatmap_csv(tmp_path):
    rows = []
    omegas = np.linspace(1.0, 1.6, 7)
    params = np.linspace(1.1, 1.5, 5)
    for p in params:
        for w in omegas:
            r = abs(np.sin(3 * w * p))
            rows.append(
                [f"{w:.5f}", f"{p:.5f}", f"{r:.5f}", "0.1", "-0.2",
                 "1" if r < 0.05 else "0", "1" if r > 0.95 else "0"]
            )
    return write_csv(
        tmp_path / "grid.csv",
        {
            "units_frequency": "PHz",
            "omega_min": "1.0",
            "omega_max": "1.6",
            "points": "7",
            "axis2": "omega1",
            "axis2_min": "1.1",
            "axis2_max": "1.5",
            "axis2_points": "5",
        },
        ["omega_in", "omega1", "R", "re_f", "im_f", "eit_locus", "fano_locus"],
        rows,
    )


@pytest.fixture
def cutoff_csv(tmp_path):
    bs = np.linspace(0.5, 2.5, 21)
    rows = [[f"{b:.5f}", f"{0.94 * 1.2 / b:.6f}", f"{1.75 * 1.2 / b:.6f}", "single_mode"]
            for b in bs]
    return write_csv(
        tmp_path / "map.csv",
        {
            "units_frequency": "PHz",
            "units_length": "um",
            "b_min": "0.5",
            "b_max": "2.5",
            "omega_ref": "1.0",
            "mode_1": "TM11",
            "mode_2": "TM31",
            "critical_b_1": "1.13",
            "critical_b_2": "2.11",
        },
        ["b_um", "omega_1", "omega_2", "region"],
        rows,
    )


class TestReader:
    def test_parses_metadata_and_rows(self, spectrum_csv):
        table = read_table(spectrum_csv)
        assert table.metadata["label"] == "case-a"
        assert table.columns[0] == "omega_in"
        assert len(table.cells) == 25
        assert table.column("R").max() <= 1.0

    def test_missing_column_is_descriptive(self, spectrum_csv):
        table = read_table(spectrum_csv)
        with pytest.raises(PlotDataError, match="missing column.*nope"):
            table.column("nope")

    def test_empty_cells_become_nan(self, tmp_path):
        path = write_csv(
            tmp_path / "g.csv",
            {"units_frequency": "PHz"},
            ["omega_in", "R"],
            [["1.0", "0.5"], ["1.1", None]],
        )
        table = read_table(path)
        assert np.isnan(table.column("R")[1])

    def test_rejects_foreign_files(self, tmp_path):
        path = tmp_path / "x.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(PlotDataError, match="not a wgscatter-csv"):
            read_table(str(path))


class TestSpectrumFigure:
    def test_axes_come_from_metadata(self, spectrum_csv, tmp_path):
        spec = FigureSpec(
            kind="spectrum", csv_paths=(spectrum_csv,), out_path=str(tmp_path / "f.png")
        )
        fig = build_figure(spec)
        ax = fig.axes[0]
        assert ax.get_xlim() == (1.0, 1.7)
        assert "PHz" in ax.get_xlabel()

    def test_multi_file_legend(self, spectrum_csv, tmp_path):
        spec = FigureSpec(
            kind="spectrum",
            csv_paths=(spectrum_csv, spectrum_csv),
            out_path=str(tmp_path / "f.png"),
        )
        fig = build_figure(spec)
        assert fig.axes[0].get_legend() is not None

    def test_overlay_roots(self, spectrum_csv, tmp_path):
        cond = write_csv(
            tmp_path / "cond.csv",
            {"units_frequency": "PHz"},
            ["kind", "energy_phz", "residual"],
            [["eit", "1.18", "1e-17"], ["fano", "1.14", "1e-13"]],
        )
        spec = FigureSpec(
            kind="spectrum",
            csv_paths=(spectrum_csv,),
            overlay_path=cond,
            out_path=str(tmp_path / "f.png"),
        )
        fig = build_figure(spec)
        assert len(fig.axes[0].lines) >= 3  # data line + two root markers

    def test_render_is_deterministic(self, spectrum_csv, tmp_path):
        out1, out2 = tmp_path / "a.png", tmp_path / "b.png"
        render(FigureSpec(kind="spectrum", csv_paths=(spectrum_csv,), out_path=str(out1)))
        render(FigureSpec(kind="spectrum", csv_paths=(spectrum_csv,), out_path=str(out2)))
        assert out1.read_bytes() == out2.read_bytes()


class TestHeatmapFigure:
    def test_axes_match_ranges(self, heatmap_csv, tmp_path):
        spec = FigureSpec(
            kind="heatmap", csv_paths=(heatmap_csv,), out_path=str(tmp_path / "h.png")
        )
        fig = build_figure(spec)
        ax = fig.axes[0]
        assert ax.get_xlim() == (1.0, 1.6)
        assert ax.get_ylim() == (1.1, 1.5)

    def test_renders_with_and_without_overlays(self, heatmap_csv, tmp_path):
        with_overlay = FigureSpec(
            kind="heatmap", csv_paths=(heatmap_csv,), out_path=str(tmp_path / "h1.png")
        )
        without = FigureSpec(
            kind="heatmap",
            csv_paths=(heatmap_csv,),
            out_path=str(tmp_path / "h2.png"),
            show_overlays=False,
        )
        assert len(build_figure(with_overlay).axes[0].lines) > 0
        assert len(build_figure(without).axes[0].lines) == 0
        render(with_overlay)
        render(without)

    def test_row_count_mismatch_rejected(self, tmp_path):
        bad = write_csv(
            tmp_path / "bad.csv",
            {
                "units_frequency": "PHz",
                "omega_min": "1.0",
                "omega_max": "1.6",
                "points": "7",
                "axis2": "omega1",
                "axis2_min": "1.1",
                "axis2_max": "1.5",
                "axis2_points": "5",
            },
            ["omega_in", "omega1", "R", "eit_locus", "fano_locus"],
            [["1.0", "1.1", "0.5", "0", "0"]],
        )
        with pytest.raises(PlotDataError, match="grid rows"):
            build_figure(
                FigureSpec(kind="heatmap", csv_paths=(bad,), out_path=str(tmp_path / "x.png"))
            )


class TestCutoffMapFigure:
    def test_log_axis_and_criticals(self, cutoff_csv, tmp_path):
        spec = FigureSpec(
            kind="cutoff_map", csv_paths=(cutoff_csv,), out_path=str(tmp_path / "c.png")
        )
        fig = build_figure(spec)
        ax = fig.axes[0]
        assert ax.get_yscale() == "log"
        assert ax.get_xlim() == (0.5, 2.5)
        render(spec)

    def test_missing_curves_rejected(self, tmp_path):
        bad = write_csv(
            tmp_path / "bad.csv",
            {"units_frequency": "PHz", "units_length": "um", "b_min": "0.5", "b_max": "1.0"},
            ["b_um", "region"],
            [["0.5", "cutoff"]],
        )
        with pytest.raises(PlotDataError, match="omega_"):
            build_figure(
                FigureSpec(kind="cutoff_map", csv_paths=(bad,), out_path=str(tmp_path / "x.png"))
            )


class TestSpecValidation:
    def test_unknown_kind(self, tmp_path):
        with pytest.raises(PlotDataError):
            FigureSpec(kind="pie", csv_paths=("x.csv",), out_path="y.png")

    def test_needs_csv(self):
        with pytest.raises(PlotDataError):
            FigureSpec(kind="spectrum", csv_paths=(), out_path="y.png")
