"""Command-line front end.

Subcommands: modes, spectrum, sweep2d, cutoff-map, conditions, verify.
Every data file is deterministic for a fixed config: fixed column
order, 12-significant-digit floats, no timestamps. Sweeps evaluate
grid points independently (optionally across worker processes) and
assemble output in grid order, so the worker count never changes the
bytes produced.
"""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from . import conditions as cond
from .config import RunConfig, load_config
from .csvio import Cell, save_json, save_table, table_as_json
from .emitter import EmitterParams
from .errors import (
    ConfigError,
    CutoffProximityError,
    EvanescentModeError,
    OracleConvergenceError,
    SingularResolventError,
)
from .geometry import (
    WaveguideGeometry,
    classify_region,
    critical_size,
    degenerate_pairs,
    enumerate_modes,
    first_modes,
    open_modes,
)
from .scattering import build_input, make_input, scatter
from .selfenergy import (
    check_cutoff_guard,
    f_eval,
    h_numeric_oracle,
    mode_self_energy,
)

logger = logging.getLogger("wgscatter")

ORACLE_RTOL = 1e-5


def _pmap(fn, tasks, workers: int):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (8 * workers))))


# ---------------------------------------------------------------------------
# modes
# ---------------------------------------------------------------------------


def cmd_modes(cfg: RunConfig, out: str | None, fmt: str) -> int:
    omega_max = cfg.sweep.omega_max
    if omega_max is None:
        omega_max = 3.0 * first_modes(cfg.geometry, 1)[0].cutoff
    modes = enumerate_modes(cfg.geometry, omega_max)
    tied = degenerate_pairs(modes)
    header = ["j", "m", "n", "cutoff_phz", "window_lo_phz", "window_hi_phz", "degenerate_pair"]
    rows: list[list[Cell]] = []
    for i, mo in enumerate(modes):
        hi: Cell = modes[i + 1].cutoff if i + 1 < len(modes) else None
        rows.append([mo.rank, mo.m, mo.n, mo.cutoff, mo.cutoff, hi, mo.rank in tied])
    meta = cfg.metadata() + [("command", "modes"), ("omega_max", repr(omega_max))]
    _emit(out, fmt, meta, header, rows)
    return 0


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------


def _spectrum_point(task) -> tuple[str, object]:
    cfg, omega, j_cols = task
    geom, em, opts = cfg.geometry, cfg.emitter, cfg.opts
    region = classify_region(geom, omega).label
    modes = open_modes(geom, omega)
    exact_hit = any(mo.cutoff == omega for mo in modes)
    if not exact_hit:
        try:
            check_cutoff_guard(geom, omega, opts.cutoff_guard)
        except CutoffProximityError as exc:
            return ("skip", str(exc))
    empty: list[Cell] = [omega, None, None] + [None] * (2 * j_cols) + [None, None, region]
    try:
        if cfg.input_kind == "custom":
            state = make_input(geom, omega, list(cfg.custom_amplitudes or ()))
        else:
            state = build_input(geom, omega, cfg.input_kind)
    except (EvanescentModeError, CutoffProximityError, ValueError):
        return ("row", empty)
    result = scatter(em, geom, state, opts)
    r_cells: list[Cell] = [0.0] * j_cols
    t_cells: list[Cell] = [0.0] * j_cols
    for mo, rj, tj in zip(result.modes, result.reflectivity, result.transmissivity):
        r_cells[mo.rank - 1] = rj
        t_cells[mo.rank - 1] = tj
    f = result.f_value
    row: list[Cell] = (
        [omega, result.R, result.T]
        + r_cells
        + t_cells
        + [f.real if f is not None else None, f.imag if f is not None else None, region]
    )
    return ("row", row)


def cmd_spectrum(cfg: RunConfig, out: str | None, fmt: str, workers: int) -> int:
    grid = cfg.sweep.omega_grid()
    j_cols = len(open_modes(cfg.geometry, cfg.sweep.omega_max))
    if j_cols == 0:
        raise ConfigError("[sweep] omega_max: below the lowest cutoff, nothing propagates")
    outcomes = _pmap(_spectrum_point, [(cfg, w, j_cols) for w in grid], workers)
    rows = []
    for (tag, payload), w in zip(outcomes, grid):
        if tag == "skip":
            logger.warning("skipping omega_in = %.12g PHz: %s", w, payload)
        else:
            rows.append(payload)
    header = (
        ["omega_in", "R", "T"]
        + [f"R_{j}" for j in range(1, j_cols + 1)]
        + [f"T_{j}" for j in range(1, j_cols + 1)]
        + ["re_f", "im_f", "region"]
    )
    meta = cfg.metadata() + [
        ("command", "spectrum"),
        ("omega_min", repr(cfg.sweep.omega_min)),
        ("omega_max", repr(cfg.sweep.omega_max)),
        ("points", str(cfg.sweep.points)),
    ]
    _emit(out, fmt, meta, header, rows)
    return 0


# ---------------------------------------------------------------------------
# sweep2d
# ---------------------------------------------------------------------------


def _with_axis2(em: EmitterParams, axis2: str, value: float) -> EmitterParams:
    if axis2 == "omega1":
        return replace(em, omega1=value)
    return replace(em, lambda2=value)


def _sweep2d_point(task) -> list[Cell]:
    cfg, omega, value = task
    geom, opts = cfg.geometry, cfg.opts
    em = _with_axis2(cfg.emitter, cfg.sweep.axis2, value)
    tol = cfg.sweep.locus_tol
    try:
        check_cutoff_guard(geom, omega, opts.cutoff_guard)
        f = f_eval(em, geom, omega, opts).value
    except (CutoffProximityError, ValueError):
        return [omega, value, None, None, None, None, None]
    eit = 1 if abs(f.imag) < tol else 0
    fano = 1 if abs(f.real) < tol else 0
    r_cell: Cell = None
    try:
        if cfg.input_kind == "custom":
            state = make_input(geom, omega, list(cfg.custom_amplitudes or ()))
        else:
            state = build_input(geom, omega, cfg.input_kind)
        r_cell = scatter(em, geom, state, opts).R
    except (EvanescentModeError, CutoffProximityError, SingularResolventError, ValueError):
        pass
    return [omega, value, r_cell, f.real, f.imag, eit, fano]


def cmd_sweep2d(cfg: RunConfig, out: str | None, fmt: str, workers: int) -> int:
    omegas = cfg.sweep.omega_grid()
    values = cfg.sweep.axis2_grid()
    tasks = [(cfg, w, v) for v in values for w in omegas]
    rows = _pmap(_sweep2d_point, tasks, workers)
    header = ["omega_in", cfg.sweep.axis2, "R", "re_f", "im_f", "eit_locus", "fano_locus"]
    meta = cfg.metadata() + [
        ("command", "sweep2d"),
        ("omega_min", repr(cfg.sweep.omega_min)),
        ("omega_max", repr(cfg.sweep.omega_max)),
        ("points", str(cfg.sweep.points)),
        ("axis2", cfg.sweep.axis2),
        ("axis2_min", repr(cfg.sweep.axis2_min)),
        ("axis2_max", repr(cfg.sweep.axis2_max)),
        ("axis2_points", str(cfg.sweep.axis2_points)),
        ("locus_tol", repr(cfg.sweep.locus_tol)),
    ]
    _emit(out, fmt, meta, header, rows)
    return 0


# ---------------------------------------------------------------------------
# cutoff-map
# ---------------------------------------------------------------------------


def cmd_cutoff_map(cfg: RunConfig, out: str | None, fmt: str) -> int:
    sweep = cfg.sweep
    bs = sweep.b_grid()
    aspect = cfg.geometry.aspect
    omega_ref = sweep.omega_ref
    if omega_ref is None:
        raise ConfigError("[sweep] omega_ref: required for cutoff maps")
    ref_modes = first_modes(cfg.geometry, sweep.mode_count)
    header = ["b_um"] + [f"omega_{mo.rank}" for mo in ref_modes] + ["region"]
    rows: list[list[Cell]] = []
    for b in bs:
        geom_b = WaveguideGeometry(a=aspect * b, b=b)
        cuts = [mo.cutoff * cfg.geometry.b / b for mo in ref_modes]
        rows.append([b] + list(cuts) + [classify_region(geom_b, omega_ref).label])
    meta = cfg.metadata() + [
        ("command", "cutoff-map"),
        ("aspect", repr(aspect)),
        ("omega_ref", repr(omega_ref)),
        ("b_min", repr(sweep.b_min)),
        ("b_max", repr(sweep.b_max)),
        ("b_points", str(sweep.b_points)),
    ]
    for mo in ref_modes:
        meta.append((f"mode_{mo.rank}", mo.label))
        meta.append(
            (f"critical_b_{mo.rank}", repr(critical_size(omega_ref, aspect, mo.m, mo.n)))
        )
    _emit(out, fmt, meta, header, rows)
    return 0


# ---------------------------------------------------------------------------
# conditions
# ---------------------------------------------------------------------------


def cmd_conditions(cfg: RunConfig, out: str | None, fmt: str, scan_points: int) -> int:
    window = None
    if cfg.sweep.omega_min is not None and cfg.sweep.omega_max is not None:
        window = (cfg.sweep.omega_min, cfg.sweep.omega_max)
    report = cond.analyze(
        cfg.emitter, cfg.geometry, window=window, opts=cfg.opts, scan_points=scan_points
    )
    header = ["kind", "energy_phz", "residual", "nearest_transition", "blueshift_phz"]
    rows: list[list[Cell]] = []
    if report.eit_root is not None:
        rows.append(["eit", report.eit_root, report.eit_residual, None, None])
    for root in report.fano_roots:
        rows.append(["fano", root.energy, root.residual, root.nearest_transition, root.blueshift])
    meta = cfg.metadata() + [
        ("command", "conditions"),
        ("regime", report.regime),
        ("window_lo", repr(report.window[0])),
        ("window_hi", repr(report.window[1])),
        ("scan_points", str(scan_points)),
    ]
    _emit(out, fmt, meta, header, rows)
    if out is not None and fmt == "csv":
        mirror = out[:-4] + ".json" if out.endswith(".csv") else out + ".json"
        save_json(mirror, table_as_json(meta, header, rows))

    print(f"regime: {report.regime}")
    print(f"window: ({report.window[0]:.12g}, {report.window[1]:.12g}) PHz")
    if report.eit_root is None:
        print("perfect transmission: no transparency point in window")
    else:
        print(
            f"perfect transmission at {report.eit_root:.12g} PHz"
            f" (|Im f| = {report.eit_residual:.3e})"
        )
    if not report.fano_roots:
        print("perfect reflection: no resonance in window")
    for root in report.fano_roots:
        print(
            f"perfect reflection at {root.energy:.12g} PHz"
            f" (|Re f| = {root.residual:.3e},"
            f" blueshift {root.blueshift:+.6g} from Omega_{root.nearest_transition})"
        )
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def oracle_grid(geom: WaveguideGeometry, points: int) -> list[float]:
    """E grid spanning the first three cutoffs, avoiding each by 1%."""
    modes = first_modes(geom, 3)
    cuts = [mo.cutoff for mo in modes]
    lo, hi = 1.01 * cuts[0], 0.99 * cuts[2]
    raw = np.linspace(lo, hi, points)
    keep = [
        float(e)
        for e in raw
        if all(abs(e - w) > 0.01 * w for w in cuts)
    ]
    return keep


def cmd_verify(cfg: RunConfig, out: str | None, fmt: str, points: int) -> int:
    rng = np.random.default_rng(cfg.seed)
    geom = cfg.geometry
    grid = oracle_grid(geom, points)
    modes = first_modes(geom, 3)
    rows: list[list[Cell]] = []
    worst = 0.0
    failed = False
    for draw in range(1, 11):
        em = EmitterParams(
            omega1=float(rng.uniform(0.5, 3.0)),
            omega2=float(rng.uniform(0.5, 3.0)),
            lambda1=float(rng.uniform(0.02, 0.2)),
            lambda2=float(rng.uniform(0.02, 0.2)),
        )
        draw_worst = 0.0
        for energy in grid:
            for mo in modes:
                for i in (1, 2):
                    analytic = mode_self_energy(em, i, mo, energy, include_red_shift=True)
                    numeric = h_numeric_oracle(em, i, mo, energy)
                    err = abs(analytic - numeric) / abs(analytic)
                    draw_worst = max(draw_worst, err)
                    rows.append([draw, i, mo.rank, energy, err])
        status = "ok" if draw_worst < ORACLE_RTOL else "FAIL"
        print(f"draw {draw:2d}: max rel err {draw_worst:.3e} [{status}]")
        worst = max(worst, draw_worst)
        failed = failed or draw_worst >= ORACLE_RTOL
    print(f"overall max rel err {worst:.3e} over {len(grid)} energies x 3 modes x 10 draws")
    if out is not None:
        header = ["draw", "transition", "mode_rank", "energy_phz", "rel_err"]
        meta = cfg.metadata() + [("command", "verify"), ("points", str(points))]
        _emit(out, fmt, meta, header, rows)
    if failed:
        raise OracleConvergenceError(f"oracle disagreement {worst:.3e} exceeds {ORACLE_RTOL}")
    return 0


# ---------------------------------------------------------------------------
# plumbing
# ---------------------------------------------------------------------------


def _emit(out, fmt, meta, header, rows) -> None:
    if fmt == "json":
        save_json(out, table_as_json(meta, header, rows))
    else:
        save_table(out, meta, header, rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgscatter",
        description="Single-photon scattering spectra for a rectangular waveguide "
        "coupled to a V-type three-level emitter (frequencies in PHz, lengths in um).",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("modes", "TM-mode catalogue with cutoffs and window boundaries"),
        ("spectrum", "R/T spectrum over an energy sweep"),
        ("sweep2d", "reflectivity over (omega_in, emitter-parameter) grid"),
        ("cutoff-map", "cutoff frequencies against cross-section size"),
        ("conditions", "perfect transmission/reflection report"),
        ("verify", "self-energy vs principal-value quadrature oracle"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="run configuration file")
        cmd.add_argument("--out", default=None, help="output path (default: stdout)")
        cmd.add_argument("--points", type=int, default=None, help="override sweep point count")
        cmd.add_argument(
            "--red-shift",
            action="store_true",
            help="include closed-mode level shifts",
        )
        cmd.add_argument("--format", choices=("csv", "json"), default=None)
        cmd.add_argument("--workers", type=int, default=1, help="sweep worker processes")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.points is not None:
            cfg = replace(cfg, sweep=replace(cfg.sweep, points=args.points))
        if args.red_shift:
            cfg = replace(cfg, opts=replace(cfg.opts, include_red_shift=True))
        out = args.out if args.out is not None else cfg.output_path
        fmt = args.format if args.format is not None else cfg.output_format

        if args.command == "modes":
            return cmd_modes(cfg, out, fmt)
        if args.command == "spectrum":
            return cmd_spectrum(cfg, out, fmt, args.workers)
        if args.command == "sweep2d":
            return cmd_sweep2d(cfg, out, fmt, args.workers)
        if args.command == "cutoff-map":
            return cmd_cutoff_map(cfg, out, fmt)
        if args.command == "conditions":
            return cmd_conditions(cfg, out, fmt, cfg.sweep.points)
        if args.command == "verify":
            return cmd_verify(cfg, out, fmt, args.points or 50)
        raise AssertionError(f"unhandled command {args.command}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (EvanescentModeError, CutoffProximityError, SingularResolventError) as exc:
        print(f"numerical domain error: {exc}", file=sys.stderr)
        return 3
    except OracleConvergenceError as exc:
        print(f"oracle failure: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
