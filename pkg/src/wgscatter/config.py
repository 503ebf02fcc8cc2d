"""Run configuration: flat key-value file with sections.

Example:

    [geometry]
    b = 1.2
    l = 1.5            ; aspect ratio a/b (or give a directly)

    [emitter]
    omega1 = 1.3
    omega2 = 1.1
    lambda1 = 0.1      ; or dipole moments p1/p2
    lambda2 = 0.1

    [sweep]
    omega_min = 0.95
    omega_max = 1.75
    points = 2000

    [input]
    kind = single:1    ; single:<rank> | css | dark | custom

    [output]
    path = spectrum.csv

All frequencies are in PHz, lengths in um; every output file repeats
that in its header. Unknown keys are rejected so typos fail loudly.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field

from .emitter import EmitterParams, lambda_from_dipole
from .errors import ConfigError
from .geometry import WaveguideGeometry
from .selfenergy import EvalOptions

_KNOWN_KEYS = {
    "geometry": {"a", "b", "l"},
    "emitter": {"omega1", "omega2", "lambda1", "lambda2", "p1", "p2"},
    "sweep": {
        "omega_min",
        "omega_max",
        "points",
        "axis2",
        "axis2_min",
        "axis2_max",
        "axis2_points",
        "b_min",
        "b_max",
        "b_points",
        "omega_ref",
        "mode_count",
        "locus_tol",
    },
    "input": {"kind", "amplitudes"},
    "flags": {"include_red_shift", "guard", "max_modes", "seed"},
    "output": {"path", "format", "label"},
}

_AXIS2_CHOICES = ("omega1", "lambda2")


@dataclass(frozen=True)
class SweepSpec:
    omega_min: float | None = None
    omega_max: float | None = None
    points: int = 200
    axis2: str | None = None
    axis2_min: float | None = None
    axis2_max: float | None = None
    axis2_points: int = 50
    b_min: float | None = None
    b_max: float | None = None
    b_points: int = 100
    omega_ref: float | None = None
    mode_count: int = 4
    locus_tol: float = 1e-3

    def omega_grid(self) -> list[float]:
        if self.omega_min is None or self.omega_max is None:
            raise ConfigError("[sweep] omega_min/omega_max: required for this command")
        return _grid(self.omega_min, self.omega_max, self.points)

    def axis2_grid(self) -> list[float]:
        if self.axis2 is None:
            raise ConfigError("[sweep] axis2: required for 2D sweeps")
        if self.axis2_min is None or self.axis2_max is None:
            raise ConfigError("[sweep] axis2_min/axis2_max: required for 2D sweeps")
        return _grid(self.axis2_min, self.axis2_max, self.axis2_points)

    def b_grid(self) -> list[float]:
        if self.b_min is None or self.b_max is None:
            raise ConfigError("[sweep] b_min/b_max: required for cutoff maps")
        return _grid(self.b_min, self.b_max, self.b_points)


def _grid(lo: float, hi: float, points: int) -> list[float]:
    if points < 2:
        raise ConfigError(f"[sweep] points: need at least 2, got {points}")
    if not (lo < hi):
        raise ConfigError(f"[sweep] range [{lo}, {hi}] is empty")
    step = (hi - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


@dataclass(frozen=True)
class RunConfig:
    geometry: WaveguideGeometry
    emitter: EmitterParams
    opts: EvalOptions
    sweep: SweepSpec
    input_kind: str = "single:1"
    custom_amplitudes: tuple[complex, ...] | None = None
    output_path: str | None = None
    output_format: str = "csv"
    label: str = ""
    seed: int = 20240801

    def metadata(self) -> list[tuple[str, str]]:
        """Key-value pairs stamped into every output file header."""
        em = self.emitter
        g = self.geometry
        pairs: list[tuple[str, str]] = [
            ("units_frequency", "PHz"),
            ("units_length", "um"),
            ("geometry_a_um", repr(g.a)),
            ("geometry_b_um", repr(g.b)),
            ("emitter_omega1", repr(em.omega1)),
            ("emitter_omega2", repr(em.omega2)),
            ("emitter_lambda1", repr(em.lambda1)),
            ("emitter_lambda2", repr(em.lambda2)),
            ("include_red_shift", str(self.opts.include_red_shift).lower()),
            ("cutoff_guard", repr(self.opts.cutoff_guard)),
            ("input", self.input_kind),
        ]
        if self.label:
            pairs.append(("label", self.label))
        return pairs


class _Section:
    """Typed access to one config section with precise error messages."""

    def __init__(self, parser: configparser.ConfigParser, name: str):
        self.name = name
        self.present = parser.has_section(name)
        self.raw = dict(parser.items(name)) if self.present else {}
        unknown = set(self.raw) - _KNOWN_KEYS[name]
        if unknown:
            raise ConfigError(f"[{name}] unknown key(s): {', '.join(sorted(unknown))}")

    def get(self, key: str) -> str | None:
        return self.raw.get(key)

    def number(self, key: str, default: float | None = None) -> float | None:
        text = self.raw.get(key)
        if text is None:
            return default
        try:
            value = float(text)
        except ValueError as exc:
            raise ConfigError(f"[{self.name}] {key}: not a number: {text!r}") from exc
        if value != value or value in (float("inf"), float("-inf")):
            raise ConfigError(f"[{self.name}] {key}: must be finite")
        return value

    def integer(self, key: str, default: int) -> int:
        text = self.raw.get(key)
        if text is None:
            return default
        try:
            return int(text)
        except ValueError as exc:
            raise ConfigError(f"[{self.name}] {key}: not an integer: {text!r}") from exc

    def boolean(self, key: str, default: bool) -> bool:
        text = self.raw.get(key)
        if text is None:
            return default
        lowered = text.strip().lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"[{self.name}] {key}: not a boolean: {text!r}")


def load_config(path: str) -> RunConfig:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found or unreadable: {path}")
    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown section [{section}]")

    geo = _Section(parser, "geometry")
    if not geo.present:
        raise ConfigError("[geometry] section is required")
    b = geo.number("b")
    if b is None:
        raise ConfigError("[geometry] b: required")
    a = geo.number("a")
    aspect = geo.number("l")
    if a is None and aspect is None:
        raise ConfigError("[geometry] give either a or l (= a/b)")
    if a is not None and aspect is not None:
        raise ConfigError("[geometry] give a or l, not both")
    if a is None:
        a = aspect * b
    try:
        geometry = WaveguideGeometry(a=a, b=b)
    except ValueError as exc:
        raise ConfigError(f"[geometry] {exc}") from exc

    ems = _Section(parser, "emitter")
    if not ems.present:
        raise ConfigError("[emitter] section is required")
    omega1 = ems.number("omega1")
    omega2 = ems.number("omega2")
    if omega1 is None or omega2 is None:
        raise ConfigError("[emitter] omega1 and omega2: required")
    lam1 = ems.number("lambda1")
    lam2 = ems.number("lambda2")
    p1 = ems.number("p1")
    p2 = ems.number("p2")
    for lam, p, tag in ((lam1, p1, "1"), (lam2, p2, "2")):
        if lam is not None and p is not None:
            raise ConfigError(f"[emitter] give lambda{tag} or p{tag}, not both")
    if lam1 is None:
        lam1 = lambda_from_dipole(p1, geometry) if p1 is not None else 0.0
    if lam2 is None:
        lam2 = lambda_from_dipole(p2, geometry) if p2 is not None else 0.0
    try:
        emitter = EmitterParams(omega1=omega1, omega2=omega2, lambda1=lam1, lambda2=lam2)
    except ValueError as exc:
        raise ConfigError(f"[emitter] {exc}") from exc

    flags = _Section(parser, "flags")
    opts = EvalOptions(
        include_red_shift=flags.boolean("include_red_shift", False),
        max_modes=flags.integer("max_modes", 64),
        cutoff_guard=flags.number("guard", 1e-9),
    )
    seed = flags.integer("seed", 20240801)

    sw = _Section(parser, "sweep")
    axis2 = sw.get("axis2")
    if axis2 is not None and axis2 not in _AXIS2_CHOICES:
        raise ConfigError(f"[sweep] axis2: must be one of {_AXIS2_CHOICES}, got {axis2!r}")
    sweep = SweepSpec(
        omega_min=sw.number("omega_min"),
        omega_max=sw.number("omega_max"),
        points=sw.integer("points", 200),
        axis2=axis2,
        axis2_min=sw.number("axis2_min"),
        axis2_max=sw.number("axis2_max"),
        axis2_points=sw.integer("axis2_points", 50),
        b_min=sw.number("b_min"),
        b_max=sw.number("b_max"),
        b_points=sw.integer("b_points", 100),
        omega_ref=sw.number("omega_ref"),
        mode_count=sw.integer("mode_count", 4),
        locus_tol=sw.number("locus_tol", 1e-3),
    )
    if sweep.points < 2 or sweep.axis2_points < 2 or sweep.b_points < 2:
        raise ConfigError("[sweep] point counts must be at least 2")

    ins = _Section(parser, "input")
    kind = (ins.get("kind") or "single:1").strip()
    amplitudes: tuple[complex, ...] | None = None
    if kind == "custom":
        text = ins.get("amplitudes")
        if not text:
            raise ConfigError("[input] amplitudes: required for kind = custom")
        try:
            amplitudes = tuple(complex(tok) for tok in text.split())
        except ValueError as exc:
            raise ConfigError(f"[input] amplitudes: bad complex literal in {text!r}") from exc
    elif kind.startswith("single:"):
        try:
            rank = int(kind.split(":", 1)[1])
        except ValueError as exc:
            raise ConfigError(f"[input] kind: bad mode rank in {kind!r}") from exc
        if rank < 1:
            raise ConfigError("[input] kind: mode rank must be >= 1")
    elif kind not in ("css", "dark"):
        raise ConfigError(f"[input] kind: unknown input kind {kind!r}")

    out = _Section(parser, "output")
    fmt = (out.get("format") or "csv").strip().lower()
    if fmt not in ("csv", "json"):
        raise ConfigError(f"[output] format: must be csv or json, got {fmt!r}")

    return RunConfig(
        geometry=geometry,
        emitter=emitter,
        opts=opts,
        sweep=sweep,
        input_kind=kind,
        custom_amplitudes=amplitudes,
        output_path=out.get("path"),
        output_format=fmt,
        label=out.get("label") or "",
        seed=seed,
    )
