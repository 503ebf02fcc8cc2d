"""Single-photon scattering: input states, channel coefficients, totals.

An input of energy omega_in is a normalized superposition over the open
modes, |in> = sum_j c_j |j, k_j>. The emitter mixes the channels; the
outgoing state carries per-channel reflection coefficients

    r_j = -2 pi i rho_j sum_{j'} sum_i c_{j'} g_j^(i) u_e^(i)(j'),

with the excited-state amplitudes u_e^(i) set by the resolvent f(E).
Reflectivities and transmissivities are the state-density-weighted
quotients

    R_j = (|r_j|^2 / rho_j) / N,   T_j = (|c_j + r_j|^2 / rho_j) / N,
    N   = sum_j |c_j|^2 / rho_j,

which satisfy sum_j (R_j + T_j) = 1 identically.

Mode basis convention: amplitudes c_j refer to the rephased basis in
which every odd-odd mode couples with the same (negative) sign, i.e.
the center-field parity sign of the physical coupling is absorbed into
the basis state. All closed-form conditions (coherent superposition
states, dark states, perfect-reflection laws) hold with plain omega_j
coefficients in this basis. gauged_coupling() below is the coupling in
that basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .emitter import EmitterParams, coupling
from .errors import CutoffProximityError, EvanescentModeError, SingularResolventError
from .geometry import TmMode, WaveguideGeometry, open_modes, state_density, wavenumber
from .selfenergy import DEFAULT_OPTS, EvalOptions, check_cutoff_guard, decay_rate, f_eval

_NORM_TOL = 1e-12


def gauged_coupling(em: EmitterParams, mode: TmMode, k: float, transition: int) -> float:
    """Coupling in the rephased mode basis: parity sign absorbed."""
    return mode.parity_sign * coupling(em, mode, k, transition)


@dataclass(frozen=True)
class InputState:
    """Incident energy plus normalized per-channel amplitudes.

    modes holds every open mode (ranks 1..j_max for the geometry at
    omega_in), amplitudes the matching c_j; channels the photon does not
    occupy carry c_j = 0. A mode whose cutoff equals omega_in exactly is
    tolerated here and resolved by scatter() as an explicit limit.
    """

    omega_in: float
    modes: tuple[TmMode, ...]
    amplitudes: tuple[complex, ...]

    def __post_init__(self) -> None:
        if len(self.modes) != len(self.amplitudes):
            raise ValueError("one amplitude per open mode required")
        if not self.modes:
            raise ValueError("no open modes at this energy (cutoff region)")
        norm = sum(abs(c) ** 2 for c in self.amplitudes)
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(f"amplitudes must be normalized, got |c|^2 = {norm}")
        for mode, c in zip(self.modes, self.amplitudes):
            if mode.cutoff > self.omega_in and c != 0:
                raise EvanescentModeError(
                    f"populated mode {mode.label} does not propagate at {self.omega_in} PHz"
                )

    @property
    def j_max(self) -> int:
        return len(self.modes)

    def cutoff_hits(self) -> list[TmMode]:
        """Modes whose cutoff coincides exactly with omega_in."""
        return [mo for mo in self.modes if mo.cutoff == self.omega_in]


def make_input(
    geom: WaveguideGeometry, omega_in: float, amplitudes: list[complex] | tuple[complex, ...]
) -> InputState:
    """Input state with explicit amplitudes over the open modes."""
    modes = open_modes(geom, omega_in)
    if len(amplitudes) != len(modes):
        raise ValueError(
            f"{len(modes)} modes are open at {omega_in} PHz, got {len(amplitudes)} amplitudes"
        )
    norm = math.sqrt(sum(abs(c) ** 2 for c in amplitudes))
    if norm == 0.0:
        raise ValueError("input amplitudes are all zero")
    amps = tuple(complex(c) / norm for c in amplitudes)
    return InputState(omega_in=omega_in, modes=tuple(modes), amplitudes=amps)


def make_single_mode(geom: WaveguideGeometry, omega_in: float, n: int) -> InputState:
    """Photon entirely in the mode of rank n."""
    modes = open_modes(geom, omega_in)
    if n < 1 or n > len(modes):
        raise EvanescentModeError(
            f"mode rank {n} is not open at {omega_in} PHz ({len(modes)} open)"
        )
    amps = tuple((1.0 + 0.0j) if mo.rank == n else 0.0j for mo in modes)
    return InputState(omega_in=omega_in, modes=tuple(modes), amplitudes=amps)


def make_css(geom: WaveguideGeometry, omega_in: float) -> InputState:
    """Coherent superposition state c_j ~ omega_j / k_j (real, positive).

    The one input for which multi-mode scattering collapses to the
    single-mode law; in a single-mode window it degenerates to c_1 = 1.
    """
    modes = open_modes(geom, omega_in)
    if not modes:
        raise EvanescentModeError(f"no open modes at {omega_in} PHz")
    if any(mo.cutoff == omega_in for mo in modes):
        raise CutoffProximityError(
            "coherent superposition state is undefined at a cutoff resonance"
        )
    raw = [mo.cutoff / wavenumber(mo, omega_in) for mo in modes]
    norm = math.sqrt(sum(x * x for x in raw))
    amps = tuple(complex(x / norm) for x in raw)
    return InputState(omega_in=omega_in, modes=tuple(modes), amplitudes=amps)


def make_dark(
    geom: WaveguideGeometry,
    omega_in: float,
    free_phases: list[complex] | tuple[complex, ...] | None = None,
) -> InputState:
    """Dark input: sum_j c_j omega_j = 0, invisible to the emitter.

    Needs at least two open channels. The null space of the row
    (omega_1 ... omega_J) is spanned by v_i = omega_{i+1} e_1
    - omega_1 e_{i+1}; free_phases, when given, are J-1 complex weights
    over that basis. The default is the first basis vector, which for
    two modes is the canonical (omega_2, -omega_1) / norm.
    """
    modes = open_modes(geom, omega_in)
    j_max = len(modes)
    if j_max < 2:
        raise ValueError("a dark state needs at least two open modes")
    if any(mo.cutoff == omega_in for mo in modes):
        raise CutoffProximityError("dark state is undefined at a cutoff resonance")
    weights: list[complex]
    if free_phases is None:
        weights = [1.0 + 0.0j] + [0.0j] * (j_max - 2)
    else:
        if len(free_phases) != j_max - 1:
            raise ValueError(f"expected {j_max - 1} null-space weights, got {len(free_phases)}")
        if all(w == 0 for w in free_phases):
            raise ValueError("null-space weights are all zero")
        weights = [complex(w) for w in free_phases]
    cutoffs = [mo.cutoff for mo in modes]
    amps = [0.0j] * j_max
    for i, w in enumerate(weights):
        amps[0] += w * cutoffs[i + 1]
        amps[i + 1] -= w * cutoffs[0]
    norm = math.sqrt(sum(abs(c) ** 2 for c in amps))
    amps = [c / norm for c in amps]
    return InputState(omega_in=omega_in, modes=tuple(modes), amplitudes=tuple(amps))


@dataclass(frozen=True)
class ScatteringResult:
    """Per-channel coefficients and totals, with diagnostics.

    boundary is None off the cutoffs; at an exact cutoff resonance it
    records which explicit limit was applied and the diagnostic fields
    that would diverge are left as None.
    """

    omega_in: float
    modes: tuple[TmMode, ...]
    amplitudes: tuple[complex, ...]
    r: tuple[complex, ...]
    reflectivity: tuple[float, ...]
    transmissivity: tuple[float, ...]
    total_reflectivity: float
    total_transmissivity: float
    f_value: complex | None
    variant: str
    lambda_channels: tuple[float, ...] | None
    rho: tuple[float, ...] | None
    boundary: str | None = None

    @property
    def R(self) -> float:
        return self.total_reflectivity

    @property
    def T(self) -> float:
        return self.total_transmissivity


def channel_lambda(
    em: EmitterParams, mode: TmMode, energy: float
) -> float:
    """Lambda_j = Gamma_j^(1) (E - Omega_2) + Gamma_j^(2) (E - Omega_1).

    The per-channel weight of the reflection laws; summed over open
    modes it equals Im f in the generic variant.
    """
    g1 = decay_rate(em, 1, mode, energy)
    g2 = decay_rate(em, 2, mode, energy)
    return g1 * (energy - em.omega2) + g2 * (energy - em.omega1)


def _excited_amplitudes_raw(
    em: EmitterParams,
    state: InputState,
    f_value: complex,
    variant: str,
    k_values: list[float],
) -> tuple[complex, complex]:
    if f_value == 0:
        raise SingularResolventError("resolvent f vanished; amplitudes are singular")
    energy = state.omega_in
    s1 = sum(
        c * gauged_coupling(em, mo, k, 1)
        for c, mo, k in zip(state.amplitudes, state.modes, k_values)
    )
    s2 = sum(
        c * gauged_coupling(em, mo, k, 2)
        for c, mo, k in zip(state.amplitudes, state.modes, k_values)
    )
    if variant == "degenerate":
        return s1 / f_value, s2 / f_value
    if variant == "two_level":
        if em.active_transition == 1:
            return s1 / f_value, 0.0j
        return 0.0j, s2 / f_value
    return s1 * (energy - em.omega2) / f_value, s2 * (energy - em.omega1) / f_value


def excited_amplitudes(
    em: EmitterParams,
    geom: WaveguideGeometry,
    state: InputState,
    opts: EvalOptions = DEFAULT_OPTS,
) -> tuple[complex, complex]:
    """Excited-state amplitudes (u_e^(1), u_e^(2)) for the given input."""
    check_cutoff_guard(geom, state.omega_in, opts.cutoff_guard)
    res = f_eval(em, geom, state.omega_in, opts)
    k_values = [wavenumber(mo, state.omega_in) for mo in state.modes]
    return _excited_amplitudes_raw(em, state, res.value, res.variant, k_values)


def _cutoff_limit_result(em: EmitterParams, state: InputState, occupied: bool) -> ScatteringResult:
    j = state.j_max
    if occupied:
        # Zero group velocity in a populated channel: everything reflects.
        refl = tuple(abs(c) ** 2 for c in state.amplitudes)
        trans = (0.0,) * j
        total_r, total_t = 1.0, 0.0
        tag = "at_cutoff_occupied"
    else:
        # A fresh channel opens exactly at omega_in but carries no
        # amplitude: its diverging weight suppresses every r_j.
        refl = (0.0,) * j
        trans = tuple(abs(c) ** 2 for c in state.amplitudes)
        total_r, total_t = 0.0, 1.0
        tag = "at_cutoff_unoccupied"
    return ScatteringResult(
        omega_in=state.omega_in,
        modes=state.modes,
        amplitudes=state.amplitudes,
        r=(0.0j,) * j,
        reflectivity=refl,
        transmissivity=trans,
        total_reflectivity=total_r,
        total_transmissivity=total_t,
        f_value=None,
        variant=em.variant,
        lambda_channels=None,
        rho=None,
        boundary=tag,
    )


def scatter(
    em: EmitterParams,
    geom: WaveguideGeometry,
    state: InputState,
    opts: EvalOptions = DEFAULT_OPTS,
) -> ScatteringResult:
    """Full scattering pipeline for one input state."""
    hits = state.cutoff_hits()
    if hits:
        occupied = any(
            c != 0 for mo, c in zip(state.modes, state.amplitudes) if mo.cutoff == state.omega_in
        )
        return _cutoff_limit_result(em, state, occupied)
    check_cutoff_guard(geom, state.omega_in, opts.cutoff_guard)

    energy = state.omega_in
    res = f_eval(em, geom, energy, opts)
    k_values = [wavenumber(mo, energy) for mo in state.modes]
    rho = [energy / k for k in k_values]
    u1, u2 = _excited_amplitudes_raw(em, state, res.value, res.variant, k_values)

    r: list[complex] = []
    for mo, k, p in zip(state.modes, k_values, rho):
        g1 = gauged_coupling(em, mo, k, 1)
        g2 = gauged_coupling(em, mo, k, 2)
        r.append(-2.0j * math.pi * p * (g1 * u1 + g2 * u2))

    weight = sum(abs(c) ** 2 / p for c, p in zip(state.amplitudes, rho))
    refl = [abs(rj) ** 2 / p / weight for rj, p in zip(r, rho)]
    trans = [abs(c + rj) ** 2 / p / weight for c, rj, p in zip(state.amplitudes, r, rho)]
    lam = [channel_lambda(em, mo, energy) for mo in state.modes]

    return ScatteringResult(
        omega_in=energy,
        modes=state.modes,
        amplitudes=state.amplitudes,
        r=tuple(r),
        reflectivity=tuple(refl),
        transmissivity=tuple(trans),
        total_reflectivity=sum(refl),
        total_transmissivity=sum(trans),
        f_value=res.value,
        variant=res.variant,
        lambda_channels=tuple(lam),
        rho=tuple(rho),
        boundary=None,
    )


def closed_form_R(
    em: EmitterParams,
    geom: WaveguideGeometry,
    omega_in: float,
    kind: str,
    opts: EvalOptions = DEFAULT_OPTS,
) -> float:
    """Total reflectivity Im(f)^2 / |f|^2 for the two reducing inputs.

    kind "single_mode_window" requires exactly one open channel; kind
    "css" applies in any open window (the decay sums then run over all
    open modes automatically).
    """
    modes = open_modes(geom, omega_in)
    j_max = len(modes)
    if kind == "single_mode_window":
        if j_max != 1:
            raise ValueError(
                f"single-mode closed form needs one open channel, found {j_max}"
            )
    elif kind == "css":
        if j_max < 1:
            raise ValueError("no open modes: closed form undefined in the cutoff region")
    else:
        raise ValueError(f"unknown closed-form kind {kind!r}")
    check_cutoff_guard(geom, omega_in, opts.cutoff_guard)
    f = f_eval(em, geom, omega_in, opts).value
    if f == 0:
        raise SingularResolventError("resolvent f vanished")
    return f.imag**2 / abs(f) ** 2


def closed_form_total_R(
    em: EmitterParams,
    geom: WaveguideGeometry,
    state: InputState,
    opts: EvalOptions = DEFAULT_OPTS,
) -> float:
    """Total reflectivity of an arbitrary input, straight from f(E).

        R = |Im f / f|^2 |sum_j c_j omega_j|^2
            / [ sum_j omega_j^2/k_j * sum_j |c_j|^2 k_j ].

    Independent of the channel-coefficient pipeline; used as its check.
    """
    energy = state.omega_in
    check_cutoff_guard(geom, energy, opts.cutoff_guard)
    f = f_eval(em, geom, energy, opts).value
    if f == 0:
        raise SingularResolventError("resolvent f vanished")
    k_values = [wavenumber(mo, energy) for mo in state.modes]
    coherent = abs(sum(c * mo.cutoff for c, mo in zip(state.amplitudes, state.modes))) ** 2
    density = sum(mo.cutoff**2 / k for mo, k in zip(state.modes, k_values))
    flux = sum(abs(c) ** 2 * k for c, k in zip(state.amplitudes, k_values))
    return (f.imag / abs(f)) ** 2 * coherent / (density * flux)


@dataclass(frozen=True)
class SingleModeLaws:
    """Closed-form channel laws for a single-mode input in a multi-mode window."""

    omega_in: float
    n: int
    reflectivity: tuple[float, ...]
    transmissivity_n: float
    total_reflectivity: float
    lambda_channels: tuple[float, ...]
    lambda_total: float
    f_value: complex


def single_mode_input_laws(
    em: EmitterParams,
    geom: WaveguideGeometry,
    omega_in: float,
    n: int,
    opts: EvalOptions = DEFAULT_OPTS,
) -> SingleModeLaws:
    """R_j = Lambda_n Lambda_j / |f|^2, T_n = |1 - i Lambda_n / f|^2,
    R = Lambda_n Lambda / |f|^2 for a photon entering in mode n.

    |Lambda| equals |Im f|; the identity is asserted here because the
    two are computed along different routes.
    """
    modes = open_modes(geom, omega_in)
    if n < 1 or n > len(modes):
        raise EvanescentModeError(f"mode rank {n} is not open at {omega_in} PHz")
    check_cutoff_guard(geom, omega_in, opts.cutoff_guard)
    f = f_eval(em, geom, omega_in, opts).value
    if f == 0:
        raise SingularResolventError("resolvent f vanished")
    lam = [channel_lambda(em, mo, omega_in) for mo in modes]
    lam_total = sum(lam)
    if em.variant == "generic" and not math.isclose(
        abs(lam_total), abs(f.imag), rel_tol=1e-9, abs_tol=1e-15
    ):
        raise AssertionError(
            f"|Lambda| = {abs(lam_total)} disagrees with |Im f| = {abs(f.imag)}"
        )
    lam_n = lam[n - 1]
    denom = abs(f) ** 2
    refl = tuple(lam_n * lj / denom for lj in lam)
    t_n = abs(1.0 - 1.0j * lam_n / f) ** 2
    total = lam_n * lam_total / denom
    return SingleModeLaws(
        omega_in=omega_in,
        n=n,
        reflectivity=refl,
        transmissivity_n=t_n,
        total_reflectivity=total,
        lambda_channels=tuple(lam),
        lambda_total=lam_total,
        f_value=f,
    )


def s_matrix_channel(
    em: EmitterParams,
    geom: WaveguideGeometry,
    omega: float,
    j_out: int,
    j_in: int,
    opts: EvalOptions = DEFAULT_OPTS,
) -> complex:
    """Smooth on-shell T-matrix factor between two open channels.

    The energy-conserving delta is factored out by the forward/backward
    channel decomposition; the reflection coefficient of scatter() for a
    pure rank-j_in input is rho_{j_out} times this quantity. Symmetric
    in (j_out, j_in) because the couplings are real.
    """
    modes = open_modes(geom, omega)
    j_max = len(modes)
    for rank in (j_out, j_in):
        if rank < 1 or rank > j_max:
            raise EvanescentModeError(f"channel rank {rank} is closed at {omega} PHz")
    check_cutoff_guard(geom, omega, opts.cutoff_guard)
    state = make_single_mode(geom, omega, j_in)
    res = f_eval(em, geom, omega, opts)
    k_values = [wavenumber(mo, omega) for mo in modes]
    u1, u2 = _excited_amplitudes_raw(em, state, res.value, res.variant, k_values)
    mo_out = modes[j_out - 1]
    k_out = k_values[j_out - 1]
    g1 = gauged_coupling(em, mo_out, k_out, 1)
    g2 = gauged_coupling(em, mo_out, k_out, 2)
    return -2.0j * math.pi * (g1 * u1 + g2 * u2)


def build_input(geom: WaveguideGeometry, omega_in: float, input_kind: str) -> InputState:
    """Input factory keyed by the CLI's kind string.

    input_kind: "css", "dark", or "single:<rank>".
    """
    if input_kind == "css":
        return make_css(geom, omega_in)
    if input_kind == "dark":
        return make_dark(geom, omega_in)
    if input_kind.startswith("single:"):
        return make_single_mode(geom, omega_in, int(input_kind.split(":", 1)[1]))
    raise ValueError(f"unknown input kind {input_kind!r}")


def reflection_spectrum(
    em: EmitterParams,
    geom: WaveguideGeometry,
    omegas: list[float],
    input_kind: str,
    opts: EvalOptions = DEFAULT_OPTS,
) -> list[ScatteringResult | None]:
    """scatter() over a frequency grid; None where the input is undefined."""
    if input_kind not in ("css", "dark") and not input_kind.startswith("single:"):
        raise ValueError(f"unknown input kind {input_kind!r}")
    results: list[ScatteringResult | None] = []
    for w in omegas:
        try:
            state = build_input(geom, w, input_kind)
        except (EvanescentModeError, CutoffProximityError, ValueError):
            results.append(None)
            continue
        results.append(scatter(em, geom, state, opts))
    return results
