"""Emitter self-energy h^(i)(E) = Delta^(i)(E) - i Gamma^(i)(E).

Per mode j and transition i, for E above the cutoff omega_j,

    Gamma_j^(i) = 2 pi Omega_i^2 lambda_i^2 omega_j^2
                  / (E^2 sqrt(E^2 - omega_j^2)),

and Gamma_j^(i) = 0 below it. The level shift on both branches is

    Delta_j^(i) = (Omega_i^2 lambda_i^2 / E^2)
                  * [2E + pi omega_j + omega_j^2 zeta_j(E)
                     / sqrt(|omega_j^2 - E^2|)],

with the branch function

    zeta_j = 2 ln(omega_j / (E - sqrt(E^2 - omega_j^2)))   (E > omega_j)
    zeta_j = -pi - 2 arctan(E / sqrt(omega_j^2 - E^2))     (E < omega_j).

The open-mode (blue) contribution shifts levels upward; contributions
from still-closed modes (red) are small and are dropped by default,
matching the regime where the spectra are studied. Everything here is
the exact principal-value reduction of the continuum integral

    h_j^(i)(E) = int dk |g_{j,k}^(i)|^2 / (E - omega_{j,k} + i 0+),

which h_numeric_oracle evaluates independently by symmetric-exclusion
quadrature for validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.integrate import quad

from .emitter import EmitterParams
from .errors import BranchPointError, CutoffProximityError, OracleConvergenceError
from .geometry import TmMode, WaveguideGeometry, enumerate_modes, first_modes


@dataclass(frozen=True)
class EvalOptions:
    """Knobs shared by self-energy and scattering evaluation.

    include_red_shift: keep the level-shift contribution of closed
        modes. Off by default; the open-mode sum is then finite and
        exact. When on, the sum is truncated at max_modes modes.
    cutoff_guard: relative margin around every cutoff inside which
        evaluation is refused (intermediates diverge there).
    """

    include_red_shift: bool = False
    max_modes: int = 64
    cutoff_guard: float = 1e-9


DEFAULT_OPTS = EvalOptions()


def zeta(mode: TmMode, energy: float) -> float:
    """Branch function of the level-shift integral; see module docstring.

    Positive above the cutoff (blue side, -> 0 at the cutoff), negative
    below (-> -pi as E -> 0).
    """
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy}")
    wj = mode.cutoff
    if energy == wj:
        raise BranchPointError(f"zeta has a branch point at the {mode.label} cutoff")
    if energy > wj:
        k = math.sqrt((energy - wj) * (energy + wj))
        return 2.0 * math.log(wj / (energy - k))
    kappa = math.sqrt((wj - energy) * (wj + energy))
    return -math.pi - 2.0 * math.atan(energy / kappa)


def decay_rate(em: EmitterParams, transition: int, mode: TmMode, energy: float) -> float:
    """Per-mode radiative decay rate Gamma_j^(i)(E); zero below cutoff."""
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy}")
    wj = mode.cutoff
    if energy == wj:
        raise BranchPointError(f"decay rate diverges at the {mode.label} cutoff")
    if energy < wj:
        return 0.0
    omega, lam = em.transition(transition)
    k = math.sqrt((energy - wj) * (energy + wj))
    return 2.0 * math.pi * (omega * lam * wj) ** 2 / (energy**2 * k)


def lamb_shift(
    em: EmitterParams,
    transition: int,
    mode: TmMode,
    energy: float,
    include_red_shift: bool = False,
) -> float:
    """Per-mode level shift Delta_j^(i)(E).

    Closed modes (omega_j > E) contribute the red branch, returned as 0
    unless include_red_shift is set.
    """
    wj = mode.cutoff
    if energy < wj and not include_red_shift:
        return 0.0
    z = zeta(mode, energy)
    omega, lam = em.transition(transition)
    root = math.sqrt(abs(wj - energy) * (wj + energy))
    bracket = 2.0 * energy + math.pi * wj + wj**2 * z / root
    return (omega * lam) ** 2 / energy**2 * bracket


def mode_self_energy(
    em: EmitterParams,
    transition: int,
    mode: TmMode,
    energy: float,
    include_red_shift: bool = False,
) -> complex:
    """Delta_j^(i) - i Gamma_j^(i) for a single mode."""
    return complex(
        lamb_shift(em, transition, mode, energy, include_red_shift),
        -decay_rate(em, transition, mode, energy),
    )


def check_cutoff_guard(geom: WaveguideGeometry, energy: float, guard: float) -> None:
    """Refuse energies within the relative guard band of any cutoff."""
    for mode in enumerate_modes(geom, energy * (1.0 + 10.0 * max(guard, 1e-15))):
        if abs(energy - mode.cutoff) < guard * energy:
            raise CutoffProximityError(
                f"energy {energy} PHz is within the guard margin of the "
                f"{mode.label} cutoff at {mode.cutoff} PHz"
            )


def _contributing_modes(
    geom: WaveguideGeometry, energy: float, opts: EvalOptions
) -> list[TmMode]:
    if opts.include_red_shift:
        return first_modes(geom, opts.max_modes)
    return enumerate_modes(geom, energy)


@dataclass(frozen=True)
class SelfEnergyBreakdown:
    """Per-mode and per-transition decomposition of the self-energy."""

    energy: float
    modes: tuple[TmMode, ...]
    delta: tuple[tuple[float, ...], tuple[float, ...]]  # [transition-1][mode]
    gamma: tuple[tuple[float, ...], tuple[float, ...]]
    zeta_values: tuple[float, ...]
    include_red_shift: bool

    def delta_total(self, transition: int) -> float:
        return sum(self.delta[transition - 1])

    def gamma_total(self, transition: int) -> float:
        return sum(self.gamma[transition - 1])

    def h(self, transition: int) -> complex:
        return complex(self.delta_total(transition), -self.gamma_total(transition))


def self_energy_breakdown(
    em: EmitterParams,
    geom: WaveguideGeometry,
    energy: float,
    opts: EvalOptions = DEFAULT_OPTS,
) -> SelfEnergyBreakdown:
    """Evaluate every Delta_j^(i), Gamma_j^(i) at the given energy."""
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy}")
    check_cutoff_guard(geom, energy, opts.cutoff_guard)
    modes = _contributing_modes(geom, energy, opts)
    delta = tuple(
        tuple(lamb_shift(em, i, mo, energy, opts.include_red_shift) for mo in modes)
        for i in (1, 2)
    )
    gamma = tuple(tuple(decay_rate(em, i, mo, energy) for mo in modes) for i in (1, 2))
    zetas = tuple(zeta(mo, energy) for mo in modes)
    return SelfEnergyBreakdown(
        energy=energy,
        modes=tuple(modes),
        delta=delta,
        gamma=gamma,
        zeta_values=zetas,
        include_red_shift=opts.include_red_shift,
    )


def h_total(
    em: EmitterParams,
    transition: int,
    geom: WaveguideGeometry,
    energy: float,
    opts: EvalOptions = DEFAULT_OPTS,
) -> complex:
    """Total self-energy h^(i)(E) summed over contributing modes."""
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy}")
    check_cutoff_guard(geom, energy, opts.cutoff_guard)
    total = 0.0 + 0.0j
    for mode in _contributing_modes(geom, energy, opts):
        total += mode_self_energy(em, transition, mode, energy, opts.include_red_shift)
    return total


@dataclass(frozen=True)
class ResolventValue:
    """f(E) with the variant that produced it."""

    energy: float
    value: complex
    variant: str


def f_eval(
    em: EmitterParams,
    geom: WaveguideGeometry,
    energy: float,
    opts: EvalOptions = DEFAULT_OPTS,
) -> ResolventValue:
    """Resolvent denominator f(E), variant-aware.

    generic:    (E-O1)(E-O2) - (E-O2) h1 - (E-O1) h2
    degenerate: E - O - h1 - h2          (O1 = O2 = O)
    two_level:  E - O_a - h_a            (the surviving transition a)

    The generic form factors as (E-O) * f_degenerate when the
    transitions coincide; the factored form is used there so that the
    removable zero never contaminates the amplitudes.
    """
    variant = em.variant
    if variant == "degenerate":
        h1 = h_total(em, 1, geom, energy, opts)
        h2 = h_total(em, 2, geom, energy, opts)
        omega_bar = 0.5 * (em.omega1 + em.omega2)
        value = energy - omega_bar - h1 - h2
    elif variant == "two_level":
        a = em.active_transition
        omega_a, _ = em.transition(a)
        value = energy - omega_a - h_total(em, a, geom, energy, opts)
    else:
        h1 = h_total(em, 1, geom, energy, opts)
        h2 = h_total(em, 2, geom, energy, opts)
        value = (
            (energy - em.omega1) * (energy - em.omega2)
            - (energy - em.omega2) * h1
            - (energy - em.omega1) * h2
        )
    return ResolventValue(energy=energy, value=value, variant=variant)


# ---------------------------------------------------------------------------
# Independent quadrature oracle
# ---------------------------------------------------------------------------

# Symmetric exclusion radii around the on-shell pole, as fractions of E.
# The principal value is recovered by Richardson extrapolation in the
# radius (the excluded-window error is affine in delta to leading order).
_EXCLUSION_SCALES = (1e-3, 1e-4, 1e-5)
# The k integral is truncated where omega_{j,k} reaches this multiple of
# max(E, omega_j); the discarded tail falls off as 1/k^3.
_OMEGA_SPAN = 50.0


def h_numeric_oracle(
    em: EmitterParams,
    transition: int,
    mode: TmMode,
    energy: float,
    *,
    quad_limit: int = 300,
    convergence_rtol: float = 1e-4,
) -> complex:
    """Continuum integral for one mode's self-energy, done numerically.

    Evaluates int dk |g_{j,k}|^2 / (E - omega_{j,k} + i0+) as a
    principal-value quadrature with symmetric pole exclusion plus the
    exact -i pi residue term of the on-shell delta function. Shares no
    code with the closed forms above; used to validate them.
    """
    if energy <= 0.0:
        raise ValueError(f"energy must be positive, got {energy}")
    wj = mode.cutoff
    if energy == wj:
        raise BranchPointError("oracle undefined exactly at the cutoff")
    omega, lam = em.transition(transition)
    weight_num = (lam * omega * wj) ** 2  # |g|^2 * omega_{j,k}^3

    def integrand(k: float) -> float:
        w_k = math.hypot(wj, k)
        return weight_num / w_k**3 / (energy - w_k)

    k_top = math.sqrt((_OMEGA_SPAN * max(energy, wj)) ** 2 - wj**2)

    if energy < wj:
        val, _ = quad(integrand, 0.0, k_top, limit=quad_limit, epsabs=1e-13, epsrel=1e-11)
        return complex(2.0 * val, 0.0)

    k_pole = math.sqrt((energy - wj) * (energy + wj))

    def excluded(delta: float) -> float:
        total = 0.0
        if k_pole - delta > 0.0:
            lo, _ = quad(
                integrand, 0.0, k_pole - delta, limit=quad_limit, epsabs=1e-13, epsrel=1e-11
            )
            total += lo
        hi, _ = quad(
            integrand, k_pole + delta, k_top, limit=quad_limit, epsabs=1e-13, epsrel=1e-11
        )
        return 2.0 * (total + hi)

    v1, v2, v3 = (excluded(s * energy) for s in _EXCLUSION_SCALES)
    r12 = (10.0 * v2 - v1) / 9.0
    r23 = (10.0 * v3 - v2) / 9.0
    real = (100.0 * r23 - r12) / 99.0
    if abs(r23 - r12) > convergence_rtol * max(abs(real), 1e-12):
        raise OracleConvergenceError(
            f"principal-value extrapolation did not settle at E={energy}, "
            f"{mode.label}: stages {r12!r}, {r23!r}"
        )
    # Residue term: two on-shell roots k = +-k_pole, each weighted by
    # |g|^2 / |d omega/dk| = weight_num / E^3 * (E / k_pole).
    imag = -2.0 * math.pi * weight_num / (energy**2 * k_pole)
    return complex(real, imag)
