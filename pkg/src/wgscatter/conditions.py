"""Perfect-transmission and perfect-reflection conditions.

Perfect transmission (the EIT mechanism) requires Im f = 0. In any open
window Im f = K(E) y(E) with K > 0 and the affine

    y(E) = lambda_1^2 Omega_1^2 (E - Omega_2)
         + lambda_2^2 Omega_2^2 (E - Omega_1),

so the transparency point has the closed form

    omega* = (l1^2 O1^2 O2 + l2^2 O2^2 O1) / (l1^2 O1^2 + l2^2 O2^2),

always between the two transition frequencies. It exists only for the
non-degenerate V emitter with both couplings on.

Perfect reflection (Fano resonance) requires Re f = 0, a transcendental
equation through the level shifts; roots are located by a scan over the
window plus bisection. In the weak-coupling regime they sit slightly
above the bare transition frequencies (blue shift).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .emitter import EmitterParams
from .geometry import WaveguideGeometry, first_modes
from .selfenergy import DEFAULT_OPTS, EvalOptions, f_eval

# Scan density for bracketing Re f sign changes; a too-coarse grid can
# in principle miss paired roots, so the count is caller-adjustable.
DEFAULT_SCAN_POINTS = 2000
_ROOT_RTOL = 1e-12
# Extra bracket half-widths seeded at the bare transitions: resonance
# widths scale with lambda^2, so narrow peaks are not skipped.
_SEED_WIDTHS = 5.0


@dataclass(frozen=True)
class FanoRoot:
    """A perfect-reflection energy with its verification residual."""

    energy: float
    residual: float
    nearest_transition: int
    blueshift: float


@dataclass(frozen=True)
class ConditionReport:
    """Roots, residuals and regime for one emitter/window combination."""

    window: tuple[float, float]
    regime: str
    eit_root: float | None
    eit_residual: float | None
    fano_roots: tuple[FanoRoot, ...]


def single_mode_window(geom: WaveguideGeometry, guard: float = 1e-9) -> tuple[float, float]:
    """The (omega_1, omega_2) window, inset by the cutoff guard."""
    modes = first_modes(geom, 2)
    lo = modes[0].cutoff
    hi = modes[1].cutoff
    return lo * (1.0 + 2.0 * guard), hi * (1.0 - 2.0 * guard)


def eit_root(em: EmitterParams, window: tuple[float, float] | None = None) -> float | None:
    """Closed-form transparency energy, or None when it cannot exist.

    Absent for the degenerate and two-level variants, and when a window
    is given, also whenever the root falls outside it.
    """
    if em.variant != "generic":
        return None
    w1 = em.lambda1**2 * em.omega1**2
    w2 = em.lambda2**2 * em.omega2**2
    root = (w1 * em.omega2 + w2 * em.omega1) / (w1 + w2)
    if window is not None and not (window[0] < root < window[1]):
        return None
    return root


def _re_f(em: EmitterParams, geom: WaveguideGeometry, energy: float, opts: EvalOptions) -> float:
    return f_eval(em, geom, energy, opts).value.real


def _bisect(
    em: EmitterParams,
    geom: WaveguideGeometry,
    lo: float,
    hi: float,
    f_lo: float,
    opts: EvalOptions,
) -> float:
    while hi - lo > _ROOT_RTOL * hi:
        mid = 0.5 * (lo + hi)
        f_mid = _re_f(em, geom, mid, opts)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def fano_roots(
    em: EmitterParams,
    geom: WaveguideGeometry,
    window: tuple[float, float] | None = None,
    opts: EvalOptions = DEFAULT_OPTS,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> list[float]:
    """All bracketed zeros of Re f inside the window, ascending.

    Scan-and-bisect with extra brackets seeded around each transition
    frequency (width ~ lambda_i^2 Omega_i). Roots found by different
    brackets are deduplicated.
    """
    if window is None:
        window = single_mode_window(geom, opts.cutoff_guard)
    lo, hi = window
    if not (0.0 < lo < hi):
        raise ValueError(f"invalid window {window}")

    grid = [lo + (hi - lo) * i / (scan_points - 1) for i in range(scan_points)]
    brackets: list[tuple[float, float]] = []
    values = [_re_f(em, geom, w, opts) for w in grid]
    for (a, fa), (b, fb) in zip(zip(grid, values), zip(grid[1:], values[1:])):
        if fa == 0.0:
            brackets.append((a, a))
        elif (fa > 0.0) != (fb > 0.0):
            brackets.append((a, b))

    for i in (1, 2):
        omega_i, lam_i = em.transition(i)
        half = _SEED_WIDTHS * lam_i**2 * omega_i
        a = max(lo, omega_i - half)
        b = min(hi, omega_i + half)
        if a < b:
            fa = _re_f(em, geom, a, opts)
            fb = _re_f(em, geom, b, opts)
            if (fa > 0.0) != (fb > 0.0):
                brackets.append((a, b))

    roots: list[float] = []
    for a, b in brackets:
        if a == b:
            root = a
        else:
            root = _bisect(em, geom, a, b, _re_f(em, geom, a, opts), opts)
        if all(abs(root - r) > 1e-9 * root for r in roots):
            roots.append(root)
    roots.sort()
    return roots


def classify_regime(em: EmitterParams, geom: WaveguideGeometry) -> str:
    """Reflectance-spectrum regime in the single-mode window.

    i:   both transitions below the window (monotone falling R)
    ii:  one below, one inside (single reflection peak)
    iii: both inside, distinct (two peaks, one transparency valley)
    iv:  degenerate inside (one peak, no valley)
    "unclassified" when a transition reaches the second cutoff, where
    the single-mode analysis stops applying.
    """
    modes = first_modes(geom, 2)
    w1, w2 = modes[0].cutoff, modes[1].cutoff
    lo_t = min(em.omega1, em.omega2)
    hi_t = max(em.omega1, em.omega2)
    if hi_t >= w2:
        return "unclassified"
    if em.variant == "degenerate":
        if lo_t < w1:
            return "i"
        return "iv"
    if hi_t < w1:
        return "i"
    if lo_t < w1 < hi_t:
        return "ii"
    if w1 < lo_t:
        return "iii"
    return "unclassified"


def _attribute_root(em: EmitterParams, root: float) -> int:
    """Which transition a reflection resonance belongs to.

    For the generic variant the transparency point always separates the
    two resonances, so it is the robust divider even when the blue
    shift pushes a root past the naive midpoint. Reductions have only
    one resonance.
    """
    if em.variant == "two_level":
        return em.active_transition
    if em.variant == "degenerate":
        return 1
    divider = eit_root(em)
    lower = 1 if em.omega1 <= em.omega2 else 2
    upper = 2 if lower == 1 else 1
    return lower if root <= divider else upper


def blueshift(
    em: EmitterParams,
    geom: WaveguideGeometry,
    transition: int,
    window: tuple[float, float] | None = None,
    opts: EvalOptions = DEFAULT_OPTS,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> float | None:
    """Shift of the reflection resonance belonging to transition i above
    its bare frequency; None when that resonance has no in-window root."""
    roots = fano_roots(em, geom, window, opts, scan_points)
    mine = [r for r in roots if _attribute_root(em, r) == transition]
    if not mine:
        return None
    omega_i, _ = em.transition(transition)
    return min(mine, key=lambda r: abs(r - omega_i)) - omega_i


def analyze(
    em: EmitterParams,
    geom: WaveguideGeometry,
    window: tuple[float, float] | None = None,
    opts: EvalOptions = DEFAULT_OPTS,
    scan_points: int = DEFAULT_SCAN_POINTS,
) -> ConditionReport:
    """Full condition report: regime, EIT root, Fano roots + residuals."""
    if window is None:
        window = single_mode_window(geom, opts.cutoff_guard)
    regime = classify_regime(em, geom)
    root = eit_root(em, window)
    eit_residual = None
    if root is not None:
        eit_residual = abs(f_eval(em, geom, root, opts).value.imag)
    fano: list[FanoRoot] = []
    for r in fano_roots(em, geom, window, opts, scan_points):
        residual = abs(f_eval(em, geom, r, opts).value.real)
        owner = _attribute_root(em, r)
        if em.variant == "degenerate":
            bare = 0.5 * (em.omega1 + em.omega2)
        else:
            bare = em.omega1 if owner == 1 else em.omega2
        fano.append(
            FanoRoot(energy=r, residual=residual, nearest_transition=owner, blueshift=r - bare)
        )
    return ConditionReport(
        window=window,
        regime=regime,
        eit_root=root,
        eit_residual=eit_residual,
        fano_roots=tuple(fano),
    )


def transparency_frequency_equal_couplings(omega1: float, omega2: float) -> float:
    """EIT energy for lambda_1 = lambda_2, used as an independent check:
    (O1^2 O2 + O1 O2^2) / (O1^2 + O2^2)."""
    return (omega1**2 * omega2 + omega1 * omega2**2) / (omega1**2 + omega2**2)
