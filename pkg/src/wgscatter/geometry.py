"""Rectangular-waveguide TM-mode catalogue, dispersion and working regions.

Internal units throughout the package: angular frequencies in PHz
(10^15 rad/s), lengths in micrometers, C_LIGHT = 0.29979 um*PHz.
With b = 1.2 um and a = 1.5 b this places the two lowest odd-odd
cutoffs at 0.943 and 1.755 PHz.

Only odd-odd TM_mn modes are enumerated: a z-oriented dipole at the
center of the cross section has zero overlap with every even-index
mode, so they never participate in scattering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BranchPointError, EvanescentModeError

C_LIGHT = 0.29979  # um * PHz

# Equal cutoffs (square cross section) are ordered lexicographically
# by (m, n); ranks must not depend on float noise.
_TIE_RTOL = 1e-12


@dataclass(frozen=True)
class WaveguideGeometry:
    """Rectangular cross section: a = length (x), b = width (y), in um."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValueError(f"cross section must be positive, got a={self.a}, b={self.b}")

    @property
    def aspect(self) -> float:
        """Aspect ratio l = a/b; fixes the ordering of the TM modes."""
        return self.a / self.b


@dataclass(frozen=True)
class TmMode:
    """One TM_mn propagation channel.

    rank is the 1-based position in ascending-cutoff order for the
    geometry the mode was enumerated from.
    """

    m: int
    n: int
    cutoff: float
    rank: int

    @property
    def parity_sign(self) -> int:
        """sin(m pi/2) * sin(n pi/2) for odd m, n: the center-field parity."""
        sm = 1 if self.m % 4 == 1 else -1
        sn = 1 if self.n % 4 == 1 else -1
        return sm * sn

    @property
    def label(self) -> str:
        return f"TM{self.m}{self.n}"


def cutoff_frequency(geom: WaveguideGeometry, m: int, n: int) -> float:
    """Cutoff of TM_mn: c*pi*sqrt((m/a)^2 + (n/b)^2), in PHz."""
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ValueError(f"TM indices must be positive odd integers, got (m={m}, n={n})")
    return C_LIGHT * math.pi * math.hypot(m / geom.a, n / geom.b)


def enumerate_modes(geom: WaveguideGeometry, omega_max: float) -> list[TmMode]:
    """All odd-odd modes with cutoff <= omega_max, ascending in cutoff.

    Ties (possible for a square cross section) break lexicographically
    on (m, n). Returns an empty list when omega_max is below the TM11
    cutoff; the caller decides whether that is an error.
    """
    if omega_max <= 0.0:
        return []
    scale = C_LIGHT * math.pi
    m_top = int(geom.a * omega_max / scale) + 1
    n_top = int(geom.b * omega_max / scale) + 1
    found: list[tuple[float, int, int]] = []
    for m in range(1, m_top + 1, 2):
        for n in range(1, n_top + 1, 2):
            w = cutoff_frequency(geom, m, n)
            if w <= omega_max:
                found.append((w, m, n))
    # Tie-break at equal cutoffs (square section): larger m first, the
    # order the modes hold for any a > b, so ranks vary continuously
    # with the aspect ratio.
    found.sort(key=lambda t: (t[0], -t[1], t[2]))
    return [TmMode(m=m, n=n, cutoff=w, rank=j + 1) for j, (w, m, n) in enumerate(found)]


def first_modes(geom: WaveguideGeometry, count: int) -> list[TmMode]:
    """The count lowest-cutoff odd-odd modes."""
    if count < 1:
        return []
    omega = 3.0 * cutoff_frequency(geom, 1, 1)
    modes = enumerate_modes(geom, omega)
    while len(modes) < count:
        omega *= 2.0
        modes = enumerate_modes(geom, omega)
    return modes[:count]


def dispersion(mode: TmMode, k: float) -> float:
    """omega_{j,k} = sqrt(omega_j^2 + k^2)."""
    return math.hypot(mode.cutoff, k)


def wavenumber(mode: TmMode, omega: float) -> float:
    """Propagating wavenumber k_j = sqrt(omega^2 - omega_j^2), omega >= cutoff."""
    if omega < mode.cutoff:
        raise EvanescentModeError(
            f"{mode.label} is evanescent at {omega} PHz (cutoff {mode.cutoff} PHz)"
        )
    return math.sqrt((omega - mode.cutoff) * (omega + mode.cutoff))


def state_density(mode: TmMode, omega: float) -> float:
    """Per-mode photon state density rho_j = omega / k_j.

    Diverges at the cutoff (zero group velocity); exact coincidence is
    reported as a branch-point error so callers can apply the limit
    behaviour explicitly.
    """
    if omega == mode.cutoff:
        raise BranchPointError(f"state density diverges at the {mode.label} cutoff")
    return omega / wavenumber(mode, omega)


def critical_size(omega_in: float, aspect: float, m: int, n: int) -> float:
    """Cross-section width b at which TM_mn cuts off exactly at omega_in.

    For fixed aspect l = a/b the cutoffs scale as 1/b, so
    b_j = (c*pi/omega_in) * sqrt(m^2/l^2 + n^2).
    """
    if omega_in <= 0.0:
        raise ValueError(f"omega_in must be positive, got {omega_in}")
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        raise ValueError(f"TM indices must be positive odd integers, got (m={m}, n={n})")
    return (C_LIGHT * math.pi / omega_in) * math.hypot(m / aspect, n)


@dataclass(frozen=True)
class Region:
    """Operating region of the waveguide at a given photon energy.

    kind is one of "cutoff", "single_mode", "multi_mode"; j_max counts
    the open channels; at_cutoff_rank flags exact coincidence with a
    cutoff (the boundary case where the state density diverges).
    """

    kind: str
    j_max: int
    at_cutoff_rank: int | None = None

    @property
    def label(self) -> str:
        if self.kind == "multi_mode":
            return f"multi_mode:{self.j_max}"
        return self.kind


def open_modes(geom: WaveguideGeometry, omega_in: float) -> list[TmMode]:
    """Modes with cutoff <= omega_in (an exact tie is the boundary case)."""
    return enumerate_modes(geom, omega_in)


def next_cutoff(geom: WaveguideGeometry, omega_in: float) -> float:
    """Lowest cutoff strictly above omega_in."""
    omega = max(omega_in, cutoff_frequency(geom, 1, 1)) * 1.5
    while True:
        for mode in enumerate_modes(geom, omega):
            if mode.cutoff > omega_in:
                return mode.cutoff
        omega *= 2.0


def classify_region(geom: WaveguideGeometry, omega_in: float) -> Region:
    """cutoff / single_mode / multi_mode(j_max) classification of omega_in."""
    if omega_in <= 0.0:
        raise ValueError(f"omega_in must be positive, got {omega_in}")
    modes = open_modes(geom, omega_in)
    boundary = next((mo.rank for mo in modes if mo.cutoff == omega_in), None)
    j_max = len(modes)
    if j_max == 0:
        return Region(kind="cutoff", j_max=0)
    if j_max == 1:
        kind = "single_mode"
    else:
        kind = "multi_mode"
    return Region(kind=kind, j_max=j_max, at_cutoff_rank=boundary)


def degenerate_pairs(modes: list[TmMode]) -> set[int]:
    """Ranks of modes sharing a cutoff with a neighbour (square-section ties)."""
    tied: set[int] = set()
    for prev, cur in zip(modes, modes[1:]):
        if abs(cur.cutoff - prev.cutoff) <= _TIE_RTOL * cur.cutoff:
            tied.add(prev.rank)
            tied.add(cur.rank)
    return tied
