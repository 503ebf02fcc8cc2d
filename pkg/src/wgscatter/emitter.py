"""V-type three-level emitter parameters and mode-dependent coupling.

The emitter sits at the center of the cross section with its dipole
along z, so it couples only to odd-odd TM modes, with strength

    g_{j,k}^(i) = -lambda_i * Omega_i * omega_j / omega_{j,k}^(3/2)
                  * sin(m pi/2) * sin(n pi/2).

lambda_i = p_i / sqrt(pi a b) is dimensionless. Couplings are real;
the sine factors contribute only a mode-parity sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import TmMode, WaveguideGeometry, dispersion

# Relative tolerance below which the two transitions are treated as
# degenerate. The generic resolvent has a removable 0/0 at E = Omega
# when Omega1 = Omega2; the factored degenerate form avoids it.
DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class EmitterParams:
    """Transition frequencies (PHz) and dimensionless couplings.

    lambda2 = 0 (exactly) reduces the emitter to a two-level system on
    transition 1, and symmetrically for lambda1 = 0. Both couplings may
    be zero, which describes a decoupled emitter (free propagation).
    """

    omega1: float
    omega2: float
    lambda1: float
    lambda2: float

    def __post_init__(self) -> None:
        if not (self.omega1 > 0.0 and self.omega2 > 0.0):
            raise ValueError("transition frequencies must be positive")
        if self.lambda1 < 0.0 or self.lambda2 < 0.0:
            raise ValueError("couplings must be non-negative")

    @property
    def variant(self) -> str:
        """One of "degenerate", "two_level", "generic".

        Degeneracy uses a relative tolerance; the two-level reduction
        requires an exact zero coupling, because a tolerance there would
        silently change the physics of a small but genuine lambda.
        """
        if abs(self.omega1 - self.omega2) <= DEGENERACY_RTOL * max(self.omega1, self.omega2):
            return "degenerate"
        if (self.lambda1 == 0.0) != (self.lambda2 == 0.0):
            return "two_level"
        return "generic"

    @property
    def active_transition(self) -> int:
        """The surviving transition index in the two-level reduction."""
        if self.variant != "two_level":
            raise ValueError("active_transition is defined only for the two-level variant")
        return 1 if self.lambda2 == 0.0 else 2

    def transition(self, i: int) -> tuple[float, float]:
        """(Omega_i, lambda_i) for i in {1, 2}."""
        if i == 1:
            return self.omega1, self.lambda1
        if i == 2:
            return self.omega2, self.lambda2
        raise ValueError(f"transition index must be 1 or 2, got {i}")


def lambda_from_dipole(p: float, geom: WaveguideGeometry) -> float:
    """Dimensionless coupling lambda = p / sqrt(pi a b)."""
    if p < 0.0:
        raise ValueError(f"dipole moment must be non-negative, got {p}")
    return p / math.sqrt(math.pi * geom.a * geom.b)


def coupling(em: EmitterParams, mode: TmMode, k: float, transition: int) -> float:
    """Mode- and wavenumber-dependent coupling strength (real).

    Carries the physical center-field parity sign of the mode. The
    scattering module works in the rephased mode basis where that sign
    is absorbed into the mode itself; see scattering.gauged_coupling.
    """
    omega, lam = em.transition(transition)
    w_k = dispersion(mode, k)
    return -lam * omega * mode.cutoff / w_k**1.5 * mode.parity_sign
