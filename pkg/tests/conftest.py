import pytest

from wgscatter import EmitterParams, WaveguideGeometry


@pytest.fixture
def geom() -> WaveguideGeometry:
    """The reference cross section used throughout: b = 1.2 um, a = 1.5 b."""
    return WaveguideGeometry(a=1.8, b=1.2)


@pytest.fixture
def em_two_peaks() -> EmitterParams:
    """Both transitions inside the single-mode window (regime iii)."""
    return EmitterParams(omega1=1.3, omega2=1.1, lambda1=0.1, lambda2=0.1)


@pytest.fixture
def em_two_mode() -> EmitterParams:
    """Transitions inside the two-mode window."""
    return EmitterParams(omega1=2.0, omega2=1.8, lambda1=0.05, lambda2=0.05)
