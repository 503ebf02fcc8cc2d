"""Single-photon scattering in a rectangular waveguide with a V-type emitter.

Units: angular frequency in PHz (1e15 rad/s), lengths in um,
C_LIGHT = 0.29979 um*PHz.
"""

from .conditions import (
    ConditionReport,
    FanoRoot,
    analyze,
    blueshift,
    classify_regime,
    eit_root,
    fano_roots,
    single_mode_window,
)
from .emitter import EmitterParams, coupling, lambda_from_dipole
from .errors import (
    BranchPointError,
    ConfigError,
    CutoffProximityError,
    EvanescentModeError,
    OracleConvergenceError,
    SingularResolventError,
)
from .geometry import (
    C_LIGHT,
    Region,
    TmMode,
    WaveguideGeometry,
    classify_region,
    critical_size,
    cutoff_frequency,
    dispersion,
    enumerate_modes,
    first_modes,
    open_modes,
    state_density,
    wavenumber,
)
from .scattering import (
    InputState,
    ScatteringResult,
    SingleModeLaws,
    build_input,
    channel_lambda,
    closed_form_R,
    closed_form_total_R,
    excited_amplitudes,
    gauged_coupling,
    make_css,
    make_dark,
    make_input,
    make_single_mode,
    reflection_spectrum,
    s_matrix_channel,
    scatter,
    single_mode_input_laws,
)
from .selfenergy import (
    EvalOptions,
    ResolventValue,
    SelfEnergyBreakdown,
    decay_rate,
    f_eval,
    h_numeric_oracle,
    h_total,
    lamb_shift,
    mode_self_energy,
    self_energy_breakdown,
    zeta,
)

__version__ = "0.1.0"

__all__ = [
    "C_LIGHT",
    "BranchPointError",
    "ConditionReport",
    "ConfigError",
    "CutoffProximityError",
    "EmitterParams",
    "EvalOptions",
    "EvanescentModeError",
    "FanoRoot",
    "InputState",
    "OracleConvergenceError",
    "Region",
    "ResolventValue",
    "ScatteringResult",
    "SelfEnergyBreakdown",
    "SingleModeLaws",
    "SingularResolventError",
    "TmMode",
    "WaveguideGeometry",
    "analyze",
    "blueshift",
    "build_input",
    "channel_lambda",
    "classify_regime",
    "classify_region",
    "closed_form_R",
    "closed_form_total_R",
    "coupling",
    "critical_size",
    "cutoff_frequency",
    "decay_rate",
    "dispersion",
    "eit_root",
    "enumerate_modes",
    "excited_amplitudes",
    "f_eval",
    "fano_roots",
    "first_modes",
    "gauged_coupling",
    "h_numeric_oracle",
    "h_total",
    "lamb_shift",
    "lambda_from_dipole",
    "make_css",
    "make_dark",
    "make_input",
    "make_single_mode",
    "mode_self_energy",
    "open_modes",
    "reflection_spectrum",
    "s_matrix_channel",
    "scatter",
    "self_energy_breakdown",
    "single_mode_input_laws",
    "single_mode_window",
    "state_density",
    "wavenumber",
    "zeta",
]
