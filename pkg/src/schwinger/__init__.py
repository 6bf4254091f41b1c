"""Pair production in strong electric fields: Bogoliubov coefficients and
entanglement entropy for scalar and Dirac modes, with closed forms for
constant and Sauter-pulse profiles validated by a numerical mode-equation
oracle.

Quick tour::

    from schwinger import ModeParams, FieldProfile, Statistics, moduli, entropy

    params = ModeParams(m=1.0, q=1.0, k_perp=1.0, k_z=0.0)
    mod = moduli(params, FieldProfile.sauter(5.0, 0.5), Statistics.BOSON)
    print(mod.beta2_linear(), entropy(mod).S_bits)
"""

from .bogoliubov import (BogoliubovModuli, CancellationError,
                         DegenerateModeError, GammaPathRatio, HypergeomParams,
                         constant_field_moduli, hypergeom_params, moduli,
                         sauter_moduli, sauter_ratio_via_gamma)
from .entanglement import (BosonGeometric, EntropyReport, FermionFour,
                           entropy, entropy_boson, entropy_fermion,
                           fermion_max_entropy_field, mean_pair_number,
                           schmidt_spectrum, vacuum_persistence)
from .fields import (DimensionlessParams, FieldError, FieldProfile,
                     ModeParams, Statistics, dimensionless)
from .oracle import (KERNEL_BACKEND, OracleConfig, OracleConservationError,
                     OracleConvergenceError, OracleError, OracleResult,
                     OracleStepBudgetError, boson_mode_beta2,
                     fermion_mode_beta2, mode_beta2)
from .specfun import GammaPoleError, LogDomainValue, SaturationError
from .sweeps import (AXES, PRESET_NAMES, SweepRow, SweepSpec, figure_preset,
                     run_sweep)
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "AXES",
    "BogoliubovModuli",
    "BosonGeometric",
    "CancellationError",
    "CheckResult",
    "DegenerateModeError",
    "DimensionlessParams",
    "EntropyReport",
    "FermionFour",
    "FieldError",
    "FieldProfile",
    "GammaPathRatio",
    "GammaPoleError",
    "HypergeomParams",
    "KERNEL_BACKEND",
    "LogDomainValue",
    "ModeParams",
    "OracleConfig",
    "OracleConservationError",
    "OracleConvergenceError",
    "OracleError",
    "OracleResult",
    "OracleStepBudgetError",
    "PRESET_NAMES",
    "SaturationError",
    "Statistics",
    "SweepRow",
    "SweepSpec",
    "boson_mode_beta2",
    "constant_field_moduli",
    "dimensionless",
    "entropy",
    "entropy_boson",
    "entropy_fermion",
    "fermion_max_entropy_field",
    "fermion_mode_beta2",
    "figure_preset",
    "hypergeom_params",
    "mean_pair_number",
    "mode_beta2",
    "moduli",
    "run_checks",
    "run_sweep",
    "sauter_moduli",
    "sauter_ratio_via_gamma",
    "schmidt_spectrum",
    "vacuum_persistence",
    "__version__",
]
