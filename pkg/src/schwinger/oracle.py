"""Numerical oracle: |beta|^2 by direct integration of the mode equations.

Fully independent of the closed forms in bogoliubov.py — no gamma functions,
no hypergeometric connection data, only the ODE systems described in
_kernels.py, integrated with an adaptive Dormand-Prince 5(4) stepper and
read out by projection onto the instantaneous adiabatic basis at the window
edges.

The hot loop is compiled with numba when available; set SCHWINGER_NO_NUMBA=1
to force the pure-Python path (same code object, ~100x slower).  Results are
deterministic either way.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

from . import _kernels
from .bogoliubov import DegenerateModeError
from .fields import FieldProfile, ModeParams, asymptotic_frequencies

#: substeps used to average |b|^2 over one adiabatic period at extraction
N_AVG = 32

#: fermion gap threshold below which the two-level integration is refused
MIN_FERMION_GAP = 1e-8


def _select_kernel():
    if os.environ.get("SCHWINGER_NO_NUMBA"):
        return _kernels.mode_run, "python"
    try:
        from numba import njit
    except ImportError:
        return _kernels.mode_run, "python"
    return njit(cache=True)(_kernels.mode_run), "numba"


_RUN, KERNEL_BACKEND = _select_kernel()


class OracleError(RuntimeError):
    """Base class: the numerical integration did not produce a trusted value."""


class OracleConvergenceError(OracleError):
    """beta^2 at the full window disagrees with the 0.8-window value."""


class OracleStepBudgetError(OracleError):
    """The adaptive stepper exhausted max_steps."""


class OracleConservationError(OracleError):
    """Wronskian / norm conservation defect above threshold."""


@dataclass(frozen=True)
class OracleConfig:
    """Integration window and tolerance knobs.

    t_span_factor sets the half-window as a multiple of the natural time
    scale (tau for Sauter; (m_perp + sqrt(qE0))/(qE0) about the turning time
    for constant fields).
    """

    t_span_factor: float = 25.0
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 2_000_000

    def __post_init__(self):
        if not self.t_span_factor >= 10.0:
            raise ValueError(f"t_span_factor must be >= 10, got {self.t_span_factor}")
        for name, tol in (("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)):
            if not 0.0 < tol <= 1e-6:
                raise ValueError(f"{name} must be in (0, 1e-6], got {tol}")
        if self.max_steps < 1000:
            raise ValueError(f"max_steps must be >= 1000, got {self.max_steps}")


@dataclass(frozen=True)
class OracleResult:
    """Accepted integration output.

    beta2_inner is the extraction at 0.8x the window, kept for diagnostics;
    acceptance already required it to agree with beta2_numeric.
    """

    beta2_numeric: float
    conservation_defect: float
    steps_used: int
    beta2_inner: float


def _window(params: ModeParams, field: FieldProfile,
            cfg: OracleConfig) -> tuple[float, float, float]:
    """(t0, t_conv, t1) bracketing the field event.

    Sauter: +-factor*tau around the pulse.  Constant: centered on the
    turning time t* = k_z/(qE0) where the kinetic momentum crosses zero;
    the span is capped for extremely sub-critical fields (mu > 200), where
    the suppression ~ exp(-pi mu) is far below the extraction floor anyway
    and a huge window only wastes steps.
    """
    f = cfg.t_span_factor
    if field.is_sauter:
        T = f * field.tau
        return -T, 0.8 * T, T
    qE0 = params.q * field.E0
    t_star = params.k_z / qE0
    t_scale = (params.transverse_mass + math.sqrt(qE0)) / qE0
    mu = params.transverse_mass_sq / qE0
    cap = 1.0 if mu <= 200.0 else 200.0 / mu
    T = f * t_scale * cap
    return t_star - T, t_star + 0.8 * T, t_star + T


def _integrate(sys_code: int, params: ModeParams, field: FieldProfile,
               cfg: OracleConfig) -> OracleResult:
    t0, t_conv, t1 = _window(params, field, cfg)
    kind = 1 if field.is_sauter else 0
    tau = field.tau if field.is_sauter else 0.0
    raw = _RUN(sys_code, kind, field.E0, tau, params.transverse_mass,
               params.k_z, params.q, t0, t_conv, t1,
               cfg.rel_tol, cfg.abs_tol, cfg.max_steps, N_AVG)
    beta2_inner, beta2, defect, steps, status = (float(raw[0]), float(raw[1]),
                                                 float(raw[2]), int(raw[3]),
                                                 int(raw[4]))
    if status == _kernels.MAX_STEPS_EXCEEDED:
        raise OracleStepBudgetError(
            f"step budget {cfg.max_steps} exhausted at window "
            f"[{t0:g}, {t1:g}]")
    if status == _kernels.STEP_UNDERFLOW:
        raise OracleError(f"step size underflowed near t = {t0:g}..{t1:g}")
    if not (math.isfinite(beta2) and math.isfinite(beta2_inner)):
        raise OracleError(f"integration produced non-finite beta2 = {beta2}")
    if defect >= 1e-6:
        raise OracleConservationError(
            f"conservation defect {defect:.3e} >= 1e-6")
    # Window-edge stability: the 0.8-window and full-window extractions must
    # agree.  The Sauter pulse shuts off exponentially, the constant field
    # only power-law adiabatically, hence the looser constant-field gate.
    rel_gate = max(10.0 * cfg.rel_tol, 1e-6 if field.is_sauter else 1e-3)
    if abs(beta2 - beta2_inner) > max(rel_gate * abs(beta2), 1e-20):
        raise OracleConvergenceError(
            f"beta2 drifts between 0.8x and full window: {beta2_inner!r} vs "
            f"{beta2!r} (gate {rel_gate:g} relative)")
    return OracleResult(beta2_numeric=beta2, conservation_defect=defect,
                        steps_used=steps, beta2_inner=beta2_inner)


def boson_mode_beta2(params: ModeParams, field: FieldProfile,
                     cfg: OracleConfig | None = None) -> OracleResult:
    """Pair density of a scalar mode by direct integration.

    Massive modes use the exact instantaneous-basis rewrite of the mode
    equation; massless modes (m = k_perp = 0) integrate phi itself, since
    omega(t) crosses zero there and the basis transform is singular.
    """
    cfg = cfg or OracleConfig()
    sys_code = 0 if params.transverse_mass > 0.0 else 2
    if sys_code == 2 and field.is_sauter:
        w_in, w_out = asymptotic_frequencies(params, field)
        if w_in == 0.0 or w_out == 0.0:
            raise DegenerateModeError(
                "vanishing asymptotic frequency (m = k_perp = 0 with "
                "|k_z| = q E0 tau): no asymptotic vacuum to project on")
    return _integrate(sys_code, params, field, cfg)


def fermion_mode_beta2(params: ModeParams, field: FieldProfile,
                       cfg: OracleConfig | None = None) -> OracleResult:
    """Pair density of a Dirac mode via its two-level reduction."""
    cfg = cfg or OracleConfig()
    if params.transverse_mass < MIN_FERMION_GAP:
        raise DegenerateModeError(
            f"fermion two-level gap m_perp = {params.transverse_mass:g} "
            f"below {MIN_FERMION_GAP:g}; occupation is ill-conditioned")
    return _integrate(1, params, field, cfg)


def mode_beta2(params: ModeParams, field: FieldProfile, stat,
               cfg: OracleConfig | None = None) -> OracleResult:
    """Statistics-dispatching convenience wrapper."""
    from .fields import Statistics
    if stat is Statistics.FERMION:
        return fermion_mode_beta2(params, field, cfg)
    return boson_mode_beta2(params, field, cfg)
