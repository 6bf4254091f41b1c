"""Background field profiles, gauge potential, and mode frequencies.

Everything downstream consumes the quantities defined here: the mode
parameters (m, q, k_perp, k_z), the field profile (constant amplitude E0, or
a Sauter pulse E(t) = E0 sech^2(t/tau)), and the frequencies

    omega(t)^2 = (k_z + q A_z(t))^2 + m^2 + k_perp^2

with A_z = -E0 t (constant) or A_z = -E0 tau tanh(t/tau) (Sauter), so that
E(t) = -dA_z/dt.  Natural units (c = hbar = 1) throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Statistics(enum.Enum):
    """Field statistics: scalar (boson) or Dirac (fermion) modes."""

    BOSON = "boson"
    FERMION = "fermion"


class FieldError(ValueError):
    """Invalid field profile or mode parameters."""


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise FieldError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class ModeParams:
    """One charged field mode.

    m       rest mass, >= 0
    q       charge magnitude, > 0
    k_perp  transverse momentum magnitude, >= 0
    k_z     longitudinal momentum (any real)

    m and k_perp enter every coefficient formula only through the transverse
    mass squared m^2 + k_perp^2.
    """

    m: float
    q: float
    k_perp: float = 0.0
    k_z: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "m", _require_finite("m", self.m))
        object.__setattr__(self, "q", _require_finite("q", self.q))
        object.__setattr__(self, "k_perp", _require_finite("k_perp", self.k_perp))
        object.__setattr__(self, "k_z", _require_finite("k_z", self.k_z))
        if self.m < 0:
            raise FieldError(f"mass must be >= 0, got {self.m}")
        if self.q <= 0:
            raise FieldError(f"charge must be > 0, got {self.q}")
        if self.k_perp < 0:
            raise FieldError(f"k_perp must be >= 0, got {self.k_perp}")

    @property
    def transverse_mass_sq(self) -> float:
        return self.m * self.m + self.k_perp * self.k_perp

    @property
    def transverse_mass(self) -> float:
        return math.hypot(self.m, self.k_perp)


@dataclass(frozen=True)
class FieldProfile:
    """Background electric field along z.

    kind="constant": E(t) = E0 for all t.
    kind="sauter":   E(t) = E0 sech^2(t/tau), pulse width tau.

    E0 = 0 is rejected: the coefficient formulas divide by q*E0 (essential
    singularity), so the free-field limit is a documented limit of sequences
    of valid profiles, not an evaluable point.  Use the factory class methods
    ``constant`` and ``sauter``.
    """

    kind: str
    E0: float
    tau: float | None = None

    def __post_init__(self):
        if self.kind not in ("constant", "sauter"):
            raise FieldError(f"unknown field kind {self.kind!r}")
        object.__setattr__(self, "E0", _require_finite("E0", self.E0))
        if self.E0 <= 0:
            raise FieldError(f"E0 must be > 0, got {self.E0}")
        if self.kind == "sauter":
            if self.tau is None:
                raise FieldError("Sauter profile requires tau")
            object.__setattr__(self, "tau", _require_finite("tau", self.tau))
            if self.tau <= 0:
                raise FieldError(f"tau must be > 0, got {self.tau}")
        elif self.tau is not None:
            raise FieldError("constant profile takes no tau")

    @classmethod
    def constant(cls, E0: float) -> "FieldProfile":
        return cls(kind="constant", E0=E0)

    @classmethod
    def sauter(cls, E0: float, tau: float) -> "FieldProfile":
        return cls(kind="sauter", E0=E0, tau=tau)

    @property
    def is_sauter(self) -> bool:
        return self.kind == "sauter"

    def electric_field(self, t: float) -> float:
        """E(t).  Constant: E0; Sauter: E0 sech^2(t/tau)."""
        if self.kind == "constant":
            return self.E0
        # sech^2 via cosh; |t|/tau > ~350 would overflow cosh, return 0 there
        x = t / self.tau
        if abs(x) > 350.0:
            return 0.0
        c = math.cosh(x)
        return self.E0 / (c * c)


def gauge_potential(field: FieldProfile, t: float) -> float:
    """Gauge potential A_z(t) with E(t) = -dA_z/dt.

    Constant: A_z = -E0 t;  Sauter: A_z = -E0 tau tanh(t/tau).
    """
    t = _require_finite("t", t)
    if field.kind == "constant":
        return -field.E0 * t
    return -field.E0 * field.tau * math.tanh(t / field.tau)


def kinetic_momentum(params: ModeParams, field: FieldProfile, t: float) -> float:
    """Longitudinal kinetic momentum p(t) = k_z + q A_z(t).

    Equals k_z - q E0 t (constant) and k_z - q E0 tau tanh(t/tau) (Sauter).
    """
    return params.k_z + params.q * gauge_potential(field, t)


def omega(params: ModeParams, field: FieldProfile, t: float) -> float:
    """Instantaneous mode frequency omega(t) = sqrt(p(t)^2 + m^2 + k_perp^2)."""
    p = kinetic_momentum(params, field, t)
    return math.sqrt(p * p + params.transverse_mass_sq)


def asymptotic_frequencies(params: ModeParams, field: FieldProfile) -> tuple[float, float]:
    """(omega_in, omega_out) for a Sauter pulse.

    omega_in  = sqrt((k_z + q E0 tau)^2 + m^2 + k_perp^2)   [t -> -inf]
    omega_out = sqrt((k_z - q E0 tau)^2 + m^2 + k_perp^2)   [t -> +inf]

    A constant field never switches off, so it has no finite asymptotic
    frequencies; rejected.
    """
    if not field.is_sauter:
        raise FieldError("asymptotic frequencies exist only for the Sauter profile")
    mt2 = params.transverse_mass_sq
    p_in = params.k_z + params.q * field.E0 * field.tau
    p_out = params.k_z - params.q * field.E0 * field.tau
    return math.sqrt(p_in * p_in + mt2), math.sqrt(p_out * p_out + mt2)


@dataclass(frozen=True)
class DimensionlessParams:
    """Dimensionless combinations the closed forms are written in.

    mu            (m^2 + k_perp^2)/(q E0) — the only way m, k_perp enter.
    lam           boson Sauter: sqrt((q E0 tau^2)^2 - 1/4), purely imaginary
                  when q E0 tau^2 < 1/2; fermion Sauter: q E0 tau^2 (real > 0);
                  None for a constant field.
    tau_omega_in  tau * omega_in  (Sauter only)
    tau_omega_out tau * omega_out (Sauter only)
    """

    mu: float
    lam: complex | None = None
    tau_omega_in: float | None = None
    tau_omega_out: float | None = None


def dimensionless(params: ModeParams, field: FieldProfile,
                  stat: Statistics) -> DimensionlessParams:
    """Compute mu (always) and lam, tau*omega_in/out (Sauter only)."""
    mu = params.transverse_mass_sq / (params.q * field.E0)
    if not field.is_sauter:
        return DimensionlessParams(mu=mu)
    y = params.q * field.E0 * field.tau * field.tau
    if stat is Statistics.FERMION:
        lam: complex = complex(y, 0.0)
    else:
        rad = y * y - 0.25
        lam = complex(math.sqrt(rad), 0.0) if rad >= 0 else complex(0.0, math.sqrt(-rad))
    w_in, w_out = asymptotic_frequencies(params, field)
    return DimensionlessParams(mu=mu, lam=lam,
                               tau_omega_in=field.tau * w_in,
                               tau_omega_out=field.tau * w_out)
