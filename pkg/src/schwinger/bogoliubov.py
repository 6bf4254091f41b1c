"""Closed-form Bogoliubov coefficient moduli |alpha|^2, |beta|^2.

Four cases: (boson | fermion) x (constant | Sauter).  Constant field:

    |beta|^2 = exp(-pi mu),   mu = (m^2 + k_perp^2)/(q E0),   both statistics
    |alpha|^2 = 1 + |beta|^2  (boson),  1 - |beta|^2  (fermion)

Sauter pulse E(t) = E0 sech^2(t/tau), with W_in/out = pi tau omega_in/out,
lam_b = sqrt((q E0 tau^2)^2 - 1/4) (boson), lam_f = q E0 tau^2 (fermion):

    boson   |beta|^2  = [cosh(pi tau (w_out - w_in)) + cosh(2 pi lam_b)] / den
    boson   |alpha|^2 = [cosh(pi tau (w_out + w_in)) + cosh(2 pi lam_b)] / den
    fermion |beta|^2  = [cosh(2 pi lam_f) - cosh(pi tau (w_out - w_in))] / den
    fermion |alpha|^2 = [cosh(pi tau (w_out + w_in)) - cosh(2 pi lam_f)] / den
    den = 2 sinh(W_in) sinh(W_out)

The cosh sums/differences are never formed linearly: each numerator is
rewritten with the product identities

    cosh X + cosh Y = 2 cosh((X+Y)/2) cosh((X-Y)/2)
    cosh X - cosh Y = 2 sinh((X+Y)/2) sinh((X-Y)/2)

after which log |beta|^2 and log |alpha|^2 reduce to a small net exponent
(computed from cancellation-free kinematic combinations, see _Kinematics)
plus log1p/expm1 tail terms.  This keeps ~1e-15 relative accuracy out to
pi tau omega ~ 1e5 where the naive quotient overflows and the naive log-sum
loses ~1e-10.

The connection-coefficient path (gamma-function quotients) is an
independent evaluation of the same ratio x = |beta/alpha|^2 used for
validation; see sauter_ratio_via_gamma.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import (FieldError, FieldProfile, ModeParams, Statistics,
                     asymptotic_frequencies)
from .specfun import (LN2, LogDomainValue, log1mexp, log_abs_gamma_sq,
                      log_cosh)

PI = math.pi


class DegenerateModeError(ValueError):
    """Mode without a well-defined Bogoliubov transformation.

    Two ways to get here: a fermion with m = k_perp = 0 (|alpha|^2 = 0,
    the two-level gap closes), or a massless mode whose asymptotic
    frequency vanishes (|k_z| = q E0 tau in a Sauter pulse), leaving no
    in- or out-vacuum to expand around."""


class CancellationError(ArithmeticError):
    """The fermion Sauter numerator cosh(2 pi lam) - cosh(pi tau dw) cancels
    below 1e-14 relative; the result would carry no significant digits in
    the naive form (reachable only as m_perp -> 0 with k_z != 0)."""


@dataclass(frozen=True)
class BogoliubovModuli:
    """Log-domain |alpha_k|^2 and |beta_k|^2 for one (mode, field, stat).

    Boson: exp(alpha2) - exp(beta2) = 1;  fermion: exp(alpha2) + exp(beta2) = 1.
    """

    beta2: LogDomainValue
    alpha2: LogDomainValue
    stat: Statistics

    @property
    def log_beta2(self) -> float:
        return self.beta2.log_value

    @property
    def log_alpha2(self) -> float:
        return self.alpha2.log_value

    @property
    def log_ratio(self) -> float:
        """log x, x = |beta/alpha|^2."""
        return self.beta2.log_value - self.alpha2.log_value

    def beta2_linear(self) -> float:
        return self.beta2.to_linear()

    def alpha2_linear(self) -> float:
        return self.alpha2.to_linear()


def constant_field_moduli(params: ModeParams, E0: float, stat: Statistics,
                          convention: str = "consistent") -> BogoliubovModuli:
    """Constant-field moduli.

    convention="consistent" (default): |beta|^2 = exp(-pi mu) for both
    statistics — the only choice consistent with the entropy maximum at
    E0 = pi (m^2+k_perp^2)/(q ln 2) and with the numerical mode-equation
    oracle.  convention="paper" reproduces the alternative fermion exponent
    exp(-pi mu / 2) that some published curves use; it applies to fermions
    only (bosons are unaffected).
    """
    if convention not in ("consistent", "paper"):
        raise ValueError(f"unknown convention {convention!r}")
    E0 = float(E0)
    if not (E0 > 0 and math.isfinite(E0)):
        raise FieldError(f"E0 must be > 0 and finite, got {E0}")
    mu = params.transverse_mass_sq / (params.q * E0)
    if stat is Statistics.FERMION:
        if params.transverse_mass_sq == 0.0:
            raise DegenerateModeError(
                "fermion mode with m = k_perp = 0 has |alpha|^2 = 0")
        log_b2 = -PI * mu if convention == "consistent" else -0.5 * PI * mu
        log_a2 = log1mexp(-log_b2)  # log(1 - beta2)
    else:
        log_b2 = -PI * mu
        log_a2 = math.log1p(math.exp(log_b2))  # log(1 + beta2)
    return BogoliubovModuli(beta2=LogDomainValue(log_b2),
                            alpha2=LogDomainValue(log_a2), stat=stat)


# ---------------------------------------------------------------------------
# Sauter pulse: cancellation-free kinematics
# ---------------------------------------------------------------------------

class _Kinematics:
    """Stable building blocks shared by the Sauter closed forms.

    For large momenta the differences omega - |p| suffer catastrophic
    cancellation in the naive form; they are computed as
    (m^2+k_perp^2)/(omega + |p|) instead.  Everything else is assembled from
    these so that each log-domain term is accurate to ~1e-15 relative.
    """

    def __init__(self, params: ModeParams, field: FieldProfile):
        if not field.is_sauter:
            raise FieldError("Sauter kinematics require a Sauter profile")
        q, E0, tau = params.q, field.E0, field.tau
        mt2 = params.transverse_mass_sq
        self.tau = tau
        self.y = q * E0 * tau * tau                     # q E0 tau^2
        self.p_in = params.k_z + q * E0 * tau
        self.p_out = params.k_z - q * E0 * tau
        self.w_in, self.w_out = asymptotic_frequencies(params, field)

        def minus(w: float, p: float) -> float:         # omega - p, stable
            return mt2 / (w + p) if p > 0 else w - p

        def plus(w: float, p: float) -> float:          # omega + p, stable
            return mt2 / (w - p) if p < 0 else w + p

        if self.w_in == 0.0 or self.w_out == 0.0:
            # massless mode with k_z = -+ q E0 tau: no normalizable
            # asymptotic vacuum on that side, |beta|^2 has a pole
            raise DegenerateModeError(
                "vanishing asymptotic frequency (m = k_perp = 0 with "
                "|k_z| = q E0 tau): mode occupation is undefined")

        self.win_m = minus(self.w_in, self.p_in)        # w_in  - p_in
        self.win_p = plus(self.w_in, self.p_in)         # w_in  + p_in
        self.wout_m = minus(self.w_out, self.p_out)     # w_out - p_out
        self.wout_p = plus(self.w_out, self.p_out)      # w_out + p_out

        self.sum_w = self.w_in + self.w_out
        # tau*(w_out - w_in)/2: difference via conjugate form, no cancellation
        self.half_tdw = -2.0 * params.k_z * self.y / self.sum_w
        # tau*Sum(w) - 2*y  =  tau*[(w_in - p_in) + (w_out + p_out)]  > 0
        self.ts_gap = tau * (self.win_m + self.wout_p)
        # y ± tau*dw/2 via stable quotients; vanish only for m_perp = 0
        self.B_plus = self.y * (self.win_m + self.wout_m) / self.sum_w
        self.B_minus = self.y * (self.win_p + self.wout_p) / self.sum_w

        self.W_in = PI * tau * self.w_in                # pi tau omega_in
        self.W_out = PI * tau * self.w_out
        # log of 2 sinh(W_in) sinh(W_out) tail terms
        self.s_in = log1mexp(2.0 * self.W_in)
        self.s_out = log1mexp(2.0 * self.W_out)


def _boson_sauter_logs(k: _Kinematics) -> tuple[float, float]:
    """(log beta2, log alpha2) for a boson in a Sauter pulse."""
    y = k.y
    rad = y * y - 0.25
    if rad >= 0.0:
        # --- real lam_b = sqrt(y^2 - 1/4): pure product-identity route ---
        lam = math.sqrt(rad)
        # alpha2: numerator 2 cosh(pi A+) cosh(pi A-), A± = tau*Sum(w)/2 ± lam.
        # The large exponents cancel the denominator exactly; only tails left.
        A_minus = 0.5 * k.ts_gap + 0.25 / (y + lam)     # tau*Sum(w)/2 - lam
        A_plus = k.tau * k.sum_w / 2.0 + lam
        log_a2 = (math.log1p(math.exp(-2.0 * PI * A_plus))
                  + math.log1p(math.exp(-2.0 * PI * A_minus))
                  - k.s_in - k.s_out)

        # beta2: numerator 2 cosh(pi B+) cosh(pi B-), B± = tau*dw/2 ± lam.
        # Net exponent pi*(|B+| + |B-| - tau*Sum(w)) by sign cases.
        half = abs(k.half_tdw)
        disc = (y + k.half_tdw) * (y - k.half_tdw) - 0.25   # lam^2 - (tau dw/2)^2
        big = lam + half
        small = disc / big                               # lam - |tau dw/2|, signed
        if disc >= 0.0:
            # |lam| >= |tau dw/2|: B+ >= 0 >= B-; |B+|+|B-| = 2 lam
            absB = (big, small) if k.half_tdw >= 0 else (small, big)
            net = -0.5 / (y + lam) - k.ts_gap            # 2 lam - tau*Sum(w)
        elif k.half_tdw >= 0.0:
            # both B >= 0: |B+|+|B-| = tau dw; net = -2 tau w_in
            absB = (big, -small)
            net = -2.0 * k.tau * k.w_in
        else:
            # both B <= 0: net = -2 tau w_out
            absB = (-small, big)
            net = -2.0 * k.tau * k.w_out
        log_b2 = (PI * net
                  + math.log1p(math.exp(-2.0 * PI * absB[0]))
                  + math.log1p(math.exp(-2.0 * PI * absB[1]))
                  - k.s_in - k.s_out)
        return log_b2, log_a2

    # --- imaginary lam = i*ylam, ylam in (0, 1/2]: cosh(2 pi lam) = cos ---
    # cosh X + cos Y = 2 [sinh^2(X/2) + cos^2(Y/2)]: two nonnegative terms,
    # no cancellation.  |tau dw| <= 2y < 1 here, so everything is moderate.
    ylam = math.sqrt(-rad)
    cos_half = math.cos(PI * ylam)
    sh = math.sinh(PI * k.half_tdw)
    num_b = sh * sh + cos_half * cos_half
    log_b2 = (LN2 + math.log(num_b)
              - (LN2 + k.W_in + k.W_out - 2.0 * LN2 + k.s_in + k.s_out))

    SW = k.W_in + k.W_out                                # pi tau Sum(w)
    if SW < 40.0:
        shS = math.sinh(0.5 * SW)
        num_a = shS * shS + cos_half * cos_half
        log_a2 = LN2 + math.log(num_a) - (SW - LN2 + k.s_in + k.s_out)
    else:
        # cos term is ~e^{-SW} relative: fold it in as a log1p correction.
        cos_full = math.cos(2.0 * PI * ylam)
        log_cosh_SW = log_cosh(SW)
        log_a2 = (math.log1p(math.exp(-2.0 * SW))
                  + math.log1p(cos_full * math.exp(-log_cosh_SW))
                  - k.s_in - k.s_out)
    return log_b2, log_a2


def _fermion_sauter_logs(k: _Kinematics) -> tuple[float, float]:
    """(log beta2, log alpha2) for a fermion in a Sauter pulse."""
    y = k.y
    # B± = y ± tau*dw/2, both > 0 for m_perp > 0.
    B_plus, B_minus = k.B_plus, k.B_minus
    if min(B_plus, B_minus) < 1e-14 * y:
        raise CancellationError(
            "fermion numerator cosh(2 pi lam) - cosh(pi tau dw) cancels below "
            f"1e-14 relative (B+/lam = {B_plus / y:.3e}, B-/lam = {B_minus / y:.3e})")

    # beta2 numerator 2 sinh(pi B+) sinh(pi B-); net exponent 2y - tau*Sum(w)
    log_b2 = (-PI * k.ts_gap
              + log1mexp(2.0 * PI * B_plus) + log1mexp(2.0 * PI * B_minus)
              - k.s_in - k.s_out)

    # alpha2 numerator 2 sinh(pi A+) sinh(pi A-), A± = tau*Sum(w)/2 ± y;
    # the net exponent is identically zero against the denominator.
    A_plus = k.tau * k.sum_w / 2.0 + y
    A_minus = 0.5 * k.ts_gap
    log_a2 = (log1mexp(2.0 * PI * A_plus) + log1mexp(2.0 * PI * A_minus)
              - k.s_in - k.s_out)

    # float roundoff may push the logs a hair above 0 (= linear 1); clamp
    # within a 1e-12 window, error beyond it.
    def clamp(name: str, v: float) -> float:
        if v > 1e-12:
            raise ArithmeticError(f"fermion {name} exceeds 1 beyond roundoff: "
                                  f"log = {v:.3e}")
        return min(v, 0.0)

    return clamp("beta2", log_b2), clamp("alpha2", log_a2)


def sauter_moduli(params: ModeParams, field: FieldProfile,
                  stat: Statistics) -> BogoliubovModuli:
    """Sauter-pulse moduli, evaluated entirely in the log domain."""
    if stat is Statistics.FERMION and params.transverse_mass_sq == 0.0:
        raise DegenerateModeError(
            "fermion mode with m = k_perp = 0 has |alpha|^2 = 0")
    k = _Kinematics(params, field)
    if stat is Statistics.FERMION:
        log_b2, log_a2 = _fermion_sauter_logs(k)
    else:
        log_b2, log_a2 = _boson_sauter_logs(k)
    return BogoliubovModuli(beta2=LogDomainValue(log_b2),
                            alpha2=LogDomainValue(log_a2), stat=stat)


def moduli(params: ModeParams, field: FieldProfile, stat: Statistics,
           convention: str = "consistent") -> BogoliubovModuli:
    """Dispatch on the field kind."""
    if field.is_sauter:
        return sauter_moduli(params, field, stat)
    return constant_field_moduli(params, field.E0, stat, convention=convention)


# ---------------------------------------------------------------------------
# Independent ratio path: hypergeometric connection coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HypergeomParams:
    """Parameters (a, b, c) of the 2F1 solutions of the Sauter mode equation.

    c = 1 - i tau omega_in and c - a - b = -i tau omega_out for both
    statistics and both fermion sign branches.
    """

    a: complex
    b: complex
    c: complex


def hypergeom_params(params: ModeParams, field: FieldProfile, stat: Statistics,
                     branch: int = +1) -> HypergeomParams:
    """Build (a, b, c) for the given statistics.

    Boson:   a, b = 1/2 + i tau dw/2 ∓ i lam_b        (lam_b may be imaginary)
    Fermion: a = i tau dw/2 ± i lam_f,  b = 1 + i tau dw/2 ∓ i lam_f
    with dw = omega_out - omega_in and branch = ±1 selecting the fermion sign.
    """
    if branch not in (+1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    k = _Kinematics(params, field)
    c = complex(1.0, -k.tau * k.w_in)
    if stat is Statistics.FERMION:
        lam = k.y
        a = complex(0.0, k.half_tdw + branch * lam)
        b = complex(1.0, k.half_tdw - branch * lam)
    else:
        rad = k.y * k.y - 0.25
        ilam = complex(0.0, math.sqrt(rad)) if rad >= 0 else complex(-math.sqrt(-rad), 0.0)
        a = complex(0.5, k.half_tdw) - ilam
        b = complex(0.5, k.half_tdw) + ilam
    return HypergeomParams(a=a, b=b, c=c)


@dataclass(frozen=True)
class GammaPathRatio:
    """x = |beta/alpha|^2 reached through the connection coefficients.

    log_ratio_12_11: log of |lam12|^2/|lam11|^2 (kinematics-corrected for
    fermions, see below); log_ratio_21_22: same for |lam21|^2/|lam22|^2.
    Both equal log x; their geometric mean is carried as log_ratio.
    """

    log_ratio_12_11: float
    log_ratio_21_22: float

    @property
    def log_ratio(self) -> float:
        return 0.5 * (self.log_ratio_12_11 + self.log_ratio_21_22)


def sauter_ratio_via_gamma(params: ModeParams, field: FieldProfile,
                           stat: Statistics, branch: int = +1) -> GammaPathRatio:
    """Evaluate x = |beta/alpha|^2 through ln Gamma of the connection
    coefficients lam11, lam12, lam21, lam22 — replacing the hyperbolic
    closed forms with gamma-product identities evaluated by the general
    complex log-gamma.

    Notes on orientation and weights, resolved against high-precision
    evaluation:

    * The two quotients that equal x are |lam12|^2/|lam11|^2 and
      |lam21|^2/|lam22|^2 (the inverse orientation of the second pair equals
      1/x, not x).
    * |Gamma(z)| = |Gamma(conj z)| makes the Gamma(a+b-c)/Gamma(c-a-b) factor
      drop out of both moduli quotients exactly (a+b-c = i tau omega_out is
      purely imaginary), so it is omitted.
    * For fermions the mode functions carry a spinor-normalization weight
      that the raw quotients inherit: with P = (w_out - p_out)/(w_out + p_out)
      the raw quotients are x*P^b and x*P^(-b) (b = branch), so each is
      corrected by the inverse power of P.  Bosons need no correction.
    * The gamma arguments are assembled from the cancellation-free kinematic
      combinations (ts_gap, B±), not by subtracting the (a, b, c) of
      hypergeom_params: imaginary parts like tau*Sum(w)/2 - y can be ~1e-9
      of the terms forming them, and naive subtraction costs ~tau*w*eps
      absolute error, which the Gamma(i*eps) pole doubles into
      log|Gamma|^2.  The combinations below are exact-relative.
      For bosons the second orientation maps onto the first under
      |Gamma(z)| = |Gamma(conj z)|, so the two reported quotients coincide;
      the fermion orientations stay numerically distinct.
    """
    if branch not in (+1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch}")
    if stat is Statistics.FERMION and params.transverse_mass_sq == 0.0:
        raise DegenerateModeError(
            "fermion mode with m = k_perp = 0 has |alpha|^2 = 0")
    k = _Kinematics(params, field)
    g2 = 0.5 * k.ts_gap                                  # tau*Sum(w)/2 - y

    def G(re: float, im: float) -> float:
        return log_abs_gamma_sq(complex(re, im))

    if stat is Statistics.FERMION:
        # Im parts of {a, b, c-a, c-b} in stable form:
        #   half_tdw ± y = ±B±,  tau*Sum(w)/2 ± y = {2y + g2, g2}
        if branch == +1:
            u, v = k.B_plus, -k.B_minus                  # Im a, Im b
            s, t = 2.0 * k.y + g2, g2                    # -Im(c-a), -Im(c-b)
        else:
            u, v = -k.B_minus, k.B_plus
            s, t = g2, 2.0 * k.y + g2
        log_r1 = G(1.0, s) + G(0.0, t) - G(0.0, u) - G(1.0, v)
        log_r2 = G(0.0, s) + G(1.0, t) - G(1.0, u) - G(0.0, v)
        log_P = math.log(k.wout_m) - math.log(k.wout_p)
        log_r1 -= branch * log_P
        log_r2 += branch * log_P
        return GammaPathRatio(log_ratio_12_11=log_r1, log_ratio_21_22=log_r2)

    rad = k.y * k.y - 0.25
    if rad >= 0.0:
        # half_tdw ± lam = ±B∓ ± (y - lam) with y - lam = 1/(4(y + lam))
        lam = math.sqrt(rad)
        q4 = 0.25 / (k.y + lam)
        log_r = (G(0.5, g2 + q4) + G(0.5, 2.0 * k.y + g2 - q4)
                 - G(0.5, q4 - k.B_minus) - G(0.5, k.B_plus - q4))
    else:
        ell = math.sqrt(-rad)                            # |lam|, lam imaginary
        sw2 = k.y + g2                                   # tau*Sum(w)/2
        log_r = (G(0.5 - ell, sw2) + G(0.5 + ell, sw2)
                 - G(0.5 + ell, k.half_tdw) - G(0.5 - ell, k.half_tdw))
    return GammaPathRatio(log_ratio_12_11=log_r, log_ratio_21_22=log_r)
