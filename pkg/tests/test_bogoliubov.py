import math

import numpy as np
import pytest

from schwinger.bogoliubov import (CancellationError, DegenerateModeError,
                                  constant_field_moduli, hypergeom_params,
                                  moduli, sauter_moduli,
                                  sauter_ratio_via_gamma)
from schwinger.fields import FieldProfile, ModeParams, Statistics

# frozen 25-digit reference: exp(-2 pi)
EXP_M2PI = 0.001867442731707988814430213

BOSON = Statistics.BOSON
FERMION = Statistics.FERMION


# ---------------------------------------------------------------------------
# constant field
# ---------------------------------------------------------------------------

def test_constant_field_reference_value():
    # mu = (1+1)/(1*1) = 2: beta2 = e^{-2 pi} for both statistics
    params = ModeParams(m=1.0, q=1.0, k_perp=1.0)
    for stat in (BOSON, FERMION):
        mod = constant_field_moduli(params, 1.0, stat)
        assert mod.beta2_linear() == pytest.approx(EXP_M2PI, rel=1e-15)
    # massless, k_perp = 0: mu = 0, beta2 = 1 exactly (bosons only;
    # the fermion normalization would force alpha2 = 0)
    massless = ModeParams(m=0.0, q=1.0)
    assert constant_field_moduli(massless, 3.0, BOSON).beta2_linear() == 1.0
    with pytest.raises(DegenerateModeError):
        constant_field_moduli(massless, 3.0, FERMION)


def test_constant_field_normalization_log_domain():
    # far into the suppressed regime the identity must hold in log space
    params = ModeParams(m=10.0, q=0.5, k_perp=3.0)
    mod_b = constant_field_moduli(params, 0.01, BOSON)   # mu = 21800
    mod_f = constant_field_moduli(params, 0.01, FERMION)
    assert mod_b.log_beta2 == pytest.approx(-math.pi * 21800.0, rel=1e-15)
    # boson: log alpha2 = log1p(beta2) ~ beta2 ~ e^{-68487}: 0 to double precision
    assert mod_b.log_alpha2 == 0.0
    assert mod_f.log_alpha2 == 0.0
    # linear beta2 underflows cleanly
    assert mod_b.beta2_linear() == 0.0


def test_constant_field_conventions():
    params = ModeParams(m=1.0, q=1.0, k_perp=0.0)
    e0 = 2.0
    mu = 0.5
    cons = constant_field_moduli(params, e0, FERMION, convention="consistent")
    paper = constant_field_moduli(params, e0, FERMION, convention="paper")
    assert cons.log_beta2 == pytest.approx(-math.pi * mu, rel=1e-15)
    assert paper.log_beta2 == pytest.approx(-math.pi * mu / 2.0, rel=1e-15)
    # bosons: the convention switch is a no-op
    b1 = constant_field_moduli(params, e0, BOSON, convention="consistent")
    b2 = constant_field_moduli(params, e0, BOSON, convention="paper")
    assert b1.log_beta2 == b2.log_beta2
    with pytest.raises(ValueError):
        constant_field_moduli(params, e0, FERMION, convention="weird")


# ---------------------------------------------------------------------------
# Sauter pulse: closed forms
# ---------------------------------------------------------------------------

def _naive_sauter_beta2_alpha2(params, field, stat):
    """Direct 50-digit evaluation of the cosh quotients, no rearrangement."""
    import mpmath as mp
    with mp.workdps(50):
        q, E0, tau = map(mp.mpf, (params.q, field.E0, field.tau))
        m, kp, kz = map(mp.mpf, (params.m, params.k_perp, params.k_z))
        mt2 = m * m + kp * kp
        pin, pout = kz + q * E0 * tau, kz - q * E0 * tau
        win, wout = mp.sqrt(pin ** 2 + mt2), mp.sqrt(pout ** 2 + mt2)
        y = q * E0 * tau * tau
        den = 2 * mp.sinh(mp.pi * tau * win) * mp.sinh(mp.pi * tau * wout)
        tdw, tsw = tau * (wout - win), tau * (wout + win)
        if stat is FERMION:
            lam2 = mp.cosh(2 * mp.pi * y)
            b2 = (lam2 - mp.cosh(mp.pi * tdw)) / den
            a2 = (mp.cosh(mp.pi * tsw) - lam2) / den
        else:
            lam = mp.sqrt(mp.mpc(y * y - mp.mpf(1) / 4))
            lam2 = mp.cosh(2 * mp.pi * lam).real
            b2 = (mp.cosh(mp.pi * tdw) + lam2) / den
            a2 = (mp.cosh(mp.pi * tsw) + lam2) / den
        return float(b2), float(a2)


SAUTER_CASES = [
    # (params, field) spanning real/imaginary lambda, strong/weak, massless
    (ModeParams(m=1.0, q=1.0, k_perp=1.0, k_z=0.0), FieldProfile.sauter(1.0, 1.0)),
    (ModeParams(m=1.0, q=1.0, k_perp=1.0, k_z=0.0), FieldProfile.sauter(1.0, 0.3)),
    (ModeParams(m=0.5, q=2.0, k_perp=0.0, k_z=-2.0), FieldProfile.sauter(5.0, 0.7)),
    (ModeParams(m=0.0, q=1.0, k_perp=1.5, k_z=3.0), FieldProfile.sauter(10.0, 0.4)),
    (ModeParams(m=2.0, q=0.3, k_perp=0.2, k_z=1.0), FieldProfile.sauter(0.8, 2.0)),
    (ModeParams(m=0.0, q=1.0, k_perp=0.0, k_z=1.0), FieldProfile.sauter(2.0, 0.25)),
]


@pytest.mark.parametrize("stat", [BOSON, FERMION])
@pytest.mark.parametrize("params,field", SAUTER_CASES)
def test_sauter_vs_naive_high_precision(params, field, stat):
    if stat is FERMION and params.transverse_mass_sq == 0.0:
        pytest.skip("fermion m_perp = 0 is degenerate")
    ref_b2, ref_a2 = _naive_sauter_beta2_alpha2(params, field, stat)
    mod = sauter_moduli(params, field, stat)
    assert mod.beta2_linear() == pytest.approx(ref_b2, rel=5e-14)
    assert mod.alpha2_linear() == pytest.approx(ref_a2, rel=5e-14)


@pytest.mark.parametrize("stat", [BOSON, FERMION])
def test_sauter_normalization_sweep(stat):
    rng = np.random.default_rng(7)
    for _ in range(300):
        params = ModeParams(m=10.0 ** rng.uniform(-2, 1), q=10.0 ** rng.uniform(-1, 1),
                            k_perp=10.0 ** rng.uniform(-2, 1), k_z=rng.uniform(-10, 10))
        field = FieldProfile.sauter(10.0 ** rng.uniform(-2, 2),
                                    10.0 ** rng.uniform(-2, 1))
        mod = sauter_moduli(params, field, stat)
        la, lb = mod.log_alpha2, mod.log_beta2
        if stat is BOSON:
            assert abs(la + math.log(-math.expm1(lb - la))) < 1e-10
        else:
            assert abs(np.logaddexp(la, lb)) < 1e-10


def test_sauter_deeply_suppressed_mode_stays_in_log_domain():
    # weak field, heavy mode: log beta2 ~ 2 pi y - 2 pi tau omega ~ -763,
    # far below the linear underflow threshold; the log is the deliverable
    params = ModeParams(m=7.0, q=1.0, k_perp=0.0, k_z=0.0)
    field = FieldProfile.sauter(0.05, 20.0)
    for stat in (BOSON, FERMION):
        mod = sauter_moduli(params, field, stat)
        assert mod.log_beta2 < -700.0
        assert math.isfinite(mod.log_beta2)
        assert mod.beta2_linear() == 0.0  # clean underflow, not an error


def test_sauter_degenerate_and_cancellation_guards():
    with pytest.raises(DegenerateModeError):
        sauter_moduli(ModeParams(m=0.0, q=1.0, k_perp=0.0, k_z=1.0),
                      FieldProfile.sauter(1.0, 1.0), FERMION)
    # massless boson with k_z = q E0 tau: vanishing omega_out, pole
    with pytest.raises(DegenerateModeError):
        sauter_moduli(ModeParams(m=0.0, q=1.0, k_perp=0.0, k_z=2.0),
                      FieldProfile.sauter(2.0, 1.0), BOSON)
    # fermion numerator cancels below float resolution: B-/y ~ 1e-17
    with pytest.raises(CancellationError):
        sauter_moduli(ModeParams(m=1e-7, q=1.0, k_perp=0.0, k_z=-8e7),
                      FieldProfile.sauter(8e7 / 3.0, 3.0), FERMION)


def test_moduli_dispatch():
    params = ModeParams(m=1.0, q=1.0, k_perp=1.0)
    const = moduli(params, FieldProfile.constant(1.0), BOSON)
    pulse = moduli(params, FieldProfile.sauter(1.0, 50.0), BOSON)
    # tau = 50 approximates the constant field to ~1/tau
    assert pulse.beta2_linear() == pytest.approx(const.beta2_linear(), rel=0.01)


def test_boson_imaginary_lambda_regime():
    # y = q E0 tau^2 = 0.08 < 1/2
    params = ModeParams(m=1.0, q=1.0, k_perp=0.0, k_z=0.5)
    field = FieldProfile.sauter(2.0, 0.2)
    ref_b2, ref_a2 = _naive_sauter_beta2_alpha2(params, field, BOSON)
    mod = sauter_moduli(params, field, BOSON)
    assert mod.beta2_linear() == pytest.approx(ref_b2, rel=1e-13)
    assert mod.alpha2_linear() == pytest.approx(ref_a2, rel=1e-13)


# ---------------------------------------------------------------------------
# hypergeometric connection path
# ---------------------------------------------------------------------------

def test_hypergeom_params_structure():
    params = ModeParams(m=1.0, q=1.0, k_perp=0.5, k_z=2.0)
    field = FieldProfile.sauter(3.0, 0.8)
    tau = field.tau
    from schwinger.fields import asymptotic_frequencies
    w_in, w_out = asymptotic_frequencies(params, field)

    for stat in (BOSON, FERMION):
        for branch in ((+1,) if stat is BOSON else (+1, -1)):
            hp = hypergeom_params(params, field, stat, branch=branch)
            # c and c-a-b are fixed by the asymptotic frequencies
            assert hp.c == pytest.approx(complex(1.0, -tau * w_in), rel=1e-12)
            s = hp.a + hp.b - hp.c
            assert s.real == pytest.approx(0.0, abs=1e-12)
            assert s.imag == pytest.approx(tau * w_out, rel=1e-9)

    with pytest.raises(ValueError):
        hypergeom_params(params, field, BOSON, branch=0)


@pytest.mark.parametrize("stat", [BOSON, FERMION])
def test_gamma_path_reproduces_closed_form(stat):
    rng = np.random.default_rng(11)
    branches = (+1,) if stat is BOSON else (+1, -1)
    for _ in range(60):
        params = ModeParams(m=10.0 ** rng.uniform(-2, 1), q=10.0 ** rng.uniform(-1, 1),
                            k_perp=10.0 ** rng.uniform(-2, 1), k_z=rng.uniform(-10, 10))
        field = FieldProfile.sauter(10.0 ** rng.uniform(-2, 2),
                                    10.0 ** rng.uniform(-2, 1))
        log_x = sauter_moduli(params, field, stat).log_ratio
        for branch in branches:
            path = sauter_ratio_via_gamma(params, field, stat, branch=branch)
            assert abs(math.expm1(path.log_ratio_12_11 - log_x)) < 1e-9
            assert abs(math.expm1(path.log_ratio_21_22 - log_x)) < 1e-9


def test_gamma_path_branch_consistency():
    # the two fermion branches must agree on x while using different
    # connection coefficients; the correction factors are inverse powers
    params = ModeParams(m=0.5, q=1.0, k_perp=0.5, k_z=3.0)
    field = FieldProfile.sauter(4.0, 0.9)
    p1 = sauter_ratio_via_gamma(params, field, FERMION, branch=+1)
    p2 = sauter_ratio_via_gamma(params, field, FERMION, branch=-1)
    assert p1.log_ratio == pytest.approx(p2.log_ratio, rel=1e-10, abs=1e-10)
    closed = sauter_moduli(params, field, FERMION).log_ratio
    assert p1.log_ratio == pytest.approx(closed, rel=1e-10, abs=1e-10)


def test_gamma_path_guards():
    with pytest.raises(ValueError):
        sauter_ratio_via_gamma(ModeParams(m=1.0, q=1.0), FieldProfile.sauter(1.0, 1.0),
                               FERMION, branch=2)
    with pytest.raises(DegenerateModeError):
        sauter_ratio_via_gamma(ModeParams(m=0.0, q=1.0, k_perp=0.0),
                               FieldProfile.sauter(1.0, 1.0), FERMION)
