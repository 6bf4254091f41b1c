import math

import numpy as np
import pytest

from schwinger.bogoliubov import (BogoliubovModuli, DegenerateModeError,
                                  constant_field_moduli, sauter_moduli)
from schwinger.entanglement import (BosonGeometric, EntropyReport, FermionFour,
                                    entropy, entropy_boson, entropy_fermion,
                                    fermion_max_entropy_field,
                                    mean_pair_number, schmidt_spectrum,
                                    vacuum_persistence)
from schwinger.fields import FieldProfile, ModeParams, Statistics
from schwinger.specfun import LogDomainValue

BOSON = Statistics.BOSON
FERMION = Statistics.FERMION

# frozen 25-digit reference: boson entropy (bits) at beta2 = exp(-2 pi)
S_BOSON_AT_MU2 = 0.01962451039817357808472701


def _make(log_b2, log_a2, stat):
    return BogoliubovModuli(beta2=LogDomainValue(log_b2),
                            alpha2=LogDomainValue(log_a2), stat=stat)


def _boson(b2):
    return _make(math.log(b2), math.log1p(b2), BOSON)


def _fermion(b2):
    return _make(math.log(b2), math.log1p(-b2), FERMION)


# ---------------------------------------------------------------------------
# closed-form values
# ---------------------------------------------------------------------------

def test_boson_entropy_frozen_value():
    mod = constant_field_moduli(ModeParams(m=1.0, q=1.0, k_perp=1.0), 1.0, BOSON)
    rep = entropy(mod)
    assert rep.S_bits == pytest.approx(S_BOSON_AT_MU2, rel=1e-14)


def test_fermion_entropy_is_one_at_peak_field():
    params = ModeParams(m=1.0, q=2.0, k_perp=2.0)
    e_star = fermion_max_entropy_field(params)
    assert e_star == pytest.approx(math.pi * 5.0 / (2.0 * math.log(2.0)), rel=1e-15)
    rep = entropy(constant_field_moduli(params, e_star, FERMION))
    assert abs(rep.S_bits - 1.0) <= 1e-13
    assert rep.beta2 == pytest.approx(0.5, rel=1e-14)


def test_fermion_max_entropy_field_degenerate():
    with pytest.raises(DegenerateModeError):
        fermion_max_entropy_field(ModeParams(m=0.0, q=1.0, k_perp=0.0))


def test_boson_saturation_limits():
    # beta2 -> 1 from below: S -> 2 bits
    b2 = 1.0 - 1e-6
    rep = entropy_boson(_boson(b2))
    assert abs(rep.S_bits - 2.0) <= 1e-4
    # beta2 = 1 exactly: S = 2 exactly (both terms are ln 2 / ln 2 = 1)
    assert entropy_boson(_make(0.0, math.log(2.0), BOSON)).S_bits == 2.0


def test_fermion_binary_entropy_symmetry():
    for b2 in (1e-8, 0.01, 0.2, 0.37, 0.499):
        s_lo = entropy_fermion(_fermion(b2)).S_bits
        s_hi = entropy_fermion(_fermion(1.0 - b2)).S_bits
        assert s_lo == pytest.approx(s_hi, rel=1e-12)
        # independent linear-domain reference
        ref = -(b2 * math.log2(b2) + (1 - b2) * math.log2(1 - b2))
        assert s_lo == pytest.approx(ref, rel=1e-12)
    assert entropy_fermion(_fermion(0.5)).S_bits == pytest.approx(1.0, abs=1e-15)


def test_boson_entropy_monotone_in_beta2():
    logs = np.linspace(-40.0, 8.0, 200)
    vals = [entropy_boson(_make(lb, math.log1p(math.exp(lb)), BOSON)).S_bits
            for lb in logs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_boson_entropy_extreme_log_domain():
    # deep suppression: entropy underflows smoothly to zero
    assert entropy_boson(_make(-1e5, 0.0, BOSON)).S_bits == 0.0
    # huge occupation: asymptote S = (log b2 + 1)/ln 2 (error ~ e^-50)
    lb = 50.0
    la = math.log1p(math.exp(50.0)) if lb < 700 else lb
    rep = entropy_boson(_make(lb, la, BOSON))
    assert rep.S_bits == pytest.approx(51.0 / math.log(2.0), rel=1e-12)
    # beta2 too large to exponentiate: the report is linear-domain, so the
    # saturation contract applies (sweep layers catch this per-row)
    from schwinger.specfun import SaturationError
    with pytest.raises(SaturationError):
        entropy_boson(_make(2000.0, 2000.0, BOSON))


# ---------------------------------------------------------------------------
# Schmidt spectra
# ---------------------------------------------------------------------------

def test_boson_schmidt_spectrum_geometric():
    mod = _boson(1.0)  # x = 1/2, c0_sq = 1/2
    spec = schmidt_spectrum(mod)
    assert isinstance(spec, BosonGeometric)
    assert spec.c0_sq == pytest.approx(0.5, rel=1e-15)
    assert spec.ratio == pytest.approx(0.5, rel=1e-15)
    w = spec.materialize(tail_mass=1e-15)
    assert len(w) == 50  # ceil(log(1e-15)/log(0.5))
    assert w[0] == pytest.approx(0.5, rel=1e-15)
    assert w[1] / w[0] == pytest.approx(spec.ratio, rel=1e-14)
    assert math.fsum(w) == pytest.approx(1.0, abs=2e-15)
    assert np.all(np.diff(w) < 0)


def test_boson_schmidt_materialize_guards():
    spec = BosonGeometric(c0_sq=1e-9, ratio=1.0 - 1e-9)
    with pytest.raises(ValueError, match="max_terms"):
        spec.materialize(tail_mass=1e-12, max_terms=1000)
    with pytest.raises(ValueError, match="tail_mass"):
        spec.materialize(tail_mass=0.0)
    with pytest.raises(ValueError, match="tail_mass"):
        spec.materialize(tail_mass=1.5)
    # unexcited mode: single unit weight
    empty = BosonGeometric(c0_sq=1.0, ratio=0.0)
    assert empty.materialize().tolist() == [1.0]


def test_fermion_schmidt_spectrum_four_weights():
    spec = schmidt_spectrum(_fermion(0.25))
    assert isinstance(spec, FermionFour)
    a2, b2 = 0.75, 0.25
    expected = (a2 * a2, b2 * b2, a2 * b2, a2 * b2)
    assert spec.c_sq == pytest.approx(expected, rel=1e-14)
    assert math.fsum(spec.c_sq) == pytest.approx(1.0, abs=1e-15)


def test_fermion_schmidt_degenerate():
    # |alpha|^2 = 0: out-state has no Schmidt decomposition
    with pytest.raises(DegenerateModeError):
        schmidt_spectrum(_make(0.0, -math.inf, FERMION))


# ---------------------------------------------------------------------------
# summary numbers and report plumbing
# ---------------------------------------------------------------------------

def test_vacuum_persistence():
    assert vacuum_persistence(_boson(1.0)) == pytest.approx(0.5, rel=1e-15)
    assert vacuum_persistence(_fermion(0.25)) == pytest.approx(0.5625, rel=1e-15)


def test_mean_pair_number():
    assert mean_pair_number(_boson(0.125)) == pytest.approx(0.125, rel=1e-15)
    assert mean_pair_number(_fermion(0.125)) == pytest.approx(0.125, rel=1e-15)


def test_entropy_dispatch_and_stat_guards():
    b, f = _boson(0.3), _fermion(0.3)
    assert entropy(b).S_bits == entropy_boson(b).S_bits
    assert entropy(f).S_bits == entropy_fermion(f).S_bits
    with pytest.raises(ValueError):
        entropy_boson(f)
    with pytest.raises(ValueError):
        entropy_fermion(b)


def test_entropy_report_fields_boson():
    rep = entropy_boson(_boson(0.5))  # alpha2 = 1.5, x = 1/3
    assert isinstance(rep, EntropyReport)
    assert rep.beta2 == pytest.approx(0.5, rel=1e-15)
    assert rep.alpha2 == pytest.approx(1.5, rel=1e-15)
    assert rep.x == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert rep.c0_sq == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert rep.mean_pairs == rep.beta2


def test_entropy_report_fields_fermion():
    rep = entropy_fermion(_fermion(0.2))
    assert rep.x is None
    assert rep.c0_sq == pytest.approx(0.64, rel=1e-14)
    assert rep.mean_pairs == pytest.approx(0.2, rel=1e-15)


def test_entropy_from_sauter_pipeline():
    # end-to-end: field -> moduli -> entropy for both statistics
    params = ModeParams(m=1.0, q=1.0, k_perp=0.5, k_z=1.0)
    field = FieldProfile.sauter(3.0, 0.8)
    rep_b = entropy(sauter_moduli(params, field, BOSON))
    rep_f = entropy(sauter_moduli(params, field, FERMION))
    assert rep_b.S_bits > 0.0
    assert 0.0 < rep_f.S_bits <= 1.0
    # fermions can never out-entangle the unbounded boson tower here
    assert rep_b.x is not None and 0.0 < rep_b.x < 1.0
