"""End-to-end acceptance: the ten guarantees the package advertises.

Each test prints exactly one PASS/FAIL line (run with ``pytest -s`` to see
them interleaved; they also appear in captured output on failure).  The
tolerances here are the advertised ones — they must not be loosened to make
a run green.
"""
import time

import pytest

from schwinger.verify import (check_boson_saturation, check_connection_path,
                              check_entropy_forms, check_fermion_entropy_peak,
                              check_figure_shapes, check_gamma_identities,
                              check_normalization, check_oracle_grid,
                              check_schmidt_sums, check_tau_limits)


def _report(idx, result, elapsed=None, budget=None):
    stamp = "PASS" if result.passed else "FAIL"
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s"
        timing += f" of {budget:.0f}s budget]" if budget else "]"
    print(f"ACCEPTANCE {idx:2d} {stamp} {result.name}: {result.detail}{timing}")
    assert result.passed, f"criterion {idx} failed: {result.detail}"
    if budget is not None:
        assert elapsed < budget, (f"criterion {idx} exceeded its time "
                                  f"budget: {elapsed:.2f}s >= {budget:.0f}s")


def test_criterion_01_normalization_identity():
    t0 = time.perf_counter()
    res = check_normalization(n=1000, rtol=1e-10)
    _report(1, res, time.perf_counter() - t0, budget=1.0)


def test_criterion_02_gamma_reflection_identities():
    _report(2, check_gamma_identities(rtol=1e-11))


def test_criterion_03_connection_coefficient_path():
    t0 = time.perf_counter()
    res = check_connection_path(n=100, rtol=1e-9)
    _report(3, res, time.perf_counter() - t0, budget=5.0)


@pytest.mark.oracle_grid
def test_criterion_04_numerical_oracle_grid():
    t0 = time.perf_counter()
    res = check_oracle_grid(rtol_sauter=1e-4, rtol_constant=1e-3)
    _report(4, res, time.perf_counter() - t0, budget=600.0)


def test_criterion_05_fermion_entropy_peak():
    _report(5, check_fermion_entropy_peak(grid_points=10_000))


def test_criterion_06_boson_entropy_saturation():
    _report(6, check_boson_saturation())


def test_criterion_07_entropy_formula_equivalence():
    _report(7, check_entropy_forms(n=1000))


def test_criterion_08_pulse_duration_limits():
    _report(8, check_tau_limits())


def test_criterion_09_figure_shape_properties():
    _report(9, check_figure_shapes())


def test_criterion_10_schmidt_spectrum_sums():
    _report(10, check_schmidt_sums())
