"""Self-verification suite.

Each check re-derives one of the package's load-bearing identities from an
independent direction (log-gamma vs closed hyperbolic forms, spectrum sums
vs closed entropies, numerical integration vs analytic moduli) and reports
pass/fail with the worst observed deviation.  The quick level runs every
identity check in ~seconds; full adds the oracle grid, which integrates a
few hundred ODEs.

All randomness is seeded: identical invocations produce identical reports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import oracle
from .bogoliubov import (BogoliubovModuli, DegenerateModeError,
                         constant_field_moduli, moduli, sauter_moduli,
                         sauter_ratio_via_gamma)
from .entanglement import (_boson_entropy_bits_from_log,
                           _boson_entropy_bits_from_x, _four_party_entropies,
                           entropy_boson, entropy_fermion,
                           fermion_max_entropy_field, schmidt_spectrum,
                           BosonGeometric, FermionFour)
from .fields import FieldProfile, ModeParams, Statistics
from .specfun import (LN_PI, LogDomainValue, ln_gamma_complex, log_cosh,
                      log_sinh)
from .sweeps import figure_preset, run_sweep

_SEED = 20260819


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rel_from_log_diff(dlog: float) -> float:
    """|a/b - 1| given log(a) - log(b), without leaving the log domain."""
    if dlog > 700.0:
        return math.inf
    return abs(math.expm1(dlog))


def _random_tuples(rng: np.random.Generator, n: int, stat: Statistics,
                   sauter: bool) -> list[tuple[ModeParams, FieldProfile]]:
    """Log-uniform parameter soup; bosons occasionally massless."""
    out = []
    for _ in range(n):
        m = 10.0 ** rng.uniform(-2.0, 1.0)
        k_perp = 10.0 ** rng.uniform(-2.0, 1.0)
        if stat is Statistics.BOSON:
            r = rng.uniform()
            if r < 0.05:
                m = 0.0
            if r < 0.02:
                k_perp = 0.0
        k_z = rng.uniform(-10.0, 10.0)
        q = 10.0 ** rng.uniform(-1.0, 1.0)
        E0 = 10.0 ** rng.uniform(-2.0, 2.0)
        params = ModeParams(m=m, q=q, k_perp=k_perp, k_z=k_z)
        if sauter:
            field = FieldProfile.sauter(E0, 10.0 ** rng.uniform(-2.0, 1.0))
        else:
            field = FieldProfile.constant(E0)
        out.append((params, field))
    return out


# ---------------------------------------------------------------------------
# 1. normalization
# ---------------------------------------------------------------------------

def check_normalization(n: int = 1000, rtol: float = 1e-10) -> CheckResult:
    """Boson |alpha|^2 - |beta|^2 = 1 and fermion |alpha|^2 + |beta|^2 = 1,
    verified in the log domain so arbitrarily suppressed modes count too."""
    rng = np.random.default_rng(_SEED)
    worst = 0.0
    worst_at = ""
    for stat in (Statistics.BOSON, Statistics.FERMION):
        for sauter in (False, True):
            for params, field in _random_tuples(rng, n, stat, sauter):
                mod = moduli(params, field, stat)
                la, lb = mod.log_alpha2, mod.log_beta2
                if stat is Statistics.BOSON:
                    # log(alpha2 - beta2) = la + log(1 - exp(lb - la))
                    resid = abs(la + math.log(-math.expm1(lb - la)))
                else:
                    resid = abs(np.logaddexp(la, lb))
                if resid > worst:
                    worst = resid
                    worst_at = (f"{stat.value} {field.kind} m={params.m:.3g} "
                                f"kperp={params.k_perp:.3g} kz={params.k_z:.3g} "
                                f"q={params.q:.3g} E0={field.E0:.3g}"
                                + (f" tau={field.tau:.3g}" if field.is_sauter else ""))
    passed = worst <= rtol
    return CheckResult(
        "normalization", passed,
        f"worst |log(alpha2 -+ beta2)| = {worst:.3e} (tol {rtol:g}) at {worst_at}")


# ---------------------------------------------------------------------------
# 2. gamma identities
# ---------------------------------------------------------------------------

def check_gamma_identities(rtol: float = 1e-11) -> CheckResult:
    """pi/|Gamma(1/2+ix)|^2 = cosh(pi x) and |Gamma(ix)|^2 = pi/(x sinh pi x),
    comparing the general Lanczos log-gamma against the closed forms."""
    xs = np.concatenate([np.linspace(0.1, 20.0, 400),
                         np.geomspace(0.1, 20.0, 100)])
    worst = 0.0
    for x in xs:
        lg = 2.0 * ln_gamma_complex(complex(0.5, x)).real
        closed = LN_PI - log_cosh(math.pi * x)
        worst = max(worst, _rel_from_log_diff(lg - closed))
        lg = 2.0 * ln_gamma_complex(complex(0.0, x)).real
        closed = LN_PI - math.log(x) - log_sinh(math.pi * x)
        worst = max(worst, _rel_from_log_diff(lg - closed))
    return CheckResult(
        "gamma-identities", worst <= rtol,
        f"worst relative deviation {worst:.3e} (tol {rtol:g}) "
        f"over x in [0.1, 20]")


# ---------------------------------------------------------------------------
# 3. connection-coefficient path
# ---------------------------------------------------------------------------

def check_connection_path(n: int = 100, rtol: float = 1e-9) -> CheckResult:
    """|beta/alpha|^2 via gamma-function connection coefficients equals the
    hyperbolic closed form, both statistics, both fermion sign branches."""
    rng = np.random.default_rng(_SEED + 1)
    worst = 0.0
    worst_at = ""
    for stat in (Statistics.BOSON, Statistics.FERMION):
        branches = (+1,) if stat is Statistics.BOSON else (+1, -1)
        for params, field in _random_tuples(rng, n, stat, sauter=True):
            log_x = sauter_moduli(params, field, stat).log_ratio
            for branch in branches:
                path = sauter_ratio_via_gamma(params, field, stat, branch=branch)
                rel = max(_rel_from_log_diff(path.log_ratio_12_11 - log_x),
                          _rel_from_log_diff(path.log_ratio_21_22 - log_x))
                if rel > worst:
                    worst = rel
                    worst_at = (f"{stat.value} branch={branch:+d} "
                                f"m={params.m:.3g} kperp={params.k_perp:.3g} "
                                f"kz={params.k_z:.3g} q={params.q:.3g} "
                                f"E0={field.E0:.3g} tau={field.tau:.3g}")
    return CheckResult(
        "connection-path", worst <= rtol,
        f"worst relative deviation {worst:.3e} (tol {rtol:g}) at {worst_at}")


# ---------------------------------------------------------------------------
# 4. oracle grid (slow)
# ---------------------------------------------------------------------------

_GRID_MT = (0.0, 1.0, 2.0)
_GRID_KZ = (-1.0, 0.0, 1.0)
_GRID_E0 = (1.0, 5.0, 10.0)
_GRID_TAU = (0.5, 1.0, 2.0)


def check_oracle_grid(rtol_sauter: float = 1e-4, rtol_constant: float = 1e-3,
                      cfg: oracle.OracleConfig | None = None) -> CheckResult:
    """Closed forms vs direct mode-equation integration on the canonical
    grid, both statistics, both field kinds."""
    cfg = cfg or oracle.OracleConfig()
    failures: list[str] = []
    worst = {"sauter": 0.0, "constant": 0.0}
    n_points = 0
    n_degenerate = 0
    for stat in (Statistics.BOSON, Statistics.FERMION):
        for m in _GRID_MT:
            for k_perp in _GRID_MT:
                if stat is Statistics.FERMION and m == 0.0 and k_perp == 0.0:
                    continue
                for k_z in _GRID_KZ:
                    params = ModeParams(m=m, q=1.0, k_perp=k_perp, k_z=k_z)
                    fields = [FieldProfile.constant(e) for e in _GRID_E0]
                    fields += [FieldProfile.sauter(e, t)
                               for e in _GRID_E0 for t in _GRID_TAU]
                    for field in fields:
                        try:
                            closed = moduli(params, field, stat).beta2_linear()
                        except DegenerateModeError:
                            # massless boson mode with a vanishing asymptotic
                            # frequency: beta2 has a pole, nothing to compare
                            n_degenerate += 1
                            continue
                        where = (f"{stat.value} {field.kind} m={m:g} "
                                 f"kperp={k_perp:g} kz={k_z:g} E0={field.E0:g}"
                                 + (f" tau={field.tau:g}" if field.is_sauter
                                    else ""))
                        n_points += 1
                        try:
                            res = oracle.mode_beta2(params, field, stat, cfg)
                        except oracle.OracleError as exc:
                            failures.append(f"{where}: {exc}")
                            continue
                        rel = abs(res.beta2_numeric - closed) / closed
                        tol = rtol_sauter if field.is_sauter else rtol_constant
                        worst[field.kind] = max(worst[field.kind], rel)
                        if rel > tol:
                            failures.append(f"{where}: rel {rel:.2e} > {tol:g}")
    detail = (f"{n_points} grid points ({n_degenerate} with divergent "
              f"occupation skipped), worst rel dev sauter "
              f"{worst['sauter']:.3e} (tol {rtol_sauter:g}), constant "
              f"{worst['constant']:.3e} (tol {rtol_constant:g}), "
              f"backend={oracle.KERNEL_BACKEND}")
    if failures:
        detail += " | " + "; ".join(failures[:5])
        if len(failures) > 5:
            detail += f"; ... {len(failures)} failures total"
    return CheckResult("oracle-grid", not failures, detail)


# ---------------------------------------------------------------------------
# 5. fermion entropy maximum
# ---------------------------------------------------------------------------

def check_fermion_entropy_peak(grid_points: int = 10_000) -> CheckResult:
    """Numerical argmax of the constant-field fermion entropy lands within
    one log-grid step of pi (m^2+k_perp^2)/(q ln 2), where S = 1 exactly."""
    worst_steps = 0.0
    worst_s_dev = 0.0
    for params in (ModeParams(m=0.0, q=1.0, k_perp=1.0),
                   ModeParams(m=1.0, q=2.0, k_perp=1.0),
                   ModeParams(m=2.0, q=0.5, k_perp=0.3)):
        e_star = fermion_max_entropy_field(params)
        grid = np.geomspace(e_star / 100.0, e_star * 100.0, grid_points)
        entropies = [entropy_fermion(
            constant_field_moduli(params, e, Statistics.FERMION)).S_bits
            for e in grid]
        arg = int(np.argmax(entropies))
        log_step = math.log(grid[1] / grid[0])
        off_by = abs(math.log(grid[arg] / e_star)) / log_step
        worst_steps = max(worst_steps, off_by)
        s_at_peak = entropy_fermion(
            constant_field_moduli(params, e_star, Statistics.FERMION)).S_bits
        worst_s_dev = max(worst_s_dev, abs(s_at_peak - 1.0))
    passed = worst_steps <= 1.0 and worst_s_dev <= 1e-12
    return CheckResult(
        "fermion-entropy-peak", passed,
        f"argmax within {worst_steps:.3f} grid steps of closed form "
        f"(tol 1); |S(E*) - 1| = {worst_s_dev:.2e} (tol 1e-12)")


# ---------------------------------------------------------------------------
# 6. boson saturation
# ---------------------------------------------------------------------------

def check_boson_saturation() -> CheckResult:
    """S -> 2 bits as beta^2 -> 1, and S(E0) strictly increasing along the
    first reference-figure preset."""
    b2 = 1.0 - 1e-6
    mod = BogoliubovModuli(beta2=LogDomainValue(math.log(b2)),
                           alpha2=LogDomainValue(math.log1p(b2)),
                           stat=Statistics.BOSON)
    s = entropy_boson(mod).S_bits
    dev = abs(s - 2.0)
    monotone = True
    bad_curve = ""
    for spec in figure_preset("fig1"):
        col = [r.entropy_bits for r in run_sweep(spec)]
        diffs = np.diff(col)
        if not np.all(diffs > 0.0):
            monotone = False
            bad_curve = spec.label
    passed = dev <= 1e-4 and monotone
    detail = f"|S(beta2=1-1e-6) - 2| = {dev:.2e} (tol 1e-4); fig1 increasing: {monotone}"
    if bad_curve:
        detail += f" (violated on {bad_curve})"
    return CheckResult("boson-saturation", passed, detail)


# ---------------------------------------------------------------------------
# 7. entropy-formula equivalence and spectrum sums
# ---------------------------------------------------------------------------

def check_entropy_forms(n: int = 1000) -> CheckResult:
    """The x-ratio and beta^2 closed forms agree pointwise, and the
    explicitly summed Schmidt-spectrum entropy matches the closed form."""
    half = n // 2
    b2s = np.concatenate([np.geomspace(1e-10, 0.5, half),
                          1.0 - np.geomspace(1e-6, 0.5, n - half)])
    worst_rel = 0.0
    for b2 in b2s:
        s_log = _boson_entropy_bits_from_log(math.log(b2))
        s_x = _boson_entropy_bits_from_x(b2 / (1.0 + b2))
        worst_rel = max(worst_rel, abs(s_x - s_log) / s_log)
    worst_sum = 0.0
    for x in (0.01, 0.3, 0.7, 0.95, 0.99):
        c0 = 1.0 - x
        spec = BosonGeometric(c0_sq=c0, ratio=x)
        w = spec.materialize(tail_mass=1e-15)
        s_sum = -math.fsum(wi * math.log2(wi) for wi in w)
        # closed form with beta2 = x/(1-x)
        s_closed = _boson_entropy_bits_from_log(math.log(x) - math.log1p(-x))
        worst_sum = max(worst_sum, abs(s_sum - s_closed))
    passed = worst_rel <= 1e-12 and worst_sum <= 1e-10
    return CheckResult(
        "entropy-forms", passed,
        f"x-form vs beta-form worst rel {worst_rel:.3e} (tol 1e-12); "
        f"spectrum-sum worst abs {worst_sum:.3e} (tol 1e-10)")


# ---------------------------------------------------------------------------
# 8. pulse-width limits
# ---------------------------------------------------------------------------

def check_tau_limits() -> CheckResult:
    """tau -> inf approaches the constant field; fermion tau -> 0 kills
    production."""
    params = ModeParams(m=1.0, q=1.0, k_perp=1.0, k_z=0.0)
    field = FieldProfile.sauter(1.0, 50.0)
    target = math.exp(-2.0 * math.pi)
    worst_rel = 0.0
    for stat in (Statistics.BOSON, Statistics.FERMION):
        b2 = sauter_moduli(params, field, stat).beta2_linear()
        worst_rel = max(worst_rel, abs(b2 - target) / target)
    worst_small = 0.0
    for e0 in (1.0, 2.0):
        b2 = sauter_moduli(ModeParams(m=1.0, q=1.0, k_perp=1.0, k_z=1.0),
                           FieldProfile.sauter(e0, 1e-3),
                           Statistics.FERMION).beta2_linear()
        worst_small = max(worst_small, b2)
    passed = worst_rel <= 0.01 and worst_small < 1e-6
    return CheckResult(
        "tau-limits", passed,
        f"tau=50 vs constant-field value: rel dev {worst_rel:.3e} (tol 0.01); "
        f"fermion beta2 at tau=1e-3: {worst_small:.3e} (tol 1e-6)")


# ---------------------------------------------------------------------------
# 9. figure shapes
# ---------------------------------------------------------------------------

def _has_interior_max(values: list[float]) -> bool:
    d = np.sign(np.diff(values))
    rose = False
    for s in d:
        if s > 0:
            rose = True
        elif s < 0 and rose:
            return True
    return False


def check_figure_shapes() -> CheckResult:
    """First-difference shape checks on three reference curves."""
    problems = []
    fig5 = {s.label: s for s in figure_preset("fig5")}
    col = [r.entropy_bits for r in run_sweep(fig5["tau0.02"])]
    if not _has_interior_max(col):
        problems.append("fig5 tau=0.02 lacks an interior entropy maximum in E0")
    for spec in figure_preset("fig6"):
        col = [r.entropy_bits for r in run_sweep(spec)]
        if not _has_interior_max(col):
            problems.append(f"fig6 {spec.label} lacks an interior maximum in k_z")
    for spec in figure_preset("fig2"):
        col = [r.entropy_bits for r in run_sweep(spec)]
        if not np.all(np.diff(col) < 0.0):
            problems.append(f"fig2 {spec.label} not strictly decreasing in m")
    detail = "; ".join(problems) if problems else (
        "fig5(tau=0.02) interior max in E0; fig6 interior max in k_z "
        "(3 curves); fig2 strictly decreasing in m (3 curves)")
    return CheckResult("figure-shapes", not problems, detail)


# ---------------------------------------------------------------------------
# 10. Schmidt sum rules
# ---------------------------------------------------------------------------

def check_schmidt_sums() -> CheckResult:
    """Spectra are normalized and the fermion four-party entropies agree."""
    worst_bsum = 0.0
    for x in (0.001, 0.2, 0.5, 0.9, 0.99):
        spec = BosonGeometric(c0_sq=1.0 - x, ratio=x)
        w = spec.materialize(tail_mass=1e-15)
        worst_bsum = max(worst_bsum, abs(math.fsum(w) - 1.0))
    worst_fsum = 0.0
    worst_spread = 0.0
    for b2 in (0.01, 0.25, 0.5, 0.75, 0.99):
        mod = BogoliubovModuli(beta2=LogDomainValue(math.log(b2)),
                               alpha2=LogDomainValue(math.log1p(-b2)),
                               stat=Statistics.FERMION)
        four = schmidt_spectrum(mod)
        assert isinstance(four, FermionFour)
        worst_fsum = max(worst_fsum, abs(math.fsum(four.c_sq) - 1.0))
        s_parties = _four_party_entropies(four.c_sq)
        worst_spread = max(worst_spread, max(s_parties) - min(s_parties))
    passed = worst_bsum <= 1e-12 and worst_fsum <= 1e-12 and worst_spread <= 1e-12
    return CheckResult(
        "schmidt-sums", passed,
        f"boson spectrum sum dev {worst_bsum:.2e}, fermion four-weight sum "
        f"dev {worst_fsum:.2e}, four-party entropy spread {worst_spread:.2e} "
        f"(tol 1e-12 each)")


QUICK_CHECKS = (
    check_normalization,
    check_gamma_identities,
    check_connection_path,
    check_fermion_entropy_peak,
    check_boson_saturation,
    check_entropy_forms,
    check_tau_limits,
    check_figure_shapes,
    check_schmidt_sums,
)


def run_checks(level: str = "quick") -> list[CheckResult]:
    """Run the suite; 'full' appends the oracle grid."""
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick|full, got {level!r}")
    results = [chk() for chk in QUICK_CHECKS]
    if level == "full":
        results.append(check_oracle_grid())
    return results
