"""Schmidt spectra of the in-vacuum and the entropies built on them.

Pair production turns the in-vacuum of each mode pair (k, -k) into a
two-mode squeezed state.  In the out-basis its Schmidt weights are

    boson:   |c_n|^2 = (1 - |c_0|^2)^n |c_0|^2,  |c_0|^2 = 1/|alpha|^2
             (geometric, ratio x = |beta/alpha|^2)
    fermion: {alpha^4, beta^4, alpha^2 beta^2, alpha^2 beta^2}
             (Pauli blocking truncates the tower at one pair per spin)

von Neumann entropies (in bits) follow in closed form:

    boson:   S = -b log2 b + (1+b) log2 (1+b),      b = |beta|^2
           = log2( x^{x/(x-1)} / (1-x) )            equivalent form
    fermion: S = -a log2 a - b log2 b               binary entropy, max 1

All entropy evaluations accept the moduli in the log domain so extreme
suppression (log b ~ -1e5) loses nothing to underflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .bogoliubov import BogoliubovModuli, DegenerateModeError
from .fields import ModeParams, Statistics
from .specfun import LN2, log1mexp

#: Schmidt weights smaller than this never matter at double precision.
DEFAULT_TAIL_MASS = 1e-15


@dataclass(frozen=True)
class BosonGeometric:
    """Lazy geometric Schmidt spectrum: weights (1-c0_sq)^n * c0_sq."""

    c0_sq: float
    ratio: float          # x = |beta/alpha|^2 = 1 - c0_sq

    def materialize(self, tail_mass: float = DEFAULT_TAIL_MASS,
                    max_terms: int = 1_000_000) -> np.ndarray:
        """Explicit weights, truncated once the remaining mass x^N drops
        below tail_mass.  The retained sum is 1 - O(tail_mass)."""
        if not 0.0 < tail_mass < 1.0:
            raise ValueError(f"tail_mass must be in (0,1), got {tail_mass}")
        if self.ratio == 0.0:
            return np.array([1.0])
        log_x = math.log(self.ratio)
        n = max(1, math.ceil(math.log(tail_mass) / log_x))
        if n > max_terms:
            raise ValueError(
                f"spectrum needs {n} terms for tail mass {tail_mass:g} "
                f"(x = {self.ratio}); raise max_terms to materialize")
        return np.exp(np.arange(n) * log_x + math.log(self.c0_sq))


@dataclass(frozen=True)
class FermionFour:
    """Four-weight fermion Schmidt spectrum.

    c_sq = (alpha^4, beta^4, alpha^2 beta^2, alpha^2 beta^2); the sum is
    (alpha^2 + beta^2)^2 = 1.
    """

    c_sq: tuple[float, float, float, float]


SchmidtSpectrum = Union[BosonGeometric, FermionFour]


@dataclass(frozen=True)
class EntropyReport:
    """Entropy plus the scalars it was built from (all linear-domain)."""

    S_bits: float
    beta2: float
    alpha2: float
    x: Optional[float]    # |beta/alpha|^2; None for fermions
    c0_sq: float          # vacuum persistence probability
    mean_pairs: float     # = beta2


def schmidt_spectrum(moduli: BogoliubovModuli) -> SchmidtSpectrum:
    """Schmidt weights of the in-vacuum in the out-basis."""
    if moduli.stat is Statistics.FERMION:
        a2 = moduli.alpha2_linear()
        b2 = moduli.beta2_linear()
        if a2 == 0.0:
            raise DegenerateModeError("fermion |alpha|^2 = 0: no Schmidt "
                                      "decomposition of the out-state")
        return FermionFour(c_sq=(a2 * a2, b2 * b2, a2 * b2, a2 * b2))
    return BosonGeometric(c0_sq=math.exp(-moduli.log_alpha2),
                          ratio=math.exp(moduli.log_ratio))


# ---------------------------------------------------------------------------
# Entropies
# ---------------------------------------------------------------------------

def _boson_entropy_bits_from_log(log_b2: float) -> float:
    """S in bits from log |beta|^2, stable over the whole range.

    Moderate log b: evaluate -b ln b + (1+b) ln(1+b) directly in nats.
    log b >= 40: S -> (log b + 1)/ln 2 with relative error ~ exp(-log b)
    (from b ln(1+1/b) = 1 - 1/2b + ...).  log b <= -745: b underflows and
    S underflows with it (0 log 0 := 0).
    """
    if log_b2 == -math.inf:
        return 0.0
    if log_b2 >= 40.0:
        return (log_b2 + 1.0) / LN2
    b2 = math.exp(log_b2)
    if b2 == 0.0:
        return 0.0
    return (-b2 * log_b2 + (1.0 + b2) * math.log1p(b2)) / LN2


def _boson_entropy_bits_from_x(x: float) -> float:
    """S in bits from the ratio x = |beta/alpha|^2 in (0,1):
    log2( x^{x/(x-1)} / (1-x) ).  Plain linear evaluation — this is the
    cross-check partner of the log-domain form, kept deliberately naive.
    """
    if x == 0.0:
        return 0.0
    return (-x * math.log(x) / (1.0 - x) - math.log1p(-x)) / LN2


def entropy_boson(moduli: BogoliubovModuli) -> EntropyReport:
    """Boson entanglement entropy, cross-checked between the two closed forms.

    The x-form check runs where x is representable away from 1 (log b <= 5);
    beyond that the two forms collapse to the same expression analytically
    and the comparison would only test rounding of exp.
    """
    if moduli.stat is not Statistics.BOSON:
        raise ValueError("entropy_boson needs boson moduli")
    lb = moduli.log_beta2
    s_bits = _boson_entropy_bits_from_log(lb)
    if lb <= 5.0:
        s_x = _boson_entropy_bits_from_x(math.exp(moduli.log_ratio))
        if not math.isclose(s_x, s_bits, rel_tol=1e-12, abs_tol=1e-300):
            raise ArithmeticError(
                f"entropy closed forms disagree: x-form {s_x!r} vs "
                f"beta-form {s_bits!r} at log beta^2 = {lb!r}")
    return EntropyReport(S_bits=s_bits,
                         beta2=moduli.beta2_linear(),
                         alpha2=moduli.alpha2_linear(),
                         x=math.exp(moduli.log_ratio),
                         c0_sq=math.exp(-moduli.log_alpha2),
                         mean_pairs=moduli.beta2_linear())


def _plogp_bits(p: float) -> float:
    """-p log2 p with the 0 log 0 := 0 convention."""
    if p == 0.0:
        return 0.0
    return -p * math.log2(p)


# Which of the four Schmidt terms occupies each party's mode, for parties
# (particle-up, particle-down, antiparticle-up, antiparticle-down).  Row n
# gives the occupations in term n; weights are FermionFour order
# (alpha^4, beta^4, alpha^2 beta^2, alpha^2 beta^2).
_FERMION_OCCUPANCY = np.array([
    [0, 0, 0, 0],   # out-vacuum
    [1, 1, 1, 1],   # both spin channels excited
    [0, 1, 1, 0],   # down-particle / up-antiparticle pair
    [1, 0, 0, 1],   # up-particle / down-antiparticle pair
])


def _four_party_entropies(weights: tuple[float, float, float, float]) -> list[float]:
    """Reduce the four-term state onto each single party and take the
    entropy of the resulting (diagonal) 2x2 density matrix."""
    w = np.asarray(weights)
    out = []
    for party in range(4):
        occ = _FERMION_OCCUPANCY[:, party]
        rho = np.zeros((2, 2))
        rho[0, 0] = w[occ == 0].sum()
        rho[1, 1] = w[occ == 1].sum()
        out.append(_plogp_bits(rho[0, 0]) + _plogp_bits(rho[1, 1]))
    return out


def entropy_fermion(moduli: BogoliubovModuli) -> EntropyReport:
    """Fermion entanglement entropy: binary entropy of |beta|^2 in bits.

    Also reduces the explicit four-party state onto each party and checks
    that all four single-party entropies reproduce the closed form — they
    share the reduced spectrum {alpha^2, beta^2} exactly.
    """
    if moduli.stat is not Statistics.FERMION:
        raise ValueError("entropy_fermion needs fermion moduli")
    lb, la = moduli.log_beta2, moduli.log_alpha2
    b2, a2 = moduli.beta2_linear(), moduli.alpha2_linear()
    # -b log2 b evaluated from the log-domain values: exact for b in {0,1}
    # and immune to underflow of b itself.
    term_b = 0.0 if b2 == 0.0 else -b2 * lb / LN2
    term_a = 0.0 if a2 == 0.0 else -a2 * la / LN2
    s_bits = term_b + term_a

    spectrum = schmidt_spectrum(moduli)
    assert isinstance(spectrum, FermionFour)
    for s_party in _four_party_entropies(spectrum.c_sq):
        if abs(s_party - s_bits) > 1e-12 * max(1.0, s_bits):
            raise ArithmeticError(
                f"four-party entropy {s_party!r} deviates from closed form "
                f"{s_bits!r}")
    return EntropyReport(S_bits=s_bits, beta2=b2, alpha2=a2, x=None,
                         c0_sq=a2 * a2, mean_pairs=b2)


def entropy(moduli: BogoliubovModuli) -> EntropyReport:
    """Dispatch on the statistics carried by the moduli."""
    if moduli.stat is Statistics.FERMION:
        return entropy_fermion(moduli)
    return entropy_boson(moduli)


# ---------------------------------------------------------------------------
# Probabilities and summary numbers
# ---------------------------------------------------------------------------

def vacuum_persistence(moduli: BogoliubovModuli) -> float:
    """|<0,out|0,in>|^2 for the mode pair: boson 1/|alpha|^2, fermion
    |alpha|^4 (both spin channels must stay empty)."""
    if moduli.stat is Statistics.FERMION:
        return math.exp(2.0 * moduli.log_alpha2)
    return math.exp(-moduli.log_alpha2)


def mean_pair_number(moduli: BogoliubovModuli) -> float:
    """Mean number of produced pairs in the mode: |beta|^2."""
    return moduli.beta2_linear()


def fermion_max_entropy_field(params: ModeParams) -> float:
    """Constant-field amplitude at which the fermion mode entropy peaks:

        E0 = pi (m^2 + k_perp^2) / (q ln 2)

    i.e. where |beta|^2 = exp(-pi mu) crosses 1/2.
    """
    mt2 = params.transverse_mass_sq
    if mt2 == 0.0:
        raise DegenerateModeError(
            "m = k_perp = 0: no entropy maximum (mode is degenerate)")
    return math.pi * mt2 / (params.q * LN2)
